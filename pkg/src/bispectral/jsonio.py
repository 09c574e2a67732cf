"""Document-level JSON: stable, versioned files for specs, certificates,
pairs and reports.  Every transcript embeds the tool version and the
truncation/bound parameters so runs are reproducible."""

from __future__ import annotations

import json

from . import __version__
from .darboux import DarbouxCertificate, KernelSpec
from .errors import UsageError
from .involution import BispectralPair


def tool_block(**params):
    out = {"name": "bispectral", "version": __version__}
    out.update({k: v for k, v in params.items() if v is not None})
    return out


def dumps(document) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def write(path, document):
    with open(path, "w") as fh:
        fh.write(dumps(document))


def read(path):
    with open(path) as fh:
        return json.load(fh)


def spec_document(spec: KernelSpec, **params):
    return {"tool": tool_block(**params), "kind": "kernel-spec",
            **spec.to_json()}


def load_spec(data) -> KernelSpec:
    try:
        return KernelSpec.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed kernel spec: {exc}") from exc


def certificate_document(cert: DarbouxCertificate, **params):
    return {"tool": tool_block(**params), "kind": "darboux-certificate",
            **cert.to_json()}


def load_certificate(data) -> DarbouxCertificate:
    try:
        return DarbouxCertificate.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed certificate: {exc}") from exc


def pair_document(pair: BispectralPair, **params):
    return {"tool": tool_block(**params), "kind": "bispectral-pair",
            **pair.to_json()}


def load_pair(data) -> BispectralPair:
    try:
        return BispectralPair.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed pair: {exc}") from exc
