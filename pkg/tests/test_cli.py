import json
from pathlib import Path

from bispectral.cli import main


RANK1_SPEC = {
    "beta": {"N": 1, "beta": ["0"]},
    "at_zero": [{"base_index": 0, "b": [["0"], ["1"]], "j0": 0}],
    "at_points": [],
}

ORDER2_SPEC = {
    "beta": {"N": 2, "beta": ["2/3", "1/3"]},
    "at_zero": [],
    "at_points": [{"lambda": "1", "a": ["1", "1"]}],
}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_bessel_command(capsys):
    assert main(["bessel", "--beta", "2/3,1/3", "-K", "2"]) == 0
    out = capsys.readouterr().out
    assert "2/9" in out and "a_1=1/9" in out


def test_bessel_command_rejects_bad_weights(capsys):
    assert main(["bessel", "--beta", "0,0"]) == 2
    assert "sum" in capsys.readouterr().err


def test_build_pair_verify_round_trip(tmp_path, capsys):
    spec = write(tmp_path, "spec.json", RANK1_SPEC)
    cert_path = str(tmp_path / "cert.json")
    assert main(["build", spec, "--out", cert_path]) == 0
    cert = json.loads(Path(cert_path).read_text())
    assert cert["kind"] == "darboux-certificate"
    assert cert["tool"]["name"] == "bispectral"
    pair_path = str(tmp_path / "pair.json")
    assert main(["pair", cert_path, "--verify", "10",
                 "--out", pair_path]) == 0
    pair = json.loads(Path(pair_path).read_text())
    assert pair["verification"]["residuals"] == [0, 0]
    assert main(["verify", pair_path, "-K", "10"]) == 0
    assert main(["rank", cert_path, "--degree-bound", "4"]) == 0
    out = capsys.readouterr().out
    assert "rank = 1" in out


def test_build_multiple_specs_with_jobs(tmp_path):
    s1 = write(tmp_path, "a.json", RANK1_SPEC)
    s2 = write(tmp_path, "b.json", ORDER2_SPEC)
    outdir = tmp_path / "outs"
    outdir.mkdir()
    assert main(["build", s1, s2, "--jobs", "2", "--out", str(outdir)]) == 0
    assert (outdir / "a.cert.json").exists()
    assert (outdir / "b.cert.json").exists()


def test_involute_command(tmp_path):
    spec = write(tmp_path, "spec.json", ORDER2_SPEC)
    cert_path = str(tmp_path / "cert.json")
    assert main(["build", spec, "--out", cert_path]) == 0
    inv_path = str(tmp_path / "inv.json")
    assert main(["involute", cert_path, "--out", inv_path]) == 0
    inv = json.loads(Path(inv_path).read_text())
    assert inv["g_b"] == ["-20/9", "0", "1"]
    assert inv["f_b"] == ["-20/9", "0", "1"]


def test_betaprime_command(tmp_path, capsys):
    spec = write(tmp_path, "spec.json", {
        "beta": {"N": 2, "beta": ["0", "1"]},
        "at_zero": [{"base_index": 0, "b": [["1"]], "j0": 0}],
        "at_points": []})
    assert main(["betaprime", spec]) == 0
    assert "beta' = (1, 0)" in capsys.readouterr().out


def test_tampered_certificate_exits_three(tmp_path):
    spec = write(tmp_path, "spec.json", RANK1_SPEC)
    cert_path = str(tmp_path / "cert.json")
    main(["build", spec, "--out", cert_path])
    cert = json.loads(Path(cert_path).read_text())
    cert["Q"]["coeffs"][0]["num"] = ["7"]
    bad = write(tmp_path, "bad.json", cert)
    assert main(["pair", bad]) == 3


def test_perturbed_pair_exits_four(tmp_path):
    spec = write(tmp_path, "spec.json", RANK1_SPEC)
    cert_path = str(tmp_path / "cert.json")
    pair_path = str(tmp_path / "pair.json")
    main(["build", spec, "--out", cert_path])
    main(["pair", cert_path, "--out", pair_path])
    pair = json.loads(Path(pair_path).read_text())
    pair["theta"] = ["1", "0", "1"]
    bad = write(tmp_path, "badpair.json", pair)
    assert main(["verify", bad, "-K", "10"]) == 4


def test_invalid_spec_exits_two(tmp_path):
    bad = write(tmp_path, "bad.json", {
        "beta": {"N": 2, "beta": ["0", "1"]},
        "at_zero": [],
        "at_points": [{"lambda": "0", "a": ["1"]}]})
    assert main(["build", bad]) == 2
    assert main(["build", str(tmp_path / "missing.json")]) == 2


def test_rank_on_bare_plane(capsys):
    assert main(["rank", "--beta", "2/3,1/3", "--degree-bound", "8"]) == 0
    out = capsys.readouterr().out
    assert "rank = 2" in out and "only multiples of N: True" in out
    assert main(["rank", "--beta", "0,1", "--degree-bound", "4"]) == 0
    assert "only multiples of N: False" in capsys.readouterr().out
    assert main(["rank"]) == 2


def test_examples_rank1(capsys):
    assert main(["examples", "rank1"]) == 0
    assert "exact match" in capsys.readouterr().out


def test_examples_example4(capsys):
    assert main(["examples", "example4"]) == 0
    assert "exact match" in capsys.readouterr().out


def test_examples_dg_even(capsys):
    assert main(["examples", "dg-even"]) == 0
    assert "exact match" in capsys.readouterr().out


def test_outputs_are_deterministic(tmp_path):
    spec = write(tmp_path, "spec.json", RANK1_SPEC)
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    main(["build", spec, "--out", a])
    main(["build", spec, "--out", b])
    assert Path(a).read_text() == Path(b).read_text()
