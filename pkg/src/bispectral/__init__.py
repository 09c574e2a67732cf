"""Exact Darboux factorizations of Bessel-type operators and certified
bispectral operator pairs.

Everything is computed over the rationals (or a cyclotomic extension where
roots of unity enter), with structural equality as the only notion of
correctness: factorizations are certified by exact operator identities,
series are used only on conservatively tracked windows.
"""

from .bessel import (BesselIndex, bessel_op, bessel_poly, bessel_wave,
                     exp_wave, indicial_poly, kernel_basis, ladder_op,
                     wave_coeffs, wave_jet_at, zero_exponent_basis)
from .darboux import (AtPointGroup, AtZeroGroup, DarbouxCertificate,
                      KernelSpec, build_P_general, build_P_monomial,
                      build_certificate, certify, cleared_coefficients,
                      compute_Q, kernel_matrix, monomial_kernel,
                      validate_spec)
from .errors import (AssociationError, BispectralError, CertificationError,
                     DomainError, InconsistentSpecError, RankDeficiencyError,
                     ShapeError, SpecInvalidError, TruncationError,
                     UnsupportedInputError, UsageError, VerificationError)
from .involution import (BispectralPair, SpectralAlgebraReport,
                         bessel_plane_report, beta_prime,
                         closed_form_monomial, involute_P, involute_Q,
                         make_pair, spectral_algebra, verify_pair)
from .poly import Poly, RationalFunction
from .quasi import ExpSeries, PointJet, QuasiPolynomial, WaveSeries
from .scalars import (Cyclotomic, cyclotomic_polynomial, euler_phi,
                      format_rational, parse_rational, primitive_root)
from .weyl import DEL, DFORM, DiffOp, poly_at_operator

__version__ = "0.1.0"
