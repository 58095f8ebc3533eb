"""Exact heights on Jacobians of genus-2 curves y^2 = monic quintic.

Layers:

* ``arith`` — exact rationals, precision-tracked p-adic numbers, the
  Iwasawa logarithm;
* ``jacobian`` — Mumford divisor classes and Cantor's group law;
* ``kummer`` — Kummer-surface coordinates, duplication and biquadratic
  forms, multiplication polynomials and value ladders;
* ``padic_height`` — membership certification (J_1, U_q, J_p), the naive
  height H_p, the canonical p-adic height h_p, pairings and regulators;
* ``real_height`` — local real heights and the global Neron-Tate height;
* ``cli`` — the ``g2heights`` command-line front end.
"""

from .arith import PadicApprox, iwasawa_log, ord_q
from .jacobian import (
    Genus2Curve,
    MumfordDivisor,
    cantor_add,
    cantor_neg,
    cantor_scalar_mul,
    divisor_from_points,
    kummer_coords,
    kummer_coords_primitive,
)
from .kummer import (
    FormLibrary,
    KummerPoint,
    MuPolynomials,
    biquadratic_eval,
    build_form_library,
    delta_eval,
    diff_add,
    kummer_map,
    mu_pair_ladder,
    mu_symbolic,
    phi_value,
)
from .padic_height import (
    HeightValue,
    MembershipCertificate,
    canonical_height,
    canonical_height_on_Jp,
    certify,
    height_pairing,
    naive_height,
    naive_limit_oracle,
    regulator,
    u_value,
)
from .real_height import (
    LocalHeightValue,
    archimedean_correction,
    is_torsion,
    lambda_canonical,
    lambda_naive,
    neron_tate,
    neron_tate_report,
    tate_limit_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "PadicApprox",
    "iwasawa_log",
    "ord_q",
    "Genus2Curve",
    "MumfordDivisor",
    "cantor_add",
    "cantor_neg",
    "cantor_scalar_mul",
    "divisor_from_points",
    "kummer_coords",
    "kummer_coords_primitive",
    "FormLibrary",
    "KummerPoint",
    "MuPolynomials",
    "biquadratic_eval",
    "build_form_library",
    "delta_eval",
    "diff_add",
    "kummer_map",
    "mu_pair_ladder",
    "mu_symbolic",
    "phi_value",
    "HeightValue",
    "MembershipCertificate",
    "canonical_height",
    "canonical_height_on_Jp",
    "certify",
    "height_pairing",
    "naive_height",
    "naive_limit_oracle",
    "regulator",
    "u_value",
    "LocalHeightValue",
    "archimedean_correction",
    "is_torsion",
    "lambda_canonical",
    "lambda_naive",
    "neron_tate",
    "neron_tate_report",
    "tate_limit_oracle",
    "__version__",
]
