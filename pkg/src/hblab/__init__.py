"""Exact-rational lab for extension-uniqueness experiments in
finite-dimensional spaces carrying families of polyhedral seminorms.

Everything runs on arbitrary-precision rationals: dual gauges, extension
polytopes with uniqueness certificates, best approximation, and the
probe layer for eventual-uniqueness properties of subspaces.
"""

from .ratmath import ExtRat, INFINITY, Q, as_q, q_str
from .linalg import Subspace, unit, vec
from .seminorms import (
    Atom,
    PolyhedralSeminorm,
    SeminormFamily,
    evaluate,
    family,
    max_atom,
    seminorm,
    subfamily_above,
    sum_atom,
)
from .gauge import (
    Pair,
    chi,
    chi_on_subspace,
    dual_gauge,
    dual_gauge_on_subspace,
    finite_support_witness,
    make_pair,
    minimal_extension,
    one_hbe,
)
from .extensions import (
    MULTIPLE,
    UNIQUE,
    HbePolytope,
    certify_extension_uniqueness,
    common_extension_certificate,
    e1_gap,
    extension_polytope,
    hbe_set,
    hbe_unique,
    two_extensions_at_radius,
)
from .approximation import (
    best_approx_in_subspace,
    dist_to_annihilator,
    gauge_best_approx,
    haar_probe,
    simultaneous_best_approx,
)
from .probes import (
    duality_crosscheck,
    property_u_bridge,
    quotient_model,
    quotient_usnp_crosscheck,
    sharp_decomposition,
    snp_probe,
    usnp_probe,
    ysharp_membership,
)
from .models import (
    EXAMPLE_IDS,
    Model,
    SpecError,
    build_cpz,
    build_ex4,
    build_example,
    build_p5,
    build_span_f0,
    parse_space_spec,
    reproduce,
    run_model,
    serialize_space_spec,
)

__version__ = "0.1.0"
