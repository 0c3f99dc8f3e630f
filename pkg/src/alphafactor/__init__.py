"""alphafactor: alpha-weighted spectral radii and even-factor verification."""

from .factor import (
    FactorVerdict,
    YanKanoResult,
    find_even_factor,
    naive_even_factor,
    verify_even_factor,
    yan_kano_check,
)
from .graphs import (
    Graph,
    GraphParseError,
    JoinUnionSpec,
    SizeLimitError,
    build_join_union,
    enumerate_labeled_graphs,
    is_isomorphic_small,
    odd_components,
    parse_graph6,
    random_graph,
    relabel,
    write_graph6,
)
from .quotient import (
    CubicPoly,
    QuotientMatrix,
    charpoly_join,
    largest_real_root,
    natural_partition,
    perron_cell_values,
    quotient_matrix,
)
from .spectral import (
    ConvergenceError,
    SpectralResult,
    alpha_matrix,
    full_spectrum,
    quadratic_form_delta,
    spectral_radius,
)
from .theorem import (
    ExtremalSpec,
    VerdictRecord,
    build_extremal,
    case3_quadratic_form,
    case3_radius_gap,
    case3_surgery,
    classify,
    f_case1,
    merge_bound_check,
    min_order,
    recognize_extremal,
    rho_star,
    subcase_positivity_scan,
    verify_corpus,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "CubicPoly",
    "ExtremalSpec",
    "FactorVerdict",
    "Graph",
    "GraphParseError",
    "JoinUnionSpec",
    "QuotientMatrix",
    "SizeLimitError",
    "SpectralResult",
    "VerdictRecord",
    "YanKanoResult",
    "alpha_matrix",
    "build_extremal",
    "build_join_union",
    "case3_quadratic_form",
    "case3_radius_gap",
    "case3_surgery",
    "charpoly_join",
    "classify",
    "enumerate_labeled_graphs",
    "f_case1",
    "find_even_factor",
    "full_spectrum",
    "is_isomorphic_small",
    "largest_real_root",
    "merge_bound_check",
    "min_order",
    "naive_even_factor",
    "natural_partition",
    "odd_components",
    "parse_graph6",
    "perron_cell_values",
    "quadratic_form_delta",
    "quotient_matrix",
    "random_graph",
    "recognize_extremal",
    "relabel",
    "rho_star",
    "spectral_radius",
    "subcase_positivity_scan",
    "verify_corpus",
    "verify_even_factor",
    "write_graph6",
    "yan_kano_check",
]
