"""Exact invariants of monomial ideals: multiplicities, Lojasiewicz exponents, log canonical thresholds."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    CoordinateSet,
    MonomialIdeal,
    WeightVector,
    ideal_power,
    ideal_product,
    ideal_sum,
    maximal_ideal,
    minimalize,
    parse_ideal,
    principal_diag,
    render,
)
from .lct import arnold_index, lct, lct_k, lct_sequence  # noqa: E402
from .lojasiewicz import loj_sequence, loj_wrt, ord, restrict  # noqa: E402
from .multiplicity import e_sequence, mixed_multiplicity, reduction_number, samuel_multiplicity  # noqa: E402
from .newton import NewtonPolyhedron, closure_member, covolume, facet_list, gauge, support_value  # noqa: E402

__all__ = [
    "CoordinateSet", "MonomialIdeal", "NewtonPolyhedron", "WeightVector", "arnold_index", "closure_member",
    "covolume", "e_sequence", "facet_list", "gauge", "ideal_power", "ideal_product", "ideal_sum", "lct",
    "lct_k", "lct_sequence", "loj_sequence", "loj_wrt", "maximal_ideal", "minimalize", "mixed_multiplicity",
    "ord", "parse_ideal", "principal_diag", "reduction_number", "render", "restrict", "samuel_multiplicity",
    "support_value",
]
