"""Exact order series of series-parallel posets in the chain basis."""

from .errors import (
    CompositionError,
    ExprSyntaxError,
    InfeasibleError,
    InvalidSizeError,
    NotRepresentableError,
    OrderSeriesError,
    SeriesSyntaxError,
    SizeLimitError,
)
from .hstar import HStarVector, chain_to_hstar, ehrhart_expansion, hstar_to_chain, moebius_polynomial
from .inverse import DoppelgangerClass, enumerate_candidates, feasibility, solve
from .oracle import IdealLattice, count_nonstrict, count_strict
from .poset import (
    Chain,
    Dee,
    HasseDigraph,
    Mu,
    Point,
    Union,
    canonical_form,
    enumerate_sp,
    eval_nonstrict,
    eval_strict,
    hasse,
    invariants,
    isomorphic,
    parse_expr,
    print_expr,
)
from .probability import NHGParams, nhg_expectation, nhg_normalization, nhg_pmf
from .series import (
    ChainSeries,
    NonStrictSeries,
    dee,
    dee_plus,
    expand,
    hadamard,
    inverse_reciprocity,
    reciprocity,
    star,
    star_plus,
)

__version__ = "0.1.0"
