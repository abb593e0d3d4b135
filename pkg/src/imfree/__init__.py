"""Interval minors of ordered bipartite graphs: containment, extremal
families, exact search, and structure classification."""

from .graphs import (
    ALL_TRANSFORMS,
    IDENTITY,
    GridParseError,
    OrderedBipartiteGraph,
    Transform,
    apply_transform,
    canonical_form,
)
from .minor import (
    Witness,
    contains,
    contains_bruteforce,
    parse_pattern,
    verify_witness,
    witness_error,
)
from .families import (
    ConstructionError,
    Decomposition,
    DomainError,
    MutationError,
    bound_k2,
    bound_k3,
    complete,
    concat,
    concat2,
    decompose,
    delete_saturated_row,
    ex3_value,
    family_G,
    family_H,
    family_K3,
    graph_R,
    graph_S,
    m_formula,
    relocate_pendant,
)
from .structure import (
    Classification,
    ReductionLog,
    ReductionStep,
    check_embedding,
    classify,
    degenerate_form,
    embed,
    reduce,
    reducible_vertices,
)
from .search import (
    CellOutcome,
    ExtremalResult,
    MatchingEnumeration,
    Report,
    SearchOptions,
    conjecture_probe,
    enumerate_matchings,
    ex_search,
    verify_suite,
)
from .cache import CacheRecord, ResultCache

__version__ = "0.1.0"
