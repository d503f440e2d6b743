"""Polychromatic edge colorings of complete graphs: constructions, exact
verification, structural analysis, closed-form numbers and searches."""

from .constructions import (
    Construction,
    SeedColoring,
    build_seed,
    construct,
    construct_bipartite_witness,
    construct_quasi,
    construct_simply_ordered,
    extend_seed,
)
from .errors import (
    BudgetExceeded,
    NoSimplyOrderedOptimum,
    ParseError,
    PolychromError,
    PreconditionError,
    ScopeError,
)
from .graph import (
    BlockSequence,
    EdgeColoring,
    FamilySpec,
    Kind,
    Subgraph,
    Verdict,
    colors_on,
    family_member,
)
from .numbers import NumberResult, classical_c, p_c, p_f, p_r, pr_consistency, pr_t
from .oracle import AvoidanceQuery, Budget, check_cycle_monotonicity, exists_avoiding, verify
from .search import (
    SearchReport,
    best_quasi,
    best_simply_ordered,
    cyclic_ramsey,
    full_search,
)
from .structure import (
    OrderAnalysis,
    OrderKind,
    block_shift_normalize,
    detect_order,
    lemma_predicate,
)

__version__ = "0.1.0"

__all__ = [
    "AvoidanceQuery",
    "BlockSequence",
    "Budget",
    "BudgetExceeded",
    "Construction",
    "EdgeColoring",
    "FamilySpec",
    "Kind",
    "NoSimplyOrderedOptimum",
    "NumberResult",
    "OrderAnalysis",
    "OrderKind",
    "ParseError",
    "PolychromError",
    "PreconditionError",
    "ScopeError",
    "SearchReport",
    "SeedColoring",
    "Subgraph",
    "Verdict",
    "best_quasi",
    "best_simply_ordered",
    "block_shift_normalize",
    "build_seed",
    "check_cycle_monotonicity",
    "classical_c",
    "colors_on",
    "construct",
    "construct_bipartite_witness",
    "construct_quasi",
    "construct_simply_ordered",
    "cyclic_ramsey",
    "detect_order",
    "exists_avoiding",
    "extend_seed",
    "family_member",
    "full_search",
    "lemma_predicate",
    "p_c",
    "p_f",
    "p_r",
    "pr_consistency",
    "pr_t",
    "verify",
]
