"""Exact matroid and matching toolkit.

Decides whether a homogeneous linear system a x = 0 has only the trivial
solution and, when it does, produces an injection phi from variables to
equations with a[phi(j), j] != 0, both through base exchange in a vector
matroid and through bipartite matching.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DivisionByZero,
    FormatError,
    GroundTooLarge,
    InternalContractViolation,
    NotABase,
    NotAnElement,
    NotASubset,
    NotIndependent,
    ParameterError,
    RankTooLarge,
    SeedDependent,
    SpecMismatch,
    ThinsumError,
)
from .exactfield import FieldSpec, FieldValue, field_add, field_inv, field_mul, field_neg  # noqa: E402
from .exchange import (  # noqa: E402
    ExchangeGraph,
    Form,
    InjectionMap,
    base_exchange_bijection,
    dual_base_exchange,
    exchange_graph,
    independent_into_base_injection,
    reform_bijection,
)
from .linalg import KernelWitness, SparseMatrix, kernel_witness, mat_vec, rank  # noqa: E402
from .matroid import (  # noqa: E402
    AxiomReport,
    Matroid,
    check_axioms,
    contract,
    delete,
    dual,
    find_base,
    rank_of,
    spans,
    uniform_matroid,
    vector_matroid,
)
from .solver import (  # noqa: E402
    AugmentedFamily,
    SolveOutcome,
    build_augmented_matroid,
    generate_instance,
    hall_matching_oracle,
    solve_variable_equation_matching,
    verify_injection,
)
