"""Variable-to-equation injections for homogeneous linear systems.

If a x = 0 has only the trivial solution there is an injection phi from
columns to rows with a[phi(j), j] != 0. The primary route builds the matroid
of the augmented family (unit vectors for the rows, the columns of ``a`` for
the variables), in which the rows form a base and the columns are independent,
and reads phi off a base-exchange injection of the columns into the rows. The
Hall route (bipartite matching on the support) is run alongside as a check.
Only trivial kernel => matching holds; the converse fails in general.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping, Optional

from .errors import InternalContractViolation, ParameterError
from .exactfield import FieldSpec
from .exchange import InjectionMap, independent_into_base_injection
from .linalg import KernelWitness, SparseMatrix, kernel_witness, rank
from .matching import max_bipartite_matching
from .matroid import VectorMatroid, vector_matroid

ROW_TAG = "row:"
COL_TAG = "col:"


@dataclass(frozen=True)
class AugmentedFamily:
    """Vector matroid on the tagged disjoint union of row and column ids.

    ``tags`` maps each ground element to ``("row" | "col", original id)``.
    """

    matroid: VectorMatroid
    tags: Mapping[str, tuple]
    vectors: Mapping[str, Mapping]
    row_elements: tuple
    col_elements: tuple
    rows_form_base: bool
    cols_independent: bool

    def untag(self, element: str):
        return self.tags[element][1]


@dataclass(frozen=True)
class SolveOutcome:
    injection: Optional[InjectionMap] = None
    witness: Optional[KernelWitness] = None

    def __post_init__(self):
        if (self.injection is None) == (self.witness is None):
            raise ParameterError("exactly one of injection / witness must be set")

    @property
    def kind(self) -> str:
        return "injection" if self.injection is not None else "kernel_witness"


def build_augmented_matroid(m: SparseMatrix) -> AugmentedFamily:
    f = m.field
    tags, vectors = {}, {}
    for r in m.row_ids:
        tags[ROW_TAG + str(r)] = ("row", r)
        vectors[ROW_TAG + str(r)] = {r: f.one()}
    for c in m.col_ids:
        tags[COL_TAG + str(c)] = ("col", c)
        vectors[COL_TAG + str(c)] = m.column(c)
    if len(tags) != len(m.row_ids) + len(m.col_ids):
        raise ParameterError("row or column ids collide after conversion to text")
    matroid = vector_matroid(f, vectors, coords=m.row_ids)
    rows = tuple(ROW_TAG + str(r) for r in m.row_ids)
    cols = tuple(COL_TAG + str(c) for c in m.col_ids)
    rows_form_base = matroid.is_base(rows)
    if not rows_form_base:
        raise InternalContractViolation("unit vectors of the rows do not form a base", matroid)
    return AugmentedFamily(matroid, tags, vectors, rows, cols, rows_form_base, matroid.is_independent(cols))


def matroid_route(m: SparseMatrix, route: str = "dual") -> Optional[InjectionMap]:
    """phi via base exchange in the augmented matroid, or None if the columns are dependent."""
    family = build_augmented_matroid(m)
    if not family.cols_independent:
        return None
    tagged = independent_into_base_injection(family.matroid, family.col_elements, family.row_elements, route)
    phi = InjectionMap((family.untag(j), family.untag(i)) for j, i in tagged.items())
    if not verify_injection(m, phi):
        raise InternalContractViolation("base exchange produced a map along a zero entry", phi)
    return phi


def hall_matching_oracle(m: SparseMatrix) -> Optional[InjectionMap]:
    """Maximum matching of columns to rows along non-zero entries; None unless it covers every column."""
    adj = {c: [r for r in m.row_ids if (r, c) in m.entries] for c in m.col_ids}
    matched = max_bipartite_matching(m.col_ids, adj)
    if len(matched) != len(m.col_ids):
        return None
    return InjectionMap((c, matched[c]) for c in m.col_ids)


def solve_variable_equation_matching(m: SparseMatrix, route: str = "dual", cross_check: bool = True) -> SolveOutcome:
    """Injection phi (trivial kernel) or a kernel witness.

    The Hall check only runs in the direction that always holds: a trivial
    kernel forces a matching. A support matching can exist alongside a
    non-trivial solution (e.g. [[1, 1], [1, 1]]), so the converse is not checked.
    """
    witness = kernel_witness(m)
    if witness is not None:
        return SolveOutcome(witness=witness)
    phi = matroid_route(m, route)
    if phi is None:
        raise InternalContractViolation("trivial kernel but the columns are dependent in the augmented matroid")
    if cross_check and hall_matching_oracle(m) is None:
        raise InternalContractViolation("matroid route succeeded but Hall matching failed", phi)
    return SolveOutcome(injection=phi)


def verify_injection(m: SparseMatrix, phi: Mapping[Hashable, Hashable]) -> bool:
    if set(phi) != set(m.col_ids):
        return False
    targets = list(phi.values())
    if len(set(targets)) != len(targets) or not set(targets) <= set(m.row_ids):
        return False
    return all((phi[c], c) in m.entries for c in m.col_ids)


def generate_instance(
    field: FieldSpec, n_rows: int, n_cols: int, density, seed
) -> SparseMatrix:
    """Reproducible random matrix whose columns are guaranteed independent.

    An invertible n_cols x n_cols block (unit upper times unit lower triangular)
    sits on top of zero rows; random non-zeros are then sprinkled until
    ``density`` of the cells are filled, skipping any block cell that would
    make the block singular, and finally rows and columns are permuted.
    Over GF(2) the density target can be unreachable for such block cells.
    """
    if n_rows < 1 or n_cols < 1:
        raise ParameterError("need at least one row and one column")
    if n_cols > n_rows:
        raise ParameterError("n_cols must not exceed n_rows")
    dens = Fraction(str(density)) if isinstance(density, float) else Fraction(density)
    if not 0 < dens <= 1:
        raise ParameterError("density must lie in (0, 1]")
    rng = random.Random(seed)
    n = n_cols
    zero, one = field.raw(0), field.raw(1)

    def rand(nonzero=False):
        return field.random_value(rng, nonzero=nonzero).payload

    upper = [[one if i == j else (rand() if j > i else zero) for j in range(n)] for i in range(n)]
    lower = [[one if i == j else (rand() if j < i else zero) for j in range(n)] for i in range(n)]
    grid = [[zero] * n for _ in range(n_rows)]
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                acc = field.add_raw(acc, field.mul_raw(upper[i][k], lower[k][j]))
            grid[i][j] = acc

    def block_invertible():
        block = SparseMatrix.from_rows(field, [[field.value(v) for v in row] for row in grid[:n]])
        return rank(block) == n

    target = math.ceil(dens * n_rows * n)
    filled = sum(1 for row in grid for v in row if v)
    empty = [(i, j) for i in range(n_rows) for j in range(n) if not grid[i][j]]
    rng.shuffle(empty)
    for i, j in empty:
        if filled >= target:
            break
        if i >= n:
            grid[i][j] = rand(nonzero=True)
            filled += 1
            continue
        # det is affine in one cell: at most one non-zero value makes the block singular
        tried = set()
        for _ in range(4):
            v = rand(nonzero=True)
            if v in tried:
                continue
            tried.add(v)
            grid[i][j] = v
            if block_invertible():
                filled += 1
                break
            grid[i][j] = zero

    row_perm = rng.sample(range(n_rows), n_rows)
    col_perm = rng.sample(range(n), n)
    rows = [[field.value(grid[row_perm[i]][col_perm[j]]) for j in range(n)] for i in range(n_rows)]
    return SparseMatrix.from_rows(field, rows)
