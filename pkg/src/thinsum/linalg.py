"""Sparse row-finite matrices over an exact field: rank, kernel witnesses, products.

Elimination is plain Gauss-Jordan on raw payloads with a fixed pivot rule
(columns in declared order, first unused row in declared order), so ranks and
witnesses are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .errors import ParameterError, SpecMismatch
from .exactfield import FieldSpec, FieldValue, parse_value

Id = Hashable


def _coerce(spec: FieldSpec, v) -> FieldValue:
    if isinstance(v, FieldValue):
        if v.spec != spec:
            raise SpecMismatch(f"entry over {v.spec} in a matrix over {spec}")
        return v
    if isinstance(v, str):
        return parse_value(spec, v)
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return spec.value(v)
    raise ParameterError(f"cannot interpret {v!r} as an element of {spec}")


@dataclass(frozen=True)
class SparseMatrix:
    """Finite matrix a: I x J -> F storing only its non-zero entries.

    ``entries`` maps ``(row_id, col_id)`` to a non-zero :class:`FieldValue`.
    """

    field: FieldSpec
    row_ids: tuple
    col_ids: tuple
    entries: Mapping[tuple, FieldValue]

    def __post_init__(self):
        rows, cols = tuple(self.row_ids), tuple(self.col_ids)
        if len(set(rows)) != len(rows):
            raise ParameterError("duplicate row id")
        if len(set(cols)) != len(cols):
            raise ParameterError("duplicate column id")
        rset, cset = set(rows), set(cols)
        entries = dict(self.entries)
        for (r, c), v in entries.items():
            if r not in rset or c not in cset:
                raise ParameterError(f"entry ({r!r}, {c!r}) references an undeclared row or column")
            if not isinstance(v, FieldValue):
                raise ParameterError(f"entry ({r!r}, {c!r}) is not a FieldValue")
            if v.spec != self.field:
                raise SpecMismatch(f"entry ({r!r}, {c!r}) is over {v.spec}, matrix over {self.field}")
            if v.is_zero():
                raise ParameterError(f"explicit zero stored at ({r!r}, {c!r})")
        object.__setattr__(self, "row_ids", rows)
        object.__setattr__(self, "col_ids", cols)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def _trusted(cls, field, row_ids, col_ids, entries) -> SparseMatrix:
        # bypasses validation; callers guarantee the invariants
        m = object.__new__(cls)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "row_ids", tuple(row_ids))
        object.__setattr__(m, "col_ids", tuple(col_ids))
        object.__setattr__(m, "entries", entries)
        return m

    @classmethod
    def from_rows(
        cls,
        field: FieldSpec,
        rows: Sequence[Sequence],
        row_ids: Optional[Sequence[Id]] = None,
        col_ids: Optional[Sequence[Id]] = None,
    ) -> SparseMatrix:
        """Build from a dense row list; zeros are dropped.

        Ids default to ``r1, r2, ...`` and ``c1, c2, ...``.
        """
        n_cols = len(rows[0]) if rows else len(col_ids or ())
        if any(len(r) != n_cols for r in rows):
            raise ParameterError("ragged rows")
        row_ids = list(row_ids) if row_ids is not None else [f"r{i + 1}" for i in range(len(rows))]
        col_ids = list(col_ids) if col_ids is not None else [f"c{j + 1}" for j in range(n_cols)]
        if len(row_ids) != len(rows) or len(col_ids) != n_cols:
            raise ParameterError("id lists do not match the matrix shape")
        entries = {}
        for r, row in zip(row_ids, rows):
            for c, v in zip(col_ids, row):
                fv = _coerce(field, v)
                if not fv.is_zero():
                    entries[r, c] = fv
        return cls(field, row_ids, col_ids, entries)

    @classmethod
    def from_columns(
        cls,
        field: FieldSpec,
        columns: Mapping[Id, Mapping[Id, object]],
        row_ids: Sequence[Id],
    ) -> SparseMatrix:
        entries = {}
        for c, vec in columns.items():
            for r, v in vec.items():
                fv = _coerce(field, v)
                if not fv.is_zero():
                    entries[r, c] = fv
        return cls(field, row_ids, list(columns), entries)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_ids), len(self.col_ids)

    def entry(self, r: Id, c: Id) -> FieldValue:
        return self.entries.get((r, c)) or self.field.zero()

    def transpose(self) -> SparseMatrix:
        return SparseMatrix._trusted(
            self.field, self.col_ids, self.row_ids, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def column(self, c: Id) -> dict:
        return {r: self.entries[r, c] for r in self.row_ids if (r, c) in self.entries}

    def select_columns(self, cols: Iterable[Id]) -> SparseMatrix:
        cols = tuple(cols)
        keep = set(cols)
        return SparseMatrix._trusted(
            self.field, self.row_ids, cols, {k: v for k, v in self.entries.items() if k[1] in keep}
        )

    def to_rows(self) -> list[list[FieldValue]]:
        return [[self.entry(r, c) for c in self.col_ids] for r in self.row_ids]


@dataclass(frozen=True)
class KernelWitness:
    """A non-zero x: J -> F with a x = 0, checked against ``matrix`` on construction."""

    matrix: SparseMatrix = dc_field(repr=False, compare=False)
    assignment: Mapping[Id, FieldValue] = dc_field(default_factory=dict)

    def __post_init__(self):
        assignment = {c: self.assignment[c] for c in self.matrix.col_ids}
        object.__setattr__(self, "assignment", assignment)
        if all(v.is_zero() for v in assignment.values()):
            raise ParameterError("kernel witness must have a non-zero coordinate")
        product = mat_vec(self.matrix, assignment)
        bad = [r for r, v in product.items() if not v.is_zero()]
        if bad:
            raise ParameterError(f"witness is not annihilated: non-zero at rows {bad}")


def _eliminate(m: SparseMatrix):
    """Reduced row echelon form on raw payloads.

    Returns ``(rows, pivots)`` where ``pivots`` lists ``(row_position, col_position)``
    in column order and each pivot row is normalized to a leading 1.
    """
    f = m.field
    zero = f.raw(0)
    ridx = {r: i for i, r in enumerate(m.row_ids)}
    cidx = {c: j for j, c in enumerate(m.col_ids)}
    n_cols = len(m.col_ids)
    rows = [[zero] * n_cols for _ in m.row_ids]
    for (r, c), v in m.entries.items():
        rows[ridx[r]][cidx[c]] = v.payload
    unused = list(range(len(rows)))
    pivots = []
    mul, sub = f.mul_raw, f.sub_raw
    for j in range(n_cols):
        pr = next((i for i in unused if rows[i][j]), None)
        if pr is None:
            continue
        unused.remove(pr)
        inv = f.inv_raw(rows[pr][j])
        prow = [mul(v, inv) for v in rows[pr]]
        rows[pr] = prow
        for i, row in enumerate(rows):
            if i != pr and row[j]:
                factor = row[j]
                rows[i] = [sub(a, mul(factor, b)) if b else a for a, b in zip(row, prow)]
        pivots.append((pr, j))
    return rows, pivots


def rank(m: SparseMatrix) -> int:
    return len(_eliminate(m)[1])


def kernel_witness(m: SparseMatrix) -> Optional[KernelWitness]:
    """None iff a x = 0 has only the trivial solution; otherwise a canonical witness.

    The witness puts 1 on the first free column, 0 on the other free columns,
    and back-substitutes the pivot columns.
    """
    rows, pivots = _eliminate(m)
    if len(pivots) == len(m.col_ids):
        return None
    pivot_cols = {j for _, j in pivots}
    free = next(j for j in range(len(m.col_ids)) if j not in pivot_cols)
    f = m.field
    x = [f.raw(0)] * len(m.col_ids)
    x[free] = f.raw(1)
    for i, j in pivots:
        x[j] = f.neg_raw(rows[i][free])
    return KernelWitness(m, {c: FieldValue(f, x[j]) for j, c in enumerate(m.col_ids)})


def mat_vec(m: SparseMatrix, x: Mapping[Id, FieldValue]) -> dict:
    """Row sums of a x, one entry per declared row."""
    f = m.field
    missing = [c for c in m.col_ids if c not in x]
    if missing:
        raise ParameterError(f"no value for columns {missing}")
    for c in m.col_ids:
        if x[c].spec != f:
            raise SpecMismatch(f"value for column {c!r} is over {x[c].spec}, matrix over {f}")
    acc = {r: f.raw(0) for r in m.row_ids}
    for (r, c), v in m.entries.items():
        acc[r] = f.add_raw(acc[r], f.mul_raw(v.payload, x[c].payload))
    return {r: FieldValue(f, acc[r]) for r in m.row_ids}
