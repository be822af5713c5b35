"""Finite matroids given by independence oracles.

A :class:`Matroid` is a ground sequence (its order drives every greedy
choice) plus a pure predicate on frozensets. Minors and duals wrap the parent
oracle; nothing is materialized unless asked for.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Optional, Sequence

from .errors import (
    GroundTooLarge,
    NotAnElement,
    NotASubset,
    ParameterError,
    RankTooLarge,
    SeedDependent,
    SpecMismatch,
)
from .exactfield import FieldSpec, FieldValue
from .linalg import SparseMatrix, kernel_witness

Element = Hashable

DEFAULT_AXIOM_CAP = 10
HARD_AXIOM_CAP = 16
ORACLE_EQUALITY_CAP = 12


class Matroid:
    """Ground set plus independence oracle.

    ``indep`` receives a frozenset already known to lie inside ``ground``.
    Answers are memoized (``functools.lru_cache`` is thread-safe).
    """

    def __init__(self, ground: Iterable[Element], indep: Callable[[frozenset], bool], name: str = "matroid"):
        self.ground = tuple(ground)
        if len(set(self.ground)) != len(self.ground):
            raise ParameterError("ground elements must be distinct")
        self.groundset = frozenset(self.ground)
        self.name = name
        self._index = {e: i for i, e in enumerate(self.ground)}
        self._oracle = functools.lru_cache(maxsize=None)(indep)

    def __repr__(self):
        return f"<{self.name} on {len(self.ground)} elements>"

    def subset(self, x: Iterable[Element], what: str = "subset") -> frozenset:
        xs = frozenset(x)
        if not xs <= self.groundset:
            extra = sorted(map(repr, xs - self.groundset))
            raise NotASubset(f"{what} contains non-ground elements {extra}")
        return xs

    def ordered(self, x: Iterable[Element]) -> list:
        """Elements of ``x`` in ground order."""
        return sorted(x, key=self._index.__getitem__)

    def is_independent(self, x: Iterable[Element]) -> bool:
        return self._oracle(self.subset(x))

    @functools.cached_property
    def rank_total(self) -> int:
        return len(_greedy(self, frozenset(), self.groundset))

    def is_base(self, x: Iterable[Element]) -> bool:
        xs = self.subset(x)
        return len(xs) == self.rank_total and self._oracle(xs)

    def subsets(self) -> Iterator[frozenset]:
        for k in range(len(self.ground) + 1):
            for combo in itertools.combinations(self.ground, k):
                yield frozenset(combo)

    def independent_sets(self) -> list[frozenset]:
        return [s for s in self.subsets() if self._oracle(s)]

    def bases(self) -> list[frozenset]:
        r = self.rank_total
        return [frozenset(c) for c in itertools.combinations(self.ground, r) if self._oracle(frozenset(c))]


class VectorMatroid(Matroid):
    """Linear independence of a finite family of coordinate vectors.

    This is the finite case of thin-sum independence: S is independent iff the
    only coefficients with sum_{e in S} c_e v_e = 0 are all zero.
    """

    def __init__(self, field: FieldSpec, vectors: Mapping[Element, Mapping], coords: Sequence, name="vector matroid"):
        self.field = field
        self.coords = tuple(coords)
        self.vectors = {e: dict(v) for e, v in vectors.items()}
        self._entries = {
            e: {(c, e): val for c, val in v.items() if not val.is_zero()} for e, v in self.vectors.items()
        }
        super().__init__(self.vectors, self._independent, name)

    def _independent(self, s: frozenset) -> bool:
        cols = self.ordered(s)
        entries = {}
        for e in cols:
            entries.update(self._entries[e])
        return kernel_witness(SparseMatrix._trusted(self.field, self.coords, cols, entries)) is None


def vector_matroid(
    field: FieldSpec,
    vectors: Mapping[Element, Mapping[Hashable, FieldValue]],
    coords: Optional[Sequence[Hashable]] = None,
) -> VectorMatroid:
    """Matroid of the family ``vectors`` (element -> coordinate -> value).

    Without ``coords`` every vector must list the same coordinates; with it,
    vectors may omit zero coordinates but must not name unknown ones.
    """
    if coords is None:
        keysets = {frozenset(v) for v in vectors.values()}
        if len(keysets) > 1:
            raise SpecMismatch("vectors do not share a coordinate set")
        coords = list(next(iter(vectors.values()))) if vectors else []
    cset = set(coords)
    for e, v in vectors.items():
        unknown = set(v) - cset
        if unknown:
            raise SpecMismatch(f"vector {e!r} uses undeclared coordinates {sorted(map(repr, unknown))}")
        for val in v.values():
            if not isinstance(val, FieldValue) or val.spec != field:
                raise SpecMismatch(f"vector {e!r} has an entry outside {field}")
    return VectorMatroid(field, vectors, coords)


def matrix_matroid(m: SparseMatrix) -> VectorMatroid:
    """Column matroid of ``m``; elements are the column ids."""
    return VectorMatroid(m.field, {c: m.column(c) for c in m.col_ids}, m.row_ids, name="column matroid")


def uniform_matroid(r: int, ground: Iterable[Element]) -> Matroid:
    ground = tuple(ground)
    if r < 0:
        raise ParameterError("rank must be non-negative")
    if r > len(ground):
        raise RankTooLarge(f"U({r},{len(ground)}) needs r <= |ground|")
    m = Matroid(ground, lambda s: len(s) <= r, name=f"U({r},{len(ground)})")
    m.uniform_rank = r
    return m


def family_matroid(ground: Iterable[Element], family: Iterable[Iterable[Element]]) -> Matroid:
    """Set system given by an explicit list of independent sets.

    No axioms are enforced; use :func:`check_axioms` to find out whether it is a matroid.
    """
    m_ground = tuple(ground)
    sets = frozenset(frozenset(s) for s in family)
    for s in sets:
        if not s <= set(m_ground):
            raise NotASubset(f"family member {sorted(map(repr, s))} leaves the ground set")
    m = Matroid(m_ground, sets.__contains__, name="set family")
    m.family = sets
    return m


def _greedy(m: Matroid, seed: frozenset, within: frozenset) -> frozenset:
    current = set(seed)
    for e in m.ground:
        if e in within and e not in current and m._oracle(frozenset(current | {e})):
            current.add(e)
    return frozenset(current)


def rank_of(m: Matroid, x: Iterable[Element]) -> int:
    """Size of the greedy maximal independent subset of ``x``."""
    return len(_greedy(m, frozenset(), m.subset(x)))


def find_base(m: Matroid, seed: Iterable[Element] = ()) -> frozenset:
    """Extend the independent ``seed`` greedily (ground order) to a base."""
    s = m.subset(seed, "seed")
    if not m._oracle(s):
        raise SeedDependent(f"seed {m.ordered(s)} is dependent")
    return _greedy(m, s, m.groundset)


def dual(m: Matroid) -> Matroid:
    """S is independent in the dual iff E - S still has full rank (S misses some base)."""
    r, ground = m.rank_total, m.groundset

    def indep(s: frozenset) -> bool:
        return len(_greedy(m, frozenset(), ground - s)) == r

    return Matroid(m.ground, indep, name=f"dual({m.name})")


def delete(m: Matroid, x: Iterable[Element]) -> Matroid:
    xs = m.subset(x)
    return Matroid([e for e in m.ground if e not in xs], m._oracle, name=f"{m.name} - {len(xs)}")


def restrict(m: Matroid, x: Iterable[Element]) -> Matroid:
    return delete(m, m.groundset - m.subset(x))


def contract(m: Matroid, x: Iterable[Element]) -> Matroid:
    """M/X: S is independent iff S + J_x is, for the greedy maximal independent J_x inside X."""
    xs = m.subset(x)
    jx = _greedy(m, frozenset(), xs)
    parent = m._oracle
    c = Matroid([e for e in m.ground if e not in xs], lambda s: parent(s | jx), name=f"{m.name} / {len(xs)}")
    c.contracted_base = jx
    return c


def spans(m: Matroid, x: Iterable[Element], e: Element) -> bool:
    """X spans e iff e is in X or {e} is dependent in M/X."""
    xs = m.subset(x)
    if e not in m.groundset:
        raise NotAnElement(f"{e!r} is not a ground element")
    if e in xs:
        return True
    return not contract(m, xs).is_independent({e})


def same_matroid(a: Matroid, b: Matroid, cap: int = ORACLE_EQUALITY_CAP) -> bool:
    """Oracle equality: same ground set and identical answers on all subsets."""
    return first_disagreement(a, b, cap) is None


def first_disagreement(a: Matroid, b: Matroid, cap: int = ORACLE_EQUALITY_CAP) -> Optional[frozenset]:
    if a.groundset != b.groundset:
        raise ParameterError("matroids live on different ground sets")
    if len(a.ground) > cap:
        raise GroundTooLarge(f"oracle comparison capped at {cap} elements")
    for s in a.subsets():
        if a._oracle(s) != b._oracle(s):
            return s
    return None


@dataclass
class AxiomViolation:
    axiom: str
    witness: dict

    def __str__(self):
        parts = ", ".join(f"{k}={{{', '.join(map(str, v))}}}" for k, v in self.witness.items())
        return f"axiom ({self.axiom}) violated: {parts}"


@dataclass
class AxiomReport:
    ground_size: int
    violations: list[AxiomViolation] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def holds(self, axiom: str) -> bool:
        return all(v.axiom != axiom for v in self.violations)

    def first(self, axiom: str) -> Optional[AxiomViolation]:
        return next((v for v in self.violations if v.axiom == axiom), None)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def check_axioms(m: Matroid, cap: int = DEFAULT_AXIOM_CAP) -> AxiomReport:
    """Exhaustively test matroid axioms (I)-(IV) on every subset of the ground set.

    (I) the empty set is independent; (II) independence is closed under subsets;
    (III) for J maximal and I independent but not maximal, some e in J - I has
    I + e independent; (IV) every independent subset of every X lies in a
    maximal independent subset of X. Violations are listed in a fixed order
    (smaller sets first, ties by ground order).
    """
    if cap > HARD_AXIOM_CAP:
        raise ParameterError(f"axiom cap {cap} exceeds the hard limit {HARD_AXIOM_CAP}")
    n = len(m.ground)
    if n > cap:
        raise GroundTooLarge(f"{n} elements exceed the axiom-check cap {cap}")

    def as_set(mask):
        return frozenset(m.ground[i] for i in range(n) if mask >> i & 1)

    def named(mask):
        return tuple(m.ground[i] for i in range(n) if mask >> i & 1)

    def order(mask):
        return (bin(mask).count("1"), [i for i in range(n) if mask >> i & 1])

    full = (1 << n) - 1
    indep = [m._oracle(as_set(s)) for s in range(1 << n)]
    report = AxiomReport(n)
    add = report.violations.append

    if not indep[0]:
        add(AxiomViolation("I", {"empty": ()}))

    for s in sorted((s for s in range(1 << n) if indep[s]), key=order):
        for b in _bits(s):
            if not indep[s ^ b]:
                add(AxiomViolation("II", {"S": named(s), "subset": named(s ^ b)}))

    independent = sorted((s for s in range(1 << n) if indep[s]), key=order)
    maximal = [s for s in independent if not any(indep[s | b] for b in _bits(full & ~s))]
    maxset = set(maximal)
    non_maximal = [s for s in independent if s not in maxset]
    for j in maximal:
        for i in non_maximal:
            if not any(indep[i | b] for b in _bits(j & ~i)):
                add(AxiomViolation("III", {"J": named(j), "I": named(i)}))

    for x in sorted(range(1 << n), key=order):
        inside = []
        sub = x
        while True:
            if indep[sub]:
                inside.append(sub)
            if sub == 0:
                break
            sub = (sub - 1) & x
        tops = [s for s in inside if not any(indep[s | b] for b in _bits(x & ~s))]
        for i in sorted(inside, key=order):
            if not any(i & t == i for t in tops):
                add(AxiomViolation("IV", {"X": named(x), "I": named(i)}))
    return report
