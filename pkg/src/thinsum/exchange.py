"""Constructive base exchange.

For bases B0, B1 of a finite matroid we build a bijection f: B0 -> B1 with
B0 - x + f(x) a base for every x. The direct route finds a perfect matching in
the exchange graph; the dual route reduces to disjoint complementary bases
(contract B0 & B1, delete the rest), matches in the dual with the roles of the
bases switched, and inverts. Every returned map is re-checked against the
oracle before it leaves this module.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterable, Iterator

from .errors import InternalContractViolation, NotABase, NotIndependent, ParameterError
from .matching import max_bipartite_matching
from .matroid import Matroid, contract, delete, dual, find_base


class InjectionMap(Mapping):
    """Read-only injective mapping; insertion order is preserved."""

    def __init__(self, pairs=()):
        self._pairs = dict(pairs)
        if len(set(self._pairs.values())) != len(self._pairs):
            raise ParameterError("map is not injective")

    def __getitem__(self, key):
        return self._pairs[key]

    def __iter__(self) -> Iterator:
        return iter(self._pairs)

    def __len__(self):
        return len(self._pairs)

    def __repr__(self):
        return f"InjectionMap({self._pairs!r})"

    def inverse(self) -> InjectionMap:
        return InjectionMap((v, k) for k, v in self._pairs.items())

    def restrict(self, keys: Iterable) -> InjectionMap:
        return InjectionMap((k, self._pairs[k]) for k in keys)


class Form(str, Enum):
    SWAP_IN_B0 = "SwapInB0"  # B0 - x + f(x) is a base
    SWAP_IN_B1 = "SwapInB1"  # B1 - f(x) + x is a base


@dataclass(frozen=True)
class ExchangeGraph:
    left: tuple
    right: tuple
    edges: tuple

    def adjacency(self) -> dict:
        adj = {x: [] for x in self.left}
        for x, y in self.edges:
            adj[x].append(y)
        return adj


def _base(m: Matroid, b: Iterable[Hashable], which: str) -> frozenset:
    bs = m.subset(b, which)
    if not m.is_base(bs):
        raise NotABase(which, m.ordered(bs))
    return bs


def swap(b: frozenset, out, into) -> frozenset:
    return (b - {out}) | {into}


def exchange_graph(m: Matroid, b0: Iterable[Hashable], b1: Iterable[Hashable]) -> ExchangeGraph:
    """Bipartite graph on B0 - B1 vs B1 - B0 with an edge whenever the swap is a base."""
    b0, b1 = _base(m, b0, "b0"), _base(m, b1, "b1")
    left, right = m.ordered(b0 - b1), m.ordered(b1 - b0)
    edges = tuple((x, y) for x in left for y in right if m.is_base(swap(b0, x, y)))
    return ExchangeGraph(tuple(left), tuple(right), edges)


def base_exchange_bijection(m: Matroid, b0: Iterable[Hashable], b1: Iterable[Hashable]) -> InjectionMap:
    """Bijection f: B0 -> B1, identity on B0 & B1, with B0 - x + f(x) a base for all x."""
    b0, b1 = _base(m, b0, "b0"), _base(m, b1, "b1")
    graph = exchange_graph(m, b0, b1)
    matched = max_bipartite_matching(graph.left, graph.adjacency())
    if len(matched) != len(graph.left) or len(graph.left) != len(graph.right):
        raise InternalContractViolation("exchange graph has no perfect matching", graph)
    f = InjectionMap((x, matched[x] if x in matched else x) for x in m.ordered(b0))
    _check_swaps(m, b0, f, Form.SWAP_IN_B0, b1)
    return f


def dual_base_exchange(m: Matroid, b0: Iterable[Hashable], b1: Iterable[Hashable]) -> InjectionMap:
    """Same contract as :func:`base_exchange_bijection`, built through the dual.

    Contract B0 & B1 and delete E - (B0 | B1) so that the remaining parts of the
    bases are disjoint and cover the minor. There they are complementary, hence
    also bases of the dual; match B1' -> B0' in the dual and invert.
    """
    b0, b1 = _base(m, b0, "b0"), _base(m, b1, "b1")
    common = b0 & b1
    minor = delete(contract(m, common), m.groundset - (b0 | b1))
    d0, d1 = b0 - b1, b1 - b0
    if not (minor.is_base(d0) and minor.is_base(d1)):
        raise InternalContractViolation("reduced sets are not bases of the minor", (minor, d0, d1))
    g = base_exchange_bijection(dual(minor), d1, d0)
    f_reduced = g.inverse()
    f = InjectionMap((x, x if x in common else f_reduced[x]) for x in m.ordered(b0))
    _check_swaps(m, b0, f, Form.SWAP_IN_B0, b1)
    return f


def reform_bijection(
    m: Matroid,
    b0: Iterable[Hashable],
    b1: Iterable[Hashable],
    form: Form | str = Form.SWAP_IN_B0,
    route: str = "dual",
) -> InjectionMap:
    """Exchange bijection B0 -> B1 in either form.

    ``SwapInB1`` is obtained from the other form by swapping the roles of the
    bases and inverting. ``route`` picks the underlying construction
    (``"dual"`` or ``"direct"``).
    """
    form = Form(form)
    exchange = {"dual": dual_base_exchange, "direct": base_exchange_bijection}.get(route)
    if exchange is None:
        raise ParameterError(f"unknown route {route!r}")
    b0, b1 = _base(m, b0, "b0"), _base(m, b1, "b1")
    if form is Form.SWAP_IN_B0:
        return exchange(m, b0, b1)
    h = exchange(m, b1, b0).inverse()
    f = InjectionMap((x, h[x]) for x in m.ordered(b0))
    _check_swaps(m, b0, f, Form.SWAP_IN_B1, b1)
    return f


def independent_into_base_injection(
    m: Matroid, j: Iterable[Hashable], b: Iterable[Hashable], route: str = "dual"
) -> InjectionMap:
    """Injection f: J -> B with B - f(x) + x a base for every x in the independent set J."""
    js = m.subset(j, "j")
    if not m.is_independent(js):
        raise NotIndependent(f"j = {m.ordered(js)} is dependent")
    bs = _base(m, b, "b")
    extended = find_base(m, js)
    f = reform_bijection(m, extended, bs, Form.SWAP_IN_B1, route).restrict(m.ordered(js))
    for x, y in f.items():
        if not m.is_base(swap(bs, y, x)):
            raise InternalContractViolation(f"b - {y!r} + {x!r} is not a base", f)
    return f


def _check_swaps(m: Matroid, b0: frozenset, f: InjectionMap, form: Form, b1: frozenset) -> None:
    if set(f) != b0 or set(f.values()) != b1:
        raise InternalContractViolation("map is not a bijection between the bases", f)
    for x, y in f.items():
        trial = swap(b0, x, y) if form is Form.SWAP_IN_B0 else swap(b1, y, x)
        if not m.is_base(trial):
            raise InternalContractViolation(f"swap ({x!r}, {y!r}) does not give a base", f)
