"""Maximum bipartite matching by augmenting paths (Kuhn's algorithm).

Left vertices are processed in the given order and neighbours are tried in
adjacency order, so the result is deterministic.
"""

from __future__ import annotations

from typing import Hashable, Mapping, Sequence


def max_bipartite_matching(
    left: Sequence[Hashable], adj: Mapping[Hashable, Sequence[Hashable]]
) -> dict:
    """Return a maximum matching as a dict ``left vertex -> right vertex``."""
    owner: dict = {}  # right -> left

    def augment(u, seen: set) -> bool:
        for v in adj.get(u, ()):
            if v in seen:
                continue
            seen.add(v)
            if v not in owner or augment(owner[v], seen):
                owner[v] = u
                return True
        return False

    for u in left:
        augment(u, set())
    matched = {u: v for v, u in owner.items()}
    return {u: matched[u] for u in left if u in matched}
