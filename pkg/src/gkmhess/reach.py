"""The cell digraph G_{w,h} and the reachability description of class supports.

``G_{w,h}`` has vertex set [n] and an edge ``j -> i`` exactly when
``j < i <= h(j)`` and ``w(j) < w(i)``; all edges increase the index, so the
graph is acyclic.  A set ``A`` is reachable from ``B`` (same sizes) when
the bipartite graph pairing sources ``b`` with targets ``a`` reachable from
``b`` admits a perfect matching.  The fixed points of the closed minus cell
attached to ``(w, h)`` are the permutations whose every prefix, pulled back
through ``w``, is reachable from an initial segment.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .gkm import HessenbergFunction
from .perms import Permutation


class CellDigraph:

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        self.n = n
        self.edges = frozenset(edges)
        for j, i in self.edges:
            if not 1 <= j < i <= n:
                raise ValueError(f"edge ({j},{i}) must increase inside [1,{n}]")
        self._closure: dict[int, frozenset[int]] | None = None

    def successors(self, j: int) -> list[int]:
        return sorted(i for (a, i) in self.edges if a == j)

    def reach_closure(self) -> dict[int, frozenset[int]]:
        """Vertex -> set of reachable vertices (including itself)."""
        if self._closure is None:
            closure: dict[int, frozenset[int]] = {}
            # vertices in decreasing order: successors already resolved
            for j in range(self.n, 0, -1):
                reached = {j}
                for i in self.successors(j):
                    reached |= closure[i]
                closure[j] = frozenset(reached)
            self._closure = closure
        return self._closure

    def __repr__(self) -> str:
        return f"CellDigraph(n={self.n}, edges={sorted(self.edges)})"


def build_cell_digraph(w: Permutation, h: HessenbergFunction) -> CellDigraph:
    n = h.n
    edges = [
        (j, i)
        for j in range(1, n + 1)
        for i in range(j + 1, h(j) + 1)
        if w[j - 1] < w[i - 1]
    ]
    return CellDigraph(n, edges)


def vertex_reachable(g: CellDigraph, j: int, i: int) -> bool:
    return i in g.reach_closure()[j]


def _check_sorted(label: str, values) -> tuple[int, ...]:
    values = tuple(values)
    if list(values) != sorted(set(values)):
        raise ValueError(f"{label} must be strictly increasing, got {values}")
    return values


def set_reachable(g: CellDigraph, sources, targets) -> bool:
    """True when ``targets`` is reachable from ``sources`` (perfect matching).

    Both arguments are ascending tuples/sets of the same size.  Matching by
    augmenting paths over the reachability closure.
    """
    b = _check_sorted("sources", sorted(sources) if isinstance(sources, (set, frozenset)) else sources)
    a = _check_sorted("targets", sorted(targets) if isinstance(targets, (set, frozenset)) else targets)
    if len(a) != len(b):
        raise ValueError("sources and targets must have equal sizes")
    closure = g.reach_closure()
    adjacency = [[t for t, target in enumerate(a) if target in closure[source]] for source in b]
    matched_target = [-1] * len(a)

    def augment(s: int, seen: list[bool]) -> bool:
        for t in adjacency[s]:
            if not seen[t]:
                seen[t] = True
                if matched_target[t] == -1 or augment(matched_target[t], seen):
                    matched_target[t] = s
                    return True
        return False

    return all(augment(s, [False] * len(a)) for s in range(len(b)))


def j_family(w: Permutation, h: HessenbergFunction, j: int) -> set[tuple[int, ...]]:
    """Ascending j-tuples whose underlying set is reachable from [j]."""
    if not 1 <= j <= h.n:
        raise ValueError(f"level {j} outside [1,{h.n}]")
    g = build_cell_digraph(w, h)
    initial = tuple(range(1, j + 1))
    return {
        combo
        for combo in itertools.combinations(range(1, h.n + 1), j)
        if set_reachable(g, initial, combo)
    }


@dataclass(frozen=True)
class SupportSet:
    w: Permutation
    h: HessenbergFunction
    members: frozenset[Permutation] = field(compare=False)

    def __contains__(self, u) -> bool:
        return tuple(u) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> list[Permutation]:
        return sorted(self.members)


def support_A(w: Permutation, h: HessenbergFunction) -> SupportSet:
    """Fixed points of the closed minus cell of ``(w, h)``.

    Enumerates S_n by extending prefixes ``u(1..j)``; a prefix survives when
    the index set ``{w^-1(u(1)), ..., w^-1(u(j))}`` is reachable from [j].
    Failing a level kills every extension since membership requires all
    levels at once.
    """
    n = h.n
    g = build_cell_digraph(w, h)
    w_inv = w.inverse()
    members: list[Permutation] = []

    def extend(prefix: list[int], pulled: list[int]) -> None:
        j = len(prefix)
        if j:
            if not set_reachable(g, tuple(range(1, j + 1)), tuple(sorted(pulled))):
                return
        if j == n:
            members.append(Permutation(prefix))
            return
        for value in range(1, n + 1):
            if value not in prefix:
                extend(prefix + [value], pulled + [w_inv(value)])

    extend([], [])
    return SupportSet(w=w, h=h, members=frozenset(members))


# -- Bruhat order (used as an independent oracle for the full-flag case) ----


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """Dominance test: ``u <= w`` iff every sorted prefix of u is
    entrywise at most the corresponding sorted prefix of w."""
    if len(u) != len(w):
        raise ValueError("size mismatch")
    for j in range(1, len(u)):
        for a, b in zip(sorted(u[:j]), sorted(w[:j])):
            if a > b:
                return False
    return True


def bruhat_upper_set(w: Permutation) -> frozenset[Permutation]:
    """All ``u >= w`` by upward BFS along length-increasing transpositions."""
    n = len(w)
    frontier = {w}
    seen = {w}
    while frontier:
        nxt = set()
        for v in frontier:
            lv = v.coxeter_length()
            for a in range(1, n + 1):
                for b in range(a + 1, n + 1):
                    images = list(v)
                    pa, pb = images.index(a), images.index(b)
                    images[pa], images[pb] = images[pb], images[pa]
                    cand = Permutation(images)
                    if cand.coxeter_length() == lv + 1 and cand not in seen:
                        seen.add(cand)
                        nxt.add(cand)
        frontier = nxt
    return frozenset(seen)
