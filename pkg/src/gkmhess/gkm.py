"""Hessenberg functions and the moment (GKM) graph of Hess(S, h).

Vertices of the graph are the permutations of [n].  For each pair
``j < i <= h(j)`` there is an edge ``w -> w s_{j,i}`` labeled
``t_{w(i)} - t_{w(j)}``; the two directions of an edge carry opposite
labels.  The oriented subgraph keeps ``v -> w`` when ``len(v) > len(w)``
in Coxeter length.
"""

from __future__ import annotations

import random
from enum import Enum
from typing import Iterable, Iterator

from .perms import Permutation
from .polys import MultiPoly


class HessenbergFunction(tuple):
    """Weakly increasing ``h : [n] -> [n]`` with ``h(i) >= i``."""

    def __new__(cls, values: Iterable[int]) -> "HessenbergFunction":
        values = tuple(values)
        n = len(values)
        for i, v in enumerate(values, start=1):
            if not i <= v <= n:
                raise ValueError(f"h({i}) = {v} outside [{i},{n}]")
        if any(values[k] > values[k + 1] for k in range(n - 1)):
            raise ValueError(f"not weakly increasing: {values}")
        return super().__new__(cls, values)

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def __str__(self) -> str:
        return ",".join(str(v) for v in self)

    @classmethod
    def from_string(cls, text: str) -> "HessenbergFunction":
        return cls(int(part) for part in text.split(","))

    @classmethod
    def permutohedral(cls, n: int) -> "HessenbergFunction":
        return cls([min(i + 1, n) for i in range(1, n + 1)])

    @classmethod
    def full_flag(cls, n: int) -> "HessenbergFunction":
        return cls([n] * n)

    def is_permutohedral(self) -> bool:
        return self == HessenbergFunction.permutohedral(self.n)

    def is_full_flag(self) -> bool:
        return all(v == self.n for v in self)

    @classmethod
    def all(cls, n: int) -> Iterator["HessenbergFunction"]:
        """All Hessenberg functions on [n] (Catalan many), lexicographically."""

        def extend(prefix: list[int]) -> Iterator[tuple[int, ...]]:
            i = len(prefix)
            if i == n:
                yield tuple(prefix)
                return
            lo = max(i + 1, prefix[-1] if prefix else 1)
            for v in range(lo, n + 1):
                yield from extend(prefix + [v])

        for values in extend([]):
            yield cls(values)

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "HessenbergFunction":
        values: list[int] = []
        for i in range(1, n + 1):
            lo = max(i, values[-1] if values else 1)
            values.append(rng.randint(lo, n))
        return cls(values)


class GkmGraph:
    """The labeled moment graph on S_n for a fixed Hessenberg function."""

    def __init__(self, h: HessenbergFunction):
        self.h = h
        self.n = h.n
        # position pairs (j, i) giving an edge at every vertex
        self.pairs = [
            (j, i)
            for j in range(1, self.n + 1)
            for i in range(j + 1, h(j) + 1)
        ]

    def vertices(self) -> Iterator[Permutation]:
        return Permutation.all(self.n)

    def neighbors(self, w: Permutation) -> list[tuple[Permutation, MultiPoly, tuple[int, int]]]:
        """Edges out of ``w``: (target, label, position pair)."""
        out = []
        for j, i in self.pairs:
            images = list(w)
            images[j - 1], images[i - 1] = images[i - 1], images[j - 1]
            target = Permutation(images)
            label = MultiPoly.linear_form(w[i - 1], w[j - 1], self.n)
            out.append((target, label, (j, i)))
        return out

    def edges(self) -> Iterator[tuple[Permutation, Permutation, MultiPoly, tuple[int, int]]]:
        """Each geometric edge once, as (v, w, label(v->w), pair)."""
        for v in self.vertices():
            for w, label, pair in self.neighbors(v):
                if v < w:
                    yield v, w, label, pair

    def oriented_out(self, w: Permutation) -> list[tuple[Permutation, MultiPoly, tuple[int, int]]]:
        """Edges of the oriented subgraph leaving ``w`` (targets of smaller length)."""
        lw = w.coxeter_length()
        out = []
        for v, label, pair in self.neighbors(w):
            lv = v.coxeter_length()
            assert lv != lw, "transposition cannot preserve length"
            if lv < lw:
                out.append((v, label, pair))
        return out


def l_h(w: Permutation, h: HessenbergFunction) -> int:
    """Count of pairs ``j < i <= h(j)`` with ``w(j) > w(i)``."""
    return sum(
        1
        for j in range(1, h.n + 1)
        for i in range(j + 1, h(j) + 1)
        if w[j - 1] > w[i - 1]
    )


def poincare_coefficients(h: HessenbergFunction) -> tuple[int, ...]:
    """Coefficient of q^{2k} is the number of w with l_h(w) = k."""
    top = sum(h(i) - i for i in range(1, h.n + 1))
    counts = [0] * (top + 1)
    for w in Permutation.all(h.n):
        counts[l_h(w, h)] += 1
    return tuple(counts)


class EdgeKind(Enum):
    SOLID_UP = "solid_up"      # w -> s_i w, i.e. len(w) > len(s_i w), connected
    SOLID_DOWN = "solid_down"  # s_i w -> w, i.e. len(s_i w) > len(w), connected
    DASHED = "dashed"          # not connected in the moment graph


def edge_kind(w: Permutation, i: int, h: HessenbergFunction) -> EdgeKind:
    """Classify the pair ``{w, s_i w}`` relative to the moment graph of ``h``.

    With ``j`` and ``k`` the positions of ``i+1`` and ``i`` in the
    longer of the two permutations (so ``j < k``), the pair is connected
    exactly when ``k <= h(j)``.
    """
    w_inv = w.inverse()
    j, k = w_inv(i + 1), w_inv(i)
    higher_is_w = j < k
    if not higher_is_w:
        j, k = k, j
    connected = k <= h(j)
    if not connected:
        return EdgeKind.DASHED
    return EdgeKind.SOLID_UP if higher_is_w else EdgeKind.SOLID_DOWN
