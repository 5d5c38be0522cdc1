"""Symbolic charts of minus cells, their minors, and the fixed-point oracle.

Points of the minus cell attached to ``(w, h)`` are matrices ``\\dot w x``
with ``x`` lower unitriangular.  Entries of ``x`` below the diagonal split
into three kinds: zero (the target value is smaller), free coordinates (the
pair is an edge of the cell digraph), and dependent entries determined by a
signed sum over decreasing index chains with eigenvalue-difference
coefficients.  Solving dependent entries in increasing index gap expresses
everything in the free coordinates.

Minors of ``x`` detect reachability (nonvanishing iff the column set reaches
the row set), and Plücker coordinates of a generic point recover the fixed
points of the closed cell, giving an oracle for the support computation that
never looks at the reachability combinatorics.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .gkm import HessenbergFunction
from .perms import Permutation
from .polys import MultiPoly
from .reach import CellDigraph, build_cell_digraph, set_reachable


class DegenerateEigenvaluesError(ValueError):
    pass


@dataclass(frozen=True)
class EigenvalueVector:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(set(self.values)) != len(self.values):
            raise DegenerateEigenvaluesError(f"eigenvalues not distinct: {self.values}")

    def __getitem__(self, k: int) -> Fraction:
        """1-based access c_k."""
        return self.values[k - 1]

    @property
    def n(self) -> int:
        return len(self.values)

    @classmethod
    def random(cls, n: int, rng: random.Random, span: int = 10**6) -> "EigenvalueVector":
        values = rng.sample(range(1, span), n)
        return cls(tuple(Fraction(v) for v in values))


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def prime_eigenvalues(n: int) -> EigenvalueVector:
    """c_k = k-th prime; the default generic choice."""
    out: list[int] = []
    candidate = 2
    while len(out) < n:
        if _is_prime(candidate):
            out.append(candidate)
        candidate += 1
    return EigenvalueVector(tuple(Fraction(p) for p in out))


class CellChart:
    """All below-diagonal entries of the chart, as polynomials in free variables."""

    def __init__(self, w: Permutation, h: HessenbergFunction, c: EigenvalueVector):
        if c.n != h.n:
            raise ValueError("eigenvalue count must match n")
        self.w = w
        self.h = h
        self.c = c
        self.digraph: CellDigraph = build_cell_digraph(w, h)
        self.free_pairs: list[tuple[int, int]] = [
            (i, j) for (j, i) in sorted(self.digraph.edges, key=lambda e: (e[1], e[0]))
        ]
        self.var_names = tuple(f"x{i}_{j}" for i, j in self.free_pairs)
        self.nvars = len(self.free_pairs)
        self._var_index = {pair: k for k, pair in enumerate(self.free_pairs)}
        self.entries: dict[tuple[int, int], MultiPoly] = {}
        self._build()

    def _zero(self) -> MultiPoly:
        return MultiPoly.zero(self.nvars, self.var_names)

    def _coeff(self, a: int, b: int) -> Fraction:
        """c_{w(a)} - c_{w(b)} for positions a, b."""
        diff = self.c[self.w(a)] - self.c[self.w(b)]
        if diff == 0:
            raise DegenerateEigenvaluesError(
                f"vanishing denominator c_{self.w(a)} - c_{self.w(b)}"
            )
        return diff

    def _build(self) -> None:
        n = self.h.n
        for gap in range(1, n):
            for beta in range(1, n - gap + 1):
                alpha = beta + gap
                if self.w(alpha) < self.w(beta):
                    self.entries[(alpha, beta)] = self._zero()
                elif alpha <= self.h(beta):
                    var = MultiPoly.variable(
                        self._var_index[(alpha, beta)], self.nvars, self.var_names
                    )
                    self.entries[(alpha, beta)] = var
                else:
                    self.entries[(alpha, beta)] = self._dependent_entry(alpha, beta)

    def _chain_sum(self, alpha: int, beta: int) -> MultiPoly:
        """Signed sum over decreasing chains alpha > g_1 > ... > g_t > beta."""
        total = self._zero()
        interior = range(beta + 1, alpha)
        for t in range(1, alpha - beta):
            for chain in itertools.combinations(interior, t):
                gammas = tuple(reversed(chain))  # decreasing
                product = self.entries[(alpha, gammas[0])]
                if product.is_zero:
                    continue
                ok = True
                for a, b in zip(gammas, gammas[1:]):
                    product = product * self.entries[(a, b)]
                    if product.is_zero:
                        ok = False
                        break
                if not ok:
                    continue
                product = product * self.entries[(gammas[-1], beta)]
                if product.is_zero:
                    continue
                scale = (-1) ** t * (self.c[self.w(gammas[-1])] - self.c[self.w(beta)])
                total = total + product * scale
        return total

    def _dependent_entry(self, alpha: int, beta: int) -> MultiPoly:
        return self._chain_sum(alpha, beta) * (Fraction(-1) / self._coeff(alpha, beta))

    def entry(self, i: int, j: int) -> MultiPoly:
        """Entry of ``x`` at row i, column j (unitriangular)."""
        if i == j:
            return MultiPoly.one(self.nvars, self.var_names)
        if i < j:
            return self._zero()
        return self.entries[(i, j)]

    def defining_equation(self, alpha: int, beta: int) -> MultiPoly:
        """f^w_{alpha,beta}; identically zero on the chart by construction."""
        lead = self.entries[(alpha, beta)] * self._coeff(alpha, beta)
        return lead + self._chain_sum(alpha, beta)

    def consistency_violations(self) -> list[tuple[int, int]]:
        """Pairs alpha > h(beta) whose defining equation fails to vanish."""
        bad = []
        n = self.h.n
        for beta in range(1, n + 1):
            for alpha in range(self.h(beta) + 1, n + 1):
                if not self.defining_equation(alpha, beta).is_zero:
                    bad.append((alpha, beta))
        return bad

    def evaluate_matrix(self, assignment: Sequence[Fraction]) -> list[list[Fraction]]:
        """The unitriangular matrix ``x`` at a point of the cell."""
        n = self.h.n
        x = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            x[i][i] = Fraction(1)
        for (i, j), poly in self.entries.items():
            x[i - 1][j - 1] = Fraction(poly.evaluate(assignment))
        return x


def build_cell_chart(w: Permutation, h: HessenbergFunction, c: EigenvalueVector | None = None) -> CellChart:
    return CellChart(w, h, c if c is not None else prime_eigenvalues(h.n))


# -- minimal paths -----------------------------------------------------------


def paths(g: CellDigraph, j: int, i: int) -> list[tuple[int, ...]]:
    """All directed paths from j to i, each as the full vertex sequence."""
    if j == i:
        return [(j,)]
    out = []
    for mid in g.successors(j):
        for tail in paths(g, mid, i):
            out.append((j,) + tail)
    return out


def is_minimal_path(g: CellDigraph, path: tuple[int, ...]) -> bool:
    """No edge of the digraph may join two non-consecutive path vertices."""
    for a in range(len(path)):
        for b in range(a + 2, len(path)):
            if (path[a], path[b]) in g.edges:
                return False
    return True


def minimal_paths(g: CellDigraph, j: int, i: int) -> list[tuple[int, ...]]:
    return [p for p in paths(g, j, i) if is_minimal_path(g, p)]


def minimal_path_coefficient(path: Sequence[int], w: Permutation, c: EigenvalueVector) -> Fraction:
    """Closed-form coefficient of the monomial attached to a minimal path.

    For the path ``j = g_{t+1} -> g_t -> ... -> g_1 -> g_0 = i`` the value is
    the product of ``c_{w(g_l)} - c_{w(g_{l+1})}`` for ``l = 1..t`` divided by
    the product of ``c_{w(i)} - c_{w(g_l)}`` for ``l = 2..t+1``.
    """
    ascending = list(path)
    gammas = list(reversed(ascending))  # g_0 = i down to g_{t+1} = j
    t = len(gammas) - 2
    numerator = Fraction(1)
    for ell in range(1, t + 1):
        numerator *= c[w(gammas[ell])] - c[w(gammas[ell + 1])]
    denominator = Fraction(1)
    for ell in range(2, t + 2):
        denominator *= c[w(gammas[0])] - c[w(gammas[ell])]
    return numerator / denominator


def path_monomial_exponents(chart: CellChart, path: Sequence[int]) -> tuple[int, ...]:
    exps = [0] * chart.nvars
    for a, b in zip(path, path[1:]):
        exps[chart._var_index[(b, a)]] += 1
    return tuple(exps)


# -- minors ------------------------------------------------------------------


def minor_symbolic(chart: CellChart, rows, cols) -> MultiPoly:
    """det over chart entries, rows/cols ascending index tuples of equal size."""
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols):
        raise ValueError("row and column sets must have equal size")
    k = len(rows)
    total = MultiPoly.zero(chart.nvars, chart.var_names)
    for sigma in itertools.permutations(range(k)):
        product = MultiPoly.one(chart.nvars, chart.var_names)
        for col, r in enumerate(sigma):
            product = product * chart.entry(rows[r], cols[col])
            if product.is_zero:
                break
        if product.is_zero:
            continue
        sign = _sign(sigma)
        total = total + product * sign
    return total


def _sign(sigma: Sequence[int]) -> int:
    sign = 1
    for a in range(len(sigma)):
        for b in range(a + 1, len(sigma)):
            if sigma[a] > sigma[b]:
                sign = -sign
    return sign


def det_fraction(matrix: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction Gaussian elimination (small sizes)."""
    m = [row[:] for row in matrix]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, size):
            if m[r][col]:
                factor = m[r][col] * inv
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def minor_at_point(chart: CellChart, rows, cols, assignment: Sequence[Fraction]) -> Fraction:
    x = chart.evaluate_matrix(assignment)
    sub = [[x[r - 1][c - 1] for c in cols] for r in rows]
    return det_fraction(sub)


def random_assignment(chart: CellChart, rng: random.Random, span: int = 10**6) -> list[Fraction]:
    return [Fraction(rng.randint(1, span)) for _ in range(chart.nvars)]


class TheoremViolationError(AssertionError):
    """A nonzero minor on an unreachable pair: must never happen."""


@dataclass
class MinorCertificate:
    w: Permutation
    h: HessenbergFunction
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    reachable: bool
    minor_nonzero: bool
    point_resamples: int
    eigenvalue_resamples: int
    symbolic_escalations: int

    @property
    def agree(self) -> bool:
        return self.reachable == self.minor_nonzero


def minor_reachability_certificate(
    w: Permutation,
    h: HessenbergFunction,
    rows,
    cols,
    rng: random.Random,
    c: EigenvalueVector | None = None,
    max_point_resamples: int = 5,
    max_eigenvalue_resamples: int = 3,
) -> MinorCertificate:
    """Compare minor nonvanishing against set reachability.

    Nonzero at any sampled point certifies a nonzero polynomial; on an
    unreachable pair that is a hard failure.  A reachable pair that keeps
    evaluating to zero escalates to the symbolic minor, then to fresh
    eigenvalues (genericity resampling), before giving up.
    """
    rows, cols = tuple(sorted(rows)), tuple(sorted(cols))
    g = build_cell_digraph(w, h)
    reachable = set_reachable(g, cols, rows)

    point_resamples = 0
    eigen_resamples = 0
    escalations = 0
    current_c = c if c is not None else prime_eigenvalues(h.n)
    while True:
        chart = CellChart(w, h, current_c)
        nonzero = False
        for _ in range(max_point_resamples):
            value = minor_at_point(chart, rows, cols, random_assignment(chart, rng))
            if value != 0:
                nonzero = True
                break
            point_resamples += 1
        if not nonzero:
            escalations += 1
            nonzero = not minor_symbolic(chart, rows, cols).is_zero
        if nonzero and not reachable:
            raise TheoremViolationError(
                f"nonzero minor on unreachable pair: w={w}, h={h}, A={rows}, B={cols}"
            )
        if nonzero == reachable:
            return MinorCertificate(
                w, h, rows, cols, reachable, nonzero,
                point_resamples, eigen_resamples, escalations,
            )
        # reachable but identically zero at these eigenvalues: resample
        eigen_resamples += 1
        if eigen_resamples > max_eigenvalue_resamples:
            return MinorCertificate(
                w, h, rows, cols, reachable, nonzero,
                point_resamples, eigen_resamples, escalations,
            )
        current_c = EigenvalueVector.random(h.n, rng, span=10 ** (6 + eigen_resamples))


# -- Pluecker patterns and the fixed-point oracle ----------------------------


def plucker_pattern(
    w: Permutation,
    h: HessenbergFunction,
    rng: random.Random,
    c: EigenvalueVector | None = None,
    seeds: int = 3,
) -> list[set[tuple[int, ...]]]:
    """For j = 1..n, the row sets with nonzero leading j-minor of a generic point.

    ``g = \\dot w x`` has row r equal to row ``w^-1(r)`` of ``x``.  The union
    over several sampled points guards against accidental vanishing: any
    nonzero evaluation certifies a nonzero coordinate.
    """
    n = h.n
    chart = build_cell_chart(w, h, c)
    w_inv = w.inverse()
    patterns: list[set[tuple[int, ...]]] = [set() for _ in range(n + 1)]
    for _ in range(seeds):
        x = chart.evaluate_matrix(random_assignment(chart, rng))
        g_rows = [x[w_inv(r) - 1] for r in range(1, n + 1)]
        for j in range(1, n + 1):
            for rows in itertools.combinations(range(1, n + 1), j):
                if rows in patterns[j]:
                    continue
                sub = [[g_rows[r - 1][cidx] for cidx in range(j)] for r in rows]
                if det_fraction(sub) != 0:
                    patterns[j].add(rows)
    return patterns[1:]


def fixed_point_oracle(
    w: Permutation,
    h: HessenbergFunction,
    rng: random.Random,
    c: EigenvalueVector | None = None,
    seeds: int = 3,
) -> frozenset[Permutation]:
    """Fixed points of the closed cell from Pluecker coordinates of a generic
    point: u belongs iff every sorted prefix of u indexes a nonzero coordinate."""
    n = h.n
    patterns = plucker_pattern(w, h, rng, c, seeds)
    members = []
    for u in Permutation.all(n):
        if all(tuple(sorted(u[:j])) in patterns[j - 1] for j in range(1, n + 1)):
            members.append(u)
    return frozenset(members)
