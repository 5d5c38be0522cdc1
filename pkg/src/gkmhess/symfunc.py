"""Exact symmetric functions of a fixed degree over partition-indexed bases.

Coefficient vectors over partitions of ``n`` in one of the classical bases
(monomial, elementary, complete homogeneous, power sum, Schur).  Transition
matrices are built once per degree by brute-force expansion in ``n``
variables and exact linear solves, so every conversion round-trips
bit-exactly.  The involution swapping elementary and complete homogeneous
generators acts by retagging in the e/h pair of bases.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .perms import partitions
from .polys import MultiPoly

BASES = ("m", "e", "h", "p", "s")


def partition_list(n: int) -> list[tuple[int, ...]]:
    return list(partitions(n))


# -- brute-force monomial expansions ------------------------------------------


@lru_cache(maxsize=None)
def _e_k(k: int, n: int) -> MultiPoly:
    terms = {}
    for combo in itertools.combinations(range(n), k):
        exps = [0] * n
        for i in combo:
            exps[i] = 1
        terms[tuple(exps)] = 1
    return MultiPoly(n, terms)


@lru_cache(maxsize=None)
def _h_k(k: int, n: int) -> MultiPoly:
    terms = {}
    for combo in itertools.combinations_with_replacement(range(n), k):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        terms[tuple(exps)] = 1
    return MultiPoly(n, terms)


@lru_cache(maxsize=None)
def _p_k(k: int, n: int) -> MultiPoly:
    terms = {}
    for i in range(n):
        exps = [0] * n
        exps[i] = k
        terms[tuple(exps)] = 1
    return MultiPoly(n, terms)


def _product_basis(factors, n: int) -> MultiPoly:
    out = MultiPoly.one(n)
    for f in factors:
        out = out * f
    return out


@lru_cache(maxsize=None)
def _kostka(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Number of semistandard tableaux of shape lam and content mu."""

    def fill(row: int, remaining: tuple[int, ...], prev_row: tuple[int, ...]) -> int:
        if row == len(lam):
            return 1 if not any(remaining) else 0
        width = lam[row]
        total = 0

        def choose(col: int, last_value: int, rem: list[int], current: list[int]) -> None:
            nonlocal total
            if col == width:
                total += fill(row + 1, tuple(rem), tuple(current))
                return
            lo = max(last_value, (prev_row[col] + 1) if col < len(prev_row) else 1)
            for value in range(lo, len(rem) + 1):
                if rem[value - 1] > 0:
                    rem[value - 1] -= 1
                    current.append(value)
                    choose(col + 1, value, rem, current)
                    current.pop()
                    rem[value - 1] += 1

        choose(0, 1, list(remaining), [])
        return total

    return fill(0, mu, ())


@lru_cache(maxsize=None)
def _monomial_expansion(basis: str, lam: tuple[int, ...], n: int) -> dict[tuple[int, ...], Fraction]:
    """Coefficients of the basis element over monomial symmetric functions."""
    if basis == "m":
        return {lam: Fraction(1)}
    if basis == "s":
        return {
            mu: Fraction(_kostka(lam, mu))
            for mu in partition_list(n)
            if _kostka(lam, mu)
        }
    builder = {"e": _e_k, "h": _h_k, "p": _p_k}[basis]
    poly = _product_basis([builder(part, n) for part in lam], n)
    out: dict[tuple[int, ...], Fraction] = {}
    for mu in partition_list(n):
        exps = tuple(mu) + (0,) * (n - len(mu))
        coeff = poly.terms.get(exps, 0)
        if coeff:
            out[mu] = Fraction(coeff)
    return out


@lru_cache(maxsize=None)
def _transition_to_m(basis: str, n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix with column lam = m-expansion of basis element lam."""
    plist = partition_list(n)
    index = {mu: i for i, mu in enumerate(plist)}
    cols = []
    for lam in plist:
        col = [Fraction(0)] * len(plist)
        for mu, coeff in _monomial_expansion(basis, lam, n).items():
            col[index[mu]] = coeff
        cols.append(tuple(col))
    return tuple(cols)


@lru_cache(maxsize=None)
def _transition_from_m(basis: str, n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Inverse transition: columns express m-elements over the basis."""
    cols = _transition_to_m(basis, n)
    size = len(cols)
    # invert the matrix whose columns are cols
    aug = [
        [cols[c][r] for c in range(size)] + [Fraction(int(r == c)) for c in range(size)]
        for r in range(size)
    ]
    for col in range(size):
        pivot = next(r for r in range(col, size) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [v - factor * p for v, p in zip(aug[r], aug[col])]
    return tuple(
        tuple(aug[r][size + c] for r in range(size)) for c in range(size)
    )


class SymFunc:
    """Degree-n symmetric function: basis tag plus partition-indexed coefficients."""

    __slots__ = ("n", "basis", "coeffs")

    def __init__(self, n: int, basis: str, coeffs: dict):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.n = n
        self.basis = basis
        self.coeffs = {
            tuple(lam): Fraction(c) for lam, c in coeffs.items() if c
        }
        for lam in self.coeffs:
            if sum(lam) != n or any(
                lam[i] < lam[i + 1] for i in range(len(lam) - 1)
            ):
                raise ValueError(f"{lam} is not a partition of {n}")

    @classmethod
    def zero(cls, n: int, basis: str = "m") -> "SymFunc":
        return cls(n, basis, {})

    def __add__(self, other: "SymFunc") -> "SymFunc":
        if self.n != other.n:
            raise ValueError("degree mismatch")
        other = other.to_basis(self.basis)
        coeffs = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            coeffs[lam] = coeffs.get(lam, Fraction(0)) + c
        return SymFunc(self.n, self.basis, coeffs)

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + other.scale(-1)

    def scale(self, factor) -> "SymFunc":
        return SymFunc(
            self.n, self.basis,
            {lam: c * Fraction(factor) for lam, c in self.coeffs.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        return (
            self.n == other.n
            and self.to_basis("m").coeffs == other.to_basis("m").coeffs
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.to_basis("m").coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_basis(self, basis: str) -> "SymFunc":
        if basis == self.basis:
            return self
        plist = partition_list(self.n)
        index = {lam: i for i, lam in enumerate(plist)}
        vec = [Fraction(0)] * len(plist)
        to_m = _transition_to_m(self.basis, self.n)
        for lam, c in self.coeffs.items():
            col = to_m[index[lam]]
            for i, v in enumerate(col):
                vec[i] += c * v
        if basis == "m":
            coeffs = {plist[i]: v for i, v in enumerate(vec) if v}
            return SymFunc(self.n, "m", coeffs)
        from_m = _transition_from_m(basis, self.n)
        out = [Fraction(0)] * len(plist)
        for i, v in enumerate(vec):
            if v:
                col = from_m[i]
                for r, entry in enumerate(col):
                    out[r] += v * entry
        coeffs = {plist[i]: v for i, v in enumerate(out) if v}
        return SymFunc(self.n, basis, coeffs)

    def omega(self) -> "SymFunc":
        """The involution exchanging elementary and complete homogeneous bases."""
        if self.basis == "e":
            return SymFunc(self.n, "h", self.coeffs)
        if self.basis == "h":
            return SymFunc(self.n, "e", self.coeffs)
        return self.to_basis("e").omega().to_basis(self.basis)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for lam in sorted(self.coeffs, reverse=True):
            c = self.coeffs[lam]
            name = f"{self.basis}[{','.join(map(str, lam))}]"
            bits.append(f"{c}*{name}")
        return " + ".join(bits)

    __repr__ = __str__


def z_mu(mu: tuple[int, ...]) -> int:
    """Centralizer order of the cycle type: prod i^{m_i} m_i!."""
    out = 1
    for part in set(mu):
        count = mu.count(part)
        out *= part**count
        for k in range(2, count + 1):
            out *= k
    return out


def cycle_type_representative(mu: tuple[int, ...]):
    """Canonical permutation with cycle type mu: concatenated increasing cycles."""
    from .perms import Permutation

    images = []
    start = 1
    for part in mu:
        block = list(range(start, start + part))
        for idx, value in enumerate(block):
            images.append(block[(idx + 1) % part])
        start += part
    return Permutation(images)
