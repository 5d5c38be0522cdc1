"""The symmetric-group dot action on equivariant classes.

``(u . p)(v) = p(u^{-1} v)`` with the variables permuted by ``u``.  The
action preserves the divisibility conditions, transports supports by left
multiplication, and restricts to each cohomology degree.

For the permutohedral Hessenberg function, the action of a simple
reflection on a basis class has an exact combinatorial expansion.  Three
cases, by the positions of the values ``i`` and ``i+1`` in ``w``:

* not adjacent: the class moves to the class of ``s_i w``;
* ``i`` directly left of ``i+1``: the class is fixed;
* ``i+1`` directly left of ``i``: the interesting case.  An auxiliary sum
  of classes indexed by subsets of the entries flanking the descent block
  satisfies the exact identity
  ``(t_{i+1} - t_i) sigma_{s_i w} = s_i . aux - aux``, which unwinds to an
  expansion of ``s_i . sigma_w`` with recursive corrections.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .classes import (
    EquivariantClass,
    expand_in_basis,
    interpolate_class,
    permutohedral_class,
)
from .gkm import EdgeKind, HessenbergFunction, edge_kind, l_h
from .perms import Permutation
from .polys import MultiPoly


def dot(u: Permutation, p: EquivariantClass) -> EquivariantClass:
    u = Permutation(u)
    values = {}
    for x, poly in p.values.items():
        values[u * x] = poly.substitute_permutation(u)
    return EquivariantClass(p.n, values)


# -- exact rules for the full flag variety -----------------------------------


def full_flag_si_expansion(w: Permutation, i: int) -> dict[Permutation, MultiPoly]:
    """Expansion of ``s_i . sigma_w`` over basis classes, full-flag case.

    ``sigma_w`` is fixed when ``s_i w`` is longer; otherwise the difference
    is ``(t_{i+1} - t_i) sigma_{s_i w}``.
    """
    n = len(w)
    si_w = Permutation.simple(i, n) * w
    if si_w.coxeter_length() > w.coxeter_length():
        return {w: MultiPoly.one(n)}
    return {
        w: MultiPoly.one(n),
        si_w: MultiPoly.linear_form(i + 1, i, n),
    }


def full_flag_si_rule_check(w: Permutation, i: int,
                            basis: dict[Permutation, EquivariantClass] | None = None) -> bool:
    """Verify the rule on actual interpolated classes."""
    n = len(w)
    h = HessenbergFunction.full_flag(n)
    si = Permutation.simple(i, n)
    si_w = si * w

    def cls_at(u: Permutation) -> EquivariantClass:
        if basis is not None:
            return basis[u]
        result = interpolate_class(u, h)
        if not result.unique:
            raise AssertionError("full-flag interpolation must be unique")
        return result.cls

    sigma_w = cls_at(w)
    difference = dot(si, sigma_w) - sigma_w
    if si_w.coxeter_length() > w.coxeter_length():
        return difference.is_zero()
    expected = cls_at(si_w).scale(MultiPoly.linear_form(i + 1, i, n))
    return difference == expected


def dashed_rule_check(w: Permutation, i: int, h: HessenbergFunction,
                      basis: dict[Permutation, EquivariantClass] | None = None) -> bool:
    """``s_i . sigma_w = sigma_{s_i w}`` whenever the pair is not an edge."""
    if edge_kind(w, i, h) is not EdgeKind.DASHED:
        raise ValueError("rule applies to dashed pairs only")
    n = h.n
    si = Permutation.simple(i, n)
    if basis is not None:
        sigma_w, sigma_si_w = basis[w], basis[si * w]
    else:
        r1, r2 = interpolate_class(w, h), interpolate_class(si * w, h)
        if not (r1.unique and r2.unique):
            raise NonUniqueBasisError(w, i, h)
        sigma_w, sigma_si_w = r1.cls, r2.cls
    return dot(si, sigma_w) == sigma_si_w


class NonUniqueBasisError(RuntimeError):
    def __init__(self, w, i, h):
        super().__init__(f"interpolation not unique for w={w}, i={i}, h={h}")


# -- permutohedral machinery --------------------------------------------------


@dataclass(frozen=True)
class AuxiliaryTerm:
    """One summand of the auxiliary class: ``mover . sigma_target``."""
    subset_low: tuple[int, ...]
    subset_high: tuple[int, ...]
    tilde: Permutation
    target: Permutation
    mover: Permutation


def descent_block_data(w: Permutation, i: int):
    """The flanking entry sets around the descent where ``i+1`` sits left of ``i``."""
    n = len(w)
    w_inv = w.inverse()
    if w_inv(i + 1) + 1 != w_inv(i):
        raise ValueError(f"values {i + 1},{i} are not adjacent-descending in {w}")
    d_here = w_inv(i + 1)
    descents = w.descents()
    index = descents.index(d_here)
    d_prev = descents[index - 1] if index > 0 else 0
    d_next = descents[index + 1] if index + 1 < len(descents) else n
    low = tuple(w(j) for j in range(d_prev + 1, d_here))
    high = tuple(w(j) for j in range(d_here + 2, d_next + 1))
    return d_prev, d_here, d_next, low, high


def auxiliary_terms(w: Permutation, i: int) -> list[AuxiliaryTerm]:
    """All ``(P, Q)``-summands of the auxiliary class for the descent case."""
    from itertools import chain, combinations

    n = len(w)
    d_prev, d_here, d_next, low, high = descent_block_data(w, i)

    def subsets(values):
        return chain.from_iterable(
            combinations(values, k) for k in range(len(values) + 1)
        )

    w_descents = set(w.descents())
    terms = []
    for p_set in subsets(low):
        for q_set in subsets(high):
            middle = sorted((set(low) | set(high) | {i}) - set(p_set) - set(q_set))
            images = (
                [w(j) for j in range(1, d_prev + 1)]
                + list(p_set)
                + [i + 1]
                + list(q_set)
                + middle
                + [w(j) for j in range(d_next + 1, n + 1)]
            )
            tilde = Permutation(images)
            corrected = list(images)
            tilde_descents = set(tilde.descents())
            if d_prev != 0 and d_prev not in tilde_descents:
                # restore the prefix boundary descent by inserting the first
                # window entry into the descending run ending at d_prev
                pos = d_prev
                corrected[pos - 1], corrected[pos] = corrected[pos], corrected[pos - 1]
                while (
                    pos - 1 >= 1
                    and pos - 1 in w_descents
                    and corrected[pos - 2] < corrected[pos - 1]
                ):
                    corrected[pos - 2], corrected[pos - 1] = (
                        corrected[pos - 1],
                        corrected[pos - 2],
                    )
                    pos -= 1
            if d_next != n and d_next not in tilde_descents:
                # symmetric insertion into the descending run starting after
                # the window
                pos = d_next
                corrected[pos - 1], corrected[pos] = corrected[pos], corrected[pos - 1]
                while (
                    pos + 1 <= n - 1
                    and pos + 1 in w_descents
                    and corrected[pos] < corrected[pos + 1]
                ):
                    corrected[pos], corrected[pos + 1] = (
                        corrected[pos + 1],
                        corrected[pos],
                    )
                    pos += 1
            target = Permutation(corrected)
            expected = (w_descents - {d_here}) | {d_prev + len(p_set) + len(q_set) + 1}
            if set(target.descents()) != expected:
                raise AssertionError(
                    f"descent correction failed: w={w}, i={i}, P={p_set}, Q={q_set}"
                )
            mover = tilde * target.inverse()
            terms.append(
                AuxiliaryTerm(
                    subset_low=tuple(p_set),
                    subset_high=tuple(q_set),
                    tilde=tilde,
                    target=target,
                    mover=mover,
                )
            )
    return terms


def build_auxiliary_class(w: Permutation, i: int) -> EquivariantClass:
    """The sum ``sum_{P,Q} mover . sigma_target`` as an explicit class."""
    n = len(w)
    total = EquivariantClass.zero(n)
    for term in auxiliary_terms(w, i):
        total = total + dot(term.mover, permutohedral_class(term.target))
    return total


# sigma_w^(i), kept under the name the rest of the code uses
build_sigma_w_i = build_auxiliary_class


class _SiExpansionCache:
    """Memoized expansions of ``s_i . sigma_w`` over the basis classes.

    Values are dicts mapping basis permutations to polynomial coefficients.
    A recursion guard raises on re-entry for the same pair, which the
    underlying identities rule out in practice.
    """

    def __init__(self, n: int):
        self.n = n
        self.cache: dict[tuple[Permutation, int], dict[Permutation, MultiPoly]] = {}
        self.in_progress: set[tuple[Permutation, int]] = set()

    def expansion(self, w: Permutation, i: int) -> dict[Permutation, MultiPoly]:
        key = (w, i)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        if key in self.in_progress:
            raise RecursionError(f"cyclic expansion request at w={w}, i={i}")
        if len(self.in_progress) > _factorial(self.n):
            raise RecursionError("expansion recursion exceeded the depth guard")
        self.in_progress.add(key)
        try:
            result = self._compute(w, i)
        finally:
            self.in_progress.discard(key)
        self.cache[key] = result
        return result

    def _compute(self, w: Permutation, i: int) -> dict[Permutation, MultiPoly]:
        n = self.n
        w_inv = w.inverse()
        j, k = w_inv(i), w_inv(i + 1)
        si = Permutation.simple(i, n)
        if abs(j - k) > 1:
            # descent pattern unchanged: the class moves along
            return {si * w: MultiPoly.one(n)}
        if j + 1 == k:
            # ascent i, i+1: acting from below fixes the class
            return {w: MultiPoly.one(n)}

        # descent case: unwind the auxiliary identity
        result: dict[Permutation, MultiPoly] = {}
        _add(result, si * w, MultiPoly.linear_form(i + 1, i, n), n)
        _add(result, w, MultiPoly.one(n), n)
        for term in auxiliary_terms(w, i):
            if term.tilde == w:
                continue  # the (P~, empty) summand is sigma_w itself
            summand = self._apply_word(
                term.mover.reduced_word(), {term.target: MultiPoly.one(n)}
            )
            moved = self._apply_word((i,), summand)
            for v, coeff in summand.items():
                _add(result, v, coeff, n)
            for v, coeff in moved.items():
                _add(result, v, -coeff, n)
        return {v: c for v, c in result.items() if not c.is_zero}

    def _apply_word(self, word, expansion):
        """Apply ``s_{word[0]} ... s_{word[-1]}`` (left to right) to an expansion."""
        current = expansion
        for gen in reversed(word):
            nxt: dict[Permutation, MultiPoly] = {}
            si = Permutation.simple(gen, self.n)
            for v, coeff in current.items():
                moved_coeff = coeff.substitute_permutation(si)
                for target, inner in self.expansion(v, gen).items():
                    _add(nxt, target, moved_coeff * inner, self.n)
            current = {v: c for v, c in nxt.items() if not c.is_zero}
        return current


def _add(acc: dict, key: Permutation, poly: MultiPoly, n: int) -> None:
    acc[key] = acc.get(key, MultiPoly.zero(n)) + poly


@lru_cache(maxsize=None)
def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


_caches: dict[int, _SiExpansionCache] = {}


def perm_si_action(w: Permutation, i: int) -> dict[Permutation, MultiPoly]:
    """Exact expansion of ``s_i . sigma_w`` over the permutohedral basis."""
    w = Permutation(w)
    cache = _caches.setdefault(len(w), _SiExpansionCache(len(w)))
    return cache.expansion(w, i)


def apply_perm_to_expansion(
    u: Permutation, expansion: dict[Permutation, MultiPoly]
) -> dict[Permutation, MultiPoly]:
    """Expansion of ``u .`` applied to an expansion, permutohedral case."""
    cache = _caches.setdefault(len(u), _SiExpansionCache(len(u)))
    return cache._apply_word(u.reduced_word(), expansion)


# -- action matrices -----------------------------------------------------------


class UncertifiedActionError(RuntimeError):
    """Requested an action matrix for an h without exact rules or a unique basis."""


@dataclass
class ActionMatrix:
    """Exact matrix of a group element on one ordinary cohomology degree."""

    degree: int
    h: HessenbergFunction
    basis_order: tuple[Permutation, ...]
    columns: dict[Permutation, dict[Permutation, Fraction]]

    def entry(self, row: Permutation, col: Permutation) -> Fraction:
        return self.columns.get(col, {}).get(row, Fraction(0))

    def apply_vector(self, vec: dict[Permutation, Fraction]) -> dict[Permutation, Fraction]:
        out: dict[Permutation, Fraction] = {}
        for col, coeff in vec.items():
            if not coeff:
                continue
            for row, val in self.columns.get(col, {}).items():
                acc = out.get(row, Fraction(0)) + coeff * val
                if acc:
                    out[row] = acc
                else:
                    out.pop(row, None)
        return out

    def compose(self, other: "ActionMatrix") -> "ActionMatrix":
        """Matrix of ``self`` after ``other`` (self @ other)."""
        columns = {
            col: self.apply_vector(vec) for col, vec in other.columns.items()
        }
        return ActionMatrix(self.degree, self.h, self.basis_order, columns)

    def __eq__(self, other):
        if not isinstance(other, ActionMatrix):
            return NotImplemented
        cols = set(self.columns) | set(other.columns)
        for col in cols:
            a = {k: v for k, v in self.columns.get(col, {}).items() if v}
            b = {k: v for k, v in other.columns.get(col, {}).items() if v}
            if a != b:
                return False
        return True

    @classmethod
    def identity(cls, degree: int, h: HessenbergFunction,
                 basis_order: tuple[Permutation, ...]) -> "ActionMatrix":
        return cls(
            degree, h, basis_order,
            {w: {w: Fraction(1)} for w in basis_order},
        )

    def trace(self) -> Fraction:
        return sum(
            (self.columns.get(w, {}).get(w, Fraction(0)) for w in self.basis_order),
            Fraction(0),
        )


def degree_basis(h: HessenbergFunction, k: int) -> tuple[Permutation, ...]:
    return tuple(w for w in Permutation.all(h.n) if l_h(w, h) == k)


def _ordinary_column(expansion: dict[Permutation, MultiPoly], h, k) -> dict[Permutation, Fraction]:
    column: dict[Permutation, Fraction] = {}
    for v, coeff in expansion.items():
        if l_h(v, h) == k:
            constant = coeff.constant_term()
            if constant:
                column[v] = Fraction(constant)
    return column


def generator_matrix(i: int, k: int, h: HessenbergFunction,
                     basis: dict[Permutation, EquivariantClass] | None = None) -> ActionMatrix:
    """Matrix of ``s_i`` on ordinary degree-2k cohomology."""
    order = degree_basis(h, k)
    columns: dict[Permutation, dict[Permutation, Fraction]] = {}
    if h.is_permutohedral():
        for w in order:
            columns[w] = _ordinary_column(perm_si_action(w, i), h, k)
    elif h.is_full_flag():
        for w in order:
            columns[w] = _ordinary_column(full_flag_si_expansion(w, i), h, k)
    else:
        if basis is None:
            basis = unique_interpolated_basis(h)
        si = Permutation.simple(i, h.n)
        for w in order:
            expansion = expand_in_basis(dot(si, basis[w]), basis, h)
            columns[w] = _ordinary_column(expansion, h, k)
    return ActionMatrix(k, h, order, columns)


def unique_interpolated_basis(h: HessenbergFunction) -> dict[Permutation, EquivariantClass]:
    """Interpolated basis for general h; raises unless every class is pinned down."""
    basis = {}
    for w in Permutation.all(h.n):
        result = interpolate_class(w, h)
        if not result.unique:
            raise UncertifiedActionError(
                f"no certified basis: interpolation not unique at w={w} for h={h}"
            )
        basis[w] = result.cls
    return basis


def action_matrix(u: Permutation, k: int, h: HessenbergFunction,
                  basis: dict[Permutation, EquivariantClass] | None = None) -> ActionMatrix:
    """Matrix of an arbitrary group element via a reduced word."""
    order = degree_basis(h, k)
    result = ActionMatrix.identity(k, h, order)
    for gen in u.reduced_word():
        result = result.compose(generator_matrix(gen, k, h, basis))
    return result
