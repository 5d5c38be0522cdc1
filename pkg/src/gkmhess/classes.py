"""Equivariant cohomology classes as fixed-point value maps.

A class assigns a polynomial in ``t1..tn`` to every permutation, subject to
the divisibility condition along moment-graph edges: the label of an edge
divides the difference of the endpoint values.  The geometric basis element
attached to ``(w, h)`` is supported on the fixed points of the closed minus
cell, is homogeneous of degree ``l_h(w)``, and takes the product of the
downward edge labels as its value at ``w``.

For the permutohedral Hessenberg function every basis class has a closed
form; for arbitrary ``h`` the flow-up class is reconstructed by exact linear
interpolation over the support, processing fixed points in increasing
Coxeter length and carrying undetermined rational parameters until the edge
conditions pin them down (or leave genuine freedom, which is reported).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .gkm import GkmGraph, HessenbergFunction, l_h
from .perms import Permutation
from .polys import MultiPoly
from .reach import support_A


class EquivariantClass:
    """Total map S_n -> polynomials; zero values are not stored."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: dict):
        self.n = n
        self.values = {
            Permutation(v): p for v, p in values.items() if not p.is_zero
        }

    def value(self, v) -> MultiPoly:
        return self.values.get(tuple(v), MultiPoly.zero(self.n))

    def support(self) -> frozenset[Permutation]:
        return frozenset(self.values)

    def __add__(self, other: "EquivariantClass") -> "EquivariantClass":
        if self.n != other.n:
            raise ValueError("size mismatch")
        values = dict(self.values)
        for v, p in other.values.items():
            values[v] = values.get(v, MultiPoly.zero(self.n)) + p
        return EquivariantClass(self.n, values)

    def __sub__(self, other: "EquivariantClass") -> "EquivariantClass":
        return self + other.scale(-1)

    def scale(self, factor) -> "EquivariantClass":
        """Multiply every value by a scalar or polynomial."""
        return EquivariantClass(
            self.n, {v: p * factor for v, p in self.values.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, EquivariantClass)
            and self.n == other.n
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.values.items())))

    def is_zero(self) -> bool:
        return not self.values

    def is_homogeneous(self, degree: int) -> bool:
        return all(p.is_homogeneous(degree) for p in self.values.values())

    @classmethod
    def zero(cls, n: int) -> "EquivariantClass":
        return cls(n, {})

    @classmethod
    def constant(cls, n: int, c=1) -> "EquivariantClass":
        poly = MultiPoly.constant(c, n)
        return cls(n, {w: poly for w in Permutation.all(n)})


@dataclass
class GkmViolation:
    v: Permutation
    w: Permutation
    label: MultiPoly
    difference: MultiPoly


def gkm_check(p: EquivariantClass, h: HessenbergFunction) -> tuple[bool, GkmViolation | None]:
    """Divisibility of value differences along every moment-graph edge.

    Edges with both endpoints outside the support are skipped (difference
    zero).  Returns the first violation found, scanning vertices in
    lexicographic order.
    """
    graph = GkmGraph(h)
    checked: set[tuple] = set()
    for v in sorted(p.support()):
        pv = p.value(v)
        for target, label, _pair in graph.neighbors(v):
            key = (v, target) if v < target else (target, v)
            if key in checked:
                continue
            checked.add(key)
            diff = pv - p.value(target)
            if diff.is_zero:
                continue
            if diff.divide_linear(label) is None:
                return False, GkmViolation(v, target, label, diff)
    return True, None


def top_value(w: Permutation, h: HessenbergFunction) -> MultiPoly:
    """Product of the labels on oriented edges leaving ``w``."""
    graph = GkmGraph(h)
    result = MultiPoly.one(h.n)
    for _target, label, _pair in graph.oriented_out(w):
        result = result * label
    return result


def permutohedral_class(w: Permutation, n: int | None = None) -> EquivariantClass:
    """Closed-form basis class for ``h = (2, 3, ..., n, n)``.

    Supported on the left Young-subgroup orbit determined by the descent
    blocks of ``w``; at each support point ``v`` the value is the product of
    ``t_{v(d+1)} - t_{v(d)}`` over descents ``d`` of ``w``.
    """
    if n is None:
        n = len(w)
    w = Permutation(w)
    descents = w.descents()
    bounds = (0,) + descents + (n,)
    blocks = [
        [w(m) for m in range(bounds[s] + 1, bounds[s + 1] + 1)]
        for s in range(len(bounds) - 1)
    ]
    values = {}
    for u in _young_orbit(blocks, w):
        poly = MultiPoly.one(n)
        for d in descents:
            poly = poly * MultiPoly.linear_form(u[d], u[d - 1], n)
        values[u] = poly
    return EquivariantClass(n, values)


def _young_orbit(value_blocks: list[list[int]], w: Permutation) -> list[Permutation]:
    """All ``u * w`` with ``u`` ranging over the Young subgroup of the blocks."""
    from itertools import permutations as iperm

    n = len(w)
    block_arrangements = []
    for block in value_blocks:
        block_arrangements.append([dict(zip(block, arr)) for arr in iperm(block)])
    orbit = []

    def build(index: int, mapping: dict):
        if index == len(block_arrangements):
            u = [0] * n
            for a, b in mapping.items():
                u[a - 1] = b
            orbit.append(Permutation(u) * w)
            return
        for piece in block_arrangements[index]:
            merged = dict(mapping)
            merged.update(piece)
            build(index + 1, merged)

    build(0, {})
    return orbit


def smooth_point_value(w: Permutation, v: Permutation, h: HessenbergFunction,
                       support: frozenset[Permutation]) -> MultiPoly:
    """Product of labels on edges out of ``v`` leaving the support."""
    graph = GkmGraph(h)
    result = MultiPoly.one(h.n)
    for target, label, _pair in graph.neighbors(v):
        if target not in support:
            result = result * label
    return result


# -- interpolation of flow-up classes for arbitrary h ------------------------


class InfeasibleInterpolationError(RuntimeError):
    """The flow-up linear system admits no solution: indicates a bug."""


@dataclass
class InterpolationResult:
    cls: EquivariantClass
    unique: bool
    free_parameters: int


def _monomials(n: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(n), degree):
        exps = [0] * n
        for index in combo:
            exps[index] += 1
        out.append(tuple(exps))
    return sorted(out, reverse=True)


class _ParamPoly:
    """A polynomial with coefficients affine in global rational parameters.

    Stored as ``parts[k]`` for parameter id ``k`` (id 0 is the constant
    part): the value is ``parts[0] + sum params_k * parts[k]``.
    """

    __slots__ = ("n", "parts")

    def __init__(self, n: int, parts: dict[int, MultiPoly] | None = None):
        self.n = n
        self.parts = {k: p for k, p in (parts or {}).items() if not p.is_zero}

    @classmethod
    def known(cls, poly: MultiPoly) -> "_ParamPoly":
        return cls(poly.nvars, {0: poly})

    def concrete(self) -> MultiPoly:
        """The polynomial with every parameter set to zero."""
        return self.parts.get(0, MultiPoly.zero(self.n))

    def param_ids(self):
        return [k for k in self.parts if k]

    def substitute_param(self, pid: int, replacement: dict[int, Fraction]) -> "_ParamPoly":
        """Replace parameter ``pid`` by an affine combination of others."""
        if pid not in self.parts:
            return self
        pivot = self.parts[pid]
        parts = {k: p for k, p in self.parts.items() if k != pid}
        for k, coeff in replacement.items():
            if coeff:
                parts[k] = parts.get(k, MultiPoly.zero(self.n)) + pivot * coeff
        return _ParamPoly(self.n, parts)


def _solve_vertex(
    n: int,
    degree: int,
    edge_constraints: list[tuple[int, int, "_ParamPoly"]],
    next_param: int,
) -> tuple["_ParamPoly", list[dict[int, Fraction]], int]:
    """Solve for one fixed-point value subject to edge congruences.

    Each constraint ``(a, b, rhs)`` demands that the unknown agree with
    ``rhs`` after substituting ``t_a := t_b`` (divisibility by ``t_a - t_b``).
    Returns the general solution as a parameter polynomial, plus any affine
    relations among pre-existing parameters forced by consistency.
    """
    monos = _monomials(n, degree)
    mono_index = {m: k for k, m in enumerate(monos)}
    ncols = len(monos)

    # rows: coefficient vector over unknown monomials, then affine rhs parts
    rows: list[list[Fraction]] = []
    rhs_parts: list[dict[int, Fraction]] = []

    for a, b, rhs in edge_constraints:
        # image monomials of the substitution t_a := t_b
        images: dict[tuple[int, ...], dict[int, Fraction]] = {}
        for mono in monos:
            img = list(mono)
            img[b - 1] += img[a - 1]
            img[a - 1] = 0
            images.setdefault(tuple(img), {})[mono_index[mono]] = Fraction(1)
        rhs_sub = {k: p.substitute_var(a, b) for k, p in rhs.parts.items()}
        touched = set(images)
        for p in rhs_sub.values():
            touched.update(p.terms)
        for img in sorted(touched):
            row = [Fraction(0)] * ncols
            for col, coeff in images.get(img, {}).items():
                row[col] = coeff
            affine = {
                k: Fraction(p.terms.get(img, 0)) for k, p in rhs_sub.items()
                if p.terms.get(img, 0)
            }
            rows.append(row)
            rhs_parts.append(affine)

    # Gaussian elimination on [rows | rhs_parts]
    pivots: dict[int, int] = {}  # column -> row index
    relations: list[dict[int, Fraction]] = []
    r = 0
    for col in range(ncols):
        pivot_row = next(
            (k for k in range(r, len(rows)) if rows[k][col] != 0), None
        )
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        rhs_parts[r], rhs_parts[pivot_row] = rhs_parts[pivot_row], rhs_parts[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        rhs_parts[r] = {k: v * inv for k, v in rhs_parts[r].items()}
        for k in range(len(rows)):
            if k != r and rows[k][col] != 0:
                factor = rows[k][col]
                rows[k] = [v - factor * p for v, p in zip(rows[k], rows[r])]
                merged = dict(rhs_parts[k])
                for key, val in rhs_parts[r].items():
                    merged[key] = merged.get(key, Fraction(0)) - factor * val
                rhs_parts[k] = {key: val for key, val in merged.items() if val}
        pivots[col] = r
        r += 1

    # rows beyond the pivot count: consistency conditions on parameters
    for k in range(r, len(rows)):
        if any(rows[k]):
            raise AssertionError("elimination left a nonzero row unpivoted")
        if rhs_parts[k]:
            relations.append(rhs_parts[k])

    free_cols = [col for col in range(ncols) if col not in pivots]
    new_params = {col: next_param + idx for idx, col in enumerate(free_cols)}
    next_param += len(free_cols)

    # assemble the solution: pivot columns from rhs, free columns as params
    parts: dict[int, dict[tuple[int, ...], Fraction]] = {}

    def add(pid: int, mono: tuple[int, ...], coeff: Fraction):
        if coeff:
            bucket = parts.setdefault(pid, {})
            bucket[mono] = bucket.get(mono, Fraction(0)) + coeff

    for col, row_index in pivots.items():
        mono = monos[col]
        for pid, coeff in rhs_parts[row_index].items():
            add(pid, mono, coeff)
        # free columns feed back into pivot columns with opposite sign
        for fcol in free_cols:
            if rows[row_index][fcol]:
                add(new_params[fcol], mono, -rows[row_index][fcol])
    for fcol in free_cols:
        add(new_params[fcol], monos[fcol], Fraction(1))

    solution = _ParamPoly(
        n, {pid: MultiPoly(n, bucket) for pid, bucket in parts.items()}
    )
    return solution, relations, next_param


def interpolate_class(w: Permutation, h: HessenbergFunction) -> InterpolationResult:
    """Reconstruct the flow-up class of ``(w, h)`` by exact interpolation.

    Fixed points of the support are processed in increasing Coxeter length.
    At each one, the divisibility conditions along edges into already-known
    values (including zero values off the support) form a small exact linear
    system for the homogeneous value of degree ``l_h(w)``; leftover freedom
    becomes rational parameters, which later consistency conditions may
    eliminate.  Remaining parameters are reported and set to zero in the
    returned representative, keeping its support minimal.
    """
    n = h.n
    degree = l_h(w, h)
    support = support_A(w, h).members
    graph = GkmGraph(h)
    order = sorted(support, key=lambda u: (u.coxeter_length(), u))
    if order[0] != w:
        raise AssertionError("support must have w as its unique length-minimal point")

    values: dict[Permutation, _ParamPoly] = {}
    values[w] = _ParamPoly.known(top_value(w, h))
    lengths = {u: u.coxeter_length() for u in order}
    next_param = 1
    pending_relations: list[dict[int, Fraction]] = []

    def apply_relations():
        nonlocal pending_relations
        while pending_relations:
            relation = pending_relations.pop()
            # affine relation: const + sum coeff_k * param_k == 0
            live = [(k, v) for k, v in relation.items() if k and v]
            if not live:
                if relation.get(0):
                    raise InfeasibleInterpolationError(
                        f"inconsistent flow-up system for w={w}, h={h}"
                    )
                continue
            pid, coeff = max(live)
            replacement = {
                k: -v / coeff for k, v in relation.items() if k != pid
            }
            for u in list(values):
                values[u] = values[u].substitute_param(pid, replacement)
            pending_relations = [
                _sub_relation(rel, pid, replacement) for rel in pending_relations
            ]

    # check the fixed value at w against its own off-support edge conditions
    for target, label, _pair in graph.neighbors(w):
        if target not in support:
            a, b = _label_pair(label)
            if not values[w].concrete().substitute_var(a, b).is_zero:
                raise InfeasibleInterpolationError(
                    f"top value violates an off-support edge at w={w}, h={h}"
                )

    for u in order[1:]:
        constraints: list[tuple[int, int, _ParamPoly]] = []
        for target, label, _pair in graph.neighbors(u):
            a, b = _label_pair(label)
            if target in support:
                if lengths[target] < lengths[u]:
                    constraints.append((a, b, values[target]))
            else:
                constraints.append((a, b, _ParamPoly(n, {})))
        solution, relations, next_param = _solve_vertex(
            n, degree, constraints, next_param
        )
        values[u] = solution
        pending_relations.extend(relations)
        apply_relations()

    remaining = sorted({pid for v in values.values() for pid in v.param_ids()})
    concrete = EquivariantClass(
        n, {u: v.concrete() for u, v in values.items()}
    )
    return InterpolationResult(
        cls=concrete, unique=not remaining, free_parameters=len(remaining)
    )


def _sub_relation(relation: dict[int, Fraction], pid: int,
                  replacement: dict[int, Fraction]) -> dict[int, Fraction]:
    if pid not in relation:
        return relation
    scale = relation[pid]
    out = {k: v for k, v in relation.items() if k != pid}
    for k, v in replacement.items():
        out[k] = out.get(k, Fraction(0)) + scale * v
    return {k: v for k, v in out.items() if v}


def _label_pair(label: MultiPoly) -> tuple[int, int]:
    """Decompose an edge label ``t_a - t_b`` into (a, b)."""
    a = b = None
    for exps, coeff in label.terms.items():
        index = next(k for k, e in enumerate(exps) if e)
        if coeff == 1:
            a = index + 1
        else:
            b = index + 1
    if a is None or b is None:
        raise ValueError(f"not a difference of variables: {label}")
    return a, b


# -- basis expansion and ordinary reduction ----------------------------------


class ExpansionError(RuntimeError):
    """Input class lies outside the span of the basis."""


def expand_in_basis(
    p: EquivariantClass,
    basis: dict[Permutation, EquivariantClass],
    h: HessenbergFunction,
) -> dict[Permutation, MultiPoly]:
    """Triangular elimination against a flow-up basis.

    Repeatedly take the support element ``v`` of minimal Coxeter length
    (ties broken lexicographically), divide off the basis class at ``v``,
    and subtract.  Flow-up triangularity (every other support point of the
    basis class is longer) makes the minimum strictly increase.
    """
    n = p.n
    coefficients: dict[Permutation, MultiPoly] = {}
    current = p
    while not current.is_zero():
        v = min(current.support(), key=lambda u: (u.coxeter_length(), u))
        basis_class = basis.get(v)
        if basis_class is None:
            raise ExpansionError(f"no basis class available at {v}")
        lead = basis_class.value(v)
        deeper = [
            u for u in basis_class.support()
            if (u.coxeter_length(), u) < (v.coxeter_length(), v)
        ]
        if deeper:
            raise AssertionError(f"basis class at {v} is not flow-up: {deeper}")
        coeff = _divide_exact(current.value(v), lead)
        if coeff is None:
            raise ExpansionError(
                f"value at {v} not divisible by the basis leading value"
            )
        coefficients[v] = coeff
        current = current - basis_class.scale(coeff)
    return {v: c for v, c in coefficients.items() if not c.is_zero}


def _divide_exact(p: MultiPoly, q: MultiPoly) -> MultiPoly | None:
    if q.is_zero:
        raise ZeroDivisionError("division by zero class value")
    if q.degree() == 0:
        return p * (Fraction(1) / Fraction(q.constant_term()))
    return _divide_general(p, q)


def _divide_general(p: MultiPoly, q: MultiPoly) -> MultiPoly | None:
    """Exact multivariate division via leading-term elimination (grlex)."""
    if p.is_zero:
        return MultiPoly.zero(p.nvars)
    quotient = MultiPoly.zero(p.nvars)
    remainder = p
    q_lead_exp, q_lead_coeff = q.sorted_terms()[0]
    while not remainder.is_zero:
        r_lead_exp, r_lead_coeff = remainder.sorted_terms()[0]
        diff = tuple(a - b for a, b in zip(r_lead_exp, q_lead_exp))
        if any(d < 0 for d in diff):
            return None
        term = MultiPoly(
            p.nvars, {diff: Fraction(r_lead_coeff) / Fraction(q_lead_coeff)}
        )
        quotient = quotient + term
        remainder = remainder - term * q
    return quotient


def reduce_to_ordinary(
    p: EquivariantClass,
    degree: int,
    h: HessenbergFunction,
    basis: dict[Permutation, EquivariantClass],
) -> dict[Permutation, Fraction]:
    """Image of a homogeneous degree-``degree`` class in ordinary cohomology.

    Expansion coefficients at fixed points of matching degree are rational
    constants and survive; coefficients at lower-degree points sit in the
    augmentation ideal and die.
    """
    expansion = expand_in_basis(p, basis, h)
    out: dict[Permutation, Fraction] = {}
    for v, coeff in expansion.items():
        lv = l_h(v, h)
        if lv == degree:
            if not coeff.is_homogeneous(0):
                raise ExpansionError(f"non-constant coefficient at degree-matching {v}")
            out[v] = Fraction(coeff.constant_term())
        elif lv > degree:
            raise ExpansionError(f"coefficient at {v} of higher degree than the class")
    return out
