"""Erasing-marks machinery and permutation-module decompositions.

Fix the permutohedral Hessenberg function.  Erasing a descent set removes 1
and every descent whose predecessor is also a descent; the surviving marks
cut a coarser composition.  For each degree ``k`` the generators are the
permutations with ``k`` descents whose class support contains the longest
element; symmetrizing such a class over cosets of the block subgroup of its
erased composition produces a generator whose orbit spans one permutation
module, and the modules over all generators decompose the whole degree.

The lattice graphs attached to compositions organize the permutations with
a fixed descent composition as words in commuting simple reflections; they
drive the positivity statement for the leading part of each symmetrized
class and give the coset-representative bookkeeping.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .classes import EquivariantClass, permutohedral_class, reduce_to_ordinary
from .dot import ActionMatrix, degree_basis, dot, generator_matrix
from .gkm import HessenbergFunction
from .perms import Composition, Permutation


def erase(descents) -> frozenset[int]:
    """Keep ``d`` unless ``d == 1`` or ``d - 1`` is also a descent."""
    marks = frozenset(descents)
    return frozenset(d for d in marks if d != 1 and d - 1 not in marks)


def erased_composition(a: Composition) -> Composition:
    return Composition.from_descent_set(erase(a.descent_set()), a.n)


def generator_permutation(a: Composition) -> Permutation:
    """The permutation whose descent composition is ``a`` and whose class
    support contains the longest element: descending blocks of consecutive
    runs ``n-d_1+1..n | n-d_2+1..n-d_1 | ... | 1..n-d_k``."""
    n = a.n
    cuts = (0,) + a.descent_set() + (n,)
    images: list[int] = []
    for s in range(len(cuts) - 1):
        lo = n - cuts[s + 1] + 1
        hi = n - cuts[s]
        images.extend(range(lo, hi + 1))
    return Permutation(images)


def g_set(n: int, k: int) -> list[Permutation]:
    """Module generators in degree k: one per (k+1)-composition of n."""
    if not 0 <= k <= n - 1:
        raise ValueError(f"degree {k} outside [0,{n - 1}]")
    return sorted(
        generator_permutation(a) for a in Composition.all(n, k + 1)
    )


# -- block subgroups and coset representatives -------------------------------


@dataclass(frozen=True)
class BlockSubgroups:
    """Value blocks of w (descent blocks) and of its erased composition."""

    w: Permutation
    fine_blocks: tuple[frozenset[int], ...]   # J_s, one per descent block
    coarse_blocks: tuple[frozenset[int], ...]  # J-hat_t, per erased block

    @property
    def coarse_order(self) -> int:
        out = 1
        for block in self.coarse_blocks:
            out *= _factorial(len(block))
        return out

    @property
    def fine_order(self) -> int:
        out = 1
        for block in self.fine_blocks:
            out *= _factorial(len(block))
        return out

    def coarse_simple_generators(self) -> list[int]:
        """Indices i with both values i, i+1 in one coarse block."""
        out = []
        for block in self.coarse_blocks:
            for i in sorted(block):
                if i + 1 in block:
                    out.append(i)
        return sorted(out)


def _factorial(m: int) -> int:
    out = 1
    for k in range(2, m + 1):
        out *= k
    return out


def block_subgroups(w: Permutation) -> BlockSubgroups:
    n = len(w)
    descents = w.descents()
    fine_cuts = (0,) + descents + (n,)
    fine = tuple(
        frozenset(w(m) for m in range(fine_cuts[s] + 1, fine_cuts[s + 1] + 1))
        for s in range(len(fine_cuts) - 1)
    )
    erased = tuple(sorted(erase(descents)))
    coarse_cuts = (0,) + erased + (n,)
    coarse = tuple(
        frozenset(w(m) for m in range(coarse_cuts[t] + 1, coarse_cuts[t + 1] + 1))
        for t in range(len(coarse_cuts) - 1)
    )
    return BlockSubgroups(w=w, fine_blocks=fine, coarse_blocks=coarse)


def _block_preserving_perms(blocks: tuple[frozenset[int], ...], n: int):
    """All permutations mapping each value block onto itself."""
    sorted_blocks = [sorted(b) for b in blocks]
    for arrangement in itertools.product(
        *[itertools.permutations(b) for b in sorted_blocks]
    ):
        images = [0] * n
        for block, arranged in zip(sorted_blocks, arrangement):
            for src, dst in zip(block, arranged):
                images[src - 1] = dst
        yield Permutation(images)


def symmetrizer_coset_reps(w: Permutation) -> list[Permutation]:
    """Minimal-length representatives of (coarse subgroup)/(fine subgroup).

    Cosets ``v H`` are keyed by the tuple of image sets of the fine value
    blocks; the representative of minimal Coxeter length is unique.
    """
    groups = block_subgroups(w)
    n = len(w)
    fine_blocks = [tuple(sorted(b)) for b in groups.fine_blocks]
    best: dict[tuple, Permutation] = {}
    for v in _block_preserving_perms(groups.coarse_blocks, n):
        key = tuple(frozenset(v(x) for x in block) for block in fine_blocks)
        incumbent = best.get(key)
        if incumbent is None or (
            (v.coxeter_length(), v) < (incumbent.coxeter_length(), incumbent)
        ):
            best[key] = v
    return sorted(best.values())


def sigma_hat(w: Permutation) -> EquivariantClass:
    """Symmetrization of the basis class over the erased-block cosets."""
    n = len(w)
    total = EquivariantClass.zero(n)
    base = permutohedral_class(w)
    for v in symmetrizer_coset_reps(w):
        total = total + dot(v, base)
    return total


# -- composition graphs --------------------------------------------------------


def admissible_decomposition(a: Composition) -> list[Composition]:
    """Greedy left-to-right split into maximal blocks ``1,..,1,big,..,big``.

    A new block starts at each 1 that follows a part larger than 1; the
    erasure of the whole composition is then the concatenation of the block
    erasures and the number of blocks is minimal.
    """
    blocks: list[Composition] = []
    current: list[int] = []
    for part in a:
        if part == 1 and any(p > 1 for p in current):
            blocks.append(Composition(current))
            current = []
        current.append(part)
    if current:
        blocks.append(Composition(current))
    return blocks


@dataclass(frozen=True)
class CompositionGraph:
    """Product of the simplex-lattice graphs of the admissible blocks."""

    a: Composition
    blocks: tuple[Composition, ...]
    vertices: tuple[tuple[tuple[int, ...], ...], ...]
    # edges: (source vertex, target vertex, simple-reflection label) with
    # target one step up in one coordinate of one factor
    edges: tuple[tuple[tuple, tuple, int], ...]

    def origin(self) -> tuple[tuple[int, ...], ...]:
        return tuple((0,) * _ones_count(block) for block in self.blocks)


def _ones_count(block: Composition) -> int:
    """Number of leading ones: the lattice dimension of the block graph."""
    m = 0
    for part in block:
        if part == 1:
            m += 1
        else:
            break
    return m


def _block_vertices(block: Composition) -> list[tuple[int, ...]]:
    m = _ones_count(block)
    if m == 0:
        return [()]
    if len(block) == m:  # all ones, no large part
        return [(0,) * m]
    cap = block[m] - 1
    out = []
    for combo in itertools.combinations_with_replacement(range(cap + 1), m):
        out.append(tuple(sorted(combo, reverse=True)))
    return sorted(set(out), reverse=True)


def _block_edge_label(block: Composition, z: tuple[int, ...], j: int) -> int:
    """Label of the edge raising coordinate ``j`` (0-based) from ``z``."""
    n_block = block.n
    m = _ones_count(block)
    return n_block - m + j - z[j]


def composition_graph(a: Composition) -> CompositionGraph:
    blocks = tuple(admissible_decomposition(a))
    per_block = [_block_vertices(b) for b in blocks]
    offsets = []
    tail = 0
    for b in reversed(blocks):
        offsets.append(tail)
        tail += b.n
    offsets.reverse()  # offsets[i] = total weight of the blocks after i

    vertices = [tuple(v) for v in itertools.product(*per_block)]
    edges = []
    for vertex in vertices:
        for bi, block in enumerate(blocks):
            z = vertex[bi]
            m = _ones_count(block)
            if len(block) == m or m == 0:
                continue
            cap = block[m] - 1
            for j in range(m):
                up = z[j] + 1
                if up > cap or (j > 0 and up > z[j - 1]):
                    continue
                raised = z[:j] + (up,) + z[j + 1:]
                target = vertex[:bi] + (raised,) + vertex[bi + 1:]
                label = _block_edge_label(block, z, j) + offsets[bi]
                edges.append((vertex, target, label))
    return CompositionGraph(
        a=a, blocks=blocks, vertices=tuple(sorted(vertices, reverse=True)),
        edges=tuple(edges),
    )


def w_z(a: Composition, z) -> Permutation:
    """Permutation attached to a lattice vertex: apply the edge labels of a
    shortest path from the origin, as value swaps, to the generator."""
    graph = composition_graph(a)
    z = tuple(tuple(part) for part in z)
    if z not in graph.vertices:
        raise ValueError(f"{z} is not a vertex of the graph of {tuple(a)}")
    word: list[int] = []
    for bi, block in enumerate(graph.blocks):
        coords = z[bi]
        m = _ones_count(block)
        offset = _offset_after(graph.blocks, bi)
        for j in range(m):
            for step in range(coords[j]):
                fake = coords[:j] + (step,)  # only z_j matters for the label
                word.append(_block_edge_label(block, fake + (0,) * (m - j - 1), j) + offset)
    result = generator_permutation(a)
    for label in word:
        result = Permutation.simple(label, a.n) * result
    return result


def _offset_after(blocks, bi: int) -> int:
    return sum(b.n for b in blocks[bi + 1:])


def descent_class(a: Composition) -> list[Permutation]:
    target = tuple(a.descent_set())
    return [w for w in Permutation.all(a.n) if w.descents() == target]


def verify_wz_completeness(a: Composition) -> bool:
    """Lattice vertices vs composition-preserving coset translates.

    The two always agree; when the composition is a run of ones followed by
    at most one larger part they moreover exhaust the whole descent class,
    which the check then also asserts.
    """
    graph = composition_graph(a)
    from_graph = {w_z(a, z) for z in graph.vertices}
    w0 = generator_permutation(a)
    reps = symmetrizer_coset_reps(w0)
    by_cosets = {
        v * w0 for v in reps if (v * w0).descents() == w0.descents()
    }
    if from_graph != by_cosets:
        return False
    if sum(1 for p in a if p > 1) <= 1 and len(admissible_decomposition(a)) == 1:
        return from_graph == set(descent_class(a))
    return from_graph <= set(descent_class(a))


# -- decomposition verification -------------------------------------------------


_MOD_PRIME = 2_147_483_647  # 2^31 - 1


def _rank_mod_p(rows: list[list[int]], p: int = _MOD_PRIME) -> int:
    if not rows:
        return 0
    mat = np.array([[x % p for x in row] for row in rows], dtype=np.int64)
    n_rows, n_cols = mat.shape
    rank = 0
    for col in range(n_cols):
        pivot = None
        for r in range(rank, n_rows):
            if mat[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[[rank, pivot]] = mat[[pivot, rank]]
        inv = pow(int(mat[rank, col]), p - 2, p)
        mat[rank] = (mat[rank] * inv) % p
        for r in range(n_rows):
            if r != rank and mat[r, col]:
                mat[r] = (mat[r] - int(mat[r, col]) * mat[rank]) % p
        rank += 1
        if rank == n_rows:
            break
    return rank


def _vector_to_ints(vec: dict[Permutation, Fraction], order) -> list[int]:
    denominator = 1
    for value in vec.values():
        denominator = denominator * value.denominator // _gcd(denominator, value.denominator)
    return [int(vec.get(w, Fraction(0)) * denominator) for w in order]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def coset_orbit_vectors(
    w: Permutation,
    vec: dict[Permutation, Fraction],
    matrices: dict[int, ActionMatrix],
) -> list[dict[Permutation, Fraction]]:
    """Ordinary vectors ``u . vec`` for one representative of each coset of
    the stabilizing block subgroup, walked by single generator steps."""
    n = len(w)
    groups = block_subgroups(w)
    coarse = [tuple(sorted(b)) for b in groups.coarse_blocks]

    def signature(u: Permutation):
        return tuple(frozenset(u(x) for x in block) for block in coarse)

    start = Permutation.identity(n)
    seen_perms = {start}
    vectors = {signature(start): vec}
    frontier = [(start, vec)]
    while frontier:
        nxt = []
        for u, current in frontier:
            for i in range(1, n):
                moved = Permutation.simple(i, n) * u
                if moved in seen_perms:
                    continue
                seen_perms.add(moved)
                moved_vec = matrices[i].apply_vector(current)
                key = signature(moved)
                if key not in vectors:
                    vectors[key] = moved_vec
                nxt.append((moved, moved_vec))
        frontier = nxt
    return list(vectors.values())


@dataclass
class ModuleReport:
    w: Permutation
    a: tuple[int, ...]
    a_hat: tuple[int, ...]
    dim_expected: int
    dim_computed: int
    stabilizer_exact: bool

    @property
    def module_type(self) -> tuple[int, ...]:
        return tuple(sorted(self.a_hat, reverse=True))


@dataclass
class DecompositionReport:
    n: int
    k: int
    modules: list[ModuleReport]
    direct_sum: bool
    total_dim: int
    eulerian: int
    genfunc_match: bool

    @property
    def passed(self) -> bool:
        return (
            self.direct_sum
            and self.total_dim == self.eulerian
            and all(m.dim_computed == m.dim_expected for m in self.modules)
            and all(m.stabilizer_exact for m in self.modules)
            and self.genfunc_match
        )


def expected_type_multiset(n: int, k: int) -> dict[tuple[int, ...], int]:
    """Multiset of erased compositions in degree k from the generating
    function: summands over tuples ``k_1..k_m >= 2`` with total ``n + 1``
    contribute the composition ``(k_1, ..., k_{m-1}, k_m - 1)`` with
    multiplicity the t^k coefficient of ``t^{m-1} prod [k_i - 1]_t``."""
    out: dict[tuple[int, ...], int] = {}
    for m in range(1, (n + 1) // 2 + 1):
        for ks in _tuples_summing(n + 1, m, minimum=2):
            coeffs = [1]
            for ki in ks:
                coeffs = _poly_mul(coeffs, [1] * (ki - 1))
            shifted_degree = k - (m - 1)
            if 0 <= shifted_degree < len(coeffs) and coeffs[shifted_degree]:
                key = tuple(ks[:-1]) + (ks[-1] - 1,)
                out[key] = out.get(key, 0) + coeffs[shifted_degree]
    return out


def _tuples_summing(total: int, parts: int, minimum: int):
    if parts == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _tuples_summing(total - first, parts - 1, minimum):
            yield (first,) + rest


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def eulerian_number(n: int, k: int) -> int:
    return sum(1 for w in Permutation.all(n) if len(w.descents()) == k)


def verify_decomposition(
    n: int,
    k: int,
    matrices: dict[int, ActionMatrix] | None = None,
    basis: dict[Permutation, EquivariantClass] | None = None,
) -> DecompositionReport:
    """Check the degree-k permutation-module decomposition exactly.

    Per generator: the orbit of the symmetrized class spans a module of
    dimension ``n!/|block subgroup|`` whose stabilizer is exactly that
    subgroup; the spans over all generators are independent and fill the
    degree.  Full-rank certificates run modulo a large prime, which is
    exact in the passing direction; a failed modular rank falls back to
    further primes before reporting failure.
    """
    h = HessenbergFunction.permutohedral(n)
    if matrices is None:
        matrices = {i: generator_matrix(i, k, h) for i in range(1, n)}
    if basis is None:
        basis = {w: permutohedral_class(w) for w in Permutation.all(n)}
    order = degree_basis(h, k)
    generators = g_set(n, k)

    modules: list[ModuleReport] = []
    stacked: list[list[int]] = []
    for w in generators:
        groups = block_subgroups(w)
        hat = sigma_hat(w)
        vec = reduce_to_ordinary(hat, k, h, basis)
        orbit = coset_orbit_vectors(w, vec, matrices)
        rows = [_vector_to_ints(v, order) for v in orbit]
        expected_dim = _factorial(n) // groups.coarse_order
        if len(rows) != expected_dim:
            raise AssertionError(
                f"coset walk found {len(rows)} cosets, expected {expected_dim}"
            )
        rank = _rank_mod_p(rows)
        if rank != expected_dim:
            rank = max(rank, _rank_mod_p(rows, p=2_147_483_629))
        stabilizer_ok = _stabilizer_exact(w, vec, matrices, groups)
        a = w.descent_composition()
        modules.append(
            ModuleReport(
                w=w,
                a=tuple(a),
                a_hat=tuple(erased_composition(a)),
                dim_expected=expected_dim,
                dim_computed=rank,
                stabilizer_exact=stabilizer_ok,
            )
        )
        stacked.extend(rows)

    total = sum(m.dim_expected for m in modules)
    full_rank = _rank_mod_p(stacked)
    direct_sum = full_rank == total

    observed_types: dict[tuple[int, ...], int] = {}
    for m in modules:
        observed_types[m.a_hat] = observed_types.get(m.a_hat, 0) + 1
    genfunc_match = observed_types == expected_type_multiset(n, k)

    return DecompositionReport(
        n=n,
        k=k,
        modules=modules,
        direct_sum=direct_sum,
        total_dim=total,
        eulerian=eulerian_number(n, k),
        genfunc_match=genfunc_match,
    )


def _stabilizer_exact(
    w: Permutation,
    vec: dict[Permutation, Fraction],
    matrices: dict[int, ActionMatrix],
    groups: BlockSubgroups,
) -> bool:
    """Every simple generator of the block subgroup fixes the vector; every
    other simple reflection moves it (exactness then follows from the
    dimension count)."""
    inside = set(groups.coarse_simple_generators())
    n = len(w)
    for i in range(1, n):
        moved = matrices[i].apply_vector(vec)
        fixed = moved == {k: v for k, v in vec.items() if v}
        if (i in inside) != fixed:
            return False
    return True
