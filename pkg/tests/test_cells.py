import random
from fractions import Fraction

import pytest

from gkmhess.cells import (
    DegenerateEigenvaluesError,
    EigenvalueVector,
    build_cell_chart,
    fixed_point_oracle,
    minimal_path_coefficient,
    minimal_paths,
    minor_at_point,
    minor_reachability_certificate,
    minor_symbolic,
    path_monomial_exponents,
    paths,
    plucker_pattern,
    prime_eigenvalues,
    random_assignment,
)
from gkmhess.gkm import HessenbergFunction
from gkmhess.perms import Permutation
from gkmhess.reach import build_cell_digraph, support_A

H5 = HessenbergFunction((3, 3, 4, 5, 5))


def test_eigenvalue_distinctness():
    with pytest.raises(DegenerateEigenvaluesError):
        EigenvalueVector((Fraction(1), Fraction(1), Fraction(2)))
    assert prime_eigenvalues(5).values == tuple(map(Fraction, (2, 3, 5, 7, 11)))


def test_chart_free_and_zero_entries():
    w = Permutation.from_one_line("24135")
    chart = build_cell_chart(w, H5)
    assert set(chart.free_pairs) == {(2, 1), (4, 3), (5, 4)}
    for i, j in [(3, 1), (4, 1), (5, 1), (3, 2), (4, 2), (5, 2)]:
        assert chart.entry(i, j).is_zero
    # free pair is the bare variable
    entry = chart.entry(2, 1)
    assert len(entry.terms) == 1 and set(entry.terms.values()) == {1}


def test_chart_dependent_entry_24135():
    w = Permutation.from_one_line("24135")
    c = prime_eigenvalues(5)
    chart = build_cell_chart(w, H5, c)
    entry = chart.entry(5, 3)
    mono = path_monomial_exponents(chart, (3, 4, 5))
    scale = (c[3] - c[1]) / (c[5] - c[1])
    assert entry.terms == {mono: scale}


def test_chart_dependent_entry_identity():
    ident = Permutation.identity(5)
    c = prime_eigenvalues(5)
    chart = build_cell_chart(ident, H5, c)
    entry = chart.entry(5, 2)
    mono = path_monomial_exponents(chart, (2, 3, 4, 5))
    scale = (c[4] - c[3]) * (c[3] - c[2]) / ((c[5] - c[2]) * (c[5] - c[3]))
    assert entry.terms == {mono: scale}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_chart_consistency_exhaustive(n):
    c = prime_eigenvalues(n)
    for h in HessenbergFunction.all(n):
        for w in Permutation.all(n):
            chart = build_cell_chart(w, h, c)
            assert chart.consistency_violations() == []


def test_minimal_path_examples():
    ident = Permutation.identity(5)
    c = prime_eigenvalues(5)
    assert minimal_path_coefficient((1, 3, 4), ident, c) == (c[3] - c[1]) / (c[4] - c[1])
    assert minimal_path_coefficient((1, 3, 4, 5), ident, c) == (
        (c[4] - c[3]) * (c[3] - c[1]) / ((c[5] - c[1]) * (c[5] - c[3]))
    )
    # a direct edge contributes coefficient 1
    w = Permutation.from_one_line("24135")
    assert minimal_path_coefficient((1, 2), w, c) == 1


def test_minimality_detection():
    g = build_cell_digraph(Permutation.identity(5), H5)
    assert (1, 2, 3, 4) in paths(g, 1, 4)
    assert not any(p == (1, 2, 3, 4) for p in minimal_paths(g, 1, 4))
    assert (1, 3, 4) in minimal_paths(g, 1, 4)


@pytest.mark.parametrize("n", [3, 4])
def test_minimal_path_coefficients_in_charts(n):
    c = prime_eigenvalues(n)
    for h in HessenbergFunction.all(n):
        for w in Permutation.all(n):
            chart = build_cell_chart(w, h, c)
            g = chart.digraph
            for j in range(1, n + 1):
                for i in range(j + 1, n + 1):
                    for path in minimal_paths(g, j, i):
                        mono = path_monomial_exponents(chart, path)
                        assert Fraction(chart.entry(i, j).terms.get(mono, 0)) == (
                            minimal_path_coefficient(path, w, c)
                        )


def test_minor_examples():
    w = Permutation.from_one_line("24135")
    chart = build_cell_chart(w, H5)
    # principal minor of a unitriangular matrix has constant term 1
    principal = minor_symbolic(chart, (1, 2, 3), (1, 2, 3))
    assert principal.constant_term() == 1
    # unreachable block vanishes identically
    assert minor_symbolic(chart, (3, 4), (1, 2)).is_zero
    # reachable block is nonzero
    w2 = Permutation.from_one_line("15342")
    chart2 = build_cell_chart(w2, H5)
    assert not minor_symbolic(chart2, (3, 4), (1, 3)).is_zero


def test_minor_point_evaluation_agrees_with_symbolic():
    rng = random.Random(3)
    w = Permutation.from_one_line("15342")
    chart = build_cell_chart(w, H5)
    assignment = random_assignment(chart, rng)
    symbolic = minor_symbolic(chart, (3, 4), (1, 3))
    assert minor_at_point(chart, (3, 4), (1, 3), assignment) == symbolic.evaluate(assignment)


def test_certificate_trivial_full_sets():
    rng = random.Random(5)
    w = Permutation.from_one_line("24135")
    cert = minor_reachability_certificate(w, H5, (1, 2, 3, 4, 5), (1, 2, 3, 4, 5), rng)
    assert cert.agree and cert.reachable and cert.minor_nonzero


def test_certificate_exhaustive_n3():
    import itertools

    rng = random.Random(11)
    for h in HessenbergFunction.all(3):
        for w in Permutation.all(3):
            for size in (1, 2, 3):
                for rows in itertools.combinations((1, 2, 3), size):
                    for cols in itertools.combinations((1, 2, 3), size):
                        assert minor_reachability_certificate(w, h, rows, cols, rng).agree


def test_plucker_pattern_of_fixed_point():
    # edgeless digraph: the only point is the permutation matrix itself
    h = HessenbergFunction((1, 2, 3, 4))
    rng = random.Random(0)
    for w in [Permutation.from_one_line("3142"), Permutation.longest(4)]:
        patterns = plucker_pattern(w, h, rng, seeds=1)
        for j in range(1, 5):
            assert patterns[j - 1] == {tuple(sorted(w[:j]))}


def test_plucker_pattern_identity_point():
    h = HessenbergFunction((1, 2, 3))
    rng = random.Random(0)
    patterns = plucker_pattern(Permutation.identity(3), h, rng, seeds=1)
    assert patterns[0] == {(1,)}
    assert patterns[1] == {(1, 2)}


def test_plucker_pattern_matches_j_families():
    from gkmhess.reach import j_family

    rng = random.Random(2)
    w = Permutation.from_one_line("24135")
    patterns = plucker_pattern(w, H5, rng, seeds=3)
    for j in range(1, 6):
        expected = {
            tuple(sorted(w(i) for i in combo)) for combo in j_family(w, H5, j)
        }
        assert patterns[j - 1] == expected


def test_oracle_matches_support():
    rng = random.Random(9)
    for w_text in ("24135", "15342", "12345"):
        w = Permutation.from_one_line(w_text)
        assert fixed_point_oracle(w, H5, rng) == support_A(w, H5).members


def test_oracle_edgeless_case():
    h = HessenbergFunction((1, 2, 3, 4))
    rng = random.Random(1)
    w = Permutation.from_one_line("4321")
    assert fixed_point_oracle(w, h, rng) == frozenset({w})
