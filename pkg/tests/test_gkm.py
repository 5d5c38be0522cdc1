import pytest

from gkmhess.gkm import (
    EdgeKind,
    GkmGraph,
    HessenbergFunction,
    edge_kind,
    l_h,
    poincare_coefficients,
)
from gkmhess.perms import Permutation
from gkmhess.reach import build_cell_digraph


def test_smallest_case_is_degenerate_but_valid():
    h = HessenbergFunction((1,))
    assert poincare_coefficients(h) == (1,)
    assert len(GkmGraph(h).pairs) == 0


def test_hessenberg_validation():
    HessenbergFunction((2, 3, 3))
    with pytest.raises(ValueError):
        HessenbergFunction((1, 1, 3))  # h(2) < 2
    with pytest.raises(ValueError):
        HessenbergFunction((3, 2, 3))  # not weakly increasing
    with pytest.raises(ValueError):
        HessenbergFunction((2, 3, 4))  # exceeds n


def test_hessenberg_families():
    assert HessenbergFunction.permutohedral(5) == (2, 3, 4, 5, 5)
    assert HessenbergFunction.full_flag(3) == (3, 3, 3)
    assert HessenbergFunction.from_string("3,3,4,5,5") == (3, 3, 4, 5, 5)
    assert str(HessenbergFunction((3, 3, 4, 5, 5))) == "3,3,4,5,5"


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5), (4, 14), (5, 42)])
def test_hessenberg_count_is_catalan(n, count):
    assert sum(1 for _ in HessenbergFunction.all(n)) == count


def test_gkm_graph_edges_at_132():
    h = HessenbergFunction((2, 3, 3))
    graph = GkmGraph(h)
    w = Permutation.from_one_line("132")
    targets = {str(t): str(label) for t, label, _ in graph.neighbors(w)}
    assert targets == {"312": "-t1+t3", "123": "t2-t3"}


def test_full_flag_graph_regular():
    graph = GkmGraph(HessenbergFunction((3, 3, 3)))
    assert all(len(graph.neighbors(w)) == 3 for w in graph.vertices())


def test_edgeless_graph():
    graph = GkmGraph(HessenbergFunction((1, 2, 3, 4)))
    assert all(len(graph.neighbors(w)) == 0 for w in graph.vertices())


def test_degree_equals_pair_count():
    for h in HessenbergFunction.all(4):
        graph = GkmGraph(h)
        expected = sum(h(j) - j for j in range(1, 5))
        assert all(len(graph.neighbors(w)) == expected for w in graph.vertices())


def test_labels_antisymmetric():
    graph = GkmGraph(HessenbergFunction((2, 3, 3)))
    for v in graph.vertices():
        for target, label, pair in graph.neighbors(v):
            back = {str(t): lab for t, lab, _ in graph.neighbors(target)}
            assert back[str(v)] == -label


def test_l_h_examples():
    h = HessenbergFunction((2, 3, 3))
    assert l_h(Permutation((2, 3, 1)), h) == 1
    assert l_h(Permutation((3, 2, 1)), h) == 2
    assert l_h(Permutation.identity(3), h) == 0


def test_poincare_examples():
    assert poincare_coefficients(HessenbergFunction((2, 3, 3))) == (1, 4, 1)
    assert poincare_coefficients(HessenbergFunction((3, 3, 3))) == (1, 2, 2, 1)
    # permutohedral coefficients are the descent counts
    assert poincare_coefficients(HessenbergFunction.permutohedral(4)) == (1, 11, 11, 1)


def test_poincare_sums_to_factorial():
    for h in HessenbergFunction.all(4):
        assert sum(poincare_coefficients(h)) == 24


def test_edge_kind_examples():
    h = HessenbergFunction((2, 4, 4, 4))
    assert edge_kind(Permutation.from_one_line("4123"), 3, h) is EdgeKind.DASHED
    assert edge_kind(Permutation.from_one_line("1342"), 2, h) is EdgeKind.SOLID_UP
    hf = HessenbergFunction.full_flag(4)
    for w in Permutation.all(4):
        for i in range(1, 4):
            assert edge_kind(w, i, hf) is not EdgeKind.DASHED


def test_edge_kind_consistent_with_cell_digraphs():
    # dashed: identical edge sets and equal statistic; solid: one extra edge
    for h in HessenbergFunction.all(4):
        for w in Permutation.all(4):
            for i in range(1, 4):
                si_w = Permutation.simple(i, 4) * w
                kind = edge_kind(w, i, h)
                e_w = build_cell_digraph(w, h).edges
                e_si = build_cell_digraph(si_w, h).edges
                if kind is EdgeKind.DASHED:
                    assert e_w == e_si
                    assert l_h(w, h) == l_h(si_w, h)
                else:
                    lower, higher = (
                        (w, si_w) if w.coxeter_length() < si_w.coxeter_length() else (si_w, w)
                    )
                    e_low = build_cell_digraph(lower, h).edges
                    e_high = build_cell_digraph(higher, h).edges
                    assert e_high < e_low and len(e_low - e_high) == 1
                    assert l_h(higher, h) == l_h(lower, h) + 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_l_h_equals_oriented_out_degree(n):
    for h in HessenbergFunction.all(n):
        graph = GkmGraph(h)
        for w in graph.vertices():
            assert len(graph.oriented_out(w)) == l_h(w, h)


def test_permutohedral_out_degree_is_descents():
    for n in (3, 4, 5, 6):
        graph = GkmGraph(HessenbergFunction.permutohedral(n))
        for w in Permutation.all(n):
            assert len(graph.neighbors(w)) == n - 1
            assert len(graph.oriented_out(w)) == len(w.descents())
