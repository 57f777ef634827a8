import pytest
from hypothesis import given, settings, strategies as st

from homrec.counting import (HOM, SUB, Budget, PatternConstraint, automorphism_count,
                             check_constraints, count, count_homomorphisms,
                             count_subgraph_copies)
from homrec.errors import BudgetExceeded
from homrec.graph import (Graph, coloured_edge, complete_graph, path_graph, single_vertex,
                          star)

from oracles import naive_hom_count, naive_sub_count
from test_graph import graphs


def test_triangle_counts():
    k3 = complete_graph(3)
    assert count_homomorphisms(single_vertex(), k3) == 3
    assert count_homomorphisms(complete_graph(2), k3) == 6
    assert count_subgraph_copies(complete_graph(2), k3) == 3
    assert count_subgraph_copies(path_graph(3), k3) == 3
    assert count_homomorphisms(k3, complete_graph(2)) == 0


def test_empty_pattern_and_target():
    assert count_homomorphisms(Graph(0), complete_graph(3)) == 1
    assert count_homomorphisms(single_vertex(), Graph(0)) == 0
    assert count_subgraph_copies(Graph(0), Graph(0)) == 1


def test_automorphisms():
    assert automorphism_count(star(3)) == 6
    assert automorphism_count(complete_graph(4)) == 24
    assert automorphism_count(path_graph(4)) == 2


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=4), graphs(max_n=5))
def test_hom_count_matches_naive(pattern, target):
    assert count_homomorphisms(pattern, target) == naive_hom_count(pattern, target)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=4, coloured=False, labelled=False),
       graphs(max_n=6, coloured=False, labelled=False))
def test_sub_count_matches_naive(pattern, target):
    assert count_subgraph_copies(pattern, target) == naive_sub_count(pattern, target)


def test_colour_semantics():
    g = Graph.build(3, [(0, 1), (1, 2)], ["r", "b", "r"])
    assert count_homomorphisms(coloured_edge("r", "b"), g) == 2
    assert count_homomorphisms(coloured_edge("r", "r"), g) == 0
    assert count_homomorphisms(single_vertex("g"), g) == 0
    # a coloured pattern cannot map into an uncoloured graph
    assert count_homomorphisms(single_vertex("r"), path_graph(3)) == 0
    # an uncoloured pattern ignores target colours
    assert count_homomorphisms(complete_graph(2), g) == 4


def test_label_semantics():
    g = Graph.build(3, [(0, 1), (1, 2)], labels={"a": 1, "b": 1})
    assert count_homomorphisms(single_vertex(label="a"), g) == 1
    assert count_homomorphisms(single_vertex(label="z"), g) == 0
    p = Graph.build(2, [(0, 1)], labels={"a": 0})
    assert count_homomorphisms(p, g) == 2
    both = Graph.build(2, [(0, 1)], labels={"a": 0, "b": 1})
    assert count_homomorphisms(both, g) == 0


def test_sub_mode_rejects_decorated_patterns():
    with pytest.raises(ValueError):
        PatternConstraint(single_vertex("r"), 1, SUB)
    with pytest.raises(ValueError):
        count_subgraph_copies(single_vertex(label="a"), Graph(1))


def test_check_constraints_report():
    k3 = complete_graph(3)
    report = check_constraints(k3, [PatternConstraint(single_vertex(), 3),
                                    PatternConstraint(complete_graph(2), 5)])
    assert [r.actual for r in report.rows] == [3, 6]
    assert [r.ok for r in report.rows] == [True, False]
    assert not report
    assert count(PatternConstraint(complete_graph(2), 0, SUB), k3) == 3
    assert count(complete_graph(2), k3, HOM) == 6


def test_budget_is_enforced(monkeypatch):
    with pytest.raises(BudgetExceeded):
        count_homomorphisms(path_graph(6), complete_graph(8), Budget(100))
    monkeypatch.setenv("HOMREC_BUDGET", "50")
    with pytest.raises(BudgetExceeded):
        count_homomorphisms(path_graph(6), complete_graph(8))
    monkeypatch.setenv("HOMREC_BUDGET", "nope")
    with pytest.raises(ValueError):
        Budget()
