import pytest

from symmine.generators import complete_bipartite, complete_graph, erdos_renyi, petersen_graph
from symmine.oracle import (
    OracleGuardError, brute_force_induced_count, brute_force_mapping_count, connected_induced_subgraphs,
    oracle_report,
)
from symmine.pattern import automorphisms, connected_patterns, named_pattern

RECT = named_pattern("rectangle")


def test_induced_examples():
    assert brute_force_induced_count(complete_graph(5), named_pattern("triangle")) == 10
    assert brute_force_induced_count(complete_bipartite(2, 3), RECT) == 3
    assert brute_force_induced_count(petersen_graph(), named_pattern("pentagon")) == 12


def test_mapping_examples():
    g = complete_bipartite(2, 3)
    s = (0, 1, 2, 3)
    assert brute_force_mapping_count(g, RECT) == 24
    assert brute_force_mapping_count(g, RECT, s, "full_order") == 3
    assert brute_force_mapping_count(g, RECT, s, "minimized") == 3


def test_report_invariant():
    rep = oracle_report(complete_bipartite(2, 3), RECT, (0, 1, 2, 3))
    assert rep.labeled_mapping_count == rep.induced_count * rep.multiplicity
    assert rep.per_instance == {"none": {8: 3}, "full_order": {1: 3}, "minimized": {1: 3}}


@pytest.mark.parametrize("p", [q for n in range(3, 6) for q in connected_patterns(n)], ids=repr)
def test_free_action(p):
    g = erdos_renyi(12, 0.45, 4)
    assert brute_force_mapping_count(g, p) == brute_force_induced_count(g, p) * len(automorphisms(p))


def test_induced_counts_partition_subsets():
    g = erdos_renyi(11, 0.5, 9)
    total = sum(brute_force_induced_count(g, p) for p in connected_patterns(4))
    assert total == connected_induced_subgraphs(g, 4)


def test_guards():
    with pytest.raises(OracleGuardError):
        brute_force_induced_count(complete_graph(61), named_pattern("triangle"))
    with pytest.raises(OracleGuardError):
        brute_force_induced_count(complete_graph(8), named_pattern("clique", 7))
    with pytest.raises(ValueError):
        brute_force_mapping_count(complete_graph(4), RECT, None, "full_order")
    with pytest.raises(ValueError):
        brute_force_mapping_count(complete_graph(4), RECT, (0, 1, 2, 3), "sideways")


def test_pattern_larger_than_graph():
    assert brute_force_induced_count(complete_graph(3), named_pattern("clique", 4)) == 0
