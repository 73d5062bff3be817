import json
from math import comb

import numpy as np
import pytest

from symmine.engine import (
    CountOverflowError, Plan, PlanError, PlanLevel, compile_plan, count, enumerate_embeddings,
    motif_counts, motif_name, plan_for,
)
from symmine.generators import complete_bipartite, complete_graph, cycle_graph, erdos_renyi, star_graph
from symmine.graph import Graph, orient_reindex
from symmine.oracle import brute_force_induced_count, connected_induced_subgraphs
from symmine.pattern import automorphisms, connected_patterns, named_pattern
from symmine.perfmodel import rank_schedules
from symmine.restrictions import RestrictionMap

A, B, C, D = range(4)
RECT = named_pattern("rectangle")
TRI = named_pattern("triangle")


def test_compile_rectangle_levels():
    plan = compile_plan(RECT, (A, B, C, D), RestrictionMap((None, 0, 1, 0)))
    assert plan.levels == (
        PlanLevel((), (), None),
        PlanLevel((0,), (), 0),
        PlanLevel((0,), (1,), 1),
        PlanLevel((1, 2), (0,), 0),
    )


def test_compile_triangle_levels():
    plan = plan_for(TRI)
    assert plan.levels[1:] == (PlanLevel((0,), (), 0), PlanLevel((0, 1), (), 1))


def test_compile_without_restrictions():
    plan = compile_plan(RECT, (A, B, C, D), RestrictionMap((None, 0, 1, 0)), use_restrictions=False)
    assert all(lv.parent is None for lv in plan.levels)
    assert [lv.intersect for lv in plan.levels] == [(), (0,), (0,), (1, 2)]


def test_compile_rejects_invalid_schedule():
    with pytest.raises(PlanError):
        compile_plan(RECT, (A, D, B, C))
    with pytest.raises(PlanError):
        compile_plan(RECT, (A, B, C, D), RestrictionMap((None, 2, None, None)))


def test_plan_json_round_trip():
    plan = plan_for(named_pattern("house"), use_bounds=False)
    doc = json.loads(plan.to_json())
    assert set(doc) == {"pattern", "schedule", "levels", "options"}
    assert set(doc["levels"][1]) == {"intersect", "diff", "parent"}
    back = Plan.from_json(plan.to_json())
    assert back == plan
    doc["levels"][2]["intersect"] = [5]
    with pytest.raises(PlanError):
        Plan.from_dict(doc)
    with pytest.raises(PlanError):
        Plan.from_dict({"pattern": {"n": 3}})


def test_pseudocode_one_check_per_loop():
    text = plan_for(RECT).pseudocode()
    assert "for v3 in N(v1) ∩ N(v2) − N(v0)" in text
    assert text.count("bound:") == 3


@pytest.mark.parametrize("graph, pattern, restricted, unrestricted", [
    (complete_graph(4), TRI, 4, 24),
    (complete_graph(4), RECT, 0, 0),
    (complete_bipartite(2, 3), RECT, 3, 24),
    (cycle_graph(5), named_pattern("pentagon"), 1, 10),
])
def test_count_examples(graph, pattern, restricted, unrestricted):
    assert count(graph, plan_for(pattern)).count == restricted
    assert count(graph, plan_for(pattern, use_restrictions=False)).count == unrestricted


@pytest.mark.parametrize("n", range(3, 11))
def test_triangles_in_cliques(n):
    assert count(complete_graph(n), plan_for(TRI), workers=2).count == comb(n, 3)


def test_count_empty_and_edgeless_graphs():
    empty = Graph.from_edges(0, [])
    assert count(empty, plan_for(TRI)).count == 0
    assert count(Graph.from_edges(5, []), plan_for(TRI)).count == 0


def test_count_result_breakdown():
    res = count(erdos_renyi(30, 0.5, 3), plan_for(named_pattern("diamond")), workers=4)
    assert len(res.per_worker) == 4
    assert sum(res.per_worker) == res.count
    assert res.wall_time >= 0


def test_overflow_is_reported():
    with pytest.raises(CountOverflowError):
        count(complete_graph(8), plan_for(TRI), limit=10)
    with pytest.raises(CountOverflowError):
        count(complete_graph(8), plan_for(TRI), workers=2, limit=40)
    assert count(complete_graph(8), plan_for(TRI), limit=56).count == 56


def test_enumerate_examples():
    assert enumerate_embeddings(complete_graph(3), plan_for(TRI)) == [(2, 1, 0)]
    assert enumerate_embeddings(complete_graph(6), plan_for(TRI), limit=0) == []
    assert len(enumerate_embeddings(cycle_graph(4), plan_for(RECT))) == 1


def test_enumerate_order_and_limit():
    g = erdos_renyi(14, 0.5, 7)
    plan = plan_for(named_pattern("path", 3))
    every = enumerate_embeddings(g, plan)
    assert len(every) == count(g, plan).count
    assert every == sorted(every)
    assert enumerate_embeddings(g, plan, limit=5) == every[:5]
    adj = g.adjacency_matrix()
    for emb in every:
        assert len(set(emb)) == 3
        s = plan.schedule
        for i in range(3):
            for j in range(i):
                assert adj[emb[i], emb[j]] == plan.pattern.has_edge(s[i], s[j])


GRAPHS = [erdos_renyi(n, p, seed) for seed, (n, p) in enumerate([(12, 0.3), (16, 0.5), (20, 0.2), (14, 0.8)])]


@pytest.mark.parametrize("p", [q for n in range(3, 6) for q in connected_patterns(n)], ids=repr)
def test_engine_matches_oracle_for_every_schedule(p):
    m = len(automorphisms(p))
    for g in GRAPHS:
        truth = brute_force_induced_count(g, p)
        og, _ = orient_reindex(g)
        for cand in rank_schedules(p):
            plan = compile_plan(p, cand.schedule, cand.restrictions)
            assert count(g, plan).count == truth
            assert count(og, plan).count == truth
            assert count(g, compile_plan(p, cand.schedule, cand.restrictions, use_bounds=False)).count == truth
        free = compile_plan(p, cand.schedule, use_restrictions=False)
        assert count(g, free, workers=3).count == truth * m


def test_motif_examples():
    k4 = {motif_name(p): c for p, c in motif_counts(complete_graph(4), 3).items()}
    assert k4 == {"triangle": 4, "wedge": 0}
    star = {motif_name(p): c for p, c in motif_counts(star_graph(3), 3).items()}
    assert star == {"triangle": 0, "wedge": 3}
    k5 = {motif_name(p): c for p, c in motif_counts(complete_graph(5), 4).items()}
    assert k5["clique4"] == 5 and sum(k5.values()) == 5
    assert len(k5) == 6


@pytest.mark.parametrize("k", [3, 4, 5])
def test_motif_partition(k):
    g = erdos_renyi(13, 0.35, 11)
    counts = motif_counts(g, k, workers=2)
    assert sum(counts.values()) == connected_induced_subgraphs(g, k)
    for p, c in counts.items():
        assert c == brute_force_induced_count(g, p)


def test_motif_size_guard():
    with pytest.raises(ValueError):
        motif_counts(complete_graph(4), 6)


def test_scratch_buffers_fit_max_degree():
    g = star_graph(40)
    plan = plan_for(named_pattern("star", 4))
    assert count(g, plan).count == comb(40, 3)
    assert np.max(g.degrees()) == 40
