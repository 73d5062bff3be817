import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from symmine.pattern import (
    Pattern, PatternError, automorphisms, canonical_mask, compose, connected_patterns, inverse,
    named_pattern, parse_pattern, resolve_pattern,
)


def test_parse_triangle():
    p = parse_pattern("3\n0 1\n1 2\n0 2")
    assert p.n == 3
    assert p.edges == {(0, 1), (1, 2), (0, 2)}


def test_parse_rectangle_matches_named():
    p = parse_pattern("4\n0 1\n0 2\n1 3\n2 3")
    assert p == named_pattern("rectangle")
    # D=3 joins B=1 and C=2, not A=0
    assert p.has_edge(3, 1) and p.has_edge(3, 2) and not p.has_edge(3, 0)


def test_parse_comments_and_blank_lines():
    p = parse_pattern("# tri\n3  # size\n\n0 1\n1 2 # edge\n0 2\n")
    assert p == named_pattern("triangle")


@pytest.mark.parametrize("text, fragment", [
    ("3\n0 1", "disconnected"),
    ("3\n0 1\n1 3", "out of range"),
    ("3\n0 0\n0 1\n1 2", "self-loop"),
    ("3\n0 1\n1 0\n1 2", "duplicate"),
    ("9\n0 1", "outside"),
    ("3\n0 x", "non-integer"),
    ("3\n0 1 2", "expected"),
    ("", "empty"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(PatternError, match=fragment):
        parse_pattern(text)


def test_named_shapes():
    assert len(named_pattern("clique", 4).edges) == 6
    pent = named_pattern("pentagon")
    assert (pent.n, len(pent.edges)) == (5, 5)
    assert all(pent.degree(v) == 2 for v in range(5))
    tt = named_pattern("tailed_triangle")
    assert tt.edges == {(0, 1), (1, 2), (1, 3), (2, 3)}
    cm = named_pattern("clique_minus", 5)
    assert len(cm.edges) == 9 and not cm.has_edge(0, 1)
    assert len(named_pattern("house").edges) == 6
    assert len(named_pattern("hourglass").edges) == 6


@pytest.mark.parametrize("name, k", [("bogus", None), ("clique", None), ("clique", 9), ("path", 1)])
def test_named_errors(name, k):
    with pytest.raises(PatternError):
        named_pattern(name, k)


def test_resolve_pattern(tmp_path):
    assert resolve_pattern("clique:4") == named_pattern("clique", 4)
    f = tmp_path / "p.txt"
    f.write_text("3\n0 1\n1 2\n")
    assert resolve_pattern(str(f)) == named_pattern("path", 3)
    with pytest.raises(PatternError):
        resolve_pattern(str(tmp_path / "missing.txt"))


@pytest.mark.parametrize("p, size", [
    (named_pattern("triangle"), 6),
    (named_pattern("rectangle"), 8),
    (named_pattern("tailed_triangle"), 2),
    (named_pattern("clique_minus", 7), 240),
    (named_pattern("pentagon"), 10),
])
def test_group_sizes(p, size):
    assert len(automorphisms(p)) == size


def test_tailed_triangle_group_members():
    assert automorphisms(named_pattern("tailed_triangle")).members == ((0, 1, 2, 3), (0, 1, 3, 2))


@pytest.mark.parametrize("k", range(2, 7))
def test_clique_group_is_symmetric(k):
    assert len(automorphisms(named_pattern("clique", k))) == math.factorial(k)


@pytest.mark.parametrize("k", range(2, 9))
def test_path_group_has_mirror_only(k):
    assert len(automorphisms(named_pattern("path", k))) == 2


def test_group_order_identity_first_then_lexicographic():
    for p in connected_patterns(4):
        members = automorphisms(p).members
        assert members[0] == tuple(range(p.n))
        assert list(members) == sorted(members)


@pytest.mark.parametrize("p", [q for n in range(2, 6) for q in connected_patterns(n)], ids=repr)
def test_group_axioms(p):
    group = set(automorphisms(p))
    adj = p.adjacency_matrix()
    for x in group:
        assert all(adj[i, j] == adj[x[i], x[j]] for i in range(p.n) for j in range(p.n))
        assert inverse(x) in group
        for y in group:
            assert compose(x, y) in group


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([q for n in range(3, 7) for q in connected_patterns(n)]), st.randoms())
def test_group_size_invariant_under_relabeling(p, rnd):
    perm = list(range(p.n))
    rnd.shuffle(perm)
    q = p.relabel(perm)
    assert len(automorphisms(q)) == len(automorphisms(p))
    assert canonical_mask(q) == canonical_mask(p)
    # conjugation carries one group onto the other
    inv = inverse(tuple(perm))
    conj = {compose(compose(tuple(perm), x), inv) for x in automorphisms(p)}
    assert conj == set(automorphisms(q))


def test_connected_pattern_universe_sizes():
    assert [len(connected_patterns(n)) for n in range(2, 7)] == [1, 2, 6, 21, 112]


def test_pattern_constructor_rejects_unnormalized():
    with pytest.raises(PatternError):
        Pattern(3, frozenset({(1, 0), (1, 2)}))
    with pytest.raises(PatternError):
        Pattern(1, frozenset())
