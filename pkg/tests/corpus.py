"""Shared graph/pattern corpora for the property and acceptance tests."""

from __future__ import annotations

from functools import lru_cache

from symmine.generators import erdos_renyi
from symmine.pattern import Pattern, connected_patterns

ER_SIZES = (15, 30)
ER_PROBS = (0.1, 0.3, 0.6)
ER_GRAPHS = 20


@lru_cache(maxsize=None)
def er_corpus() -> tuple:
    """20 G(n, p) graphs cycling through every (size, density) pair."""
    out = []
    for i in range(ER_GRAPHS):
        n = ER_SIZES[i % 2]
        p = ER_PROBS[(i // 2) % 3]
        out.append((f"er{i}_n{n}_p{p}", erdos_renyi(n, p, seed=1000 + i)))
    return tuple(out)


@lru_cache(maxsize=None)
def small_patterns(max_n: int = 5) -> tuple[Pattern, ...]:
    return tuple(p for n in range(2, max_n + 1) for p in connected_patterns(n))


def pattern_id(p: Pattern) -> str:
    return f"n{p.n}_" + "_".join(f"{i}{j}" for i, j in p.sorted_edges())
