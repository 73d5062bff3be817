"""Brute-force ground truth.

Every vertex subset of the pattern's size is enumerated and its induced
subgraph encoded as an adjacency bitstring over the subset's ascending
vertex order.  Instances are subsets whose bitstring is some relabeling of
the pattern.  Mappings are counted by trying every label-to-position
permutation of each such subset.  Nothing here touches the CSR set kernels.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .graph import Graph
from .pattern import Pattern, automorphisms
from .restrictions import generate_restrictions, minimize_restrictions

MAX_ORACLE_PATTERN = 6
MAX_ORACLE_GRAPH = 60
_CHUNK = 1 << 18

FILTERS = ("none", "full_order", "minimized")


class OracleGuardError(ValueError):
    pass


def _guard(g: Graph, k: int) -> None:
    if k > MAX_ORACLE_PATTERN:
        raise OracleGuardError(f"pattern size {k} above oracle limit {MAX_ORACLE_PATTERN}")
    if g.n > MAX_ORACLE_GRAPH:
        raise OracleGuardError(f"graph size {g.n} above oracle limit {MAX_ORACLE_GRAPH}")


def _pairs(k: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(k), 2))


def _encode(k: int, has_edge) -> int:
    mask = 0
    for a, b in _pairs(k):
        mask = mask << 1 | bool(has_edge(a, b))
    return mask


@lru_cache(maxsize=256)
def induced_mask_histogram(g: Graph, k: int) -> dict[int, int]:
    """Induced-subgraph bitstring -> number of ``k``-subsets of ``g`` producing it."""
    _guard(g, k)
    if k > g.n:
        return {}
    adj = g.adjacency_matrix()
    pairs = _pairs(k)
    hist: Counter[int] = Counter()
    combos = itertools.combinations(range(g.n), k)
    while True:
        chunk = np.array(list(itertools.islice(combos, _CHUNK)), dtype=np.int64)
        if not len(chunk):
            break
        mask = np.zeros(len(chunk), dtype=np.int64)
        for a, b in pairs:
            mask = (mask << 1) | adj[chunk[:, a], chunk[:, b]]
        values, counts = np.unique(mask, return_counts=True)
        hist.update(dict(zip(values.tolist(), counts.tolist())))
    return dict(hist)


@lru_cache(maxsize=None)
def _realizations(p: Pattern) -> dict[int, tuple[tuple[int, ...], ...]]:
    """Subset bitstring -> label placements that realize ``p`` on it.

    ``place[label]`` is a position in the subset's ascending vertex order.
    Each of the n! placements realizes exactly one bitstring.
    """
    out: dict[int, list[tuple[int, ...]]] = {}
    for place in itertools.permutations(range(p.n)):
        label_at = [0] * p.n
        for label, position in enumerate(place):
            label_at[position] = label
        mask = _encode(p.n, lambda a, b: p.has_edge(label_at[a], label_at[b]))
        out.setdefault(mask, []).append(place)
    return {m: tuple(v) for m, v in out.items()}


def brute_force_induced_count(g: Graph, p: Pattern) -> int:
    hist = induced_mask_histogram(g, p.n)
    return sum(hist.get(m, 0) for m in _realizations(p))


def _checks(p: Pattern, s: Sequence[int] | None, flt: str) -> list[tuple[int, int]]:
    """Label pairs ``(a, b)`` requiring ``ID(a) > ID(b)``."""
    if flt == "none":
        return []
    if flt not in FILTERS:
        raise ValueError(f"unknown filter {flt!r}")
    if s is None:
        raise ValueError(f"filter {flt!r} needs a schedule")
    order = generate_restrictions(p, s, automorphisms(p))
    if flt == "full_order":
        return sorted(order.relations)
    rm = minimize_restrictions(s, order)
    return [(s[z], s[k]) for z, k in rm.checks()]


def per_instance_mapping_counts(g: Graph, p: Pattern, s: Sequence[int] | None = None,
                                filter: str = "none") -> Counter[int]:
    """Histogram: mappings-per-instance -> number of instances.

    Subset positions follow ascending vertex IDs, so ``ID(a) > ID(b)`` is a
    comparison of positions.
    """
    hist = induced_mask_histogram(g, p.n)
    checks = _checks(p, s, filter)
    out: Counter[int] = Counter()
    for m, placements in _realizations(p).items():
        if hist.get(m):
            ok = sum(1 for place in placements if all(place[a] > place[b] for a, b in checks))
            out[ok] += hist[m]
    return out


def brute_force_mapping_count(g: Graph, p: Pattern, s: Sequence[int] | None = None,
                              filter: str = "none") -> int:
    return sum(k * v for k, v in per_instance_mapping_counts(g, p, s, filter).items())


@dataclass(frozen=True)
class OracleReport:
    induced_count: int
    labeled_mapping_count: int
    multiplicity: int
    per_instance: dict[str, dict[int, int]]


def oracle_report(g: Graph, p: Pattern, s: Sequence[int] | None = None) -> OracleReport:
    per = {"none": dict(per_instance_mapping_counts(g, p))}
    if s is not None:
        for flt in ("full_order", "minimized"):
            per[flt] = dict(per_instance_mapping_counts(g, p, s, flt))
    return OracleReport(
        induced_count=brute_force_induced_count(g, p),
        labeled_mapping_count=sum(k * v for k, v in per["none"].items()),
        multiplicity=len(automorphisms(p)),
        per_instance=per,
    )


def _mask_has_edge(mask: int, k: int):
    width = k * (k - 1) // 2
    pos = {pair: width - 1 - b for b, pair in enumerate(_pairs(k))}

    def has(a: int, b: int) -> bool:
        return bool(mask >> pos[(min(a, b), max(a, b))] & 1)

    return has


def _connected_mask(mask: int, k: int) -> bool:
    has = _mask_has_edge(mask, k)
    seen, stack = {0}, [0]
    while stack:
        u = stack.pop()
        for w in range(k):
            if w not in seen and has(u, w):
                seen.add(w)
                stack.append(w)
    return len(seen) == k


def connected_induced_subgraphs(g: Graph, k: int) -> int:
    return sum(c for m, c in induced_mask_histogram(g, k).items() if _connected_mask(m, k))
