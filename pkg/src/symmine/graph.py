"""Immutable CSR graphs, edge-list I/O and degree orientation."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import IO, Iterator

import numpy as np

MAX_VERTEX_ID = 2**32 - 1


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class LoadStats:
    lines: int = 0
    duplicates: int = 0
    self_loops: int = 0


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph with strictly ascending neighbor slices."""

    n: int
    offsets: np.ndarray
    neighbors: np.ndarray
    original_ids: np.ndarray | None = None
    stats: LoadStats = field(default_factory=LoadStats)

    @classmethod
    def from_edges(cls, n: int, edges, original_ids: np.ndarray | None = None,
                   stats: LoadStats | None = None) -> "Graph":
        """CSR from undirected pairs on IDs ``0..n-1``; pairs must be distinct and loop-free."""
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64).reshape(-1, 2)
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
        g = cls(n, offsets, dst, original_ids, stats or LoadStats())
        g.validate()
        return g

    def validate(self) -> None:
        off, nb = self.offsets, self.neighbors
        if off.shape != (self.n + 1,) or off[0] != 0:
            raise GraphFormatError("bad offsets array")
        if np.any(np.diff(off) < 0) or off[-1] != len(nb):
            raise GraphFormatError("offsets not monotone or do not cover neighbors")
        if len(nb) % 2:
            raise GraphFormatError("odd number of adjacency slots")
        if len(nb) and (nb.min() < 0 or nb.max() >= self.n):
            raise GraphFormatError("neighbor ID out of range")
        src = np.repeat(np.arange(self.n), np.diff(off))
        if np.any(src == nb):
            raise GraphFormatError("self-loop present")
        same_row = src[1:] == src[:-1]
        if np.any(same_row & (np.diff(nb) <= 0)):
            raise GraphFormatError("neighbor lists not strictly ascending")
        rev = np.lexsort((src, nb))
        if not (np.array_equal(nb[rev], src) and np.array_equal(src[rev], nb)):
            raise GraphFormatError("adjacency is not symmetric")

    def neighbors_of(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    @property
    def edge_count(self) -> int:
        return len(self.neighbors) // 2

    @property
    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.neighbors_of(u):
                if u < v:
                    yield u, int(v)

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors_of(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        src = np.repeat(np.arange(self.n), np.diff(self.offsets))
        a[src, self.neighbors] = True
        return a

    def same_structure(self, other: "Graph") -> bool:
        return (self.n == other.n and np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.neighbors, other.neighbors))

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges())


def _read_text(source) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def load_edge_list(source: bytes | str | IO) -> Graph:
    """Parse ``u v`` lines into a CSR graph.

    Source IDs are compacted to ``0..n-1`` in ascending numeric order.
    Duplicate edges and self-loops are dropped and counted in ``Graph.stats``.
    Vertices that only appear in self-loops are dropped with them.
    """
    text = _read_text(source)
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer token in {raw!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex ID")
        if u > MAX_VERTEX_ID or v > MAX_VERTEX_ID:
            raise GraphFormatError(f"line {lineno}: vertex ID above {MAX_VERTEX_ID}")
        pairs.append((u, v))
    if not pairs:
        raise GraphFormatError("empty edge list")

    raw_edges = np.array(pairs, dtype=np.int64)
    loops = raw_edges[:, 0] == raw_edges[:, 1]
    kept = np.sort(raw_edges[~loops], axis=1)
    unique = np.unique(kept, axis=0) if len(kept) else kept.reshape(0, 2)
    stats = LoadStats(lines=len(pairs), duplicates=len(kept) - len(unique), self_loops=int(loops.sum()))
    ids = np.unique(unique)
    compact = np.searchsorted(ids, unique)
    return Graph.from_edges(len(ids), compact, original_ids=ids, stats=stats)


def read_edge_list(path: str | os.PathLike) -> Graph:
    with open(path, "rb") as fh:
        return load_edge_list(fh)


def write_edge_list(g: Graph, dest: str | os.PathLike | IO) -> None:
    text = g.to_edge_list()
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        dest.write(text)


def orient_reindex(g: Graph) -> tuple[Graph, np.ndarray]:
    """Relabel so higher-degree vertices get smaller IDs.

    Ties keep the old relative order.  Returns the new graph and ``id_map``
    with ``id_map[new] == old``.
    """
    deg = g.degrees()
    id_map = np.lexsort((np.arange(g.n), -deg)).astype(np.int64)
    new_of_old = np.empty(g.n, dtype=np.int64)
    new_of_old[id_map] = np.arange(g.n)
    src = np.repeat(np.arange(g.n), deg)
    mask = src < g.neighbors
    edges = np.stack([new_of_old[src[mask]], new_of_old[g.neighbors[mask]]], axis=1)
    original = g.original_ids[id_map] if g.original_ids is not None else id_map.copy()
    return Graph.from_edges(g.n, edges, original_ids=original, stats=g.stats), id_map
