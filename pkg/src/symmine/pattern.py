"""Patterns, the pattern file format, and automorphism groups.

A pattern is a small connected simple graph whose vertices are the labels
``0..n-1``.  Every non-edge is a required absence, so matching is always
induced.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_PATTERN_SIZE = 8

Permutation = tuple[int, ...]


class PatternError(ValueError):
    """Raised for malformed or unsupported patterns."""


@dataclass(frozen=True)
class Pattern:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if not 2 <= self.n <= MAX_PATTERN_SIZE:
            raise PatternError(f"pattern size {self.n} outside 2..{MAX_PATTERN_SIZE}")
        for i, j in self.edges:
            if i == j:
                raise PatternError(f"self-loop on label {i}")
            if not (0 <= i < j < self.n):
                raise PatternError(f"edge ({i}, {j}) is not a normalized pair of labels 0..{self.n - 1}")
        if not self._connected():
            raise PatternError("pattern is disconnected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Pattern":
        """Build a pattern from unordered pairs; rejects self-loops and duplicates."""
        seen: set[tuple[int, int]] = set()
        for i, j in edges:
            if i == j:
                raise PatternError(f"self-loop on label {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise PatternError(f"label out of range in edge ({i}, {j}) for n={n}")
            e = (min(i, j), max(i, j))
            if e in seen:
                raise PatternError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen))

    def _connected(self) -> bool:
        adj = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return tuple(masks)

    def neighbors(self, v: int) -> list[int]:
        m = self.neighbor_masks[v]
        return [u for u in range(self.n) if m >> u & 1]

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.neighbor_masks[i] >> j & 1)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.edges:
            a[i, j] = a[j, i] = True
        return a

    def degree(self, v: int) -> int:
        return bin(self.neighbor_masks[v]).count("1")

    def relabel(self, perm: Sequence[int]) -> "Pattern":
        """Return the pattern with label ``i`` renamed to ``perm[i]``."""
        return Pattern.from_edges(self.n, ((perm[i], perm[j]) for i, j in self.edges))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_text(self) -> str:
        lines = [str(self.n)] + [f"{i} {j}" for i, j in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"Pattern(n={self.n}, edges={self.sorted_edges()})"


def parse_pattern(text: str) -> Pattern:
    """Parse the pattern text format.

    The first non-comment line holds the vertex count; every following
    non-empty line is an edge ``i j``.  ``#`` starts a comment.
    """
    n: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise PatternError(f"line {lineno}: non-integer token in {raw!r}") from None
        if n is None:
            if len(values) != 1:
                raise PatternError(f"line {lineno}: expected vertex count, got {raw!r}")
            n = values[0]
            if not 2 <= n <= MAX_PATTERN_SIZE:
                raise PatternError(f"pattern size {n} outside 2..{MAX_PATTERN_SIZE}")
            continue
        if len(values) != 2:
            raise PatternError(f"line {lineno}: expected 'i j', got {raw!r}")
        edges.append((values[0], values[1]))
    if n is None:
        raise PatternError("empty pattern source")
    return Pattern.from_edges(n, edges)


def _check_k(k: int | None, name: str) -> int:
    if k is None:
        raise PatternError(f"pattern {name!r} requires a size k")
    if not 2 <= k <= MAX_PATTERN_SIZE:
        raise PatternError(f"size {k} outside 2..{MAX_PATTERN_SIZE}")
    return k


def _cycle(k: int) -> list[tuple[int, int]]:
    return [(i, (i + 1) % k) for i in range(k)]


def named_pattern(name: str, k: int | None = None) -> Pattern:
    """Construct one of the built-in pattern shapes.

    ``clique``, ``clique_minus``, ``path`` and ``star`` take a size ``k``
    (total vertex count).  ``clique_minus(k)`` drops the edge ``0-1``;
    ``star(k)`` has center 0.  In ``tailed_triangle`` label 0 is the tail
    attached to 1, and 2, 3 close the triangle with 1.
    """
    fixed = {
        "triangle": (3, [(0, 1), (1, 2), (0, 2)]),
        "wedge": (3, [(0, 1), (1, 2)]),
        "rectangle": (4, [(0, 1), (0, 2), (1, 3), (2, 3)]),
        "pentagon": (5, _cycle(5)),
        "tailed_triangle": (4, [(0, 1), (1, 2), (1, 3), (2, 3)]),
        "diamond": (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]),
        # two triangles sharing vertex 0
        "hourglass": (5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]),
        # square 0-1-2-3 with roof apex 4 over the 0-1 side
        "house": (5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4)]),
    }
    if name in fixed:
        n, edges = fixed[name]
        if k is not None and k != n:
            raise PatternError(f"pattern {name!r} has fixed size {n}, got k={k}")
        return Pattern.from_edges(n, edges)
    if name == "clique":
        k = _check_k(k, name)
        return Pattern.from_edges(k, itertools.combinations(range(k), 2))
    if name == "clique_minus":
        k = _check_k(k, name)
        if k < 3:
            raise PatternError("clique_minus needs k >= 3 to stay connected")
        return Pattern.from_edges(k, (e for e in itertools.combinations(range(k), 2) if e != (0, 1)))
    if name == "path":
        k = _check_k(k, name)
        return Pattern.from_edges(k, [(i, i + 1) for i in range(k - 1)])
    if name == "star":
        k = _check_k(k, name)
        return Pattern.from_edges(k, [(0, i) for i in range(1, k)])
    if name == "cycle":
        k = _check_k(k, name)
        if k < 3:
            raise PatternError("cycle needs k >= 3")
        return Pattern.from_edges(k, _cycle(k))
    raise PatternError(f"unknown pattern name {name!r}")


NAMED_PATTERNS = (
    "triangle", "wedge", "rectangle", "pentagon", "tailed_triangle", "diamond",
    "hourglass", "house", "clique", "clique_minus", "path", "star", "cycle",
)


def resolve_pattern(arg: str) -> Pattern:
    """Resolve ``name``, ``name:k`` or a path to a pattern file."""
    name, _, k = arg.partition(":")
    if name in NAMED_PATTERNS:
        try:
            size = int(k) if k else None
        except ValueError:
            raise PatternError(f"bad pattern size in {arg!r}") from None
        return named_pattern(name, size)
    try:
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise PatternError(f"unknown pattern {arg!r} (not a name or a file)") from None
    return parse_pattern(text)


@dataclass(frozen=True)
class AutomorphismGroup:
    """All adjacency-preserving label permutations, identity first."""

    members: tuple[Permutation, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.members)

    @property
    def multiplicity(self) -> int:
        return len(self.members)

    def stabilizer(self, labels: Iterable[int]) -> tuple[Permutation, ...]:
        fixed = tuple(labels)
        return tuple(x for x in self.members if all(x[v] == v for v in fixed))


def _all_permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int8)


def automorphisms(p: Pattern) -> AutomorphismGroup:
    """Filter all n! label permutations down to those preserving adjacency."""
    adj = p.adjacency_matrix()
    perms = _all_permutations(p.n)
    # permuted[k, i, j] == adj[perm_k[i], perm_k[j]]
    permuted = adj[perms[:, :, None], perms[:, None, :]]
    keep = (permuted == adj).all(axis=(1, 2))
    # itertools.permutations is lexicographic, so the identity comes first
    return AutomorphismGroup(tuple(tuple(int(v) for v in row) for row in perms[keep]))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``(a . b)(i) == a[b[i]]``."""
    return tuple(a[i] for i in b)


def inverse(a: Permutation) -> Permutation:
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def _pair_positions(n: int) -> dict[tuple[int, int], int]:
    pairs = list(itertools.combinations(range(n), 2))
    return {pair: len(pairs) - 1 - b for b, pair in enumerate(pairs)}


@lru_cache(maxsize=None)
def _relabel_weights(n: int) -> np.ndarray:
    """``w[k, b]``: bit weight that pair ``b`` lands on under permutation ``k``."""
    pos = _pair_positions(n)
    pairs = list(pos)
    perms = _all_permutations(n)
    w = np.zeros((len(perms), len(pairs)), dtype=np.int64)
    for k, perm in enumerate(perms):
        for b, (i, j) in enumerate(pairs):
            a, c = int(perm[i]), int(perm[j])
            w[k, b] = 1 << pos[(min(a, c), max(a, c))]
    return w


def pattern_mask(p: Pattern) -> int:
    """Upper-triangle adjacency bitstring; pair ``(0, 1)`` is the top bit."""
    pos = _pair_positions(p.n)
    return sum(1 << pos[e] for e in p.edges)


def canonical_mask(p: Pattern) -> int:
    """Smallest adjacency bitstring over all relabelings of ``p``."""
    pos = _pair_positions(p.n)
    bits = np.array([pair in p.edges for pair in pos], dtype=np.int64)
    return int((_relabel_weights(p.n) @ bits).min())


def mask_to_bitstring(mask: int, n: int) -> str:
    width = n * (n - 1) // 2
    return format(mask, f"0{width}b")


def pattern_from_mask(mask: int, n: int) -> Pattern:
    pairs = list(itertools.combinations(range(n), 2))
    width = len(pairs)
    edges = [pairs[b] for b in range(width) if mask >> (width - 1 - b) & 1]
    return Pattern.from_edges(n, edges)


def connected_patterns(n: int) -> list[Pattern]:
    """Every connected pattern on ``n`` vertices up to isomorphism.

    Patterns come back in their canonical labeling, ordered by canonical
    mask.
    """
    width = n * (n - 1) // 2
    masks = np.arange(1 << width, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(width - 1, -1, -1)) & 1
    canon = (bits @ _relabel_weights(n).T).min(axis=1)
    out = []
    for m in np.unique(canon):
        try:
            out.append(pattern_from_mask(int(m), n))
        except PatternError:
            continue
    return out
