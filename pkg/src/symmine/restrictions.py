"""Symmetry-breaking restrictions for a (pattern, schedule) pair.

A relation ``(a, b)`` means the graph vertex mapped to label ``a`` must have a
larger ID than the one mapped to ``b``.  Enforcing every relation of the
partial order leaves exactly one mapping per induced instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .pattern import AutomorphismGroup, Pattern


@dataclass(frozen=True)
class PartialOrder:
    schedule: tuple[int, ...]
    relations: frozenset[tuple[int, int]]
    # distinct images of each schedule vertex under the stabilizer of its prefix
    orbit_sizes: tuple[int, ...] = ()

    def sorted_relations(self) -> list[tuple[int, int]]:
        pos = {v: i for i, v in enumerate(self.schedule)}
        return sorted(self.relations, key=lambda r: (pos[r[0]], pos[r[1]]))

    def closure(self) -> frozenset[tuple[int, int]]:
        """Transitive closure, as label pairs."""
        succ: dict[int, set[int]] = {v: set() for v in self.schedule}
        for a, b in self.relations:
            succ[a].add(b)
        out = set()
        for start in self.schedule:
            stack = list(succ[start])
            seen: set[int] = set()
            while stack:
                u = stack.pop()
                if u in seen:
                    continue
                seen.add(u)
                stack.extend(succ[u])
            out.update((start, u) for u in seen)
        return frozenset(out)


@dataclass(frozen=True)
class RestrictionMap:
    """``parent[k]`` is the schedule position whose value must exceed level ``k``'s."""

    parent: tuple[int | None, ...]

    @classmethod
    def empty(cls, n: int) -> "RestrictionMap":
        return cls((None,) * n)

    def checks(self) -> list[tuple[int, int]]:
        """``(parent_level, level)`` pairs, one per restricted level."""
        return [(z, k) for k, z in enumerate(self.parent) if z is not None]


def generate_restrictions(p: Pattern, s: Sequence[int], aut: AutomorphismGroup) -> PartialOrder:
    schedule = tuple(s)
    relations: set[tuple[int, int]] = set()
    orbit_sizes = []
    current = aut.members
    for v in schedule:
        fixing = []
        images = {v}
        for x in current:
            if x[v] == v:
                fixing.append(x)
            else:
                relations.add((v, x[v]))
                images.add(x[v])
        orbit_sizes.append(len(images))
        current = tuple(fixing)
    return PartialOrder(schedule, frozenset(relations), tuple(orbit_sizes))


def minimize_restrictions(s: Sequence[int], order: PartialOrder) -> RestrictionMap:
    """Keep, for each level, only the relation from the latest constraining level."""
    pos = {v: i for i, v in enumerate(s)}
    parent: list[int | None] = [None] * len(s)
    for a, b in order.relations:
        z, k = pos[a], pos[b]
        if parent[k] is None or z > parent[k]:
            parent[k] = z
    return RestrictionMap(tuple(parent))
