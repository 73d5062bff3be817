"""Schedule enumeration.

A schedule is the order in which pattern labels are discovered.  It is valid
when every label after the first is adjacent to some earlier one.  Two
schedules are equivalent when an automorphism maps one onto the other; they
compile to the same loop nest, so only orbit representatives are worth
costing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .pattern import AutomorphismGroup, Pattern, Permutation

Schedule = tuple[int, ...]


@dataclass
class ScheduleSet:
    pattern: Pattern
    schedules: list[Schedule] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.schedules)

    def __iter__(self) -> Iterator[Schedule]:
        return iter(self.schedules)

    def __getitem__(self, i: int) -> Schedule:
        return self.schedules[i]

    def as_set(self) -> set[Schedule]:
        return set(self.schedules)


def is_valid_schedule(p: Pattern, s: Sequence[int]) -> bool:
    if sorted(s) != list(range(p.n)):
        return False
    seen = 0
    for i, v in enumerate(s):
        if i and not p.neighbor_masks[v] & seen:
            return False
        seen |= 1 << v
    return True


def generate_valid_automine(p: Pattern) -> ScheduleSet:
    """Filter every permutation of the labels by validity (testing oracle)."""
    return ScheduleSet(p, [s for s in itertools.permutations(range(p.n)) if is_valid_schedule(p, s)])


def generate_valid_recursive(p: Pattern) -> ScheduleSet:
    """Grow schedules one label at a time, only ever taking a neighbor of the prefix."""
    out: list[Schedule] = []
    full = (1 << p.n) - 1

    def grow(sched: list[int], used: int, frontier: int) -> None:
        if used == full:
            out.append(tuple(sched))
            return
        candidates = range(p.n) if not sched else (v for v in range(p.n) if frontier >> v & 1)
        for v in candidates:
            sched.append(v)
            bit = 1 << v
            grow(sched, used | bit, (frontier | p.neighbor_masks[v]) & ~(used | bit))
            sched.pop()

    grow([], 0, 0)
    return ScheduleSet(p, out)


def generate_distinct(p: Pattern, aut: AutomorphismGroup) -> ScheduleSet:
    """One representative per automorphism orbit of valid schedules.

    Each call level keeps the automorphisms fixing the current prefix.
    Extending with ``v`` marks every image of ``v`` under that stabilizer as
    processed for the rest of the loop, since those extensions are equivalent
    to the ``v`` branch.
    """
    out: list[Schedule] = []
    full = (1 << p.n) - 1

    def grow(sched: list[int], stab: Sequence[Permutation], used: int, frontier: int) -> None:
        if used == full:
            out.append(tuple(sched))
            return
        processed = 0
        candidates = range(p.n) if not sched else [v for v in range(p.n) if frontier >> v & 1]
        for v in candidates:
            if processed >> v & 1:
                continue
            fixing = []
            for x in stab:
                if x[v] == v:
                    fixing.append(x)
                else:
                    processed |= 1 << x[v]
            sched.append(v)
            bit = 1 << v
            grow(sched, fixing, used | bit, (frontier | p.neighbor_masks[v]) & ~(used | bit))
            sched.pop()

    grow([], aut.members, 0, 0)
    return ScheduleSet(p, out)


def schedules_equivalent(p: Pattern, aut: AutomorphismGroup, s1: Sequence[int], s2: Sequence[int]) -> bool:
    return any(all(x[a] == b for a, b in zip(s1, s2)) for x in aut)
