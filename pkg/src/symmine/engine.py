"""Plan compilation and execution.

A plan is the nested loop implied by a schedule: level ``i`` draws its
candidates from the intersection of the neighbor lists of earlier levels
joined to it by a pattern edge, minus the neighbor lists of earlier levels
that must stay non-adjacent.  At most one restriction per level bounds the
candidate IDs from above by the value at an earlier level.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

import numba
import numpy as np

from .graph import Graph
from .pattern import Pattern, PatternError, canonical_mask, connected_patterns, named_pattern
from .perfmodel import CostModelParams, select_schedule
from .restrictions import RestrictionMap
from .schedules import is_valid_schedule
from .setops import NO_BOUND, bounded_copy_into, difference_into, intersect_into

COUNT_LIMIT = 2**63 - 1


class PlanError(ValueError):
    pass


class CountOverflowError(OverflowError):
    pass


@dataclass(frozen=True)
class PlanLevel:
    intersect: tuple[int, ...] = ()
    diff: tuple[int, ...] = ()
    parent: int | None = None


@dataclass(frozen=True)
class Plan:
    pattern: Pattern
    schedule: tuple[int, ...]
    levels: tuple[PlanLevel, ...]
    restrictions: RestrictionMap
    uses_bounds: bool = True
    uses_restrictions: bool = True

    @property
    def depth(self) -> int:
        return len(self.levels)

    def to_dict(self) -> dict[str, Any]:
        return {
            "pattern": {"n": self.pattern.n, "edges": [list(e) for e in self.pattern.sorted_edges()]},
            "schedule": list(self.schedule),
            "levels": [{"intersect": list(lv.intersect), "diff": list(lv.diff), "parent": lv.parent}
                       for lv in self.levels],
            "options": {"use_restrictions": self.uses_restrictions, "use_bounds": self.uses_bounds},
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Plan":
        try:
            pattern = Pattern.from_edges(d["pattern"]["n"], [tuple(e) for e in d["pattern"]["edges"]])
            schedule = tuple(d["schedule"])
            opts = d["options"]
            rm = RestrictionMap(tuple(lv["parent"] for lv in d["levels"]))
            plan = compile_plan(pattern, schedule, rm, use_restrictions=opts["use_restrictions"],
                                use_bounds=opts["use_bounds"])
        except (KeyError, TypeError) as exc:
            raise PlanError(f"malformed plan document: {exc}") from None
        stored = tuple(PlanLevel(tuple(lv["intersect"]), tuple(lv["diff"]), lv["parent"]) for lv in d["levels"])
        if stored != plan.levels:
            raise PlanError("plan levels do not match pattern and schedule")
        return plan

    @classmethod
    def from_json(cls, text: str) -> "Plan":
        return cls.from_dict(json.loads(text))

    def pseudocode(self) -> str:
        """Render the loop nest, one restriction check per loop."""
        lines = []
        names = [f"v{i}" for i in range(self.depth)]
        for i, lv in enumerate(self.levels):
            pad = "  " * i
            if i == 0:
                src = "V"
            else:
                src = " ∩ ".join(f"N({names[j]})" for j in lv.intersect)
                src += "".join(f" − N({names[j]})" for j in lv.diff)
            label = chr(ord("A") + self.schedule[i]) if self.pattern.n <= 26 else str(self.schedule[i])
            lines.append(f"{pad}for {names[i]} in {src}:  # label {label}")
            if lv.parent is not None:
                how = "bound" if self.uses_bounds else "check"
                lines.append(f"{pad}  # {how}: {names[i]} < {names[lv.parent]}")
        lines.append("  " * self.depth + "count += 1")
        return "\n".join(lines)


def compile_plan(p: Pattern, s: Sequence[int], rm: RestrictionMap | None = None, *,
                 use_restrictions: bool = True, use_bounds: bool = True) -> Plan:
    schedule = tuple(s)
    if not is_valid_schedule(p, schedule):
        raise PlanError(f"schedule {schedule} is not valid for {p}")
    if rm is None or not use_restrictions:
        rm = RestrictionMap.empty(p.n)
    if len(rm.parent) != p.n or rm.parent[0] is not None:
        raise PlanError("restriction map does not fit the schedule")
    levels = []
    for i, v in enumerate(schedule):
        inter = tuple(j for j in range(i) if p.has_edge(schedule[j], v))
        diff = tuple(j for j in range(i) if not p.has_edge(schedule[j], v))
        parent = rm.parent[i]
        if parent is not None and not 0 <= parent < i:
            raise PlanError(f"restriction parent {parent} at level {i} is not an earlier level")
        levels.append(PlanLevel(inter, diff, parent))
    return Plan(p, schedule, tuple(levels), rm, uses_bounds=use_bounds, uses_restrictions=use_restrictions)


def _plan_arrays(plan: Plan):
    depth = plan.depth
    inter = np.full((depth, depth), -1, dtype=np.int64)
    diff = np.full((depth, depth), -1, dtype=np.int64)
    n_inter = np.zeros(depth, dtype=np.int64)
    n_diff = np.zeros(depth, dtype=np.int64)
    parent = np.full(depth, -1, dtype=np.int64)
    for i, lv in enumerate(plan.levels):
        n_inter[i] = len(lv.intersect)
        n_diff[i] = len(lv.diff)
        inter[i, :len(lv.intersect)] = lv.intersect
        diff[i, :len(lv.diff)] = lv.diff
        if lv.parent is not None:
            parent[i] = lv.parent
    return inter, n_inter, diff, n_diff, parent


@numba.njit(nogil=True, cache=True)
def _build_level(level, offsets, neighbors, values, inter, n_inter, diff, n_diff, parent, use_bounds, buf):
    bound = NO_BOUND
    if use_bounds and parent[level] >= 0:
        bound = values[parent[level]]
    out = buf[level]
    u = values[inter[level, 0]]
    a = neighbors[offsets[u]:offsets[u + 1]]
    k = bounded_copy_into(a, a.shape[0], bound, out)
    for t in range(1, n_inter[level]):
        w = values[inter[level, t]]
        b = neighbors[offsets[w]:offsets[w + 1]]
        k = intersect_into(out, k, b, b.shape[0], bound, out)
    for t in range(n_diff[level]):
        w = values[diff[level, t]]
        b = neighbors[offsets[w]:offsets[w + 1]]
        k = difference_into(out, k, b, b.shape[0], bound, out)
    return k


@numba.njit(nogil=True, cache=True)
def _admissible(c, level, values, diff, n_diff, parent, use_bounds):
    # unbounded runs apply the restriction as a post-filter
    if not use_bounds and parent[level] >= 0 and c >= values[parent[level]]:
        return False
    # a non-adjacent earlier vertex can survive the set operations itself
    for t in range(n_diff[level]):
        if values[diff[level, t]] == c:
            return False
    return True


@numba.njit(nogil=True, cache=True)
def _mine(offsets, neighbors, inter, n_inter, diff, n_diff, parent, use_bounds,
          v_lo, v_hi, buf, out, out_cap, limit):
    """Run the loop nest for level-0 vertices in ``[v_lo, v_hi)``.

    Returns ``(count, stored)``; ``count == -1`` signals that ``limit`` was
    exceeded.  Completed embeddings are copied into ``out`` until ``out_cap``
    rows are filled, and the run stops early once they are.
    """
    depth = inter.shape[0]
    last = depth - 1
    values = np.empty(depth, dtype=np.int64)
    lens = np.zeros(depth, dtype=np.int64)
    pos = np.zeros(depth, dtype=np.int64)
    count = 0
    stored = 0
    for v0 in range(v_lo, v_hi):
        values[0] = v0
        lens[1] = _build_level(1, offsets, neighbors, values, inter, n_inter, diff, n_diff, parent, use_bounds, buf)
        pos[1] = 0
        level = 1
        while level >= 1:
            if level == last:
                for t in range(lens[level]):
                    c = buf[level, t]
                    if not _admissible(c, level, values, diff, n_diff, parent, use_bounds):
                        continue
                    if count >= limit:
                        return -1, stored
                    count += 1
                    if stored < out_cap:
                        values[level] = c
                        for q in range(depth):
                            out[stored, q] = values[q]
                        stored += 1
                        if out_cap > 0 and stored == out_cap:
                            return count, stored
                level -= 1
                continue
            if pos[level] >= lens[level]:
                level -= 1
                continue
            c = buf[level, pos[level]]
            pos[level] += 1
            if not _admissible(c, level, values, diff, n_diff, parent, use_bounds):
                continue
            values[level] = c
            level += 1
            lens[level] = _build_level(level, offsets, neighbors, values, inter, n_inter, diff, n_diff,
                                       parent, use_bounds, buf)
            pos[level] = 0
    return count, stored


@dataclass
class CountResult:
    count: int
    per_worker: list[int] = field(default_factory=list)
    wall_time: float = 0.0


def _partition(n: int, workers: int) -> list[tuple[int, int]]:
    """Contiguous blocks of level-0 vertices, one per worker."""
    bounds = np.linspace(0, n, workers + 1).round().astype(np.int64)
    return [(int(bounds[w]), int(bounds[w + 1])) for w in range(workers)]


def _scratch(g: Graph, plan: Plan) -> np.ndarray:
    return np.empty((plan.depth, max(g.max_degree, 1)), dtype=np.int64)


def count(g: Graph, plan: Plan, workers: int = 1, *, limit: int = COUNT_LIMIT) -> CountResult:
    """Count completed embeddings of ``plan`` in ``g``."""
    if workers < 1:
        raise ValueError("workers must be positive")
    start = time.perf_counter()
    if g.n == 0:
        return CountResult(0, [0] * workers, time.perf_counter() - start)
    arrays = _plan_arrays(plan)
    no_out = np.empty((0, plan.depth), dtype=np.int64)

    def run(block: tuple[int, int]) -> int:
        c, _ = _mine(g.offsets, g.neighbors, *arrays, plan.uses_bounds, block[0], block[1],
                     _scratch(g, plan), no_out, 0, limit)
        return c

    blocks = _partition(g.n, workers)
    if workers == 1:
        per_worker = [run(blocks[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_worker = list(pool.map(run, blocks))
    if any(c < 0 for c in per_worker) or sum(per_worker) > limit:
        raise CountOverflowError(f"embedding count exceeds {limit}")
    return CountResult(sum(per_worker), per_worker, time.perf_counter() - start)


def enumerate_embeddings(g: Graph, plan: Plan, limit: int | None = None) -> list[tuple[int, ...]]:
    """Completed embeddings as per-level vertex tuples, level-0 ascending then lexicographic."""
    if limit == 0 or g.n == 0:
        return []
    cap = limit if limit is not None else count(g, plan).count
    if cap == 0:
        return []
    out = np.empty((cap, plan.depth), dtype=np.int64)
    _, stored = _mine(g.offsets, g.neighbors, *_plan_arrays(plan), plan.uses_bounds, 0, g.n,
                      _scratch(g, plan), out, cap, COUNT_LIMIT)
    return [tuple(int(v) for v in row) for row in out[:stored]]


def plan_for(p: Pattern, params: CostModelParams = CostModelParams(), *,
             use_restrictions: bool = True, use_bounds: bool = True) -> Plan:
    choice = select_schedule(p, params)
    return compile_plan(p, choice.schedule, choice.restrictions,
                        use_restrictions=use_restrictions, use_bounds=use_bounds)


MOTIF_NAMES: dict[int, dict[int, str]] = {}


def motif_name(p: Pattern) -> str | None:
    if p.n not in MOTIF_NAMES:
        table = {}
        for name in ("triangle", "wedge", "rectangle", "pentagon", "tailed_triangle", "diamond",
                     "hourglass", "house"):
            q = named_pattern(name)
            if q.n == p.n:
                table[canonical_mask(q)] = name
        for name in ("clique", "path", "star", "clique_minus", "cycle"):
            try:
                q = named_pattern(name, p.n)
            except PatternError:
                continue
            table.setdefault(canonical_mask(q), f"{name}{p.n}")
        MOTIF_NAMES[p.n] = table
    return MOTIF_NAMES[p.n].get(canonical_mask(p))


def motif_counts(g: Graph, k: int, params: CostModelParams = CostModelParams(), workers: int = 1,
                 *, use_bounds: bool = True) -> dict[Pattern, int]:
    """Induced count of every connected ``k``-vertex pattern, one plan per pattern."""
    if not 3 <= k <= 5:
        raise ValueError("motif size must be in 3..5")
    return {p: count(g, plan_for(p, params, use_bounds=use_bounds), workers).count
            for p in connected_patterns(k)}
