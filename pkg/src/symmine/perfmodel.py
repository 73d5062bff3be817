"""Probabilistic cost model for ranking distinct schedules.

The data graph is modelled as a uniform random graph with ``n_model``
vertices and edge probability ``p``.  A loop whose candidate set comes from
``k1 + 1`` intersected neighbor lists and ``k2`` subtracted ones runs about
``n * p**(k1 + 1) * (1 - p)**k2`` times per enclosing iteration.  Restriction
checks thin the iterations by the probability that uniformly random IDs
satisfy every relation seen so far.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .pattern import AutomorphismGroup, Pattern, automorphisms
from .restrictions import PartialOrder, RestrictionMap, generate_restrictions, minimize_restrictions
from .schedules import Schedule, generate_distinct


@dataclass(frozen=True)
class CostModelParams:
    n_model: int = 1000
    d_model: float = 5.0

    def __post_init__(self):
        if self.n_model < 2:
            raise ValueError("n_model must be at least 2")
        if not 0 < self.p < 1:
            raise ValueError(f"edge probability {self.p} outside (0, 1)")

    @property
    def p(self) -> float:
        return self.d_model / (self.n_model - 1)


@dataclass(frozen=True)
class LevelEstimate:
    k1: int  # intersections beyond the first neighbor list; -1 at the root loop
    k2: int
    size: float
    z: int
    cum_prob: float


@dataclass(frozen=True)
class ScheduleCost:
    total: float
    per_level: tuple[LevelEstimate, ...]


def restriction_probabilities(s: Sequence[int], order: PartialOrder, exact: bool = False) -> list[tuple[int, float | Fraction]]:
    """Per level ``(z, cum_prob)``.

    ``z`` counts the level's vertex plus every later vertex the partial order
    forces below it; ``cum_prob`` is the running product of ``1 / z``.
    """
    closure = order.closure()
    pos = {v: i for i, v in enumerate(s)}
    out = []
    prob: float | Fraction = Fraction(1) if exact else 1.0
    for i, v in enumerate(s):
        z = 1 + sum(1 for a, b in closure if a == v and pos[b] > i)
        prob = prob / z
        out.append((z, prob))
    return out


def level_sources(p: Pattern, s: Sequence[int], i: int) -> tuple[int, int]:
    """(intersect source count, difference source count) for level ``i``."""
    inter = sum(1 for j in range(i) if p.has_edge(s[j], s[i]))
    return inter, i - inter


def estimate_cost(p: Pattern, s: Sequence[int], rm: RestrictionMap, order: PartialOrder,
                  params: CostModelParams = CostModelParams()) -> ScheduleCost:
    n, prob_edge = params.n_model, params.p
    probs = restriction_probabilities(s, order)
    levels = []
    for i in range(p.n):
        inter, diff = level_sources(p, s, i)
        k1 = inter - 1
        size = n * prob_edge ** (k1 + 1) * (1 - prob_edge) ** diff
        z, cum = probs[i]
        levels.append(LevelEstimate(k1, diff, size, z, cum))

    total = 0.0
    trips = 1.0
    for i, lv in enumerate(levels):
        trips *= lv.size
        executed = lv.cum_prob * trips
        if i + 1 < p.n:
            # linear-scan work to build the next level's candidate set
            work = sum(level_sources(p, s, i + 1)) * n * prob_edge
        else:
            work = 1.0
        total += executed * work
    return ScheduleCost(total, tuple(levels))


class Candidate(NamedTuple):
    schedule: Schedule
    order: PartialOrder
    restrictions: RestrictionMap
    cost: ScheduleCost


def rank_schedules(p: Pattern, params: CostModelParams = CostModelParams(),
                   aut: AutomorphismGroup | None = None) -> list[Candidate]:
    """Cost every distinct schedule, in explorer order."""
    aut = aut if aut is not None else automorphisms(p)
    out = []
    for s in generate_distinct(p, aut):
        order = generate_restrictions(p, s, aut)
        rm = minimize_restrictions(s, order)
        out.append(Candidate(s, order, rm, estimate_cost(p, s, rm, order, params)))
    return out


def select_schedule(p: Pattern, params: CostModelParams = CostModelParams(),
                    aut: AutomorphismGroup | None = None) -> Candidate:
    candidates = rank_schedules(p, params, aut)
    return min(candidates, key=lambda c: (c.cost.total, c.schedule))
