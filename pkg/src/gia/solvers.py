"""Solvers for the unbounded knapsack over a sorted pattern set."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

from .ia_math import GIAError, Instance, mg_bf
from .patterns import GroupPattern, LimitError, PatternSet, StageError

DP_CAPACITY_LIMIT = 2**24
BRUTE_ITEM_LIMIT = 400
BRUTE_DEPTH_LIMIT = 200
BRUTE_NODE_LIMIT = 20_000_000


@dataclass(frozen=True)
class Plan:
    """A multiset of group patterns packed into ``instance.M`` dimensions.

    ``choices`` lists each distinct pattern once with its multiplicity, in
    the order the solver picked them. Dimensions not covered by any group
    (``leftover``) are served by orthogonal multiplexing.
    """

    instance: Instance
    choices: Tuple[Tuple[GroupPattern, int], ...]
    algo: str = ""

    @property
    def used(self) -> int:
        return sum(p.m * x for p, x in self.choices)

    @property
    def leftover(self) -> int:
        return self.instance.M - self.used

    @property
    def z(self) -> Fraction:
        return sum((p.v * x for p, x in self.choices), Fraction(0))

    @property
    def total_mg(self) -> Fraction:
        return 1 + self.z

    @property
    def parts(self) -> List[int]:
        """Dimension of every group, largest first."""
        return sorted((p.m for p, x in self.choices for _ in range(x)), reverse=True)


@dataclass
class DpTable:
    z: List[int]
    r: List[Optional[int]]
    scale: int
    relaxations: int = 0

    def value(self, capacity: int) -> Fraction:
        return Fraction(self.z[capacity], self.scale)


def _require_sorted(ps: PatternSet) -> None:
    if ps.stage != "sorted":
        raise StageError(f"solver expects a sorted pattern set, got stage={ps.stage}")


def _plan(ps: PatternSet, M: int, picks: Sequence[int], instance: Optional[Instance],
          algo: str) -> Plan:
    counts = Counter(picks)
    order = list(dict.fromkeys(picks))
    choices = tuple((ps.entries[j], counts[j]) for j in order)
    return Plan(instance or Instance(max(ps.K, 1), 1, M), choices, algo)


def _scaled_values(entries: Sequence[GroupPattern]) -> Tuple[List[int], int]:
    # One common denominator turns every comparison in the DP into int math.
    scale = lcm(1, *(e.v.denominator for e in entries))
    return [int(e.v * scale) for e in entries], scale


def build_table(ps: PatternSet, M: Optional[int] = None,
                capacity_limit: int = DP_CAPACITY_LIMIT) -> DpTable:
    _require_sorted(ps)
    M = ps.M if M is None else M
    if M > capacity_limit:
        raise LimitError(f"capacity {M} too large for exact DP (limit {capacity_limit}); use greedy")
    if M != ps.M:
        ps = ps.restrict(M)
    values, scale = _scaled_values(ps.entries)
    z = [0] * (M + 1)
    r: List[Optional[int]] = [None] * (M + 1)
    relaxations = 0
    for j, e in enumerate(ps.entries):
        w, v = e.m, values[j]
        if w > M:
            continue
        relaxations += M - w + 1
        for m in range(w, M + 1):
            cand = z[m - w] + v
            if cand >= z[m]:
                z[m] = cand
                r[m] = j
    return DpTable(z, r, scale, relaxations)


def recover(table: DpTable, ps: PatternSet, M: int) -> List[int]:
    """Walk the choice table back from capacity ``M``; returns pattern indices."""
    picks = []
    cap = M
    while cap > 0 and table.r[cap] is not None:
        j = table.r[cap]
        picks.append(j)
        cap -= ps.entries[j].m
    return picks


def solve_optimal(ps: PatternSet, M: Optional[int] = None, *,
                  capacity_limit: int = DP_CAPACITY_LIMIT,
                  instance: Optional[Instance] = None) -> Plan:
    """Exact optimum by dynamic programming over capacities 0..M, O(M W)."""
    _require_sorted(ps)
    M = ps.M if M is None else M
    if M != ps.M:
        ps = ps.restrict(M)
    table = build_table(ps, M, capacity_limit)
    return _plan(ps, M, recover(table, ps, M), instance, "optimal")


def solve_greedy(ps: PatternSet, M: Optional[int] = None, *,
                 instance: Optional[Instance] = None) -> Plan:
    """One pass in efficiency order, packing as many copies as fit."""
    _require_sorted(ps)
    M = ps.M if M is None else M
    if M != ps.M:
        ps = ps.restrict(M)
    used = 0
    picks: List[int] = []
    for j, e in enumerate(ps.entries):
        if used + e.m <= M:
            x = (M - used) // e.m
            used += x * e.m
            picks.extend([j] * x)
    return _plan(ps, M, picks, instance, "greedy")


def solve_brute(ps: PatternSet, M: Optional[int] = None, *,
                item_limit: int = BRUTE_ITEM_LIMIT,
                depth_limit: int = BRUTE_DEPTH_LIMIT,
                node_limit: int = BRUTE_NODE_LIMIT,
                instance: Optional[Instance] = None) -> Plan:
    """Depth-first search over count vectors, for cross-checking the DP.

    Items are visited by efficiency; a branch is cut only when even filling
    the remaining room at the best remaining efficiency cannot beat the
    incumbent, so the result is an exact optimum.
    """
    if ps.stage not in ("pruned", "sorted"):
        raise StageError(f"brute force expects a pruned or sorted set, got stage={ps.stage}")
    M = ps.M if M is None else M
    if M != ps.M:
        ps = ps.restrict(M)
    items = [j for j, e in enumerate(ps.entries) if e.m <= M]
    if not items:
        return _plan(ps, M, [], instance, "brute")
    min_m = min(ps.entries[j].m for j in items)
    if len(items) > item_limit or M // min_m > depth_limit:
        raise LimitError("instance too large for brute force")
    items.sort(key=lambda j: (-ps.entries[j].rho, ps.entries[j].m, ps.entries[j].k))
    values, scale = _scaled_values([ps.entries[j] for j in items])
    weights = [ps.entries[j].m for j in items]
    # per-dimension value as exact rationals in scaled units
    rates = [Fraction(v, w) for v, w in zip(values, weights)]

    best_value = -1
    best_counts: List[int] = []
    counts = [0] * len(items)
    nodes = 0

    def dfs(i: int, room: int, value: int) -> None:
        nonlocal best_value, best_counts, nodes
        nodes += 1
        if nodes > node_limit:
            raise LimitError("instance too large for brute force")
        if value > best_value:
            best_value = value
            best_counts = counts[:]
        if i == len(items) or value + rates[i] * room <= best_value:
            return
        w = weights[i]
        for x in range(room // w, -1, -1):
            counts[i] = x
            dfs(i + 1, room - x * w, value + x * values[i])
        counts[i] = 0

    dfs(0, M, 0)
    picks = [items[i] for i, x in enumerate(best_counts) for _ in range(x)]
    return _plan(ps, M, picks, instance, "brute")


def plan_total_mg(plan: Plan) -> Fraction:
    """1 + z, cross-checked against the per-group accounting of the same plan."""
    total = plan.total_mg
    M = plan.instance.M
    accounted = Fraction(plan.leftover, M)
    for p, x in plan.choices:
        accounted += x * Fraction(p.m, M) * mg_bf(p.k, p.n_star)
    if accounted != total:
        raise GIAError(f"accounting mismatch: {accounted} != {total}")
    return total
