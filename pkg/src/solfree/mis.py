"""Exact and greedy maximum independent set on bitmask adjacency.

Vertices are 0..n-1 and a graph is a list of integer bitmasks, masks[v] being
the neighbor set of v. Everything is deterministic: ties always break toward
the lowest vertex index. The exact solver is a branch and bound with
degree-<=1 reduction, connected component splitting, a greedy clique-cover
upper bound, and two branching rules (closed-neighborhood branching on a
minimum-degree vertex for sparse regions, include/exclude on a maximum-degree
vertex for dense ones).
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass


class SearchBudgetExceeded(Exception):
    """Internal signal: time budget or early-stop target hit."""


@dataclass(frozen=True)
class MISResult:
    size: int      # size of the best independent set found
    witness: int   # bitmask of that set
    optimal: bool  # True when the search space was exhausted

    def vertices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.witness))


def iter_bits(mask: int):
    """Yield set bit positions, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def full_mask(n: int) -> int:
    return (1 << n) - 1


def is_independent(masks, chosen: int) -> bool:
    for v in iter_bits(chosen):
        if masks[v] & chosen:
            return False
    return True


def greedy_independent_mask(masks, sub: int | None = None) -> int:
    """Minimum-degree greedy independent set, lowest index on ties."""
    pool = sub if sub is not None else full_mask(len(masks))
    deg = {v: (masks[v] & pool).bit_count() for v in iter_bits(pool)}
    chosen = 0
    while pool:
        best_v = -1
        best_d = None
        for v in iter_bits(pool):
            d = deg[v]
            if best_d is None or d < best_d:
                best_v, best_d = v, d
                if d == 0:
                    break
        chosen |= 1 << best_v
        removed = (masks[best_v] | (1 << best_v)) & pool
        pool &= ~removed
        for u in iter_bits(removed):
            del deg[u]
            for w in iter_bits(masks[u] & pool):
                deg[w] -= 1
    return chosen


def caro_wei_bound(masks, sub: int | None = None) -> float:
    """Sum of 1/(deg+1); every graph has an independent set at least this big."""
    pool = sub if sub is not None else full_mask(len(masks))
    return sum(1.0 / ((masks[v] & pool).bit_count() + 1) for v in iter_bits(pool))


def clique_cover_bound(masks, pool: int) -> int:
    """Number of cliques in a greedy clique cover of pool; upper-bounds alpha."""
    count = 0
    rem = pool
    while rem:
        low = rem & -rem
        v = low.bit_length() - 1
        clique = low
        cand = masks[v] & rem
        while cand:
            lu = cand & -cand
            u = lu.bit_length() - 1
            clique |= lu
            cand &= masks[u]
        rem &= ~clique
        count += 1
    return count


def connected_component(masks, pool: int, start_bit: int) -> int:
    """Bitmask of the component of pool containing the given single-bit mask."""
    comp = start_bit
    frontier = start_bit
    while frontier:
        grow = 0
        for v in iter_bits(frontier):
            grow |= masks[v]
        frontier = grow & pool & ~comp
        comp |= frontier
    return comp


# Branch over the closed neighborhood of a min-degree vertex when its degree
# is at most this; otherwise include/exclude on a max-degree vertex.
_SPARSE_BRANCH_DEGREE = 6
_SPLIT_THRESHOLD = 24  # try component splitting above this pool size


class _Solver:
    __slots__ = ("masks", "closed", "deadline", "max_nodes", "stop_at", "best",
                 "best_mask", "nodes", "budget_hit")

    def __init__(self, masks, deadline, stop_at, max_nodes=None):
        self.masks = masks
        self.closed = [m | (1 << v) for v, m in enumerate(masks)]
        self.deadline = deadline
        self.max_nodes = max_nodes
        self.stop_at = stop_at
        self.best = -1
        self.best_mask = 0
        self.nodes = 0
        self.budget_hit = False

    def _tick(self):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise SearchBudgetExceeded
        if self.deadline is not None and self.nodes % 2048 == 0:
            if time.monotonic() > self.deadline:
                raise SearchBudgetExceeded

    def _update(self, size, mask):
        if size > self.best:
            self.best = size
            self.best_mask = mask
            if self.stop_at is not None and self.best >= self.stop_at:
                raise SearchBudgetExceeded

    def solve(self, pool: int) -> None:
        seed = greedy_independent_mask(self.masks, pool)
        try:
            self._update(seed.bit_count(), seed)
            self._dfs(pool, 0, 0)
        except SearchBudgetExceeded:
            self.budget_hit = True

    def _dfs(self, pool, size, chosen):
        self._tick()
        masks = self.masks
        closed = self.closed

        # reduction: vertices of degree <= 1 are always in some MIS of pool
        changed = True
        while changed:
            changed = False
            for v in iter_bits(pool):
                if not (pool >> v) & 1:
                    continue
                nb = masks[v] & pool
                c = nb.bit_count()
                if c == 0:
                    chosen |= 1 << v
                    size += 1
                    pool ^= 1 << v
                    changed = True
                elif c == 1:
                    chosen |= 1 << v
                    size += 1
                    pool &= ~(closed[v] | nb)
                    changed = True

        if pool == 0:
            self._update(size, chosen)
            return

        pc = pool.bit_count()
        if size + pc <= self.best:
            return
        if size + clique_cover_bound(masks, pool) <= self.best:
            return

        if pc >= _SPLIT_THRESHOLD:
            comp = connected_component(masks, pool, pool & -pool)
            if comp != pool:
                # solve each component with a fresh solver, then combine
                total_size, total_mask, rest = size, chosen, pool
                while rest:
                    part = connected_component(masks, rest, rest & -rest)
                    rest &= ~part
                    sub = _Solver(masks, self.deadline, None, self.max_nodes)
                    sub.solve(part)
                    if sub.budget_hit:
                        self.budget_hit = True
                    total_size += sub.best
                    total_mask |= sub.best_mask
                self._update(total_size, total_mask)
                if self.budget_hit:
                    raise SearchBudgetExceeded
                return

        # pick branch vertex: track min and max degree in one scan
        min_v = max_v = -1
        min_d = max_d = -1
        for v in iter_bits(pool):
            d = (masks[v] & pool).bit_count()
            if min_d < 0 or d < min_d:
                min_v, min_d = v, d
            if d > max_d:
                max_v, max_d = v, d

        if min_d <= _SPARSE_BRANCH_DEGREE:
            # some MIS meets N[min_v]; branch on which member is taken
            cands = sorted(iter_bits(closed[min_v] & pool),
                           key=lambda u: ((masks[u] & pool).bit_count(), u))
            tried = 0
            for u in cands:
                self._dfs(pool & ~closed[u] & ~tried, size + 1, chosen | (1 << u))
                tried |= 1 << u
        else:
            self._dfs(pool & ~closed[max_v], size + 1, chosen | (1 << max_v))
            self._dfs(pool ^ (1 << max_v), size, chosen)


def max_independent_set(masks, sub: int | None = None, *,
                        time_budget: float | None = None,
                        max_nodes: int | None = None,
                        stop_at: int | None = None) -> MISResult:
    """Exact maximum independent set of the graph induced on sub (default all).

    time_budget is wall seconds and max_nodes a deterministic search-tree cap;
    on exhaustion of either the result carries the best set found so far with
    optimal=False. stop_at ends the search as soon as an independent set of at
    least that size is found (also optimal=False).
    """
    pool = sub if sub is not None else full_mask(len(masks))
    if pool == 0:
        return MISResult(0, 0, True)
    need = 4 * len(masks) + 1000
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)
    deadline = time.monotonic() + time_budget if time_budget is not None else None
    solver = _Solver(list(masks), deadline, stop_at, max_nodes)
    solver.solve(pool)
    assert is_independent(masks, solver.best_mask)
    return MISResult(solver.best, solver.best_mask, not solver.budget_hit)


def underlying_masks_from_arcs(n: int, arcs) -> list[int]:
    """Adjacency masks of the undirected graph underlying a set of arcs."""
    masks = [0] * n
    for u, v in arcs:
        if u == v:
            continue
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks
