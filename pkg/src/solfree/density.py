"""Maximum solution-free set sizes under an independence-number ceiling.

D(eq, p, eps) is the largest |A| over solution-free A in Z_p whose Cayley
graph (generators A minus 0) has independence number at most eps*p. Adding
elements to A only shrinks that independence number, so the optimum is always
attained at a maximal solution-free set; exact_D therefore enumerates maximal
sets once per (eq, p) by branch and bound (descending residues, partial sets
containing a solution pruned) and answers every eps from that cache, checking
alpha exactly per candidate. heuristic_D scales past the exhaustive cap with
annealing over solution-free states, certifying alpha only on improvers.

Convention: when no nonempty feasible set exists the value is 0 with an empty
witness. 0 may belong to A (it contributes no Cayley edges); pass
exclude_zero=True to forbid it.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass

from .cayley import PrimeField, alpha_exact, alpha_upper_ratio, build_cayley
from .equations import Equation
from .solutions import find_distinct_solution

EXACT_P_CAP = 23
HEURISTIC_P_CAP = 50000
EXACT_ALPHA_CAP = 2000     # heuristic_D certifies exactly up to here, ratio beyond
CSV_HEADER = ("eq", "p", "eps", "value", "kind", "alpha_method", "witness")


class DensityError(ValueError):
    pass


class CapExceeded(DensityError):
    pass


class NoFeasiblePoint(DensityError):
    pass


@dataclass(frozen=True)
class DensityPoint:
    eq: str
    p: int
    eps: float
    value: int
    kind: str           # "exact" | "heuristic"
    alpha_method: str
    witness: tuple[int, ...]

    def to_csv_row(self) -> tuple[str, ...]:
        return (self.eq, str(self.p), repr(self.eps), str(self.value), self.kind,
                self.alpha_method, ";".join(str(a) for a in self.witness))


@dataclass(frozen=True)
class FailedPoint:
    eq: str
    p: int
    eps: float
    error: str

    def to_csv_row(self) -> tuple[str, ...]:
        return (self.eq, str(self.p), repr(self.eps), "", "failed", self.error, "")


@dataclass(frozen=True)
class CurveResult:
    points: tuple
    failures: tuple
    monotone_by_p: dict

    @property
    def ok(self) -> bool:
        return not self.failures and all(self.monotone_by_p.values())

    def rows(self):
        everything = list(self.points) + list(self.failures)
        return sorted(everything, key=lambda r: (r.p, r.eps))


def _creates_solution(pool, new, eq: Equation, field: PrimeField) -> bool:
    """Does adding `new` to the solution-free set `pool` create a
    distinct-entry solution that uses `new`? Assigns `new` to each position,
    fills all but one remaining position from the pool, solves the last.
    """
    p = field.p
    coeffs = [c % p for c in eq.coeffs]
    k = eq.k
    members = list(pool)

    def fill(position_new):
        others = [i for i in range(k) if i != position_new]
        solved = others[-1]
        free = others[:-1]
        inv = pow(coeffs[solved], -1, p)

        def rec(d, partial, used):
            if d == len(free):
                last = (-inv * partial) % p
                if last == new or last in used:
                    return False
                return last in pool
            i = free[d]
            for a in members:
                if a in used:
                    continue
                if rec(d + 1, (partial + coeffs[i] * a) % p, used | {a}):
                    return True
            return False

        return rec(0, (coeffs[position_new] * new) % p, set())

    # `new` occupies one slot; remaining slots draw distinct values from pool
    return any(fill(i) for i in range(k))


_MAXIMAL_CACHE: dict = {}
_ALPHA_CACHE: dict = {}


def _maximal_solution_free(eq: Equation, field: PrimeField,
                           exclude_zero: bool) -> tuple[tuple[int, ...], ...]:
    """All maximal solution-free subsets, by exhaustive include/exclude DFS
    over residues in descending order; partial sets that would contain a
    distinct-entry solution are pruned at the include step, and a leaf is kept
    only if every absent residue would create a solution (maximality).
    """
    key = (eq.coeffs, field.p, exclude_zero)
    if key in _MAXIMAL_CACHE:
        return _MAXIMAL_CACHE[key]
    p = field.p
    ground = [r for r in range(p - 1, -1, -1) if not (exclude_zero and r == 0)]
    out: list[tuple[int, ...]] = []
    chosen: set[int] = set()

    def dfs(idx: int):
        if idx == len(ground):
            if all(_creates_solution(chosen, v, eq, field)
                   for v in ground if v not in chosen):
                out.append(tuple(sorted(chosen)))
            return
        v = ground[idx]
        if not _creates_solution(chosen, v, eq, field):
            chosen.add(v)
            dfs(idx + 1)
            chosen.remove(v)
        dfs(idx + 1)

    dfs(0)
    result = tuple(sorted(out, key=lambda s: (-len(s), s)))
    _MAXIMAL_CACHE[key] = result
    return result


def _alpha_of_set(members: tuple[int, ...], field: PrimeField) -> int:
    """Exact independence number of Cay(members minus 0); p when edgeless."""
    gens = tuple(sorted(set(members) - {0}))
    key = (gens, field.p)
    if key not in _ALPHA_CACHE:
        if not gens:
            _ALPHA_CACHE[key] = field.p
        else:
            _ALPHA_CACHE[key] = alpha_exact(build_cayley(field, gens)).value
    return _ALPHA_CACHE[key]


def _verify_point(point: DensityPoint, eq: Equation, field: PrimeField) -> None:
    assert point.value >= len(point.witness)
    if not point.witness:
        return
    assert find_distinct_solution(point.witness, eq, field) is None, \
        f"witness contains a solution: {point.witness}"
    if point.kind == "exact":
        assert _alpha_of_set(point.witness, field) <= point.eps * field.p
    else:
        ok, _ = _certify(point.witness, field, point.eps)
        assert ok, f"witness alpha certification failed: {point}"


def exact_D(eq: Equation, field: PrimeField, eps: float, *,
            cap: int = EXACT_P_CAP, exclude_zero: bool = False) -> DensityPoint:
    """Exact D by exhaustive search; p capped (default 23)."""
    if field.p > cap:
        raise CapExceeded(f"exact search capped at p={cap}, got {field.p}")
    if eps < 0:
        raise DensityError("eps must be nonnegative")
    threshold = eps * field.p
    for candidate in _maximal_solution_free(eq, field, exclude_zero):
        if _alpha_of_set(candidate, field) <= threshold:
            point = DensityPoint(eq.canonical(), field.p, eps, len(candidate),
                                 "exact", "exact", candidate)
            _verify_point(point, eq, field)
            return point
    return DensityPoint(eq.canonical(), field.p, eps, 0, "exact", "none-feasible", ())


CERTIFY_NODE_CAP = 200_000   # deterministic search budget per certification


def _certify(members, field: PrimeField, eps: float) -> tuple[bool, str]:
    """Certified alpha(Cay(members)) <= eps*p? Conservative: the cheap ratio
    bound first, then a node-capped exact search (p <= 2000) whose certified
    interval still gives a sound upper bound when the cap is hit. The node
    cap keeps results deterministic (no wall-clock dependence).
    """
    p = field.p
    gens = sorted(set(members) - {0})
    threshold = eps * p
    if not gens:
        return p <= threshold, "empty"
    g = build_cayley(field, gens)
    ratio = math.floor(alpha_upper_ratio(g))
    if ratio <= threshold:
        return True, "ratio"
    if p <= EXACT_ALPHA_CAP:
        res = alpha_exact(g, max_nodes=CERTIFY_NODE_CAP, on_budget="interval")
        return min(res.upper, ratio) <= threshold, res.method
    return False, "ratio"


def heuristic_D(eq: Equation, field: PrimeField, eps: float,
                budget: int = 20000, *, seed: int = 0,
                seed_set=None, exclude_zero: bool = False,
                allow_empty: bool = True) -> DensityPoint:
    """Annealed lower bound on D: random add/remove/swap walk over
    solution-free sets, alpha certified whenever a new best size appears.

    The returned value is the best certified size; with allow_empty (default)
    an all-infeasible run returns the 0-convention point, otherwise
    NoFeasiblePoint is raised.
    """
    p = field.p
    if p > HEURISTIC_P_CAP:
        raise CapExceeded(f"heuristic capped at p={HEURISTIC_P_CAP}")
    if eps < 0:
        raise DensityError("eps must be nonnegative")
    rng = random.Random(seed)
    ground = [r for r in range(p) if not (exclude_zero and r == 0)]

    current: set[int] = set()
    if seed_set is not None:
        current = {m % p for m in seed_set}
        if exclude_zero:
            current.discard(0)
        if find_distinct_solution(current, eq, field) is not None:
            raise DensityError("seed set already contains a solution")

    best: tuple[int, tuple[int, ...], str] | None = None

    def try_record(state):
        nonlocal best
        feasible, method = _certify(state, field, eps)
        if feasible and (best is None or len(state) > best[0]):
            best = (len(state), tuple(sorted(state)), method)

    try_record(current)
    temp, cooling = 2.0, math.exp(math.log(0.005 / 2.0) / max(1, budget))
    for _ in range(budget):
        temp *= cooling
        move = rng.random()
        if move < 0.6 or not current:
            cand = rng.choice(ground)
            if cand in current:
                continue
            if _creates_solution(current, cand, eq, field):
                continue
            current.add(cand)
            if best is None or len(current) > best[0]:
                try_record(current)
        elif move < 0.8:
            victim = rng.choice(sorted(current))
            if rng.random() < math.exp(-1.0 / max(temp, 1e-9)):
                current.remove(victim)
        else:
            victim = rng.choice(sorted(current))
            cand = rng.choice(ground)
            current.remove(victim)
            if cand in current or _creates_solution(current, cand, eq, field):
                current.add(victim)
                continue
            current.add(cand)
            if best is None or len(current) > best[0]:
                try_record(current)

    if best is None:
        if not allow_empty:
            raise NoFeasiblePoint(f"nothing certifiable at eps={eps}, p={p}")
        return DensityPoint(eq.canonical(), p, eps, 0, "heuristic", "none-feasible", ())
    size, witness, method = best
    point = DensityPoint(eq.canonical(), p, eps, size, "heuristic", method, witness)
    _verify_point(point, eq, field)
    return point


def density_curve(eq: Equation, primes, eps_grid, mode: str, *,
                  budget: int = 20000, seed: int = 0,
                  exclude_zero: bool = False) -> CurveResult:
    """Evaluate the (p, eps) grid; failures become marked rows, and exact
    values are checked for monotonicity in eps per prime.
    """
    if mode not in ("exact", "heuristic"):
        raise DensityError(f"unknown mode {mode!r}")
    points, failures = [], []
    eps_sorted = sorted(eps_grid)
    for p in primes:
        for eps in eps_sorted:
            try:
                field = PrimeField(p)
                if mode == "exact":
                    pt = exact_D(eq, field, eps, exclude_zero=exclude_zero)
                else:
                    pt = heuristic_D(eq, field, eps, budget, seed=seed,
                                     exclude_zero=exclude_zero)
                points.append(pt)
            except (ValueError, RuntimeError) as exc:
                failures.append(FailedPoint(eq.canonical(), p, eps,
                                            f"{type(exc).__name__}: {exc}"))
    monotone = {}
    if mode == "exact":
        for p in primes:
            vals = [pt.value for pt in points if pt.p == p]
            monotone[p] = all(a <= b for a, b in zip(vals, vals[1:]))
    return CurveResult(tuple(points), tuple(failures), monotone)


def write_density_csv(curve: CurveResult, path: str) -> None:
    """Atomic CSV write honoring the column contract."""
    import csv

    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for row in curve.rows():
            writer.writerow(row.to_csv_row())
    os.replace(tmp, path)
