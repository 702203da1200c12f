"""Constructive solution pipeline for degenerate equations.

Given a degenerate equation and a set A, the pipeline reorders a zero-sum
coefficient subset to the front (size k'), extracts element-disjoint solutions
of that sub-equation, dilates their last coordinates into a vertex set U,
hands the induced colored digraphs of the remaining coefficients to the
rainbow path search, and reassembles a full solution with pairwise-distinct
entries. Every stage that can fall short reports the stage instead of raising,
because the underlying guarantee is conditional on the set being large with a
small Cayley independence number; a returned solution is always re-verified.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from dataclasses import dataclass, field as dc_field

from .cayley import PrimeField, alpha_exact, build_cayley
from .equations import Equation, classify, invert_permutation, reorder_for_witness
from .rainbow import BudgetExceeded, ColoredDigraph, RainbowPath, RestrictedSystem, \
    find_rainbow_exhaustive, find_rainbow_greedy
from .solutions import SolutionTuple, _check_coeffs, extract_disjoint_solutions, \
    find_distinct_solution

FULL_SIZE_FACTOR_BASE = 100   # |A| threshold constant: 100^(k+1) k^3 eps p
QUOTA_FACTOR_BASE = 100       # extraction quota constant: 100^k k^2 eps p


class WitnessError(ValueError):
    pass


class NotDegenerate(WitnessError):
    pass


class AlphaUndecided(RuntimeError):
    """Certified alpha interval straddles the eps*p threshold."""


@dataclass(frozen=True)
class PipelineConfig:
    """Pipeline knobs.

    epsilon feeds the headline quota 100^k k^2 eps p; with relaxed=True
    (default) the quota is clamped to |A| // (2k') so desk-sized sets still
    exercise every stage, and the report records whether the headline quota
    was met. try_all_witnesses retries the pipeline over every zero-sum
    subset instead of only the canonical one. exhaustive_fallback retries a
    stalled rainbow search with the exact finder, within its budget.
    """

    epsilon: float | None = None
    relaxed: bool = True
    try_all_witnesses: bool = False
    exhaustive_fallback: bool = False

    def quota(self, k: int, k_prime: int, set_size: int,
              p: int) -> tuple[int, int | None]:
        """(effective quota, headline quota or None). Always >= 1."""
        headline = None
        if self.epsilon is not None:
            headline = math.ceil(QUOTA_FACTOR_BASE ** k * k ** 2 * self.epsilon * p)
        if not self.relaxed:
            if headline is None:
                raise WitnessError("strict quotas need epsilon")
            return max(1, headline), headline
        relaxed = max(1, set_size // (2 * k_prime))
        if headline is not None:
            relaxed = min(relaxed, max(1, headline))
        return relaxed, headline


@dataclass(frozen=True)
class WitnessReport:
    """Outcome plus the intermediate artifacts of one pipeline run."""

    solution: SolutionTuple | None
    stage: str                      # "found" or the stage that fell short
    diagnostic: str | None
    subset: tuple[int, ...]         # zero-sum positions, 1-based, original order
    k_prime: int
    num_solutions: int              # extracted disjoint sub-solutions
    quota: int
    headline_quota: int | None
    headline_quota_met: bool | None
    u_size: int
    path: RainbowPath | None
    log: tuple[str, ...] = dc_field(default_factory=tuple)

    @property
    def found(self) -> bool:
        return self.solution is not None

    def to_text(self) -> str:
        lines = [f"outcome: {'found' if self.found else 'hypothesis-failed'}",
                 f"stage: {self.stage}"]
        if self.diagnostic:
            lines.append(f"diagnostic: {self.diagnostic}")
        lines.append(f"subset: {','.join(str(i) for i in self.subset)}")
        lines.append(f"k_prime: {self.k_prime}")
        for line in self.log:
            lines.append(f"  {line}")
        if self.path is not None:
            verts = "->".join(str(v) for v in self.path.vertices)
            cols = ",".join(str(c) for c in self.path.colors)
            lines.append(f"path: {verts} colors {cols}")
        if self.solution is not None:
            lines.append("solution: " + ",".join(str(z) for z in self.solution.entries))
        return "\n".join(lines) + "\n"


def _zero_sum_subsets(eq: Equation):
    """All zero-sum position subsets, smallest first then lexicographic."""
    for size in range(2, eq.k + 1):
        for subset in itertools.combinations(range(1, eq.k + 1), size):
            if sum(eq.coeffs[i - 1] for i in subset) == 0:
                yield subset


def find_solution_via_rainbow(members, eq: Equation, field: PrimeField,
                              cfg: PipelineConfig | None = None) -> WitnessReport:
    """Run the constructive pipeline; never returns an unverified solution.

    Raises NotDegenerate for equations without a zero-sum coefficient subset
    and CoefficientVanishes when p divides some coefficient. All other
    shortfalls come back as a report with the failing stage named.
    """
    cfg = cfg or PipelineConfig()
    cls = classify(eq)
    if not cls.is_degenerate:
        raise NotDegenerate(f"{eq} has no zero-sum coefficient subset")
    _check_coeffs(eq.coeffs, field)

    cleaned = sorted({m % field.p for m in members})
    stripped = [a for a in cleaned if a != 0]
    prelog = []
    if len(stripped) != len(cleaned):
        prelog.append("dropped 0 from the set (loop-free convention)")

    subsets = list(_zero_sum_subsets(eq)) if cfg.try_all_witnesses else [cls.witness]
    first = None
    for pos, subset in enumerate(subsets):
        report = _run_pipeline(stripped, eq, field, subset, cfg, prelog)
        if report.found or first is None:
            first = report
        if report.found:
            if pos:
                first = _with_log(report, f"succeeded on subset #{pos + 1} of {len(subsets)}")
            return first
    if len(subsets) > 1:
        first = _with_log(first, f"all {len(subsets)} zero-sum subsets failed")
    return first


def _with_log(report: WitnessReport, line: str) -> WitnessReport:
    return dataclasses.replace(report, log=report.log + (line,))


def _run_pipeline(members, eq, field, subset, cfg, prelog) -> WitnessReport:
    p = field.p
    reordered, perm = reorder_for_witness(eq, subset)
    k = eq.k
    k_prime = len(subset)
    log = list(prelog)
    log.append(f"reordered to {reordered} (k'={k_prime})")

    def fail(stage, diagnostic, *, num=0, quota=0, headline=None, u=0, path=None):
        met = None if headline is None else num >= headline
        return WitnessReport(None, stage, diagnostic, tuple(subset), k_prime,
                             num, quota, headline, met, u, path, tuple(log))

    if k_prime == k:
        log.append("zero-sum subset covers every position; direct search")
        sol = find_distinct_solution(members, eq, field)
        if sol is None:
            return fail("direct-search", "no distinct-entry solution in the set")
        return WitnessReport(sol, "found", None, tuple(subset), k_prime,
                             0, 0, None, None, 0, None, tuple(log))

    quota, headline = cfg.quota(k, k_prime, len(members), p)
    if headline is not None:
        log.append(f"quota {quota} (headline {headline}"
                   f"{' met' if quota >= headline else ' relaxed away'})")
    else:
        log.append(f"quota {quota} (no epsilon given, purely relaxed)")

    sub_coeffs = reordered.coeffs[:k_prime]
    extracted = extract_disjoint_solutions(members, sub_coeffs, field, quota)
    log.append(f"extracted {len(extracted)} disjoint sub-equation solutions")
    if not extracted:
        return fail("extraction", "no disjoint sub-equation solutions found",
                    quota=quota, headline=headline)

    c_last = reordered.coeffs[k_prime - 1] % p
    by_endpoint: dict[int, SolutionTuple] = {}
    for sol in extracted:
        u = (-c_last * sol.entries[-1]) % p
        assert u not in by_endpoint, "disjoint solutions share a dilated endpoint"
        by_endpoint[u] = sol
    u_vertices = sorted(by_endpoint)
    forbidden = {u: frozenset(by_endpoint[u].entries) for u in u_vertices}
    log.append(f"|U|={len(u_vertices)}")

    u_set = set(u_vertices)
    digraphs = []
    for j in range(k_prime, k):
        c = reordered.coeffs[j] % p
        arcs = []
        for u in u_vertices:
            for a in members:
                head = (u + c * a) % p
                if head != u and head in u_set:
                    arcs.append((u, head, a))
        digraphs.append(ColoredDigraph(u_vertices, arcs))
    system = RestrictedSystem(digraphs, forbidden, ell=k_prime)

    path = find_rainbow_greedy(system, k - k_prime)
    if path is None and cfg.exhaustive_fallback:
        try:
            path = find_rainbow_exhaustive(system, k - k_prime)
            if path is not None:
                log.append("greedy stalled; exhaustive fallback succeeded")
        except BudgetExceeded as exc:
            log.append(f"exhaustive fallback skipped: {exc}")
    if path is None:
        return fail("rainbow", f"no rainbow path of length {k - k_prime} on |U|="
                    f"{len(u_vertices)}", num=len(extracted), quota=quota,
                    headline=headline, u=len(u_vertices))

    entries = _assemble(reordered, field, path, by_endpoint, k_prime)
    solution = SolutionTuple(invert_permutation(perm, entries), True)
    assert solution.verify(eq, field), solution
    member_set = set(members)
    assert all(z in member_set for z in solution.entries), solution
    log.append(f"assembled solution through path start {path.start}")
    met = None if headline is None else len(extracted) >= headline
    return WitnessReport(solution, "found", None, tuple(subset), k_prime,
                         len(extracted), quota, headline, met,
                         len(u_vertices), path, tuple(log))


def _assemble(reordered, field, path, by_endpoint, k_prime):
    """Combine the start solution, path colors, and end coordinate.

    Three ledger identities are asserted separately: the first k'-1 entries
    recover the path start, the path colors telescope to end minus start, and
    the k'-th entry dilates to minus the path end.
    """
    p = field.p
    k = reordered.k
    coeffs = [c % p for c in reordered.coeffs]
    start_sol = by_endpoint[path.start]
    end_sol = by_endpoint[path.end]

    entries = [0] * k
    for i in range(k_prime - 1):
        entries[i] = start_sol.entries[i]
    entries[k_prime - 1] = (-field.inv(coeffs[k_prime - 1]) * path.end) % p
    for t, color in enumerate(path.colors):
        j = k_prime + t
        step = (path.vertices[t + 1] - path.vertices[t]) % p
        assert step == (coeffs[j] * color) % p, "path color mismatch"
        entries[j] = color

    assert entries[k_prime - 1] == end_sol.entries[-1], "endpoint coordinate drifted"
    first = sum(coeffs[i] * entries[i] for i in range(k_prime - 1)) % p
    assert first == path.start % p, "start identity failed"
    second = sum(coeffs[j] * entries[j] for j in range(k_prime, k)) % p
    assert second == (path.end - path.start) % p, "telescoping identity failed"
    third = (coeffs[k_prime - 1] * entries[k_prime - 1]) % p
    assert third == (-path.end) % p, "end identity failed"
    assert len(set(entries)) == k, f"entries repeat: {entries}"
    return tuple(entries)


def check_hypothesis(members, eq: Equation, field: PrimeField, epsilon: float,
                     *, time_budget: float | None = None,
                     alpha_cap: int = 4096) -> bool:
    """True iff the pipeline's promise applies: the set beats the size
    threshold 100^(k+1) k^3 eps p strictly AND alpha(Cay(A)) <= eps p.

    Raises AlphaUndecided when the certified alpha interval straddles eps p
    within the allowed budget.
    """
    if epsilon < 0:
        raise WitnessError("epsilon must be nonnegative")
    p = field.p
    k = eq.k
    cleaned = {m % p for m in members}
    size_ok = len(cleaned) > FULL_SIZE_FACTOR_BASE ** (k + 1) * k ** 3 * epsilon * p
    if not size_ok:
        return False
    threshold = epsilon * p
    if threshold >= p:
        return True
    gens = sorted(cleaned - {0})
    if not gens:
        return False  # empty graph: alpha = p > threshold here
    graph = build_cayley(field, gens)
    res = alpha_exact(graph, cap=alpha_cap, time_budget=time_budget,
                      on_budget="interval")
    if res.upper <= threshold:
        return True
    if res.lower > threshold:
        return False
    raise AlphaUndecided(f"alpha in [{res.lower}, {res.upper}] vs eps*p={threshold}")
