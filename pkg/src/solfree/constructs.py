"""Explicit solution-free generating sets with small Cayley independence number.

Three constructions are provided: an interval-plus-powers set for any
non-degenerate equation, a Schur-equation set built around a triangle-free
auxiliary graph, and a general set for equations with nonzero coefficient sum
built around a high-girth auxiliary graph. Each returns a ConstructionReport
whose every numeric claim is paired with the check that verified it; nothing
in a report is assumed from theory.

The auxiliary graphs are found by random search (gen_triangle_free,
gen_high_girth) with exact independence numbers measured, never asserted.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field

from .cayley import PrimeField, alpha_exact, alpha_upper_ratio, build_cayley, \
    clique_lower, induce_interval, is_prime
from .equations import Equation, classify
from .mis import max_independent_set
from .solutions import count_solutions_distinct

SIGMA_CAP = 10 ** 6        # signed-sum enumeration budget
EXACT_VERIFY_CAP = 2 ** 17  # counting oracle used up to this p; sampling beyond
GEN_ALPHA_CAP = 200        # exact alpha budget for generated auxiliary graphs
CSV_HEADER = ("construction", "p", "eq", "size", "size_bound", "alpha_upper", "ok")


class ConstructError(ValueError):
    pass


class ParameterError(ConstructError):
    pass


class FieldTooSmall(ConstructError):
    pass


class NotTriangleFree(ConstructError):
    def __init__(self, triangle):
        super().__init__(f"triangle {triangle}")
        self.triangle = triangle


class GirthTooSmall(ConstructError):
    pass


class WindowMissed(ConstructError):
    """No prefix graph landed in the target alpha window."""

    def __init__(self, alphas, window):
        super().__init__(f"alpha sequence {alphas} misses window {window}")
        self.alphas = tuple(alphas)
        self.window = window


class IntervalEmpty(ConstructError):
    pass


class SigmaTooLarge(ConstructError):
    pass


class SparseGraph:
    """Simple undirected graph on vertices 1..n with an explicit edge list."""

    def __init__(self, n: int, edges):
        if n < 1:
            raise ParameterError("graph needs at least one vertex")
        self.n = n
        clean = set()
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParameterError(f"edge ({u},{v}) outside 1..{n}")
            if u == v:
                raise ParameterError(f"loop at {u}")
            clean.add((min(u, v), max(u, v)))
        self.edges = tuple(sorted(clean))
        self.adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
        for u, v in self.edges:
            self.adj[u].add(v)
            self.adj[v].add(u)

    def triangle(self):
        """Some triangle as a sorted vertex triple, or None."""
        for u, v in self.edges:
            common = self.adj[u] & self.adj[v]
            if common:
                return tuple(sorted((u, v, min(common))))
        return None

    def shortest_cycle_length(self):
        """Girth via BFS from every vertex; None when acyclic."""
        best = None
        for root in range(1, self.n + 1):
            dist = {root: 0}
            parent = {root: 0}
            queue = [root]
            while queue:
                nxt = []
                for u in queue:
                    for w in self.adj[u]:
                        if w not in dist:
                            dist[w] = dist[u] + 1
                            parent[w] = u
                            nxt.append(w)
                        elif w != parent[u]:
                            cycle = dist[u] + dist[w] + 1
                            if best is None or cycle < best:
                                best = cycle
                queue = nxt
        return best

    def alpha(self) -> tuple[int, tuple[int, ...]]:
        """Exact independence number and a witness, via branch and bound."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u - 1] |= 1 << (v - 1)
            masks[v - 1] |= 1 << (u - 1)
        res = max_independent_set(masks)
        witness = tuple(i + 1 for i in range(self.n) if (res.witness >> i) & 1)
        return res.size, witness

    def to_text(self) -> str:
        lines = [str(self.n)]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SparseGraph":
        n = None
        edges = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if n is None:
                n = int(line)
                continue
            u, v = (int(x) for x in line.split())
            edges.append((u, v))
        if n is None:
            raise ParameterError("graph text needs a vertex count line")
        return cls(n, edges)

    def __repr__(self):
        return f"SparseGraph(n={self.n}, m={len(self.edges)})"


@dataclass(frozen=True)
class ConstructionReport:
    name: str
    p: int
    eq: str
    members: tuple[int, ...]
    params: dict
    checks: dict            # check name -> bool
    details: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def size(self) -> int:
        return len(self.members)

    def to_text(self) -> str:
        lines = [f"construction: {self.name}",
                 f"p: {self.p}",
                 f"eq: {self.eq}",
                 f"size: {self.size}"]
        for key in sorted(self.params):
            lines.append(f"param {key}: {self.params[key]}")
        for key in sorted(self.details):
            lines.append(f"detail {key}: {self.details[key]}")
        for key in sorted(self.checks):
            lines.append(f"check {key}: {'pass' if self.checks[key] else 'FAIL'}")
        lines.append("members: " + ",".join(str(a) for a in self.members))
        return "\n".join(lines) + "\n"

    def to_csv_row(self) -> tuple[str, ...]:
        return (self.name, str(self.p), self.eq, str(self.size),
                str(self.details.get("size_bound", "")),
                str(self.details.get("alpha_upper", "")),
                "ok" if self.ok else "FAIL")


def verify_solution_free(members, eq: Equation, field: PrimeField, *,
                         exact_cap: int = EXACT_VERIFY_CAP,
                         samples: int = 10 ** 6, seed: int = 0) -> tuple[bool, str]:
    """(no distinct-entry solutions?, method). Exact counting up to exact_cap.

    The sampled fallback draws k-1 entries and solves for the last; a clean
    pass is strong evidence, not proof, and is labeled as such.
    """
    p = field.p
    if p <= exact_cap:
        return count_solutions_distinct(members, eq, field) == 0, "exact-count"
    rng = random.Random(seed)
    pool = sorted({m % p for m in members})
    member_set = set(pool)
    inv_last = field.inv(eq.coeffs[-1] % p)
    for _ in range(samples):
        head = [rng.choice(pool) for _ in range(eq.k - 1)]
        partial = sum(c * x for c, x in zip(eq.coeffs, head)) % p
        last = (-inv_last * partial) % p
        if last in member_set and len(set(head + [last])) == eq.k:
            return False, "sampled"
    return True, "sampled"


# ---------------------------------------------------------------------------
# interval-plus-powers construction for non-degenerate equations


def construct_nondegenerate(eq: Equation, field: PrimeField,
                            t: int | None = None) -> ConstructionReport:
    """A = {rt+1 : 0 <= r <= p/(2Ct)} union {t^z - t^w}, C = sum|c_i|.

    The first block is an arithmetic progression of residues 1 mod t, the
    second holds differences of t-powers up to sqrt(p) (all 0 mod t), and the
    t-powers themselves form a clique certificate pushing alpha down to
    about p / log_t(sqrt(p)). Density bound: |A| >= p/(2Ct).
    """
    cls = classify(eq)
    if cls.is_degenerate:
        raise ParameterError("construction applies to non-degenerate equations only")
    p = field.p
    big_c = eq.abs_coeff_sum
    if t is None:
        t = big_c + 1
    if t <= big_c:
        raise ParameterError(f"need t > {big_c}, got {t}")

    if t ** 2 > p:
        raise FieldTooSmall(f"need t^2 <= p for a power block; t={t}, p={p}")
    if big_c ** 2 >= p:
        raise FieldTooSmall(f"need C^2 < p; C={big_c}, p={p}")
    top = 1  # largest z with t^(2z) <= p, integer-exact
    while t ** (2 * (top + 1)) <= p:
        top += 1

    r_max = p // (2 * big_c * t)
    xs = [r * t + 1 for r in range(r_max + 1)]
    # empty when top == 1: the power block is a single vertex, still a clique
    ys = sorted(t ** z - t ** w for z in range(2, top + 1) for w in range(1, z))
    members = tuple(sorted({x % p for x in xs} | {y % p for y in ys}))

    max_int = max(xs[-1], ys[-1]) if ys else xs[-1]
    beta = 1.0 / (2 * big_c * t)
    free, free_method = verify_solution_free(members, eq, field)

    graph = build_cayley(field, members)
    powers = [pow(t, i, p) for i in range(1, top + 1)]
    # verified as-is: the certificate is exactly the power block
    clique = clique_lower(graph, seed=tuple(powers), extend=False)
    alpha_upper = min(p // len(clique), math.floor(alpha_upper_ratio(graph)))

    checks = {
        "progression_mod_t": all(x % t == 1 for x in xs),
        "powers_mod_t": all(y % t == 0 for y in ys),
        "blocks_disjoint": len(members) == len(xs) + len(ys),
        "size_at_least_beta_p": len(members) >= beta * p,
        "solution_free": free,
        "integer_overflow_margin": big_c * max_int < p,
        "sqrt_window": (t ** top) ** 2 <= p and big_c ** 2 < p,
        "clique_certified": len(clique) >= len(powers),
    }
    details = {
        "x_size": len(xs), "y_size": len(ys),
        "beta": beta, "size_bound": beta * p,
        "clique": clique, "clique_size": len(clique),
        "alpha_upper": alpha_upper, "alpha_method": "clique+ratio",
        "solution_free_method": free_method,
    }
    return ConstructionReport("nondeg", p, str(eq), members,
                              {"t": t, "C": big_c}, checks, details)


# ---------------------------------------------------------------------------
# Schur construction around a triangle-free graph

SCHUR_EQ = Equation((1, 1, -1))


def _schur_case_checks(x_part, y_part, p):
    """Per-case distinct-entry Schur triple scans (a + b = c, all different),
    split by which block each entry lands in, mirroring the soundness argument.
    """
    x_set, y_set = set(x_part), set(y_part)

    def found(a_pool, b_pool, c_set):
        for a in a_pool:
            for b in b_pool:
                if a == b:
                    continue
                c = (a + b) % p
                if c in c_set and c != a and c != b:
                    return True
        return False

    return {
        "no_triple_yyy": not found(y_part, y_part, y_set),
        "no_triple_yy_x": not found(y_part, y_part, x_set),
        "no_triple_xy_y": not found(x_part, y_part, y_set),
        "no_triple_xx_y": not found(x_part, x_part, y_set),
        "no_triple_xy_x": not found(x_part, y_part, x_set),
        "no_triple_xxx": not found(x_part, x_part, x_set),
    }


def construct_schur_lower(field: PrimeField, eps: float, graph: SparseGraph,
                          t: float | None = None) -> ConstructionReport:
    """Schur-free A = X_i union Y from a triangle-free auxiliary graph.

    X maps the graph's edges to differences of powers of 4; prefix graphs
    H_i (induced on the middle interval [p/3, 4p/9]) have halving alpha, and
    the first prefix whose alpha lands in [5p/t, 10p/t] donates its maximum
    independent set as Y. Default t = 100/eps.
    """
    p = field.p
    if not 0 < eps <= 1:
        raise ParameterError(f"eps must be in (0,1], got {eps}")
    if t is None:
        t = 100.0 / eps
    q = graph.n
    if p <= 2 * 4 ** q:
        raise FieldTooSmall(f"need p > 2*4^{q} = {2 * 4 ** q}, got {p}")
    tri = graph.triangle()
    if tri is not None:
        raise NotTriangleFree(tri)

    xs = sorted({4 ** v - 4 ** u for u, v in graph.edges})
    lo = -(-p // 3)          # ceil(p/3)
    hi = (4 * p) // 9
    width = hi - lo + 1
    low_w, high_w = 5 * p / t, 10 * p / t

    # alpha per prefix: exact int when the solver settles, else (lower, upper)
    alphas: list = [width]  # H_0 has no edges: the whole interval is independent
    witnesses = [tuple(range(lo, hi + 1))]
    chosen = 0 if low_w <= width <= high_w else None
    for i in range(1, len(xs) + 1):
        if chosen is not None:
            break
        sub = induce_interval(build_cayley(field, xs[:i]), lo, hi)
        res = alpha_exact(sub, on_budget="interval")
        witnesses.append(res.witness)
        if res.exact:
            alphas.append(res.value)
            if low_w <= res.value <= high_w:
                chosen = i
        else:
            alphas.append((res.lower, res.upper))
            if low_w <= res.lower and res.upper <= high_w:
                chosen = i
            elif not (res.upper < low_w or res.lower > high_w):
                raise WindowMissed(alphas, (low_w, high_w))  # undecidable membership
    if chosen is None:
        raise WindowMissed(alphas, (low_w, high_w))

    exact_pairs = [(alphas[i], alphas[i + 1]) for i in range(len(alphas) - 1)
                   if isinstance(alphas[i], int) and isinstance(alphas[i + 1], int)]
    halving_ok = all(b >= a / 2 for a, b in exact_pairs)
    alpha_chosen = alphas[chosen] if isinstance(alphas[chosen], int) else alphas[chosen][1]
    x_part = tuple(xs[:chosen])
    y_part = tuple(sorted(witnesses[chosen]))
    members = tuple(sorted(set(x_part) | set(y_part)))

    free, free_method = verify_solution_free(members, SCHUR_EQ, field)
    checks = _schur_case_checks(x_part, y_part, p)
    cover = -(-p // width)  # translates of the interval covering F_p
    alpha_upper = cover * alpha_chosen

    embed_ok = True  # induced subgraph on {4^v} must replicate the input graph
    cay_x = build_cayley(field, xs) if xs else None
    for u in range(1, q + 1):
        for v in range(u + 1, q + 1):
            has = cay_x.adjacent(pow(4, u, p), pow(4, v, p)) if cay_x else False
            if has != ((u, v) in set(graph.edges)):
                embed_ok = False

    checks.update({
        "triangle_free_input": True,
        "interval_alpha_floor": alphas[0] >= p / 9 - 2,
        "halving": halving_ok,
        "window_hit": low_w <= len(y_part) and alpha_chosen <= high_w,
        "y_independent_size": len(y_part) >= low_w,
        "size_bound_met": len(members) >= 5 * p / t,
        "alpha_within_eps": alpha_upper <= max(100 * p / t, eps * p),
        "powers_embed_graph": embed_ok,
        "solution_free": free,
    })
    details = {
        "interval": (lo, hi), "width": width,
        "alpha_sequence": tuple(alphas), "chosen_prefix": chosen,
        "x_size": len(x_part), "y_size": len(y_part),
        "size_bound": 5 * p / t, "window": (low_w, high_w),
        "alpha_upper": alpha_upper, "alpha_method": "interval-cover",
        "solution_free_method": free_method,
    }
    return ConstructionReport("schur", p, str(SCHUR_EQ), members,
                              {"eps": eps, "t": t, "q": q,
                               "edges": len(graph.edges)}, checks, details)


# ---------------------------------------------------------------------------
# general construction around a high-girth graph


def _signed_sums(xs, depth, cap):
    """All nonzero signed sums of at most depth terms from xs (with repeats)."""
    seen = {0}
    frontier = [0]
    for _ in range(depth):
        fresh = []
        for s in frontier:
            for x in xs:
                for v in (s + x, s - x):
                    if v not in seen:
                        seen.add(v)
                        fresh.append(v)
                        if len(seen) > cap:
                            raise SigmaTooLarge(f"signed sums exceed cap {cap}")
        frontier = fresh
    seen.discard(0)
    return seen


def _smallest_prime_dividing_none(values):
    cand = 2
    while True:
        if is_prime(cand) and all(v % cand for v in values):
            return cand
        cand += 1


def construct_poly_lower(eq: Equation, field: PrimeField, eps: float,
                         graph: SparseGraph, *,
                         sigma_cap: int = SIGMA_CAP) -> ConstructionReport:
    """A = X union Y for equations with nonzero coefficient sum.

    X maps the edges of a graph with no cycles of length <= k+1 to
    differences of powers of a prime r in (kM, 2kM]; Y collects multiples of
    r' (the least prime dividing no short signed sum of X) inside the window
    p/(2r) +- p/(4r^2). Size bound: |Y| >= p/(4 r^2 r').
    """
    p = field.p
    if eq.coefficient_sum == 0:
        raise ParameterError("construction needs a nonzero coefficient sum")
    if not 0 < eps <= 1:
        raise ParameterError(f"eps must be in (0,1], got {eps}")
    k = eq.k
    cycle = graph.shortest_cycle_length()
    if cycle is not None and cycle <= k + 1:
        raise GirthTooSmall(f"input graph has a cycle of length {cycle} <= {k + 1}")

    m_coeff = eq.max_abs_coeff
    r = next(c for c in range(k * m_coeff + 1, 2 * k * m_coeff + 1) if is_prime(c))
    q = graph.n
    if 4 * r ** (q + 2) > p:
        raise FieldTooSmall(f"need 4*r^(q+2) = {4 * r ** (q + 2)} <= p = {p}")

    xs = sorted({r ** v - r ** u for u, v in graph.edges})
    if not xs:
        raise ParameterError("auxiliary graph has no edges, X is empty")
    sums = _signed_sums(xs, r, sigma_cap)
    r_prime = _smallest_prime_dividing_none(sums)

    lo = math.ceil(p / (2 * r) - p / (4 * r * r))
    hi = math.floor(p / (2 * r) + p / (4 * r * r))
    first = ((lo + r_prime - 1) // r_prime) * r_prime
    y_part = tuple(range(first, hi + 1, r_prime))
    if not y_part:
        raise IntervalEmpty(f"no multiples of {r_prime} in [{lo}, {hi}]")

    members = tuple(sorted({x % p for x in xs} | set(y_part)))
    free, free_method = verify_solution_free(members, eq, field)

    cay_x = build_cayley(field, xs)
    embed_ok = all(
        cay_x.adjacent(pow(r, u, p), pow(r, v, p)) == ((u, v) in set(graph.edges))
        for u in range(1, q + 1) for v in range(u + 1, q + 1))
    g_alpha, _ = graph.alpha()
    cover_bound = p * g_alpha / q  # averaging over translated power sets
    size_bound = p / (4 * r * r * r_prime)

    checks = {
        "girth_exceeds_k_plus_1": True,
        "x_sums_bounded": r ** (q + 1) <= p / (4 * r),
        "y_divisible": all(y % r_prime == 0 for y in y_part),
        "y_size_bound": len(y_part) >= size_bound,
        "blocks_disjoint": len(members) == len(xs) + len(y_part),
        "powers_embed_graph": embed_ok,
        "solution_free": free,
        "alpha_within_eps": cover_bound <= eps * p,
    }
    details = {
        "r": r, "r_prime": r_prime, "x_size": len(xs), "y_size": len(y_part),
        "sigma_size": len(sums), "window": (lo, hi),
        "size_bound": size_bound, "graph_alpha": g_alpha,
        "alpha_upper": math.floor(cover_bound),
        "alpha_method": "translate-cover",
        "solution_free_method": free_method,
    }
    return ConstructionReport("poly", p, str(eq), members,
                              {"eps": eps, "k": k, "M": m_coeff, "q": q},
                              checks, details)


# ---------------------------------------------------------------------------
# auxiliary graph generators


def gen_triangle_free(target_n: int, attempts: int = 20, *,
                      seed: int | None = None) -> tuple[SparseGraph, int]:
    """Random triangle-free process, best (minimum exact alpha) of attempts."""
    if target_n > GEN_ALPHA_CAP:
        raise ParameterError(f"exact alpha budget capped at n={GEN_ALPHA_CAP}")
    rng = random.Random(seed)
    best = None
    for _ in range(max(1, attempts)):
        pairs = [(u, v) for u in range(1, target_n + 1)
                 for v in range(u + 1, target_n + 1)]
        rng.shuffle(pairs)
        adj = {v: set() for v in range(1, target_n + 1)}
        edges = []
        for u, v in pairs:
            if not adj[u] & adj[v]:
                adj[u].add(v)
                adj[v].add(u)
                edges.append((u, v))
        g = SparseGraph(target_n, edges)
        assert g.triangle() is None
        a, _ = g.alpha()
        if best is None or a < best[1]:
            best = (g, a)
    return best


def gen_high_girth(target_n: int, girth: int, attempts: int = 20, *,
                   seed: int | None = None) -> tuple[SparseGraph, int]:
    """Random process keeping girth >= girth: an edge is added only when its
    endpoints are at distance >= girth-1, so no cycle shorter than girth can
    close. Best (minimum exact alpha) of attempts; girth re-verified by BFS.
    """
    if girth < 4:
        raise ParameterError("girth below 4 puts no constraint beyond simplicity")
    if target_n > GEN_ALPHA_CAP:
        raise ParameterError(f"exact alpha budget capped at n={GEN_ALPHA_CAP}")
    rng = random.Random(seed)
    best = None
    for _ in range(max(1, attempts)):
        pairs = [(u, v) for u in range(1, target_n + 1)
                 for v in range(u + 1, target_n + 1)]
        rng.shuffle(pairs)
        adj = {v: set() for v in range(1, target_n + 1)}
        edges = []
        for u, v in pairs:
            if _bfs_distance(adj, u, v, limit=girth - 2) is None:
                adj[u].add(v)
                adj[v].add(u)
                edges.append((u, v))
        g = SparseGraph(target_n, edges)
        cyc = g.shortest_cycle_length()
        assert cyc is None or cyc >= girth, (cyc, girth)
        a, _ = g.alpha()
        if best is None or a < best[1]:
            best = (g, a)
    return best


def _bfs_distance(adj, src, dst, *, limit):
    """Distance src->dst if it is <= limit, else None."""
    if src == dst:
        return 0
    dist = {src: 0}
    queue = [src]
    while queue:
        nxt = []
        for u in queue:
            d = dist[u] + 1
            if d > limit:
                return None
            for w in adj[u]:
                if w == dst:
                    return d
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
        queue = nxt
    return None
