"""Prime fields and circulant Cayley graphs with certified independence bounds.

Cay(p, A) has vertex set Z_p and an arc u -> v exactly when v - u lies in the
generator set A (0 is rejected: it would only add loops). Independence and
clique computations run on the underlying undirected graph, whose edge set
comes from the symmetric closure A union -A. Because the graph is
vertex-transitive, some maximum independent set contains vertex 0 and every
clique can be translated to contain 0; both facts are exploited.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .mis import (MISResult, caro_wei_bound, clique_cover_bound, full_mask,
                  greedy_independent_mask, is_independent, iter_bits,
                  max_independent_set)

DEFAULT_EXACT_CAP = 2000  # vertices; beyond this alpha_exact needs an opt-in
_MASK_CAP = 4096          # refuse to materialize dense masks beyond this
_RATIO_PAD = 1e-6         # relative slack added to the eigenvalue bound


class FieldError(ValueError):
    """Bad prime field construction or incompatible equation."""


class NotPrime(FieldError):
    pass


class GraphError(ValueError):
    """Bad Cayley graph construction or query."""


class ZeroGenerator(GraphError):
    pass


class EmptyGenerators(GraphError):
    pass


class BadInterval(GraphError):
    pass


class NotAClique(GraphError):
    """Seed set is not a clique; .pair holds an offending non-adjacent pair."""

    def __init__(self, msg, pair):
        super().__init__(msg)
        self.pair = pair


class BudgetExhausted(RuntimeError):
    """Exact alpha ran out of budget; .result carries the certified interval."""

    def __init__(self, msg, result):
        super().__init__(msg)
        self.result = result


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 64-bit inputs."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    c = max(2, n + 1)
    while not is_prime(c):
        c += 1
    return c


@dataclass(frozen=True)
class PrimeField:
    """Z_p with p verified prime at construction."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    def reduce(self, x: int) -> int:
        return x % self.p

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise FieldError("0 has no inverse")
        return pow(x, -1, self.p)

    def require_compatible(self, coeffs) -> None:
        """Every coefficient must be nonzero mod p (implied by p > max |c_i|)."""
        for i, c in enumerate(coeffs, start=1):
            if c % self.p == 0:
                raise FieldError(f"coefficient c_{i}={c} vanishes mod {self.p}")


class CayleyGraph:
    """Circulant digraph on Z_p; independence queries use the symmetrization."""

    def __init__(self, field: PrimeField, gens):
        seen = set()
        for g in gens:
            r = g % field.p
            if r == 0:
                raise ZeroGenerator("generator 0 would only create loops")
            seen.add(r)
        if not seen:
            raise EmptyGenerators("generator set is empty")
        self.field = field
        self.gens = tuple(sorted(seen))
        self._genset = seen

    @property
    def p(self) -> int:
        return self.field.p

    @cached_property
    def symmetric_gens(self) -> tuple[int, ...]:
        p = self.p
        return tuple(sorted({s for g in self.gens for s in (g, p - g)}))

    @property
    def degree(self) -> int:
        return len(self.symmetric_gens)

    @property
    def n(self) -> int:
        return self.p

    def has_arc(self, u: int, v: int) -> bool:
        return (v - u) % self.p in self._genset

    def adjacent(self, u: int, v: int) -> bool:
        d = (v - u) % self.p
        return d in self._genset or (self.p - d) % self.p in self._genset

    def out_neighbors(self, v: int) -> list[int]:
        return [(v + g) % self.p for g in self.gens]

    def undirected_neighbors(self, v: int) -> list[int]:
        return [(v + s) % self.p for s in self.symmetric_gens]

    @cached_property
    def neighbor_masks(self) -> list[int]:
        """Row v is the bitmask of undirected neighbors of v (rotation of row 0)."""
        p = self.p
        if p > _MASK_CAP:
            raise GraphError(f"dense masks capped at p={_MASK_CAP}, got {p}")
        row0 = 0
        for s in self.symmetric_gens:
            row0 |= 1 << s
        fm = full_mask(p)
        return [((row0 << v) | (row0 >> (p - v))) & fm for v in range(p)]

    def to_text(self) -> str:
        return f"{self.p}\n{','.join(str(g) for g in self.gens)}\n"

    def __repr__(self):
        return f"CayleyGraph(p={self.p}, gens={self.gens})"


def build_cayley(field, gens) -> CayleyGraph:
    """Build Cay(p, A); field may be a PrimeField or a raw prime."""
    if not isinstance(field, PrimeField):
        field = PrimeField(int(field))
    return CayleyGraph(field, gens)


def cayley_from_text(text: str) -> CayleyGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) < 2:
        raise GraphError("expected two lines: p, then comma-separated generators")
    p = int(lines[0])
    gens = [int(t) for t in lines[1].split(",") if t.strip()]
    return build_cayley(p, gens)


@dataclass(frozen=True)
class Subgraph:
    """Induced subgraph with original vertex labels and local bitmask rows."""

    labels: tuple[int, ...]
    masks: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.labels)


def induce_interval(g: CayleyGraph, lo: int, hi: int) -> Subgraph:
    """Induced subgraph on the closed residue interval [lo, hi]."""
    p = g.p
    if not (0 <= lo <= hi < p):
        raise BadInterval(f"need 0 <= lo <= hi < p, got [{lo}, {hi}] with p={p}")
    width = hi - lo + 1
    labels = tuple(range(lo, hi + 1))
    symm = g.symmetric_gens
    masks = [0] * width
    for i in range(width):
        v = lo + i
        row = 0
        for s in symm:
            u = (v + s) % p
            if lo <= u <= hi:
                row |= 1 << (u - lo)
        masks[i] = row
    return Subgraph(labels, tuple(masks))


@dataclass(frozen=True)
class AlphaResult:
    """Certified interval lower <= alpha <= upper, with an independent witness."""

    lower: int
    upper: int
    method: str
    witness: tuple[int, ...]

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"alpha not settled: [{self.lower}, {self.upper}]")
        return self.lower


def _masks_and_labels(g):
    if isinstance(g, Subgraph):
        return list(g.masks), g.labels
    return g.neighbor_masks, tuple(range(g.p))


def _verify_witness(g, witness) -> None:
    if isinstance(g, Subgraph):
        pos = {lab: i for i, lab in enumerate(g.labels)}
        mask = 0
        for w in witness:
            mask |= 1 << pos[w]
        assert is_independent(list(g.masks), mask)
    else:
        ws = list(witness)
        for i, u in enumerate(ws):
            for v in ws[i + 1:]:
                assert not g.adjacent(u, v), (u, v)


def alpha_exact(g, *, cap: int = DEFAULT_EXACT_CAP, time_budget: float | None = None,
                max_nodes: int | None = None, on_budget: str = "raise") -> AlphaResult:
    """Exact independence number by branch and bound.

    For a full CayleyGraph the search is restricted to sets containing vertex 0
    (valid by vertex-transitivity). Graphs larger than cap, or searches that
    exhaust time_budget or the deterministic max_nodes cap, yield a certified
    interval: returned when on_budget="interval", raised inside
    BudgetExhausted otherwise.
    """
    if on_budget not in ("raise", "interval"):
        raise ValueError("on_budget must be 'raise' or 'interval'")
    transitive = isinstance(g, CayleyGraph)
    n = g.p if transitive else g.n

    if n > cap:
        res = _certified_interval(g, f"size cap {cap} exceeded")
        if on_budget == "raise":
            raise BudgetExhausted(f"n={n} beyond exact cap {cap}", res)
        return res

    masks, labels = _masks_and_labels(g)

    if transitive:
        sub = full_mask(n) & ~(masks[0] | 1)
        mis = max_independent_set(masks, sub, time_budget=time_budget,
                                  max_nodes=max_nodes)
        mis = MISResult(mis.size + 1, mis.witness | 1, mis.optimal)
    else:
        mis = max_independent_set(masks, time_budget=time_budget,
                                  max_nodes=max_nodes)

    witness = tuple(labels[v] for v in iter_bits(mis.witness))
    if mis.optimal:
        result = AlphaResult(mis.size, mis.size, "exact", witness)
        _verify_witness(g, witness)
        return result

    upper = _upper_bound(g, masks)
    result = AlphaResult(mis.size, max(mis.size, upper), "budget-interval", witness)
    _verify_witness(g, witness)
    if on_budget == "raise":
        raise BudgetExhausted("time budget exhausted", result)
    return result


def _upper_bound(g, masks) -> int:
    bound = clique_cover_bound(masks, full_mask(len(masks)))
    if isinstance(g, CayleyGraph):
        bound = min(bound, math.floor(alpha_upper_ratio(g)))
    return bound


def _certified_interval(g, why) -> AlphaResult:
    n = g.p if isinstance(g, CayleyGraph) else g.n
    if n <= _MASK_CAP:
        masks, labels = _masks_and_labels(g)
        greedy = greedy_independent_mask(masks)
        witness = tuple(labels[v] for v in iter_bits(greedy))
        lower = greedy.bit_count()
        upper = _upper_bound(g, masks)
    elif isinstance(g, CayleyGraph):
        # too large for dense rows: sparse greedy lower, eigenvalue upper
        witness = _greedy_independent_sparse(g)
        lower = len(witness)
        upper = math.floor(alpha_upper_ratio(g))
    else:
        witness = (g.labels[0],)
        lower = 1
        upper = g.n
    return AlphaResult(lower, max(lower, upper), f"interval({why})", witness)


def alpha_upper_ratio(g: CayleyGraph) -> float:
    """Eigenvalue (ratio) upper bound on alpha, padded for float safety.

    The underlying undirected circulant is d-regular with eigenvalues
    sum(cos(2*pi*j*s/p)) over the symmetric generators s; the bound is
    p * (-lam_min) / (d - lam_min), always >= the true alpha.
    """
    if not isinstance(g, CayleyGraph):
        raise GraphError("ratio bound needs the full circulant")
    p = g.p
    ind = np.zeros(p)
    ind[list(g.symmetric_gens)] = 1.0
    lam = np.fft.fft(ind).real
    d = float(g.degree)
    lam_min = float(lam.min())
    assert lam_min < 0.0
    bound = p * (-lam_min) / (d - lam_min)
    return min(float(p), bound + _RATIO_PAD * p)


def clique_lower(g: CayleyGraph, seed=None, *, extend: bool = True) -> tuple[int, ...]:
    """A verified clique: greedy-extended from the seed, or searched from 0.

    Useful with alpha * omega <= p (vertex-transitive graphs) as an alpha
    upper bound of p / len(clique). extend=False verifies the seed as-is.
    """
    if seed is not None:
        clique = sorted(set(int(v) % g.p for v in seed))
        for i, u in enumerate(clique):
            for v in clique[i + 1:]:
                if not g.adjacent(u, v):
                    raise NotAClique(f"seed vertices {u} and {v} are not adjacent", (u, v))
        best = _extend_clique(g, clique) if extend else clique
    else:
        best = [0]
        for s in g.symmetric_gens:
            cand = _extend_clique(g, [0, s])
            if len(cand) > len(best):
                best = cand
    for i, u in enumerate(best):
        for v in best[i + 1:]:
            assert g.adjacent(u, v)
    return tuple(sorted(best))


def _extend_clique(g, clique) -> list[int]:
    clique = list(clique)
    common = None
    for v in clique:
        nb = set(g.undirected_neighbors(v))
        common = nb if common is None else (common & nb)
    common -= set(clique)
    while common:
        v = min(common)
        clique.append(v)
        common &= set(g.undirected_neighbors(v))
        common.discard(v)
    return clique


def greedy_independent(g) -> tuple[int, ...]:
    """Deterministic greedy independent set, Caro-Wei floor asserted.

    Small graphs use the min-degree greedy on dense bitmask rows; circulants
    beyond the dense-mask cap fall back to a sequential sweep that only needs
    the generator offsets, so the lower bound stays available at any p.
    """
    if isinstance(g, CayleyGraph) and g.p > _MASK_CAP:
        return _greedy_independent_sparse(g)
    masks, labels = _masks_and_labels(g)
    chosen = greedy_independent_mask(masks)
    assert chosen.bit_count() >= caro_wei_bound(masks) - 1e-9
    witness = tuple(labels[v] for v in iter_bits(chosen))
    _verify_witness(g, witness)
    return witness


def _greedy_independent_sparse(g: CayleyGraph) -> tuple[int, ...]:
    """Sequential greedy sweep over Z_p using only the generator offsets.

    Each chosen vertex blocks itself and its <= degree neighbors, so the
    result has at least p / (degree + 1) vertices -- the Caro-Wei bound for
    a regular graph. Independence is re-checked against the chosen set.
    """
    p = g.p
    symm = g.symmetric_gens
    blocked = bytearray(p)
    chosen: list[int] = []
    for v in range(p):
        if blocked[v]:
            continue
        chosen.append(v)
        for s in symm:
            u = v + s
            blocked[u - p if u >= p else u] = 1
    assert len(chosen) >= g.p / (g.degree + 1) - 1e-9
    in_set = bytearray(p)
    for v in chosen:
        in_set[v] = 1
    for v in chosen:
        for s in symm:
            u = v + s
            assert not in_set[u - p if u >= p else u], (v, s)
    return tuple(chosen)


def alpha_upper_from_clique(g: CayleyGraph, clique) -> float:
    """alpha <= p / omega for vertex-transitive graphs."""
    if not clique:
        return float(g.p)
    return g.p / len(clique)
