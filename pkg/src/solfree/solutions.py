"""Finding, counting, and extracting equation solutions inside a set A in Z_p.

A solution of c_1 x_1 + ... + c_k x_k = 0 is a tuple over A; following the
strict convention used throughout, "solution" means pairwise-distinct entries
unless explicitly weakened. Counting all tuples goes through length-p cyclic
convolutions of dilated indicator vectors (checked float FFT fast path, exact
integer fallback); distinct-entry counting applies Moebius inversion over the
set partition lattice on top of the all-tuples counter.

Sub-equations (used by the disjoint extraction step) may have arity 2, so the
operations here accept either an Equation or a bare coefficient sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cayley import PrimeField
from .equations import Equation

MAX_DISTINCT_COUNT_ARITY = 8
_FFT_RESIDUAL_LIMIT = 0.25


class SolutionError(ValueError):
    pass


class CoefficientVanishes(SolutionError):
    """Some c_i is 0 mod p, so the dilation/solve steps are undefined."""


class ArityTooLarge(SolutionError):
    pass


class NumericalResolutionError(SolutionError):
    """Float FFT rounding residual too large to certify an integer count."""


@dataclass(frozen=True)
class SolutionTuple:
    """A verified solution; distinct records that entries are pairwise distinct."""

    entries: tuple[int, ...]
    distinct: bool

    def verify(self, eq, field: PrimeField) -> bool:
        coeffs = _coeffs_of(eq)
        if len(self.entries) != len(coeffs):
            return False
        if self.distinct and len(set(self.entries)) != len(self.entries):
            return False
        return sum(c * a for c, a in zip(coeffs, self.entries)) % field.p == 0


def _coeffs_of(eq) -> tuple[int, ...]:
    if isinstance(eq, Equation):
        return eq.coeffs
    coeffs = tuple(int(c) for c in eq)
    if any(c == 0 for c in coeffs):
        raise SolutionError("zero coefficient in sub-equation")
    return coeffs


def _check_coeffs(coeffs, field: PrimeField):
    for i, c in enumerate(coeffs, start=1):
        if c % field.p == 0:
            raise CoefficientVanishes(f"c_{i}={c} vanishes mod {field.p}")


def find_distinct_solution(members, eq, field: PrimeField) -> SolutionTuple | None:
    """First pairwise-distinct solution with entries in members, or None.

    Backtracking assigns every position except the last, which is solved for;
    free positions are tried in descending |c_i| order, and free positions
    sharing a coefficient are forced into increasing value order (symmetry
    pruning, sound because equal-coefficient entries of any solution can be
    sorted without changing the sum).
    """
    return _find_solution(members, eq, field, require_distinct=True)


def find_any_solution(members, eq, field: PrimeField,
                      require_distinct: bool = True) -> SolutionTuple | None:
    """Like find_distinct_solution, with the repeats-allowed weakening exposed."""
    return _find_solution(members, eq, field, require_distinct=require_distinct)


def _find_solution(members, eq, field, require_distinct):
    coeffs_int = _coeffs_of(eq)
    _check_coeffs(coeffs_int, field)
    p = field.p
    k = len(coeffs_int)
    pool = sorted({m % p for m in members})
    if len(pool) < (k if require_distinct else 1):
        return None
    pool_set = set(pool)
    coeffs = [c % p for c in coeffs_int]
    solved_pos = k - 1
    free_pos = sorted(range(k - 1), key=lambda i: (-abs(coeffs_int[i]), i))
    inv_last = pow(coeffs[solved_pos], -1, p)

    # earlier free positions carrying the same integer coefficient
    same_pred: dict[int, list[int]] = {i: [] for i in free_pos}
    for d, i in enumerate(free_pos):
        for j in free_pos[:d]:
            if coeffs_int[i] == coeffs_int[j]:
                same_pred[i].append(j)

    assign = [0] * k

    def backtrack(depth, partial):
        if depth == len(free_pos):
            last = (-inv_last * partial) % p
            if last not in pool_set:
                return None
            if require_distinct and any(assign[i] == last for i in free_pos):
                return None
            assign[solved_pos] = last
            return tuple(assign)
        i = free_pos[depth]
        floor_val = None
        for j in same_pred[i]:
            floor_val = assign[j] if floor_val is None else max(floor_val, assign[j])
        for a in pool:
            if floor_val is not None:
                if require_distinct:
                    if a <= floor_val:
                        continue
                elif a < floor_val:
                    continue
            if require_distinct and any(assign[free_pos[d]] == a for d in range(depth)):
                continue
            assign[i] = a
            got = backtrack(depth + 1, (partial + coeffs[i] * a) % p)
            if got is not None:
                return got
        return None

    got = backtrack(0, 0)
    if got is None:
        return None
    sol = SolutionTuple(got, len(set(got)) == k)
    assert sol.verify(eq, field), (sol, coeffs_int, p)
    return sol


def _indicator(members, p) -> np.ndarray:
    ind = np.zeros(p, dtype=np.int64)
    for m in members:
        ind[m % p] = 1
    return ind


def _dilate(ind: np.ndarray, c: int, p: int) -> np.ndarray:
    out = np.zeros_like(ind)
    out[(np.arange(p) * (c % p)) % p] = ind
    return out


def _count_zero_sum(indicators, p, method) -> int:
    """Tuples, one entry per indicator vector, with residues summing to 0 mod p."""
    sizes = [int(ind.sum()) for ind in indicators]
    if any(s == 0 for s in sizes):
        return 0
    if not indicators:
        return 1

    if method in ("auto", "fft"):
        acc = np.fft.fft(indicators[0].astype(np.float64))
        for ind in indicators[1:]:
            acc = acc * np.fft.fft(ind.astype(np.float64))
        val = float(np.fft.ifft(acc).real[0])
        residual = abs(val - round(val))
        if residual < _FFT_RESIDUAL_LIMIT:
            return int(round(val))
        if method == "fft":
            raise NumericalResolutionError(
                f"FFT residual {residual:.3g} exceeds {_FFT_RESIDUAL_LIMIT}")

    bound = 1
    for s in sizes:
        bound *= s
    if bound < 2**62:
        acc = indicators[0]
        for ind in indicators[1:]:
            lin = np.convolve(acc, ind)
            folded = lin[:p].copy()
            if lin.size > p:
                tail = lin[p:]
                folded[:tail.size] += tail
            acc = folded
        return int(acc[0])

    # python-int fallback, immune to overflow
    acc_list = [int(x) for x in indicators[0]]
    for ind in indicators[1:]:
        cur = [int(x) for x in ind]
        nxt = [0] * p
        for i, ai in enumerate(acc_list):
            if ai:
                for j, bj in enumerate(cur):
                    if bj:
                        nxt[(i + j) % p] += ai * bj
        acc_list = nxt
    return acc_list[0]


def count_solutions_all(members, eq, field: PrimeField, method: str = "auto") -> int:
    """Number of tuples in A^k solving the equation, repeats allowed.

    method: "auto" tries the checked float FFT and falls back to exact integer
    convolution; "fft" raises NumericalResolutionError instead of falling
    back; "exact" skips the float path entirely.
    """
    if method not in ("auto", "fft", "exact"):
        raise ValueError(f"unknown method {method!r}")
    coeffs = _coeffs_of(eq)
    _check_coeffs(coeffs, field)
    p = field.p
    ind = _indicator(members, p)
    dilated = [_dilate(ind, c, p) for c in coeffs]
    return _count_zero_sum(dilated, p, method)


def _partitions(items):
    """All set partitions of items, each a list of tuples."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [(first,) + part[i]] + part[i + 1:]
        yield [(first,)] + part


def count_solutions_distinct(members, eq, field: PrimeField) -> int:
    """Pairwise-distinct solution count via Moebius inversion over partitions.

    For each partition of the k positions, positions in a block are merged
    (integer coefficients added); blocks whose merged coefficient vanishes
    mod p contribute a free factor |A| each. The Moebius weight against the
    discrete partition is the product over blocks of (-1)^(size-1)*(size-1)!.
    """
    coeffs = _coeffs_of(eq)
    k = len(coeffs)
    if k > MAX_DISTINCT_COUNT_ARITY:
        raise ArityTooLarge(f"distinct counting capped at k={MAX_DISTINCT_COUNT_ARITY}")
    _check_coeffs(coeffs, field)
    p = field.p
    ind = _indicator(members, p)
    size = int(ind.sum())
    total = 0
    for part in _partitions(list(range(k))):
        weight = 1
        for block in part:
            weight *= (-1) ** (len(block) - 1) * math.factorial(len(block) - 1)
        free = 1
        indicators = []
        for block in part:
            c = sum(coeffs[i] for i in block)
            if c % p == 0:
                free *= size
            else:
                indicators.append(_dilate(ind, c, p))
        if free:
            total += weight * free * _count_zero_sum(indicators, p, "auto")
    assert total >= 0, total
    return total


def extract_disjoint_solutions(members, sub_eq, field: PrimeField,
                               quota: int) -> list[SolutionTuple]:
    """Element-disjoint solutions of a zero-sum sub-equation, up to quota.

    The coefficients must sum to zero over the integers. Arity 2 (forced
    c_1 = -c_2) emits constant pairs (a, a) over distinct a, which are
    pairwise element-disjoint; arity >= 3 repeatedly finds a distinct-entry
    solution and removes its entries from the working set.
    """
    coeffs = _coeffs_of(sub_eq)
    if len(coeffs) < 2:
        raise SolutionError("sub-equation needs arity >= 2")
    if sum(coeffs) != 0:
        raise SolutionError(f"coefficients {coeffs} do not sum to zero")
    _check_coeffs(coeffs, field)
    p = field.p
    pool = sorted({m % p for m in members})
    out: list[SolutionTuple] = []

    if len(coeffs) == 2:
        for a in pool:
            if len(out) >= quota:
                break
            assert (coeffs[0] * a + coeffs[1] * a) % p == 0
            out.append(SolutionTuple((a, a), False))
        return out

    working = set(pool)
    while len(out) < quota:
        sol = _find_solution(working, coeffs, field, require_distinct=True)
        if sol is None:
            break
        out.append(sol)
        working -= set(sol.entries)
    used: set[int] = set()
    for sol in out:
        overlap = set(sol.entries) & used
        assert not overlap, f"extracted solutions overlap on {overlap}"
        used |= set(sol.entries)
    return out
