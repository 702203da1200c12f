"""Homogeneous linear equations over prime fields and their classification.

An equation is an ordered tuple of nonzero integer coefficients (c_1, ..., c_k),
k >= 3, read as c_1*x_1 + ... + c_k*x_k = 0. The structural dichotomy that
drives everything else: the equation is degenerate when some nonempty subset of
the coefficients sums to zero (over the integers), non-degenerate otherwise.
Index sets here are 1-based, matching the display form S={1,3}.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

MAX_SUBSET_SEARCH_ARITY = 24  # 2^k subset scan stays exhaustive up to here
_COEFF_LIMIT = 2**63 - 1  # coefficients are contract-bound to 64-bit signed range


class EquationError(ValueError):
    """Base class for malformed equations and bad equation inputs."""


class EquationSyntaxError(EquationError):
    """Input string does not match either accepted grammar."""


class ArityError(EquationError):
    """Too few variables (k < 3), or k beyond the exhaustive-search cap."""


class ZeroCoefficientError(EquationError):
    """Some c_i is zero; zero coefficients are not representable."""


class InvalidWitness(EquationError):
    """Claimed zero-sum index subset does not sum to zero or is out of range."""


@dataclass(frozen=True)
class Equation:
    """Ordered coefficient vector of a homogeneous linear equation."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 3:
            raise ArityError(f"need at least 3 coefficients, got {len(coeffs)}")
        for i, c in enumerate(coeffs, start=1):
            if c == 0:
                raise ZeroCoefficientError(f"coefficient c_{i} is zero")
            if abs(c) > _COEFF_LIMIT:
                raise EquationError(f"coefficient c_{i} outside 64-bit signed range")

    @property
    def k(self) -> int:
        return len(self.coeffs)

    @property
    def coefficient_sum(self) -> int:
        return sum(self.coeffs)

    @property
    def max_abs_coeff(self) -> int:
        return max(abs(c) for c in self.coeffs)

    @property
    def abs_coeff_sum(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def canonical(self) -> str:
        """Compact serialized form, e.g. '1,1,-1'."""
        return ",".join(str(c) for c in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs, start=1):
            sign = "-" if c < 0 else ("+" if terms else "")
            mag = abs(c)
            coeff = "" if mag == 1 else str(mag)
            terms.append(f"{sign} {coeff}x{i}".strip() if terms else f"{sign}{coeff}x{i}")
        return " ".join(terms) + " = 0"


@dataclass(frozen=True)
class Classification:
    """Degeneracy verdict for an equation.

    witness is the minimum-cardinality zero-sum index subset, ties broken
    lexicographically; None exactly when the equation is non-degenerate.
    translation_invariant records whether the full coefficient sum is zero.
    """

    kind: str  # "degenerate" or "non-degenerate"
    witness: tuple[int, ...] | None
    translation_invariant: bool

    @property
    def is_degenerate(self) -> bool:
        return self.kind == "degenerate"


_TERM_RE = re.compile(r"([+-]?)\s*(\d+)?\s*\*?\s*x(\d+)\s*")
_LIST_RE = re.compile(r"^[+-]?\d+(\s*,\s*[+-]?\d+)+$")


def parse_equation(text: str) -> Equation:
    """Parse either grammar: 'x1 + x2 - x3 = 0' terms, or a bare '1,1,-1' list.

    Term grammar is term (+- term)* '= 0' where a term is an optional integer
    coefficient times a variable x<index>. Indices must cover 1..k exactly once.
    """
    s = text.strip()
    if not s:
        raise EquationSyntaxError("empty equation string")

    if _LIST_RE.match(s):
        parts = [p.strip() for p in s.split(",")]
        return Equation(tuple(int(p) for p in parts))

    body, eq_sign, rhs = s.partition("=")
    if not eq_sign:
        raise EquationSyntaxError(f"missing '= 0' and not a coefficient list: {text!r}")
    if rhs.strip() != "0":
        raise EquationSyntaxError(f"right-hand side must be 0, got {rhs.strip()!r}")

    pos = 0
    body = body.strip()
    seen: dict[int, int] = {}
    first = True
    while pos < len(body):
        m = _TERM_RE.match(body, pos)
        if not m:
            raise EquationSyntaxError(f"cannot read a term at {body[pos:]!r}")
        sign_s, mag_s, idx_s = m.groups()
        if not sign_s and not first:
            raise EquationSyntaxError(f"missing +/- between terms near {body[pos:]!r}")
        coeff = int(mag_s) if mag_s is not None else 1
        if sign_s == "-":
            coeff = -coeff
        idx = int(idx_s)
        if idx in seen:
            raise EquationSyntaxError(f"variable x{idx} appears twice")
        if idx < 1:
            raise EquationSyntaxError(f"variable index must be >= 1, got x{idx}")
        seen[idx] = coeff
        pos = m.end()
        first = False

    if not seen:
        raise EquationSyntaxError(f"no terms found in {text!r}")
    k = len(seen)
    if set(seen) != set(range(1, k + 1)):
        missing = sorted(set(range(1, k + 1)) - set(seen))
        raise EquationSyntaxError(f"variable indices must cover 1..k; missing x{missing[0]}")
    return Equation(tuple(seen[i] for i in range(1, k + 1)))


def classify(eq: Equation) -> Classification:
    """Exhaustive zero-sum subset scan over all 2^k - 1 nonempty index subsets.

    Returns the minimum-cardinality witness, lexicographically first among
    ties. Subsets of size 1 cannot sum to zero (coefficients are nonzero), so
    the scan starts at size 2.
    """
    k = eq.k
    if k > MAX_SUBSET_SEARCH_ARITY:
        raise ArityError(f"classification capped at k={MAX_SUBSET_SEARCH_ARITY}, got {k}")
    trans = eq.coefficient_sum == 0
    for size in range(2, k + 1):
        for subset in itertools.combinations(range(1, k + 1), size):
            if sum(eq.coeffs[i - 1] for i in subset) == 0:
                return Classification("degenerate", subset, trans)
    return Classification("non-degenerate", None, trans)


def reorder_for_witness(eq: Equation, witness: tuple[int, ...]) -> tuple[Equation, tuple[int, ...]]:
    """Move the witness coefficients to the front.

    Returns (reordered equation, permutation). The permutation maps new
    positions to old 1-based indices: reordered.coeffs[i] == eq.coeffs[perm[i]-1].
    Apply/undo on solution tuples via apply_permutation / invert_permutation.
    """
    k = eq.k
    sset = sorted(set(witness))
    if len(sset) != len(witness):
        raise InvalidWitness(f"witness indices repeat: {witness}")
    if not sset or sset[0] < 1 or sset[-1] > k:
        raise InvalidWitness(f"witness indices out of range 1..{k}: {witness}")
    if sum(eq.coeffs[i - 1] for i in sset) != 0:
        raise InvalidWitness(f"witness {tuple(sset)} does not sum to zero")
    rest = [i for i in range(1, k + 1) if i not in set(sset)]
    perm = tuple(sset + rest)
    reordered = Equation(tuple(eq.coeffs[i - 1] for i in perm))
    return reordered, perm


def apply_permutation(perm: tuple[int, ...], values: tuple[int, ...]) -> tuple[int, ...]:
    """Reorder an original-order tuple into reordered-equation order."""
    if len(perm) != len(values):
        raise InvalidWitness("permutation and tuple lengths differ")
    return tuple(values[i - 1] for i in perm)


def invert_permutation(perm: tuple[int, ...], values: tuple[int, ...]) -> tuple[int, ...]:
    """Map a reordered-equation solution tuple back to original variable order."""
    if len(perm) != len(values):
        raise InvalidWitness("permutation and tuple lengths differ")
    out = [0] * len(perm)
    for new_pos, old_idx in enumerate(perm):
        out[old_idx - 1] = values[new_pos]
    return tuple(out)
