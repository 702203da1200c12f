import itertools

import pytest
from hypothesis import assume, given, settings, strategies as st

from oracles import zero_sum_subsets
from solfree.equations import Equation, EquationError, apply_permutation, classify, \
    invert_permutation, parse_equation, reorder_for_witness


def test_parse_term_grammar():
    eq = parse_equation("x1 + x2 - x3 = 0")
    assert eq.coeffs == (1, 1, -1)
    assert parse_equation("2x1 - x2 + 3x3 = 0").coeffs == (2, -1, 3)
    assert parse_equation("x1+x2+x3=0").coeffs == (1, 1, 1)


def test_parse_list_grammar():
    assert parse_equation("1,1,-1").coeffs == (1, 1, -1)
    assert parse_equation(" 2 , -1 , -1 ").coeffs == (2, -1, -1)


@pytest.mark.parametrize("bad", ["", "x1 + x2 = 0", "x1 + x3 - x4 = 0",
                                 "x1 + x2 - x3 = 1", "1,1", "x1 + 0x2 - x3 = 0"])
def test_parse_rejects(bad):
    with pytest.raises(EquationError):
        parse_equation(bad)


def test_equation_str_roundtrip():
    eq = Equation((1, 2, -2, -1))
    assert str(eq) == "x1 + 2x2 - 2x3 - x4 = 0"
    assert parse_equation(str(eq)) == eq
    assert parse_equation(eq.canonical()) == eq


def test_classify_schur():
    cls = classify(parse_equation("1,1,-1"))
    assert cls.is_degenerate
    assert cls.witness == (1, 3)


def test_classify_non_degenerate():
    cls = classify(Equation((1, 1, 1)))
    assert not cls.is_degenerate
    assert cls.witness is None


def test_classify_picks_smallest_then_lex():
    # both (1,4) and (2,3) are zero-sum pairs; lex-first wins
    assert classify(Equation((1, 2, -2, -1))).witness == (1, 4)


@pytest.mark.parametrize("coeffs,expected", [
    ((1, 1, -2), (1, 2, 3)),     # only the full set sums to zero
    ((2, -1, -1), (1, 2, 3)),
    ((1, -1, 5), (1, 2)),
    ((3, 1, -3), (1, 3)),
])
def test_classify_witness_cases(coeffs, expected):
    assert classify(Equation(coeffs)).witness == expected


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(-4, 4).filter(lambda c: c != 0), min_size=3, max_size=6))
def test_classify_matches_subset_oracle(coeffs):
    cls = classify(Equation(tuple(coeffs)))
    subsets = zero_sum_subsets(coeffs)
    if subsets:
        assert cls.is_degenerate
        best = min(subsets, key=lambda s: (len(s), s))
        assert cls.witness == best
    else:
        assert not cls.is_degenerate


def test_reorder_for_witness_example():
    eq = Equation((1, 2, -2, -1))
    reordered, perm = reorder_for_witness(eq, (1, 4))
    assert reordered.coeffs == (1, -1, 2, -2)
    assert perm == (1, 4, 2, 3)
    assert sum(reordered.coeffs[:2]) == 0


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_reorder_permutation_contract(data):
    k = data.draw(st.integers(3, 6))
    coeffs = tuple(data.draw(st.integers(-5, 5).filter(lambda c: c != 0))
                   for _ in range(k))
    candidates = zero_sum_subsets(coeffs)
    assume(candidates)
    subset = data.draw(st.sampled_from(candidates))
    size = len(subset)
    reordered, perm = reorder_for_witness(Equation(coeffs), subset)
    assert sorted(perm) == list(range(1, k + 1))
    for i in range(k):
        assert reordered.coeffs[i] == coeffs[perm[i] - 1]
    # subset coefficients occupy the prefix, in their original order
    assert [coeffs[s - 1] for s in subset] == list(reordered.coeffs[:size])
    entries = tuple(range(10, 10 + k))
    assert invert_permutation(perm, apply_permutation(perm, entries)) == entries


def test_zero_coefficient_rejected():
    with pytest.raises(EquationError):
        Equation((1, 0, -1))


def test_small_arity_rejected():
    with pytest.raises(EquationError):
        Equation((1, -1))


def test_degenerate_enumeration_small():
    # every coefficient vector over {-2,-1,1,2}^3: classifier vs oracle
    for coeffs in itertools.product((-2, -1, 1, 2), repeat=3):
        verdict = classify(Equation(coeffs)).is_degenerate
        assert verdict == bool(zero_sum_subsets(coeffs))
