import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import count_solutions
from solfree.cayley import PrimeField
from solfree.equations import Equation
from solfree.solutions import SolutionError, SolutionTuple, count_solutions_all, \
    count_solutions_distinct, extract_disjoint_solutions, find_any_solution, \
    find_distinct_solution

F7 = PrimeField(7)
SCHUR = Equation((1, 1, -1))


def test_schur_counts_full_field():
    members = list(range(7))
    assert count_solutions_all(members, SCHUR, F7) == 49
    # x + x = 2x pairs with distinct entries removed: 49 - (7 with x=y) ... by oracle
    assert count_solutions_distinct(members, SCHUR, F7) == \
        count_solutions(members, (1, 1, -1), 7, distinct=True)


def test_zero_singleton():
    assert count_solutions_all([0], SCHUR, F7) == 1
    assert count_solutions_distinct([0], SCHUR, F7) == 0


def test_small_set_distinct_count():
    # distinct: 1+2=3 and 2+1=3; the third solution 1+1=2 repeats an entry
    assert count_solutions_distinct([1, 2, 3], SCHUR, F7) == 2
    assert count_solutions_all([1, 2, 3], SCHUR, F7) == 3


@pytest.mark.parametrize("method", ["fft", "exact", "auto"])
def test_counting_methods_agree(method):
    members = [1, 2, 4, 5, 10, 17]
    eq = Equation((2, -1, -1))
    p = 19
    field = PrimeField(p)
    want = count_solutions(members, (2, -1, -1), p, distinct=False)
    assert count_solutions_all(members, eq, field, method=method) == want


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_counts_match_naive(data):
    p = data.draw(st.sampled_from([5, 7, 11, 13]))
    field = PrimeField(p)
    coeffs = tuple(data.draw(st.lists(
        st.integers(-3, 3).filter(lambda c: c != 0), min_size=3, max_size=4)))
    members = sorted(data.draw(st.sets(st.integers(0, p - 1), max_size=p)))
    eq = Equation(coeffs)
    assert count_solutions_all(members, eq, field) == \
        count_solutions(members, coeffs, p, distinct=False)
    assert count_solutions_distinct(members, eq, field) == \
        count_solutions(members, coeffs, p, distinct=True)


def test_find_distinct_solution_found():
    sol = find_distinct_solution([1, 2, 3], SCHUR, F7)
    assert sol is not None
    assert sol.distinct
    assert sol.verify(SCHUR, F7)
    assert set(sol.entries) <= {1, 2, 3}


def test_find_distinct_solution_absent():
    # {0,1,2} mod 5 has no distinct-entry Schur solution
    assert find_distinct_solution([0, 1, 2], SCHUR, PrimeField(5)) is None


def test_find_any_allows_repeats():
    # 3 + 3 = 6 is the only Schur solution in {3, 6} mod 7
    assert find_distinct_solution([3, 6], SCHUR, F7) is None
    sol = find_any_solution([3, 6], SCHUR, F7, require_distinct=False)
    assert sol is not None and sol.entries == (3, 3, 6)


def test_extract_disjoint_pairs():
    sols = extract_disjoint_solutions([2, 4, 9], (1, -1), PrimeField(11), quota=2)
    assert len(sols) == 2
    assert all(s.entries[0] == s.entries[1] for s in sols)


def test_extract_disjoint_triples():
    field = PrimeField(101)
    members = list(range(1, 60))
    sols = extract_disjoint_solutions(members, (1, 1, -2), field, quota=5)
    assert len(sols) == 5
    seen = set()
    for s in sols:
        assert s.verify((1, 1, -2), field)
        assert not set(s.entries) & seen
        seen |= set(s.entries)


def test_extract_requires_zero_sum():
    with pytest.raises(SolutionError):
        extract_disjoint_solutions([1, 2], (1, 1, 1), F7, quota=1)


def test_solution_tuple_verify_rejects_bad():
    assert not SolutionTuple((1, 1, 2), True).verify(SCHUR, F7)   # repeats
    assert not SolutionTuple((1, 2, 4), True).verify(SCHUR, F7)   # 1+2 != 4 ok... 3 != 4
    assert SolutionTuple((1, 2, 3), True).verify(SCHUR, F7)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_extractor_respects_quota_and_disjointness(seed):
    rng = random.Random(seed)
    p = rng.choice([31, 61, 101])
    field = PrimeField(p)
    members = rng.sample(range(p), rng.randint(5, p // 2))
    quota = rng.randint(1, 6)
    sols = extract_disjoint_solutions(members, (1, 1, -2), field, quota)
    assert len(sols) <= quota
    seen = set()
    for s in sols:
        assert s.verify((1, 1, -2), field)
        assert set(s.entries) <= set(m % p for m in members)
        assert not set(s.entries) & seen
        seen |= set(s.entries)
