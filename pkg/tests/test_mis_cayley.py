import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_alpha, cayley_adj_masks
from solfree.cayley import AlphaResult, BudgetExhausted, EmptyGenerators, NotAClique, \
    NotPrime, PrimeField, ZeroGenerator, alpha_exact, alpha_upper_from_clique, \
    alpha_upper_ratio, build_cayley, clique_lower, greedy_independent, \
    induce_interval, is_prime, next_prime
from solfree.mis import caro_wei_bound, clique_cover_bound, greedy_independent_mask, \
    max_independent_set


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}
    for n in range(-2, 32):
        assert is_prime(n) == (n in primes)


def test_is_prime_large():
    assert is_prime(100003)
    assert not is_prime(100001)  # 11 * 9091
    assert is_prime(2063)
    assert not is_prime(2**16 + 1) or (2**16 + 1 == 65537)


def test_next_prime():
    assert next_prime(100000) == 100003
    assert next_prime(2) == 3
    assert next_prime(8) == 11


def test_prime_field_rejects_composite():
    with pytest.raises(NotPrime):
        PrimeField(9)


def test_cycle_alpha():
    g = build_cayley(PrimeField(7), [1])
    assert alpha_exact(g).value == 3


def test_complete_graph_alpha():
    g = build_cayley(PrimeField(5), [1, 2])
    assert alpha_exact(g).value == 1


def test_two_generator_alpha():
    g = build_cayley(PrimeField(13), [1, 5])
    res = alpha_exact(g)
    assert res.value == 4
    assert res.exact


def test_empty_generators_rejected():
    with pytest.raises(EmptyGenerators):
        build_cayley(PrimeField(7), [])
    with pytest.raises(ZeroGenerator):
        build_cayley(PrimeField(7), [0, 7])  # collapses to 0 mod 7


def test_induced_interval_alpha():
    g = build_cayley(PrimeField(101), [1, 5])
    sub = induce_interval(g, 33, 44)
    assert sub.n == 12
    assert alpha_exact(sub).value == 6


def test_ratio_bound_c7():
    g = build_cayley(PrimeField(7), [1])
    ratio = alpha_upper_ratio(g)
    assert 3 <= ratio < 3.4


def test_clique_certificate():
    field = PrimeField(13)
    g = build_cayley(field, [1, 2])
    clique = clique_lower(g, seed=(0, 1, 2))
    assert len(clique) >= 3
    assert alpha_upper_from_clique(g, clique) <= 13 / 3
    with pytest.raises(NotAClique):
        clique_lower(g, seed=(0, 6))


def test_clique_lower_no_extend():
    g = build_cayley(PrimeField(13), [1, 2])
    assert clique_lower(g, seed=(0, 1), extend=False) == (0, 1)


def test_greedy_is_independent():
    g = build_cayley(PrimeField(31), [1, 3, 7])
    ind = greedy_independent(g)
    for i, u in enumerate(ind):
        for v in ind[i + 1:]:
            assert not g.adjacent(u, v)


def test_alpha_budget_interval():
    g = build_cayley(PrimeField(101), [1, 5, 22])
    res = alpha_exact(g, max_nodes=15, on_budget="interval")
    assert res.method == "budget-interval"
    assert res.lower <= res.upper
    true = alpha_exact(g)
    assert true.value == 38
    assert res.lower <= true.value <= res.upper
    with pytest.raises(BudgetExhausted):
        alpha_exact(g, max_nodes=15, on_budget="raise")


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_alpha_matches_brute_force(data):
    p = data.draw(st.sampled_from([5, 7, 11, 13]))
    gens = data.draw(st.sets(st.integers(1, p - 1), min_size=1, max_size=p - 1))
    g = build_cayley(PrimeField(p), sorted(gens))
    expected = brute_alpha(cayley_adj_masks(p, gens))
    res = alpha_exact(g)
    assert res.value == expected
    assert len(greedy_independent(g)) <= expected
    assert alpha_upper_ratio(g) >= expected - 1e-9


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_mis_on_random_graphs(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 14)
    masks = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.4:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
    res = max_independent_set(masks)
    assert res.size == brute_alpha(masks)
    # witness independence and size agreement
    assert res.witness.bit_count() == res.size
    for u in range(n):
        if (res.witness >> u) & 1:
            assert masks[u] & res.witness == 0
    # bounds sandwich the optimum
    assert greedy_independent_mask(masks).bit_count() <= res.size
    assert caro_wei_bound(masks, (1 << n) - 1) <= res.size + 1e-9
    assert clique_cover_bound(masks, (1 << n) - 1) >= res.size


def test_alpha_result_value_requires_exact():
    res = AlphaResult(3, 5, "budget-interval", (0,))
    assert not res.exact
    with pytest.raises(ValueError):
        _ = res.value


def test_neighbor_structure():
    g = build_cayley(PrimeField(11), [2, 3])
    assert set(g.undirected_neighbors(0)) == {2, 3, 8, 9}
    assert g.adjacent(4, 6) and g.adjacent(6, 4)
    assert not g.adjacent(0, 5)


def test_greedy_independent_beyond_mask_cap():
    # p above the dense-mask cap must still yield a verified greedy set
    g = build_cayley(PrimeField(100003), [1, 5, 20])
    w = greedy_independent(g)
    assert len(w) >= g.p / (g.degree + 1)
    wset = set(w)
    assert len(wset) == len(w)
    for v in w:
        for s in g.symmetric_gens:
            assert (v + s) % g.p not in wset


def test_sparse_greedy_bounded_by_exact_alpha():
    # at a small p the sparse sweep is independent and cannot beat the optimum
    from solfree.cayley import _greedy_independent_sparse

    g = build_cayley(PrimeField(101), [1, 5, 22])
    w = _greedy_independent_sparse(g)
    wset = set(w)
    for v in w:
        for s in g.symmetric_gens:
            assert (v + s) % g.p not in wset
    assert g.p / (g.degree + 1) <= len(w) <= alpha_exact(g).value


def test_certified_interval_beyond_mask_cap():
    g = build_cayley(PrimeField(100003), [1, 5, 20])
    res = alpha_exact(g, on_budget="interval")
    assert res.method.startswith("interval(")
    assert res.lower > 1  # a real greedy bound, not the trivial placeholder
    assert res.lower <= res.upper <= g.p
    assert len(res.witness) == res.lower
