import random

import pytest
from hypothesis import given, settings, strategies as st

from solfree.rainbow import BudgetExceeded, ColoredDigraph, ImproperColoring, \
    ListBoundExceeded, LoopArc, MismatchedVertexSets, OverlappingLists, \
    RainbowError, RainbowPath, RestrictedSystem, UnknownVertex, \
    find_rainbow_exhaustive, find_rainbow_greedy, load_instance, save_instance, \
    verify_rainbow


def two_step_system():
    verts = [0, 1, 2, 3, 4]
    d1 = ColoredDigraph(verts, [(0, 1, 5), (1, 2, 6), (2, 3, 5), (0, 4, 9), (1, 3, 4)])
    d2 = ColoredDigraph(verts, [(1, 2, 8), (2, 3, 9), (0, 3, 8), (1, 4, 5)])
    return RestrictedSystem([d1, d2], f={0: [9], 3: [4]}, ell=1)


def test_digraph_rejects_loops():
    with pytest.raises(LoopArc):
        ColoredDigraph([0, 1], [(0, 0, 1)])


def test_digraph_rejects_improper_coloring():
    with pytest.raises(ImproperColoring):
        ColoredDigraph([0, 1, 2], [(0, 1, 7), (0, 2, 7)])  # repeated out-color
    with pytest.raises(ImproperColoring):
        ColoredDigraph([0, 1, 2], [(0, 2, 7), (1, 2, 7)])  # repeated in-color


def test_digraph_rejects_unknown_vertices():
    with pytest.raises(UnknownVertex):
        ColoredDigraph([0, 1], [(0, 5, 1)])


def test_system_rejects_mismatched_vertices():
    d1 = ColoredDigraph([0, 1], [(0, 1, 1)])
    d2 = ColoredDigraph([0, 2], [(0, 2, 1)])
    with pytest.raises(MismatchedVertexSets):
        RestrictedSystem([d1, d2])


def test_system_rejects_overlapping_lists():
    d = ColoredDigraph([0, 1], [(0, 1, 1)])
    with pytest.raises(OverlappingLists):
        RestrictedSystem([d], f={0: [3], 1: [3]})


def test_system_rejects_oversized_lists():
    d = ColoredDigraph([0, 1], [(0, 1, 1)])
    with pytest.raises(ListBoundExceeded):
        RestrictedSystem([d], f={0: [3, 4]}, ell=1)


def test_path_shape_validated():
    with pytest.raises(RainbowError):
        RainbowPath((0, 1), (5, 6))


def test_verify_accepts_good_path():
    ok, tag = verify_rainbow(two_step_system(), RainbowPath((0, 1, 2), (5, 8)))
    assert ok and tag is None


def test_verify_failure_tags():
    sys = two_step_system()
    assert verify_rainbow(sys, RainbowPath((0, 1, 0), (5, 8)))[1] == "vertices-repeat"
    assert verify_rainbow(sys, RainbowPath((0, 1, 9), (5, 8)))[1] == "unknown-vertex"
    assert verify_rainbow(sys, RainbowPath((0, 2, 3), (5, 9)))[1] == "A1:step-1"
    assert verify_rainbow(sys, RainbowPath((0, 1, 4), (5, 5)))[1] == "A2"
    assert verify_rainbow(sys, RainbowPath((0, 4), (9,)))[1] == "A3:start"
    assert verify_rainbow(sys, RainbowPath((1, 3), (4,)))[1] == "A3:end"
    with pytest.raises(RainbowError):
        verify_rainbow(sys, RainbowPath((0, 1, 2, 3), (5, 8, 9)))


def test_greedy_finds_hand_path():
    sys = two_step_system()
    path = find_rainbow_greedy(sys, 2)
    assert path is not None
    ok, tag = verify_rainbow(sys, path)
    assert ok, tag


def test_exhaustive_budget_guard():
    sys = two_step_system()
    with pytest.raises(BudgetExceeded):
        find_rainbow_exhaustive(sys, 2, max_vertices=3)
    with pytest.raises(BudgetExceeded):
        find_rainbow_exhaustive(sys, 2, max_length=1)


def test_exhaustive_none_when_blocked():
    # single arc whose color is forbidden at its tail: no rainbow path
    d = ColoredDigraph([0, 1], [(0, 1, 7)])
    sys = RestrictedSystem([d], f={0: [7]}, ell=1)
    assert find_rainbow_exhaustive(sys, 1) is None
    assert find_rainbow_greedy(sys, 1) is None


def test_instance_roundtrip():
    sys = two_step_system()
    text = save_instance(sys)
    back = load_instance(text)
    assert back.vertices == sys.vertices
    assert back.ell == sys.ell
    assert back.f == sys.f
    assert len(back.digraphs) == len(sys.digraphs)
    for a, b in zip(back.digraphs, sys.digraphs):
        assert a.arcs == b.arcs
    path = RainbowPath((0, 1, 2), (5, 8))
    assert verify_rainbow(back, path) == (True, None)


def random_system(rng, n, k):
    verts = list(range(n))
    digraphs = []
    color = 0
    for _ in range(k):
        arcs = []
        for u in verts:
            for v in verts:
                if u != v and rng.random() < 0.5:
                    arcs.append((u, v, color))
                    color += 1
        digraphs.append(ColoredDigraph(verts, arcs))
    f = {}
    if rng.random() < 0.5 and color:
        v = rng.choice(verts)
        f[v] = [rng.randrange(color)]
    return RestrictedSystem(digraphs, f=f or None, ell=1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_greedy_sound_and_dominated_by_exhaustive(seed):
    rng = random.Random(seed)
    sys = random_system(rng, rng.randint(3, 8), rng.randint(1, 3))
    length = rng.randint(1, sys.k)
    greedy = find_rainbow_greedy(sys, length)
    full = find_rainbow_exhaustive(sys, length)
    if greedy is not None:
        assert verify_rainbow(sys, greedy) == (True, None)
        assert full is not None
    if full is not None:
        assert verify_rainbow(sys, full) == (True, None)
        assert full.length == length
