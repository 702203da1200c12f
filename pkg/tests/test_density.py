import csv

import pytest

from oracles import alpha_of_set, brute_density, count_solutions
from solfree.cayley import PrimeField
from solfree.density import CSV_HEADER, CapExceeded, DensityError, NoFeasiblePoint, \
    density_curve, exact_D, heuristic_D, write_density_csv
from solfree.equations import Equation

SCHUR = Equation((1, 1, -1))
F5 = PrimeField(5)


def assert_valid_witness(point, coeffs, p, eps):
    members = list(point.witness)
    assert len(members) == point.value
    assert count_solutions(members, coeffs, p, distinct=True) == 0
    if point.kind == "exact":
        assert alpha_of_set(p, members) <= eps * p + 1e-9


def test_exact_schur_p5_full_eps():
    point = exact_D(SCHUR, F5, 1.0)
    assert point.value == 3
    assert_valid_witness(point, (1, 1, -1), 5, 1.0)


def test_eps_zero_convention():
    point = exact_D(SCHUR, F5, 0.0)
    assert point.value == 0
    assert point.witness == ()
    assert point.alpha_method == "none-feasible"
    point = heuristic_D(SCHUR, F5, 0.0)
    assert point.value == 0
    with pytest.raises(NoFeasiblePoint):
        heuristic_D(SCHUR, F5, 0.0, allow_empty=False)


@pytest.mark.parametrize("p", [5, 7, 11])
@pytest.mark.parametrize("coeffs", [(1, 1, -1), (1, 1, 1)])
def test_exact_matches_brute_force(p, coeffs):
    field = PrimeField(p)
    eq = Equation(coeffs)
    for eps in (0.2, 0.4, 0.6, 0.8, 1.0):
        point = exact_D(eq, field, eps)
        assert point.value == brute_density(coeffs, p, eps), (p, coeffs, eps)
        assert_valid_witness(point, coeffs, p, eps)


def test_exact_cap_enforced():
    with pytest.raises(CapExceeded):
        exact_D(SCHUR, PrimeField(29), 0.5)


def test_heuristic_never_beats_exact():
    field = PrimeField(13)
    for eps in (0.3, 0.5, 1.0):
        exact = exact_D(SCHUR, field, eps)
        heur = heuristic_D(SCHUR, field, eps, budget=4000, seed=1)
        assert heur.value <= exact.value
        assert heur.kind == "heuristic"
        assert count_solutions(list(heur.witness), (1, 1, -1), 13,
                               distinct=True) == 0


def test_heuristic_keeps_seed_floor():
    field = PrimeField(13)
    seed_set = (1, 5)
    point = heuristic_D(SCHUR, field, 0.9, budget=500, seed=3, seed_set=seed_set)
    assert point.value >= len(seed_set)


def test_heuristic_rejects_bad_seed_set():
    with pytest.raises(DensityError):
        heuristic_D(SCHUR, PrimeField(13), 0.9, seed_set=(1, 2, 3))  # 1+2=3


def test_heuristic_deterministic():
    field = PrimeField(17)
    a = heuristic_D(SCHUR, field, 0.8, budget=3000, seed=42)
    b = heuristic_D(SCHUR, field, 0.8, budget=3000, seed=42)
    assert (a.value, a.witness) == (b.value, b.witness)


def test_curve_monotone_and_rows():
    curve = density_curve(SCHUR, [5, 7], [0.2, 0.6, 1.0], "exact")
    assert curve.ok
    assert curve.monotone_by_p == {5: True, 7: True}
    rows = curve.rows()
    assert len(rows) == 6
    assert [r.p for r in rows] == [5, 5, 5, 7, 7, 7]
    values = [r.value for r in rows[:3]]
    assert values == sorted(values)


def test_curve_collects_failures():
    curve = density_curve(SCHUR, [5, 29], [0.5], "exact")
    assert not curve.ok
    assert len(curve.failures) == 1
    assert curve.failures[0].p == 29
    assert "CapExceeded" in curve.failures[0].error


def test_csv_output_deterministic(tmp_path):
    curve = density_curve(SCHUR, [11, 13], [0.4, 0.8], "heuristic", seed=7,
                          budget=2000)
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    write_density_csv(curve, str(out1))
    write_density_csv(curve, str(out2))
    assert out1.read_bytes() == out2.read_bytes()
    with open(out1, newline="") as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == 5
    for row in rows[1:]:
        assert row[4] == "heuristic"
        members = [int(x) for x in row[6].split(";")] if row[6] else []
        assert len(members) == int(row[3])


def test_exclude_zero_shrinks_pool():
    with_zero = exact_D(Equation((1, 1, 1)), PrimeField(7), 1.0)
    without = exact_D(Equation((1, 1, 1)), PrimeField(7), 1.0, exclude_zero=True)
    assert 0 not in without.witness
    assert without.value <= with_zero.value
