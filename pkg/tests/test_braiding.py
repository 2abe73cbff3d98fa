import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from tubecat.category import (
    FusionCategory,
    QParams,
    build_fibonacci,
    build_su2k_category,
)
from tubecat.braiding import (
    BraidingError,
    BraidSolution,
    branch_with_twist,
    doubled_spins,
    hexagon_residual,
    modular_s_matrix,
    parse_r,
    reduce_spin,
    ribbon_residual,
    serialize_r,
    solve_hexagon,
    topological_twists,
)

PHI = (1 + math.sqrt(5)) / 2
PHI_C = (1 - math.sqrt(5)) / 2


# closed-form braidings, confirmed below by direct evaluation of the
# hexagon identities (independent of the Newton solver)
FIB_BRAIDINGS = [
    {(1, 1, 0): cmath.exp(-4j * cmath.pi / 5), (1, 1, 1): cmath.exp(3j * cmath.pi / 5)},
    {(1, 1, 0): cmath.exp(4j * cmath.pi / 5), (1, 1, 1): cmath.exp(-3j * cmath.pi / 5)},
]
YL_BRAIDINGS = [
    {(1, 1, 0): cmath.exp(2j * cmath.pi / 5), (1, 1, 1): cmath.exp(1j * cmath.pi / 5)},
    {(1, 1, 0): cmath.exp(-2j * cmath.pi / 5), (1, 1, 1): cmath.exp(-1j * cmath.pi / 5)},
]


@pytest.mark.parametrize("variant,closed", [("unitary", FIB_BRAIDINGS),
                                            ("galois", YL_BRAIDINGS)])
def test_closed_form_braidings_satisfy_hexagon(variant, closed):
    cat = build_fibonacci(variant)
    for vals in closed:
        rep = hexagon_residual(cat, BraidSolution(values=vals, residual=0.0))
        assert rep.max_residual < 1e-10


@pytest.mark.parametrize("variant,closed", [("unitary", FIB_BRAIDINGS),
                                            ("galois", YL_BRAIDINGS)])
def test_solver_finds_conjugate_pair(variant, closed):
    cat = build_fibonacci(variant)
    sols = solve_hexagon(cat)
    assert len(sols) == 2
    for sol in sols:
        assert sol.residual <= 1e-10
        assert any(all(abs(sol.values[k] - vals[k]) < 1e-8 for k in vals)
                   for vals in closed)


def test_k1_braidings():
    cat = build_su2k_category(QParams(1, 1))
    sols = solve_hexagon(cat)
    assert len(sols) >= 2
    vals = [sol.values[(1, 1, 0)] for sol in sols]
    assert any(abs(v - 1j) < 1e-8 for v in vals)
    assert any(abs(v + 1j) < 1e-8 for v in vals)


@pytest.mark.parametrize("variant", ["unitary", "galois"])
def test_hexagon_residual_reverified(variant):
    cat = build_fibonacci(variant)
    for sol in solve_hexagon(cat):
        assert hexagon_residual(cat, sol).max_residual <= 1e-10
        assert ribbon_residual(cat, sol) <= 1e-10


@pytest.mark.parametrize("variant", ["unitary", "galois"])
def test_solution_set_conjugation_closed(variant):
    cat = build_fibonacci(variant)
    sols = solve_hexagon(cat)
    for sol in sols:
        conj = {k: v.conjugate() for k, v in sol.values.items()}
        assert any(all(abs(other.values[k] - conj[k]) < 1e-8 for k in conj)
                   for other in sols)


def test_twists_unitary():
    cat = build_fibonacci("unitary")
    sols = solve_hexagon(cat)
    hs = sorted(topological_twists(cat, s).h[1] for s in sols)
    assert hs == pytest.approx([-0.4, 0.4], abs=1e-10)
    sol = branch_with_twist(cat, sols, 1, 0.4)
    t = topological_twists(cat, sol)
    assert t.h[0] == 0.0
    assert abs(t.theta[1] - cmath.exp(2j * cmath.pi * 0.4)) < 1e-10


def test_twists_galois():
    cat = build_fibonacci("galois")
    sols = solve_hexagon(cat)
    hs = sorted(topological_twists(cat, s).h[1] for s in sols)
    assert hs == pytest.approx([-0.2, 0.2], abs=1e-10)


def test_doubled_spins_galois_exact():
    cat = build_fibonacci("galois")
    sol = branch_with_twist(cat, solve_hexagon(cat), 1, -0.2)
    ds = doubled_spins(topological_twists(cat, sol))
    # rationalize with denominator 5 after checking the 1e-8 window
    target = {(0, 0): Fraction(0), (1, 0): Fraction(-1, 5),
              (0, 1): Fraction(1, 5), (1, 1): Fraction(0)}
    for key, want in target.items():
        assert abs(ds[key] - float(want)) < 1e-8
        assert Fraction(round(ds[key] * 5), 5) == want


def test_doubled_spins_unitary():
    cat = build_fibonacci("unitary")
    sol = branch_with_twist(cat, solve_hexagon(cat), 1, 0.4)
    ds = doubled_spins(topological_twists(cat, sol))
    assert ds[(1, 0)] == pytest.approx(0.4, abs=1e-10)
    assert ds[(0, 0)] == 0.0


@pytest.mark.parametrize("variant,phi", [("unitary", PHI), ("galois", PHI_C)])
def test_s_matrix(variant, phi):
    cat = build_fibonacci(variant)
    sols = solve_hexagon(cat)
    S = modular_s_matrix(cat, sols[0]).matrix
    # proportional to [[1, phi], [phi, -1]]
    ref = np.array([[1, phi], [phi, -1]], dtype=complex)
    ratio = S[0, 0] / ref[0, 0]
    assert np.allclose(S, ratio * ref, atol=1e-10)
    assert np.allclose(S, S.T, atol=1e-12)
    assert abs(np.linalg.det(S)) > 1e-6


def test_s_matrix_k1():
    cat = build_su2k_category(QParams(1, 1))
    S = modular_s_matrix(cat, solve_hexagon(cat)[0]).matrix
    assert S.shape == (2, 2)
    assert abs(np.linalg.det(S)) > 1e-6


def test_reduce_spin_window():
    assert reduce_spin(0.5) == 0.5
    assert reduce_spin(-0.5) == 0.5
    assert reduce_spin(1.2) == pytest.approx(0.2)
    assert reduce_spin(-0.7) == pytest.approx(0.3)


def test_unbraidable_input_raises():
    cat = build_fibonacci("galois")
    bad_f = dict(cat.F)
    bad_f[(1, 1, 1, 1, 0, 0)] *= 1.01  # breaks pentagon, hence hexagon
    cat_bad = FusionCategory(cat.labels, cat.N, bad_f, cat.dims, cat.provenance)
    with pytest.raises(BraidingError):
        solve_hexagon(cat_bad, seeds_per_unknown=6)


def test_r_serialization_roundtrip():
    cat = build_fibonacci("galois")
    sol = solve_hexagon(cat)[0]
    back = parse_r(serialize_r(sol))
    assert back.values == sol.values
