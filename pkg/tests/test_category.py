import json
import math

import numpy as np
import pytest

from tubecat.category import (
    CategoryError,
    FusionCategory,
    QParams,
    build_fibonacci,
    build_su2k_category,
    build_trivial,
    category_from_json,
    category_to_json,
    dimension_homomorphism_residual,
    fusion_product,
    integer_subcategory,
    quantum_dimension,
    verify_involution,
    verify_pentagon,
)

PHI = (1 + math.sqrt(5)) / 2
PHI_C = (1 - math.sqrt(5)) / 2

ALL_KP = [(1, 1), (2, 1), (3, 1), (3, 2), (4, 1), (5, 1), (5, 2), (5, 3), (6, 1), (6, 3)]


def test_allowed_roots():
    assert QParams.allowed_roots(3) == [1, 2]
    assert QParams.allowed_roots(4) == [1]
    assert QParams.allowed_roots(5) == [1, 2, 3]
    assert QParams.allowed_roots(6) == [1, 3]


@pytest.mark.parametrize("k,p", [(3, 5), (3, 0), (4, 2), (-1, 1)])
def test_invalid_qparams_rejected(k, p):
    with pytest.raises(CategoryError):
        QParams(k, p)


def test_k1_trivial_f_entries():
    cat = build_su2k_category(QParams(1, 1))
    assert cat.labels == ("0", "1/2")
    assert fusion_product(cat, 1, 1) == {0}
    # all blocks are 1x1; unit moves are 1 and the single nontrivial entry
    # carries the Frobenius-Schur sign of the half-integer label
    assert all(abs(abs(v) - 1.0) < 1e-14 for v in cat.F.values())
    for key, val in cat.F.items():
        if 0 in key[:3]:
            assert val == 1.0
    assert cat.f(1, 1, 1, 1, 0, 0) == pytest.approx(-1.0)


def test_fibonacci_f_values():
    uni = build_fibonacci("unitary")
    assert uni.f(1, 1, 1, 1, 0, 0) == pytest.approx(1 / PHI)
    assert uni.f(0, 1, 1, 0, 1, 0) == 1.0
    gal = build_fibonacci("galois")
    assert gal.f(1, 1, 1, 1, 1, 1) == pytest.approx(-1 / PHI_C)  # ~ +1.618
    assert gal.f(1, 1, 1, 1, 0, 0) == pytest.approx(1 / PHI_C)


def test_quantum_dimensions():
    assert quantum_dimension(build_fibonacci("unitary"), "tau") == pytest.approx(PHI)
    assert quantum_dimension(build_fibonacci("galois"), "tau") == pytest.approx(PHI_C)
    cat = build_su2k_category(QParams(5, 2))
    assert quantum_dimension(cat, 0) == 1.0


@pytest.mark.parametrize("variant", ["unitary", "galois"])
def test_fibonacci_consistency(variant):
    cat = build_fibonacci(variant)
    assert verify_pentagon(cat, 1e-12).passed
    assert verify_involution(cat, 1e-12).passed


@pytest.mark.parametrize("k,p", ALL_KP)
def test_su2k_pentagon_involution(k, p):
    cat = build_su2k_category(QParams(k, p))
    rep_p = verify_pentagon(cat, 1e-10)
    rep_i = verify_involution(cat, 1e-10)
    assert rep_p.passed, str(rep_p)
    assert rep_i.passed, str(rep_i)


@pytest.mark.parametrize("k,p", ALL_KP)
def test_dimension_homomorphism(k, p):
    cat = build_su2k_category(QParams(k, p))
    assert dimension_homomorphism_residual(cat) < 1e-10
    # stored dims agree with the F-derived definition
    for a in range(cat.num_labels):
        assert quantum_dimension(cat, a) == pytest.approx(complex(cat.dims[a]), abs=1e-12)


@pytest.mark.parametrize("k,p", ALL_KP)
def test_unit_moves_exactly_one(k, p):
    cat = build_su2k_category(QParams(k, p))
    for (a, b, c, d, e, f), val in cat.F.items():
        if 0 in (a, b, c):
            assert val == 1.0 + 0.0j


def test_fusion_rules_su23():
    cat = build_su2k_category(QParams(3, 1))
    # 1/2 x 1 = 1/2 + 3/2 (indices in twice-spin units)
    assert fusion_product(cat, "1/2", "1") == {1, 3}
    # truncation: 3/2 x 3/2 = 0 only
    assert fusion_product(cat, "3/2", "3/2") == {0}
    with pytest.raises(CategoryError):
        fusion_product(cat, "2", "1")


@pytest.mark.parametrize("k,p", ALL_KP)
def test_fusion_commutative_and_self_dual(k, p):
    cat = build_su2k_category(QParams(k, p))
    n = cat.num_labels
    for a in range(n):
        assert fusion_product(cat, 0, a) == {a}
        assert 0 in fusion_product(cat, a, a)
        for b in range(n):
            assert fusion_product(cat, a, b) == fusion_product(cat, b, a)


def test_pentagon_detects_perturbation():
    cat = build_fibonacci("galois")
    bad = dict(cat.F)
    bad[(1, 1, 1, 1, 0, 0)] += 1e-3
    cat_bad = FusionCategory(cat.labels, cat.N, bad, cat.dims, cat.provenance)
    rep = verify_pentagon(cat_bad, 1e-12)
    assert not rep.passed
    assert rep.max_residual >= 1e-4


@pytest.mark.parametrize("p,variant", [(1, "unitary"), (2, "galois")])
def test_integer_restriction_matches_fibonacci(p, variant):
    sub = integer_subcategory(build_su2k_category(QParams(3, p)))
    fib = build_fibonacci(variant)
    assert sub.labels == fib.labels
    assert set(sub.F) == set(fib.F)
    for key in fib.F:
        assert sub.F[key] == fib.F[key]  # bit-for-bit


def test_integer_restriction_other_levels():
    sub = integer_subcategory(build_su2k_category(QParams(5, 2)))
    assert sub.labels == ("0", "1", "2")
    assert verify_pentagon(sub, 1e-10).passed
    assert verify_involution(sub, 1e-10).passed


def test_trivial_category():
    cat = build_trivial()
    assert cat.num_labels == 1
    assert verify_pentagon(cat).passed


def test_non_self_dual_rejected():
    # Z_3-like fusion: 1 x 1 = 2, 1 x 2 = 0 -> 1 is not self-dual
    N = np.zeros((3, 3, 3), dtype=np.int8)
    for a in range(3):
        for b in range(3):
            N[a, b, (a + b) % 3] = 1
    with pytest.raises(CategoryError):
        FusionCategory(("0", "1", "2"), N, {}, np.ones(3), {})


def test_json_roundtrip_bit_exact():
    cat = build_fibonacci("galois")
    text = category_to_json(cat)
    cat2 = category_from_json(text)
    assert cat2.labels == cat.labels
    assert cat2.F == cat.F
    assert np.array_equal(cat2.dims, cat.dims)
    assert category_to_json(cat2) == text
    doc = json.loads(text)
    assert set(doc) == {"labels", "fusion", "F", "provenance"}


def test_json_roundtrip_su2k():
    cat = build_su2k_category(QParams(5, 3))
    cat2 = category_from_json(category_to_json(cat))
    assert cat2.F == cat.F
