"""Tests for the closed-form theta pullback classes and the vanishing ledger."""

import random
from fractions import Fraction
from itertools import permutations

import pytest

from thetadiv.basis import (
    DELTA_IRR,
    LAMBDA1,
    DivisorClass,
    K,
    canonicalize_boundary,
    delta,
    enumerate_boundary,
    relabel_class,
)
from thetadiv.curves import (
    ELLIPTIC_TAIL,
    IRREDUCIBLE_NODE,
    boundary_curve,
    enumerate_test_curves,
    pair,
    point_curve,
)
from thetadiv.theta import (
    UNAVAILABLE,
    class_D_direct,
    class_D_from_theta,
    class_T,
    class_Theta,
    correction_ledger,
    theta_intersection,
    weight_sum,
)


def bgen(g, n, h, P):
    return delta(canonicalize_boundary(h, P, g, n))


def random_weights(rng, n, degree):
    head = [rng.randint(-10, 10) for _ in range(n - 1)]
    return tuple(head + [degree - sum(head)])


def random_negative_weights(rng, n, degree):
    while True:
        d = random_weights(rng, n, degree)
        if any(w < 0 for w in d):
            return d


def test_class_T_zero_weights():
    assert class_T(3, 2, (0, 0)) == DivisorClass.zero(3, 2)
    assert class_T(3, 1, (0,)) == DivisorClass.zero(3, 1)


def test_class_T_frozen_example():
    expected = DivisorClass(
        3,
        2,
        {
            K(1): Fraction(1, 2),
            K(2): Fraction(1, 2),
            bgen(3, 2, 0, (1, 2)): Fraction(1),
            bgen(3, 2, 1, (1,)): Fraction(-1, 2),
            bgen(3, 2, 1, (2,)): Fraction(-1, 2),
        },
    )
    assert class_T(3, 2, (1, -1)) == expected


def test_class_T_no_hodge_or_irr_part():
    rng = random.Random(11)
    for g, n in [(3, 2), (4, 3), (5, 1)]:
        for _ in range(10):
            c = class_T(g, n, random_weights(rng, n, 0))
            assert c.coeff(LAMBDA1) == 0
            assert c.coeff(DELTA_IRR) == 0


def test_class_T_degree_validation():
    with pytest.raises(ValueError, match="degree"):
        class_T(3, 2, (1, 0))
    with pytest.raises(ValueError, match="expected 2 weights"):
        class_T(3, 2, (0,))


def test_class_Theta_frozen_example():
    expected = DivisorClass(
        3,
        2,
        {
            LAMBDA1: Fraction(-1),
            DELTA_IRR: Fraction(1, 8),
            K(1): Fraction(6),
            K(2): Fraction(0),
            bgen(3, 2, 0, (1, 2)): Fraction(3),
            bgen(3, 2, 1, ()): Fraction(0),
            bgen(3, 2, 1, (1,)): Fraction(-3),
            bgen(3, 2, 1, (2,)): Fraction(-1),
            bgen(3, 2, 1, (1, 2)): Fraction(-1),
        },
    )
    assert class_Theta(3, 2, (3, -1)) == expected


def test_class_Theta_fixed_hodge_and_irr_coefficients():
    rng = random.Random(13)
    for g, n in [(3, 2), (4, 3), (5, 2)]:
        for _ in range(10):
            c = class_Theta(g, n, random_weights(rng, n, g - 1))
            assert c.coeff(LAMBDA1) == -1
            assert c.coeff(DELTA_IRR) == Fraction(1, 8)


def test_representative_independence_of_boundary_coefficients():
    # both labels of a class plug into the same coefficient value
    rng = random.Random(17)
    for g in range(3, 7):
        for n in range(1, 4):
            d0 = random_weights(rng, n, 0)
            d1 = random_weights(rng, n, g - 1)
            cT = class_T(g, n, d0)
            cTh = class_Theta(g, n, d1)
            for b in enumerate_boundary(g, n):
                if b.h == 0:
                    continue
                mh, mP = b.mirror(g, n)
                if mh == g:
                    continue
                dP = weight_sum(d0, mP)
                assert cT.coeff(delta(b)) == -Fraction(dP * dP, 2)
                dP = weight_sum(d1, mP)
                assert cTh.coeff(delta(b)) == -Fraction((dP - mh) * (dP - mh + 1), 2)


def test_correction_ledger_frozen_example():
    ledger = correction_ledger(3, 2, (3, -1))
    assert ledger.delta_irr_order == Fraction(1, 8)
    assert {(t.h, t.P, t.mult) for t in ledger.terms} == {
        (1, (), 1),
        (2, (), 2),
        (3, (), 3),
    }
    # the h = 3 representative lands on the class with the h = 0 label
    term = next(t for t in ledger.terms if t.h == 3)
    assert term.boundary_class(3, 2) == canonicalize_boundary(0, (1, 2), 3, 2)


def test_correction_ledger_properties():
    rng = random.Random(19)
    for g, n in [(3, 2), (4, 3), (5, 3)]:
        for _ in range(20):
            d = random_negative_weights(rng, n, g - 1)
            ledger = correction_ledger(g, n, d)
            classes = [t.boundary_class(g, n) for t in ledger.terms]
            assert len(classes) == len(set(classes))  # one representative per class
            for t in ledger.terms:
                assert t.h > 0  # a genus-0 plus-side can never vanish
                assert t.mult == t.h - weight_sum(d, t.P) > 0


def test_correction_ledger_preconditions():
    with pytest.raises(ValueError, match="negative"):
        correction_ledger(3, 2, (1, 1))
    with pytest.raises(ValueError, match="degree"):
        correction_ledger(3, 2, (1, -1))
    with pytest.raises(ValueError, match="plus_convention"):
        correction_ledger(3, 2, (3, -1), "positive")


def test_plus_conventions_differ_only_with_zero_weights():
    d = (3, 0, -1)  # degree 2 = g - 1 at g = 3
    nonneg = correction_ledger(3, 3, d, "nonneg")
    strict = correction_ledger(3, 3, d, "strict")
    assert {(t.h, t.P) for t in nonneg.terms} != {(t.h, t.P) for t in strict.terms}

    rng = random.Random(23)
    for _ in range(20):
        d = random_negative_weights(rng, 3, 2)
        if 0 in d:
            continue
        a = correction_ledger(3, 3, d, "nonneg")
        b = correction_ledger(3, 3, d, "strict")
        assert a.terms == b.terms


def test_mueller_class_frozen_example():
    expected = DivisorClass(
        3,
        2,
        {
            LAMBDA1: Fraction(-1),
            K(1): Fraction(6),
            bgen(3, 2, 1, ()): Fraction(-1),
            bgen(3, 2, 1, (1,)): Fraction(-3),
            bgen(3, 2, 1, (2,)): Fraction(-1),
            bgen(3, 2, 1, (1, 2)): Fraction(-3),
        },
    )
    assert class_D_from_theta(3, 2, (3, -1)) == expected
    assert class_D_direct(3, 2, (3, -1)) == expected
    # the boundary term at delta_0^{1,2} cancels: 3 - 3 = 0
    assert expected.coeff(bgen(3, 2, 0, (1, 2))) == 0


def test_mueller_class_invariants():
    rng = random.Random(29)
    for g, n in [(3, 2), (3, 3), (4, 2), (4, 3)]:
        for _ in range(25):
            d = random_negative_weights(rng, n, g - 1)
            direct = class_D_direct(g, n, d)
            assert direct.coeff(LAMBDA1) == -1
            assert direct.coeff(DELTA_IRR) == 0
            assert direct == class_D_from_theta(g, n, d)


def test_mueller_conventions_match_when_consistent():
    for conv in ("nonneg", "strict"):
        d = (3, 0, -1)
        assert class_D_direct(3, 3, d, conv) == class_D_from_theta(3, 3, d, conv)


def test_theta_intersection_values():
    assert theta_intersection(point_curve(1), (1, -1), "T", 3, 2) == 3
    z = boundary_curve(canonicalize_boundary(1, (1,), 3, 2))
    assert theta_intersection(z, (1, -1), "T", 3, 2) == 1 * 2
    assert theta_intersection(z, (3, -1), "Theta", 3, 2) == (3 - 1) ** 2 * 2
    assert theta_intersection(ELLIPTIC_TAIL, (1, -1), "T", 3, 2) == 0
    assert theta_intersection(IRREDUCIBLE_NODE, (1, -1), "T", 3, 2) == 0
    assert theta_intersection(ELLIPTIC_TAIL, (3, -1), "Theta", 3, 2) is UNAVAILABLE
    assert theta_intersection(IRREDUCIBLE_NODE, (3, -1), "Theta", 3, 2) is UNAVAILABLE
    with pytest.raises(ValueError, match="kind"):
        theta_intersection(point_curve(1), (1, -1), "theta", 3, 2)


def test_intersection_numbers_match_pairing_against_classes():
    # the closed formulas and the intersection table tell one consistent story
    rng = random.Random(31)
    for g, n in [(3, 1), (3, 2), (4, 2)]:
        for _ in range(5):
            d = random_weights(rng, n, 0)
            cT = class_T(g, n, d)
            for curve in enumerate_test_curves(g, n):
                assert pair(curve, cT) == theta_intersection(curve, d, "T", g, n)
            d = random_weights(rng, n, g - 1)
            cTh = class_Theta(g, n, d)
            for curve in enumerate_test_curves(g, n):
                if curve.kind not in ("point", "node"):
                    continue
                assert pair(curve, cTh) == theta_intersection(curve, d, "Theta", g, n)


def test_permutation_equivariance():
    rng = random.Random(37)
    for g, n in [(3, 2), (3, 3)]:
        for sigma in permutations(range(1, n + 1)):
            d = random_weights(rng, n, 0)
            moved = [0] * n
            for i in range(1, n + 1):
                moved[sigma[i - 1] - 1] = d[i - 1]
            assert class_T(g, n, tuple(moved)) == relabel_class(class_T(g, n, d), sigma)


def test_small_genus_warns():
    with pytest.warns(UserWarning, match="genus >= 3"):
        class_T(2, 2, (1, -1))
    with pytest.warns(UserWarning, match="genus >= 3"):
        class_Theta(1, 2, (1, -1))
