"""Tests for the divisor basis: canonicalization, enumeration, arithmetic."""

from fractions import Fraction
from itertools import combinations, permutations

import pytest

from thetadiv.basis import (
    DELTA_IRR,
    LAMBDA1,
    BoundaryIndex,
    DivisorClass,
    K,
    basis_generators,
    canonicalize_boundary,
    delta,
    enumerate_boundary,
    k_to_psi,
    psi_in_k_basis,
    psi_to_k,
    relabel_boundary,
    relabel_class,
)


def all_subsets(n):
    for size in range(n + 1):
        yield from combinations(range(1, n + 1), size)


def complement(P, n):
    return tuple(i for i in range(1, n + 1) if i not in set(P))


def stable_pairs(g, n):
    """All (h, P) labels that survive stability, both representatives included."""
    for h in range(g + 1):
        for P in all_subsets(n):
            if h == 0 and len(P) < 2:
                continue
            if h == g and len(complement(P, n)) < 2:
                continue
            yield h, P


def test_canonicalize_examples():
    assert canonicalize_boundary(3, (), 3, 2) == BoundaryIndex(0, (1, 2))
    assert canonicalize_boundary(2, (2,), 3, 2) == BoundaryIndex(1, (1,))
    # h = g - h tie goes to the side containing marking 1
    assert canonicalize_boundary(2, (2,), 4, 2) == BoundaryIndex(2, (1,))


def test_canonicalize_rejects_unstable():
    with pytest.raises(ValueError, match="unstable"):
        canonicalize_boundary(0, (1,), 3, 2)
    with pytest.raises(ValueError, match="unstable"):
        canonicalize_boundary(3, (1, 2), 3, 2)  # mirror is (0, {}) with no markings
    with pytest.raises(ValueError):
        canonicalize_boundary(4, (1,), 3, 2)  # genus part out of range
    with pytest.raises(ValueError):
        canonicalize_boundary(1, (5,), 3, 2)  # marking out of range


def test_canonicalize_idempotent_and_orbit_constant():
    for g in range(1, 7):
        for n in range(1, 5):
            for h, P in stable_pairs(g, n):
                rep = canonicalize_boundary(h, P, g, n)
                assert canonicalize_boundary(g - h, complement(P, n), g, n) == rep
                assert canonicalize_boundary(rep.h, rep.P, g, n) == rep


def test_enumerate_boundary_frozen_examples():
    assert [(b.h, b.P) for b in enumerate_boundary(3, 2)] == [
        (0, (1, 2)),
        (1, ()),
        (1, (1,)),
        (1, (2,)),
        (1, (1, 2)),
    ]
    assert [(b.h, b.P) for b in enumerate_boundary(3, 1)] == [(1, ()), (1, (1,))]
    assert len(basis_generators(3, 2)) == 2 + 2 + 5


def test_enumerate_boundary_matches_orbit_count():
    # independent oracle: orbits of the mirror identification on stable labels
    for g in range(1, 7):
        for n in range(1, 5):
            orbits = {
                frozenset({(h, P), (g - h, complement(P, n))})
                for h, P in stable_pairs(g, n)
            }
            listed = enumerate_boundary(g, n)
            assert len(listed) == len(set(listed)) == len(orbits)
            for b in listed:
                assert frozenset({(b.h, b.P), b.mirror(g, n)}) in orbits


def test_enumerate_boundary_ordering():
    for g, n in [(3, 3), (4, 2), (5, 3), (6, 3)]:
        keys = [(b.h, len(b.P), b.P) for b in enumerate_boundary(g, n)]
        assert keys == sorted(keys)


def test_enumerate_boundary_is_image_of_canonicalize():
    for g, n in [(3, 2), (4, 3), (5, 2)]:
        listed = set(enumerate_boundary(g, n))
        image = {canonicalize_boundary(h, P, g, n) for h, P in stable_pairs(g, n)}
        assert listed == image


def test_psi_in_k_basis_examples():
    b12 = canonicalize_boundary(0, (1, 2), 3, 2)
    assert psi_in_k_basis(1, 3, 2) == DivisorClass(3, 2, {K(1): 1, delta(b12): 1})

    assert psi_in_k_basis(1, 3, 1) == DivisorClass(3, 1, {K(1): 1})

    expected = {K(1): Fraction(1)}
    for P in [(1, 2), (1, 3), (1, 2, 3)]:
        expected[delta(canonicalize_boundary(0, P, 3, 3))] = Fraction(1)
    assert psi_in_k_basis(1, 3, 3) == DivisorClass(3, 3, expected)


def test_psi_k_round_trip_on_basis():
    for g, n in [(3, 1), (3, 2), (4, 3), (5, 3)]:
        for gen in basis_generators(g, n):
            unit = DivisorClass(g, n, {gen: 1})
            assert psi_to_k(k_to_psi(unit)) == unit
            assert k_to_psi(psi_to_k(unit)) == unit
        for i in range(1, n + 1):
            # substituting K_i out of psi_i's expansion leaves the bare point slot
            assert k_to_psi(psi_in_k_basis(i, g, n)) == DivisorClass(g, n, {K(i): 1})


def test_class_arithmetic():
    x = psi_in_k_basis(1, 3, 2)
    zero = DivisorClass.zero(3, 2)
    assert x + (-1) * x == zero
    assert 0 * x == zero
    assert (Fraction(1, 2) * DivisorClass(3, 2, {K(1): 1})).coeff(K(1)) == Fraction(1, 2)
    assert x - x == zero
    assert x.coeff(LAMBDA1) == 0
    with pytest.raises(ValueError, match="mismatched"):
        x + DivisorClass.zero(3, 3)


def test_class_rejects_bad_generators():
    with pytest.raises(ValueError):
        DivisorClass(3, 2, {K(3): 1})
    with pytest.raises(ValueError, match="not canonical"):
        DivisorClass(3, 2, {delta(BoundaryIndex(2, (2,))): 1})


def test_zero_coefficients_dropped():
    assert DivisorClass(3, 2, {K(1): 0, LAMBDA1: Fraction(0)}) == DivisorClass.zero(3, 2)
    assert DELTA_IRR not in DivisorClass(3, 2, {DELTA_IRR: Fraction(0)}).coeffs


def test_relabel_commutes_with_canonicalize():
    for g, n in [(3, 2), (4, 3), (6, 3)]:
        for sigma in permutations(range(1, n + 1)):
            for h, P in stable_pairs(g, n):
                moved = canonicalize_boundary(h, tuple(sigma[i - 1] for i in P), g, n)
                assert moved == relabel_boundary(canonicalize_boundary(h, P, g, n), sigma, g, n)


def test_relabel_class_is_linear():
    x = psi_in_k_basis(1, 3, 3)
    y = psi_in_k_basis(2, 3, 3)
    sigma = (2, 3, 1)
    assert relabel_class(x + y, sigma) == relabel_class(x, sigma) + relabel_class(y, sigma)


def test_json_round_trip_and_determinism():
    import json

    x = psi_in_k_basis(1, 3, 2) + Fraction(1, 8) * DivisorClass(3, 2, {DELTA_IRR: 1})
    blob = json.dumps(x.to_json_dict())
    assert json.dumps(x.to_json_dict()) == blob
    assert DivisorClass.from_json_dict(json.loads(blob)) == x
    # rationals as lowest-terms strings, integers without a denominator
    data = x.to_json_dict()
    assert data["coeffs"]["delta_irr"] == "1/8"
    assert data["coeffs"]["K"] == ["1", "0"]


def test_generator_labels_parse_back():
    from thetadiv.basis import generator_label, parse_generator_label

    for g, n in [(3, 2), (4, 3), (6, 3)]:
        for gen in basis_generators(g, n):
            assert parse_generator_label(generator_label(gen), g, n) == gen
    with pytest.raises(ValueError, match="unrecognized"):
        parse_generator_label("psi1", 3, 2)
