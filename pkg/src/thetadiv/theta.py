"""Closed-form pullback classes of the universal theta divisors.

Fix integer weights ``d = (d_1, .., d_n)`` at the marked points and let
``s_d`` send a pointed curve to the line bundle of the divisor
``sum d_i p_i`` in the universal Picard family.

* For total weight 0, :func:`class_T` evaluates the pullback of the
  universal symmetric theta divisor trivialized along the zero section.
  Its lambda1 and delta_irr coefficients vanish.
* For total weight g-1, :func:`class_Theta` evaluates the pullback of the
  universal theta divisor: ``-lambda1 + (1/8) delta_irr`` plus point and
  boundary terms.
* When at least one weight is negative, the effective-divisor locus
  (curves where ``sum d_i p_i`` moves in a positive-dimensional linear
  system, closure taken) differs from the degree-(g-1) pullback by boundary
  components along which the theta function vanishes identically:
  the vanishing order on a boundary class is ``h - d_P`` whenever every
  marking on the genus-h side has nonnegative weight and ``h > d_P``
  (Riemann singularity order), and the generic vanishing order along the
  irreducible boundary is 1/8.  :func:`correction_ledger` enumerates those
  multiplicities, :func:`class_D_from_theta` subtracts them from
  :func:`class_Theta`, and :func:`class_D_direct` evaluates the same locus
  class by its own closed formula.  The two agree, which is the package's
  main cross-check.

Boundary sums run over canonical class representatives: classes whose
canonical form has h = 0 take the ``-(d_P^2 - sum_{i in P} d_i^2)/2``
coefficient, all others the genus-split coefficient.  Both coefficient
shapes are invariant under swapping a representative with its mirror, so
the split is well defined.

``plus_convention`` selects which markings count as nonnegative when a
weight is exactly 0: "nonneg" (d_i >= 0, the default) or "strict"
(d_i > 0).  The conventions differ only for weight vectors with zeros.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .basis import (
    DELTA_IRR,
    K,
    LAMBDA1,
    BoundaryIndex,
    DivisorClass,
    Generator,
    _check_gn,
    canonicalize_boundary,
    delta,
    enumerate_boundary,
)
from .curves import TestCurve, _check_curve

PLUS_CONVENTIONS = ("nonneg", "strict")


class Unavailable:
    """Typed outcome for intersection numbers the theory does not supply."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNAVAILABLE"


UNAVAILABLE = Unavailable()


def _warn_small_genus(g: int) -> None:
    if g < 3:
        warnings.warn(
            "divisor-basis completeness is only established for genus >= 3; "
            "evaluating the formula anyway",
            UserWarning,
            stacklevel=3,
        )


def check_weights(g: int, n: int, d: Sequence[int], degree: int) -> tuple[int, ...]:
    """Validate a weight vector and its total degree; returns it as a tuple."""
    _check_gn(g, n)
    d = tuple(d)
    if len(d) != n:
        raise ValueError(f"expected {n} weights, got {len(d)}")
    if not all(isinstance(w, int) for w in d):
        raise ValueError(f"weights must be integers, got {d!r}")
    if sum(d) != degree:
        raise ValueError(f"weights {d} have total degree {sum(d)}, expected {degree}")
    return d


def weight_sum(d: Sequence[int], P: Iterable[int]) -> int:
    """d_P: the total weight carried by the markings in P."""
    return sum(d[i - 1] for i in P)


def plus_set(d: Sequence[int], plus_convention: str = "nonneg") -> frozenset[int]:
    """Markings with nonnegative weight ("nonneg") or positive weight ("strict")."""
    if plus_convention not in PLUS_CONVENTIONS:
        raise ValueError(f"plus_convention must be one of {PLUS_CONVENTIONS}")
    if plus_convention == "nonneg":
        return frozenset(i for i, w in enumerate(d, start=1) if w >= 0)
    return frozenset(i for i, w in enumerate(d, start=1) if w > 0)


def class_T(g: int, n: int, d: Sequence[int]) -> DivisorClass:
    """Pullback of the degree-0 symmetric theta divisor (trivialized along
    the zero section) under s_d, for weights of total degree 0."""
    d = check_weights(g, n, d, degree=0)
    _warn_small_genus(g)
    coeffs: dict[Generator, Fraction] = {}
    for i in range(1, n + 1):
        coeffs[K(i)] = Fraction(d[i - 1] ** 2, 2)
    for b in enumerate_boundary(g, n):
        dP = weight_sum(d, b.P)
        if b.h == 0:
            c = -Fraction(dP * dP - sum(d[i - 1] ** 2 for i in b.P), 2)
        else:
            c = -Fraction(dP * dP, 2)
        coeffs[delta(b)] = c
    return DivisorClass(g, n, coeffs)


def class_Theta(g: int, n: int, d: Sequence[int]) -> DivisorClass:
    """Pullback of the degree-(g-1) universal theta divisor under s_d, for
    weights of total degree g-1."""
    d = check_weights(g, n, d, degree=g - 1)
    _warn_small_genus(g)
    coeffs: dict[Generator, Fraction] = {LAMBDA1: Fraction(-1), DELTA_IRR: Fraction(1, 8)}
    for i in range(1, n + 1):
        w = d[i - 1]
        coeffs[K(i)] = Fraction(w * (w + 1), 2)
    for b in enumerate_boundary(g, n):
        dP = weight_sum(d, b.P)
        if b.h == 0:
            c = -Fraction(dP * dP - sum(d[i - 1] ** 2 for i in b.P), 2)
        else:
            c = -Fraction((dP - b.h) * (dP - b.h + 1), 2)
        coeffs[delta(b)] = c
    return DivisorClass(g, n, coeffs)


@dataclass(frozen=True)
class CorrectionTerm:
    """One boundary class along which the theta function vanishes
    identically, recorded through the representative (h, P) whose genus-h
    side carries only plus-weights; ``mult = h - d_P`` is the vanishing
    order."""

    h: int
    P: tuple[int, ...]
    mult: int

    def boundary_class(self, g: int, n: int) -> BoundaryIndex:
        return canonicalize_boundary(self.h, self.P, g, n)


@dataclass(frozen=True)
class CorrectionLedger:
    """All boundary vanishing corrections for one weight vector, plus the
    fixed generic order 1/8 along the irreducible boundary."""

    g: int
    n: int
    terms: tuple[CorrectionTerm, ...]
    delta_irr_order: Fraction = Fraction(1, 8)


def correction_ledger(
    g: int, n: int, d: Sequence[int], plus_convention: str = "nonneg"
) -> CorrectionLedger:
    """Scan both representatives of every boundary class and record the
    vanishing multiplicity h - d_P wherever P lies inside the plus set and
    h > d_P.  At most one representative per class can qualify because some
    weight is negative.
    """
    d = check_weights(g, n, d, degree=g - 1)
    if min(d) >= 0:
        raise ValueError("the effective-divisor locus needs at least one negative weight")
    plus = plus_set(d, plus_convention)
    terms: list[CorrectionTerm] = []
    for b in enumerate_boundary(g, n):
        hits = []
        for h, P in ((b.h, b.P), b.mirror(g, n)):
            if not set(P) <= plus:
                continue
            dP = weight_sum(d, P)
            if h > dP:
                hits.append(CorrectionTerm(h, P, h - dP))
        if len(hits) > 1:
            raise AssertionError(f"both representatives of {b} qualified; weights {d}")
        terms.extend(hits)
    return CorrectionLedger(g, n, tuple(terms))


def class_D_from_theta(
    g: int, n: int, d: Sequence[int], plus_convention: str = "nonneg"
) -> DivisorClass:
    """Class of the closed effective-divisor locus, computed by stripping
    the identically-vanishing boundary multiplicities (and the 1/8 along
    the irreducible boundary) off :func:`class_Theta`."""
    ledger = correction_ledger(g, n, d, plus_convention)
    coeffs = dict(class_Theta(g, n, d).coeffs)
    for term in ledger.terms:
        gen = delta(term.boundary_class(g, n))
        coeffs[gen] = coeffs.get(gen, Fraction(0)) - term.mult
    coeffs[DELTA_IRR] = coeffs.get(DELTA_IRR, Fraction(0)) - ledger.delta_irr_order
    return DivisorClass(g, n, coeffs)


def class_D_direct(
    g: int, n: int, d: Sequence[int], plus_convention: str = "nonneg"
) -> DivisorClass:
    """Class of the closed effective-divisor locus, evaluated by its own
    closed formula: -lambda1, zero delta_irr, d_i(d_i+1)/2 on the point
    classes, the usual boundary coefficients, minus the vanishing
    corrections.  Agrees with :func:`class_D_from_theta`."""
    ledger = correction_ledger(g, n, d, plus_convention)
    d = tuple(d)
    _warn_small_genus(g)
    coeffs: dict[Generator, Fraction] = {LAMBDA1: Fraction(-1)}
    for i in range(1, n + 1):
        w = d[i - 1]
        coeffs[K(i)] = Fraction(w * (w + 1), 2)
    for b in enumerate_boundary(g, n):
        dP = weight_sum(d, b.P)
        if b.h == 0:
            c = -Fraction(dP * dP - sum(d[i - 1] ** 2 for i in b.P), 2)
        else:
            c = -Fraction((dP - b.h) * (dP - b.h + 1), 2)
        coeffs[delta(b)] = c
    for term in ledger.terms:
        gen = delta(term.boundary_class(g, n))
        coeffs[gen] = coeffs.get(gen, Fraction(0)) - term.mult
    return DivisorClass(g, n, coeffs)


def theta_intersection(
    curve: TestCurve, d: Sequence[int], kind: str, g: int, n: int
) -> Union[Fraction, Unavailable]:
    """Intersection number of a test curve with the theta pullback of the
    given kind ("T" for degree 0, "Theta" for degree g-1).

    The values come from reading the map s_d on each family as a rescaled
    Abel-Jacobi embedding.  For kind "T" the elliptic-tail and
    irreducible-node families meet the pullback trivially (the trivialized
    theta value is constant along them).  For kind "Theta" those two
    numbers are not supplied; :data:`UNAVAILABLE` is returned and the
    reconstruction uses pinned coefficient constraints instead.
    """
    if kind not in ("T", "Theta"):
        raise ValueError(f'kind must be "T" or "Theta", got {kind!r}')
    d = check_weights(g, n, d, degree=0 if kind == "T" else g - 1)
    _check_curve(curve, g, n)
    if curve.kind == "point":
        return Fraction(d[curve.i - 1] ** 2 * g)
    if curve.kind == "node":
        b = curve.boundary
        dP = weight_sum(d, b.P)
        if kind == "T":
            return Fraction(dP * dP * (g - b.h))
        return Fraction((dP - b.h) ** 2 * (g - b.h))
    if kind == "T":
        return Fraction(0)
    return UNAVAILABLE
