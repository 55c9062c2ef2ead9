"""Exact divisor-class arithmetic on moduli of stable n-pointed genus-g curves.

Conventions, for a fixed genus ``g >= 1`` and marking set ``I = {1, .., n}``:

* A boundary divisor class is indexed by a genus part ``h`` and a subset
  ``P`` of the markings, with ``(h, P)`` and ``(g - h, P complement)``
  labelling the same class.  :func:`canonicalize_boundary` fixes one
  representative per class: the smaller genus part wins, and the tie at
  ``h = g - h`` goes to the side whose marking set contains 1.  Stability
  rules out ``h = 0`` with fewer than two markings (and its mirror).
* The rational Picard group is spanned by ``lambda1`` (first Chern class of
  the Hodge bundle), ``delta_irr`` (irreducible nodal locus), the point
  classes ``K_1 .. K_n`` (first Chern class of the relative dualizing sheaf
  pulled back through the i-th point map), and the canonical boundary
  classes.  These form a basis for ``g >= 3``; all formulas evaluate for
  ``g in {1, 2}`` as well, but basis-dependent guarantees are only claimed
  for ``g >= 3``.
* All coefficients are :class:`fractions.Fraction`; no floating point is
  used anywhere.  Every value is immutable and every function is pure, so
  concurrent use needs no locking.

The cotangent class ``psi_i`` differs from ``K_i`` by rational-tail
boundary classes::

    psi_i = K_i + sum of delta_0^P over P containing i with |P| >= 2

:func:`psi_in_k_basis`, :func:`k_to_psi` and :func:`psi_to_k` implement
this change of basis in both directions.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Rational = Fraction


def _check_gn(g: int, n: int) -> None:
    if not (isinstance(g, int) and g >= 1):
        raise ValueError(f"genus must be an integer >= 1, got {g!r}")
    if not (isinstance(n, int) and n >= 1):
        raise ValueError(f"number of marked points must be an integer >= 1, got {n!r}")


def _subsets(n: int, min_size: int = 0) -> Iterator[tuple[int, ...]]:
    """Subsets of {1..n} as sorted tuples, ordered by size then lexicographically."""
    for size in range(min_size, n + 1):
        yield from itertools.combinations(range(1, n + 1), size)


def _subsets_containing(i: int, n: int, min_size: int = 2) -> Iterator[tuple[int, ...]]:
    others = [j for j in range(1, n + 1) if j != i]
    for size in range(max(min_size - 1, 0), n):
        for rest in itertools.combinations(others, size):
            yield tuple(sorted((i,) + rest))


@dataclass(frozen=True)
class BoundaryIndex:
    """Label (h, P) of a boundary divisor class: genus-h component carrying
    the markings in P, joined at a node to a genus-(g-h) component carrying
    the rest.  Canonical instances (as produced by
    :func:`canonicalize_boundary`) have h <= g-h, with the h = g-h tie
    resolved so that 1 is in P."""

    h: int
    P: tuple[int, ...]

    def complement(self, n: int) -> tuple[int, ...]:
        members = set(self.P)
        return tuple(i for i in range(1, n + 1) if i not in members)

    def mirror(self, g: int, n: int) -> tuple[int, tuple[int, ...]]:
        """The other (h, P) label of the same class; not canonical in general."""
        return g - self.h, self.complement(n)


def canonicalize_boundary(h: int, P: Iterable[int], g: int, n: int) -> BoundaryIndex:
    """Return the canonical representative of the boundary class (h, P).

    (h, P) and (g-h, P complement) map to the same value.  Raises
    ``ValueError`` for out-of-range input and for unstable classes (a
    genus-0 side with fewer than two markings, checked on both
    representatives).
    """
    _check_gn(g, n)
    pts = tuple(sorted(set(P)))
    if not 0 <= h <= g:
        raise ValueError(f"genus part {h} out of range for genus {g}")
    if pts and (pts[0] < 1 or pts[-1] > n):
        raise ValueError(f"marking set {pts} not contained in 1..{n}")
    comp = tuple(i for i in range(1, n + 1) if i not in set(pts))
    if h < g - h:
        rep = BoundaryIndex(h, pts)
    elif h > g - h:
        rep = BoundaryIndex(g - h, comp)
    else:
        rep = BoundaryIndex(h, pts if 1 in pts else comp)
    if rep.h == 0 and len(rep.P) < 2:
        raise ValueError(
            f"unstable boundary class: ({h}, {pts}) has a genus-0 side "
            "with fewer than two marked points"
        )
    return rep


def enumerate_boundary(g: int, n: int) -> list[BoundaryIndex]:
    """All boundary classes, one canonical representative each, ordered by
    genus part, then size of the marking set, then lexicographically."""
    _check_gn(g, n)
    classes: list[BoundaryIndex] = []
    for h in range(0, g // 2 + 1):
        if h == 0:
            subsets: Iterable[tuple[int, ...]] = _subsets(n, min_size=2)
        elif 2 * h == g:
            subsets = (P for P in _subsets(n) if 1 in P)
        else:
            subsets = _subsets(n)
        classes.extend(BoundaryIndex(h, P) for P in subsets)
    return classes


@dataclass(frozen=True)
class Generator:
    """One generator of the divisor basis.  ``kind`` is one of "lambda1",
    "delta_irr", "K" (with point index ``i``) or "delta" (with a canonical
    :class:`BoundaryIndex`)."""

    kind: str
    i: int = 0
    boundary: BoundaryIndex | None = None


LAMBDA1 = Generator("lambda1")
DELTA_IRR = Generator("delta_irr")


def K(i: int) -> Generator:
    if not (isinstance(i, int) and i >= 1):
        raise ValueError(f"point index must be a positive integer, got {i!r}")
    return Generator("K", i=i)


def delta(b: BoundaryIndex) -> Generator:
    if not isinstance(b, BoundaryIndex):
        raise ValueError(f"expected a BoundaryIndex, got {b!r}")
    return Generator("delta", boundary=b)


_KIND_ORDER = {"lambda1": 0, "delta_irr": 1, "K": 2, "delta": 3}


def generator_sort_key(gen: Generator) -> tuple:
    """Total order on generators matching the basis order."""
    if gen.kind == "delta":
        b = gen.boundary
        return (3, 0, b.h, len(b.P), b.P)
    return (_KIND_ORDER[gen.kind], gen.i, 0, 0, ())


def generator_label(gen: Generator) -> str:
    if gen.kind == "lambda1":
        return "lambda1"
    if gen.kind == "delta_irr":
        return "delta_irr"
    if gen.kind == "K":
        return f"K{gen.i}"
    b = gen.boundary
    return f"delta_{b.h}^{{{','.join(map(str, b.P))}}}"


_DELTA_LABEL = re.compile(r"delta_(\d+)\^\{((?:\d+(?:,\d+)*)?)\}")


def parse_generator_label(label: str, g: int, n: int) -> Generator:
    """Inverse of :func:`generator_label`, validating against (g, n)."""
    if label == "lambda1":
        return LAMBDA1
    if label == "delta_irr":
        return DELTA_IRR
    if label.startswith("K") and label[1:].isdigit():
        gen = K(int(label[1:]))
        _check_generator(gen, g, n)
        return gen
    match = _DELTA_LABEL.fullmatch(label)
    if match is None:
        raise ValueError(f"unrecognized generator label {label!r}")
    P = tuple(int(x) for x in match.group(2).split(",") if x)
    return delta(canonicalize_boundary(int(match.group(1)), P, g, n))


def _check_generator(gen: Generator, g: int, n: int) -> None:
    if not isinstance(gen, Generator):
        raise ValueError(f"expected a Generator, got {gen!r}")
    if gen.kind in ("lambda1", "delta_irr"):
        return
    if gen.kind == "K":
        if not 1 <= gen.i <= n:
            raise ValueError(f"point index {gen.i} out of range 1..{n}")
        return
    if gen.kind == "delta":
        b = gen.boundary
        if canonicalize_boundary(b.h, b.P, g, n) != b:
            raise ValueError(f"boundary index {b} is not canonical for (g={g}, n={n})")
        return
    raise ValueError(f"unknown generator kind {gen.kind!r}")


def basis_generators(g: int, n: int) -> list[Generator]:
    """The ordered divisor basis: lambda1, delta_irr, K_1..K_n, boundary classes."""
    gens = [LAMBDA1, DELTA_IRR]
    gens.extend(K(i) for i in range(1, n + 1))
    gens.extend(delta(b) for b in enumerate_boundary(g, n))
    return gens


@dataclass(frozen=True)
class DivisorClass:
    """A rational divisor class, stored as a sparse exact coefficient vector
    over the ordered basis.  Zero coefficients are dropped on construction,
    so ``==`` is exact coefficient-wise equality."""

    g: int
    n: int
    coeffs: Mapping[Generator, Fraction]

    def __post_init__(self) -> None:
        _check_gn(self.g, self.n)
        clean: dict[Generator, Fraction] = {}
        for gen, c in self.coeffs.items():
            _check_generator(gen, self.g, self.n)
            c = Fraction(c)
            if c != 0:
                clean[gen] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def zero(cls, g: int, n: int) -> "DivisorClass":
        return cls(g, n, {})

    def coeff(self, gen: Generator) -> Fraction:
        return self.coeffs.get(gen, Fraction(0))

    def _check_same_space(self, other: "DivisorClass") -> None:
        if (self.g, self.n) != (other.g, other.n):
            raise ValueError(
                f"mismatched spaces: (g={self.g}, n={self.n}) vs (g={other.g}, n={other.n})"
            )

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if not isinstance(other, DivisorClass):
            return NotImplemented
        self._check_same_space(other)
        coeffs = dict(self.coeffs)
        for gen, c in other.coeffs.items():
            coeffs[gen] = coeffs.get(gen, Fraction(0)) + c
        return DivisorClass(self.g, self.n, coeffs)

    def __neg__(self) -> "DivisorClass":
        return self.scale(-1)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "DivisorClass":
        c = Fraction(c)
        return DivisorClass(self.g, self.n, {gen: c * v for gen, v in self.coeffs.items()})

    def __rmul__(self, c) -> "DivisorClass":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def to_json_dict(self) -> dict:
        """Full-basis JSON form; rationals as lowest-terms "p/q" strings."""
        return {
            "g": self.g,
            "n": self.n,
            "coeffs": {
                "lambda1": str(self.coeff(LAMBDA1)),
                "delta_irr": str(self.coeff(DELTA_IRR)),
                "K": [str(self.coeff(K(i))) for i in range(1, self.n + 1)],
                "boundary": [
                    {"h": b.h, "P": list(b.P), "c": str(self.coeff(delta(b)))}
                    for b in enumerate_boundary(self.g, self.n)
                ],
            },
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "DivisorClass":
        g, n = data["g"], data["n"]
        raw = data["coeffs"]
        coeffs: dict[Generator, Fraction] = {
            LAMBDA1: Fraction(raw["lambda1"]),
            DELTA_IRR: Fraction(raw["delta_irr"]),
        }
        for i, c in enumerate(raw["K"], start=1):
            coeffs[K(i)] = Fraction(c)
        for entry in raw["boundary"]:
            b = canonicalize_boundary(entry["h"], tuple(entry["P"]), g, n)
            coeffs[delta(b)] = Fraction(entry["c"])
        return cls(g, n, coeffs)


def psi_in_k_basis(i: int, g: int, n: int) -> DivisorClass:
    """The cotangent class psi_i written over the K/boundary basis:
    K_i plus every delta_0^P with i in P and |P| >= 2."""
    _check_gn(g, n)
    if not 1 <= i <= n:
        raise ValueError(f"point index {i} out of range 1..{n}")
    coeffs: dict[Generator, Fraction] = {K(i): Fraction(1)}
    for P in _subsets_containing(i, n):
        coeffs[delta(canonicalize_boundary(0, P, g, n))] = Fraction(1)
    return DivisorClass(g, n, coeffs)


def k_to_psi(divclass: DivisorClass) -> DivisorClass:
    """Substitute K_i = psi_i - sum delta_0^P (P containing i, |P| >= 2).

    The result stores the psi_i coefficient in the i-th point slot; boundary
    slots absorb the correction.  Inverse of :func:`psi_to_k`.
    """
    coeffs = dict(divclass.coeffs)
    for i in range(1, divclass.n + 1):
        a = divclass.coeff(K(i))
        if a == 0:
            continue
        for P in _subsets_containing(i, divclass.n):
            gen = delta(canonicalize_boundary(0, P, divclass.g, divclass.n))
            coeffs[gen] = coeffs.get(gen, Fraction(0)) - a
    return DivisorClass(divclass.g, divclass.n, coeffs)


def psi_to_k(divclass: DivisorClass) -> DivisorClass:
    """Substitute psi_i = K_i + sum delta_0^P; inverse of :func:`k_to_psi`."""
    coeffs = dict(divclass.coeffs)
    for i in range(1, divclass.n + 1):
        a = divclass.coeff(K(i))
        if a == 0:
            continue
        for P in _subsets_containing(i, divclass.n):
            gen = delta(canonicalize_boundary(0, P, divclass.g, divclass.n))
            coeffs[gen] = coeffs.get(gen, Fraction(0)) + a
    return DivisorClass(divclass.g, divclass.n, coeffs)


def _check_permutation(sigma: tuple[int, ...], n: int) -> None:
    if len(sigma) != n or sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{sigma!r} is not a permutation of 1..{n}")


def relabel_boundary(b: BoundaryIndex, sigma: tuple[int, ...], g: int, n: int) -> BoundaryIndex:
    """Image of a boundary class under the marking relabelling i -> sigma[i-1]."""
    _check_permutation(sigma, n)
    return canonicalize_boundary(b.h, tuple(sigma[i - 1] for i in b.P), g, n)


def relabel_generator(gen: Generator, sigma: tuple[int, ...], g: int, n: int) -> Generator:
    if gen.kind == "K":
        _check_permutation(sigma, n)
        return K(sigma[gen.i - 1])
    if gen.kind == "delta":
        return delta(relabel_boundary(gen.boundary, sigma, g, n))
    return gen


def relabel_class(divclass: DivisorClass, sigma: tuple[int, ...]) -> DivisorClass:
    """Push a divisor class forward along a permutation of the markings."""
    coeffs = {
        relabel_generator(gen, sigma, divclass.g, divclass.n): c
        for gen, c in divclass.coeffs.items()
    }
    return DivisorClass(divclass.g, divclass.n, coeffs)
