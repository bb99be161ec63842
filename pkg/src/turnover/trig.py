"""Hyperbolic trigonometry of (p, q, r) triangles and turnovers.

A turnover is the double of a hyperbolic triangle with angles pi/p, pi/q,
pi/r along its boundary: a 2-sphere with three cone points.  This module
holds the signature type, the spherical/Euclidean/hyperbolic trichotomy,
Gauss-Bonnet areas, side lengths from the angle law of cosines, and the two
polygon laws (almost-right Lambert quadrilateral, all-right hexagon) that
the distance arguments downstream rely on.

Classification is done in exact rational arithmetic so that Euclidean
signatures such as (3, 3, 3) are never misclassified by float rounding.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

__all__ = [
    "MAX_CONE_ORDER",
    "TurnoverSignature",
    "GeometryClass",
    "classify",
    "turnover_area",
    "TriangleGeometry",
    "triangle_geometry",
    "lambert_leg_bound",
    "hexagon_side",
]

# Cone orders are capped so 1/p sums stay well-conditioned; real signatures
# are tiny.
MAX_CONE_ORDER = 10**6


@dataclass(frozen=True, order=True)
class TurnoverSignature:
    """Ordered triple of cone orders, normalized so p <= q <= r."""

    p: int
    q: int
    r: int

    def __post_init__(self) -> None:
        orders = (self.p, self.q, self.r)
        for n in orders:
            if not isinstance(n, int) or isinstance(n, bool):
                raise DomainError(f"cone order {n!r} is not an integer")
            if n < 2:
                raise DomainError(f"cone order {n} < 2")
            if n > MAX_CONE_ORDER:
                raise DomainError(f"cone order {n} exceeds {MAX_CONE_ORDER}")
        p, q, r = sorted(orders)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)

    @property
    def orders(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    def chi_fraction(self) -> Fraction:
        """Orbifold Euler characteristic 1/p + 1/q + 1/r - 1, exactly."""
        return (
            Fraction(1, self.p) + Fraction(1, self.q) + Fraction(1, self.r) - 1
        )

    @property
    def euler_char(self) -> float:
        return float(self.chi_fraction())

    def __iter__(self):
        return iter(self.orders)

    def __str__(self) -> str:
        return f"({self.p},{self.q},{self.r})"


class GeometryClass(enum.Enum):
    SPHERICAL = "spherical"
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"


def classify(sig: TurnoverSignature) -> GeometryClass:
    """Trichotomy by the sign of 1/p + 1/q + 1/r - 1 (exact)."""
    chi = sig.chi_fraction()
    if chi > 0:
        return GeometryClass.SPHERICAL
    if chi == 0:
        return GeometryClass.EUCLIDEAN
    return GeometryClass.HYPERBOLIC


def require_hyperbolic(sig: TurnoverSignature) -> None:
    kind = classify(sig)
    if kind is not GeometryClass.HYPERBOLIC:
        raise DomainError(f"signature {sig} is {kind.value}, not hyperbolic")


def turnover_area(sig: TurnoverSignature) -> float:
    """Gauss-Bonnet area 2*pi*(1 - 1/p - 1/q - 1/r) of a hyperbolic turnover."""
    require_hyperbolic(sig)
    return 2.0 * math.pi * float(-sig.chi_fraction())


@dataclass(frozen=True)
class TriangleGeometry:
    """Angles, side lengths, and areas of the hyperbolic (p, q, r) triangle.

    ``sides[i]`` is opposite ``angles[i]``, i.e. it joins the two vertices
    whose orders are the other two entries of the signature.  ``diameter``
    is the longest side; for a geodesic triangle the intrinsic diameter is
    realized between vertices.
    """

    signature: TurnoverSignature
    angles: tuple[float, float, float]
    sides: tuple[float, float, float]
    area_triangle: float
    area_turnover: float
    euler_char: float
    diameter: float

    def side_between(self, order_a: int, order_b: int) -> float:
        """Side joining a vertex of order ``order_a`` and one of ``order_b``.

        When orders repeat the choice is immaterial by symmetry.
        """
        orders = self.signature.orders
        want = sorted((order_a, order_b))
        for k in range(3):
            pair = sorted(orders[i] for i in range(3) if i != k)
            if pair == want:
                return self.sides[k]
        raise DomainError(
            f"no vertex pair of orders {order_a}, {order_b} in {self.signature}"
        )


def triangle_geometry(sig: TurnoverSignature) -> TriangleGeometry:
    """Solve the (p, q, r) triangle from its angles.

    Side opposite angle gamma satisfies
    cosh(side) = (cos gamma + cos alpha cos beta) / (sin alpha sin beta).
    """
    require_hyperbolic(sig)
    angles = tuple(math.pi / n for n in sig.orders)

    def side_opposite(k: int) -> float:
        gamma = angles[k]
        alpha, beta = (angles[i] for i in range(3) if i != k)
        num = math.cos(gamma) + math.cos(alpha) * math.cos(beta)
        den = math.sin(alpha) * math.sin(beta)
        return math.acosh(max(num / den, 1.0))

    sides = (side_opposite(0), side_opposite(1), side_opposite(2))
    area = turnover_area(sig)
    return TriangleGeometry(
        signature=sig,
        angles=angles,
        sides=sides,
        area_triangle=0.5 * area,
        area_turnover=area,
        euler_char=sig.euler_char,
        diameter=max(sides),
    )


def lambert_leg_bound(d: float) -> float:
    """Lower bound asinh(1/sinh(d)) for the perpendicular leg.

    In the almost-right quadrilateral configuration, a ray leaving one end
    of a segment of length ``d`` and staying disjoint from a perpendicular
    geodesic at the far end forces the adjacent leg to exceed this value.
    """
    if not (d > 0.0):
        raise DomainError(f"leg-bound base length must be positive, got {d}")
    return math.asinh(1.0 / math.sinh(d))


def hexagon_side(l: float, l_prime: float) -> float:
    """All-right hexagon law: side d opposite alternating sides l, l', l.

    cosh d = (cosh^2 l + cosh l') / sinh^2 l, which is at least
    cosh l / (cosh l - 1), with equality exactly at l' = l.
    """
    if not (l > 0.0 and l_prime > 0.0):
        raise DomainError("hexagon sides must be positive")
    ch = math.cosh(l)
    value = (ch * ch + math.cosh(l_prime)) / (math.sinh(l) ** 2)
    return math.acosh(max(value, 1.0))
