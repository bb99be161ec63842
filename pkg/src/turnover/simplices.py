"""Regular truncated 3-simplices and return-path volume bounds.

A regular truncated 3-simplex T_theta has four non-truncated faces meeting
at dihedral angle theta in [0, pi/3) and four equilateral triangular
truncation faces of angle theta; the distance 2r between truncation planes
satisfies cosh 2r = cos theta / (2 cos theta - 1).  Its volume is

    Vol(T_theta) = 8 L(pi/4) - 3 Integral_0^theta acosh(cos t/(2 cos t - 1)) dt

with L the Lobachevsky-type integral from ``numerics``; at theta = 0 this
is the regular ideal octahedron.  The density

    rho3(r) = Vol(T_theta) / (4 (pi - 3 theta))

converts a lower bound l on return-path length (geodesic arcs meeting the
totally geodesic boundary perpendicularly at both ends) into a volume lower
bound rho3(l/2) * Area(boundary).

The return-path length bound comes from a circle-packing estimate on the
boundary: a shortest return path along a singular axis of maximal order k,
or crossing an order-2 axis (folded into k = 1), forces

    theta = pi / (3 (1 - k * chi))        (closed path)
    theta = pi / (3 (1 - (k/2) * chi))    (open path)

where chi < 0 is the orbifold Euler characteristic of the boundary, and the
path is at least as long as the edge of T_theta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .numerics import Tolerance, integrate, lobachevsky, resolve_tolerance
from .trig import TurnoverSignature, require_hyperbolic

__all__ = [
    "THETA_MAX",
    "edge_from_angle",
    "angle_from_edge",
    "truncated_simplex_volume",
    "rho3",
    "TruncatedSimplexSpec",
    "ReturnPathCase",
    "return_path_theta",
    "miyamoto_lower_bound",
    "length_from_disk_radius",
]

THETA_MAX = math.pi / 3.0


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not (0.0 <= theta < THETA_MAX):
        raise DomainError(f"dihedral angle {theta} outside [0, pi/3)")
    return theta


def edge_from_angle(theta: float) -> float:
    """Edge length 2r of T_theta: acosh(cos theta / (2 cos theta - 1)).

    Zero at theta = 0 (ideal octahedron) and diverging as theta -> pi/3.
    """
    theta = _check_theta(theta)
    c = math.cos(theta)
    return math.acosh(max(c / (2.0 * c - 1.0), 1.0))


def angle_from_edge(length: float) -> float:
    """Inverse of ``edge_from_angle``: arccos(cosh l / (2 cosh l - 1))."""
    if not (length > 0.0):
        raise DomainError(f"edge length must be positive, got {length}")
    ch = math.cosh(length)
    return math.acos(min(ch / (2.0 * ch - 1.0), 1.0))


def _integrand(t: float) -> float:
    c = math.cos(t)
    return math.acosh(max(c / (2.0 * c - 1.0), 1.0))


@lru_cache(maxsize=8)
def _octahedron_volume(tol: Tolerance) -> float:
    return 8.0 * lobachevsky(math.pi / 4.0, tol)


def truncated_simplex_volume(theta: float, tol: Tolerance | None = None) -> float:
    """Volume of the regular truncated 3-simplex of dihedral angle theta."""
    theta = _check_theta(theta)
    tol = resolve_tolerance(tol)
    base = _octahedron_volume(tol)
    if theta == 0.0:
        return base
    return base - 3.0 * integrate(_integrand, 0.0, theta, tol)


def rho3(r: float, tol: Tolerance | None = None) -> float:
    """Volume-to-truncation-area density of the T_theta with half-edge r."""
    if not (r > 0.0):
        raise DomainError(f"half edge length must be positive, got {r}")
    theta = angle_from_edge(2.0 * r)
    if theta >= THETA_MAX:
        raise DomainError(f"half edge {r} puts the angle at or beyond pi/3")
    return truncated_simplex_volume(theta, tol) / (4.0 * (math.pi - 3.0 * theta))


@dataclass(frozen=True)
class TruncatedSimplexSpec:
    """A T_theta with its derived scalars bundled together."""

    theta: float
    edge_length: float
    volume: float
    rho3: float

    @classmethod
    def from_angle(cls, theta: float, tol: Tolerance | None = None) -> "TruncatedSimplexSpec":
        theta = _check_theta(theta)
        edge = edge_from_angle(theta)
        volume = truncated_simplex_volume(theta, tol)
        return cls(
            theta=theta,
            edge_length=edge,
            volume=volume,
            rho3=volume / (4.0 * (math.pi - 3.0 * theta)),
        )

    @classmethod
    def from_edge(cls, length: float, tol: Tolerance | None = None) -> "TruncatedSimplexSpec":
        return cls.from_angle(angle_from_edge(length), tol)


def _theta_for(sig: TurnoverSignature, k: int, closed: bool) -> float:
    """Return-path angle; the denominator is exact rational arithmetic.

    Keeping the denominator rational makes clean cases exact: the boundary
    (3,3,4) with k = 4 closed gives denominator 4 and theta = pi/4 on the
    nose.
    """
    chi = sig.chi_fraction()
    if chi >= 0:
        raise DomainError(f"boundary {sig} is not hyperbolic (chi >= 0)")
    weight = Fraction(k) if closed else Fraction(k, 2)
    denominator = 3 * (1 - weight * chi)
    return math.pi / float(denominator)


@dataclass(frozen=True)
class ReturnPathCase:
    """One (boundary, k, closed) configuration for the shortest return path.

    ``k`` is the maximal order of the singular axis containing the path,
    with k = 1 when the path is not in the singular locus (a path crossing
    an order-2 axis folds into k = 1 with the closed formula).
    """

    boundary_sig: TurnoverSignature
    k: int
    closed: bool
    theta: float
    min_length: float

    @property
    def chi(self) -> float:
        return self.boundary_sig.euler_char

    @classmethod
    def build(
        cls, boundary_sig: TurnoverSignature, k: int, closed: bool
    ) -> "ReturnPathCase":
        require_hyperbolic(boundary_sig)
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise DomainError(f"k must be a positive integer, got {k!r}")
        if k != 1 and k not in boundary_sig.orders:
            raise DomainError(f"k={k} is neither 1 nor a cone order of {boundary_sig}")
        theta = _theta_for(boundary_sig, k, closed)
        return cls(
            boundary_sig=boundary_sig,
            k=k,
            closed=bool(closed),
            theta=theta,
            min_length=edge_from_angle(theta),
        )


def return_path_theta(case: ReturnPathCase) -> float:
    """Angle of the comparison simplex for the given return-path case."""
    return _theta_for(case.boundary_sig, case.k, case.closed)


def miyamoto_lower_bound(
    boundary_area: float, length: float, tol: Tolerance | None = None
) -> float:
    """Volume lower bound rho3(l/2) * boundary_area from return-path length l."""
    if not (boundary_area > 0.0):
        raise DomainError(f"boundary area must be positive, got {boundary_area}")
    return rho3(length / 2.0, tol) * boundary_area


def length_from_disk_radius(disk_r: float) -> float:
    """Shortest return path forced by an embedded boundary disk of radius r.

    Two disjoint disks of radius r on the boundary push the hexagon bound to
    cosh l >= cosh 2r / (cosh 2r - 1); this returns the equality value.
    """
    if not (disk_r > 0.0):
        raise DomainError(f"disk radius must be positive, got {disk_r}")
    ch = math.cosh(2.0 * disk_r)
    if math.isinf(ch):
        raise DomainError(f"disk radius {disk_r} too large for float evaluation")
    if ch <= 1.0:
        raise DomainError(f"disk radius {disk_r} too small to resolve")
    return math.acosh(ch / (ch - 1.0))
