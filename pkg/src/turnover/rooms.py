"""Floor/ceiling/room integrals over a geodesic plane, and the cusp prism bound.

Coordinates are Fermi coordinates based at a geodesic plane: the metric is

    dh^2 + cosh^2(h) (dr^2 + sinh^2(r) dtheta^2),

with (r, theta) polar coordinates in the plane and h the perpendicular
height.  A floor F is a region of the plane, a ceiling is the graph of a
height function g over F, and the room is the solid between them.  The
quantities computed here:

    Vol(room)    = Int_F (sinh 2g + 2g)/4 dA
    Area(ceil.)  = Int_F cosh g sqrt((g_r^2 + cosh^2 g) sinh^2 r + g_theta^2) dr dtheta
    nice height  H with sinh 2H + 2H = 4 V / A_F  (equal-volume constant room)
    Area(nice)   = (A_F + sqrt(A_F^2 + 4 (2V - H A_F)^2)) / 2  =  A_F cosh^2 H

The isoperimetric theorem states Area(ceiling) >= Area(nice ceiling), and
the nice-room ratio 4 cosh^2 H / (sinh 2H + 2H) is minimized at the
positive solution of x = coth x, with minimum 2/H*; together these give
Vol(room) <= (H*/2) Area(ceiling).  ``isoperimetric_check`` recomputes all
four quantities for a given ceiling and raises ``InequalityViolation`` if
either inequality fails beyond tolerance, which would indicate a quadrature
bug.

The cusp prism bound is the one computation that needs a triangle floor: for
a triangle strictly inside the unit disk of the projective model,

    volume     = (1/2) Int_T dx dy / (1 - x^2 - y^2)          (solid above it)
    floor area = Int_T dx dy / (1 - x^2 - y^2)^(3/2)          (projective area)

and volume < floor_area / 2 pointwise.

2-D quadrature is a tensor-product rule with automatic order doubling:
Gauss-Legendre panels in the radial/affine directions and a periodic
midpoint rule in theta.  Ceiling evaluators must accept numpy arrays (all
built-in ceilings do).  Monte Carlo is used only as an independent oracle
in the tests, never here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError, InequalityViolation
from .numerics import Bracket, Tolerance, find_root, resolve_tolerance

__all__ = [
    "PolarDisk",
    "ProjectiveTriangle",
    "FloorRegion",
    "CeilingFunction",
    "RoomSpec",
    "room_volume",
    "ceiling_area",
    "nice_height",
    "nice_ceiling_area",
    "constant_H",
    "nice_room_ratio",
    "isoperimetric_check",
    "cusp_prism_check",
    "random_smooth_ceiling",
    "isoperimetric_sweep",
]


@dataclass(frozen=True)
class PolarDisk:
    """Disk floor of the given hyperbolic radius, centered at the origin."""

    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise DomainError(f"disk radius must be positive, got {self.radius}")

    @property
    def area(self) -> float:
        return 2.0 * math.pi * (math.cosh(self.radius) - 1.0)


@dataclass(frozen=True)
class ProjectiveTriangle:
    """Triangle with vertices strictly inside the unit disk (projective model)."""

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if len(self.vertices) != 3:
            raise DomainError("a triangle needs exactly three vertices")
        vs = tuple((float(x), float(y)) for x, y in self.vertices)
        for x, y in vs:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise DomainError("triangle vertices must be finite")
            if x * x + y * y >= 1.0:
                raise DomainError(f"vertex ({x}, {y}) not strictly inside the unit disk")
        if len({v for v in vs}) != 3:
            raise DomainError("triangle vertices must be pairwise distinct")
        (ax, ay), (bx, by), (cx, cy) = vs
        cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        if abs(cross) < 1e-14:
            raise DomainError("triangle vertices are collinear")
        object.__setattr__(self, "vertices", vs)

    @cached_property
    def area(self) -> float:
        """Hyperbolic area in the projective model (computed by quadrature)."""

        def projective_area(x, y):
            return (1.0 - x * x - y * y) ** -1.5

        return _triangle_quadrature(projective_area, self, resolve_tolerance(None))


FloorRegion = PolarDisk | ProjectiveTriangle


@dataclass(frozen=True)
class CeilingFunction:
    """Nonnegative height function g(r, theta) over a floor.

    ``height`` must be vectorized (accept numpy arrays and broadcast).  If
    ``gradient`` is omitted, central finite differences with step
    ``fd_step`` are used, one-sided at the r = 0 edge.
    """

    height: Callable
    gradient: Callable | None = None
    fd_step: float = 1e-6

    @staticmethod
    def constant(h: float) -> "CeilingFunction":
        if not (math.isfinite(h) and h >= 0.0):
            raise DomainError(f"constant ceiling height must be >= 0, got {h}")

        def zero_pair(r, theta):
            shape = np.broadcast_shapes(np.shape(r), np.shape(theta))
            z = np.zeros(shape)
            return z, z

        return CeilingFunction(height=lambda r, theta: h + 0.0 * (r + theta),
                               gradient=zero_pair)

    def heights(self, r, theta) -> np.ndarray:
        out = np.asarray(self.height(r, theta), dtype=float)
        shape = np.broadcast_shapes(np.shape(r), np.shape(theta), out.shape)
        return np.broadcast_to(out, shape)

    def gradients(self, r, theta) -> tuple[np.ndarray, np.ndarray]:
        shape = np.broadcast_shapes(np.shape(r), np.shape(theta))
        if self.gradient is not None:
            gr, gt = self.gradient(r, theta)
            return (
                np.broadcast_to(np.asarray(gr, dtype=float), shape),
                np.broadcast_to(np.asarray(gt, dtype=float), shape),
            )
        h = self.fd_step
        r = np.asarray(r, dtype=float)
        r_lo = np.maximum(r - h, 0.0)
        g_r = (self.heights(r + h, theta) - self.heights(r_lo, theta)) / (r + h - r_lo)
        g_t = (self.heights(r, theta + h) - self.heights(r, theta - h)) / (2.0 * h)
        return np.broadcast_to(g_r, shape), np.broadcast_to(g_t, shape)


@dataclass(frozen=True)
class RoomSpec:
    """Computed summary of one room: volume, areas, and the nice comparison."""

    floor: FloorRegion
    ceiling: CeilingFunction
    volume: float
    ceiling_area: float
    equivalent_height: float
    nice_area: float

    @property
    def margin(self) -> float:
        return self.ceiling_area - self.nice_area

    def to_record(self) -> dict:
        return {
            "V": self.volume,
            "A_C": self.ceiling_area,
            "A_S": self.nice_area,
            "H_equiv": self.equivalent_height,
            "margin": self.margin,
        }


# --- tensor-product quadrature ----------------------------------------------

_NODE_COUNTS = (16, 24, 32, 48, 64, 96, 128, 192, 256)


@lru_cache(maxsize=32)
def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _gauss_nodes(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = _leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def _disk_quadrature(integrand: Callable, radius: float, tol: Tolerance) -> float:
    """Integrate ``integrand(r, theta)`` over [0, radius] x [0, 2 pi].

    The integrand must already include every metric factor.  Gauss panels in
    r, periodic midpoints in theta, orders doubled until two sweeps agree.
    """
    previous = None
    for n in _NODE_COUNTS:
        r, wr = _gauss_nodes(n, 0.0, radius)
        m = 2 * n
        theta = (np.arange(m) + 0.5) * (2.0 * math.pi / m)
        values = integrand(r[:, None], theta[None, :])
        total = float((2.0 * math.pi / m) * wr @ values.sum(axis=1))
        if previous is not None and abs(total - previous) <= tol.bound(total):
            return total
        previous = total
    raise ConvergenceError("disk quadrature did not converge")


def _triangle_quadrature(
    point_fn: Callable, tri: ProjectiveTriangle, tol: Tolerance
) -> float:
    """Integrate ``point_fn(x, y)`` dx dy over the triangle.

    Uses the square-to-triangle collapse P(u, v) = A + u ((B-A) + v (C-B))
    on [0,1]^2, whose Jacobian is u * |cross(B-A, C-B)|.
    """
    (ax, ay), (bx, by), (cx, cy) = tri.vertices
    e1 = (bx - ax, by - ay)
    e2 = (cx - bx, cy - by)
    jac = abs(e1[0] * e2[1] - e1[1] * e2[0])
    previous = None
    for n in _NODE_COUNTS:
        u, wu = _gauss_nodes(n, 0.0, 1.0)
        v, wv = _gauss_nodes(n, 0.0, 1.0)
        U = u[:, None]
        V = v[None, :]
        x = ax + U * (e1[0] + V * e2[0])
        y = ay + U * (e1[1] + V * e2[1])
        values = point_fn(x, y) * U * jac
        total = float(wu @ values @ wv)
        if previous is not None and abs(total - previous) <= tol.bound(total):
            return total
        previous = total
    raise ConvergenceError("triangle quadrature did not converge")


def _require_disk(floor: FloorRegion) -> PolarDisk:
    if isinstance(floor, PolarDisk):
        return floor
    raise DomainError(
        "room integrals support disk floors only; triangle floors enter "
        "through cusp_prism_check"
    )


# --- room operations ---------------------------------------------------------


def room_volume(
    floor: FloorRegion, ceiling: CeilingFunction, tol: Tolerance | None = None
) -> float:
    """Volume Int_F (sinh 2g + 2g)/4 dA of the room under ``ceiling``."""
    disk = _require_disk(floor)
    tol = resolve_tolerance(tol)

    def integrand(r, theta):
        g = ceiling.heights(r, theta)
        return 0.25 * (np.sinh(2.0 * g) + 2.0 * g) * np.sinh(r)

    return _disk_quadrature(integrand, disk.radius, tol)


def ceiling_area(
    floor: FloorRegion, ceiling: CeilingFunction, tol: Tolerance | None = None
) -> float:
    """Area of the graph of ``ceiling`` over the floor."""
    disk = _require_disk(floor)
    tol = resolve_tolerance(tol)

    def integrand(r, theta):
        g = ceiling.heights(r, theta)
        g_r, g_t = ceiling.gradients(r, theta)
        cg = np.cosh(g)
        radicand = (g_r**2 + cg**2) * np.sinh(r) ** 2 + g_t**2
        return cg * np.sqrt(radicand)

    return _disk_quadrature(integrand, disk.radius, tol)


def nice_height(V: float, A_F: float, tol: Tolerance | None = None) -> float:
    """Height H >= 0 of the constant-ceiling room with volume V over area A_F.

    Solves sinh 2H + 2H = 4 V / A_F.
    """
    if not (V >= 0.0 and math.isfinite(V)):
        raise DomainError(f"volume must be >= 0, got {V}")
    if not (A_F > 0.0 and math.isfinite(A_F)):
        raise DomainError(f"floor area must be positive, got {A_F}")
    if V == 0.0:
        return 0.0
    tol = resolve_tolerance(tol)
    rhs = 4.0 * V / A_F

    def f(h: float) -> float:
        return math.sinh(2.0 * h) + 2.0 * h - rhs

    hi = 1.0
    while f(hi) <= 0.0:
        hi *= 2.0
        if hi > 1e6:
            raise ConvergenceError("nice height bracket expansion failed")
    return find_root(f, Bracket(0.0, hi), tol)


def nice_ceiling_area(V: float, A_F: float, tol: Tolerance | None = None) -> float:
    """Closed form (A_F + sqrt(A_F^2 + 4 (2V - H A_F)^2)) / 2 for the nice area.

    Agrees with A_F cosh^2(nice_height(V, A_F)) to tolerance.
    """
    H = nice_height(V, A_F, tol)
    return 0.5 * (A_F + math.sqrt(A_F**2 + 4.0 * (2.0 * V - H * A_F) ** 2))


@lru_cache(maxsize=8)
def _constant_H(tol: Tolerance) -> float:
    return find_root(lambda x: x - math.cosh(x) / math.sinh(x), Bracket(1.0, 2.0), tol)


def constant_H(tol: Tolerance | None = None) -> float:
    """The positive solution of x = coth x (about 1.199679), cached."""
    return _constant_H(resolve_tolerance(tol))


def nice_room_ratio(H: float) -> float:
    """Area-to-volume ratio 4 cosh^2 H / (sinh 2H + 2H) of the nice room.

    Evaluated in an exp(-2H)-scaled form so large heights neither overflow
    nor lose the limit value 2.  The minimum over H > 0 is 2/constant_H().
    """
    if not (H > 0.0 and math.isfinite(H)):
        raise DomainError(f"height must be positive, got {H}")
    u = math.exp(-2.0 * H)
    return (1.0 + u) ** 2 / (0.5 * (1.0 - u * u) + 2.0 * H * u)


def isoperimetric_check(
    floor: FloorRegion, ceiling: CeilingFunction, tol: Tolerance | None = None
) -> RoomSpec:
    """Compute V, Area(C), H, Area(S) and verify both proved inequalities.

    Raises ``InequalityViolation`` if Area(C) < Area(S) or
    V > (H*/2) Area(C) beyond tolerance; both comparisons get a tolerance
    band because the constant ceiling attains equality.
    """
    disk = _require_disk(floor)
    tol = resolve_tolerance(tol)
    V = room_volume(disk, ceiling, tol)
    A_C = ceiling_area(disk, ceiling, tol)
    A_F = disk.area
    H_eq = nice_height(V, A_F, tol)
    A_S = nice_ceiling_area(V, A_F, tol)
    if A_C < A_S - tol.bound(A_S):
        raise InequalityViolation(
            f"ceiling area {A_C} fell below nice area {A_S}; quadrature bug"
        )
    ceiling_bound = 0.5 * constant_H(tol) * A_C
    if V > ceiling_bound + tol.bound(V):
        raise InequalityViolation(
            f"volume {V} exceeded (H/2) * ceiling area {ceiling_bound}; quadrature bug"
        )
    return RoomSpec(
        floor=disk,
        ceiling=ceiling,
        volume=V,
        ceiling_area=A_C,
        equivalent_height=H_eq,
        nice_area=A_S,
    )


def cusp_prism_check(
    tri: ProjectiveTriangle, tol: Tolerance | None = None
) -> tuple[float, float]:
    """Volume above a projective-model triangle and the triangle's area.

    Returns (volume, floor_area) with
    volume = (1/2) Int dx dy / (1 - x^2 - y^2) and
    floor_area = Int dx dy / (1 - x^2 - y^2)^(3/2); asserts the strict
    pointwise inequality volume < floor_area / 2.
    """
    tol = resolve_tolerance(tol)

    def inverse_gap(x, y):
        return 1.0 / (1.0 - x * x - y * y)

    def projective_area(x, y):
        return (1.0 - x * x - y * y) ** -1.5

    volume = 0.5 * _triangle_quadrature(inverse_gap, tri, tol)
    floor_area = _triangle_quadrature(projective_area, tri, tol)
    if volume >= 0.5 * floor_area + tol.bound(volume):
        raise InequalityViolation(
            f"cusp prism volume {volume} reached half the floor area "
            f"{floor_area}; quadrature bug"
        )
    return volume, floor_area


# --- seeded sweeps -----------------------------------------------------------


def random_smooth_ceiling(rng: np.random.Generator) -> CeilingFunction:
    """A random bounded smooth ceiling with heights inside (0, 3).

    Base height in [0.6, 1.4] plus up to three angular modes with radial
    profiles tanh(r)^j, budgeted so the total wiggle stays below 85% of the
    base; the j-th power pins the mode to zero at the origin, keeping the
    graph smooth there.
    """
    base = float(rng.uniform(0.6, 1.4))
    n_modes = int(rng.integers(1, 4))
    freqs = rng.integers(1, 4, size=n_modes)
    phases = rng.uniform(0.0, 2.0 * math.pi, size=n_modes)
    raw = rng.uniform(0.2, 1.0, size=n_modes)
    amps = raw * (0.85 * base / raw.sum())

    def height(r, theta):
        total = base + 0.0 * (r + theta)
        for a, f, ph in zip(amps, freqs, phases):
            total = total + a * np.tanh(r) ** int(f) * np.cos(int(f) * theta + ph)
        return total

    return CeilingFunction(height=height)


def isoperimetric_sweep(
    seed: int, count: int, tol: Tolerance | None = None
) -> list[RoomSpec]:
    """Run ``count`` random ceilings over random disk floors through
    ``isoperimetric_check``; violations propagate as ``InequalityViolation``."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    specs = []
    for _ in range(count):
        floor = PolarDisk(float(rng.uniform(0.6, 1.4)))
        ceiling = random_smooth_ceiling(rng)
        specs.append(isoperimetric_check(floor, ceiling, tol))
    return specs
