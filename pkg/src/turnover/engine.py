"""The boundary-exclusion pipeline: budgets, candidates, case scans,
refinements, volume exclusions, and the registry of cited orbifolds.

For an immersed turnover of signature ``sig``, cutting along the embedded
turnovers in its complement leaves a core orbifold N whose volume is below
H* Area(sig) (or Area(sig) when N is closed), with H* the positive solution
of x = coth x.  When the turnover group sits inside a reflection extension
the budgets halve, tracked by ``extension_index`` in {1, 2}.  The pipeline:

1. ``make_ledger``     -- the area/volume budgets for ``sig``.
2. ``boundary_candidates`` -- every turnover type that fits on the core
   boundary: all three cone orders from an admissible set and area strictly
   below the two-sided budget (projection onto the boundary strictly
   decreases area, so equality is excluded).
3. ``miyamoto_case_scan``  -- for each candidate boundary, enumerate the
   return-path cases (k, closed); each yields a volume lower bound
   rho3(l/2) * Area(boundary), and a case is Excluded when that bound
   exceeds the ledger's upper bound.
4. ``order4_refinement`` / ``order5_refinement`` -- sharper per-case bounds
   from configuration-specific inputs (an exactly known embedded disk
   radius, or a perpendicular separation whose doubling bounds a closed
   path).  The inputs are supplied by the caller since their derivations do
   not generalize; ``known_refinements`` returns the stock inputs for the
   immersed (2,4,5) analysis, where they come straight from triangle sides.
5. ``exclusion_by_volume`` -- an orbifold of known volume cannot contain an
   immersed turnover whose budget it exceeds.
6. ``analyze``         -- the whole chain, producing an ``AnalysisReport``.

Mirrored-triangle boundary pieces are not enumerated separately: each one
is doubly covered by a turnover, and they enter the piece count only
through the minimal boundary area pi/21.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable

from .collars import ConeOrderSet, refined_boundary_orders
from .errors import DomainError
from .numerics import Tolerance, resolve_tolerance
from .rooms import constant_H
from .simplices import (
    ReturnPathCase,
    angle_from_edge,
    length_from_disk_radius,
    miyamoto_lower_bound,
)
from .trig import (
    GeometryClass,
    TurnoverSignature,
    classify,
    lambert_leg_bound,
    require_hyperbolic,
    triangle_geometry,
    turnover_area,
)

__all__ = [
    "Verdict",
    "Conclusion",
    "BoundLedger",
    "make_ledger",
    "boundary_candidates",
    "CaseRecord",
    "miyamoto_case_scan",
    "order4_refinement",
    "order5_refinement",
    "exclusion_by_volume",
    "RefinementInput",
    "RefinementRecord",
    "AnalyzeOptions",
    "AnalysisReport",
    "known_refinements",
    "analyze",
    "RegistryEntry",
    "registry",
    "registry_json",
]

# Minimal area of one boundary piece: twice the (2,3,7) mirrored triangle.
MIN_BOUNDARY_PIECE_DEFECT = Fraction(1, 42)  # area = 2*pi*defect = pi/21


class Verdict(enum.Enum):
    EXCLUDED = "Excluded"
    SURVIVES = "Survives"


class Conclusion(enum.Enum):
    NO_EMBEDDED_TURNOVERS = "NoEmbeddedTurnovers"
    CANDIDATES_REMAIN = "CandidatesRemain"


@dataclass(frozen=True)
class BoundLedger:
    """Area/volume budgets for an immersed turnover of type ``sig``.

    ``two_sided_budget`` caps the total boundary area of the core,
    ``upper_bound_with_boundary`` its volume when the boundary is nonempty,
    ``upper_bound_no_boundary`` when it is empty; all divided by the
    extension index.  ``max_boundary_pieces`` counts how many pi/21 pieces
    fit under the budget (computed in exact rational arithmetic, since an
    exact integer ratio must not round down).
    """

    sig: TurnoverSignature
    extension_index: int
    area: float
    two_sided_budget: float
    upper_bound_with_boundary: float
    upper_bound_no_boundary: float
    max_boundary_pieces: int


def make_ledger(sig: TurnoverSignature, extension_index: int = 1) -> BoundLedger:
    require_hyperbolic(sig)
    if extension_index not in (1, 2):
        raise DomainError(f"extension index must be 1 or 2, got {extension_index}")
    area = turnover_area(sig)
    no_boundary = area / extension_index
    defect = -sig.chi_fraction()
    pieces = (2 * defect / extension_index) / MIN_BOUNDARY_PIECE_DEFECT
    return BoundLedger(
        sig=sig,
        extension_index=extension_index,
        area=area,
        two_sided_budget=2.0 * no_boundary,
        upper_bound_with_boundary=constant_H() * no_boundary,
        upper_bound_no_boundary=no_boundary,
        max_boundary_pieces=math.floor(pieces),
    )


def _budget_defect(ledger: BoundLedger) -> Fraction:
    """The two-sided budget as an exact multiple of 2*pi."""
    return 2 * -ledger.sig.chi_fraction() / ledger.extension_index


def boundary_candidates(
    ledger: BoundLedger, orders: ConeOrderSet | Iterable[int]
) -> list[tuple[TurnoverSignature, float]]:
    """Hyperbolic signatures over ``orders`` with area strictly below budget.

    ``orders`` may be any iterable of cone orders (an empty one yields an
    empty list).  The area comparison is exact (rational angle defects), so
    signatures that exactly exhaust the budget are excluded, never admitted
    by a rounding accident.  Sorted by ascending area, ties by signature.
    """
    budget = _budget_defect(ledger)
    found = []
    for triple in combinations_with_replacement(sorted(set(orders)), 3):
        sig = TurnoverSignature(*triple)
        if classify(sig) is not GeometryClass.HYPERBOLIC:
            continue
        defect = -sig.chi_fraction()
        if defect < budget:
            found.append((sig, turnover_area(sig)))
    found.sort(key=lambda item: (-item[0].chi_fraction(), item[0].orders))
    return found


@dataclass(frozen=True)
class CaseRecord:
    """One scanned return-path case with its volume lower bound and verdict."""

    case: ReturnPathCase
    lower_bound: float
    verdict: Verdict

    def to_dict(self) -> dict:
        return {
            "boundary": list(self.case.boundary_sig.orders),
            "k": self.case.k,
            "closed": self.case.closed,
            "theta": self.case.theta,
            "lower_bound": self.lower_bound,
            "verdict": self.verdict.value,
        }


def _forced_closed(boundary: TurnoverSignature, k: int) -> bool:
    """A singular return path of order k must close when the boundary has a
    single cone point of that order (both endpoints are that point)."""
    return k != 1 and boundary.orders.count(k) == 1


def miyamoto_case_scan(
    ledger: BoundLedger,
    boundary: TurnoverSignature,
    *,
    skip_forced_closed: bool = False,
    tol: Tolerance | None = None,
) -> list[CaseRecord]:
    """Enumerate return-path cases for ``boundary`` against the ledger.

    k ranges over {1} plus the cone orders of the boundary, each with
    closed in {True, False}.  With ``skip_forced_closed`` the geometrically
    impossible open cases (k > 1 occurring once on the boundary) are
    omitted; by default everything is enumerated and reported.
    """
    require_hyperbolic(boundary)
    area = turnover_area(boundary)
    records = []
    for k in [1] + sorted(set(boundary.orders)):
        for closed in (True, False):
            if not closed and skip_forced_closed and _forced_closed(boundary, k):
                continue
            case = ReturnPathCase.build(boundary, k, closed)
            bound = miyamoto_lower_bound(area, case.min_length, tol)
            verdict = (
                Verdict.EXCLUDED
                if bound > ledger.upper_bound_with_boundary
                else Verdict.SURVIVES
            )
            records.append(CaseRecord(case=case, lower_bound=bound, verdict=verdict))
    return records


def _refined_verdict(
    ledger: BoundLedger, boundary: TurnoverSignature, length: float, tol: Tolerance | None
) -> tuple[float, Verdict]:
    bound = miyamoto_lower_bound(turnover_area(boundary), length, tol)
    verdict = (
        Verdict.EXCLUDED
        if bound > ledger.upper_bound_with_boundary
        else Verdict.SURVIVES
    )
    return bound, verdict


def order4_refinement(
    ledger: BoundLedger,
    boundary: TurnoverSignature,
    disk_radius: float,
    tol: Tolerance | None = None,
) -> tuple[float, Verdict]:
    """Bound from an exactly known embedded disk around a boundary cone point.

    Two disjoint radius-``disk_radius`` disks force the return path length
    up through the hexagon law, then the usual density bound applies.
    """
    length = length_from_disk_radius(disk_radius)
    return _refined_verdict(ledger, boundary, length, tol)


def order5_refinement(
    ledger: BoundLedger,
    boundary: TurnoverSignature,
    separation: float,
    tol: Tolerance | None = None,
) -> tuple[float, Verdict]:
    """Bound from a perpendicular separation: a closed path connecting two
    cone points through it is at least twice the separation."""
    if not (separation > 0.0):
        raise DomainError(f"separation must be positive, got {separation}")
    return _refined_verdict(ledger, boundary, 2.0 * separation, tol)


def exclusion_by_volume(
    orbifold_volume: float,
    sig: TurnoverSignature,
    has_embedded_turnovers: bool,
) -> Verdict:
    """Can an orbifold of the given volume contain an immersed ``sig`` turnover?

    Without embedded turnovers the core is the whole orbifold and its volume
    is capped by Area(sig); otherwise the cap is H* Area(sig).  Excluded
    means the stated volume exceeds the cap, a contradiction.
    """
    if not (orbifold_volume > 0.0 and math.isfinite(orbifold_volume)):
        raise DomainError(f"orbifold volume must be positive, got {orbifold_volume}")
    cap = turnover_area(sig)
    if has_embedded_turnovers:
        cap *= constant_H()
    return Verdict.EXCLUDED if cap < orbifold_volume else Verdict.SURVIVES


# --- full pipeline -----------------------------------------------------------


@dataclass(frozen=True)
class RefinementInput:
    """Caller-supplied geometric input for one refinement.

    ``kind`` is "disk" (an embedded disk radius around the order-``k`` cone
    point) or "separation" (a perpendicular separation to double).
    """

    boundary: TurnoverSignature
    k: int
    kind: str
    value: float
    label: str = ""

    def __post_init__(self) -> None:
        if self.kind not in ("disk", "separation"):
            raise DomainError(f"unknown refinement kind {self.kind!r}")
        if not (self.value > 0.0):
            raise DomainError("refinement input must be positive")


@dataclass(frozen=True)
class RefinementRecord:
    input: RefinementInput
    theta: float
    lower_bound: float
    verdict: Verdict

    def to_dict(self) -> dict:
        return {
            "boundary": list(self.input.boundary.orders),
            "k": self.input.k,
            "kind": self.input.kind,
            "input": self.input.value,
            "label": self.input.label,
            "theta": self.theta,
            "lower_bound": self.lower_bound,
            "verdict": self.verdict.value,
        }


@dataclass(frozen=True)
class AnalyzeOptions:
    refinements: tuple[RefinementInput, ...] = ()
    skip_forced_closed: bool = True


def known_refinements(sig: TurnoverSignature) -> tuple[RefinementInput, ...]:
    """Stock refinement inputs justified for specific signatures.

    For an immersed (2,4,5) turnover whose boundary candidate is again a
    (2,4,5): the disk around the order-4 cone point reaches exactly the
    order-2 cone point (the short triangle side), and a closed path through
    the order-5 points is twice the quadrilateral leg bound of the long
    side.  Both values come from ``triangle_geometry``, not stored floats.
    No other signature has a worked-out configuration, so the default is
    empty.
    """
    if sig.orders == (2, 4, 5):
        geo = triangle_geometry(sig)
        return (
            RefinementInput(
                boundary=sig,
                k=4,
                kind="disk",
                value=geo.side_between(2, 4),
                label="order-4 cone disk",
            ),
            RefinementInput(
                boundary=sig,
                k=5,
                kind="separation",
                value=lambert_leg_bound(geo.side_between(4, 5)),
                label="order-5 axis separation",
            ),
        )
    return ()


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the pipeline established for one immersed signature."""

    ledger: BoundLedger
    admissible_orders: ConeOrderSet
    candidates: tuple[tuple[TurnoverSignature, float], ...]
    cases: tuple[CaseRecord, ...]
    refinements: tuple[RefinementRecord, ...]
    conclusion: Conclusion

    def to_dict(self) -> dict:
        ledger = self.ledger
        return {
            "signature": list(ledger.sig.orders),
            "extension_index": ledger.extension_index,
            "bounds": {
                "with_boundary": ledger.upper_bound_with_boundary,
                "no_boundary": ledger.upper_bound_no_boundary,
                "budget": ledger.two_sided_budget,
                "max_pieces": ledger.max_boundary_pieces,
            },
            "orders": list(self.admissible_orders),
            "candidates": [
                {"sig": list(sig.orders), "area": area}
                for sig, area in self.candidates
            ],
            "cases": [record.to_dict() for record in self.cases],
            "refinements": [record.to_dict() for record in self.refinements],
            "conclusion": self.conclusion.value,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def analyze(
    sig: TurnoverSignature,
    extension_index: int = 1,
    options: AnalyzeOptions | None = None,
    tol: Tolerance | None = None,
) -> AnalysisReport:
    """Run the full exclusion pipeline for an immersed ``sig`` turnover.

    When ``options`` is omitted, the stock refinements from
    ``known_refinements`` are applied.  The conclusion is
    ``NoEmbeddedTurnovers`` exactly when every scanned case of every
    candidate boundary ends Excluded, counting a surviving case as Excluded
    when a refinement for the same boundary and axis order excludes it.
    """
    if options is None:
        options = AnalyzeOptions(refinements=known_refinements(sig))
    tol = resolve_tolerance(tol)
    ledger = make_ledger(sig, extension_index)
    orders = refined_boundary_orders(sig)
    candidates = tuple(boundary_candidates(ledger, orders))

    all_cases: list[CaseRecord] = []
    for candidate, _ in candidates:
        all_cases.extend(
            miyamoto_case_scan(
                ledger,
                candidate,
                skip_forced_closed=options.skip_forced_closed,
                tol=tol,
            )
        )

    refinement_records = []
    for ref in options.refinements:
        if ref.kind == "disk":
            bound, verdict = order4_refinement(ledger, ref.boundary, ref.value, tol)
            length = length_from_disk_radius(ref.value)
        else:
            bound, verdict = order5_refinement(ledger, ref.boundary, ref.value, tol)
            length = 2.0 * ref.value
        refinement_records.append(
            RefinementRecord(
                input=ref,
                theta=angle_from_edge(length),
                lower_bound=bound,
                verdict=verdict,
            )
        )

    excluded_by_refinement = {
        (rec.input.boundary, rec.input.k)
        for rec in refinement_records
        if rec.verdict is Verdict.EXCLUDED
    }

    def settled(record: CaseRecord) -> bool:
        if record.verdict is Verdict.EXCLUDED:
            return True
        return (record.case.boundary_sig, record.case.k) in excluded_by_refinement

    conclusion = (
        Conclusion.NO_EMBEDDED_TURNOVERS
        if all(settled(record) for record in all_cases)
        else Conclusion.CANDIDATES_REMAIN
    )
    return AnalysisReport(
        ledger=ledger,
        admissible_orders=orders,
        candidates=candidates,
        cases=tuple(all_cases),
        refinements=tuple(refinement_records),
        conclusion=conclusion,
    )


# --- registry of cited orbifolds ----------------------------------------------


@dataclass(frozen=True)
class RegistryEntry:
    """A cited orbifold with its volume and its known immersed turnovers.

    Volumes are stored constants carried over from the sources that compute
    them; this package never derives tetrahedron volumes.  The extension
    index records whether each cited turnover group sits inside a
    reflection extension (halving its budgets), and ``has_embedded``
    whether the orbifold is known to contain embedded turnovers (switching
    which budget applies).
    """

    name: str
    kind: str  # "tetrahedral" | "prism"
    edge_orders: tuple[int, ...] | None
    prism_orders: tuple[int | None, ...] | None
    volume: float | None
    volume_cited: bool
    known_immersed: tuple[TurnoverSignature, ...]
    known_embedded: tuple[TurnoverSignature, ...] = ()
    extension_index: int = 1
    has_embedded: bool = False

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "edge_orders": list(self.edge_orders) if self.edge_orders else None,
            "prism_orders": list(self.prism_orders) if self.prism_orders else None,
            "volume": self.volume,
            "volume_cited": self.volume_cited,
            "known_immersed": [list(s.orders) for s in self.known_immersed],
            "known_embedded": [list(s.orders) for s in self.known_embedded],
            "extension_index": self.extension_index,
            "has_embedded": self.has_embedded,
        }


def _sig(p: int, q: int, r: int) -> TurnoverSignature:
    return TurnoverSignature(p, q, r)


_REGISTRY: tuple[RegistryEntry, ...] = (
    RegistryEntry(
        name="Q3",
        kind="tetrahedral",
        edge_orders=(2, 4, 2, 3, 5, 3),
        prism_orders=None,
        volume=0.071770,
        volume_cited=True,
        known_immersed=(_sig(2, 4, 5),),
        extension_index=2,
        has_embedded=False,
    ),
    RegistryEntry(
        name="Q10",
        kind="tetrahedral",
        edge_orders=(2, 4, 2, 3, 6, 3),
        prism_orders=None,
        volume=0.211446,
        volume_cited=True,
        known_immersed=(_sig(2, 4, 6),),
        extension_index=2,
        has_embedded=False,
    ),
    RegistryEntry(
        name="O8",
        kind="tetrahedral",
        edge_orders=(2, 3, 4, 2, 3, 5),
        prism_orders=None,
        volume=0.717306,
        volume_cited=True,
        known_immersed=(_sig(3, 4, 5), _sig(4, 5, 5)),
        extension_index=1,
        has_embedded=False,
    ),
    RegistryEntry(
        name="O9",
        kind="tetrahedral",
        edge_orders=(2, 3, 5, 2, 3, 5),
        prism_orders=None,
        volume=1.004261,
        volume_cited=True,
        known_immersed=(_sig(3, 5, 5), _sig(5, 5, 5)),
        extension_index=1,
        has_embedded=False,
    ),
    RegistryEntry(
        name="Q(2,4,7)",
        kind="prism",
        edge_orders=None,
        prism_orders=(2, 4, 7),
        volume=0.325947,
        volume_cited=True,
        known_immersed=(_sig(2, 4, 7),),
        known_embedded=(_sig(2, 3, 7),),
        extension_index=2,
        has_embedded=True,
    ),
    RegistryEntry(
        name="Q(2,4,inf)",
        kind="prism",
        edge_orders=None,
        prism_orders=(2, 4, None),
        volume=0.501921,
        volume_cited=True,
        # The roof turnover has an ideal cone point, outside the finite
        # signature model; only the volume is carried.
        known_immersed=(),
        extension_index=2,
        has_embedded=True,
    ),
)


def registry() -> tuple[RegistryEntry, ...]:
    """The static registry of cited orbifolds."""
    return _REGISTRY


def registry_json() -> list[dict]:
    return [entry.to_dict() for entry in registry()]
