"""
Elementary-transformation simulator.

An elementary transformation at a point x of the ruled surface blows up x
and blows down the strict transform of the fiber through it. A tracked
curve D with multiplicity mu at x and fiber degree k changes by
D^2 -> D^2 - mu^2 + (k - mu)^2, and the degree e of the bundle drops by
one. Points are opaque ids; a repeated id stands for the next point of an
infinitely-near chain.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from .surface import FIBER, NumClass, SurfaceContext, intersect
from .torsion import TorsionVector, order
from ..bundles.symalg import LineClass, Stability, SymDecomp, split_stability
from ..utils.errors import (
    ConjugatePairViolation,
    InvalidArgument,
    InvalidPattern,
    MultiplicityExceedsDegree,
    NotTwoTorsion,
    RankMismatch,
    SameFiberConflict,
)

logger = logging.getLogger(__name__)

ZERO_SECTION = "C0"
INFINITY_SECTION = "Cinf"
BISECTION = "B"


@dataclass(frozen=True)
class TrackedCurve:
    """
    A curve k*C1 + b*f followed through the transformations.

    ``subbundle_degree`` is only kept for sections: the degree of the line
    subbundle the section cuts out, equal to (e - selfint) / 2.
    """

    id: str
    k: int
    b: int
    selfint: int
    subbundle_degree: Optional[int] = None

    @property
    def cls(self) -> NumClass:
        return NumClass(self.k, self.b)


@dataclass(frozen=True)
class ElmPoint:
    """A point of the surface: its id, the fiber it lies in and its conjugate under the cover."""

    point_id: str
    fiber_id: Optional[str] = None
    partner_id: Optional[str] = None

    @property
    def fiber(self) -> str:
        return self.fiber_id if self.fiber_id is not None else self.point_id


@dataclass(frozen=True)
class ElmStep:
    point_id: str
    fiber_id: str
    incidence: Tuple[Tuple[str, int], ...]

    def to_json(self) -> dict:
        return {"point": self.point_id, "fiber": self.fiber_id,
                "incidence": {cid: mu for cid, mu in self.incidence}}


@dataclass(frozen=True)
class ElmState:
    g: int
    e: int
    curves: Tuple[TrackedCurve, ...]
    transcript: Tuple[ElmStep, ...] = ()
    guard_active: bool = False
    used_points: FrozenSet[str] = frozenset()
    used_fibers: FrozenSet[Tuple[str, str]] = frozenset()

    @property
    def context(self) -> SurfaceContext:
        return SurfaceContext(self.g, self.e)

    def curve(self, curve_id: str) -> TrackedCurve:
        for c in self.curves:
            if c.id == curve_id:
                return c
        raise InvalidPattern(f"no tracked curve {curve_id!r}")

    def intersection(self, a: str, b: str) -> int:
        """Intersection number of two tracked curves; the id ``f`` names the fiber class."""
        ca = FIBER if a == "f" else self.curve(a).cls
        cb = FIBER if b == "f" else self.curve(b).cls
        return intersect(self.context, ca, cb)


def _section(curve_id: str) -> TrackedCurve:
    return TrackedCurve(curve_id, 1, 0, 0, 0)


def init_decomposable(g: int, ell: TorsionVector) -> ElmState:
    """
    Start from P(O + M), M = ell of order 2.

    The two minimal sections and the bisection B' ~ 2 C0 all have
    self-intersection zero.
    """
    if ell.rank != 2 * g:
        raise RankMismatch(f"ell has rank {ell.rank}, expected {2 * g}")
    if order(ell) != 2:
        raise NotTwoTorsion(f"{ell} has order {order(ell)}, not 2")
    state = ElmState(g, 0, (_section(ZERO_SECTION), _section(INFINITY_SECTION),
                            TrackedCurve(BISECTION, 2, 0, 0)))
    logger.debug("decomposable start g=%d, C0.B = %d", g, state.intersection(ZERO_SECTION, BISECTION))
    return state


def init_trivial(g: int) -> ElmState:
    """Start from P(O + O) with its two disjoint sections C0 and Cinf."""
    return ElmState(g, 0, (_section(ZERO_SECTION), _section(INFINITY_SECTION)))


def _check_guard(state: ElmState, point: ElmPoint) -> None:
    if point.point_id in state.used_points:
        return
    if point.partner_id is not None and point.partner_id in state.used_points:
        raise ConjugatePairViolation(
            f"{point.point_id} is conjugate to the already used point {point.partner_id}")
    for used_id, fiber in state.used_fibers:
        if fiber == point.fiber and used_id != point.point_id:
            raise ConjugatePairViolation(
                f"{point.point_id} and {used_id} are distinct points over fiber {fiber}")


def elm_step(state: ElmState, incidence: Mapping[str, int],
             point: Optional[ElmPoint] = None) -> ElmState:
    """
    Apply one elementary transformation.

    Args:
        state: Current state
        incidence: Multiplicity of each tracked curve at the point; missing ids count as 0
        point: Point data, used for the transcript and the conjugate-pair guard

    Returns:
        The new state with e lowered by one

    Raises:
        MultiplicityExceedsDegree: If some multiplicity is larger than the curve's fiber degree
        ConjugatePairViolation: If the guard is active and the point is conjugate to a used one
    """
    known = {c.id for c in state.curves}
    unknown = set(incidence) - known
    if unknown:
        raise InvalidPattern(f"unknown curves in incidence: {sorted(unknown)}")
    if point is None:
        point = ElmPoint(f"x{len(state.transcript) + 1}")
    if state.guard_active:
        _check_guard(state, point)

    e = state.e - 1
    curves: List[TrackedCurve] = []
    for c in state.curves:
        mu = int(incidence.get(c.id, 0))
        if mu < 0:
            raise InvalidPattern(f"negative multiplicity {mu} for {c.id}")
        if mu > c.k:
            raise MultiplicityExceedsDegree(f"{c.id} has fiber degree {c.k}, multiplicity {mu}")
        selfint = c.selfint - mu * mu + (c.k - mu) ** 2
        sub = None if c.k != 1 else (c.subbundle_degree if mu == 1 else c.subbundle_degree - 1)
        curves.append(TrackedCurve(c.id, c.k, c.b + c.k - mu, selfint, sub))

    step = ElmStep(point.point_id, point.fiber,
                   tuple(sorted((c.id, int(incidence.get(c.id, 0))) for c in state.curves)))
    return replace(
        state,
        e=e,
        curves=tuple(curves),
        transcript=state.transcript + (step,),
        used_points=state.used_points | {point.point_id},
        used_fibers=state.used_fibers | {(point.point_id, point.fiber)},
    )


@dataclass(frozen=True)
class PatternEntry:
    point: ElmPoint
    incidence: Mapping[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class GenerationReport:
    g: int
    n: int
    ell: TorsionVector
    state: ElmState
    bisection_selfint: int
    section_selfint: int
    section_subbundle_degree: int
    final_e: int
    twist_degree: int
    det_degree: int
    det_torsion: TorsionVector
    claim: str

    def to_json(self) -> dict:
        return {
            "genus": self.g,
            "n": self.n,
            "ell": self.ell.to_json(),
            "final": {
                "e": self.final_e,
                "B_selfint": self.bisection_selfint,
                "C0_selfint": self.section_selfint,
                "C0_subbundle_degree": self.section_subbundle_degree,
            },
            "determinant": {
                "twist_degree": self.twist_degree,
                "degree": self.det_degree,
                "torsion": self.det_torsion.to_json(),
            },
            "claim": self.claim,
            "transcript": [s.to_json() for s in self.state.transcript],
        }


def run_generation(g: int, ell: TorsionVector, n: int,
                   pattern: Sequence[PatternEntry]) -> GenerationReport:
    """
    Transform P(O + M) at 2n points of the bisection B'.

    Every point lies on B' with multiplicity one and off both minimal
    sections. The result, twisted by a degree-n class, is orthogonal with
    values in M.
    """
    if n < 0:
        raise InvalidArgument(f"n must be nonnegative, got {n}")
    if len(pattern) != 2 * n:
        raise InvalidPattern(f"pattern has {len(pattern)} points, expected {2 * n}")
    state = replace(init_decomposable(g, ell), guard_active=True)
    for entry in pattern:
        incidence = {BISECTION: 1, ZERO_SECTION: 0, INFINITY_SECTION: 0}
        incidence.update(entry.incidence)
        if incidence[BISECTION] != 1:
            raise InvalidPattern(f"{entry.point.point_id} must lie on the smooth bisection "
                                 f"with multiplicity 1")
        if incidence[ZERO_SECTION] or incidence[INFINITY_SECTION]:
            raise InvalidPattern(f"{entry.point.point_id} lies on a minimal section, "
                                 f"which is disjoint from the bisection")
        state = elm_step(state, incidence, entry.point)

    bisection = state.curve(BISECTION)
    section = state.curve(ZERO_SECTION)
    logger.info("generation run g=%d n=%d ended with e=%d, B^2=%d, C0^2=%d",
                g, n, state.e, bisection.selfint, section.selfint)
    return GenerationReport(
        g=g,
        n=n,
        ell=ell,
        state=state,
        bisection_selfint=bisection.selfint,
        section_selfint=section.selfint,
        section_subbundle_degree=section.subbundle_degree,
        final_e=state.e,
        twist_degree=n,
        det_degree=state.e + 2 * n,
        det_torsion=ell,
        claim="orthogonal_in_M" if n > 0 else "split",
    )


@dataclass(frozen=True)
class SplitRunReport:
    g: int
    n: int
    state: ElmState
    degrees: Dict[str, int]
    twisted_degrees: Dict[str, int]
    verdict: Stability

    def to_json(self) -> dict:
        return {
            "genus": self.g,
            "n": self.n,
            "subbundle_degrees": dict(self.degrees),
            "twisted_degrees": dict(self.twisted_degrees),
            "verdict": self.verdict.value,
            "transcript": [s.to_json() for s in self.state.transcript],
        }


def double_section_split_run(g: int, n: int, pattern: Sequence[PatternEntry]) -> SplitRunReport:
    """
    Transform P(O + O) at 2n points, each on exactly one of C0, Cinf.

    A point on one section lowers the subbundle degree of the other one, so
    the result is the split bundle of the two section subbundles. Twisting
    by a class of degree n brings the determinant back to degree zero.
    """
    if n < 0:
        raise InvalidArgument(f"n must be nonnegative, got {n}")
    if len(pattern) != 2 * n:
        raise InvalidPattern(f"pattern has {len(pattern)} points, expected {2 * n}")
    fibers: Dict[str, set] = {ZERO_SECTION: set(), INFINITY_SECTION: set()}
    state = init_trivial(g)
    for entry in pattern:
        incidence = {ZERO_SECTION: 0, INFINITY_SECTION: 0}
        incidence.update(entry.incidence)
        on = [cid for cid in (ZERO_SECTION, INFINITY_SECTION) if incidence[cid] == 1]
        if len(on) != 1 or sum(incidence.values()) != 1:
            raise InvalidPattern(f"{entry.point.point_id} must lie on exactly one of C0, Cinf")
        other = INFINITY_SECTION if on[0] == ZERO_SECTION else ZERO_SECTION
        if entry.point.fiber in fibers[other]:
            raise SameFiberConflict(f"fiber {entry.point.fiber} carries points of both sections")
        fibers[on[0]].add(entry.point.fiber)
        state = elm_step(state, incidence, entry.point)

    degrees = {cid: state.curve(cid).subbundle_degree for cid in (ZERO_SECTION, INFINITY_SECTION)}
    twisted = {cid: d + n for cid, d in degrees.items()}
    rank = 2 * g
    decomp = SymDecomp(tuple(LineClass(d, TorsionVector.zero(rank)) for d in twisted.values()))
    return SplitRunReport(g, n, state, degrees, twisted, split_stability(decomp))
