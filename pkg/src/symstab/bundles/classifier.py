"""
Decision procedures for the stability of symmetric powers S^k E.

Every verdict carries a rule tag naming the argument that produced it, so
reports can be audited. Nothing here guesses: when the available data does
not settle a question the verdict is ``unknown`` with a reason.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .symalg import (
    FormalStable,
    PushforwardTwist,
    Split,
    Stability,
    TriplePresentation,
    as_split,
    split_stability,
    sym_power_split,
)
from ..core.covering import (
    CoveringModel,
    TorsionClass,
    enumerate_prym_torsion,
    in_pullback_image,
    involution,
    make_double_cover,
    pullback,
)
from ..core.torsion import TorsionVector, enumerate_torsion, torsion_count
from ..utils.config import check_budget
from ..utils.errors import (
    IncompleteInput,
    InvalidArgument,
    InvalidDescriptor,
    MissingPresentation,
    RankMismatch,
)

logger = logging.getLogger(__name__)

Subject = Union[Split, PushforwardTwist, FormalStable, TriplePresentation]


class Rule(str, Enum):
    """Tags naming the argument behind a verdict."""
    DECOMPOSABLE_POWER = "decomposable-power"
    POSTULATED = "postulated-stable"
    ORTHOGONAL_SQUARE = "orthogonal-iff-square-semistable"
    PULLBACK_SPLITS = "pushforward-of-pullback-splits"
    PUSHFORWARD_STABLE = "pushforward-of-non-pullback-stable"
    PRYM_SIX_TORSION = "prym-six-torsion-line-witness"
    LINE_TEST_NEGATIVE = "no-six-torsion-line-witness"
    TRIPLE_COVER = "triple-cover-rank-two-witness"
    TRIPLE_COVER_SQUARE = "triple-cover-square-test"
    UPWARD = "line-certificate-propagates-upward"
    DOWNWARD = "line-certificate-propagates-downward"
    RANK_TWO_EXHAUSTED = "rank-two-destabilizers-exhausted"
    SUFFICIENT_TORSION = "prym-2k-torsion-suffices"
    LOWER_POWERS_EXCLUDED = "lower-powers-excluded-by-order"
    TWIST_CONSTRAINT = "twist-order-divides-2(k-1)"
    SIXTH_POWER_GATE = "powers-up-to-six-gate"


class VerdictStatus(str, Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly_semistable"
    NOT_STABLE = "not_stable"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class StabilityVerdict:
    """
    Outcome of a stability question about S^k E.

    ``witness`` holds JSON-ready data (destabilizing lines, rank-2 data or a
    covering); ``reason`` explains an unknown verdict; ``scope`` narrows a
    stable verdict when only some subbundles were ruled out.
    """

    status: VerdictStatus
    rule: str
    k: Optional[int] = None
    witness: Optional[Dict[str, Any]] = None
    reason: Optional[str] = None
    scope: Optional[str] = None

    @property
    def is_stable(self) -> bool:
        return self.status == VerdictStatus.STABLE and self.scope is None

    @property
    def is_failure(self) -> bool:
        return self.status in (VerdictStatus.NOT_STABLE, VerdictStatus.STRICTLY_SEMISTABLE)

    def to_json(self) -> dict:
        out: Dict[str, Any] = {"status": self.status.value, "rule": self.rule}
        for key in ("k", "witness", "reason", "scope"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out


def _from_stability(stability: Stability) -> VerdictStatus:
    return {
        Stability.STABLE: VerdictStatus.STABLE,
        Stability.STRICTLY_SEMISTABLE: VerdictStatus.STRICTLY_SEMISTABLE,
        Stability.UNSTABLE: VerdictStatus.NOT_STABLE,
    }[stability]


def _decomposable_verdict(split: Split, k: int) -> StabilityVerdict:
    decomp = sym_power_split(split.line, k)
    status = _from_stability(split_stability(decomp))
    top = max(decomp.summands, key=lambda s: s.degree)
    return StabilityVerdict(status, Rule.DECOMPOSABLE_POWER.value, k,
                            witness={"summand": top.to_json(), "rank": decomp.rank})


def _pushforward_witness(desc: PushforwardTwist) -> Dict[str, Any]:
    witness: Dict[str, Any] = {"values_in": desc.cov.ell.to_json(), "R": desc.r.to_json()}
    split = as_split(desc)
    witness["bundle"] = "stable" if split is None else "split"
    if split is not None:
        witness["summands"] = [(-split.line).to_json(), split.line.to_json()]
    return witness


def s2_status(desc: Subject) -> StabilityVerdict:
    """
    Stability of S^2 E.

    Split bundles are decided on their decomposition. A twisted pushforward
    is orthogonal with values in ell, so its square is strictly semistable;
    the witness also records whether E itself is stable or splits. A triple
    presentation eta_* M is stable exactly when M is not a pullback.
    """
    if isinstance(desc, Split):
        return _decomposable_verdict(desc, 2)
    if isinstance(desc, PushforwardTwist):
        return StabilityVerdict(VerdictStatus.STRICTLY_SEMISTABLE, Rule.ORTHOGONAL_SQUARE.value, 2,
                                witness=_pushforward_witness(desc))
    if isinstance(desc, FormalStable):
        return StabilityVerdict(VerdictStatus.STABLE, Rule.POSTULATED.value, 2,
                                witness={"tag": desc.tag})
    if isinstance(desc, TriplePresentation):
        if in_pullback_image(desc.cov, desc.m):
            return StabilityVerdict(VerdictStatus.STRICTLY_SEMISTABLE,
                                    Rule.TRIPLE_COVER_SQUARE.value, 2,
                                    witness={"M": desc.m.to_json(), "pullback": True})
        return StabilityVerdict(VerdictStatus.STABLE, Rule.TRIPLE_COVER_SQUARE.value, 2)
    raise InvalidDescriptor(f"cannot classify {type(desc).__name__}")


def s3_line_subbundle_status(desc: Subject) -> StabilityVerdict:
    """
    Whether S^3 E has a destabilizing line subbundle.

    For E = pi_* R tensor A with R in the Prym and not a pullback, this
    happens exactly when the order of R divides 6; the twist then
    automatically satisfies 2A = ell and 4A = 0.
    """
    if isinstance(desc, Split):
        return _decomposable_verdict(desc, 3)
    if isinstance(desc, PushforwardTwist):
        if in_pullback_image(desc.cov, desc.r):
            return StabilityVerdict(VerdictStatus.NOT_STABLE, Rule.PULLBACK_SPLITS.value, 3,
                                    witness=_pushforward_witness(desc))
        r_order = desc.r.order()
        twist_ok = desc.a.torsion * 2 == desc.cov.ell and (desc.a.torsion * 4).is_zero()
        if 6 % r_order == 0 and r_order > 2 and twist_ok:
            return StabilityVerdict(
                VerdictStatus.NOT_STABLE, Rule.PRYM_SIX_TORSION.value, 3,
                witness={"R": desc.r.to_json(), "order": r_order, "A": desc.a.to_json(),
                         "cover": desc.cov.to_json()})
        return StabilityVerdict(VerdictStatus.STABLE, Rule.LINE_TEST_NEGATIVE.value, 3,
                                witness={"order": r_order}, scope="line_subbundles")
    return StabilityVerdict(VerdictStatus.UNKNOWN, Rule.LINE_TEST_NEGATIVE.value, 3,
                            reason="no line-subbundle data for this presentation")


@dataclass(frozen=True)
class MinimalKReport:
    """
    Interval bounding the least k for which S^k E has a destabilizing line.

    ``sufficient_k`` is certified, ``necessary_floor`` is the smallest k the
    order of R does not exclude. ``beyond_square_k`` is the first
    certified power above the square.
    """

    order: int
    sufficient_k: Optional[int]
    necessary_floor: int
    beyond_square_k: Optional[int]
    twist_constraint_holds: bool
    certificates: Tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "sufficient_k": self.sufficient_k,
            "necessary_floor": self.necessary_floor,
            "beyond_square_k": self.beyond_square_k,
            "twist_constraint_holds": self.twist_constraint_holds,
            "certificates": list(self.certificates),
        }


def _least_k(order: int, start: int) -> int:
    k = start
    while (2 * k) % order:
        k += 1
    return k


def minimal_line_destabilized_k(desc: PushforwardTwist) -> MinimalKReport:
    """
    Bounds on the first symmetric power destabilized by a line subbundle.

    With m the order of R, the Prym class lies in J_{2k} as soon as m
    divides 2k, which certifies k. Powers below 3 are excluded unless m
    divides 4, and powers below 4 unless m divides 6.

    Args:
        desc: A stable twisted pushforward

    Returns:
        The (sufficient_k, necessary_floor) report with its rule tags

    Raises:
        InvalidDescriptor: If E is not a twisted pushforward or is not stable
    """
    if not isinstance(desc, PushforwardTwist):
        raise InvalidDescriptor("minimal destabilized power needs a twisted pushforward")
    if in_pullback_image(desc.cov, desc.r):
        raise InvalidDescriptor("R is a pullback, so E is not stable")
    m = desc.r.order()
    sufficient = _least_k(m, 2)
    if sufficient == 2:
        floor = 2
    elif 6 % m == 0:
        floor = 3
    else:
        floor = 4
    beyond = _least_k(m, 3)
    twist_ok = (desc.a.torsion * (2 * (sufficient - 1))).is_zero()
    certificates = [Rule.SUFFICIENT_TORSION.value, Rule.LOWER_POWERS_EXCLUDED.value]
    if twist_ok:
        certificates.append(Rule.TWIST_CONSTRAINT.value)
    return MinimalKReport(m, sufficient, floor, beyond, twist_ok, tuple(certificates))


def s3_rank2_status(subject: Optional[Subject]) -> StabilityVerdict:
    """
    Whether S^3 E is destabilized in rank 2.

    A triple presentation S^2 E = eta_* M with M not a pullback gives the two
    destabilizing subbundles E tensor L^-1 and E tensor L, L the order-3
    class of eta. A strictly semistable square propagates upward. A
    postulated bundle with stable square has no rank-2 destabilizer.

    Raises:
        MissingPresentation: If neither a presentation nor a descriptor is given
    """
    if subject is None:
        raise MissingPresentation("rank-2 test needs a triple presentation or a bundle descriptor")
    if isinstance(subject, TriplePresentation):
        if not subject.m.is_zero() and not in_pullback_image(subject.cov, subject.m):
            ell = subject.cov.ell
            return StabilityVerdict(
                VerdictStatus.NOT_STABLE, Rule.TRIPLE_COVER.value, 3,
                witness={"L": ell.to_json(), "M": subject.m.to_json(),
                         "subbundles": ["E(x)L^-1", "E(x)L"],
                         "subbundle_twists": [(-ell).to_json(), ell.to_json()]})
        return StabilityVerdict(VerdictStatus.NOT_STABLE, Rule.UPWARD.value, 3,
                                witness={"from_k": 2, "M": subject.m.to_json()})
    square = s2_status(subject)
    if square.is_failure:
        return StabilityVerdict(VerdictStatus.NOT_STABLE, Rule.UPWARD.value, 3,
                                witness={"from_k": 2, "square": square.status.value})
    if isinstance(subject, FormalStable):
        return StabilityVerdict(VerdictStatus.STABLE, Rule.RANK_TWO_EXHAUSTED.value, 3)
    raise MissingPresentation(f"no rank-2 test applies to {type(subject).__name__}")


def reduction_rank(k: int, lower_power_stable: bool = True) -> int:
    """
    Rank in which S^k E can first be destabilized.

    When S^(k-1) E is stable only rank (k+1)/2 (k odd) or k/2 (k even) is
    possible; without that hypothesis (k+1)//2 is an upper bound.
    """
    if k < 2:
        raise InvalidArgument(f"k must be at least 2, got {k}")
    if lower_power_stable and k % 2 == 0:
        return k // 2
    return (k + 1) // 2


def propagate_line_certificate(k: int, limit: int) -> Dict[int, StabilityVerdict]:
    """Non-stability certificates implied by a line destabilizing S^k E, for k-1 .. limit."""
    if k < 2 or limit < k:
        raise InvalidArgument(f"need 2 <= k <= limit, got k={k}, limit={limit}")
    out = {l: StabilityVerdict(VerdictStatus.NOT_STABLE, Rule.UPWARD.value, l,
                               witness={"from_k": k, "twisted_power": l - k})
           for l in range(k, limit + 1)}
    if k - 1 >= 2:
        out[k - 1] = StabilityVerdict(VerdictStatus.NOT_STABLE, Rule.DOWNWARD.value, k - 1,
                                      witness={"from_k": k})
    return out


def coupling_consistent(verdicts: Mapping[int, StabilityVerdict]) -> bool:
    """
    Check upward and downward propagation across a family of verdicts.

    A line certificate at k must not coexist with a stable verdict at k-1
    or at any l > k.
    """
    line_rules = {Rule.PRYM_SIX_TORSION.value, Rule.DECOMPOSABLE_POWER.value,
                  Rule.ORTHOGONAL_SQUARE.value, Rule.UPWARD.value}
    for k, verdict in verdicts.items():
        if not verdict.is_failure or verdict.rule not in line_rules:
            continue
        for other_k, other in verdicts.items():
            below = other_k == k - 1 and other_k >= 2
            if (other_k >= k or below) and other.is_stable:
                return False
    return True


def classify(desc: Subject, k: int) -> StabilityVerdict:
    """Stability of S^k E from whichever rules apply at power k."""
    if k < 1:
        raise InvalidArgument(f"k must be positive, got {k}")
    split = as_split(desc) if isinstance(desc, (Split, PushforwardTwist)) else None
    if split is not None:
        return _decomposable_verdict(split, k)
    if k == 1:
        if isinstance(desc, PushforwardTwist):
            return StabilityVerdict(VerdictStatus.STABLE, Rule.PUSHFORWARD_STABLE.value, 1)
        if isinstance(desc, FormalStable):
            return StabilityVerdict(VerdictStatus.STABLE, Rule.POSTULATED.value, 1)
        return StabilityVerdict(VerdictStatus.UNKNOWN, Rule.TRIPLE_COVER.value, 1,
                                reason="a presentation of the square does not determine E")
    square = s2_status(desc)
    if k == 2:
        return square
    if isinstance(desc, PushforwardTwist):
        witness = {"from_k": 2, "square": square.status.value}
        if k == 3:
            line = s3_line_subbundle_status(desc)
            if line.status == VerdictStatus.NOT_STABLE:
                witness["line"] = line.witness
        return StabilityVerdict(VerdictStatus.NOT_STABLE, Rule.UPWARD.value, k, witness=witness)
    if k == 3:
        return s3_rank2_status(desc)
    if square.is_failure:
        return StabilityVerdict(VerdictStatus.NOT_STABLE, Rule.UPWARD.value, k,
                                witness={"from_k": 2, "square": square.status.value})
    return StabilityVerdict(VerdictStatus.UNKNOWN, Rule.SIXTH_POWER_GATE.value, k,
                            reason="powers above 3 are only decided through the gate")


class GateOutcome(str, Enum):
    ALL_STABLE = "all_stable"
    FAILS = "fails"
    UNDECIDED = "undecided"


GATE_CASES = {
    2: (1, "S^2 E destabilized by a line subbundle"),
    3: (2, "S^3 E destabilized by a rank-2 subbundle"),
    4: (3, "S^4 E destabilized by a rank-2 subbundle"),
    6: (4, "S^6 E destabilized by a rank-3 subbundle"),
}


@dataclass(frozen=True)
class GateVerdict:
    outcome: GateOutcome
    failing_power: Optional[int] = None
    case: Optional[int] = None
    description: Optional[str] = None
    inconsistent: bool = False
    rule: str = Rule.SIXTH_POWER_GATE.value

    def to_json(self) -> dict:
        out: Dict[str, Any] = {"outcome": self.outcome.value, "rule": self.rule,
                               "inconsistent": self.inconsistent}
        if self.failing_power is not None:
            out["failing_power"] = self.failing_power
            out["case"] = self.case
            out["description"] = self.description
        return out


def higher_gate(statuses: Mapping[int, StabilityVerdict]) -> GateVerdict:
    """
    Decide stability of every S^k E from the powers 2 through 6.

    All five stable means every power is stable. Otherwise the first failing
    power is reported with its case. A first failure at power 5 cannot occur
    for a genuine bundle and is flagged inconsistent.

    Raises:
        IncompleteInput: If any power from 2 to 6 is missing
    """
    missing = [m for m in range(2, 7) if m not in statuses]
    if missing:
        raise IncompleteInput(f"gate needs verdicts for powers 2..6, missing {missing}")
    for m in range(2, 7):
        if statuses[m].is_failure:
            case, description = GATE_CASES.get(m, (None, "S^5 E fails while lower powers do not"))
            logger.info("gate fails at power %d", m)
            return GateVerdict(GateOutcome.FAILS, m, case, description, inconsistent=(m == 5))
    if any(statuses[m].status == VerdictStatus.UNKNOWN or statuses[m].scope is not None
           for m in range(2, 7)):
        return GateVerdict(GateOutcome.UNDECIDED)
    return GateVerdict(GateOutcome.ALL_STABLE)


@dataclass(frozen=True)
class EtaleReport:
    trivial: bool
    cover_degree: Optional[int] = None
    finite: bool = False
    reason: Optional[str] = None

    def to_json(self) -> dict:
        out: Dict[str, Any] = {"trivial": self.trivial, "finite": self.finite}
        if self.cover_degree is not None:
            out["cover_degree"] = self.cover_degree
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def etale_trivial(desc: Subject) -> EtaleReport:
    """
    Whether E becomes trivial on a finite unramified cover, with the cover degree.

    For a twisted pushforward the pullback of E to B is X^-1 + X with
    X = R + pi^* A, trivialized after a further cyclic cover of order(X).
    Étale-trivial bundles are exactly the finite ones.
    """
    if isinstance(desc, Split):
        line = desc.line
        if not line.is_torsion():
            return EtaleReport(False, reason="line class has a free or positive-degree part")
        degree = line.order()
        return EtaleReport(True, degree, finite=True)
    if isinstance(desc, PushforwardTwist):
        x = desc.r + pullback(desc.cov, desc.a.torsion)
        return EtaleReport(True, 2 * x.order(), finite=True)
    if isinstance(desc, FormalStable):
        return EtaleReport(False, reason="postulated bundle has no torsion data")
    raise InvalidDescriptor(f"étale triviality is not defined for {type(desc).__name__}")


class Family(str, Enum):
    DOUBLE_COVERS = "double-covers"
    PRYM_JN = "prym-jn"
    S2_LOCUS = "s2-locus"
    S3_LINE = "s3-line"


@dataclass(frozen=True)
class CountReport:
    family: Family
    genus: int
    figures: Dict[str, Any]

    def to_json(self) -> dict:
        return {"family": self.family.value, "genus": self.genus, "figures": dict(self.figures)}


def _standard_ell(genus: int) -> TorsionVector:
    return TorsionVector.basis(2 * genus, 0, 2)


def _involution_orbits(cov: CoveringModel, classes: Sequence[TorsionClass]) -> Tuple[int, int]:
    """Number of involution orbits and of fixed points among ``classes``."""
    seen = set()
    orbits = fixed = 0
    for x in classes:
        if x in seen:
            continue
        y = involution(cov, x)
        seen.update({x, y})
        orbits += 1
        fixed += int(x == y)
    return orbits, fixed


def count_exceptional(genus: int, family: Family, n: Optional[int] = None,
                      budget: Optional[int] = None) -> CountReport:
    """
    Torsion-level counts of the exceptional families.

    Coverings are all modelled on the standard class (1/2, 0, ..., 0); per
    covering figures apply to every nontrivial 2-torsion class.

    Args:
        genus: Genus of the base curve
        family: Which family to count
        n: Torsion exponent, required for ``prym-jn`` and ``s2-locus``
        budget: Enumeration budget

    Returns:
        A report of named figures, raw and identified counts side by side
    """
    coverings = torsion_count(2 * genus, 2) - 1
    if family == Family.DOUBLE_COVERS:
        nonzero = sum(1 for a in enumerate_torsion(2 * genus, 2, budget) if not a.is_zero())
        return CountReport(family, genus, {"coverings": nonzero, "formula": coverings})

    cov = make_double_cover(genus, _standard_ell(genus))
    if family in (Family.PRYM_JN, Family.S2_LOCUS):
        if n is None or n < 1:
            raise InvalidArgument(f"family {family.value} needs a positive --n")
        classes = enumerate_prym_torsion(cov, n, budget)
        if family == Family.PRYM_JN:
            return CountReport(family, genus, {"n": n, "per_covering": len(classes),
                                               "coverings": coverings,
                                               "total": len(classes) * coverings})
        orbits, fixed = _involution_orbits(cov, classes)
        paired = (len(classes) + fixed) // 2
        return CountReport(family, genus, {"n": n, "raw": len(classes), "fixed": fixed,
                                           "paired": paired, "orbits": orbits,
                                           "identity_holds": paired == orbits})

    if family == Family.S3_LINE:
        six = enumerate_prym_torsion(cov, 6, budget)
        two = set(enumerate_prym_torsion(cov, 2, budget))
        witnesses = [x for x in six if x not in two]
        orbits, fixed = _involution_orbits(cov, witnesses)
        check_budget(torsion_count(2 * genus, 4), budget, "twist choices")
        twists = sum(1 for a in enumerate_torsion(2 * genus, 4, budget) if a * 2 == cov.ell)
        return CountReport(family, genus, {"raw": len(witnesses), "paired": orbits,
                                           "fixed": fixed, "twist_multiplicity": twists,
                                           "coverings": coverings})
    raise InvalidArgument(f"unknown family {family!r}")


def twist_equivalence_candidates(e: Subject, f: Subject) -> List[TorsionVector]:
    """
    2-torsion classes M on C for which E and F tensor M have matching data.

    Split bundles match when F's line is L or L^-1 up to M. Stable twisted
    pushforwards over the same cover match when X' is X + pi^* M or its
    conjugate, with X = R + pi^* A. Postulated bundles only match themselves.
    """
    if isinstance(e, TriplePresentation) or isinstance(f, TriplePresentation):
        raise InvalidDescriptor("twist comparison needs bundle descriptors")
    if e.rank != f.rank:
        raise RankMismatch(f"bundles of rank {e.rank} and {f.rank}")
    if isinstance(e, FormalStable) or isinstance(f, FormalStable):
        return [TorsionVector.zero(e.rank)] if e == f else []

    split_e, split_f = as_split(e), as_split(f)
    if split_e is not None and split_f is not None:
        candidates = set()
        for m in (split_f.line - split_e.line, -split_f.line - split_e.line):
            if m.is_torsion() and (m.torsion * 2).is_zero():
                candidates.add(m.torsion)
        return sorted(candidates)
    if split_e is not None or split_f is not None or e.cov != f.cov:
        return []

    cov = e.cov
    x = e.r + pullback(cov, e.a.torsion)
    target = f.r + pullback(cov, f.a.torsion)
    out = []
    for m in enumerate_torsion(cov.rank, 2):
        shifted = x + pullback(cov, m)
        if target in (shifted, involution(cov, shifted)):
            out.append(m)
    return sorted(out)
