"""
symstab - Main interface module.

This module gathers the decision procedures behind one facade and builds the
JSON-ready reports the command-line front end prints.
"""

import logging
from typing import Any, Dict, Mapping, Optional, Sequence

from .bundles.classifier import (
    Family,
    StabilityVerdict,
    classify,
    count_exceptional,
    etale_trivial,
    higher_gate,
    minimal_line_destabilized_k,
    reduction_rank,
    s3_line_subbundle_status,
    s3_rank2_status,
    twist_equivalence_candidates,
)
from .bundles.symalg import (
    Descriptor,
    PushforwardTwist,
    Split,
    TriplePresentation,
    as_split,
    determinant,
    orthogonality_values,
    tensor_square_split,
)
from .core.covering import (
    CoveringModel,
    PrymLocation,
    covering_kernel,
    enumerate_prym_torsion,
    make_cyclic_cover,
    prym_location,
    prym_pullback_intersection,
)
from .core.elm import PatternEntry, double_section_split_run, run_generation
from .core.surface import (
    NumClass,
    SurfaceContext,
    adjunction_genus,
    intersect,
    ksection_genus,
    ksection_zero_selfint_condition,
    line_subbundle_correspondence,
    relative_canonical_triviality,
)
from .core.torsion import TorsionVector
from .utils.codec import bundle_to_json

logger = logging.getLogger(__name__)


class SymStab:
    """
    Main interface class for symmetric-power stability questions.

    Every method returns a plain dictionary ready for JSON output.
    """

    FAMILIES = [f.value for f in Family]

    @staticmethod
    def classify(desc: Descriptor, k: int = 3) -> Dict[str, Any]:
        """
        Classify S^k E and attach the auxiliary reports that apply.

        Args:
            desc: Bundle descriptor or triple presentation
            k: Symmetric power

        Returns:
            Report with the verdict, and for k = 3 the line and rank-2 tests
        """
        report: Dict[str, Any] = {
            "bundle": bundle_to_json(desc),
            "k": k,
            "verdict": classify(desc, k).to_json(),
        }
        if k >= 2:
            report["reduction_rank"] = reduction_rank(k)
        if k == 3:
            report["line_subbundles"] = s3_line_subbundle_status(desc).to_json()
            report["rank_two"] = s3_rank2_status(desc).to_json()
        if isinstance(desc, PushforwardTwist) and as_split(desc) is None:
            report["minimal_k"] = minimal_line_destabilized_k(desc).to_json()
        if not isinstance(desc, TriplePresentation):
            report["etale"] = etale_trivial(desc).to_json()
        return report

    @staticmethod
    def describe(desc: Descriptor) -> Dict[str, Any]:
        """Canonical form of a descriptor with its determinant and orthogonality data."""
        report: Dict[str, Any] = {
            "bundle": bundle_to_json(desc),
            "orthogonal_values": sorted((v.to_json() for v in orthogonality_values(desc)),
                                        key=repr),
        }
        if isinstance(desc, (Split, PushforwardTwist)):
            report["determinant"] = determinant(desc).to_json()
            record = tensor_square_split(desc)
            report["tensor_square"] = {"ranks": [record.rank_lhs, list(record.rank_rhs)],
                                       "holds": record.holds}
        return report

    @staticmethod
    def count(genus: int, family: str, n: Optional[int] = None,
              budget: Optional[int] = None) -> Dict[str, Any]:
        return count_exceptional(genus, Family(family), n, budget).to_json()

    @staticmethod
    def gate(statuses: Mapping[int, StabilityVerdict]) -> Dict[str, Any]:
        return higher_gate(statuses).to_json()

    @staticmethod
    def twist(e: Descriptor, f: Descriptor) -> Dict[str, Any]:
        candidates = twist_equivalence_candidates(e, f)
        return {"candidates": [m.to_json() for m in candidates], "count": len(candidates)}

    @staticmethod
    def covering(genus: int, ell: TorsionVector, degree: int = 2,
                 budget: Optional[int] = None) -> Dict[str, Any]:
        cov = make_cyclic_cover(genus, ell, degree)
        return {
            "covering": cov.to_json(),
            "cover_genus": cov.cover_genus,
            "prym_rank": cov.prym_rank,
            "gluing_size": len(cov.gluing_subgroup()),
            "kernel": [a.to_json() for a in sorted(covering_kernel(cov, budget))],
        }

    @staticmethod
    def prym(genus: int, ell: TorsionVector, n: int = 2, listing: bool = False,
             budget: Optional[int] = None) -> Dict[str, Any]:
        """Prym n-torsion of the double cover defined by ``ell``, split by component."""
        cov: CoveringModel = make_cyclic_cover(genus, ell, 2)
        classes = enumerate_prym_torsion(cov, n, budget)
        locations = {loc.value: 0 for loc in (PrymLocation.PRYM0, PrymLocation.PRYM1)}
        for x in classes:
            locations[prym_location(cov, x).value] += 1
        report: Dict[str, Any] = {
            "covering": cov.to_json(),
            "n": n,
            "count": len(classes),
            "components": locations,
            "pullback_intersection": len(prym_pullback_intersection(cov, budget)),
        }
        if listing:
            report["classes"] = [x.to_json() for x in classes]
        return report

    @staticmethod
    def surface(action: str, genus: int, e: int, k: int = 1, b: int = 0,
                other: Optional[NumClass] = None) -> Dict[str, Any]:
        ctx = SurfaceContext(genus, e)
        if action == "intersect":
            d = NumClass(k, b)
            return {"intersection": intersect(ctx, d, other), "e": e}
        if action == "genus":
            return {"genus": ksection_genus(genus, k), "adjunction": adjunction_genus(
                SurfaceContext(genus, 0), NumClass(k, 0)), "k": k}
        corr = line_subbundle_correspondence(ctx, k, b)
        report: Dict[str, Any] = {"selfint": corr.selfint, "k": k, "b": b, "e": e,
                                  "relative_canonical_trivial":
                                      relative_canonical_triviality(ctx, k, b)}
        if e == 0:
            report["zero_selfint"] = ksection_zero_selfint_condition(ctx, k, b)
        return report

    @staticmethod
    def generation(genus: int, ell: TorsionVector, pattern: Sequence[PatternEntry],
                   n: Optional[int] = None) -> Dict[str, Any]:
        n = len(pattern) // 2 if n is None else n
        return run_generation(genus, ell, n, pattern).to_json()

    @staticmethod
    def split_run(genus: int, pattern: Sequence[PatternEntry],
                  n: Optional[int] = None) -> Dict[str, Any]:
        n = len(pattern) // 2 if n is None else n
        return double_section_split_run(genus, n, pattern).to_json()
