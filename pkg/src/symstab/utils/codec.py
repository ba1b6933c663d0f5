"""
JSON encoding and decoding of domain values.

Rationals travel as ``"p/q"`` strings and vectors as arrays of them. Reports
are written with sorted keys so repeated runs produce identical bytes.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

from pydantic import BaseModel
from pydantic import ValidationError as SchemaError

from ..bundles.classifier import StabilityVerdict, VerdictStatus
from ..bundles.symalg import (
    Descriptor,
    FormalStable,
    LineClass,
    PushforwardTwist,
    Split,
    TriplePresentation,
)
from ..core.covering import CoveringModel, TorsionClass, make_cyclic_cover
from ..core.elm import ElmPoint, PatternEntry
from ..core.torsion import TorsionVector
from ..models import (
    BundleSpec,
    CoveringSpec,
    GateStatusesSpec,
    LineClassSpec,
    PatternSpec,
    TorsionClassSpec,
    VerdictSpec,
)
from .errors import ParseError

logger = logging.getLogger(__name__)


def dumps(report: Any) -> str:
    """Canonical JSON text of a report, newline terminated."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path: Union[str, Path]) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from None


def _validate(model: type, data: Any) -> BaseModel:
    try:
        return model.model_validate(data)
    except SchemaError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first.get("loc", ())) or "document"
        raise ParseError(f"{model.__name__} at {where}: {first.get('msg')}") from None


def covering_from_spec(spec: CoveringSpec) -> CoveringModel:
    return make_cyclic_cover(spec.genus, TorsionVector.from_json(spec.ell), spec.degree)


def class_from_spec(cov: CoveringModel, spec: TorsionClassSpec) -> TorsionClass:
    prym = TorsionVector.from_json(spec.prym) if spec.prym is not None else None
    return cov.torsion_class(TorsionVector.from_json(spec.base), prym)


def line_from_spec(spec: LineClassSpec) -> LineClass:
    return LineClass(spec.degree, TorsionVector.from_json(spec.torsion),
                     tuple(spec.formal.items()))


def bundle_from_json(data: Any) -> Descriptor:
    """Decode a bundle document into its descriptor, validating every invariant."""
    spec = _validate(BundleSpec, data)
    if spec.split is not None:
        return Split(line_from_spec(spec.split))
    if spec.pushforward is not None:
        push = spec.pushforward
        cov = covering_from_spec(push.cov)
        return PushforwardTwist(cov, class_from_spec(cov, push.r), line_from_spec(push.a))
    if spec.triple is not None:
        cov = covering_from_spec(spec.triple.cov)
        return TriplePresentation(cov, class_from_spec(cov, spec.triple.m))
    return FormalStable(spec.formal, spec.genus if spec.genus is not None else 2)


def bundle_to_json(desc: Descriptor) -> Dict[str, Any]:
    if isinstance(desc, Split):
        return {"split": desc.line.to_json()}
    if isinstance(desc, PushforwardTwist):
        return {"pushforward": {"cov": desc.cov.to_json(), "R": desc.r.to_json(),
                                "A": desc.a.to_json()}}
    if isinstance(desc, TriplePresentation):
        return {"triple": {"cov": desc.cov.to_json(), "M": desc.m.to_json()}}
    return {"formal": desc.tag, "genus": desc.genus}


def pattern_from_json(data: Any) -> List[PatternEntry]:
    """Decode a pattern given as ``{"points": [...]}`` or as a bare list."""
    if isinstance(data, list):
        data = {"points": data}
    spec = _validate(PatternSpec, data)
    return [PatternEntry(ElmPoint(p.point, p.fiber, p.partner), dict(p.incidence))
            for p in spec.points]


def statuses_from_json(data: Any) -> Dict[int, StabilityVerdict]:
    """Decode gate input, either ``{"statuses": {...}}`` or the bare mapping."""
    if isinstance(data, dict) and "statuses" not in data:
        data = {"statuses": data}
    spec = _validate(GateStatusesSpec, data)
    out = {}
    for power, item in spec.statuses.items():
        if isinstance(item, VerdictSpec):
            out[power] = StabilityVerdict(item.status, item.rule, power, scope=item.scope)
        else:
            out[power] = StabilityVerdict(VerdictStatus(item), "supplied", power)
    return out
