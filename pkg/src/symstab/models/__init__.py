"""
Pydantic schemas for the JSON documents read and written by the CLI.
"""

from .bundle_models import (
    BundleSpec,
    CoveringSpec,
    LineClassSpec,
    PushforwardSpec,
    TorsionClassSpec,
    TripleSpec,
)
from .elm_models import PatternPointSpec, PatternSpec
from .report_models import ErrorBody, ErrorResponse, GateStatusesSpec, VerdictSpec
