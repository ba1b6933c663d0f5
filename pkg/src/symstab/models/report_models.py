"""
Data models for verdict input and error output.
"""

from typing import Dict, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from ..bundles.classifier import VerdictStatus


class VerdictSpec(BaseModel):
    """A stability verdict supplied to the gate."""
    model_config = ConfigDict(extra="forbid")

    status: VerdictStatus = Field(..., description="Verdict status")
    rule: str = Field(default="supplied", description="Rule tag")
    scope: Optional[str] = Field(default=None, description="Restriction of a stable verdict")


class GateStatusesSpec(BaseModel):
    """Verdicts for the symmetric powers 2 through 6."""
    model_config = ConfigDict(extra="forbid")

    statuses: Dict[int, Union[VerdictStatus, VerdictSpec]] = Field(
        ...,
        description="Verdict per power, as a bare status or a verdict object"
    )


class ErrorBody(BaseModel):
    code: str = Field(..., description="Machine-readable error code")
    message: str = Field(..., description="Human-readable message")


class ErrorResponse(BaseModel):
    """Error document printed instead of a report."""
    error: ErrorBody
