"""
Data models for elementary-transformation patterns.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class PatternPointSpec(BaseModel):
    """One point of an elementary-transformation pattern."""
    model_config = ConfigDict(extra="forbid")

    point: str = Field(..., min_length=1, description="Point id; repeating an id continues an infinitely-near chain")
    fiber: Optional[str] = Field(default=None, description="Fiber id, defaults to the point id")
    partner: Optional[str] = Field(default=None, description="Id of the conjugate point under the cover involution")
    incidence: Dict[str, int] = Field(
        default_factory=dict,
        description="Multiplicity of tracked curves (C0, Cinf, B) at the point"
    )


class PatternSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    points: List[PatternPointSpec] = Field(default_factory=list, description="Points in order")
