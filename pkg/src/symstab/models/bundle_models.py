"""
Data models for bundle descriptors and covering data.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class CoveringSpec(BaseModel):
    """An unramified cyclic covering given by its defining torsion class."""
    model_config = ConfigDict(extra="forbid")

    genus: int = Field(..., ge=2, description="Genus of the base curve")
    degree: int = Field(default=2, description="Covering degree, 2 or 3")
    ell: List[str] = Field(..., min_length=1, description="Defining class as p/q coordinates")


class TorsionClassSpec(BaseModel):
    """A torsion point of the covering Jacobian as (base, prym) coordinates."""
    model_config = ConfigDict(extra="forbid")

    base: List[str] = Field(..., min_length=1, description="Base coordinates, rank 2g")
    prym: Optional[List[str]] = Field(
        default=None,
        description="Prym block coordinates; omitted means zero"
    )


class LineClassSpec(BaseModel):
    """A line bundle class on the base curve."""
    model_config = ConfigDict(extra="forbid")

    degree: int = Field(default=0, description="Degree of the class")
    torsion: List[str] = Field(..., min_length=1, description="Torsion part, rank 2g")
    formal: Dict[str, int] = Field(
        default_factory=dict,
        description="Free symbols of infinite order with their exponents"
    )


class PushforwardSpec(BaseModel):
    """E = pi_* R tensor A."""
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    cov: CoveringSpec = Field(..., description="Double cover pi")
    r: TorsionClassSpec = Field(..., alias="R", description="Class R in the Prym")
    a: LineClassSpec = Field(..., alias="A", description="Twist A with 2A = ell")


class TripleSpec(BaseModel):
    """S^2 E = eta_* M for a cyclic triple cover eta."""
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    cov: CoveringSpec = Field(..., description="Triple cover eta")
    m: TorsionClassSpec = Field(..., alias="M", description="2-torsion class M on the cover")


class BundleSpec(BaseModel):
    """Exactly one of split, pushforward, formal or triple."""
    model_config = ConfigDict(extra="forbid")

    split: Optional[LineClassSpec] = Field(default=None, description="E = L^-1 + L")
    pushforward: Optional[PushforwardSpec] = Field(default=None, description="E = pi_* R tensor A")
    formal: Optional[str] = Field(default=None, description="Tag of a postulated stable bundle")
    genus: Optional[int] = Field(default=None, ge=2, description="Genus for a formal bundle")
    triple: Optional[TripleSpec] = Field(default=None, description="Presentation of S^2 E")

    @model_validator(mode="after")
    def _exactly_one_variant(self) -> "BundleSpec":
        given = [name for name in ("split", "pushforward", "formal", "triple")
                 if getattr(self, name) is not None]
        if len(given) != 1:
            raise ValueError(f"expected exactly one bundle variant, got {given or 'none'}")
        return self
