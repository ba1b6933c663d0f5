"""
Numerical divisor calculus on the ruled surface X = P(E) over a genus-g curve.

Classes are written s*C1 + b*f with C1^2 = e = deg E, C1.f = 1 and f^2 = 0.
"""

from dataclasses import dataclass
from enum import Enum

from ..bundles.symalg import Stability
from ..utils.errors import DegreeNotZero, InvalidArgument


@dataclass(frozen=True, order=True)
class NumClass:
    s: int
    b: int

    def __add__(self, other: "NumClass") -> "NumClass":
        return NumClass(self.s + other.s, self.b + other.b)

    def __neg__(self) -> "NumClass":
        return NumClass(-self.s, -self.b)

    def __sub__(self, other: "NumClass") -> "NumClass":
        return self + (-other)

    def __mul__(self, n: int) -> "NumClass":
        return NumClass(self.s * n, self.b * n)

    __rmul__ = __mul__


FIBER = NumClass(0, 1)
SECTION = NumClass(1, 0)


@dataclass(frozen=True)
class SurfaceContext:
    g: int
    e: int = 0

    def __post_init__(self):
        if self.g < 2:
            raise InvalidArgument(f"base genus must be at least 2, got {self.g}")


class ConePosition(str, Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class LineSubbundleCorrespondence:
    """The k-section attached to a line subbundle of S^k E and its self-intersection."""
    k: int
    degree: int
    cls: NumClass
    selfint: int


def intersect(ctx: SurfaceContext, d1: NumClass, d2: NumClass) -> int:
    return d1.s * d2.s * ctx.e + d1.s * d2.b + d2.s * d1.b


def self_intersection(ctx: SurfaceContext, d: NumClass) -> int:
    return intersect(ctx, d, d)


def _require_k(k: int) -> None:
    if k < 1:
        raise InvalidArgument(f"k must be at least 1, got {k}")


def ksection_zero_selfint_condition(ctx: SurfaceContext, k: int, b: int) -> bool:
    """Whether the k-section class k*C1 + b*f has self-intersection zero (e = 0 only)."""
    if ctx.e != 0:
        raise DegreeNotZero(f"zero self-intersection test needs e = 0, got e = {ctx.e}")
    _require_k(k)
    return self_intersection(ctx, NumClass(k, b)) == 0


def ksection_genus(g: int, k: int) -> int:
    """Genus kg - k + 1 of a smooth k-section with zero self-intersection."""
    _require_k(k)
    return k * g - k + 1


def relative_canonical_triviality(ctx: SurfaceContext, k: int, b: int) -> bool:
    """Numerical test D.((k-2)C1 + bf) = 0 for D = kC1 + bf."""
    _require_k(k)
    return intersect(ctx, NumClass(k, b), NumClass(k - 2, b)) == 0


def line_subbundle_correspondence(ctx: SurfaceContext, k: int, degree: int) -> LineSubbundleCorrespondence:
    _require_k(k)
    cls = NumClass(k, degree)
    return LineSubbundleCorrespondence(k, degree, cls, self_intersection(ctx, cls))


def canonical_class(ctx: SurfaceContext) -> NumClass:
    """K_X = -2 C1 + (2g - 2 + e) f."""
    return NumClass(-2, 2 * ctx.g - 2 + ctx.e)


def adjunction_genus(ctx: SurfaceContext, d: NumClass) -> int:
    """Arithmetic genus 1 + (D^2 + D.K_X) / 2."""
    twice = self_intersection(ctx, d) + intersect(ctx, d, canonical_class(ctx))
    return 1 + twice // 2


def section_stability(min_section_selfint: int) -> Stability:
    """Stability of E read from its Segre invariant, the least self-intersection of a section."""
    if min_section_selfint > 0:
        return Stability.STABLE
    if min_section_selfint == 0:
        return Stability.STRICTLY_SEMISTABLE
    return Stability.UNSTABLE


def cone_position(ctx: SurfaceContext, d: NumClass) -> ConePosition:
    """
    Position of D relative to the cone spanned by C1 and f.

    For a semistable E of degree 0 this cone is the closed cone of curves,
    and its boundary rays are exactly the classes of zero self-intersection.
    """
    if ctx.e != 0:
        raise DegreeNotZero(f"cone test needs e = 0, got e = {ctx.e}")
    if d.s < 0 or d.b < 0:
        return ConePosition.OUTSIDE
    if d.s > 0 and d.b > 0:
        return ConePosition.INTERIOR
    return ConePosition.BOUNDARY
