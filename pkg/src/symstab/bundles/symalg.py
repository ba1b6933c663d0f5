"""
Rank-2 bundle descriptors and symmetric-power bookkeeping.

Line bundles are tracked as ``LineClass`` values: an integer degree, a
torsion part on the base curve and a free part made of opaque symbols.
A rank-2 bundle with trivial determinant is described either as a split
sum L^-1 + L, as a twisted pushforward from a double cover, or as a formal
placeholder that is only ever routed through gate logic.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Dict, FrozenSet, Iterable, Optional, Tuple, Union

from ..core.covering import CoveringModel, TorsionClass, norm, pullback_preimage
from ..core.torsion import TorsionVector
from ..utils.errors import (
    InvalidArgument,
    InvalidDescriptor,
    NotDoubleCover,
    NotTorsion,
    RankMismatch,
)

logger = logging.getLogger(__name__)


class Stability(str, Enum):
    """Slope stability of a bundle."""
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly_semistable"
    UNSTABLE = "unstable"


@dataclass(frozen=True, order=True)
class LineClass:
    """
    A line bundle class: degree, torsion part and free symbolic part.

    ``formal`` is a sorted tuple of (symbol, nonzero exponent) pairs. Symbols
    stand for degree-0 classes of infinite order and never cancel against
    torsion.
    """

    degree: int
    torsion: TorsionVector
    formal: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "formal", _normalize_formal(self.formal))

    @classmethod
    def trivial(cls, rank: int) -> "LineClass":
        return cls(0, TorsionVector.zero(rank))

    @classmethod
    def from_torsion(cls, torsion: TorsionVector) -> "LineClass":
        return cls(0, torsion)

    @classmethod
    def symbol(cls, name: str, rank: int) -> "LineClass":
        return cls(0, TorsionVector.zero(rank), ((name, 1),))

    @property
    def rank(self) -> int:
        return self.torsion.rank

    def __add__(self, other: "LineClass") -> "LineClass":
        if other.rank != self.rank:
            raise RankMismatch(f"line classes of rank {self.rank} and {other.rank}")
        merged: Dict[str, int] = dict(self.formal)
        for name, exp in other.formal:
            merged[name] = merged.get(name, 0) + exp
        return LineClass(self.degree + other.degree, self.torsion + other.torsion,
                         tuple(merged.items()))

    def __neg__(self) -> "LineClass":
        return LineClass(-self.degree, -self.torsion, tuple((s, -e) for s, e in self.formal))

    def __sub__(self, other: "LineClass") -> "LineClass":
        return self + (-other)

    def __mul__(self, n: int) -> "LineClass":
        return LineClass(self.degree * n, self.torsion * n, tuple((s, e * n) for s, e in self.formal))

    __rmul__ = __mul__

    def is_torsion(self) -> bool:
        return self.degree == 0 and not self.formal

    def is_trivial(self) -> bool:
        return self.is_torsion() and self.torsion.is_zero()

    def order(self) -> int:
        if not self.is_torsion():
            raise NotTorsion(f"{self} is not a torsion class")
        return self.torsion.order()

    def to_json(self) -> dict:
        return {"degree": self.degree, "torsion": self.torsion.to_json(),
                "formal": {name: exp for name, exp in self.formal}}

    def __str__(self) -> str:
        free = "".join(f"*{s}^{e}" for s, e in self.formal)
        return f"O({self.degree}){self.torsion}{free}"


def _normalize_formal(items: Iterable[Tuple[str, int]]) -> Tuple[Tuple[str, int], ...]:
    merged: Dict[str, int] = {}
    for name, exp in items:
        merged[name] = merged.get(name, 0) + int(exp)
    return tuple(sorted((s, e) for s, e in merged.items() if e != 0))


@dataclass(frozen=True)
class Split:
    """E = L^-1 + L."""
    line: LineClass

    @property
    def rank(self) -> int:
        return self.line.rank


@dataclass(frozen=True)
class PushforwardTwist:
    """E = pi_* R tensor A for a double cover pi, with R in the Prym and 2A = ell."""

    cov: CoveringModel
    r: TorsionClass
    a: LineClass

    def __post_init__(self):
        if self.cov.degree != 2:
            raise NotDoubleCover(f"pushforward descriptors need a double cover, got degree "
                                 f"{self.cov.degree}")
        if self.r.cov != self.cov:
            raise InvalidDescriptor("R lives on a different covering")
        if self.a.rank != self.cov.rank:
            raise RankMismatch(f"twist has rank {self.a.rank}, expected {self.cov.rank}")
        if not self.a.is_torsion():
            raise InvalidDescriptor(f"twist {self.a} must be a torsion class")
        if self.a.torsion * 2 != self.cov.ell:
            raise InvalidDescriptor(f"twist must satisfy 2A = ell, got 2A = {self.a.torsion * 2}")
        if not norm(self.cov, self.r).is_zero():
            raise InvalidDescriptor(f"R must lie in the Prym, its norm is {norm(self.cov, self.r)}")

    @property
    def rank(self) -> int:
        return self.cov.rank


@dataclass(frozen=True)
class FormalStable:
    """A bundle postulated stable with stable square; carries no structure."""
    tag: str
    genus: int = 2

    @property
    def rank(self) -> int:
        return 2 * self.genus


@dataclass(frozen=True)
class TriplePresentation:
    """S^2 E = eta_* M for a cyclic triple cover eta and a class M with 2M = 0."""

    cov: CoveringModel
    m: TorsionClass

    def __post_init__(self):
        if self.cov.degree != 3:
            raise InvalidDescriptor(f"triple presentations need a degree 3 cover, got "
                                    f"{self.cov.degree}")
        if self.m.cov != self.cov:
            raise InvalidDescriptor("M lives on a different covering")
        if not (self.m * 2).is_zero():
            raise InvalidDescriptor(f"M must be 2-torsion, got order {self.m.order()}")

    @property
    def rank(self) -> int:
        return self.cov.rank


BundleDescriptor = Union[Split, PushforwardTwist, FormalStable]
Descriptor = Union[Split, PushforwardTwist, FormalStable, TriplePresentation]


@dataclass(frozen=True)
class SymDecomp:
    """A direct sum of line classes, kept as a sorted multiset."""

    summands: Tuple[LineClass, ...]

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(sorted(self.summands)))

    @property
    def rank(self) -> int:
        return len(self.summands)

    @property
    def degree(self) -> int:
        return sum(s.degree for s in self.summands)

    def tensor(self, line: LineClass) -> "SymDecomp":
        return SymDecomp(tuple(s + line for s in self.summands))

    def __add__(self, other: "SymDecomp") -> "SymDecomp":
        return SymDecomp(self.summands + other.summands)

    def multiplicities(self) -> Dict[LineClass, int]:
        counts: Dict[LineClass, int] = {}
        for s in self.summands:
            counts[s] = counts.get(s, 0) + 1
        return counts


def sym_power_split(line: LineClass, k: int) -> SymDecomp:
    """S^k(L^-1 + L) = sum of L^(k-2i) for i = 0..k."""
    if k < 0:
        raise InvalidArgument(f"symmetric power must be nonnegative, got {k}")
    return SymDecomp(tuple(line * (k - 2 * i) for i in range(k + 1)))


def twist_sym_power(decomp: SymDecomp, line: LineClass, k: int) -> SymDecomp:
    """S^k(E tensor N) = S^k E tensor N^k on split data."""
    return decomp.tensor(line * k)


def sym_power_rank_degree(k: int, det_degree: int = 0) -> Tuple[int, int]:
    """Rank and degree of S^k E for E of rank 2 and determinant degree ``det_degree``."""
    return k + 1, comb(k + 1, 2) * det_degree


def slope(rank: int, degree: int) -> Fraction:
    if rank < 1:
        raise InvalidArgument(f"slope needs a positive rank, got {rank}")
    return Fraction(degree, rank)


def split_stability(decomp: SymDecomp) -> Stability:
    """Stability of a direct sum of line bundles."""
    if decomp.rank == 0:
        raise InvalidArgument("empty decomposition")
    if decomp.rank == 1:
        return Stability.STABLE
    mu = slope(decomp.rank, decomp.degree)
    if any(s.degree > mu for s in decomp.summands):
        return Stability.UNSTABLE
    return Stability.STRICTLY_SEMISTABLE


def as_split(desc: "BundleDescriptor") -> Optional[Split]:
    """
    The split form of a descriptor when it has one.

    A pushforward of a pullback class pi^* b splits as (b + A) + (b + ell + A);
    the two summands are mutually inverse because the determinant is trivial.
    """
    if isinstance(desc, Split):
        return desc
    if isinstance(desc, PushforwardTwist):
        b = pullback_preimage(desc.cov, desc.r)
        if b is None:
            return None
        return Split(LineClass.from_torsion(b + desc.cov.ell) + desc.a)
    return None


def decomposition(desc: BundleDescriptor) -> Optional[SymDecomp]:
    """E itself as a sum of lines, or None when E does not split."""
    split = as_split(desc)
    return sym_power_split(split.line, 1) if split is not None else None


def determinant(desc: BundleDescriptor) -> LineClass:
    if isinstance(desc, Split):
        return LineClass.trivial(desc.rank)
    if isinstance(desc, PushforwardTwist):
        det_push = desc.cov.ell + norm(desc.cov, desc.r)
        return LineClass.from_torsion(det_push) + desc.a * 2
    raise InvalidDescriptor(f"{type(desc).__name__} carries no determinant data")


@dataclass(frozen=True)
class TensorSquareRecord:
    """Bookkeeping for E tensor E = O + S^2 E."""

    rank_lhs: int
    rank_rhs: Tuple[int, int]
    det_trivial: bool
    lhs: Optional[SymDecomp] = None
    rhs: Optional[SymDecomp] = None

    @property
    def holds(self) -> bool:
        ranks = self.rank_lhs == sum(self.rank_rhs)
        if self.lhs is None:
            return ranks and self.det_trivial
        return ranks and self.det_trivial and self.lhs == self.rhs


def tensor_square_split(desc: BundleDescriptor) -> TensorSquareRecord:
    split = as_split(desc) if not isinstance(desc, FormalStable) else None
    if split is None:
        return TensorSquareRecord(rank_lhs=4, rank_rhs=(1, 3), det_trivial=True)
    e = sym_power_split(split.line, 1)
    lhs = SymDecomp(tuple(x + y for x in e.summands for y in e.summands))
    trivial = LineClass.trivial(split.rank)
    rhs = SymDecomp((trivial,)) + sym_power_split(split.line, 2)
    det_lhs = sum(lhs.summands[1:], lhs.summands[0])
    det_rhs = sum(rhs.summands[1:], rhs.summands[0])
    return TensorSquareRecord(
        rank_lhs=lhs.rank,
        rank_rhs=(1, rhs.rank - 1),
        det_trivial=det_lhs.is_trivial() and det_rhs.is_trivial(),
        lhs=lhs,
        rhs=rhs,
    )


@dataclass(frozen=True)
class SequenceRecord:
    """
    Rank and degree rows of 0 -> S^(n-1)E (x) S^(m-1)E (x) det E -> S^nE (x) S^mE -> S^(n+m)E -> 0.
    """

    n: int
    m: int
    sub: Tuple[int, int]
    middle: Tuple[int, int]
    quotient: Tuple[int, int]

    @property
    def holds(self) -> bool:
        return (self.sub[0] + self.quotient[0] == self.middle[0]
                and self.sub[1] + self.quotient[1] == self.middle[1])


def _tensor_rank_degree(x: Tuple[int, int], y: Tuple[int, int]) -> Tuple[int, int]:
    return x[0] * y[0], x[0] * y[1] + y[0] * x[1]


def sym_sequence_bookkeeping(n: int, m: int, det_degree: int = 0) -> SequenceRecord:
    if n < 1 or m < 1:
        raise InvalidArgument(f"n and m must be at least 1, got n={n}, m={m}")
    sub = _tensor_rank_degree(sym_power_rank_degree(n - 1, det_degree),
                              sym_power_rank_degree(m - 1, det_degree))
    sub = (sub[0], sub[1] + sub[0] * det_degree)
    middle = _tensor_rank_degree(sym_power_rank_degree(n, det_degree),
                                 sym_power_rank_degree(m, det_degree))
    return SequenceRecord(n, m, sub, middle, sym_power_rank_degree(n + m, det_degree))


def orthogonality_values(desc: Descriptor) -> FrozenSet[LineClass]:
    """Line bundles in which E carries a nondegenerate symmetric form."""
    if isinstance(desc, Split):
        return frozenset({LineClass.trivial(desc.rank)})
    if isinstance(desc, PushforwardTwist):
        return frozenset({desc.a * 2})
    return frozenset()
