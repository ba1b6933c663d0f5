"""
Unramified cyclic coverings and the torsion of the covering Jacobian.

A covering pi: B -> C of degree m is classified by a torsion class ell of
order m on C. Torsion points of J(B) are presented as pairs (base, prym),
base in (Q/Z)^{2g} and prym in the torsion of the Prym block, modulo the
gluing subgroup K = {(delta, psi(delta)) : delta in H}.

All structure is built in aligned coordinates, where ell = (1/m, 0, ..., 0):

* H is the m-torsion with last aligned coordinate zero,
* psi reads off aligned coordinates 1 .. 2g-2 (zero padded for m = 3).

Classes are stored in the caller's coordinates; the integer basis change is
only used to test membership in H and to evaluate psi.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import FrozenSet, List, Optional, Tuple

import numpy as np

from .torsion import TorsionVector, apply_integer_matrix, enumerate_torsion, order
from ..utils.config import check_budget
from ..utils.errors import (
    InvalidArgument,
    NotDoubleCover,
    NotTwoTorsion,
    OrderMismatch,
    RankMismatch,
    TrivialClass,
    UnsupportedDegree,
)

logger = logging.getLogger(__name__)

SUPPORTED_DEGREES = (2, 3)


class PrymLocation(str, Enum):
    """Position of a class relative to the kernel of the norm."""
    NOT_IN_PRYM = "not_in_prym"
    PRYM0 = "prym0"
    PRYM1 = "prym1"


def _aligning_basis(ell: TorsionVector, m: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Unimodular integer matrices (U, U^-1) with U * ell = (1/m, 0, ..., 0).

    U is a product of a transposition, an optional sign flip of the first
    coordinate and an elimination of the remaining coordinates.
    """
    rank = ell.rank
    lifted = np.array([int(c.value * m) for c in ell.coords], dtype=np.int64)
    pivot = int(np.flatnonzero(lifted % m)[0])

    perm = np.eye(rank, dtype=np.int64)
    perm[[0, pivot]] = perm[[pivot, 0]]
    w = perm @ lifted

    scale = np.eye(rank, dtype=np.int64)
    if w[0] % m != 1:
        scale[0, 0] = -1
    w = scale @ w

    elim = np.eye(rank, dtype=np.int64)
    elim[1:, 0] = -w[1:]
    elim_inv = np.eye(rank, dtype=np.int64)
    elim_inv[1:, 0] = w[1:]

    return elim @ scale @ perm, perm @ scale @ elim_inv


class CoveringModel:
    """
    Torsion model of an unramified cyclic m-covering of a genus-g curve.

    Attributes:
        genus: Genus g of the base curve
        degree: Covering degree m
        ell: Defining class of order m, rank 2g
        cover_genus: m(g-1)+1
        prym_rank: 2(m-1)(g-1), number of torsion coordinates of the Prym block
    """

    def __init__(self, genus: int, degree: int, ell: TorsionVector):
        self.genus = genus
        self.degree = degree
        self.ell = ell
        self.cover_genus = degree * (genus - 1) + 1
        self.prym_rank = 2 * (degree - 1) * (genus - 1)
        self.basis_change, self.basis_change_inverse = _aligning_basis(ell, degree)
        self._gluing = tuple(
            (apply_integer_matrix(self.basis_change_inverse, delta), self._psi_aligned(delta))
            for delta in self._aligned_h()
        )
        logger.debug("covering model g=%d m=%d ell=%s, |K|=%d",
                     genus, degree, ell, len(self._gluing))

    @property
    def rank(self) -> int:
        return 2 * self.genus

    def __eq__(self, other):
        if not isinstance(other, CoveringModel):
            return NotImplemented
        return (self.genus, self.degree, self.ell) == (other.genus, other.degree, other.ell)

    def __hash__(self):
        return hash((self.genus, self.degree, self.ell))

    def __repr__(self):
        return f"CoveringModel(genus={self.genus}, degree={self.degree}, ell={self.ell})"

    def _aligned_h(self) -> List[TorsionVector]:
        zero = TorsionVector.zero(1)
        return [TorsionVector(head.coords + zero.coords)
                for head in enumerate_torsion(self.rank - 1, self.degree)]

    def _psi_aligned(self, delta: TorsionVector) -> TorsionVector:
        values = [c.value for c in delta.coords[1:self.rank - 1]]
        values += [0] * (self.prym_rank - len(values))
        return TorsionVector.of(values)

    def to_aligned(self, a: TorsionVector) -> TorsionVector:
        return apply_integer_matrix(self.basis_change, a)

    def in_h(self, a: TorsionVector) -> bool:
        """Membership in the index-m subgroup H of J_m(C) that contains ell."""
        if not (a * self.degree).is_zero():
            return False
        return self.to_aligned(a).coords[-1].numerator == 0

    def psi(self, a: TorsionVector) -> TorsionVector:
        if not self.in_h(a):
            raise InvalidArgument(f"{a} is not in the gluing domain H")
        return self._psi_aligned(self.to_aligned(a))

    def gluing_subgroup(self) -> Tuple[Tuple[TorsionVector, TorsionVector], ...]:
        """The pairs (delta, psi(delta)) in the caller's coordinates."""
        return self._gluing

    def torsion_class(self, base: TorsionVector, prym: Optional[TorsionVector] = None) -> "TorsionClass":
        if prym is None:
            prym = TorsionVector.zero(self.prym_rank)
        return TorsionClass(self, base, prym)

    def zero_class(self) -> "TorsionClass":
        return self.torsion_class(TorsionVector.zero(self.rank))

    def to_json(self) -> dict:
        return {"genus": self.genus, "degree": self.degree, "ell": self.ell.to_json()}


@dataclass(frozen=True)
class TorsionClass:
    """
    Torsion point of J(B), held as its canonical representative.

    The representative is the lexicographically least (base, prym) pair in
    the orbit under the gluing subgroup, so equal classes compare equal.
    """

    cov: CoveringModel
    base: TorsionVector
    prym: TorsionVector

    def __post_init__(self):
        if self.base.rank != self.cov.rank:
            raise RankMismatch(f"base part has rank {self.base.rank}, expected {self.cov.rank}")
        if self.prym.rank != self.cov.prym_rank:
            raise RankMismatch(
                f"prym part has rank {self.prym.rank}, expected {self.cov.prym_rank}")
        base, prym = min(self.orbit())
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "prym", prym)

    def orbit(self) -> List[Tuple[TorsionVector, TorsionVector]]:
        return [(self.base + kb, self.prym + kp) for kb, kp in self.cov.gluing_subgroup()]

    def _same_cover(self, other: "TorsionClass") -> None:
        if other.cov != self.cov:
            raise InvalidArgument("classes live on different coverings")

    def __add__(self, other: "TorsionClass") -> "TorsionClass":
        self._same_cover(other)
        return TorsionClass(self.cov, self.base + other.base, self.prym + other.prym)

    def __sub__(self, other: "TorsionClass") -> "TorsionClass":
        self._same_cover(other)
        return TorsionClass(self.cov, self.base - other.base, self.prym - other.prym)

    def __neg__(self) -> "TorsionClass":
        return TorsionClass(self.cov, -self.base, -self.prym)

    def __mul__(self, n: int) -> "TorsionClass":
        return TorsionClass(self.cov, self.base * n, self.prym * n)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.base.is_zero() and self.prym.is_zero()

    def order(self) -> int:
        bound = order(self.base) * order(self.prym) // gcd(order(self.base), order(self.prym))
        return next(n for n in range(1, bound + 1) if bound % n == 0 and (self * n).is_zero())

    def sort_key(self) -> Tuple[TorsionVector, TorsionVector]:
        return (self.base, self.prym)

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "prym": self.prym.to_json()}

    def __str__(self) -> str:
        return f"[{self.base} | {self.prym}]"


def _check_base(genus: int, ell: TorsionVector) -> None:
    if genus < 2:
        raise InvalidArgument(f"base genus must be at least 2, got {genus}")
    if ell.rank != 2 * genus:
        raise RankMismatch(f"ell has rank {ell.rank}, expected {2 * genus} for genus {genus}")
    if ell.is_zero():
        raise TrivialClass("an unramified covering needs a nontrivial defining class")


def make_double_cover(genus: int, ell: TorsionVector) -> CoveringModel:
    """
    Build the canonical model of the double cover defined by a 2-torsion class.

    Args:
        genus: Genus of the base curve, at least 2
        ell: Defining class, of order exactly 2

    Returns:
        The covering model, with cover genus 2g-1 and Prym torsion rank 2g-2

    Raises:
        TrivialClass: If ell is zero
        NotTwoTorsion: If ell does not have order 2
    """
    _check_base(genus, ell)
    if order(ell) != 2:
        raise NotTwoTorsion(f"{ell} has order {order(ell)}, not 2")
    return CoveringModel(genus, 2, ell)


def make_cyclic_cover(genus: int, ell: TorsionVector, degree: int) -> CoveringModel:
    """Build the model of the cyclic cover of degree 2 or 3 defined by ``ell``."""
    if degree not in SUPPORTED_DEGREES:
        raise UnsupportedDegree(f"cyclic covers of degree {degree} are not modelled")
    if degree == 2:
        return make_double_cover(genus, ell)
    _check_base(genus, ell)
    if order(ell) != degree:
        raise OrderMismatch(f"{ell} has order {order(ell)}, not {degree}")
    return CoveringModel(genus, degree, ell)


def pullback(cov: CoveringModel, a: TorsionVector) -> TorsionClass:
    if a.rank != cov.rank:
        raise RankMismatch(f"expected a class of rank {cov.rank}, got {a.rank}")
    return cov.torsion_class(a)


def norm(cov: CoveringModel, x: TorsionClass) -> TorsionVector:
    """Norm down to C; m times the base part, independent of the Prym part."""
    if x.cov != cov:
        raise InvalidArgument("class belongs to another covering")
    return x.base * cov.degree


def _require_double(cov: CoveringModel) -> None:
    if cov.degree != 2:
        raise NotDoubleCover(f"operation needs a double cover, got degree {cov.degree}")


def involution(cov: CoveringModel, x: TorsionClass) -> TorsionClass:
    """The deck involution (a, p) -> (a, -p) of a double cover."""
    _require_double(cov)
    return cov.torsion_class(x.base, -x.prym)


def prym_location(cov: CoveringModel, x: TorsionClass) -> PrymLocation:
    _require_double(cov)
    if not norm(cov, x).is_zero():
        return PrymLocation.NOT_IN_PRYM
    return PrymLocation.PRYM0 if cov.in_h(x.base) else PrymLocation.PRYM1


def pullback_preimage(cov: CoveringModel, x: TorsionClass) -> Optional[TorsionVector]:
    """Least a with pullback(a) = x, or None when x is not a pullback."""
    candidates = [base for base, prym in x.orbit() if prym.is_zero()]
    return min(candidates) if candidates else None


def in_pullback_image(cov: CoveringModel, x: TorsionClass) -> bool:
    """
    True iff x is the pullback of a torsion class on C.

    For a double cover this agrees with 2 * prym = 0 on the canonical
    representative.
    """
    return pullback_preimage(cov, x) is not None


def pushforward_summands(cov: CoveringModel, x: TorsionClass) -> Tuple[TorsionVector, TorsionVector]:
    """Line summands (a, a + ell) of the split pushforward of x = pullback(a)."""
    _require_double(cov)
    a = pullback_preimage(cov, x)
    if a is None:
        raise InvalidArgument(f"{x} is not a pullback, its pushforward does not split")
    return a, a + cov.ell


def pushforward_determinant(cov: CoveringModel, x: TorsionClass) -> TorsionVector:
    """Determinant of the pushforward of x: ell plus the norm of x."""
    _require_double(cov)
    return cov.ell + norm(cov, x)


def covering_kernel(cov: CoveringModel, budget: Optional[int] = None) -> FrozenSet[TorsionVector]:
    """Classes of J_m(C) killed by pullback."""
    return frozenset(a for a in enumerate_torsion(cov.rank, cov.degree, budget)
                     if pullback(cov, a).is_zero())


def enumerate_prym_torsion(cov: CoveringModel, n: int,
                           budget: Optional[int] = None) -> List[TorsionClass]:
    """
    Classes x with norm(x) = 0 and n * x = 0, in canonical order.

    Representatives run over a in J_m(C) and p in the lcm(m, n)-torsion of the
    Prym block; this grid meets every such class and duplicates are removed
    by canonicalization.
    """
    if n < 1:
        raise InvalidArgument(f"n must be positive, got {n}")
    m = cov.degree
    step = m * n // gcd(m, n)
    size = m ** cov.rank * step ** cov.prym_rank
    check_budget(size * len(cov.gluing_subgroup()), budget, f"Prym {n}-torsion")
    logger.info("enumerating Prym %d-torsion over %d representatives", n, size)

    classes = set()
    pryms = list(enumerate_torsion(cov.prym_rank, step, budget))
    for a in enumerate_torsion(cov.rank, m, budget):
        for p in pryms:
            x = cov.torsion_class(a, p)
            if norm(cov, x).is_zero() and (x * n).is_zero():
                classes.add(x)
    return sorted(classes, key=TorsionClass.sort_key)


def prym_torsion_count(cov: CoveringModel, n: int, budget: Optional[int] = None) -> int:
    return len(enumerate_prym_torsion(cov, n, budget))


def prym_pullback_intersection(cov: CoveringModel,
                               budget: Optional[int] = None) -> FrozenSet[TorsionClass]:
    """Pullbacks lying in the kernel of the norm, searched over J_{2m}(C)."""
    return frozenset(
        x for x in (pullback(cov, a) for a in enumerate_torsion(cov.rank, 2 * cov.degree, budget))
        if norm(cov, x).is_zero()
    )
