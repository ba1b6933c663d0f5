"""
Exact arithmetic in (Q/Z)^n.

Torsion points of a Jacobian are modelled as vectors of rationals reduced
modulo 1. Every operation reduces eagerly, so equality is structural and
ordering is the lexicographic order of coordinate values.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..utils.config import check_budget
from ..utils.errors import InvalidArgument, ParseError, RankMismatch

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction, str, "RatMod1"]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True, order=True)
class RatMod1:
    """A rational number reduced into [0, 1)."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value) % 1)

    @classmethod
    def of(cls, x: Rational) -> "RatMod1":
        if isinstance(x, RatMod1):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        return cls(Fraction(x))

    @classmethod
    def parse(cls, text: str) -> "RatMod1":
        """Parse ``"p/q"`` (or a bare integer) into its reduced class."""
        try:
            return cls(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational: {text!r}") from None

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def __add__(self, other: "RatMod1") -> "RatMod1":
        return RatMod1(self.value + other.value)

    def __sub__(self, other: "RatMod1") -> "RatMod1":
        return RatMod1(self.value - other.value)

    def __neg__(self) -> "RatMod1":
        return RatMod1(-self.value)

    def __mul__(self, n: int) -> "RatMod1":
        return RatMod1(self.value * n)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True, order=True)
class TorsionVector:
    """
    Element of (Q/Z)^rank.

    Vectors compare lexicographically by coordinate value, which is the
    order every enumeration and canonical representative in the package uses.
    """

    coords: Tuple[RatMod1, ...]

    def __post_init__(self):
        if not self.coords:
            raise InvalidArgument("torsion vectors need a positive rank")

    @classmethod
    def of(cls, values: Iterable[Rational]) -> "TorsionVector":
        return cls(tuple(RatMod1.of(v) for v in values))

    @classmethod
    def zero(cls, rank: int) -> "TorsionVector":
        return cls(tuple(RatMod1(Fraction(0)) for _ in range(rank)))

    @classmethod
    def basis(cls, rank: int, index: int, n: int) -> "TorsionVector":
        """The vector with ``1/n`` in position ``index`` and zeros elsewhere."""
        return cls.of(Fraction(1, n) if i == index else 0 for i in range(rank))

    @classmethod
    def parse(cls, text: str) -> "TorsionVector":
        """Parse a comma separated list such as ``"1/2,0,0,0"``."""
        parts = [p for p in text.split(",") if p.strip()]
        if not parts:
            raise ParseError(f"empty torsion vector: {text!r}")
        return cls(tuple(RatMod1.parse(p) for p in parts))

    @classmethod
    def from_json(cls, items: Sequence[str]) -> "TorsionVector":
        if not items:
            raise ParseError("empty torsion vector")
        return cls(tuple(RatMod1.parse(str(p)) for p in items))

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coords]

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _check(self, other: "TorsionVector") -> None:
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")

    def __add__(self, other: "TorsionVector") -> "TorsionVector":
        self._check(other)
        return TorsionVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "TorsionVector") -> "TorsionVector":
        self._check(other)
        return TorsionVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "TorsionVector":
        return TorsionVector(tuple(-a for a in self.coords))

    def __mul__(self, n: int) -> "TorsionVector":
        return TorsionVector(tuple(a * n for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.numerator == 0 for c in self.coords)

    def order(self) -> int:
        return order(self)

    def fractions(self) -> List[Fraction]:
        return [c.value for c in self.coords]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def order(v: TorsionVector) -> int:
    """Least n >= 1 with n*v = 0, i.e. the lcm of the coordinate denominators."""
    return reduce(_lcm, (c.denominator for c in v.coords), 1)


def torsion_count(rank: int, n: int) -> int:
    """Size n**rank of the n-torsion subgroup of (Q/Z)^rank."""
    if rank < 1 or n < 1:
        raise InvalidArgument(f"rank and n must be positive, got rank={rank}, n={n}")
    return n ** rank


def enumerate_torsion(rank: int, n: int, budget: Optional[int] = None) -> Iterator[TorsionVector]:
    """
    Enumerate the n-torsion of (Q/Z)^rank in lexicographic order.

    Args:
        rank: Number of coordinates
        n: Torsion exponent
        budget: Element budget, resolved through the configuration when omitted

    Returns:
        Iterator over the n**rank vectors, each exactly once

    Raises:
        BudgetExceeded: If n**rank exceeds the budget
    """
    size = torsion_count(rank, n)
    check_budget(size, budget, f"{n}-torsion of rank {rank}")
    logger.debug("enumerating %d-torsion of rank %d (%d elements)", n, rank, size)
    steps = [RatMod1(Fraction(i, n)) for i in range(n)]
    return (TorsionVector(coords) for coords in itertools.product(steps, repeat=rank))


def subgroup_closure(generators: Sequence[TorsionVector], rank: Optional[int] = None,
                     budget: Optional[int] = None) -> FrozenSet[TorsionVector]:
    """Finite subgroup generated by ``generators``, by repeated addition."""
    if rank is None:
        if not generators:
            raise InvalidArgument("rank is required for an empty generator list")
        rank = generators[0].rank
    for g in generators:
        if g.rank != rank:
            raise RankMismatch(f"generator of rank {g.rank} in a rank {rank} group")
    limit = reduce(lambda acc, g: acc * order(g), generators, 1)
    check_budget(limit, budget, "subgroup closure")

    elements = {TorsionVector.zero(rank)}
    frontier = list(elements)
    while frontier:
        fresh = []
        for x in frontier:
            for g in generators:
                y = x + g
                if y not in elements:
                    elements.add(y)
                    fresh.append(y)
        frontier = fresh
    return frozenset(elements)


def subgroup_membership(v: TorsionVector, generators: Sequence[TorsionVector],
                        budget: Optional[int] = None) -> bool:
    """True iff ``v`` lies in the subgroup generated by ``generators``."""
    return v in subgroup_closure(generators, rank=v.rank, budget=budget)


def apply_integer_matrix(matrix: np.ndarray, v: TorsionVector) -> TorsionVector:
    """
    Image of ``v`` under an integer matrix acting on column vectors of (Q/Z)^n.

    The product is carried out on an object array so the entries stay exact
    ``Fraction`` values.
    """
    matrix = np.asarray(matrix)
    if matrix.shape != (v.rank, v.rank):
        raise RankMismatch(f"matrix of shape {matrix.shape} cannot act on rank {v.rank}")
    exact = matrix.astype(object) @ np.array(v.fractions(), dtype=object)
    return TorsionVector.of(exact.tolist())
