"""Exact cohomology of the rational elliptic surface B.

B is the plane blown up in the nine base points of a cubic pencil, so
H^2(B, Z) has basis ``l, e1, ..., e9`` with ``l.l = 1``, ``l.ei = 0`` and
``ei.ej = -delta_ij``.  The full ring H^*(B, Q) is modelled as
``rank * 1 + div + point * pt``.

Coefficients are exact rationals: integral values are kept as ``int``
(which shares the numerator/denominator interface) and the rest as
:class:`fractions.Fraction`.  Integrality is a predicate, never a rounding
step.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]

#: Fixed global basis order of H^2(B, Z).
BASIS_NAMES = ("l", "e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9")
DIM = len(BASIS_NAMES)

#: Gram matrix diag(1, -1, ..., -1) of the intersection form.
GRAM = tuple(
    tuple((1 if i == 0 else -1) if i == j else 0 for j in range(DIM))
    for i in range(DIM)
)

NAMED_CLASSES = (
    "l", "e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9",
    "f", "e", "zeta", "n1", "o1", "n2", "o2", "canonical",
)


def _frac(x: Scalar) -> Scalar:
    # ints keep arithmetic fast; a Fraction survives only when non-integral
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class H2Class:
    """A degree-two class, stored as coordinates over ``(l, e1, ..., e9)``."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(_frac(c) for c in self.coeffs)
        if len(coeffs) != DIM:
            raise ValueError(f"H2Class needs {DIM} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls) -> "H2Class":
        return cls((0,) * DIM)

    @classmethod
    def basis(cls, i: int) -> "H2Class":
        return cls(tuple(1 if j == i else 0 for j in range(DIM)))

    def __add__(self, other: "H2Class") -> "H2Class":
        if not isinstance(other, H2Class):
            return NotImplemented
        return H2Class(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "H2Class") -> "H2Class":
        if not isinstance(other, H2Class):
            return NotImplemented
        return H2Class(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "H2Class":
        return H2Class(tuple(-a for a in self.coeffs))

    def __mul__(self, k: Scalar) -> "H2Class":
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return H2Class(tuple(k * a if a else 0 for a in self.coeffs))

    __rmul__ = __mul__

    def dot(self, other: "H2Class") -> Scalar:
        return intersect(self, other)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_ints(self) -> tuple:
        if not self.is_integral():
            raise ValueError(f"class {self} is not integral")
        return tuple(int(c) for c in self.coeffs)

    def __str__(self) -> str:
        from .parser import format_h2  # parser imports this module
        return format_h2(self)


def intersect(a: H2Class, b: H2Class) -> Scalar:
    """Intersection pairing; signature (1, 9)."""
    x, y = a.coeffs, b.coeffs
    return x[0] * y[0] - sum(x[i] * y[i] for i in range(1, DIM))


def h2(*coeffs: Scalar) -> H2Class:
    return H2Class(tuple(coeffs))


def _e(i: int) -> H2Class:
    return H2Class.basis(i)


L = _e(0)
E = tuple(_e(i) for i in range(DIM))  # E[1] .. E[9] are e1 .. e9; E[0] is l
F = 3 * L - sum((E[i] for i in range(1, 10)), H2Class.zero())
N1 = E[8] - E[9]
O1 = F - E[8] + E[9]
N2 = L - E[7] - E[8] - E[9]
O2 = 2 * L - sum((E[i] for i in range(1, 7)), H2Class.zero())
ZERO_SECTION = E[9]
ZETA = E[1]


def named_class(name: str) -> H2Class:
    """Expand a named divisor class over the raw basis.

    >>> named_class("o2").to_ints()
    (2, -1, -1, -1, -1, -1, -1, 0, 0, 0)
    """
    if name in BASIS_NAMES:
        return _e(BASIS_NAMES.index(name))
    table = {
        "f": F,
        "e": ZERO_SECTION,
        "zeta": ZETA,
        "n1": N1,
        "o1": O1,
        "n2": N2,
        "o2": O2,
        "canonical": -F,
    }
    try:
        return table[name]
    except KeyError:
        raise KeyError(f"unknown named class {name!r}") from None


@dataclass(frozen=True)
class CohClass:
    """``rank * 1 + div + point * pt`` in H^*(B, Q)."""

    rank: Scalar = 0
    div: H2Class = H2Class.zero()
    point: Scalar = 0

    def __post_init__(self):
        object.__setattr__(self, "rank", _frac(self.rank))
        object.__setattr__(self, "point", _frac(self.point))
        if not isinstance(self.div, H2Class):
            raise TypeError("div must be an H2Class")

    @classmethod
    def zero(cls) -> "CohClass":
        return cls()

    @classmethod
    def one(cls) -> "CohClass":
        return cls(rank=1)

    @classmethod
    def pt(cls) -> "CohClass":
        return cls(point=1)

    @classmethod
    def of(cls, d: H2Class) -> "CohClass":
        return cls(div=d)

    def __add__(self, other: "CohClass") -> "CohClass":
        if not isinstance(other, CohClass):
            return NotImplemented
        return CohClass(self.rank + other.rank, self.div + other.div,
                        self.point + other.point)

    def __sub__(self, other: "CohClass") -> "CohClass":
        if not isinstance(other, CohClass):
            return NotImplemented
        return CohClass(self.rank - other.rank, self.div - other.div,
                        self.point - other.point)

    def __neg__(self) -> "CohClass":
        return CohClass(-self.rank, -self.div, -self.point)

    def __mul__(self, k: Scalar) -> "CohClass":
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return CohClass(k * self.rank, k * self.div, k * self.point)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.rank and self.div.is_zero() and not self.point

    def as_vector(self) -> tuple:
        """Coordinates over ``(1, l, e1, ..., e9, pt)``."""
        return (self.rank,) + self.div.coeffs + (self.point,)

    @classmethod
    def from_vector(cls, v: Sequence[Scalar]) -> "CohClass":
        if len(v) != DIM + 2:
            raise ValueError(f"expected {DIM + 2} coordinates")
        return cls(v[0], H2Class(tuple(v[1:-1])), v[-1])


def ch_line_bundle(d: H2Class) -> CohClass:
    """Chern character ``1 + D + (D.D / 2) pt`` of ``O_B(D)``."""
    return CohClass(1, d, Fraction(intersect(d, d), 2))


def ch_rational_curve_sheaf(c: H2Class, d: int) -> CohClass:
    """Chern character of ``O_C(d)`` pushed forward from a smooth rational curve C."""
    return CohClass(0, c, d - Fraction(intersect(c, c), 2))


def gram_matrix(vectors: Iterable[H2Class]) -> list:
    vs = list(vectors)
    return [[intersect(a, b) for b in vs] for a in vs]
