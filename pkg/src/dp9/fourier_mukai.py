"""Cohomological Fourier-Mukai transform and the spectral involution t_B.

``fm`` and ``fm_inv`` are defined by their values on the basis
``1, pt, f, e1, ..., e9`` and extended linearly; ``l`` is reached through
``l = (f + e1 + ... + e9) / 3``.  ``t_b`` is always the composite
``fm_inv . tau^* . fm``.

The second half of the module is a small symbolic sheaf layer:
``fm_symbol`` sends base pullbacks to shifted section pushforwards and
section pushforwards to line bundles, and ``ch_symbol`` reads off Chern
characters so that the two layers can be compared.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Tuple, Union

from .isometries import apply_map, builtin_map
from .lattice import (
    DIM, E, F, N1, N2, O1, O2, ZERO_SECTION, CohClass, H2Class,
    ch_line_bundle, ch_rational_curve_sheaf, intersect,
)

HALF = Fraction(1, 2)


def _c(rank=0, div: H2Class = H2Class.zero(), point=0) -> CohClass:
    return CohClass(rank, div, point)


_E9 = ZERO_SECTION

# (image of 1, image of pt, image of f, image of e_i for i != 9, image of e9)
_FM_IMAGES = {
    "one": _c(0, -_E9, HALF),
    "pt": _c(0, F, 0),
    "f": _c(0, H2Class.zero(), -1),
    "e9": _c(1, -HALF * F, 0),
}
_FM_INV_IMAGES = {
    "one": _c(0, _E9, HALF),
    "pt": _c(0, -F, 0),
    "f": _c(0, H2Class.zero(), 1),
    "e9": _c(-1, -HALF * F, 0),
}


def _fm_ei(i: int) -> CohClass:
    return _c(1, E[i] - _E9 - Fraction(3, 2) * F, -1)


def _fm_inv_ei(i: int) -> CohClass:
    return _c(-1, E[i] - _E9 - Fraction(3, 2) * F, 1)


def _linear(images: dict, ei, c: CohClass) -> CohClass:
    # rewrite div over (f, e1..e9): c_l l + sum c_i e_i = (c_l/3) f + sum (c_i + c_l/3) e_i
    cl = c.div.coeffs[0]
    out = c.rank * images["one"] + c.point * images["pt"] + Fraction(cl, 3) * images["f"]
    for i in range(1, DIM):
        coef = c.div.coeffs[i] + Fraction(cl, 3)
        if coef:
            out = out + coef * (images["e9"] if i == 9 else ei(i))
    return out


def fm(c: CohClass) -> CohClass:
    """Cohomological Fourier-Mukai transform."""
    return _linear(_FM_IMAGES, _fm_ei, c)


def fm_inv(c: CohClass) -> CohClass:
    return _linear(_FM_INV_IMAGES, _fm_inv_ei, c)


_TAU = builtin_map("tau")


def t_b_composite(c: CohClass) -> CohClass:
    """Cohomological spectral involution ``fm_inv . tau^* . fm``, evaluated step by step."""
    return fm_inv(apply_map(_TAU, fm(c)))


@lru_cache(maxsize=None)
def _t_b_matrix() -> Tuple[Tuple, ...]:
    return tuple(tuple(row) for row in matrix_of(t_b_composite))


def t_b(c: CohClass) -> CohClass:
    """Cohomological spectral involution ``fm_inv . tau^* . fm``.

    Uses the matrix of :func:`t_b_composite` on the basis, built on first use.
    """
    v = c.as_vector()
    return CohClass.from_vector([sum(a * x for a, x in zip(row, v) if x)
                                 for row in _t_b_matrix()])


def cohomology_basis() -> Tuple[Tuple[str, CohClass], ...]:
    """The 12 basis classes ``1, l, e1..e9, pt`` with their names."""
    out = [("one", CohClass.one())]
    out += [(n, CohClass.of(H2Class.basis(i)))
            for i, n in enumerate(("l",) + tuple(f"e{k}" for k in range(1, 10)))]
    out.append(("pt", CohClass.pt()))
    return tuple(out)


def matrix_of(op) -> list:
    """12x12 rational matrix of a linear operator in the basis ``1, l, e1..e9, pt``."""
    cols = [op(b).as_vector() for _, b in cohomology_basis()]
    return [[cols[j][i] for j in range(DIM + 2)] for i in range(DIM + 2)]


# -- symbolic sheaves -------------------------------------------------------

VERTICAL_CURVES = {"o1": O1, "o2": O2, "n1": N1, "n2": N2}


@dataclass(frozen=True)
class BasePullback:
    """``beta^* O_P1(d)``, i.e. ``O_B(d f)``."""
    d: int


@dataclass(frozen=True)
class SectionPush:
    """``xi_* O_P1(d)`` for a section xi."""
    xi: H2Class
    d: int


@dataclass(frozen=True)
class LineBundle:
    D: H2Class


@dataclass(frozen=True)
class VerticalSheaf:
    """``O_C(d)^{multiplicity}`` on a fiber component C."""
    curve: str
    d: int
    multiplicity: int = 1

    def __post_init__(self):
        if self.curve not in VERTICAL_CURVES:
            raise ValueError(f"vertical curve must be one of {sorted(VERTICAL_CURVES)}")
        if self.multiplicity < 0:
            raise ValueError("multiplicity must be non-negative")


@dataclass(frozen=True)
class Shift:
    inner: "SheafSymbol"
    n: int


@dataclass(frozen=True)
class Sum:
    parts: Tuple["SheafSymbol", ...]


SheafSymbol = Union[BasePullback, SectionPush, LineBundle, VerticalSheaf, Shift, Sum]


def _sort_key(s) -> str:
    return repr(s)


def shift(s: SheafSymbol, n: int) -> SheafSymbol:
    """Normalizing constructor: nested shifts add, shift by 0 is dropped."""
    if isinstance(s, Shift):
        n += s.n
        s = s.inner
    return s if n == 0 else Shift(s, n)


def direct_sum(*parts: SheafSymbol) -> SheafSymbol:
    """Flattened, order-normalized direct sum."""
    flat = []
    for p in parts:
        if isinstance(p, Sum):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(sorted(flat, key=_sort_key)))


def normalize(s: SheafSymbol) -> SheafSymbol:
    if isinstance(s, Shift):
        return shift(normalize(s.inner), s.n)
    if isinstance(s, Sum):
        return direct_sum(*(normalize(p) for p in s.parts))
    return s


class UnsupportedSheaf(TypeError):
    pass


def fm_symbol(s: SheafSymbol) -> SheafSymbol:
    """Fourier-Mukai transform on base pullbacks and section pushforwards."""
    if isinstance(s, BasePullback):
        return shift(SectionPush(_E9, s.d - 1), -1)
    if isinstance(s, SectionPush):
        twist = s.d - intersect(s.xi, _E9) - 1
        return LineBundle(s.xi - _E9 + twist * F)
    if isinstance(s, Shift):
        return shift(fm_symbol(s.inner), s.n)
    if isinstance(s, Sum):
        return direct_sum(*(fm_symbol(p) for p in s.parts))
    raise UnsupportedSheaf(f"no transform rule for {type(s).__name__}")


def ch_symbol(s: SheafSymbol) -> CohClass:
    if isinstance(s, BasePullback):
        return ch_line_bundle(s.d * F)
    if isinstance(s, SectionPush):
        return ch_rational_curve_sheaf(s.xi, s.d)
    if isinstance(s, LineBundle):
        return ch_line_bundle(s.D)
    if isinstance(s, VerticalSheaf):
        return s.multiplicity * ch_rational_curve_sheaf(VERTICAL_CURVES[s.curve], s.d)
    if isinstance(s, Shift):
        return (-1) ** (s.n % 2) * ch_symbol(s.inner)
    if isinstance(s, Sum):
        return reduce(lambda a, b: a + b, (ch_symbol(p) for p in s.parts), CohClass.zero())
    raise TypeError(f"not a sheaf symbol: {s!r}")
