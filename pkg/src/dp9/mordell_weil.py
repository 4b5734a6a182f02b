"""Mordell-Weil group of B through section classes.

A class is treated as a section when it is integral with ``x.f = 1``,
``x.x = -1`` and ``x.n_i in {0, 1}`` for both I2 fibers.  This is the
numerical characterization only; effectivity is not checked.

The group law is transported from Pic(B)/T, T being spanned by the zero
section e9, the fiber f and the neutral components n1, n2: a coset of
``span(f, n1, n2)`` with ``x.f = 1`` contains exactly one section class.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from . import intlinalg
from .isometries import builtin_map
from .lattice import F, N1, N2, O1, O2, ZERO_SECTION, H2Class, intersect

TRIVIAL_LATTICE = (ZERO_SECTION, F, N1, N2)
_NEG = builtin_map("neg")


class NormalizationError(ValueError):
    pass


def is_section_class(d: H2Class) -> bool:
    if not d.is_integral():
        return False
    if intersect(d, F) != 1 or intersect(d, d) != -1:
        return False
    for n, o in ((N1, O1), (N2, O2)):
        dn = intersect(d, n)
        if dn not in (0, 1) or dn + intersect(d, o) != 1:
            return False
    return True


@dataclass(frozen=True)
class SectionClass:
    cls: H2Class

    def __post_init__(self):
        if not is_section_class(self.cls):
            raise ValueError(f"{self.cls} is not a section class")


def _ceil_half(n: int) -> int:
    return -((-n) // 2)


def mw_normalize(x: H2Class) -> SectionClass:
    """The unique section class in ``x + span(f, n1, n2)``."""
    if not x.is_integral():
        raise NormalizationError(f"{x} is not integral")
    if intersect(x, F) != 1:
        raise NormalizationError(f"{x} has fiber degree {intersect(x, F)}, expected 1")
    # mu.n = x.n - 2b must land in {0, 1}
    b = _ceil_half(int(intersect(x, N1)) - 1)
    c = _ceil_half(int(intersect(x, N2)) - 1)
    xp = x + b * N1 + c * N2
    sq = int(intersect(xp, xp))
    if sq % 2 == 0:
        raise NormalizationError(f"{xp} has even square; cannot reach mu.mu = -1")
    a = -(1 + sq) // 2
    mu = xp + a * F
    if not is_section_class(mu):
        raise NormalizationError(f"normalization of {x} gave non-section {mu}")
    return SectionClass(mu)


def mw_add(x: SectionClass, y: SectionClass) -> SectionClass:
    return mw_normalize(x.cls + y.cls - ZERO_SECTION)


def mw_neg(x: SectionClass) -> SectionClass:
    return SectionClass(_NEG(x.cls))


def mw_sub(x: SectionClass, y: SectionClass) -> SectionClass:
    return mw_add(x, mw_neg(y))


IDENTITY = SectionClass(ZERO_SECTION)


def mw_quotient_structure() -> Tuple[int, List[int]]:
    """Free rank and torsion invariant factors of Pic(B)/T."""
    factors = intlinalg.smith_normal_form([t.to_ints() for t in TRIVIAL_LATTICE])
    free_rank = len(ZERO_SECTION.coeffs) - len(factors)
    torsion = [d for d in factors if d > 1]
    return free_rank, torsion


def trivial_lattice_rank() -> int:
    return intlinalg.rank([t.to_ints() for t in TRIVIAL_LATTICE])


def trivial_lattice_discriminant() -> int:
    """Determinant of the Gram matrix of (e9, f, n1, n2)."""
    g = [[intersect(a, b) for b in TRIVIAL_LATTICE] for a in TRIVIAL_LATTICE]
    return int(intlinalg.determinant(g))
