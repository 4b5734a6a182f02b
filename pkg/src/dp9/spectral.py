"""The spectral involution on line bundles.

``t_tilde`` is the affine map induced on Pic(B) = H^2(B, Z), ``omega`` its
linear part.  Pic^W, the lattice of line bundles sent to line bundles, is
handled through Hermite and Smith normal forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

from . import intlinalg
from .fourier_mukai import t_b
from .isometries import builtin_map
from .lattice import (
    E, F, N1, N2, O1, O2, ZERO_SECTION, ZETA, CohClass, H2Class,
    ch_line_bundle, intersect,
)

_TAU = builtin_map("tau")
_ALPHA = builtin_map("alpha")

#: e - zeta + f, the translation part of t_tilde.
SHIFT = ZERO_SECTION - ZETA + F
_E_MINUS_ZETA = ZERO_SECTION - ZETA


class SpectralError(ValueError):
    pass


def omega(d: H2Class) -> H2Class:
    """Linear part of :func:`t_tilde`."""
    return (_TAU(d) + intersect(d, _E_MINUS_ZETA) * F
            + intersect(d, F) * SHIFT)


def t_tilde(d: H2Class) -> H2Class:
    """Class of the line bundle induced by the spectral involution on ``O_B(d)``."""
    return omega(d) + SHIFT


def t_tilde_via_cohomology(d: H2Class) -> H2Class:
    """Same map, read off as the degree-two part of ``t_b(exp(d))``."""
    return t_b(ch_line_bundle(d)).div


@dataclass(frozen=True)
class SpectralImage:
    """H^0 class and the multiplicities of ``O_{o_i}(-1)`` in H^1."""

    h0: H2Class
    torsion_o1: int
    torsion_o2: int

    def __post_init__(self):
        if self.torsion_o1 < 0 or self.torsion_o2 < 0:
            raise ValueError("torsion multiplicities must be non-negative")

    def ch(self) -> CohClass:
        # ch(O_{o_i}(-1)) = o_i since o_i^2 = -2
        return ch_line_bundle(self.h0) - CohClass.of(
            self.torsion_o1 * O1 + self.torsion_o2 * O2)


def t_full_on_multiple_of_section(a: int, xi: H2Class) -> SpectralImage:
    """Image of ``O_B(-a xi)`` for a section xi and ``a >= 0``.

    H^1 is ``O_{o1}(-1)^k1 + O_{o2}(-1)^k2`` with ``k_i = (a - 1) * (tau^* xi . n_i)``
    for ``a >= 1``.  Since ``tau^* n1 = o2`` and ``tau^* n2 = o1`` this is
    ``k1 = (a - 1) * (xi . o2)`` and ``k2 = (a - 1) * (xi . o1)``; the o-indices
    cross, which only matters for sections such as e7 meeting one o_i.
    H^0 is ``t_tilde(-a xi) + k1 o1 + k2 o2``.
    """
    from .mordell_weil import is_section_class

    if a < 0:
        raise SpectralError("only O_B(-a xi) with a >= 0 is supported")
    if not xi.is_integral() or not is_section_class(xi):
        raise SpectralError(f"{xi} is not a section class")
    k = max(a - 1, 0)
    phi = _TAU(xi)
    k1 = k * int(intersect(phi, N1))
    k2 = k * int(intersect(phi, N2))
    h0 = t_tilde(-a * xi) + k1 * O1 + k2 * O2
    return SpectralImage(h0, k1, k2)


# -- Pic^W ----------------------------------------------------------------

PICW_GENERATORS: Tuple[H2Class, ...] = (
    F,
    ZERO_SECTION,
    *(F + E[i] - E[1] + E[9] for i in range(2, 7)),
    2 * E[7] - E[8] + 2 * F,
)

#: A Z-basis of Span(o1, o2)^perp as written down by hand.
PERP_BASIS_REFERENCE: Tuple[H2Class, ...] = (
    E[9],
    *(E[i] - E[1] for i in range(2, 7)),
    E[0] - E[7] - 2 * E[1],
    2 * E[0] - E[8] - 4 * E[1],
)


class PicWLattice:
    """Pic^W with its Hermite normal form computed once."""

    def __init__(self, generators=PICW_GENERATORS):
        self.generators = tuple(generators)
        self.hermite_basis = tuple(tuple(r) for r in intlinalg.hermite_normal_form(
            [g.to_ints() for g in self.generators]))

    @property
    def rank(self) -> int:
        return len(self.hermite_basis)

    def __contains__(self, d: H2Class) -> bool:
        if not d.is_integral():
            raise ValueError(f"{d} is not integral")
        return intlinalg.in_lattice(d.to_ints(), self.hermite_basis)


@lru_cache(maxsize=None)
def picw_lattice() -> PicWLattice:
    return PicWLattice()


def picw_contains(d: H2Class) -> bool:
    return d in picw_lattice()


def perp_lattice(*classes: H2Class) -> List[H2Class]:
    """Z-basis of the integral classes orthogonal to every class given."""
    rows = [[int(c.coeffs[0])] + [-int(x) for x in c.coeffs[1:]] for c in classes]
    return [H2Class(tuple(v)) for v in intlinalg.integer_kernel(rows)]


def picw_index_in_perp() -> int:
    """Index of Pic^W in Span(o1, o2)^perp."""
    perp = perp_lattice(O1, O2)
    return intlinalg.sublattice_index(
        [g.to_ints() for g in PICW_GENERATORS], [p.to_ints() for p in perp])


def curve_ch_identity(c: H2Class, line: H2Class) -> Tuple[CohClass, CohClass]:
    """Both sides of the Chern-character identity for sheaves on curves.

    Returns ``(t_b(ch(i_C* L|_C)), ch(i_D* L'|_D))`` with ``D = alpha^*(C)`` and
    ``L' = alpha^*(L) + e - zeta + f``.  Purely numerical: no finiteness of C
    over the base is required.
    """
    d = _ALPHA(c)
    lp = _ALPHA(line) + SHIFT
    lhs = t_b(ch_line_bundle(line) - ch_line_bundle(line - c))
    rhs = ch_line_bundle(lp) - ch_line_bundle(lp - d)
    return lhs, rhs


def spectral_transform_curve(c: H2Class, line: H2Class) -> Tuple[H2Class, H2Class]:
    """Support and line bundle of the transform of ``i_C* i_C^* L``.

    Returns ``(D, L')`` with ``D = alpha^*(C)`` and ``L' = alpha^*(L) + e - zeta + f``.
    C must lie in Pic^W and be finite over the base; the Chern-character
    identity of :func:`curve_ch_identity` is checked on the way out.
    """
    if not c.is_integral() or not picw_contains(c):
        raise SpectralError(f"curve class {c} is not in Pic^W")
    if intersect(c, F) < 1:
        raise SpectralError("curve must be finite over P^1 (C.f >= 1)")
    lhs, rhs = curve_ch_identity(c, line)
    if lhs != rhs:
        raise SpectralError(f"ch identity fails for C={c}, L={line}")
    return _ALPHA(c), _ALPHA(line) + SHIFT
