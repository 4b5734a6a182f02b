"""Exact polynomial layer: Weierstrass data, discriminant and the plane involution.

Binary forms are stored by coefficient, ``coeffs[k]`` multiplying
``t0^(deg-k) t1^k``.  Root data is read off exactly: a form is
dehomogenized at ``t0 = 1`` and the drop in degree is the multiplicity
of the root ``t0 = 0``.  No root is ever approximated.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Sequence, Tuple

Poly = List[Fraction]  # dense, constant term first, no trailing zeros


class GeometryError(ValueError):
    pass


# -- univariate helpers over Q ------------------------------------------------

def _trim(p: Sequence) -> Poly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def _deg(p: Poly) -> int:
    return len(p) - 1  # -1 for the zero polynomial


def _monic(p: Poly) -> Poly:
    return [c / p[-1] for c in p] if p else p


def _derivative(p: Poly) -> Poly:
    return _trim([k * p[k] for k in range(1, len(p))])


def _divmod(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / b[-1]
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        a = _trim(a)
    return _trim(q), a


def _poly_gcd(a: Poly, b: Poly) -> Poly:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    return _monic(a)


def _exact_div(a: Poly, b: Poly) -> Poly:
    q, r = _divmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def squarefree_decomposition(p: Sequence) -> List[Tuple[int, Poly]]:
    """Yun's algorithm: monic squarefree ``p_k`` with ``p = c * prod p_k^k``.

    Only factors of positive degree are returned, as ``(k, p_k)``.
    """
    p = _trim(p)
    if not p:
        raise GeometryError("zero polynomial has no squarefree decomposition")
    out = []
    dp = _derivative(p)
    a = _poly_gcd(p, dp)
    b = _exact_div(p, a)
    c = _exact_div(dp, a)
    d = _trim([x - y for x, y in _zip_pad(c, _derivative(b))])
    k = 1
    while _deg(b) > 0:
        g = _poly_gcd(b, d)
        if _deg(g) > 0:
            out.append((k, g))
        b = _exact_div(b, g)
        c = _exact_div(d, g)
        d = _trim([x - y for x, y in _zip_pad(c, _derivative(b))])
        k += 1
    return out


def _zip_pad(a: Poly, b: Poly):
    n = max(len(a), len(b))
    return zip(list(a) + [Fraction(0)] * (n - len(a)), list(b) + [Fraction(0)] * (n - len(b)))


# -- binary forms -------------------------------------------------------------

@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form in ``t0, t1``; ``coeffs[k]`` multiplies ``t0^(degree-k) t1^k``."""

    degree: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        cs = tuple(Fraction(c) for c in self.coeffs)
        if len(cs) != self.degree + 1:
            raise ValueError(f"degree {self.degree} form needs {self.degree + 1} coefficients, got {len(cs)}")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def of(cls, *coeffs) -> "BinaryForm":
        return cls(len(coeffs) - 1, tuple(coeffs))

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, (0,) * (degree + 1))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            out = [Fraction(0)] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return BinaryForm(self.degree + other.degree, tuple(out))
        if isinstance(other, (int, Fraction)):
            return BinaryForm(self.degree, tuple(other * c for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BinaryForm":
        out = BinaryForm(0, (1,))
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, t0, t1) -> Fraction:
        n = self.degree
        return sum(c * Fraction(t0) ** (n - k) * Fraction(t1) ** k
                   for k, c in enumerate(self.coeffs))

    def dehomogenize(self) -> Tuple[Poly, int]:
        """``(p(t), m)`` with ``p(t) = form(1, t)`` and ``m`` the multiplicity of ``t0 = 0``."""
        p = _trim(self.coeffs)
        return p, self.degree - _deg(p)

    def to_line(self) -> str:
        return f"{self.degree}: " + " ".join(str(c) for c in self.coeffs)

    @classmethod
    def from_line(cls, line: str) -> "BinaryForm":
        """Parse ``deg: c0 c1 ... cdeg`` with integer or ``p/q`` entries."""
        head, sep, rest = line.partition(":")
        if not sep:
            raise ValueError(f"expected 'deg: c0 c1 ...', got {line!r}")
        try:
            deg = int(head.strip())
            coeffs = tuple(Fraction(tok) for tok in rest.split())
        except ValueError as exc:
            raise ValueError(f"bad binary form line {line!r}: {exc}") from None
        return cls(deg, coeffs)


def read_forms(text: str) -> List[BinaryForm]:
    """All forms in a file body; blank lines and ``#`` comments are skipped."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(BinaryForm.from_line(line))
    return out


def is_tau_invariant(g: BinaryForm) -> bool:
    """Invariance under ``t1 -> -t1``: every odd-``k`` coefficient vanishes."""
    return all(c == 0 for k, c in enumerate(g.coeffs) if k % 2)


def discriminant(g2: BinaryForm, g3: BinaryForm) -> BinaryForm:
    """``4 g2^3 + 27 g3^2``; the customary factor -16 is dropped."""
    if g2.degree != 4 or g3.degree != 6:
        raise GeometryError(f"expected degrees (4, 6), got ({g2.degree}, {g3.degree})")
    return 4 * g2 ** 3 + 27 * g3 ** 2


def form_gcd(a: BinaryForm, b: BinaryForm) -> Tuple[Poly, int]:
    """Gcd of two forms as ``(monic dehomogenized part, power of t0)``; zero acts as identity."""
    if a.is_zero():
        a, b = b, a
    if a.is_zero():
        raise GeometryError("gcd of two zero forms is undefined")
    pa, ma = a.dehomogenize()
    if b.is_zero():
        return _monic(pa), ma
    pb, mb = b.dehomogenize()
    return _poly_gcd(pa, pb), min(ma, mb)


@dataclass(frozen=True)
class FiberProfile:
    """Root multiplicities of the discriminant as sorted ``(multiplicity, count)`` pairs."""

    profile: Tuple[Tuple[int, int], ...]
    additive_flag: bool
    factors: Tuple[Tuple[int, Tuple[Fraction, ...]], ...] = ()
    infinity_multiplicity: int = 0

    def as_dict(self) -> Dict[int, int]:
        return dict(self.profile)


def fiber_profile(g2: BinaryForm, g3: BinaryForm) -> FiberProfile:
    """Multiplicity profile of the singular fibers, via squarefree decomposition of the discriminant.

    ``additive_flag`` is set when some multiple root of the discriminant is
    also a common root of ``g2`` and ``g3``: such a fiber may be of additive
    type rather than ``I_k``.
    """
    delta = discriminant(g2, g3)
    if delta.is_zero():
        raise GeometryError("discriminant vanishes identically")
    p, m_inf = delta.dehomogenize()
    factors = squarefree_decomposition(p) if _deg(p) > 0 else []
    counts: Dict[int, int] = {}
    for k, pk in factors:
        counts[k] = counts.get(k, 0) + _deg(pk)
    if m_inf:
        counts[m_inf] = counts.get(m_inf, 0) + 1

    common, common_inf = form_gcd(g2, g3)
    repeated: Poly = [Fraction(1)]
    for k, pk in factors:
        if k >= 2:
            repeated = _mul(repeated, pk)
    additive = _deg(_poly_gcd(repeated, common)) > 0 or (m_inf >= 2 and common_inf > 0)
    return FiberProfile(
        profile=tuple(sorted(counts.items())),
        additive_flag=additive,
        factors=tuple((k, tuple(pk)) for k, pk in factors),
        infinity_multiplicity=m_inf,
    )


def _mul(a: Poly, b: Poly) -> Poly:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


# -- the plane involution -----------------------------------------------------

Monomial = Tuple[int, int, int]


@dataclass(frozen=True)
class PlaneCubic:
    """Homogeneous cubic ``F(x, y, z)`` stored as ``{(i, j, k): coeff}`` for ``x^i y^j z^k``."""

    terms: Tuple[Tuple[Monomial, Fraction], ...]

    def __init__(self, terms: Dict[Monomial, object]):
        clean = {}
        for mono, c in terms.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != 3 or min(mono) < 0 or sum(mono) != 3:
                raise ValueError(f"{mono} is not a cubic monomial")
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
        clean = {m: c for m, c in clean.items() if c}
        if not clean:
            raise ValueError("cubic must not be identically zero")
        object.__setattr__(self, "terms", tuple(sorted(clean.items(), reverse=True)))

    def coefficient(self, mono: Monomial) -> Fraction:
        return dict(self.terms).get(tuple(mono), Fraction(0))

    def __call__(self, p: Sequence) -> Fraction:
        x, y, z = (Fraction(c) for c in p)
        return sum(c * x ** i * y ** j * z ** k for (i, j, k), c in self.terms)

    def dz(self, p: Sequence) -> Fraction:
        x, y, z = (Fraction(c) for c in p)
        return sum(c * k * x ** i * y ** j * z ** (k - 1)
                   for (i, j, k), c in self.terms if k)


def normalize_point(p: Sequence) -> Tuple[int, int, int]:
    """Primitive integer representative, first nonzero coordinate positive."""
    p = [Fraction(c) for c in p]
    if not any(p):
        raise GeometryError("(0, 0, 0) is not a projective point")
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = gcd(*ints)
    ints = [c // g for c in ints]
    if next(c for c in ints if c) < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def plane_involution(cubic: PlaneCubic, p: Sequence) -> Tuple[int, int, int]:
    """``(x : y : z - 2F/F_z)`` with ``b = (0:0:1)`` on the cubic."""
    if cubic.coefficient((0, 0, 3)):
        raise GeometryError("the z^3 coefficient must vanish so that (0:0:1) lies on the cubic")
    x, y, z = (Fraction(c) for c in p)
    if not (x or y or z):
        raise GeometryError("(0, 0, 0) is not a projective point")
    fz = cubic.dz((x, y, z))
    if fz == 0:
        raise GeometryError(f"F_z vanishes at {tuple(p)}: indeterminacy point")
    return normalize_point((x, y, z - 2 * cubic((x, y, z)) / fz))


#: The example cubic ``x^3 + y^3 + x^2 z + y z^2``.
EXAMPLE_CUBIC = PlaneCubic({(3, 0, 0): 1, (0, 3, 0): 1, (2, 0, 1): 1, (0, 1, 2): 1})
