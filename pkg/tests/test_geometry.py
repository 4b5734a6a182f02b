import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dp9.geometry import (
    EXAMPLE_CUBIC, BinaryForm, GeometryError, PlaneCubic, discriminant, fiber_profile,
    is_tau_invariant, normalize_point, plane_involution, read_forms, squarefree_decomposition,
)
from dp9.verify import DEFAULT_SEED, I2_PAIR

t0, t1, t = sympy.symbols("t0 t1 t")


def _sym(g: BinaryForm):
    return sum(sympy.Rational(c.numerator, c.denominator) * t0 ** (g.degree - k) * t1 ** k
               for k, c in enumerate(g.coeffs))


def _sympy_profile(g2, g3):
    """Profile from sympy's sqf_list on the homogeneous discriminant."""
    delta = sympy.Poly(sympy.expand(4 * _sym(g2) ** 3 + 27 * _sym(g3) ** 2), t0, t1)
    counts = {}
    for factor, k in sympy.sqf_list(delta.as_expr(), t0, t1)[1]:
        counts[k] = counts.get(k, 0) + sympy.Poly(factor, t0, t1).total_degree()
    return tuple(sorted(counts.items()))


even_small = st.integers(-3, 3)


def even_form(deg):
    return st.lists(even_small, min_size=deg // 2 + 1, max_size=deg // 2 + 1).map(
        lambda cs: BinaryForm(deg, tuple(cs[k // 2] if k % 2 == 0 else 0 for k in range(deg + 1))))


def any_form(deg):
    return st.lists(even_small, min_size=deg + 1, max_size=deg + 1).map(
        lambda cs: BinaryForm(deg, tuple(cs)))


def test_tau_invariance_examples():
    assert is_tau_invariant(BinaryForm.of(1, 0, 0, 0, 0))
    assert not is_tau_invariant(BinaryForm.of(0, 1, 0, 0, 0, 0, 0))
    assert is_tau_invariant(BinaryForm.of(0, 0, 1, 0, 5))


def test_discriminant_examples():
    g2 = BinaryForm.of(1, 0, 0, 0, 0)
    g3 = BinaryForm.of(0, 0, 0, 0, 0, 0, 1)
    assert discriminant(g2, g3).coeffs == (4,) + (0,) * 11 + (27,)
    assert discriminant(BinaryForm.zero(4), BinaryForm.of(1, 0, 0, 0, 0, 0, 0)).coeffs == (27,) + (0,) * 12
    with pytest.raises(GeometryError):
        discriminant(g3, g2)


@settings(max_examples=100, deadline=None)
@given(even_form(4), even_form(6))
def test_discriminant_of_invariant_pair_is_invariant(g2, g3):
    assert is_tau_invariant(discriminant(g2, g3))


@settings(max_examples=40, deadline=None)
@given(any_form(4), any_form(6))
def test_profile_against_sympy(g2, g3):
    if discriminant(g2, g3).is_zero():
        with pytest.raises(GeometryError):
            fiber_profile(g2, g3)
        return
    prof = fiber_profile(g2, g3)
    assert prof.profile == _sympy_profile(g2, g3)
    assert sum(k * n for k, n in prof.profile) == 12


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=9))
def test_squarefree_reconstructs(cs):
    if not any(cs):
        return
    p = sympy.Poly(list(reversed(cs)), t)
    ours = squarefree_decomposition(cs)
    prod = sympy.Integer(1)
    for k, pk in ours:
        prod *= sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(pk)], t).as_expr() ** k
    assert sympy.simplify(p.as_expr() / prod).is_number
    assert [k for k, _ in ours] == [k for _, k in sympy.sqf_list(p.as_expr())[1]]


def test_generic_pair_is_twelve_nodes():
    prof = fiber_profile(BinaryForm.of(1, 0, 0, 0, 0), BinaryForm.of(0, 0, 0, 0, 0, 0, 1))
    assert prof.profile == ((1, 12),)
    assert not prof.additive_flag


def test_invariant_pair_with_two_double_roots():
    g2, g3 = I2_PAIR
    assert is_tau_invariant(g2) and is_tau_invariant(g3)
    prof = fiber_profile(g2, g3)
    assert prof.profile == ((1, 8), (2, 2))
    assert not prof.additive_flag
    assert _sympy_profile(g2, g3) == prof.profile
    # the double roots are t1 = +-t0, swapped by tau
    assert (2, (Fraction(-1), Fraction(0), Fraction(1))) in prof.factors


def test_additive_flag_and_roots_at_infinity():
    prof = fiber_profile(BinaryForm.of(1, 0, 0, 0, 0), BinaryForm.zero(6))
    assert prof.profile == ((12, 1),)
    assert prof.infinity_multiplicity == 12
    assert prof.additive_flag
    # cusp-like: g2 = g3 = 0 at t1 = 0 with a multiple root there
    prof = fiber_profile(BinaryForm.of(0, 0, 1, 0, 0), BinaryForm.of(0, 0, 0, 1, 0, 0, 1))
    assert prof.additive_flag


def test_file_format_round_trip(tmp_path):
    g = BinaryForm.of(Fraction(1, 2), 0, -3, 0, 7)
    assert BinaryForm.from_line(g.to_line()) == g
    path = tmp_path / "g2.txt"
    path.write_text("# comment\n4: 1/2 0 -3 0 7\n\n")
    assert read_forms(path.read_text()) == [g]
    with pytest.raises(ValueError):
        BinaryForm.from_line("4 1 2 3")
    with pytest.raises(ValueError):
        BinaryForm.from_line("4: 1 2 3")
    with pytest.raises(ValueError):
        BinaryForm.from_line("2: 1 x 3")


# -- plane involution ----------------------------------------------------------

def _random_points(n):
    rng = random.Random(f"{DEFAULT_SEED}:plane")
    out = []
    while len(out) < n:
        p = tuple(rng.randint(-9, 9) for _ in range(3))
        if any(p) and EXAMPLE_CUBIC.dz(p) != 0:
            q = plane_involution(EXAMPLE_CUBIC, p)
            if EXAMPLE_CUBIC.dz(q) != 0:
                out.append(p)
    return out


def test_involution_squares_to_identity():
    for p in _random_points(100):
        q = plane_involution(EXAMPLE_CUBIC, p)
        assert plane_involution(EXAMPLE_CUBIC, q) == normalize_point(p)
        # only z moves: q stays on the line through (0:0:1) and p
        assert sympy.Matrix([p, q, (0, 0, 1)]).det() == 0


def test_involution_on_spec_point():
    # F(1,1,1) = 4 and F_z(1,1,1) = 3, so z -> 1 - 8/3
    q = plane_involution(EXAMPLE_CUBIC, (1, 1, 1))
    assert q == (3, 3, -5)
    assert plane_involution(EXAMPLE_CUBIC, q) == (1, 1, 1)


def test_cubic_fixed_pointwise():
    points = [(1, 0, -1), (1, -1, 0), (1, -1, 1)]
    for p in points:
        assert EXAMPLE_CUBIC(p) == 0
        assert plane_involution(EXAMPLE_CUBIC, p) == normalize_point(p)


def test_involution_errors():
    with pytest.raises(GeometryError, match="indeterminacy"):
        plane_involution(EXAMPLE_CUBIC, (0, 0, 1))
    with pytest.raises(GeometryError, match="z\\^3"):
        plane_involution(PlaneCubic({(0, 0, 3): 1, (3, 0, 0): 1}), (1, 0, 0))
    with pytest.raises(GeometryError):
        plane_involution(EXAMPLE_CUBIC, (0, 0, 0))
    with pytest.raises(ValueError):
        PlaneCubic({(1, 1, 0): 1})
    with pytest.raises(ValueError):
        PlaneCubic({(3, 0, 0): 0})


def test_normalize_point():
    assert normalize_point((Fraction(1, 2), -1, 0)) == (1, -2, 0)
    assert normalize_point((0, -2, 4)) == (0, 1, -2)
