"""Acceptance criteria, one test per criterion, all with exact equality.

Each test is stated as the criterion is written, so a criterion that the
mathematics does not support shows up as a failing test rather than being
softened.  ``pytest`` prints one PASS/FAIL line per criterion at the end
of the run (see ``conftest.py``); running this file as a script does the
same without pytest.
"""
import contextlib
import io
import itertools
import random
import sys

from dp9.cli import main as cli_main
from dp9.fourier_mukai import (
    BasePullback, SectionPush, ch_symbol, cohomology_basis, fm, fm_inv, fm_symbol, t_b,
)
from dp9.geometry import (
    EXAMPLE_CUBIC, BinaryForm, fiber_profile, is_tau_invariant, normalize_point, plane_involution,
)
from dp9.intlinalg import rational_kernel, smith_normal_form, solve_rational
from dp9.isometries import BUILTIN_NAMES, IDENTITY, builtin_map, compose
from dp9.lattice import BASIS_NAMES, DIM, E, F, N1, N2, O1, O2, CohClass, H2Class, ch_line_bundle, intersect
from dp9.mordell_weil import (
    IDENTITY as MW_ZERO, SectionClass, is_section_class, mw_add, mw_neg, mw_normalize,
    mw_quotient_structure,
)
from dp9.parser import format_class, parse_class, parse_h2
from dp9.spectral import (
    PICW_GENERATORS, curve_ch_identity, omega, perp_lattice, picw_contains,
    picw_index_in_perp, t_full_on_multiple_of_section, t_tilde, t_tilde_via_cohomology,
)
from dp9.verify import DEFAULT_SEED, DISCREPANCY, FAIL, I2_PAIR, random_coh, run_verification

SEED = DEFAULT_SEED
SECTIONS = (*E[1:8], E[9])


def _rng(tag):
    return random.Random(f"{SEED}:acceptance:{tag}")


def _random_lines(n, tag):
    rng = _rng(tag)
    return [H2Class(tuple(rng.randint(-5, 5) for _ in range(DIM))) for _ in range(n)]


# Table 1 as printed, row by row; parenthesized sums are expanded.
PRINTED_TABLE1_ROWS = {
    "e1": ("l - e1 - e7", "e9", "l - e1 - e7", "e9"),
    "e{j}": ("l - e{j} - e7", "f + e{j} - e1 + e9", "l - e{j} - e7", "f - e{j} + e1 + e9"),
    "e{i}": ("l - e{i} - e7", "f + e{i} - e1 + e9", "e{i}", "f - l + e{i} + e1 + e7 + e9"),
    "e7": ("f - e7 + e8 + e9", "l - e1 - e8", "2l - e1 - e2 - e3 - e7 - e8", "l - e2 - e3"),
    "e8": ("e8", "f + l + e9 - e1 - e7 - e8", "l - e7 - e8", "f - l + e1 + e7 + e8 + e9"),
    "e9": ("e9", "l - e1 - e7", "e9", "e1"),
    "l": ("l + f - 2e7 + e8 + e9", "2f + 2l - 3e1 - e7 - e8 + 2e9",
          "3l - e1 - e2 - e3 - 2e7 - e8", "2f + 2e1 + 2e9 - e2 - e3 + e7"),
}
TABLE1_MAPS = ("neg", "t_zeta", "alpha", "tau")


def _printed_table1():
    out = {}
    for row, images in PRINTED_TABLE1_ROWS.items():
        if row == "e{j}":
            names = [(f"e{j}", {"j": j}) for j in (2, 3)]
        elif row == "e{i}":
            names = [(f"e{i}", {"i": i}) for i in (4, 5, 6)]
        else:
            names = [(row, {})]
        for name, subs in names:
            for m, img in zip(TABLE1_MAPS, images):
                out[(m, name)] = parse_h2(img.format(**subs))
    return out


PRINTED_TABLE2 = {
    "one": ("-e9 + 1/2 pt", "e9 + 1/2 pt"),
    "pt": ("f", "-f"),
    "f": ("-pt", "pt"),
    **{f"e{i}": (f"1 + e{i} - e9 - 3/2 f - pt", f"-1 + e{i} - e9 - 3/2 f + pt") for i in range(1, 9)},
    "e9": ("1 - 1/2 f", "-1 - 1/2 f"),
}

PRINTED_TABLE3 = {
    "pt": "pt",
    "f": "f",
    **{f"e{j}": f"2f + 2e9 - e{j} - 2pt" for j in (1, 2, 3)},
    **{f"e{i}": f"2f - l + 2e9 + e7 + e{i} - pt" for i in (4, 5, 6)},
    "e7": "f + l - e1 - e2 - e3 + e9 - pt",
    "e8": "2f - l + 2e9 + e7 + e8 - pt",
    "e9": "e9",
    "l": "5f - e1 - e2 - e3 + e7 + 5e9 - 3pt",
}

DOCUMENTED_DISCREPANCIES = {"table3.one", "spectral.omega_o2", "table1.alpha_e1_sentence"}


def _coh(name):
    if name == "f":
        return CohClass.of(F)
    return dict(cohomology_basis())[name]


def test_criterion_01_table1_reproduction():
    """Table 1: 40 images verbatim, involutions, Gram matrix preserved."""
    printed = _printed_table1()
    assert len(printed) == 40
    for (m, name), img in printed.items():
        assert builtin_map(m)(E[BASIS_NAMES.index(name)]) == img, (m, name)
    for m in ("neg", "alpha", "tau"):
        assert compose(builtin_map(m), builtin_map(m)).matrix == IDENTITY.matrix
    assert all(builtin_map(m).preserves_form() for m in BUILTIN_NAMES)


def test_criterion_02_composition_law():
    """compose(alpha, t_zeta) = tau; compose(t_zeta, alpha) != tau."""
    alpha, tz, tau = builtin_map("alpha"), builtin_map("t_zeta"), builtin_map("tau")
    assert compose(alpha, tz).matrix == tau.matrix
    assert compose(tz, alpha).matrix != tau.matrix


def test_criterion_03_table2_and_inverse():
    """Table 2 reproduced; fm and fm_inv mutually inverse on all 12 basis classes."""
    for name, (img, inv_img) in PRINTED_TABLE2.items():
        assert fm(_coh(name)) == parse_class(img), name
        assert fm_inv(_coh(name)) == parse_class(inv_img), name
    for _, c in cohomology_basis():
        assert fm(fm_inv(c)) == c and fm_inv(fm(c)) == c


def test_criterion_04_table3_recomputation():
    """Table 3 rows pt, f, e1..e9, l match; row 1 is a discrepancy with 1 + f + e9 - e1 - pt; t_b^2 = id."""
    mismatched = [name for name, printed in PRINTED_TABLE3.items()
                  if t_b(_coh(name)) != parse_class(printed)]
    rec = run_verification(seed=SEED, only=["table3.one"]).by_id("table3.one")
    assert rec.status == DISCREPANCY
    assert parse_class(rec.actual) == parse_class("1 + f + e9 - e1 - pt")
    assert all(t_b(t_b(c)) == c for _, c in cohomology_basis())
    assert mismatched == [], f"rows differing from the printed table: {mismatched}"


def test_criterion_05_symbol_square():
    """ch_symbol(fm_symbol(s)) = fm(ch_symbol(s)) on base pullbacks and section pushforwards."""
    samples = [BasePullback(d) for d in range(-3, 4)]
    samples += [SectionPush(xi, d) for xi in SECTIONS for d in range(-3, 4)]
    for s in samples:
        assert ch_symbol(fm_symbol(s)) == fm(ch_symbol(s)), s


def test_criterion_06_t_tilde_coherence():
    """t_tilde = [t_b(exp)]_2 on 1000 seeded L; affine involution; Omega isometric; Omega(o_i)."""
    lines = _random_lines(1000, "c6")
    for d in lines:
        assert t_tilde(d) == t_tilde_via_cohomology(d)
        assert t_tilde(t_tilde(d)) == d
    assert all(intersect(omega(E[i]), omega(E[j])) == intersect(E[i], E[j])
               for i in range(DIM) for j in range(DIM))
    assert omega(O1) == -O2
    assert omega(O2) == -O1


def test_criterion_07_torsion_bookkeeping():
    """ch(h0) - k1 o1 - k2 o2 = t_b(ch O(-a xi)) with k_i = max(a-1, 0)(xi.o_i)."""
    failures = []
    for xi, a in itertools.product(SECTIONS, range(6)):
        img = t_full_on_multiple_of_section(a, xi)
        k1 = max(a - 1, 0) * int(intersect(xi, O1))
        k2 = max(a - 1, 0) * int(intersect(xi, O2))
        coherent = img.ch() == t_b(ch_line_bundle(-a * xi))
        as_stated = (img.torsion_o1, img.torsion_o2) == (k1, k2)
        zero_rule = ((img.torsion_o1, img.torsion_o2) == (0, 0)) == (
            a <= 1 or (intersect(xi, O1) == 0 and intersect(xi, O2) == 0))
        if not (coherent and as_stated and zero_rule):
            failures.append((a, str(xi), (img.torsion_o1, img.torsion_o2), (k1, k2)))
    assert failures == [], f"(a, xi, torsion, k_i as stated): {failures}"


def test_criterion_08_picw():
    """Pic^W has index 3 in Span(o1, o2)^perp; generators are members; e1 is not."""
    assert picw_index_in_perp() == 3
    coords = []
    perp = [p.to_ints() for p in perp_lattice(O1, O2)]
    for g in PICW_GENERATORS:
        coords.append([int(x) for x in solve_rational(perp, g.to_ints())])
    assert smith_normal_form(coords) == [1] * 7 + [3]
    assert len(PICW_GENERATORS) == 8 and all(picw_contains(g) for g in PICW_GENERATORS)
    assert not picw_contains(E[1])


def test_criterion_09_eigen_lattices():
    """dim ker(alpha^* + I) = 4 and dim ker(alpha^* - I) = 6 over Q."""
    m = builtin_map("alpha").matrix
    for sign, dim in ((-1, 4), (1, 6)):
        shifted = [[m[i][j] - sign * (i == j) for j in range(DIM)] for i in range(DIM)]
        assert len(rational_kernel(shifted)) == dim


def _brute_normalize(x, box=6):
    return [y for a, b, c in itertools.product(range(-box, box + 1), repeat=3)
            for y in [x + a * F + b * N1 + c * N2] if is_section_class(y)]


def test_criterion_10_mordell_weil():
    """Free rank 6; group axioms on the 9-section sample; Table 1 translations; normalization oracle."""
    assert mw_quotient_structure()[0] == 6
    sample = [SectionClass(x) for x in SECTIONS] + [SectionClass(builtin_map("alpha")(E[1]))]
    assert len(sample) == 9
    closed = list({z.cls: z for z in sample + [mw_add(x, y) for x in sample for y in sample]}.values())
    for x in closed:
        assert mw_add(x, MW_ZERO) == x
        assert mw_add(x, mw_neg(x)) == MW_ZERO
    for x, y in itertools.product(sample, repeat=2):
        assert mw_add(x, y) == mw_add(y, x)
    for x, y, z in itertools.product(sample, repeat=3):
        assert mw_add(mw_add(x, y), z) == mw_add(x, mw_add(y, z))
    neg_e1 = mw_neg(SectionClass(E[1]))
    for i in range(2, 7):
        assert mw_add(SectionClass(E[i]), neg_e1).cls == F + E[i] - E[1] + E[9]
    assert [mw_normalize(2 * E[1] - E[9]).cls] == _brute_normalize(2 * E[1] - E[9])


def test_criterion_11_curves():
    """ch-level identity for C in {f, 2e9 + 2f, 3e9 + 5f} and 100 seeded L."""
    for c in (F, 2 * E[9] + 2 * F, 3 * E[9] + 5 * F):
        for line in _random_lines(100, f"c11:{c}"):
            lhs, rhs = curve_ch_identity(c, line)
            assert lhs == rhs


def test_criterion_12_geometry():
    """(t0^4, t1^6) gives 12 simple roots; an invariant pair gives 8 + 2x2; the plane involution."""
    prof = fiber_profile(BinaryForm.of(1, 0, 0, 0, 0), BinaryForm.of(0, 0, 0, 0, 0, 0, 1))
    assert prof.profile == ((1, 12),)
    g2, g3 = I2_PAIR
    assert is_tau_invariant(g2) and is_tau_invariant(g3)
    assert fiber_profile(g2, g3).profile == ((1, 8), (2, 2))
    rng = _rng("c12")
    done = 0
    while done < 100:
        p = tuple(rng.randint(-9, 9) for _ in range(3))
        if not any(p) or EXAMPLE_CUBIC.dz(p) == 0:
            continue
        q = plane_involution(EXAMPLE_CUBIC, p)
        if EXAMPLE_CUBIC.dz(q) == 0:
            continue
        assert plane_involution(EXAMPLE_CUBIC, q) == normalize_point(p)
        done += 1
    for p in ((1, 0, -1), (1, -1, 0), (1, -1, 1)):
        assert EXAMPLE_CUBIC(p) == 0
        assert plane_involution(EXAMPLE_CUBIC, p) == normalize_point(p)


def test_criterion_13_parser_and_verify():
    """500 parser round trips; verify exits 0 flagging exactly the documented discrepancies."""
    rng = _rng("c13")
    for _ in range(500):
        c = random_coh(rng)
        assert parse_class(format_class(c)) == c
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = cli_main(["verify", "--seed", str(SEED)])
    records = [line.split("\t") for line in out.getvalue().splitlines()]
    assert code == 0
    assert not [r for r in records if r[1] == FAIL]
    flagged = {r[0] for r in records if r[1] == DISCREPANCY}
    assert flagged == DOCUMENTED_DISCREPANCIES, f"extra: {sorted(flagged - DOCUMENTED_DISCREPANCIES)}"


CRITERIA = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]


def _run_as_script() -> int:
    bad = 0
    for fn in CRITERIA:
        num = int(fn.__name__.split("_")[2])
        try:
            with contextlib.redirect_stdout(io.StringIO()):
                fn()
            status, note = "PASS", ""
        except AssertionError as exc:
            status, note, bad = "FAIL", f"  ({str(exc).splitlines()[0][:160]})" if str(exc) else "", bad + 1
        print(f"criterion {num:2d}: {status}  {fn.__doc__.strip()}{note}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(_run_as_script())
