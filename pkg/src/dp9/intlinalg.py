"""Exact linear algebra over Z and Q.

Matrices are plain lists of rows.  Integer routines use Python ints, so
there is no overflow; rational routines use :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, prod
from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def _copy(a: Sequence[Sequence]) -> list:
    return [list(row) for row in a]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def rref(a: Sequence[Sequence]) -> Tuple[list, list]:
    """Reduced row echelon form over Q; returns ``(R, pivot_columns)``."""
    m = [[Fraction(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                k = m[i][c]
                m[i] = [x - k * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def determinant(a: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    det = Fraction(1)
    for i in range(n):
        p = next((k for k in range(i, n) if m[k][i]), None)
        if p is None:
            return Fraction(0)
        if p != i:
            m[i], m[p] = m[p], m[i]
            det = -det
        det *= m[i][i]
        for k in range(i + 1, n):
            q = m[k][i] / m[i][i]
            m[k] = [u - q * v for u, v in zip(m[k], m[i])]
    return det


def rational_kernel(a: Sequence[Sequence], ncols: int | None = None) -> list:
    """Basis of ``{x in Q^n : A x = 0}`` as a list of Fraction vectors."""
    if not a:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    r, pivots = rref(a)
    n = len(r[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][fc]
        basis.append(v)
    return basis


def primitive(v: Sequence[Fraction]) -> List[int]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def column_hermite(a: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, int]:
    """Column-style Hermite reduction.

    Returns ``(H, U, r)`` with ``U`` unimodular, ``H = A U`` lower
    echelon and the first ``r`` columns of ``H`` nonzero; the last
    ``n - r`` columns of ``U`` are a Z-basis of the integer kernel of A.
    """
    h = _copy(a)
    rows = len(h)
    n = len(h[0]) if rows else 0
    u = identity(n)

    def col_op(i: int, j: int, k: int) -> None:
        # column i -= k * column j
        for row in h:
            row[i] -= k * row[j]
        for row in u:
            row[i] -= k * row[j]

    def swap(i: int, j: int) -> None:
        for row in h:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    def negate(i: int) -> None:
        for row in h:
            row[i] = -row[i]
        for row in u:
            row[i] = -row[i]

    c = 0
    for r_ in range(rows):
        if c == n:
            break
        while True:
            nz = [j for j in range(c, n) if h[r_][j] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda j: abs(h[r_][j]))
            swap(c, piv)
            done = True
            for j in range(c + 1, n):
                if h[r_][j]:
                    col_op(j, c, h[r_][j] // h[r_][c])
                    if h[r_][j]:
                        done = False
            if done:
                break
        if h[r_][c] == 0:
            continue
        if h[r_][c] < 0:
            negate(c)
        for j in range(c):
            col_op(j, c, h[r_][j] // h[r_][c])
        c += 1
    return h, u, c


def integer_kernel(a: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Z-basis (list of vectors) of ``{x in Z^n : A x = 0}``."""
    if not a:
        return identity(ncols or 0)
    _, u, r = column_hermite(a)
    n = len(u)
    return [[u[i][j] for i in range(n)] for j in range(r, n)]


def hermite_normal_form(gens: Sequence[Sequence[int]]) -> Matrix:
    """Row Hermite normal form of the lattice spanned by the rows of ``gens``.

    Returned rows are a Z-basis in echelon form with positive pivots and
    reduced entries above each pivot; zero rows are dropped.
    """
    h, _, r = column_hermite(transpose(gens))
    basis = transpose([[row[j] for j in range(r)] for row in h])
    return [list(v) for v in basis]


def in_lattice(v: Sequence[int], hnf_rows: Sequence[Sequence[int]]) -> bool:
    """Membership of ``v`` in the Z-span of echelon rows ``hnf_rows``."""
    rem = list(v)
    for row in hnf_rows:
        p = next(i for i, x in enumerate(row) if x)
        if rem[p] % row[p]:
            return False
        k = rem[p] // row[p]
        rem = [x - k * y for x, y in zip(rem, row)]
    return not any(rem)


def smith_normal_form(a: Sequence[Sequence[int]]) -> List[int]:
    """Invariant factors ``d1 | d2 | ...`` of an integer matrix (nonzero ones only)."""
    m = _copy(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(m[i][j]), i, j) for i in range(t, rows)
              for j in range(t, cols) if m[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        while True:
            changed = False
            p = m[t][t]
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // p
                    m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                    if m[i][t]:
                        changed = True
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // p
                    for row in m:
                        row[j] -= q * row[t]
                    if m[t][j]:
                        changed = True
            if not changed:
                bad = next(((i, j) for i in range(t + 1, rows)
                            for j in range(t + 1, cols) if m[i][j] % p), None)
                if bad is None:
                    break
                # pull the non-divisible entry into the pivot row
                m[t] = [x + y for x, y in zip(m[t], m[bad[0]])]
                changed = True
            if changed:
                nz = [(abs(m[i][j]), i, j) for i in range(t, rows)
                      for j in range(t, cols) if m[i][j]]
                _, pi, pj = min(nz)
                m[t], m[pi] = m[pi], m[t]
                for row in m:
                    row[t], row[pj] = row[pj], row[t]
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def solve_rational(a_cols: Sequence[Sequence], v: Sequence) -> list | None:
    """Coordinates of ``v`` in the Q-span of the columns ``a_cols``; None if outside."""
    n = len(a_cols)
    aug = [[Fraction(a_cols[j][i]) for j in range(n)] + [Fraction(v[i])]
           for i in range(len(v))]
    r, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, pc in enumerate(pivots):
        x[pc] = r[i][n]
    return x


def sublattice_index(sub: Sequence[Sequence[int]], sup: Sequence[Sequence[int]]) -> int:
    """Index ``[sup : sub]`` of two lattices of equal rank.

    ``sup`` must be a Z-basis (linearly independent rows); ``sub`` any
    generating set contained in it.
    """
    if rank(sub) != rank(sup) or rank(sup) != len(sup):
        raise ValueError("lattices must have equal rank and sup must be a basis")
    coords = []
    for g in sub:
        x = solve_rational(sup, g)
        if x is None or any(c.denominator != 1 for c in x):
            raise ValueError(f"generator {list(g)} is not in the larger lattice")
        coords.append([int(c) for c in x])
    return prod(smith_normal_form(coords))
