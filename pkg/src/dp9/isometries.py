"""Pullback actions of (-1)_B, t_zeta, alpha_B and tau_B on H^2(B, Z).

Each map is an integer 10x10 matrix whose columns are the images of
``l, e1, ..., e9``.  On H^0 and H^4 every map acts as the identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from . import intlinalg
from .lattice import BASIS_NAMES, DIM, GRAM, CohClass, H2Class
from .parser import parse_h2

# Images of the basis, column by column.  Keys follow BASIS_NAMES.
PULLBACK_IMAGES: Dict[str, Dict[str, str]] = {
    "neg": {
        "l": "l + f - 2e7 + e8 + e9",
        "e1": "l - e1 - e7",
        "e2": "l - e2 - e7",
        "e3": "l - e3 - e7",
        "e4": "l - e4 - e7",
        "e5": "l - e5 - e7",
        "e6": "l - e6 - e7",
        "e7": "f - e7 + e8 + e9",
        "e8": "e8",
        "e9": "e9",
    },
    "t_zeta": {
        "l": "2f + 2l - 3e1 - e7 - e8 + 2e9",
        "e1": "e9",
        "e2": "f + e2 - e1 + e9",
        "e3": "f + e3 - e1 + e9",
        "e4": "f + e4 - e1 + e9",
        "e5": "f + e5 - e1 + e9",
        "e6": "f + e6 - e1 + e9",
        "e7": "l - e1 - e8",
        "e8": "f + l + e9 - e1 - e7 - e8",
        "e9": "l - e1 - e7",
    },
    "alpha": {
        "l": "3l - e1 - e2 - e3 - 2e7 - e8",
        "e1": "l - e1 - e7",
        "e2": "l - e2 - e7",
        "e3": "l - e3 - e7",
        "e4": "e4",
        "e5": "e5",
        "e6": "e6",
        "e7": "2l - e1 - e2 - e3 - e7 - e8",
        "e8": "l - e7 - e8",
        "e9": "e9",
    },
    "tau": {
        "l": "2f + 2e1 + 2e9 - e2 - e3 + e7",
        "e1": "e9",
        "e2": "f - e2 + e1 + e9",
        "e3": "f - e3 + e1 + e9",
        "e4": "f - l + e4 + e1 + e7 + e9",
        "e5": "f - l + e5 + e1 + e7 + e9",
        "e6": "f - l + e6 + e1 + e7 + e9",
        "e7": "l - e2 - e3",
        "e8": "f - l + e1 + e7 + e8 + e9",
        "e9": "e1",
    },
}

BUILTIN_NAMES = tuple(PULLBACK_IMAGES)


class NotAnInvolution(ValueError):
    pass


@dataclass(frozen=True)
class PullbackMap:
    name: str
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(m) != DIM or any(len(row) != DIM for row in m):
            raise ValueError("pullback matrix must be 10x10")
        object.__setattr__(self, "matrix", m)

    def __call__(self, d: H2Class) -> H2Class:
        return H2Class(tuple(intlinalg.matvec(self.matrix, d.coeffs)))

    def column(self, i: int) -> H2Class:
        return H2Class(tuple(row[i] for row in self.matrix))

    def preserves_form(self) -> bool:
        m = [list(r) for r in self.matrix]
        return intlinalg.matmul(intlinalg.matmul(intlinalg.transpose(m), GRAM), m) \
            == [list(r) for r in GRAM]

    def is_involution(self) -> bool:
        return compose(self, self).matrix == IDENTITY.matrix


def _from_columns(name: str, cols: List[H2Class]) -> PullbackMap:
    return PullbackMap(name, tuple(
        tuple(cols[j].to_ints()[i] for j in range(DIM)) for i in range(DIM)))


IDENTITY = _from_columns("id", [H2Class.basis(i) for i in range(DIM)])

_BUILTINS = {
    name: _from_columns(name, [parse_h2(images[b]) for b in BASIS_NAMES])
    for name, images in PULLBACK_IMAGES.items()
}


def builtin_map(name: str) -> PullbackMap:
    """One of ``neg``, ``t_zeta``, ``alpha``, ``tau``."""
    try:
        return _BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown map {name!r}; expected one of {BUILTIN_NAMES}") from None


def apply_map(m: PullbackMap, c: CohClass) -> CohClass:
    return CohClass(c.rank, m(c.div), c.point)


def compose(m1: PullbackMap, m2: PullbackMap) -> PullbackMap:
    """Apply ``m2`` first, then ``m1``.

    Pullbacks are contravariant, so ``compose(alpha, t_zeta)`` is the
    pullback along ``t_zeta . alpha``, i.e. tau.
    """
    prod_ = intlinalg.matmul(m1.matrix, m2.matrix)
    return PullbackMap(f"{m1.name}*{m2.name}", tuple(tuple(r) for r in prod_))


def eigen_lattice(m: PullbackMap, sign: int) -> Tuple[List[H2Class], int]:
    """Integral basis of the ``sign``-eigenlattice of an involution, and its rank."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not m.is_involution():
        raise NotAnInvolution(f"{m.name} does not square to the identity")
    shifted = [[m.matrix[i][j] - sign * (i == j) for j in range(DIM)]
               for i in range(DIM)]
    basis = intlinalg.integer_kernel(shifted)
    return [H2Class(tuple(v)) for v in basis], len(basis)
