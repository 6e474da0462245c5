"""Biorthogonality of generalized eigenvector chains and resolvent identities.

Inner products are conjugate-linear in the left argument throughout
(u* v), matching the star convention used by the shift construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidChainError, ResolventError, ShapeError
from .linalg import Matrix, Vector, inner
from .scalars import ComplexRational, ONE, ZERO
from .synthesis import ChainPair, _as_scalar


@dataclass(frozen=True)
class GramTable:
    """Table of inner products x_{i,j} = u_i* v_j (p rows, q columns)."""

    table: Matrix

    @property
    def p(self) -> int:
        return self.table.rows

    @property
    def q(self) -> int:
        return self.table.cols

    def at(self, i: int, j: int):
        """1-based access, matching the chain indexing."""
        return self.table[i - 1, j - 1]


def gram_table(left: Sequence[Vector], right: Sequence[Vector]) -> GramTable:
    """Exact p x q table of u_i* v_j."""
    if not left or not right:
        raise ShapeError("gram_table needs nonempty chains")
    n = left[0].dim
    if any(v.dim != n for v in left) or any(v.dim != n for v in right):
        raise ShapeError("all chain vectors must share the ambient dimension")
    return GramTable(
        Matrix(len(left), len(right), [inner(u, v) for u in left for v in right])
    )


def check_hankel(table: GramTable):
    """(ok, first violation) for the same-eigenvalue Gram pattern.

    The pattern requires x_{i,j} = 0 for 2 <= i+j <= max(p, q) and
    constancy along anti-diagonals: x_{i,j} = x_{i-1,j+1}.  The second
    return value is None, or a ((i, j), reason) pair in 1-based indices.
    """
    p, q = table.p, table.q
    bound = max(p, q)
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            if 2 <= i + j <= bound and table.at(i, j) != ZERO:
                return False, ((i, j), "leading anti-triangle entry nonzero")
    for i in range(2, p + 1):
        for j in range(1, q):
            if table.at(i, j) != table.at(i - 1, j + 1):
                return False, ((i, j), "anti-diagonal not constant")
    return True, None


def middle_product_nonzero(left: Sequence[Vector], right: Sequence[Vector]):
    """u_m* v_m for the middle index m = (p+1)/2 of an odd full chain.

    Theory guarantees this is nonzero for a genuine full chain pair of a
    single odd block; a zero therefore flags invalid input.
    """
    p = len(left)
    if p != len(right):
        raise InvalidChainError("left/right chain lengths differ")
    if p % 2 == 0:
        raise InvalidChainError("middle product needs odd chain length")
    m = (p + 1) // 2
    x = inner(left[m - 1], right[m - 1])
    if x.is_zero:
        raise InvalidChainError(
            "middle inner product vanishes: not a genuine full chain pair"
        )
    return x


def _check_resolvent_point(A: Matrix, lam: ComplexRational):
    n = A.rows
    shifted = A - Matrix.identity(n).scale(lam)
    if shifted.exact_rank() < n:
        raise ResolventError(f"resolvent point {lam} lies in the spectrum")
    return shifted


def resolvent_apply_right(
    A: Matrix, lam, pair: ChainPair, i: int
) -> Vector:
    """(A - lam I)^{-1} v_i, exactly, cross-checked against the closed form.

    The closed form is sum_{j=1}^{i} (-1)^{i-j} v_j / (lam0 - lam)^{i-j+1}
    where lam0 is the chain eigenvalue; solving the linear system and
    evaluating the sum validate each other.
    """
    lam = _as_scalar(lam)
    shifted = _check_resolvent_point(A, lam)
    v = pair.right[i - 1]
    solved = shifted.solve(v)
    d = pair.lam - lam
    acc = Vector.zero(v.dim)
    for j in range(1, i + 1):
        coeff = (ONE if (i - j) % 2 == 0 else -ONE) / d ** (i - j + 1)
        acc = acc + pair.right[j - 1].scale(coeff)
    if solved != acc:
        raise InvalidChainError(
            "resolvent closed form disagrees with the exact solve; "
            "input is not a genuine right chain"
        )
    return solved


def resolvent_apply_left(A: Matrix, lam, pair: ChainPair, i: int) -> Vector:
    """w with w* = u_i* (A - lam I)^{-1}, cross-checked likewise."""
    lam = _as_scalar(lam)
    shifted = _check_resolvent_point(A, lam)
    u = pair.left[i - 1]
    solved = shifted.H.solve(u)
    d = pair.lam - lam
    acc = Vector.zero(u.dim)
    for j in range(1, i + 1):
        coeff = (ONE if (i - j) % 2 == 0 else -ONE) / d ** (i - j + 1)
        # w* = sum coeff * u_j*  =>  w = sum conj(coeff) * u_j
        acc = acc + pair.left[j - 1].scale(coeff.conjugate())
    if solved != acc:
        raise InvalidChainError(
            "resolvent closed form disagrees with the exact solve; "
            "input is not a genuine left chain"
        )
    return solved


def resolvent_orthogonality_check(A: Matrix, lam, pair: ChainPair) -> bool:
    """True iff u_i* (A - lam I)^{-1} v_j = 0 for all i + j <= p."""
    lam = _as_scalar(lam)
    shifted = _check_resolvent_point(A, lam)
    p = pair.length
    inv_images = {}
    for j in range(1, p + 1):
        inv_images[j] = shifted.solve(pair.right[j - 1])
    for i in range(1, p + 1):
        for j in range(1, p - i + 1):
            if not inner(pair.left[i - 1], inv_images[j]).is_zero:
                return False
    return True
