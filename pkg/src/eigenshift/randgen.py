"""Randomized instance generators for tests and the CLI self-test.

Two flavours of shift instance are produced:

* "guarded" instances use integer chain parameters, integer free parts
  and an eigenvalue step of absolute value at least 2.  This forces the
  decisive coupling entry c_{k,1} = 1 + (lam1 - lam0) * (integer) to be
  nonzero, so the even classifier always lands in its full-block case,
  whose structure claim holds unconditionally.
* unguarded instances draw rational eigenvalues and default (minimal)
  inverse factors; they exercise the spectrum and invariance properties
  that do not depend on the coupling pattern.

A targeted generator samples lower concentrated forms directly from a
requested case label so that every branch of the odd classifier is
reachable on demand.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .canonical import ConcentratedForm
from .errors import InvalidParameterError
from .linalg import Matrix, Vector, vstack
from .scalars import CR, ComplexRational, ONE, ZERO
from .shifting import ShiftResult, shift_even, shift_odd
from .synthesis import (
    ChainPair,
    SegreCharacteristic,
    build_matrix,
    random_unimodular,
)


@dataclass(frozen=True)
class ShiftInstance:
    """One randomized shift together with everything tests need."""

    A: Matrix
    chains: ChainPair
    lambda1: ComplexRational
    shift: ShiftResult
    P: Matrix  # Jordan basis whose leading columns are the full right chain
    segre: SegreCharacteristic

    @property
    def lambda0(self) -> ComplexRational:
        return self.chains.lam


def random_rational(rng: random.Random, max_num: int = 4, max_den: int = 3):
    num = rng.randint(-max_num, max_num)
    den = rng.randint(1, max_den)
    return Fraction(num, den)


def random_scalar(
    rng: random.Random,
    max_num: int = 4,
    max_den: int = 3,
    imag_prob: float = 0.25,
) -> ComplexRational:
    re = random_rational(rng, max_num, max_den)
    im = (
        random_rational(rng, max_num, max_den)
        if rng.random() < imag_prob
        else 0
    )
    return CR(re, im)


def random_nonzero_scalar(rng: random.Random, **kw) -> ComplexRational:
    while True:
        s = random_scalar(rng, **kw)
        if not s.is_zero:
            return s


def _random_extras(rng: random.Random, avoid) -> list:
    """Optional extra Jordan blocks at eigenvalues away from the shift."""
    extras = []
    if rng.random() < 0.5:
        for _ in range(rng.randint(1, 2)):
            while True:
                mu = CR(rng.randint(-6, 6))
                if all(mu != x for x in avoid):
                    break
            extras.append((mu, rng.randint(1, 2)))
    return extras


def _chain_vectors(lam_len: int, n: int, a, b):
    """Full-length parametric chains of the leading block, in J coordinates.

    u_i = sum_{j<=i} a_{i-j+1} e_{m-j+1}, v_i = sum_{j<=i} b_{i-j+1} e_j,
    padded with zeros to ambient dimension n.
    """
    m = lam_len
    left, right = [], []
    for i in range(1, m + 1):
        u = [ZERO] * n
        v = [ZERO] * n
        for j in range(1, i + 1):
            u[m - j] = u[m - j] + a[i - j]
            v[j - 1] = v[j - 1] + b[i - j]
        left.append(Vector(u))
        right.append(Vector(v))
    return left, right


def _int_params(rng: random.Random, m: int):
    """Chain parameters with a unit leading coefficient (integer inverses)."""
    lead = rng.choice((-1, 1))
    return [CR(lead)] + [CR(rng.randint(-2, 2)) for _ in range(m - 1)]


def _structured_inverses(
    rng: random.Random,
    P0: Matrix,
    left_j,
    right_j,
    m: int,
    k: int,
    n: int,
):
    """R and L with R*V = U*L = I_k supported inside the leading block.

    In J coordinates R = P0^{-*} G with G = [B^{-*}; S1; 0] and
    L = P0 H with H = [S2; (U_blk^*)^{-1}; 0]; the random integer blocks
    S1, S2 are the free parameters of the update.
    """
    if k == 0:
        return Matrix(n, 0, []), Matrix(n, 0, [])
    Bk = Matrix.from_columns(
        [Vector(right_j[i].entries[:k]) for i in range(k)]
    )
    Ublk = Matrix.from_columns(
        [Vector(left_j[i].entries[m - k : m]) for i in range(k)]
    )
    S1 = Matrix(
        m - k, k, [CR(rng.randint(-2, 2)) for _ in range((m - k) * k)]
    )
    S2 = Matrix(
        m - k, k, [CR(rng.randint(-2, 2)) for _ in range((m - k) * k)]
    )
    G = vstack(Bk.inverse().H, S1, Matrix.zeros(n - m, k))
    H = vstack(S2, (Ublk.H).inverse(), Matrix.zeros(n - m, k))
    P0_invH = P0.inverse().H
    return P0_invH @ G, P0 @ H


def _make_instance(
    rng: random.Random, m: int, guarded: bool
) -> ShiftInstance:
    """One shift of a leading J_m(lam0) block, m = 2k or 2k + 1."""
    k = m // 2
    if guarded:
        lam0 = CR(rng.randint(-4, 4))
        lam1 = lam0 + CR(rng.choice((-1, 1)) * rng.randint(2, 4))
    else:
        lam0 = random_scalar(rng)
        while True:
            lam1 = random_scalar(rng)
            if lam1 != lam0:
                break
    extras = _random_extras(rng, (lam0, lam1))
    segre = SegreCharacteristic([(lam0, m)] + extras)
    n = segre.total_size
    P0 = random_unimodular(n, rng)
    A, _ = build_matrix(segre, P0)
    a = _int_params(rng, m)
    b = _int_params(rng, m)
    left_j, right_j = _chain_vectors(m, n, a, b)
    P0_invH = P0.inverse().H
    chains = ChainPair(
        lam0,
        [P0_invH @ u for u in left_j],
        [P0 @ v for v in right_j],
    )
    R = L = None
    if guarded:  # structured factors also keep the update decoupled
        R, L = _structured_inverses(rng, P0, left_j, right_j, m, k, n)
    if m % 2 == 0:
        shift = shift_even(A, chains, lam1, R=R, L=L)
    else:
        shift = shift_odd(A, chains, lam1, R=R, L=L)
    # Jordan basis whose leading m columns are the full right chain
    cols = [P0 @ v for v in right_j] + [
        P0.col(j) for j in range(m, n)
    ]
    P = Matrix.from_columns(cols, dim=n)
    return ShiftInstance(A, chains, lam1, shift, P, segre)


def random_even_shift_instance(
    rng: random.Random, guarded: bool = True, max_k: int = 3
) -> ShiftInstance:
    return _make_instance(rng, 2 * rng.randint(1, max_k), guarded)


def random_odd_shift_instance(
    rng: random.Random, guarded: bool = True, max_k: int = 3
) -> ShiftInstance:
    return _make_instance(rng, 2 * rng.randint(1, max_k) + 1, guarded)


# ---------------------------------------------------------------------------
# targeted concentrated-form sampling

ODD_CASE_LABELS = (
    "Odd1a",
    "Odd1b",
    "Odd2a",
    "Odd2b",
    "Odd2c",
    "Odd3a",
    "Odd3b",
    "Odd4a",
    "Odd4b",
    "Odd4c",
)

_MIN_K = {
    "Odd1a": 1,
    "Odd1b": 1,
    "Odd2a": 1,
    "Odd2b": 2,
    "Odd2c": 1,
    "Odd3a": 1,
    "Odd3b": 1,
    "Odd4a": 1,
    "Odd4b": 2,
    "Odd4c": 1,
}


def targeted_concentrated_form(
    rng: random.Random, label: str, max_k: int = 4
) -> ConcentratedForm:
    """Concentrated form whose (b_1, a_k, last row) pattern hits `label`."""
    if label not in ODD_CASE_LABELS:
        raise InvalidParameterError(f"unknown odd case label {label!r}")
    k = rng.randint(_MIN_K[label], max(max_k, _MIN_K[label]))
    lam = random_scalar(rng, imag_prob=0.2)
    nz = lambda: random_nonzero_scalar(rng, max_num=3, max_den=2)
    sc = lambda: random_scalar(rng, max_num=3, max_den=2)
    b1 = nz() if label.startswith(("Odd1", "Odd3")) else ZERO
    ak = nz() if label.startswith(("Odd1", "Odd2")) else ZERO
    if label in ("Odd1b", "Odd2c", "Odd3b", "Odd4c"):
        i0 = None
    elif label == "Odd2a":
        i0 = k - 1
    elif label == "Odd2b":
        i0 = rng.randint(0, k - 2)
    elif label == "Odd4a":
        i0 = 0
    elif label == "Odd4b":
        i0 = rng.randint(1, k - 1)
    else:  # 1a, 3a: any position
        i0 = rng.randint(0, k - 1)
    row = [ZERO] * k
    if i0 is not None:
        row[i0] = nz()
        for j in range(i0 + 1, k):
            row[j] = sc()
    return ConcentratedForm(
        k, lam, ak, b1, Vector(row), Matrix.identity(2 * k + 1)
    )


def random_concentrated_form(
    rng: random.Random, max_k: int = 4
) -> ConcentratedForm:
    return targeted_concentrated_form(
        rng, rng.choice(ODD_CASE_LABELS), max_k
    )
