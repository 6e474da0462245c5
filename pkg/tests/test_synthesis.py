"""Matrix synthesis from block data and parametric chain families."""

import random

import pytest

from eigenshift.errors import InvalidChainError, InvalidParameterError, ShapeError
from eigenshift.linalg import Matrix, Vector, jordan_block
from eigenshift.oracle import oracle_segre
from eigenshift.scalars import CR, ONE, ZERO
from eigenshift.synthesis import (
    ChainPair,
    SegreCharacteristic,
    build_matrix,
    generate_parametric_chains_single,
    generate_parametric_chains_two_blocks,
    jordan_matrix,
    random_unimodular,
    verify_left_chain,
    verify_right_chain,
)


def test_segre_canonicalization_and_equality():
    s1 = SegreCharacteristic([(3, 2), (1, 4), (1, 1)])
    s2 = SegreCharacteristic([(1, 1), (1, 4), (3, 2)])
    assert s1 == s2
    assert hash(s1) == hash(s2)
    assert s1.canonical().blocks[0] == (CR(1), 4)
    assert s1.sizes_at(1) == (4, 1)
    assert s1.total_size == 7


def test_segre_rejects_bad_sizes():
    with pytest.raises(ShapeError):
        SegreCharacteristic([(1, 0)])


def test_jordan_matrix_layout():
    J = jordan_matrix(SegreCharacteristic([(2, 2), (5, 1)]))
    assert J == Matrix.from_rows(
        [
            [CR(2), ONE, ZERO],
            [ZERO, CR(2), ZERO],
            [ZERO, ZERO, CR(5)],
        ]
    )


def test_build_matrix_identity_basis():
    segre = SegreCharacteristic([(1, 4), (3, 2)])
    A, chains = build_matrix(segre, Matrix.identity(6))
    assert A == jordan_matrix(segre)
    # right chain of the leading block: e1..e4; left chain: e4..e1
    assert chains[0].right[0] == Vector.unit(6, 0)
    assert chains[0].right[3] == Vector.unit(6, 3)
    assert chains[0].left[0] == Vector.unit(6, 3)
    assert chains[0].left[3] == Vector.unit(6, 0)


def test_build_matrix_chains_verify():
    rng = random.Random(11)
    segre = SegreCharacteristic([(2, 3), (CR(0, 1), 2)])
    P = random_unimodular(5, rng)
    A, chains = build_matrix(segre, P)
    for pair in chains:
        pair.verify_against(A)


def test_build_matrix_oracle_round_trip():
    rng = random.Random(23)
    for _ in range(10):
        blocks = []
        total = 0
        while total < 4:
            lam = rng.randint(-5, 5)
            size = rng.randint(1, 3)
            blocks.append((lam, size))
            total += size
        segre = SegreCharacteristic(blocks)
        P = random_unimodular(segre.total_size, rng)
        A, _ = build_matrix(segre, P)
        assert oracle_segre(A, [lam for lam, _ in blocks]) == segre


def test_build_matrix_rejects_singular_or_misshaped_basis():
    segre = SegreCharacteristic([(0, 2)])
    with pytest.raises(ShapeError):
        build_matrix(segre, Matrix.identity(3))
    singular = Matrix.from_rows([[ONE, ONE], [ONE, ONE]])
    from eigenshift.errors import SingularMatrixError

    with pytest.raises(SingularMatrixError):
        build_matrix(segre, singular)


def test_chain_pair_rejects_empty_or_zero_lead():
    with pytest.raises(InvalidChainError):
        ChainPair(0, [], [])
    with pytest.raises(InvalidChainError):
        ChainPair(0, [Vector.zero(2)], [Vector.unit(2, 0)])


def test_chain_verification_catches_corruption():
    segre = SegreCharacteristic([(1, 3)])
    A, chains = build_matrix(segre, Matrix.identity(3))
    good = chains[0]
    bad = ChainPair(
        good.lam,
        good.left,
        [good.right[0], good.right[1] + Vector.unit(3, 0), good.right[2]],
    )
    with pytest.raises(InvalidChainError):
        bad.verify_against(A)


def test_parametric_single_family_verifies():
    rng = random.Random(5)
    for twok in (2, 4, 6):
        a = [CR(rng.choice((-1, 1)))] + [
            CR(rng.randint(-2, 2)) for _ in range(twok - 1)
        ]
        b = [CR(rng.choice((-1, 1)))] + [
            CR(rng.randint(-2, 2)) for _ in range(twok - 1)
        ]
        pair = generate_parametric_chains_single(CR(3), twok, a, b)
        J = jordan_block(CR(3), twok)
        verify_right_chain(J, CR(3), pair.right)
        verify_left_chain(J, CR(3), pair.left)


def test_parametric_single_rejects_zero_lead():
    with pytest.raises(InvalidParameterError):
        generate_parametric_chains_single(0, 4, [0, 1, 1, 1], [1, 1, 1, 1])
    with pytest.raises(InvalidParameterError):
        generate_parametric_chains_single(0, 3, [1, 1, 1], [1, 1, 1])


def test_parametric_two_blocks_verifies():
    from eigenshift.linalg import direct_sum

    lam = CR(2)
    k = 3
    J2 = direct_sum(jordan_block(lam, k), jordan_block(lam, k))
    left, right = generate_parametric_chains_two_blocks(
        lam, k, [1, 0, 2], [1, -1, 0], [0, 1, 1], [1, 2, -1]
    )
    verify_left_chain(J2, lam, left)
    verify_right_chain(J2, lam, right)


def test_parametric_two_blocks_rejects_double_zero_lead():
    with pytest.raises(InvalidParameterError):
        generate_parametric_chains_two_blocks(
            0, 2, [0, 1], [0, 1], [1, 1], [1, 1]
        )


def test_random_unimodular_entry_bound():
    rng = random.Random(3)
    for n in (1, 2, 5):
        U = random_unimodular(n, rng, max_abs=3)
        assert all(abs(complex(e).real) <= 3 for e in U.entries)
        assert U.det() in (ONE, -ONE)
