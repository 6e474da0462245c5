"""Even-multiplicity canonical extraction, eigenspaces and classification."""

import random

import pytest

from eigenshift.canonical import (
    EvenCanonical,
    classify_even,
    eigenspace_even,
    extract_even_canonical,
    predict_structure,
)
from eigenshift.errors import ExtractionError
from eigenshift.linalg import Matrix, Vector, stack_vectors_as_rows
from eigenshift.oracle import oracle_segre, verify_cycles, weyr_profile
from eigenshift.randgen import random_even_shift_instance
from eigenshift.scalars import CR, ONE, ZERO
from eigenshift.shifting import shift_even
from eigenshift.synthesis import SegreCharacteristic, build_matrix


def _cmat(k, entries):
    return Matrix.from_rows([[CR(e) for e in row] for row in entries])


def test_golden_full_block_shift():
    """J4(1) + J2(3), minimal factors: the shifted matrix is J4(2) + J2(3)."""
    segre = SegreCharacteristic([(1, 4), (3, 2)])
    P = Matrix.identity(6)
    A, chains = build_matrix(segre, P)
    shift = shift_even(A, chains[0], 2)
    from eigenshift.synthesis import jordan_matrix

    assert shift.A_hat == jordan_matrix(SegreCharacteristic([(2, 4), (3, 2)]))
    pred = predict_structure(shift, P)
    assert pred.case_label == "Even3"
    assert pred.segre == SegreCharacteristic([(2, 4)])
    assert oracle_segre(shift.A_hat, [2, 3]) == SegreCharacteristic(
        [(2, 4), (3, 2)]
    )


def test_golden_split_block_shift():
    """Same input with R = [e1, e2 - e3]: the block splits into [2, 2]."""
    segre = SegreCharacteristic([(1, 4), (3, 2)])
    P = Matrix.identity(6)
    A, chains = build_matrix(segre, P)
    e = lambda i: Vector.unit(6, i)
    R = Matrix.from_columns([e(0), e(1) - e(2)], dim=6)
    shift = shift_even(A, chains[0], 2, R=R)
    assert oracle_segre(shift.A_hat, [2, 3]) == SegreCharacteristic(
        [(2, 2), (2, 2), (3, 2)]
    )
    pred = predict_structure(shift, P)
    assert pred.segre == SegreCharacteristic([(2, 2), (2, 2)])
    assert not pred.fallback_used


def test_classify_even_case_labels():
    # C = 0: split case with trivially coupled cycles
    pred = classify_even(EvenCanonical(2, CR(0), Matrix.zeros(2, 2)))
    assert pred.case_label == "Even1" and pred.sizes == (2, 2)
    # Ce1 = 0, C != 0 still falls in the split case with trivial coupling
    C = _cmat(2, [[0, 1], [0, 0]])
    pred = classify_even(EvenCanonical(2, CR(0), C))
    assert pred.case_label == "Even1" and pred.sizes == (2, 2)
    # Ce1 != 0 with c_{k,1} = 0 and NC + CN = 0: split, corrected cycle
    C = _cmat(2, [[1, 0], [0, -1]])
    pred = classify_even(EvenCanonical(2, CR(0), C))
    assert pred.case_label == "Even2" and pred.sizes == (2, 2)
    # Ce1 != 0 with c_{k,1} = 0 but NC + CN != 0: the split-case claim
    # fails ([3, 1] is the truth) and the verified fallback reports it
    C = _cmat(2, [[1, 0], [0, 0]])
    pred = classify_even(EvenCanonical(2, CR(0), C))
    assert pred.case_label == "Even2" and pred.fallback_used
    assert pred.sizes == (3, 1)
    # c_{k,1} != 0: single full block
    C = _cmat(2, [[0, 0], [1, 0]])
    pred = classify_even(EvenCanonical(2, CR(0), C))
    assert pred.case_label == "Even3" and pred.sizes == (4,)


def test_classify_even_coupling_outside_stated_family():
    """Adversarial coupling where the closed-form family claim breaks.

    C = e2 e2^T has c_{2,1} = 0 and C e1 = 0, which the case split says
    gives blocks [2, 2]; the true structure is [3, 1].  The verified-
    cycle fallback must catch this and report the oracle's answer.
    """
    C = _cmat(2, [[0, 0], [0, 1]])
    ec = EvenCanonical(2, CR(0), C)
    pred = classify_even(ec)
    assert pred.fallback_used
    assert pred.sizes == (3, 1)
    assert pred.diagnostics
    assert verify_cycles(ec.matrix(), CR(0), [list(c) for c in pred.cycles])


def test_even_classification_matches_oracle_randomized():
    rng = random.Random(77)
    for _ in range(25):
        inst = random_even_shift_instance(rng, guarded=True, max_k=3)
        pred = predict_structure(inst.shift, inst.P)
        k = inst.shift.plan.k
        assert pred.sizes in ((k, k), (2 * k,))
        want = weyr_profile(pred.canonical, inst.lambda1).block_sizes()
        assert pred.sizes == want
        assert verify_cycles(
            pred.canonical, inst.lambda1, [list(c) for c in pred.cycles]
        )


def test_eigenspace_even_matches_null_space():
    rng = random.Random(31)
    for k in (1, 2, 3):
        for _ in range(8):
            C = Matrix.from_rows(
                [
                    [CR(rng.randint(-2, 2)) for _ in range(k)]
                    for _ in range(k)
                ]
            )
            ec = EvenCanonical(k, CR(rng.randint(-3, 3)), C)
            basis = eigenspace_even(ec)
            T = ec.matrix()
            shifted = T - Matrix.identity(2 * k).scale(ec.lam)
            for v in basis:
                assert (shifted @ v).is_zero
            null = shifted.null_space_basis()
            assert len(basis) == len(null)
            assert stack_vectors_as_rows(basis).exact_rank() == len(basis)


def test_geometric_multiplicity_at_most_two():
    rng = random.Random(13)
    for _ in range(10):
        inst = random_even_shift_instance(rng, guarded=True, max_k=3)
        pred = predict_structure(inst.shift, inst.P)
        shifted = pred.canonical - Matrix.identity(
            pred.canonical.rows
        ).scale(inst.lambda1)
        assert len(shifted.null_space_basis()) <= 2


def test_extraction_shape_enforced():
    segre = SegreCharacteristic([(1, 4)])
    A, chains = build_matrix(segre, Matrix.identity(4))
    shift = shift_even(A, chains[0], 3)
    with pytest.raises(ExtractionError):
        extract_even_canonical(shift, Matrix.identity(5))


def test_extract_even_canonical_reads_coupling():
    segre = SegreCharacteristic([(1, 4)])
    P = Matrix.identity(4)
    A, chains = build_matrix(segre, P)
    shift = shift_even(A, chains[0], 2)
    ec = extract_even_canonical(shift, P)
    assert ec.k == 2 and ec.lam == CR(2)
    # minimal factors on an identity basis: C = e_k e_1^T
    assert ec.C == _cmat(2, [[0, 0], [1, 0]])
