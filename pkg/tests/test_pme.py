import random
from fractions import Fraction
from itertools import combinations

import pytest

from pmeq import (
    Certificate,
    CertificateBlock,
    FieldMismatch,
    LabelMismatch,
    Matrix,
    PrimeField,
    TooLarge,
    adjugate,
    apply_cut_sequence,
    brute_force_pme,
    combine_shifts,
    cut_transpose,
    cycle_weight_oracle,
    determinant,
    finding_cut_sequence,
    is_cut,
    min_cut_size_two,
    nonsingular_shift,
    adjugate_entry_shift,
    pme_check,
    verify_certificate,
)
from pmeq.io import serialize_certificate
from pmeq.pme import _add_diagonal, _shortest_path
from pmeq.structure import DiagonalWitness
from paper_examples import (
    FIVE_A,
    FIVE_B,
    FIVE_SEQUENCE,
    INTRO_A6,
    INTRO_B6,
    LABELS5,
    Q,
)
from util import GF101, diagonal_conjugate, planted_cut_matrix, random_matrix


def test_brute_force_pme_examples():
    equal, refuting = brute_force_pme(INTRO_A6, INTRO_B6)
    assert equal and refuting is None
    rng = random.Random(40)
    A = random_matrix(Q, 5, rng)
    assert brute_force_pme(A, A.transpose())[0]
    B = A.with_entry(2, 3, A.get(2, 3) + 1)
    equal, refuting = brute_force_pme(A, B)
    assert not equal and refuting is not None
    assert determinant(A.principal_submatrix(refuting)) != determinant(
        B.principal_submatrix(refuting)
    )


def test_brute_force_pme_too_large():
    with pytest.raises(TooLarge):
        brute_force_pme(
            Matrix.identity(Q, range(1, 16)), Matrix.identity(Q, range(1, 16))
        )


def test_cycle_weight_oracle():
    assert cycle_weight_oracle(INTRO_A6, INTRO_B6)
    diag_a = Matrix(Q, [[1, 0], [0, 2]])
    diag_b = Matrix(Q, [[1, 0], [0, 3]])
    assert cycle_weight_oracle(diag_a, diag_a)
    assert not cycle_weight_oracle(diag_a, diag_b)
    rng = random.Random(41)
    for _ in range(10):
        A = random_matrix(GF101, 4, rng)
        B = random_matrix(GF101, 4, rng) if rng.random() < 0.5 else diagonal_conjugate(
            A, rng
        )
        assert cycle_weight_oracle(A, B) == brute_force_pme(A, B)[0]


def test_nonsingular_shift():
    zero = Matrix.zero(Q, 3, 3, (1, 2, 3), (1, 2, 3))
    D = nonsingular_shift(zero)
    assert D == {1: Fraction(1), 2: Fraction(1), 3: Fraction(1)}
    neg_identity = Matrix.identity(Q, (1, 2, 3)).scale(-1)
    # det(-I + 0*I) = -1 is already nonzero, so the first point works
    assert nonsingular_shift(neg_identity) == {1: 0, 2: 0, 3: 0}
    rng = random.Random(42)
    for _ in range(10):
        A = random_matrix(GF101, 4, rng)
        D = nonsingular_shift(A)
        assert determinant(_add_diagonal(A, D)) != 0


def test_shortest_path_intro():
    assert _shortest_path(INTRO_A6, 1, 4) == (1, 2, 3, 4)
    assert _shortest_path(INTRO_A6, 3, 3) == (3,)


def test_adjugate_entry_shift():
    ones = Matrix(Q, [[1, 1], [1, 1]])
    D = adjugate_entry_shift(ones, 1, 2)
    shifted = _add_diagonal(ones, D)
    assert adjugate(shifted).get(1, 2) != 0
    rng = random.Random(43)
    A = random_matrix(Q, 4, rng, nonzero=True)
    for i in (1, 3):
        D = adjugate_entry_shift(A, i, i)
        assert adjugate(_add_diagonal(A, D)).get(i, i) != 0
    D = adjugate_entry_shift(INTRO_A6, 1, 4)
    assert adjugate(_add_diagonal(INTRO_A6, D)).get(1, 4) != 0


def test_combine_shifts_all_nonzero_adjugates():
    rng = random.Random(44)
    for _ in range(5):
        A = random_matrix(Q, 4, rng, nonzero=True)
        B = diagonal_conjugate(A, rng)
        D, adjA, adjB = combine_shifts(A, B)
        for M in (adjA, adjB):
            assert all(x != 0 for r in M.rows for x in r)


def test_combine_shifts_preserves_pme_and_cuts():
    rng = random.Random(45)
    for _ in range(5):
        n = rng.randint(4, 6)
        A, _ = planted_cut_matrix(Q, n, rng)
        B = diagonal_conjugate(A, rng) if rng.random() < 0.5 else random_matrix(
            Q, n, rng, nonzero=True, labels=A.row_labels
        )
        D, adjA, adjB = combine_shifts(A, B)
        assert brute_force_pme(A, B)[0] == brute_force_pme(adjA, adjB)[0]
        for size in range(2, n - 1):
            for S in combinations(A.row_labels, size):
                assert is_cut(A, S) == is_cut(adjA, S)


def test_combine_shifts_randomized_flag():
    rng = random.Random(46)
    A = random_matrix(Q, 4, rng, nonzero=True)
    B = diagonal_conjugate(A, rng)
    D, adjA, adjB = combine_shifts(A, B, randomized=True)
    assert all(x != 0 for r in adjA.rows for x in r)
    assert all(x != 0 for r in adjB.rows for x in r)


def test_min_cut_size_two_requires_nonzero_entries():
    # the raw intro pair has zero entries, which Algorithm 2's partition
    # argument cannot handle; it correctly reports failure
    assert is_cut(INTRO_A6, (1, 2)) and not is_cut(INTRO_B6, (1, 2))
    assert min_cut_size_two(INTRO_A6, INTRO_B6, (1, 2)) is None


def test_min_cut_size_two_after_preprocessing():
    # Algorithm 1 only calls Min-Cut-size-Two after the adjugate shift
    # has removed all zero entries; in that setting the intro pair's
    # size-2 cut {1,2} of A produces a usable cut X of B
    D, adjA, adjB = combine_shifts(INTRO_A6, INTRO_B6)
    assert is_cut(adjA, (1, 2)) and not is_cut(adjB, (1, 2))
    X = min_cut_size_two(adjA, adjB, (1, 2))
    assert X is not None and is_cut(adjB, X)
    assert is_cut(cut_transpose(adjB, X), (1, 2))


def test_finding_cut_sequence_worked_example():
    result = finding_cut_sequence(FIVE_A, FIVE_B)
    assert result is not None
    seq, witness = result
    final = apply_cut_sequence(FIVE_A, seq)
    assert witness.check(final, FIVE_B)
    assert len(seq) < 2 * 5


def test_finding_cut_sequence_trivial_pairs():
    rng = random.Random(47)
    A, _ = planted_cut_matrix(Q, 6, rng)
    seq, witness = finding_cut_sequence(A, A)
    assert seq == []
    assert all(v == 1 for v in witness.D.values()) and not witness.transposed
    B = diagonal_conjugate(A, rng)
    seq, witness = finding_cut_sequence(A, B)
    assert seq == []
    assert witness.check(A, B)


def test_apply_cut_sequence():
    assert apply_cut_sequence(FIVE_A, ()) == FIVE_A
    X = ("a", "b", "c")
    assert apply_cut_sequence(FIVE_A, (X, X)) == FIVE_A
    assert apply_cut_sequence(FIVE_A, FIVE_SEQUENCE) == FIVE_B


def test_pme_check_intro():
    verdict = pme_check(INTRO_A6, INTRO_B6)
    assert verdict.equivalent
    assert verify_certificate(INTRO_A6, INTRO_B6, verdict.certificate)


def test_pme_check_refuted_by_singleton():
    A = INTRO_A6
    B = A.with_entry(1, 1, A.get(1, 1) + 1)
    verdict = pme_check(A, B)
    assert not verdict.equivalent
    assert verdict.reason == {"subset": (1,)}


def test_pme_check_partition_mismatch():
    A = Matrix(Q, [[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1]])
    B = Matrix(Q, [[1, 0, 0, 0], [0, 1, 1, 0], [0, 1, 1, 0], [0, 0, 0, 1]])
    verdict = pme_check(A, B)
    assert not verdict.equivalent
    assert verdict.reason["branch"] == "scc-partition-mismatch"


def test_pme_check_errors():
    A = Matrix(Q, [[1]])
    with pytest.raises(FieldMismatch):
        pme_check(A, Matrix(GF101, [[1]]))
    with pytest.raises(LabelMismatch):
        pme_check(A, Matrix(Q, [[1]], ("x",), ("x",)))


def test_pme_check_reducible_inputs():
    rng = random.Random(48)
    A1 = random_matrix(Q, 2, rng, nonzero=True)
    rows = []
    for i in range(2):
        rows.append(list(A1.rows[i]) + [1, 2])
    rows.append([0, 0, 5, 0])
    rows.append([0, 0, 3, 5])
    A = Matrix(Q, rows)
    B = diagonal_conjugate(A, rng)
    # conjugation can flip off-diagonal-block entries but keeps the SCCs
    verdict = pme_check(A, B)
    assert verdict.equivalent
    assert verify_certificate(A, B, verdict.certificate)
    assert brute_force_pme(A, B)[0]


def test_pme_check_small_field_enlargement():
    gf2 = PrimeField(2)
    A, X = planted_cut_matrix(gf2, 4, random.Random(49))
    cases = [A, A.transpose(), cut_transpose(A, X), A.with_entry(1, 2, 0)]
    for B in cases:
        verdict = pme_check(A, B)
        assert verdict.equivalent == brute_force_pme(A, B)[0]
        if verdict.equivalent:
            assert verify_certificate(A, B, verdict.certificate)


def test_pme_check_deterministic_certificates():
    rng = random.Random(50)
    A, _ = planted_cut_matrix(Q, 6, rng)
    B = diagonal_conjugate(cut_transpose(A, minimal_cut_of(A)), rng)
    first = serialize_certificate(pme_check(A, B).certificate)
    second = serialize_certificate(pme_check(A, B).certificate)
    assert first == second


def minimal_cut_of(A):
    from pmeq import brute_force_min_cut

    return brute_force_min_cut(A)


def test_verify_certificate_rejects_tampering():
    verdict = pme_check(FIVE_A, FIVE_B)
    cert = verdict.certificate
    assert verify_certificate(FIVE_A, FIVE_B, cert)

    blk = cert.blocks[0]
    bad_seq = CertificateBlock(
        blk.labels, tuple(blk.cut_sequence) + (("a", "d"),), blk.witness
    )
    assert not verify_certificate(
        FIVE_A, FIVE_B, Certificate(Q, [bad_seq])
    )

    too_long = CertificateBlock(
        blk.labels, (("a", "b", "c"), ("a", "b", "c")) * 5, blk.witness
    )
    assert not verify_certificate(FIVE_A, FIVE_B, Certificate(Q, [too_long]))

    wrong_field = Certificate(GF101, cert.blocks)
    assert not verify_certificate(FIVE_A, FIVE_B, wrong_field)

    bad_witness = CertificateBlock(
        blk.labels,
        blk.cut_sequence,
        DiagonalWitness({l: 0 for l in LABELS5}, transposed=blk.witness.transposed),
    )
    assert not verify_certificate(FIVE_A, FIVE_B, Certificate(Q, [bad_witness]))
