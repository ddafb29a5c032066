"""Principal-minor-equivalence testing with cut-transpose certificates.

pme_check decides whether two square matrices have equal corresponding
principal minors of every order.  On success it produces a Certificate:
per irreducible block, a sequence of cuts whose cut-transposes turn one
block into a matrix diagonally equivalent to the other, plus the final
diagonal witness.  verify_certificate replays a certificate from scratch.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations

from .cuts import cut_transpose, is_cut, minimal_cut
from .errors import (
    FieldMismatch,
    FieldTooSmall,
    LabelMismatch,
    NotACut,
    TooLarge,
    ZeroBlock,
)
from .fields import ExtensionField, PrimeField, build_extension, embed
from .linalg import (
    Matrix,
    UnivariatePoly,
    determinant,
    label_sort_key,
    lagrange_interpolate,
)
from .structure import (
    DiagonalWitness,
    diag_equivalent,
    diag_similar,
    digraph_edges,
    irreducible_blocks,
    partition_compatible,
)


class CertificateBlock:
    def __init__(self, labels, cut_sequence, witness):
        self.labels = tuple(labels)
        self.cut_sequence = tuple(tuple(x) for x in cut_sequence)
        self.witness = witness


class Certificate:
    """Proof object for an Equivalent verdict.

    field is the field of the input matrices; witnesses and cut sequences
    verify directly against the originals.  The preprocessing shift (and
    the possibly larger field it lives in) is recorded for audit only.
    """

    def __init__(self, field, blocks, preprocessing_field=None, preprocessing_shift=None):
        self.field = field
        self.blocks = list(blocks)
        self.preprocessing_field = preprocessing_field
        self.preprocessing_shift = dict(preprocessing_shift or {})


class Verdict:
    def __init__(self, equivalent, certificate=None, reason=None):
        self.equivalent = bool(equivalent)
        self.certificate = certificate
        self.reason = reason

    def __bool__(self):
        return self.equivalent

    def __repr__(self):
        if self.equivalent:
            return "Verdict(Equivalent)"
        return f"Verdict(NotEquivalent, reason={self.reason})"


# ---------------------------------------------------------------------------
# oracles


def _subsets_size_lex(labels, max_size=None):
    labels = sorted(labels, key=label_sort_key)
    top = len(labels) if max_size is None else max_size
    for size in range(1, top + 1):
        for combo in combinations(labels, size):
            yield combo


def brute_force_pme(A, B):
    """Compare every principal minor; returns (equal, first refuting
    subset or None).  Limited to n <= 14."""
    if A.n_rows > 14:
        raise TooLarge("brute-force PME limited to n <= 14")
    for S in _subsets_size_lex(A.row_labels):
        if determinant(A.principal_submatrix(S)) != determinant(
            B.principal_submatrix(S)
        ):
            return False, S
    return True, None


def _hamiltonian_cycle_sum(M, S):
    """Sum over directed Hamiltonian cycles on label set S of the product
    of traversed entries; a singleton contributes its diagonal entry."""
    f = M.field
    S = list(S)
    if len(S) == 1:
        return M.get(S[0], S[0])
    first = S[0]
    total = f.zero
    for perm in permutations(S[1:]):
        cycle = (first,) + perm
        w = f.one
        ok = True
        for idx in range(len(cycle)):
            a, b = cycle[idx], cycle[(idx + 1) % len(cycle)]
            entry = M.get(a, b)
            if f.is_zero(entry):
                ok = False
                break
            w = f.mul(w, entry)
        if ok:
            total = f.add(total, w)
    return total


def cycle_weight_oracle(A, B):
    """PME test via equality of Hamiltonian-cycle weight sums on every
    subset; n <= 8."""
    if A.n_rows > 8:
        raise TooLarge("cycle-weight oracle limited to n <= 8")
    for S in _subsets_size_lex(A.row_labels):
        if _hamiltonian_cycle_sum(A, S) != _hamiltonian_cycle_sum(B, S):
            return False
    return True


# ---------------------------------------------------------------------------
# preprocessing shifts (adjugate world)


def _add_diagonal(A, D):
    f = A.field
    rows = []
    for i in A.row_labels:
        row = []
        for j in A.col_labels:
            x = A.get(i, j)
            if i == j:
                x = f.add(x, f.coerce(D[i]))
            row.append(x)
        rows.append(row)
    return Matrix(f, rows, A.row_labels, A.col_labels)


def nonsingular_shift(A):
    """Constant diagonal map i -> a with det(A + a I) nonzero; a is the
    first enumerated point that works (det(A + y I) is monic of degree n,
    so at most n points fail)."""
    A.require_square()
    f = A.field
    n = A.n_rows
    for a in f.enumerate_points(n + 1):
        shifted = _add_diagonal(A, {l: a for l in A.row_labels})
        if not f.is_zero(determinant(shifted)):
            return {l: a for l in A.row_labels}
    raise AssertionError("monic degree-n polynomial vanished at n+1 points")


def _shortest_path(A, i, j):
    """Shortest directed path from i to j in G_A; (i,) when i == j.
    BFS explores neighbors in sorted label order for determinism."""
    if i == j:
        return (i,)
    adj = digraph_edges(A)
    for k in adj:
        adj[k].sort(key=label_sort_key)
    parent = {i: None}
    frontier = [i]
    while frontier:
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if w not in parent:
                    parent[w] = v
                    if w == j:
                        path = [j]
                        while parent[path[-1]] is not None:
                            path.append(parent[path[-1]])
                        return tuple(reversed(path))
                    nxt.append(w)
        frontier = nxt
    raise AssertionError(f"no path {i} -> {j} in an irreducible matrix")


def _adjugate_entry_poly_value(A, D_of, i, j, y):
    """adj(A + D(y))[i, j] up to sign: det of the shifted matrix with row
    j and column i removed."""
    f = A.field
    shifted = _add_diagonal(A, {l: D_of(l, y) for l in A.row_labels})
    keep_rows = [l for l in A.row_labels if l != j]
    keep_cols = [l for l in A.col_labels if l != i]
    return determinant(
        Matrix(
            f,
            [[shifted.get(r, c) for c in keep_cols] for r in keep_rows],
            keep_rows,
            keep_cols,
        )
    )


def adjugate_entry_shift(A, i, j):
    """Diagonal map making adj(A + D)[i, j] nonzero: zero on a shortest
    i-to-j path (excluding i), a common value elsewhere.  The adjugate
    entry is a nonzero polynomial of degree < n in that value, so one of
    the first n enumerated points works."""
    f = A.field
    n = A.n_rows
    path = set(_shortest_path(A, i, j)) - {i}

    def D_of(l, y):
        return f.zero if l in path else y

    for a in f.enumerate_points(n):
        if not f.is_zero(_adjugate_entry_poly_value(A, D_of, i, j, a)):
            return {l: D_of(l, a) for l in A.row_labels}
    raise AssertionError("adjugate entry vanished at n points")


def _adjugate_via_inverse(M):
    from .linalg import adjugate

    return adjugate(M)


def _shift_candidate(A, B, D):
    """Test one concrete diagonal map: both shifted matrices nonsingular
    and both adjugates entirely nonzero.  Returns (adjA, adjB) or None."""
    f = A.field
    sa = _add_diagonal(A, D)
    sb = _add_diagonal(B, D)
    if f.is_zero(determinant(sa)) or f.is_zero(determinant(sb)):
        return None
    adj_a = _adjugate_via_inverse(sa)
    adj_b = _adjugate_via_inverse(sb)
    for M in (adj_a, adj_b):
        for r in M.rows:
            for x in r:
                if f.is_zero(x):
                    return None
    return adj_a, adj_b


def combine_shifts(A, B, randomized=False):
    """Find a diagonal map D with A + D, B + D nonsingular and both
    adjugates free of zero entries; returns (D, adj(A+D), adj(B+D)).

    Constant shifts are scanned first (cheap and almost always enough);
    when they run out and the field has at most 10 n^5 elements, raises
    FieldTooSmall so the caller can enlarge the field.  Otherwise falls
    back to the full Type I / Type II construction: the 2n^2+2 special
    shifts are interpolated into one polynomial diagonal of degree at
    most 2n^2+1, and candidate substitution points are tested directly
    until every required condition holds.
    """
    f = A.field
    n = A.n_rows
    labels = A.row_labels
    limit = 10 * n ** 5

    budget = 3 * n + 4
    if f.cardinality is not None:
        budget = min(budget, f.cardinality)
    if randomized and (f.cardinality is None or f.cardinality > budget):
        rng = random.Random(0)
        span = limit + 1 if f.cardinality is None else min(limit + 1, f.cardinality)
        for _ in range(20):
            a = f.point(rng.randrange(span))
            D = {l: a for l in labels}
            hit = _shift_candidate(A, B, D)
            if hit is not None:
                return D, hit[0], hit[1]
    for a in f.enumerate_points(budget):
        D = {l: a for l in labels}
        hit = _shift_candidate(A, B, D)
        if hit is not None:
            return D, hit[0], hit[1]

    if f.cardinality is not None and f.cardinality <= limit:
        raise FieldTooSmall(
            f"field of size {f.cardinality} is too small for the shift "
            f"construction with n = {n}"
        )

    # full construction
    shift_maps = [nonsingular_shift(A), nonsingular_shift(B)]
    for i in labels:
        for j in labels:
            shift_maps.append(adjugate_entry_shift(A, i, j))
            shift_maps.append(adjugate_entry_shift(B, i, j))
    count = len(shift_maps)  # 2n^2 + 2
    anchor_points = f.enumerate_points(count)
    polys = {}
    for l in labels:
        pts = [(anchor_points[k], shift_maps[k][l]) for k in range(count)]
        polys[l] = lagrange_interpolate(f, pts)
    degree = (2 * n ** 3 + n) * (2 * n ** 2 + 2)
    for a in f.enumerate_points(degree + 1):
        D = {l: polys[l].evaluate(a) for l in labels}
        hit = _shift_candidate(A, B, D)
        if hit is not None:
            return D, hit[0], hit[1]
    raise AssertionError("shift scan exhausted; the construction guarantees a hit")


# ---------------------------------------------------------------------------
# Algorithms 1 and 2


def min_cut_size_two(A, B, S):
    """Algorithm Min-Cut-size-Two: given a size-2 minimal cut S of A that
    is not a cut of B, finds a cut X of B such that S is a cut of
    tw(B, X), or returns None."""
    labels = A.row_labels
    S = tuple(sorted(S, key=label_sort_key))
    s = S[0]
    P = []
    for t in labels:
        if t in S:
            continue
        sub = [l for l in labels if l in S or l == t]
        Asub = A.principal_submatrix(sub)
        Bsub = B.principal_submatrix(sub)
        if diag_similar(Asub, Bsub) is not None:
            P.append(t)
        elif diag_similar(Asub, Bsub.transpose()) is not None:
            continue
        else:
            return None
    X = tuple(sorted(P + [s], key=label_sort_key))
    if not is_cut(B, X):
        return None
    return X


def _finding_cut_sequence(A, B):
    """Algorithm Finding-Cut-Sequence on all-nonzero matrices; returns
    (sequence, None) or (None, failing-branch name)."""
    labels = A.row_labels
    n = len(labels)
    S = None if n <= 3 else minimal_cut(A)
    if S is None:
        if diag_equivalent(A, B) is None:
            return None, "base-case-not-diagonally-equivalent"
        return [], None

    Btilde = B
    appended_X = None
    if not is_cut(B, S):
        if len(S) >= 3:
            return None, "large-minimal-cut-not-shared"
        X = min_cut_size_two(A, B, S)
        if X is None:
            return None, "min-cut-size-two"
        appended_X = X
        Btilde = cut_transpose(B, X)

    Sset = set(S)
    s = min(S, key=label_sort_key)
    sub = [l for l in labels if l not in Sset or l == s]
    inner, branch = _finding_cut_sequence(
        A.principal_submatrix(sub), Btilde.principal_submatrix(sub)
    )
    if inner is None:
        return None, branch

    seq = []
    Ak = A
    try:
        for Xp in inner:
            if s in Xp:
                Xi = tuple(sorted(set(Xp) | Sset, key=label_sort_key))
            else:
                Xi = tuple(Xp)
            Ak = cut_transpose(Ak, Xi)
            seq.append(Xi)
    except (NotACut, ZeroBlock):
        return None, "lifted-set-not-a-cut"

    if diag_equivalent(Ak, Btilde) is not None:
        pass
    else:
        Sbar = tuple(sorted(set(labels) - Sset, key=label_sort_key))
        if is_cut(Ak, Sbar) and diag_equivalent(cut_transpose(Ak, Sbar), Btilde):
            seq.append(Sbar)
        else:
            return None, "final-diagonal-equivalence"

    if appended_X is not None:
        seq.append(appended_X)
    return seq, None


def apply_cut_sequence(A, seq):
    """Left-to-right cut-transpose application; NotACut carries the index
    of the first failing element."""
    M = A
    for idx, X in enumerate(seq):
        try:
            M = cut_transpose(M, X)
        except (NotACut, ZeroBlock) as e:
            raise NotACut(str(e), index=idx) from None
    return M


def finding_cut_sequence(A, B):
    """Public wrapper: returns (sequence, witness) or None.  Inputs must
    be irreducible with all off-diagonal entries nonzero."""
    seq, _branch = _finding_cut_sequence(A, B)
    if seq is None:
        return None
    witness = diag_equivalent(apply_cut_sequence(A, seq), B)
    if witness is None:
        return None
    return seq, witness


# ---------------------------------------------------------------------------
# top level


def _enlarge_field(field, min_size):
    """Larger field plus an embedding function, for finite inputs only."""
    if isinstance(field, PrimeField):
        big = build_extension(field.p, min_size)
        return big, (lambda x: embed(x, field, big))
    if isinstance(field, ExtensionField):
        raise FieldTooSmall(
            f"{field} is too small and enlarging a proper extension field "
            "is not supported"
        )
    raise FieldTooSmall(f"cannot enlarge {field}")


def pme_check(A, B, randomized_shift=False):
    """Decide principal minor equivalence; Equivalent verdicts carry a
    verified Certificate."""
    A.require_square()
    B.require_square()
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    if set(A.row_labels) != set(B.row_labels):
        raise LabelMismatch("matrices carry different label sets")
    f = A.field

    for l in sorted(A.row_labels, key=label_sort_key):
        if A.get(l, l) != B.get(l, l):
            return Verdict(False, reason={"subset": (l,)})

    ok, pairs = partition_compatible(A, B)
    if not ok:
        return Verdict(False, reason={"branch": "scc-partition-mismatch"})

    blocks = []
    pre_field = None
    pre_shift = {}
    for T, _ in pairs:
        T = tuple(T)
        Ab = A.principal_submatrix(T)
        Bb = B.principal_submatrix(T)
        nb = len(T)
        if nb <= 3:
            w = diag_equivalent(Ab, Bb)
            if w is None:
                return Verdict(False, reason={"branch": "small-block", "labels": T})
            blocks.append(CertificateBlock(T, (), w))
            continue

        work_a, work_b = Ab, Bb
        try:
            D, A2, B2 = combine_shifts(work_a, work_b, randomized=randomized_shift)
            shift_field = f
        except FieldTooSmall:
            big, emb = _enlarge_field(f, 10 * nb ** 5 + 1)
            work_a = Ab.map_field(big, emb)
            work_b = Bb.map_field(big, emb)
            D, A2, B2 = combine_shifts(work_a, work_b, randomized=randomized_shift)
            shift_field = big

        seq, branch = _finding_cut_sequence(A2, B2)
        if seq is None:
            return Verdict(False, reason={"branch": branch, "labels": T})

        # the sequence transfers verbatim to the original block
        try:
            final = apply_cut_sequence(Ab, seq)
            w = diag_equivalent(final, Bb)
        except NotACut:
            w = None
        if w is None:
            return Verdict(
                False, reason={"branch": "certificate-transfer", "labels": T}
            )
        blocks.append(CertificateBlock(T, seq, w))
        pre_field = shift_field
        pre_shift.update(D)

    cert = Certificate(f, blocks, pre_field, pre_shift)
    if not verify_certificate(A, B, cert):
        raise AssertionError("produced certificate failed verification")
    return Verdict(True, certificate=cert)


def verify_certificate(A, B, cert):
    """Replay a certificate from scratch; never trusts the producer."""
    try:
        A.require_square()
        B.require_square()
    except Exception:
        return False
    if A.field != B.field or A.field != cert.field:
        return False
    if set(A.row_labels) != set(B.row_labels):
        return False
    covered = []
    for blk in cert.blocks:
        covered.extend(blk.labels)
    if sorted(covered, key=label_sort_key) != sorted(
        A.row_labels, key=label_sort_key
    ):
        return False
    cert_partition = frozenset(frozenset(b.labels) for b in cert.blocks)
    if len(cert_partition) != len(cert.blocks):
        return False
    if irreducible_blocks(A).partition() != cert_partition:
        return False
    if irreducible_blocks(B).partition() != cert_partition:
        return False
    for blk in cert.blocks:
        if len(blk.cut_sequence) >= 2 * len(blk.labels):
            return False
        Ab = A.principal_submatrix(blk.labels)
        Bb = B.principal_submatrix(blk.labels)
        try:
            final = apply_cut_sequence(Ab, blk.cut_sequence)
        except NotACut:
            return False
        if not blk.witness.check(final, Bb):
            return False
    return True
