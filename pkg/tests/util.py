"""Shared test helpers: independent oracles and random instance
generators.  Everything here is deliberately written without reusing the
library's own elimination code paths, so tests cross-check two different
implementations."""

from fractions import Fraction

from pmeq import (
    Matrix,
    PrimeField,
    RationalField,
    brute_force_min_cut,
    brute_force_pme,
    cut_transpose,
)

Q = RationalField()
GF101 = PrimeField(101)


def cofactor_determinant(M):
    """Determinant by recursive cofactor expansion along the first row."""
    f = M.field
    n = M.n_rows
    if n == 0:
        return f.one
    if n == 1:
        return M.rows[0][0]
    total = f.zero
    for j in range(n):
        if f.is_zero(M.rows[0][j]):
            continue
        minor = Matrix(
            f,
            [[M.rows[i][k] for k in range(n) if k != j] for i in range(1, n)],
        )
        term = f.mul(M.rows[0][j], cofactor_determinant(minor))
        if j % 2:
            term = f.neg(term)
        total = f.add(total, term)
    return total


def rand_elem(field, rng, nonzero=False, span=7):
    while True:
        if field is Q or isinstance(field, RationalField):
            x = Fraction(rng.randint(-span, span))
        else:
            x = rng.randrange(field.p)
        if not nonzero or not field.is_zero(field.coerce(x)):
            return x


def random_matrix(field, n, rng, nonzero=False, labels=None):
    rows = [[rand_elem(field, rng, nonzero=nonzero) for _ in range(n)] for _ in range(n)]
    return Matrix(field, rows, labels, labels)


def planted_cut_matrix(field, n, rng, cut_size=None):
    """All-nonzero matrix with a planted cut X = first cut_size labels:
    off-diagonal blocks are outer products of nonzero vectors."""
    if cut_size is None:
        cut_size = rng.randint(2, n - 2)
    k = n - cut_size
    f = field

    def nz():
        return f.coerce(rand_elem(field, rng, nonzero=True))

    M = [[nz() for _ in range(cut_size)] for _ in range(cut_size)]
    N = [[nz() for _ in range(k)] for _ in range(k)]
    p = [nz() for _ in range(cut_size)]
    q = [nz() for _ in range(k)]
    u = [nz() for _ in range(k)]
    v = [nz() for _ in range(cut_size)]
    rows = []
    for i in range(cut_size):
        rows.append(M[i] + [f.mul(p[i], q[j]) for j in range(k)])
    for i in range(k):
        rows.append([f.mul(u[i], v[j]) for j in range(cut_size)] + N[i])
    X = tuple(range(1, cut_size + 1))
    return Matrix(field, rows), X


def diagonal_conjugate(A, rng):
    """D A D^{-1} for a random invertible diagonal D."""
    f = A.field
    D = {l: f.coerce(rand_elem(f, rng, nonzero=True)) for l in A.row_labels}
    rows = [
        [f.div(f.mul(D[i], A.get(i, j)), D[j]) for j in A.col_labels]
        for i in A.row_labels
    ]
    return Matrix(f, rows, A.row_labels, A.col_labels)


def pme_pair(field, n, rng):
    """(A, B) that are PME by construction: A has a planted cut; B is A
    after at most 3 cut-transposes on brute-force-found cuts, a diagonal
    conjugation, and possibly a transpose."""
    A, _ = planted_cut_matrix(field, n, rng)
    B = A
    for _ in range(rng.randint(0, 3)):
        X = brute_force_min_cut(B)
        if X is None:
            break
        B = cut_transpose(B, X)
    B = diagonal_conjugate(B, rng)
    if rng.random() < 0.5:
        B = B.transpose()
    return A, B


def non_pme_pair(field, n, rng):
    """(A, B) confirmed not PME by the brute-force oracle."""
    while True:
        A, B = pme_pair(field, n, rng)
        i = rng.choice(B.row_labels)
        j = rng.choice(B.col_labels)
        B = B.with_entry(i, j, rand_elem(field, rng))
        equal, _ = brute_force_pme(A, B)
        if not equal:
            return A, B
