"""Equality testing of symbolic determinants with rank-one coefficient
matrices.

A pencil A0 + u_1 v_1^T y_1 + ... + u_m v_m^T y_m has a multilinear
determinant; two such polynomials are compared deterministically by
reducing (via Cauchy-Binet and a linear matroid intersection) to a
principal-minor-equivalence instance.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

from .errors import DimensionMismatch, FieldMismatch, RankTooHigh, TooLarge
from .linalg import Matrix, determinant, inverse, rank
from .pme import pme_check


class RankOnePencil:
    """A0 + sum_j (u_j v_j^T) y_j with n x n terms and m variables."""

    def __init__(self, field, n, A0, terms):
        self.field = field
        self.n = n
        if A0 is None:
            A0 = Matrix.zero(field, n, n, tuple(range(1, n + 1)), tuple(range(1, n + 1)))
        self.A0 = A0
        self.terms = [
            (tuple(field.coerce(x) for x in u), tuple(field.coerce(x) for x in v))
            for u, v in terms
        ]
        self.m = len(self.terms)
        if A0.n_rows != n or A0.n_cols != n:
            raise DimensionMismatch("A0 must be n x n")
        for u, v in self.terms:
            if len(u) != n or len(v) != n:
                raise DimensionMismatch("term vectors must have length n")

    def is_homogeneous(self):
        f = self.field
        return all(f.is_zero(x) for r in self.A0.rows for x in r)

    def evaluate(self, assignment):
        """The matrix A0 + sum_j y_j u_j v_j^T at concrete values y_j."""
        f = self.field
        rows = [list(r) for r in self.A0.rows]
        for (u, v), y in zip(self.terms, assignment):
            y = f.coerce(y)
            if f.is_zero(y):
                continue
            for i in range(self.n):
                if f.is_zero(u[i]):
                    continue
                coef = f.mul(y, u[i])
                for j in range(self.n):
                    rows[i][j] = f.add(rows[i][j], f.mul(coef, v[j]))
        return Matrix(f, rows, self.A0.row_labels, self.A0.col_labels)

    def u_matrix(self):
        """n x m matrix whose j-th column is u_j."""
        return Matrix(
            self.field,
            [[self.terms[j][0][i] for j in range(self.m)] for i in range(self.n)],
            tuple(range(1, self.n + 1)),
            tuple(range(1, self.m + 1)),
        )

    def v_matrix(self):
        return Matrix(
            self.field,
            [[self.terms[j][1][i] for j in range(self.m)] for i in range(self.n)],
            tuple(range(1, self.n + 1)),
            tuple(range(1, self.m + 1)),
        )


def rank_one_decompose(A):
    """(u, v) with A = u v^T for a matrix of rank at most 1; the zero
    matrix gives zero vectors.  Raises RankTooHigh otherwise."""
    A.require_square()
    f = A.field
    n = A.n_rows
    if rank(A) > 1:
        raise RankTooHigh("matrix has rank greater than 1")
    zero = [f.zero] * n
    col = None
    for j in range(n):
        if any(not f.is_zero(A.rows[i][j]) for i in range(n)):
            col = j
            break
    if col is None:
        return tuple(zero), tuple(zero)
    u = [A.rows[i][col] for i in range(n)]
    i0 = next(i for i in range(n) if not f.is_zero(u[i]))
    inv = f.inv(u[i0])
    v = [f.mul(A.rows[i0][j], inv) for j in range(n)]
    return tuple(u), tuple(v)


# ---------------------------------------------------------------------------
# linear matroid intersection


def _independent(M, cols):
    """Columns (labels) of M linearly independent?"""
    if not cols:
        return True
    sub = M.submatrix(M.row_labels, cols)
    return rank(sub) == len(cols)


def matroid_intersection_common_base(U, V):
    """A size-n common independent column set of the two linear matroids
    given by n x m matrices U and V, or None.

    Standard exchange-graph augmentation: starting from the empty set,
    repeatedly BFS from the columns addable to the U-matroid toward the
    columns addable to the V-matroid and flip a shortest augmenting path
    (lexicographically smallest among shortest, via sorted exploration).
    """
    if U.n_rows != V.n_rows or U.n_cols != V.n_cols:
        raise DimensionMismatch("U and V must have equal shapes")
    n = U.n_rows
    ground = list(U.col_labels)
    J = set()
    while len(J) < n:
        inside = sorted(J)
        outside = [e for e in ground if e not in J]
        sources = [y for y in outside if _independent(U, inside + [y])]
        sinks = {y for y in outside if _independent(V, inside + [y])}
        if not sources:
            return None
        # arcs x->y (x in J, y out) when J - x + y independent in U;
        # arcs y->x when J - x + y independent in V
        arcs = {e: [] for e in ground}
        for x in inside:
            rest = [e for e in inside if e != x]
            for y in outside:
                if not _independent(U, inside + [y]) and _independent(U, rest + [y]):
                    arcs[x].append(y)
                if not _independent(V, inside + [y]) and _independent(V, rest + [y]):
                    arcs[y].append(x)
        # BFS over sources in sorted order
        parent = {}
        start_of = {}
        queue = deque()
        for y in sorted(sources):
            parent[y] = None
            start_of[y] = y
            queue.append(y)
        path_end = None
        for y in sorted(sources):
            if y in sinks:
                path_end = y
                break
        while path_end is None and queue:
            v = queue.popleft()
            for w in sorted(arcs[v]):
                if w in parent:
                    continue
                parent[w] = v
                start_of[w] = start_of[v]
                if w in sinks:
                    path_end = w
                    break
                queue.append(w)
        if path_end is None:
            return None
        path = [path_end]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        J.symmetric_difference_update(path)
    return tuple(sorted(J))


# ---------------------------------------------------------------------------
# the minor-product comparison at the heart of both PIT cases


def _equal_minor_products(U1, V1, U2, V2, randomized_shift=False):
    """True iff det(U1[:,T]) det(V1[:,T]) = det(U2[:,T]) det(V2[:,T]) for
    every column subset T of size n_rows, decided via PME of the two
    block matrices [[0, Vhat^T], [-Uhat, 0]]."""
    f = U1.field
    r = U1.n_rows
    g = U1.n_cols
    if g < r:
        return True  # no subset of the required size: both sides all-zero
    T1 = matroid_intersection_common_base(U1, V1)
    T2 = matroid_intersection_common_base(U2, V2)
    if T1 is None and T2 is None:
        return True
    if T1 is None or T2 is None:
        return False
    T = T1
    all_rows = U1.row_labels

    def prod_at(U, V):
        return f.mul(
            determinant(
                Matrix(f, [[U.get(i, j) for j in T] for i in all_rows])
            ),
            determinant(
                Matrix(f, [[V.get(i, j) for j in T] for i in all_rows])
            ),
        )

    if prod_at(U1, V1) != prod_at(U2, V2):
        return False
    if g == r:
        return True

    order = list(T) + [c for c in U1.col_labels if c not in T]

    def normalized_tail(M):
        base = Matrix(f, [[M.get(i, j) for j in T] for i in all_rows])
        full = Matrix(
            f,
            [[M.get(i, j) for j in order] for i in all_rows],
            tuple(range(1, r + 1)),
            tuple(range(1, g + 1)),
        )
        prime = inverse(base).mul(full)
        # columns beyond the base, an r x (g - r) block
        return [[prime.rows[i][j] for j in range(r, g)] for i in range(r)]

    hats = [normalized_tail(M) for M in (U1, V1, U2, V2)]

    def block_matrix(u_hat, v_hat):
        k = g - r
        labels = tuple(range(1, g + 1))
        rows = []
        for i in range(k):
            rows.append(
                [f.zero] * k + [v_hat[j][i] for j in range(r)]
            )
        for i in range(r):
            rows.append(
                [f.neg(u_hat[i][j]) for j in range(k)] + [f.zero] * r
            )
        return Matrix(f, rows, labels, labels)

    M1 = block_matrix(hats[0], hats[1])
    M2 = block_matrix(hats[2], hats[3])
    return bool(pme_check(M1, M2, randomized_shift=randomized_shift))


# ---------------------------------------------------------------------------
# public entry points


def _check_shapes(p1, p2):
    if p1.field != p2.field:
        raise FieldMismatch(f"{p1.field} vs {p2.field}")
    if p1.n != p2.n or p1.m != p2.m:
        raise DimensionMismatch("pencils must share n and m")


def pit_homogeneous(p1, p2, randomized_shift=False):
    """Equality of det(sum u_j v_j^T y_j) for two homogeneous pencils."""
    _check_shapes(p1, p2)
    if p1.m < p1.n:
        return True  # both determinants are identically zero
    return _equal_minor_products(
        p1.u_matrix(),
        p1.v_matrix(),
        p2.u_matrix(),
        p2.v_matrix(),
        randomized_shift=randomized_shift,
    )


def _bottom_rows(p):
    """The variable-free bottom m+n rows of the (2m+n) x (2m+n) matrix
    C = [[I_m, Y, 0], [0, I_m, V^T], [U, 0, A0]]."""
    f = p.field
    m, n = p.m, p.n
    V = p.v_matrix()
    U = p.u_matrix()
    rows = []
    for i in range(m):
        row = [f.zero] * m
        row += [f.one if j == i else f.zero for j in range(m)]
        row += [V.rows[j][i] for j in range(n)]  # V^T row i
        rows.append(row)
    for i in range(n):
        row = [U.rows[i][j] for j in range(m)]
        row += [f.zero] * m
        row += [p.A0.rows[i][j] for j in range(n)]
        rows.append(row)
    labels_r = tuple(range(1, m + n + 1))
    labels_c = tuple(range(1, 2 * m + n + 1))
    return Matrix(f, rows, labels_r, labels_c)


def _fixed_selector(field, m, n):
    """The (m+n) x (2m+n) matrix [[I_m, I_m, 0], [0, 0, I_n]]."""
    rows = []
    for i in range(m):
        row = [field.one if j == i else field.zero for j in range(m)]
        row += [field.one if j == i else field.zero for j in range(m)]
        row += [field.zero] * n
        rows.append(row)
    for i in range(n):
        row = [field.zero] * (2 * m)
        row += [field.one if j == i else field.zero for j in range(n)]
        rows.append(row)
    return Matrix(
        field, rows, tuple(range(1, m + n + 1)), tuple(range(1, 2 * m + n + 1))
    )


def pit_general(p1, p2, randomized_shift=False):
    """Equality of det(A0 + sum u_j v_j^T y_j) with arbitrary constant
    terms, via the bordered determinant representation det(C) and the
    same minor-product comparison against a fixed selector matrix."""
    _check_shapes(p1, p2)
    W1 = _bottom_rows(p1)
    W2 = _bottom_rows(p2)
    S = _fixed_selector(p1.field, p1.m, p1.n)
    return _equal_minor_products(
        W1, S, W2, S, randomized_shift=randomized_shift
    )


def pit_check(p1, p2, randomized_shift=False):
    """Dispatch: homogeneous comparison when both constant terms are
    zero, general comparison otherwise."""
    _check_shapes(p1, p2)
    if p1.is_homogeneous() and p2.is_homogeneous():
        return pit_homogeneous(p1, p2, randomized_shift=randomized_shift)
    return pit_general(p1, p2, randomized_shift=randomized_shift)


def brute_force_pit(p1, p2):
    """Evaluate both multilinear determinants on all of {0,1}^m."""
    _check_shapes(p1, p2)
    m = p1.m
    if m > 12:
        raise TooLarge("brute-force PIT limited to m <= 12")
    for mask in range(1 << m):
        point = [(mask >> j) & 1 for j in range(m)]
        if determinant(p1.evaluate(point)) != determinant(p2.evaluate(point)):
            return False
    return True
