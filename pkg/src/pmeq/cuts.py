"""Cuts of a square matrix: detection, canonical rank-one factorization,
the cut-transpose operation, and minimal-cut search.

A cut of an n x n matrix A is a label subset X with 2 <= |X| <= n-2 such
that both off-diagonal blocks A[X, X-complement] and A[X-complement, X]
have rank at most 1.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import NotACut, NotIrreducible, TooLarge, ZeroBlock
from .linalg import Matrix, label_sort_key, rank
from .structure import is_irreducible


def _split(A, X):
    labels = A.row_labels
    Xset = set(X)
    inside = [l for l in labels if l in Xset]
    outside = [l for l in labels if l not in Xset]
    return inside, outside


def _rank_le_1(A, row_set, col_set):
    """rank(A[row_set, col_set]) <= 1, by checking that every row is
    proportional to the first nonzero row."""
    f = A.field
    ref = None
    ref_col = None
    for i in row_set:
        for j in col_set:
            if not f.is_zero(A.get(i, j)):
                ref = i
                ref_col = j
                break
        if ref is not None:
            break
    if ref is None:
        return True
    pivot = A.get(ref, ref_col)
    for i in row_set:
        lead = A.get(i, ref_col)
        for j in col_set:
            if f.mul(A.get(i, j), pivot) != f.mul(lead, A.get(ref, j)):
                return False
    return True


def is_cut(A, X):
    """True iff 2 <= |X| <= n-2 and both off-diagonal blocks have
    rank at most 1."""
    A.require_square()
    inside, outside = _split(A, X)
    n = A.n_rows
    if not (2 <= len(inside) <= n - 2) or len(inside) != len(set(X)):
        return False
    return _rank_le_1(A, inside, outside) and _rank_le_1(A, outside, inside)


def rank_one_factors(A, X):
    """Canonical factorization of the off-diagonal blocks of a cut.

    Returns (p, q, u, v) as label->element maps with
    A[X, X^c] = p q^T and A[X^c, X] = u v^T, where q is the first nonzero
    row of A[X, X^c] and u is the first nonzero column of A[X^c, X]
    ("first" in stored label order).  This pins p and v to have a leading
    coefficient of one, which makes cut_transpose an involution.
    """
    f = A.field
    inside, outside = _split(A, X)
    top = A.submatrix(inside, outside)
    bottom = A.submatrix(outside, inside)

    q_row = None
    for i in inside:
        if any(not f.is_zero(top.get(i, j)) for j in outside):
            q_row = i
            break
    if q_row is None:
        raise ZeroBlock("off-diagonal block A[X, X^c] is zero")
    q = {j: top.get(q_row, j) for j in outside}
    pivot_col = next(j for j in outside if not f.is_zero(q[j]))
    inv_q = f.inv(q[pivot_col])
    p = {i: f.mul(top.get(i, pivot_col), inv_q) for i in inside}

    u_col = None
    for j in inside:
        if any(not f.is_zero(bottom.get(i, j)) for i in outside):
            u_col = j
            break
    if u_col is None:
        raise ZeroBlock("off-diagonal block A[X^c, X] is zero")
    u = {i: bottom.get(i, u_col) for i in outside}
    pivot_row = next(i for i in outside if not f.is_zero(u[i]))
    inv_u = f.inv(u[pivot_row])
    v = {j: f.mul(bottom.get(pivot_row, j), inv_u) for j in inside}

    # the factorization must reproduce the blocks exactly (rank-1 guarantee)
    for i in inside:
        for j in outside:
            if top.get(i, j) != f.mul(p[i], q[j]):
                raise NotACut(f"{sorted(map(str, X))} is not a cut (top block)")
    for i in outside:
        for j in inside:
            if bottom.get(i, j) != f.mul(u[i], v[j]):
                raise NotACut(f"{sorted(map(str, X))} is not a cut (bottom block)")
    return p, q, u, v


def cut_transpose(A, X):
    """The cut-transpose tw(A, X): keeps A[X], replaces the off blocks
    p q^T, u v^T by p u^T, q v^T, and transposes A[X^c]."""
    if not is_cut(A, X):
        raise NotACut(f"{sorted(map(str, X))} is not a cut")
    f = A.field
    inside, outside = _split(A, X)
    p, q, u, v = rank_one_factors(A, X)
    labels = A.row_labels
    in_set = set(inside)
    out = []
    for i in labels:
        row = []
        for j in labels:
            if i in in_set and j in in_set:
                row.append(A.get(i, j))
            elif i in in_set:
                row.append(f.mul(p[i], u[j]))
            elif j in in_set:
                row.append(f.mul(q[i], v[j]))
            else:
                row.append(A.get(j, i))  # transposed N block
        out.append(row)
    return Matrix(f, out, labels, labels)


def cut_function_g(A, X):
    """rank(A[X, X^c]) + rank(A[X^c, X])."""
    inside, outside = _split(A, X)
    if not inside or not outside:
        return 0
    return rank(A.submatrix(inside, outside)) + rank(A.submatrix(outside, inside))


def _subsets_by_size_lex(labels):
    """All subsets with 2 <= |X| <= n-2 in (size, lexicographic) order."""
    n = len(labels)
    for size in range(2, n - 1):
        for combo in combinations(labels, size):
            yield combo


def brute_force_min_cut(A):
    """Exhaustive scan in (size, lexicographic) order; None if no cut."""
    A.require_square()
    if A.n_rows > 22:
        raise TooLarge("brute-force cut scan limited to n <= 22")
    labels = sorted(A.row_labels, key=label_sort_key)
    for combo in _subsets_by_size_lex(labels):
        if is_cut(A, combo):
            return tuple(combo)
    return None


def _ratio_closure_min_cut(A):
    """Minimal cut of a matrix with all off-diagonal entries nonzero.

    For each ordered triple (t1, t2, t3), grows the unique smallest set X
    containing {t1, t2} and excluding t3 whose off-diagonal blocks can
    still be rank one: whenever some j outside X makes a 2x2 minor against
    the reference column/row t3 nonzero, j is forced into X.  The fixed
    point is contained in every cut that separates {t1, t2} from t3, and
    is itself a cut when it stays small enough, so scanning all triples
    finds a minimum-cardinality cut.
    """
    f = A.field
    labels = sorted(A.row_labels, key=label_sort_key)
    n = len(labels)

    def closure(t1, t2, t3):
        # all 2x2 minors of the blocks vanish iff they vanish against the
        # anchor row/column t1 and reference index t3, so j stays outside
        # exactly when for every inside i:
        #   A[t1,j] A[i,t3] = A[t1,t3] A[i,j]   and
        #   A[j,t1] A[t3,i] = A[t3,t1] A[j,i]
        X = {t1, t2}
        frontier = [t2]
        outside = [l for l in labels if l not in X]
        while frontier:
            forced = []
            for j in outside:
                for i in frontier:
                    if f.mul(A.get(t1, j), A.get(i, t3)) != f.mul(
                        A.get(t1, t3), A.get(i, j)
                    ) or f.mul(A.get(j, t1), A.get(t3, i)) != f.mul(
                        A.get(t3, t1), A.get(j, i)
                    ):
                        forced.append(j)
                        break
            if t3 in forced:
                return None
            X.update(forced)
            outside = [l for l in outside if l not in X]
            frontier = forced
        return X

    best = None
    for t1, t2 in combinations(labels, 2):
        for t3 in labels:
            if t3 == t1 or t3 == t2:
                continue
            X = closure(t1, t2, t3)
            if X is None or len(X) > n - 2:
                continue
            key = (len(X), tuple(sorted(X, key=label_sort_key)))
            if best is None or key < best:
                best = key
            if len(X) == 2:
                # pairs are scanned lexicographically, so the first size-2
                # closure is the overall minimum; nothing can beat it
                return best[1]
    if best is None:
        return None
    return best[1]


def _greedy_base_vector(order, f_values):
    """Greedy vertex of the base polytope for the given element order."""
    return [f_values[i + 1] - f_values[i] for i in range(len(order))]


def _affine_minimizer(S):
    """Exact affine minimizer of the hull of the rows of S (lists of
    Fractions); returns (coefficients, point)."""
    m = len(S)
    n = len(S[0])
    # solve [[0, 1...1],[1, S S^T]] [mu; w] = [1; 0]
    gram = [
        [sum(S[i][k] * S[j][k] for k in range(n)) for j in range(m)] for i in range(m)
    ]
    size = m + 1
    aug = []
    aug.append([Fraction(0)] + [Fraction(1)] * m + [Fraction(1)])
    for i in range(m):
        aug.append([Fraction(1)] + [Fraction(x) for x in gram[i]] + [Fraction(0)])
    # gaussian elimination on the augmented system
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    w = [aug[r][size] for r in range(1, size)]
    point = [sum(w[i] * S[i][k] for i in range(m)) for k in range(n)]
    return w, point


def min_norm_point_sfm(ground, f):
    """Fujishige-Wolfe minimum-norm-point submodular minimization over
    exact rationals.  ground is an ordered list of elements; f maps a
    tuple of elements to an integer with f(()) = 0.  Returns the minimal
    minimizer as a set."""
    n = len(ground)
    memo = {}

    def fv(subset):
        key = tuple(subset)
        if key not in memo:
            memo[key] = Fraction(f(key))
        return memo[key]

    def greedy(w):
        order = sorted(range(n), key=lambda i: (w[i], i))
        vals = [fv([ground[j] for j in sorted(order[:i])]) for i in range(n + 1)]
        x = [Fraction(0)] * n
        for i in range(n):
            x[order[i]] = vals[i + 1] - vals[i]
        return x

    x = greedy([Fraction(0)] * n)
    S = [x]
    lam = [Fraction(1)]
    while True:
        q = greedy(x)
        xq = sum(a * b for a, b in zip(x, q))
        xx = sum(a * a for a in x)
        if xq >= xx or q in S:
            break
        S.append(q)
        lam.append(Fraction(0))
        while True:
            b, y = _affine_minimizer(S)
            if all(c > 0 for c in b):
                lam, x = b, y
                break
            theta = min(
                lam[i] / (lam[i] - b[i]) for i in range(len(S)) if b[i] < lam[i]
            )
            lam = [theta * bi + (1 - theta) * li for bi, li in zip(b, lam)]
            x = [theta * yi + (1 - theta) * xi for yi, xi in zip(y, x)]
            keep = [i for i in range(len(S)) if lam[i] > 0]
            S = [S[i] for i in keep]
            lam = [lam[i] for i in keep]
    return {ground[i] for i in range(n) if x[i] < 0}


def _sfm_min_cut(A):
    """Minimal cut via submodular minimization of g'_T over all 4-tuples
    T = (t1, t2, t3, t4): g'_T(X) = (n+1) g(X + {t1,t2}) + |X|."""
    labels = sorted(A.row_labels, key=label_sort_key)
    n = len(labels)
    best = None
    for t1, t2 in combinations(labels, 2):
        for t3, t4 in combinations([l for l in labels if l not in (t1, t2)], 2):
            ground = [l for l in labels if l not in (t1, t2, t3, t4)]

            def gp(subset, _t1=t1, _t2=t2):
                X = set(subset) | {_t1, _t2}
                return (n + 1) * cut_function_g(A, X) + len(subset)

            base = gp(())
            minimizer = min_norm_point_sfm(ground, lambda s: gp(s) - base)
            X = set(minimizer) | {t1, t2}
            if cut_function_g(A, X) <= 2 and 2 <= len(X) <= n - 2:
                key = (len(X), tuple(sorted(X, key=label_sort_key)))
                if best is None or key < best:
                    best = key
    return None if best is None else best[1]


def minimal_cut(A, backend=None):
    """A minimum-cardinality (hence inclusion-minimal) cut of an
    irreducible matrix, or None when A has no cut.

    Backends: 'ratio' (all off-diagonal entries nonzero, polynomial
    closure scan), 'exhaustive' (n <= 22), 'sfm' (minimum-norm-point
    submodular minimization).  Chosen automatically when not given.
    """
    A.require_square()
    if not is_irreducible(A):
        raise NotIrreducible("minimal_cut requires an irreducible matrix")
    n = A.n_rows
    if n < 4:
        return None
    if backend is None:
        f = A.field
        all_nonzero = all(
            not f.is_zero(A.get(i, j))
            for i in A.row_labels
            for j in A.col_labels
            if i != j
        )
        if all_nonzero:
            backend = "ratio"
        elif n <= 22:
            backend = "exhaustive"
        else:
            backend = "sfm"
    if backend == "ratio":
        return _ratio_closure_min_cut(A)
    if backend == "exhaustive":
        return brute_force_min_cut(A)
    if backend == "sfm":
        return _sfm_min_cut(A)
    raise ValueError(f"unknown backend {backend!r}")
