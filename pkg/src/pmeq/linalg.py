"""Dense exact matrices with labeled rows/columns, plus univariate
polynomials and Lagrange interpolation.

Determinant and rank use Gaussian elimination with exact division and
first-nonzero pivoting, so results are identical over the rationals and
over finite fields.
"""

from __future__ import annotations

from .errors import (
    DimensionMismatch,
    DuplicatePoint,
    FieldTooSmall,
    NotSquare,
    UnknownLabel,
)


def label_sort_key(label):
    """Stable order for mixed int/str labels: ints first, then strings."""
    return (isinstance(label, str), label)


class Matrix:
    """Immutable dense matrix over a Field, with labeled rows and columns."""

    def __init__(self, field, rows, row_labels=None, col_labels=None):
        self.field = field
        self.rows = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        self.n_rows = len(self.rows)
        self.n_cols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.n_cols:
                raise DimensionMismatch("ragged rows")
        if row_labels is None:
            row_labels = tuple(range(1, self.n_rows + 1))
        if col_labels is None:
            col_labels = tuple(row_labels) if len(row_labels) == self.n_cols else tuple(
                range(1, self.n_cols + 1)
            )
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        if len(self.row_labels) != self.n_rows or len(self.col_labels) != self.n_cols:
            raise DimensionMismatch("label count does not match shape")
        if len(set(self.row_labels)) != self.n_rows:
            raise DimensionMismatch("duplicate row labels")
        if len(set(self.col_labels)) != self.n_cols:
            raise DimensionMismatch("duplicate column labels")
        self._row_index = {l: i for i, l in enumerate(self.row_labels)}
        self._col_index = {l: j for j, l in enumerate(self.col_labels)}

    # -- construction helpers ------------------------------------------------

    @classmethod
    def identity(cls, field, labels):
        labels = tuple(labels)
        n = len(labels)
        return cls(
            field,
            [[field.one if i == j else field.zero for j in range(n)] for i in range(n)],
            labels,
            labels,
        )

    @classmethod
    def zero(cls, field, n_rows, n_cols, row_labels=None, col_labels=None):
        return cls(
            field,
            [[field.zero] * n_cols for _ in range(n_rows)],
            row_labels,
            col_labels,
        )

    # -- access --------------------------------------------------------------

    def get(self, i, j):
        """Entry by labels."""
        try:
            return self.rows[self._row_index[i]][self._col_index[j]]
        except KeyError as e:
            raise UnknownLabel(f"no label {e.args[0]!r}") from None

    @property
    def is_square(self):
        return self.n_rows == self.n_cols and self.row_labels == self.col_labels

    def require_square(self):
        if self.n_rows != self.n_cols:
            raise NotSquare(f"matrix is {self.n_rows}x{self.n_cols}")

    def labels(self):
        return self.row_labels

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.row_labels, self.col_labels, self.rows))

    def __repr__(self):
        body = "\n".join(
            " ".join(self.field.format_elem(x) for x in r) for r in self.rows
        )
        return f"Matrix over {self.field}, labels {list(self.row_labels)}:\n{body}"

    # -- basic algebra -------------------------------------------------------

    def transpose(self):
        return Matrix(
            self.field,
            [
                [self.rows[i][j] for i in range(self.n_rows)]
                for j in range(self.n_cols)
            ],
            self.col_labels,
            self.row_labels,
        )

    def add(self, other):
        self.field.check_same(other.field)
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols):
            raise DimensionMismatch("shape mismatch in add")
        f = self.field
        return Matrix(
            f,
            [
                [f.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.row_labels,
            self.col_labels,
        )

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        return Matrix(
            f,
            [[f.mul(c, x) for x in r] for r in self.rows],
            self.row_labels,
            self.col_labels,
        )

    def mul(self, other):
        self.field.check_same(other.field)
        if self.n_cols != other.n_rows:
            raise DimensionMismatch("shape mismatch in mul")
        f = self.field
        bt = list(zip(*other.rows))
        out = []
        for ra in self.rows:
            row = []
            for cb in bt:
                acc = f.zero
                for a, b in zip(ra, cb):
                    acc = f.add(acc, f.mul(a, b))
                row.append(acc)
            out.append(row)
        return Matrix(f, out, self.row_labels, other.col_labels)

    # -- submatrices ---------------------------------------------------------

    def submatrix(self, row_set, col_set):
        """Rows/columns restricted to the given labels, in stored order."""
        rs = set(row_set)
        cs = set(col_set)
        for l in rs:
            if l not in self._row_index:
                raise UnknownLabel(f"no row label {l!r}")
        for l in cs:
            if l not in self._col_index:
                raise UnknownLabel(f"no column label {l!r}")
        rl = [l for l in self.row_labels if l in rs]
        cl = [l for l in self.col_labels if l in cs]
        return Matrix(
            self.field,
            [[self.get(i, j) for j in cl] for i in rl],
            rl,
            cl,
        )

    def principal_submatrix(self, S):
        return self.submatrix(S, S)

    def with_entry(self, i, j, value):
        """Copy with one entry replaced."""
        ri = self._row_index[i]
        cj = self._col_index[j]
        rows = [list(r) for r in self.rows]
        rows[ri][cj] = self.field.coerce(value)
        return Matrix(self.field, rows, self.row_labels, self.col_labels)

    def map_field(self, dst, embed_fn):
        """Carry all entries into another field through embed_fn."""
        return Matrix(
            dst,
            [[embed_fn(x) for x in r] for r in self.rows],
            self.row_labels,
            self.col_labels,
        )


def determinant(A):
    """Exact determinant by Gaussian elimination, pivot = first nonzero."""
    A.require_square()
    f = A.field
    n = A.n_rows
    if n == 0:
        return f.one
    rows = [list(r) for r in A.rows]
    det = f.one
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not f.is_zero(rows[r][col]):
                pivot = r
                break
        if pivot is None:
            return f.zero
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = f.neg(det)
        pv = rows[col][col]
        det = f.mul(det, pv)
        inv = f.inv(pv)
        for r in range(col + 1, n):
            factor = f.mul(rows[r][col], inv)
            if f.is_zero(factor):
                continue
            for c in range(col, n):
                rows[r][c] = f.sub(rows[r][c], f.mul(factor, rows[col][c]))
    return det


def rank(M):
    """Rank by exact row reduction."""
    f = M.field
    rows = [list(r) for r in M.rows]
    n_rows, n_cols = M.n_rows, M.n_cols
    r = 0
    for col in range(n_cols):
        pivot = None
        for i in range(r, n_rows):
            if not f.is_zero(rows[i][col]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = f.inv(rows[r][col])
        for i in range(r + 1, n_rows):
            factor = f.mul(rows[i][col], inv)
            if f.is_zero(factor):
                continue
            for c in range(col, n_cols):
                rows[i][c] = f.sub(rows[i][c], f.mul(factor, rows[r][c]))
        r += 1
        if r == n_rows:
            break
    return r


def inverse(A):
    """Exact inverse via Gauss-Jordan; raises DivisionByZero if singular."""
    A.require_square()
    f = A.field
    n = A.n_rows
    rows = [list(r) + [f.one if i == j else f.zero for j in range(n)]
            for i, r in enumerate(A.rows)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not f.is_zero(rows[r][col]):
                pivot = r
                break
        if pivot is None:
            from .errors import DivisionByZero

            raise DivisionByZero("matrix is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = f.inv(rows[col][col])
        rows[col] = [f.mul(inv, x) for x in rows[col]]
        for r in range(n):
            if r == col or f.is_zero(rows[r][col]):
                continue
            factor = rows[r][col]
            rows[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[r], rows[col])]
    return Matrix(f, [r[n:] for r in rows], A.row_labels, A.col_labels)


def adjugate(A):
    """adj(A) with A * adj(A) = det(A) * I; uses det(A) * A^{-1} when
    invertible, cofactors otherwise.  adj of a 1x1 matrix is [[1]]."""
    A.require_square()
    f = A.field
    n = A.n_rows
    if n == 0:
        return A
    if n == 1:
        return Matrix(f, [[f.one]], A.row_labels, A.col_labels)
    d = determinant(A)
    if not f.is_zero(d):
        return inverse(A).scale(d)
    labels = list(A.row_labels)
    out = [[f.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            # adj[i,j] = (-1)^{i+j} det(A without row j, column i)
            keep_rows = [labels[r] for r in range(n) if r != j]
            keep_cols = [labels[c] for c in range(n) if c != i]
            minor = determinant(
                Matrix(
                    f,
                    [[A.get(rl, cl) for cl in keep_cols] for rl in keep_rows],
                    keep_rows,
                    keep_cols,
                )
            )
            if (i + j) % 2:
                minor = f.neg(minor)
            out[i][j] = minor
    return Matrix(f, out, A.row_labels, A.col_labels)


def principal_submatrix(A, S):
    return A.principal_submatrix(S)


# ---------------------------------------------------------------------------
# univariate polynomials


class UnivariatePoly:
    """Polynomial over a Field; coefficients low-to-high, trailing zeros
    trimmed."""

    def __init__(self, field, coefficients):
        self.field = field
        coeffs = [field.coerce(c) for c in coefficients]
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coefficients) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coefficients

    def evaluate(self, x):
        f = self.field
        x = f.coerce(x)
        acc = f.zero
        for c in reversed(self.coefficients):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def add(self, other):
        f = self.field
        n = max(len(self.coefficients), len(other.coefficients))
        out = [f.zero] * n
        for i, c in enumerate(self.coefficients):
            out[i] = c
        for i, c in enumerate(other.coefficients):
            out[i] = f.add(out[i], c)
        return UnivariatePoly(f, out)

    def mul(self, other):
        f = self.field
        if self.is_zero() or other.is_zero():
            return UnivariatePoly(f, [])
        out = [f.zero] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if f.is_zero(a):
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] = f.add(out[i + j], f.mul(a, b))
        return UnivariatePoly(f, out)

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        return UnivariatePoly(f, [f.mul(c, x) for x in self.coefficients])

    def __eq__(self, other):
        return (
            isinstance(other, UnivariatePoly)
            and self.field == other.field
            and self.coefficients == other.coefficients
        )

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = ", ".join(self.field.format_elem(c) for c in self.coefficients)
        return f"Poly([{terms}])"


def lagrange_interpolate(field, points):
    """Unique polynomial of degree < len(points) through the given
    (x, y) pairs; x-coordinates must be pairwise distinct."""
    xs = [field.coerce(x) for x, _ in points]
    ys = [field.coerce(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise DuplicatePoint("repeated x-coordinate in interpolation")
    result = UnivariatePoly(field, [])
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if field.is_zero(yi):
            continue
        basis = UnivariatePoly(field, [field.one])
        denom = field.one
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = basis.mul(UnivariatePoly(field, [field.neg(xj), field.one]))
            denom = field.mul(denom, field.sub(xi, xj))
        result = result.add(basis.scale(field.mul(yi, field.inv(denom))))
    return result


def poly_matrix_determinant(field, poly_rows, degree_bound):
    """Determinant of a square matrix of UnivariatePoly entries, by
    evaluating the scalar determinant at degree_bound+1 enumerated points
    and interpolating.  Raises FieldTooSmall if the field cannot supply
    that many points."""
    n = len(poly_rows)
    for r in poly_rows:
        if len(r) != n:
            raise NotSquare("polynomial matrix is not square")
    count = degree_bound + 1
    if field.cardinality is not None and count > field.cardinality:
        raise FieldTooSmall(
            f"need {count} evaluation points, field has {field.cardinality}"
        )
    points = field.enumerate_points(count)
    samples = []
    for a in points:
        scalar = Matrix(
            field,
            [[p.evaluate(a) for p in r] for r in poly_rows],
            tuple(range(1, n + 1)),
            tuple(range(1, n + 1)),
        )
        samples.append((a, determinant(scalar)))
    return lagrange_interpolate(field, samples)
