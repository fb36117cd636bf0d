"""
Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction` (always normalized, arbitrary
precision); no floating point is used anywhere.  Matrices are small
immutable :class:`RatMatrix` grids.  Determinants and linear solves run a
fraction-free (Bareiss) elimination on the integer matrix obtained by
clearing row denominators, so intermediate values stay integral.
"""

from fractions import Fraction
from math import lcm

from .errors import DimensionMismatch, NotSymmetric, SingularMatrix

Rational = Fraction


def as_rational(value):
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: they would smuggle binary rounding into exact data.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_rational(q):
    """``"p/q"`` with q > 0 reduced, or ``"p"`` when q = 1."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text):
    return as_rational(str(text))


def as_vector(values):
    return tuple(as_rational(v) for v in values)


class RatMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows, ncols=None):
        rows = tuple(as_vector(r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows")
        self._rows = rows
        self._ncols = ncols

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def diagonal(cls, entries):
        entries = list(entries)
        n = len(entries)
        return cls(
            [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)],
            ncols=n,
        )

    @property
    def nrows(self):
        return len(self._rows)

    @property
    def ncols(self):
        return self._ncols

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def rows(self):
        return self._rows

    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, index):
        i, j = index
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        body = ", ".join(
            "[" + ", ".join(format_rational(x) for x in r) + "]" for r in self._rows
        )
        return f"RatMatrix([{body}])"

    def transpose(self):
        return RatMatrix(
            [[self._rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.transpose().rows
            return RatMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows],
                ncols=other.ncols,
            )
        vec = as_vector(other)
        if len(vec) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.shape} matrix")
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self._rows)

    def is_symmetric(self):
        if not self.is_square():
            return False
        n = self.nrows
        return all(self._rows[i][j] == self._rows[j][i] for i in range(n) for j in range(i))

    def is_integral(self):
        return all(x.denominator == 1 for r in self._rows for x in r)

    def principal_submatrix(self, indices):
        idx = list(indices)
        return RatMatrix([[self._rows[i][j] for j in idx] for i in idx], ncols=len(idx))

    def permuted(self, perm):
        """Simultaneous row/column permutation, i.e. P^T M P."""
        return self.principal_submatrix(perm)

    def to_lists(self):
        return [list(r) for r in self._rows]


def _require_square(M):
    if not M.is_square():
        raise DimensionMismatch(f"expected a square matrix, got {M.shape}")


def _integer_rows(rows):
    """Scale every row to integers; returns (int rows, product of scales)."""
    out = []
    scale = 1
    for r in rows:
        den = lcm(*(x.denominator for x in r)) if r else 1
        out.append([x.numerator * (den // x.denominator) for x in r])
        scale *= den
    return out, scale


def _bareiss(a, n, ncols):
    """In-place fraction-free elimination on the first n columns of ``a``.

    Pivoting takes the first nonzero entry in the column.  Returns
    (sign, last pivot); the last pivot is 0 when the leading n x n block
    is singular.
    """
    sign = 1
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return sign, 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, ncols):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign, (a[n - 1][n - 1] if n else 1)


def determinant(M):
    """Exact determinant of a square RatMatrix (1 for the empty matrix)."""
    _require_square(M)
    n = M.nrows
    if n == 0:
        return Fraction(1)
    a, scale = _integer_rows(M.rows)
    sign, last = _bareiss(a, n, n)
    return Fraction(sign * last, scale)


def solve_linear(M, b):
    """Exact x with M x = b for square nonsingular M."""
    _require_square(M)
    n = M.nrows
    b = as_vector(b)
    if len(b) != n:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, expected {n}")
    if n == 0:
        return ()
    a, _ = _integer_rows([row + (bi,) for row, bi in zip(M.rows, b)])
    _, last = _bareiss(a, n, n + 1)
    if last == 0:
        raise SingularMatrix("matrix is singular")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(a[i][n])
        for j in range(i + 1, n):
            acc -= a[i][j] * x[j]
        x[i] = acc / a[i][i]
    return tuple(x)


def leading_principal_minors(M):
    """Determinants of the k x k upper-left blocks, k = 1..n."""
    _require_square(M)
    return [determinant(M.principal_submatrix(range(k))) for k in range(1, M.nrows + 1)]


def is_negative_definite(M):
    """Sylvester's criterion: (-1)^k times the k-th leading minor is positive.

    The empty matrix counts as negative definite.
    """
    if not M.is_symmetric():
        raise NotSymmetric("negative definiteness needs a symmetric matrix")
    n = M.nrows
    if n == 0:
        return True
    # Without pivoting the k-th Bareiss pivot is exactly the k-th leading
    # minor of the row-scaled matrix; scales are positive so signs agree.
    a, _ = _integer_rows(M.rows)
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        if pivot == 0 or (pivot > 0) != (k % 2 == 1):
            return False
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return True


def quadratic_form(M, x):
    """x^T M x."""
    x = as_vector(x)
    return sum((xi * yi for xi, yi in zip(x, M @ x)), Fraction(0))
