"""Exact rational matrices and the elimination kernel everything else calls.

All arithmetic is over the rationals via ``fractions.Fraction``; no operation
ever rounds.  Matrices are immutable; zero-dimensional shapes are legal and
denote zero spaces.
"""

from fractions import Fraction
from math import gcd


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class Mat:
    """Immutable dense matrix over the rationals.

    Entries are stored row-major as a tuple of tuples of Fraction.  Either
    dimension may be zero.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        entries = tuple(tuple(_as_fraction(x) for x in row) for row in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError(
                "entry grid is %dx%s, expected %dx%d"
                % (len(entries), [len(r) for r in entries], rows, cols)
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @staticmethod
    def from_rows(entries):
        entries = [list(r) for r in entries]
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        return Mat(rows, cols, entries)

    @staticmethod
    def zero(rows, cols):
        return Mat(rows, cols, [[0] * cols for _ in range(rows)])

    @staticmethod
    def identity(n):
        return Mat(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __repr__(self):
        return "Mat(%d, %d, %r)" % (self.rows, self.cols, [list(r) for r in self.entries])

    def is_zero(self):
        return all(x == 0 for row in self.entries for x in row)

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def transpose(self):
        return Mat(self.cols, self.rows,
                   [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __add__(self, other):
        self._shape_match(other)
        return Mat(self.rows, self.cols,
                   [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._shape_match(other)
        return Mat(self.rows, self.cols,
                   [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return Mat(self.rows, self.cols, [[-a for a in row] for row in self.entries])

    def scale(self, c):
        c = _as_fraction(c)
        return Mat(self.rows, self.cols, [[c * a for a in row] for row in self.entries])

    def _shape_match(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch: %dx%d vs %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))

    def __mul__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("cannot multiply %dx%d by %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        a, b = self.entries, other.entries
        out = []
        for i in range(self.rows):
            ai = a[i]
            row = []
            for j in range(other.cols):
                s = Fraction(0)
                for k in range(self.cols):
                    aik = ai[k]
                    if aik:
                        s += aik * b[k][j]
                row.append(s)
            out.append(row)
        return Mat(self.rows, other.cols, out)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return Mat(self.rows, self.cols + other.cols,
                   [list(ra) + list(rb) for ra, rb in zip(self.entries, other.entries)])

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return Mat(self.rows + other.rows, self.cols,
                   list(self.entries) + list(other.entries))

    def submatrix(self, row_idx, col_idx):
        return Mat(len(row_idx), len(col_idx),
                   [[self.entries[i][j] for j in col_idx] for i in row_idx])

    def rank(self):
        return len(rref_with_kernel(self)[1])


def block_diag(mats):
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = [[Fraction(0)] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            row = out[r0 + i]
            for j in range(m.cols):
                row[c0 + j] = m.entries[i][j]
        r0 += m.rows
        c0 += m.cols
    return Mat(rows, cols, out)


def _int_rows(a):
    """Clear denominators row by row; returns lists of ints."""
    out = []
    for row in a.entries:
        lcm = 1
        for x in row:
            d = x.denominator
            lcm = lcm // gcd(lcm, d) * d
        out.append([int(x * lcm) for x in row])
    return out


def _forward_eliminate(rows, cols):
    """Fraction-free (Bareiss) forward elimination on integer rows.

    Returns (echelon integer rows, pivot column list).  Row order is the
    elimination order; rows below the last pivot are zero.
    """
    m = [list(r) for r in rows]
    n = len(m)
    pivots = []
    prev = 1
    r = 0
    for c in range(cols):
        # locate a pivot in column c at row >= r
        p = None
        for i in range(r, n):
            if m[i][c]:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        # Bareiss step: rows with a zero in column c are still rescaled so
        # that every entry stays an exact minor (divisions stay exact).
        for i in range(r + 1, n):
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c, cols):
                row_i[j] = (pv * row_i[j] - mic * row_r[j]) // prev
        prev = pv
        pivots.append(c)
        r += 1
        if r == n:
            break
    return m, pivots


def rref_with_kernel(a):
    """Reduced row echelon form, pivot columns, and a right-kernel basis.

    Returns ``(reduced, pivots, kernel)`` where ``reduced`` is the unique RREF
    of ``a``, ``pivots`` lists its pivot columns, and the columns of ``kernel``
    are a basis of the right null space (so ``a * kernel`` is exactly zero and
    ``rank + kernel.cols == a.cols``).
    """
    n, cols = a.rows, a.cols
    if cols == 0:
        return a, [], Mat(0, 0, [])
    if n == 0:
        return a, [], Mat.identity(cols)

    echelon, pivots = _forward_eliminate(_int_rows(a), cols)
    rank = len(pivots)

    # back-substitution over Q to reach the reduced form
    red = [[Fraction(x) for x in echelon[i]] for i in range(rank)]
    for i in range(rank - 1, -1, -1):
        c = pivots[i]
        pv = red[i][c]
        red[i] = [x / pv for x in red[i]]
        for k in range(i):
            f = red[k][c]
            if f:
                red[k] = [xk - f * xi for xk, xi in zip(red[k], red[i])]
    reduced = Mat(n, cols, red + [[0] * cols for _ in range(n - rank)])

    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    kern_cols = []
    for fcol in free:
        v = [Fraction(0)] * cols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -reduced.entries[i][fcol]
        kern_cols.append(v)
    kernel = Mat(cols, len(free),
                 [[kern_cols[k][i] for k in range(len(free))] for i in range(cols)])
    return reduced, pivots, kernel


def solve(a, b):
    """Solve ``a * x = b`` exactly; returns None when inconsistent.

    ``b`` may have any number of columns.  Raises ValueError on a row-count
    mismatch.  Any returned solution satisfies the system exactly.
    """
    if a.rows != b.rows:
        raise ValueError("solve: a has %d rows but b has %d" % (a.rows, b.rows))
    if a.cols == 0:
        return Mat(0, b.cols, []) if b.is_zero() else None
    aug = a.hstack(b)
    reduced, pivots, _ = rref_with_kernel(aug)
    for p in pivots:
        if p >= a.cols:
            return None
    x = [[Fraction(0)] * b.cols for _ in range(a.cols)]
    for i, p in enumerate(pivots):
        for j in range(b.cols):
            x[p][j] = reduced.entries[i][a.cols + j]
    return Mat(a.cols, b.cols, x)


def row_space_basis(a):
    """Rows of the RREF restricted to the nonzero ones: a canonical basis."""
    reduced, pivots, _ = rref_with_kernel(a)
    return Mat(len(pivots), a.cols, [reduced.entries[i] for i in range(len(pivots))])


def left_kernel(a):
    """Rows spanning {v : v * a = 0}."""
    return rref_with_kernel(a.transpose())[2].transpose()


def in_row_space(v, basis):
    """Is the row vector (1 x n Mat) in the row space of ``basis``?"""
    if basis.rows == 0:
        return v.is_zero()
    return solve(basis.transpose(), v.transpose()) is not None
