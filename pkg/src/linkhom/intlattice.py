"""Exact integer linear algebra: Hermite/Smith normal forms and ℤ-linear solving.

Everything here is arbitrary-precision (plain Python ints) and deterministic.
The staged decision procedure reduces to systems A·x = b over ℤ; `solve`
returns a particular solution plus a lattice basis of the kernel, and `hnf`
provides the canonical residues behind normal forms.

Conventions:
  * `hnf(A)` returns (H, U) with U unimodular, H = U·A, H in row-style Hermite
    normal form: echelon shape, pivots positive, entries above each pivot
    reduced into [0, pivot), zero rows last.
  * `snf(A)` returns (S, U, V) with S = U·A·V diagonal, nonnegative, each
    diagonal entry dividing the next.
  * `solve(A, b)` returns None when the system has no integer solution —
    unsolvable is a value, not an error.
"""

from __future__ import annotations

from .errors import LinkhomError


class IntMatrix:
    """An immutable rectangular integer matrix (row-major tuples)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, cols=None):
        data = tuple(tuple(int(x) for x in row) for row in data)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise LinkhomError("ragged rows in matrix")
        else:
            width = 0 if cols is None else cols
        self.rows = len(data)
        self.cols = width
        self.data = data

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(tuple((0,) * cols for _ in range(rows)), cols=cols)

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [tuple(c) for c in columns]
        if not columns:
            return cls((), cols=0) if rows is None else cls(tuple(() for _ in range(rows)))
        height = len(columns[0])
        if any(len(c) != height for c in columns):
            raise LinkhomError("ragged columns in matrix")
        return cls(tuple(tuple(c[i] for c in columns) for i in range(height)))

    def transpose(self):
        return IntMatrix(
            tuple(tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)),
            cols=self.rows,
        )

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(self.data[i][j] for i in range(self.rows))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise LinkhomError(
                    f"dimension mismatch: ({self.rows}x{self.cols}) @ ({other.rows}x{other.cols})"
                )
            return IntMatrix(
                tuple(
                    tuple(
                        sum(self.data[i][k] * other.data[k][j] for k in range(self.cols))
                        for j in range(other.cols)
                    )
                    for i in range(self.rows)
                ),
                cols=other.cols,
            )
        # matrix @ vector
        vec = tuple(int(x) for x in other)
        if self.cols != len(vec):
            raise LinkhomError(f"dimension mismatch: ({self.rows}x{self.cols}) @ vec{len(vec)}")
        return tuple(sum(self.data[i][k] * vec[k] for k in range(self.cols))
                     for i in range(self.rows))

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and other.rows == self.rows
            and other.cols == self.cols
            and other.data == self.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        if self.rows == 0 or self.cols == 0:
            return f"IntMatrix({self.rows}x{self.cols})"
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"IntMatrix[{body}]"

    def det(self):
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise LinkhomError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


def _xgcd(a, b):
    """g, x, y with g = a*x + b*y and g = gcd(a, b) ≥ 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf(A):
    """Row-style Hermite normal form: (H, U) with H = U·A, U unimodular."""
    m, n = A.rows, A.cols
    H = [list(r) for r in A.data]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        pivot_row = None
        for i in range(r, m):
            if H[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            H[r], H[pivot_row] = H[pivot_row], H[r]
            U[r], U[pivot_row] = U[pivot_row], U[r]
        for i in range(r + 1, m):
            if not H[i][c]:
                continue
            a, b = H[r][c], H[i][c]
            if b % a == 0:
                q = b // a
                for k in range(n):
                    H[i][k] -= q * H[r][k]
                for k in range(m):
                    U[i][k] -= q * U[r][k]
            else:
                g, x, y = _xgcd(a, b)
                ag, bg = a // g, b // g
                for k in range(n):
                    hr, hi = H[r][k], H[i][k]
                    H[r][k] = x * hr + y * hi
                    H[i][k] = -bg * hr + ag * hi
                for k in range(m):
                    ur, ui = U[r][k], U[i][k]
                    U[r][k] = x * ur + y * ui
                    U[i][k] = -bg * ur + ag * ui
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv  # floor division puts the entry into [0, piv)
            if q:
                for k in range(n):
                    H[i][k] -= q * H[r][k]
                for k in range(m):
                    U[i][k] -= q * U[r][k]
        r += 1
        if r == m:
            break
    return IntMatrix(H, cols=n), IntMatrix(U, cols=m)


def snf(A):
    """Smith normal form: (S, U, V) with S = U·A·V, d1 | d2 | … ."""
    m, n = A.rows, A.cols
    S = [list(r) for r in A.data]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_combine(i1, i2, a, b, c, d):
        for k in range(n):
            x, y = S[i1][k], S[i2][k]
            S[i1][k], S[i2][k] = a * x + b * y, c * x + d * y
        for k in range(m):
            x, y = U[i1][k], U[i2][k]
            U[i1][k], U[i2][k] = a * x + b * y, c * x + d * y

    def col_combine(j1, j2, a, b, c, d):
        for k in range(m):
            x, y = S[k][j1], S[k][j2]
            S[k][j1], S[k][j2] = a * x + b * y, c * x + d * y
        for k in range(n):
            x, y = V[k][j1], V[k][j2]
            V[k][j1], V[k][j2] = a * x + b * y, c * x + d * y

    def clear_position(t):
        """Make row t and column t zero outside (t, t)."""
        while True:
            changed = False
            for i in range(t + 1, m):
                if not S[i][t]:
                    continue
                changed = True
                a, b = S[t][t], S[i][t]
                if a and b % a == 0:
                    row_combine(t, i, 1, 0, -(b // a), 1)
                else:
                    g, x, y = _xgcd(a, b)
                    row_combine(t, i, x, y, -(b // g), a // g)
            for j in range(t + 1, n):
                if not S[t][j]:
                    continue
                changed = True
                a, b = S[t][t], S[t][j]
                if a and b % a == 0:
                    col_combine(t, j, 1, 0, -(b // a), 1)
                else:
                    g, x, y = _xgcd(a, b)
                    col_combine(t, j, x, y, -(b // g), a // g)
            if not changed:
                return

    limit = min(m, n)
    for t in range(limit):
        # find a nonzero entry in the trailing block and move it to (t, t)
        found = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j]:
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i, j = found
        if i != t:
            S[t], S[i] = S[i], S[t]
            U[t], U[i] = U[i], U[t]
        if j != t:
            for row in S:
                row[t], row[j] = row[j], row[t]
            for row in V:
                row[t], row[j] = row[j], row[t]
        clear_position(t)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]

    # enforce the divisibility chain d1 | d2 | …
    while True:
        fixed = True
        for t in range(limit - 1):
            a, b = S[t][t], S[t + 1][t + 1]
            if a and b % a != 0:
                fixed = False
                # bring d_{t+1} into row t, then re-clear; the pivot becomes
                # gcd(a, b) and the successor the matching lcm
                row_combine(t, t + 1, 1, 1, 0, 1)
                clear_position(t)
                if S[t][t] < 0:
                    S[t] = [-x for x in S[t]]
                    U[t] = [-x for x in U[t]]
                if S[t + 1][t + 1] < 0:
                    S[t + 1] = [-x for x in S[t + 1]]
                    U[t + 1] = [-x for x in U[t + 1]]
        if fixed:
            break
    return IntMatrix(S, cols=n), IntMatrix(U, cols=m), IntMatrix(V, cols=n)


def solve(A, b):
    """All integer solutions of A·x = b, or None if there are none.

    Returns (x0, K): one particular solution (tuple of ints) and an IntMatrix
    whose *columns* are a lattice basis of {x : A·x = 0}.  K has exactly
    (cols(A) − rank(A)) columns, possibly none.
    """
    b = tuple(int(x) for x in b)
    if len(b) != A.rows:
        raise LinkhomError(f"right-hand side has length {len(b)}, expected {A.rows}")
    R, W = hnf(A.transpose())
    # A·Wᵀ = Rᵀ, so with x = Wᵀ·y the system becomes Rᵀ·y = b.
    residual = list(b)
    y = [0] * R.rows
    kernel_rows = []
    for j in range(R.rows):
        row = R.row(j)
        pivot_col = next((k for k, v in enumerate(row) if v), None)
        if pivot_col is None:
            kernel_rows.append(j)
            continue
        num = residual[pivot_col]
        if num % row[pivot_col]:
            return None
        q = num // row[pivot_col]
        y[j] = q
        if q:
            for k in range(pivot_col, len(residual)):
                residual[k] -= q * row[k]
    if any(residual):
        return None
    x0 = tuple(
        sum(W.data[j][i] * y[j] for j in range(R.rows)) for i in range(A.cols)
    )
    K = IntMatrix.from_columns([W.row(j) for j in kernel_rows], rows=A.cols)
    return x0, K


def kernel(A):
    """A lattice basis (as matrix columns) of {x : A·x = 0}."""
    result = solve(A, (0,) * A.rows)
    return result[1]
