"""Dense matrix algebra over GF(q).

Row-vector convention throughout: a codeword is ``x @ A`` with ``x`` a row
vector.  Vectors are plain ``int64`` NumPy arrays; a 2-D array of vectors
is treated as a batch (one vector per row).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from . import instrument
from .errors import (
    FieldMismatchError,
    InconsistentSystemError,
    NonUniqueSolutionError,
    SingularMatrixError,
)
from .gf import Field, get_field


class Matrix:
    """Immutable dense matrix over a finite field."""

    __slots__ = ("field", "data")

    def __init__(self, field: Field, data):
        arr = np.array(data, dtype=np.int64, copy=True)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError(f"matrix data must be 2-D, got shape {arr.shape}")
        field.check(arr)
        arr.flags.writeable = False
        self.field = field
        self.data = arr

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.data.T)

    def select_rows(self, idx) -> "Matrix":
        return Matrix(self.field, self.data[np.asarray(idx, dtype=np.int64)].reshape(-1, self.cols))

    def select_cols(self, idx) -> "Matrix":
        return Matrix(self.field, self.data[:, np.asarray(idx, dtype=np.int64)].reshape(self.rows, -1))

    def row_weights(self) -> np.ndarray:
        return np.count_nonzero(self.data, axis=1)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return matmul(self, other)
        return NotImplemented

    def __add__(self, other):
        _same_field(self, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(self.field, self.field.add(self.data, other.data))

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and np.array_equal(self.data, other.data)
        )

    __hash__ = None

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)

    def tolist(self):
        return self.data.tolist()

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.data.tolist()})"


def _same_field(a: Matrix, b: Matrix):
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field!r} vs {b.field!r}")


def matmul(a: Matrix, b: Matrix) -> Matrix:
    _same_field(a, b)
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    instrument.tally("mul", a.rows * a.cols * b.cols)
    instrument.tally("add", a.rows * max(a.cols - 1, 0) * b.cols)
    return Matrix(a.field, a.field.matmul(a.data, b.data))


def vecmat(field: Field, x, a: Matrix) -> np.ndarray:
    """``x @ a`` for a vector or a batch of row vectors ``x``."""
    if a.field != field:
        raise FieldMismatchError(f"{field!r} vs {a.field!r}")
    x = field.check(x)
    if x.shape[-1] != a.rows:
        raise ValueError(f"vector length {x.shape[-1]} does not match {a.rows} rows")
    return field.matmul(x, a.data)


def row_reduce(field: Field, m, pivot_cols=None):
    """Gauss-Jordan elimination; returns ``(reduced, pivot_columns)``.

    Pivot search scans columns left to right and takes the first nonzero
    entry at or below the current row.  Only the first ``pivot_cols``
    columns are eligible as pivots (default: all), which lets callers
    reduce an augmented matrix.
    """
    m = np.array(m, dtype=np.int64, copy=True)
    rows, cols = m.shape
    limit = cols if pivot_cols is None else pivot_cols
    pivots = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        piv = int(m[r, c])
        if piv != 1:
            m[r] = field.mul(m[r], field.inv(piv))
            instrument.tally("mul", cols)
        f = m[:, c].copy()
        f[r] = 0
        others = np.flatnonzero(f)
        if others.size:
            m[others] = field.sub(m[others], field.mul(f[others, None], m[r][None, :]))
            instrument.tally("mul", others.size * cols)
            instrument.tally("add", others.size * cols)
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    if a.rows == 0 or a.cols == 0:
        return 0
    return len(row_reduce(a.field, a.data)[1])


def solve(a: Matrix, b, allow_nonunique: bool = False) -> np.ndarray:
    """Solve ``x @ a = b`` for ``x``.

    ``b`` may be a single row vector or a batch (2-D, one right-hand side
    per row); the result has the matching shape.

    Raises
    ------
    InconsistentSystemError
        Some right-hand side has no solution.
    NonUniqueSolutionError
        ``rank(a) < a.rows`` and ``allow_nonunique`` is false.  With
        ``allow_nonunique=True`` free variables are set to zero.
    """
    field = a.field
    b = field.check(b)
    single = b.ndim == 1
    bb = b[None, :] if single else b
    if bb.shape[1] != a.cols:
        raise ValueError(f"right-hand side length {bb.shape[1]} != {a.cols} columns")
    r, c = a.shape
    aug = np.concatenate([a.data.T, bb.T], axis=1)
    red, pivots = row_reduce(field, aug, pivot_cols=r)
    rk = len(pivots)
    if np.any(red[rk:, r:]):
        raise InconsistentSystemError("x·A = b has no solution")
    if rk < r and not allow_nonunique:
        raise NonUniqueSolutionError(
            f"solution not unique: rank {rk} < {r} rows", rank=rk, rows=r
        )
    x = np.zeros((bb.shape[0], r), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[:, pc] = red[i, r:]
    return x[0] if single else x


def inverse(a: Matrix) -> Matrix:
    """Generic inverse by Gauss-Jordan elimination."""
    if a.rows != a.cols:
        raise ValueError(f"matrix is not square: {a.shape}")
    try:
        x = solve(a, np.eye(a.rows, dtype=np.int64))
    except (NonUniqueSolutionError, InconsistentSystemError) as exc:
        raise SingularMatrixError("matrix is singular") from exc
    return Matrix(a.field, x)


def nullspace(a: Matrix) -> Matrix:
    """Rows spanning ``{x : a @ x^T = 0}`` (the right kernel)."""
    field = a.field
    red, pivots = row_reduce(field, a.data)
    free = [j for j in range(a.cols) if j not in set(pivots)]
    basis = np.zeros((len(free), a.cols), dtype=np.int64)
    for t, fj in enumerate(free):
        basis[t, fj] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = field.neg(int(red[i, fj]))
    return Matrix(field, basis.reshape(len(free), a.cols))


def kron(a: Matrix, b: Matrix) -> Matrix:
    _same_field(a, b)
    prod = a.field.mul(a.data[:, None, :, None], b.data[None, :, None, :])
    return Matrix(a.field, prod.reshape(a.rows * b.rows, a.cols * b.cols))


def kron_power(base: Matrix, s: int) -> Matrix:
    """s-fold Kronecker power; ``s = 0`` gives the 1x1 identity."""
    if s < 0:
        raise ValueError("s must be >= 0")
    out = Matrix.identity(base.field, 1)
    for _ in range(s):
        out = kron(out, base)
    return out


def kernel_f2() -> Matrix:
    """The 2x2 binary kernel [[1, 0], [1, 1]]."""
    return Matrix(get_field(2), [[1, 0], [1, 1]])


def vandermonde(field: Field, points, rows: int | None = None) -> Matrix:
    """``V[i][j] = points[j] ** i`` for ``i < rows`` (default: square)."""
    pts = field.check(points)
    rows = len(pts) if rows is None else rows
    return Matrix(field, np.array([field.pow(pts, i) for i in range(rows)]).reshape(rows, len(pts)))


def vandermonde_inverse(field: Field, points) -> Matrix:
    """Inverse of the square Vandermonde matrix in O(m^2) field operations.

    Row ``j`` of the inverse holds the coefficients (ascending degree) of
    the Lagrange basis polynomial that is 1 at ``points[j]`` and 0 at the
    other points.  The master polynomial is built once; each basis
    polynomial is one synthetic division plus one Horner evaluation.
    """
    pts = [int(p) for p in field.check(points)]
    m = len(pts)
    if m == 0:
        raise ValueError("need at least one point")
    add, mul, sub = field.add, field.mul, field.sub

    # master polynomial prod (x - p), coefficients ascending, monic
    master = [1]
    for p in pts:
        nxt = [0] * (len(master) + 1)
        for i, c in enumerate(master):
            nxt[i + 1] = add(nxt[i + 1], c)
            nxt[i] = sub(nxt[i], mul(c, p))
        instrument.tally("mul", len(master))
        instrument.tally("add", 2 * len(master))
        master = nxt

    out = np.zeros((m, m), dtype=np.int64)
    for j, p in enumerate(pts):
        quot = [0] * m
        quot[m - 1] = master[m]
        for i in range(m - 1, 0, -1):
            quot[i - 1] = add(master[i], mul(p, quot[i]))
        denom = 0
        for c in reversed(quot):
            denom = add(mul(denom, p), c)
        instrument.tally("mul", 2 * m)
        instrument.tally("add", 2 * m)
        if denom == 0:
            raise SingularMatrixError(f"repeated evaluation point {p}")
        dinv = field.inv(denom)
        out[j] = [mul(c, dinv) for c in quot]
        instrument.tally("mul", m)
    return Matrix(field, out)


# -- text fixtures --------------------------------------------------------


def format_matrix(a: Matrix) -> str:
    head = f"{a.rows} {a.cols} {a.field.q}"
    if a.field.poly is not None:
        head += f" {bin(a.field.poly)}"
    lines = [head] + [" ".join(str(v) for v in row) for row in a.data.tolist()]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> Matrix:
    """Parse ``rows cols q [poly]`` followed by row-major integers."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty matrix text")
    head = lines[0].split()
    if len(head) not in (3, 4):
        raise ValueError(f"bad header line: {lines[0]!r}")
    rows, cols, q = int(head[0]), int(head[1]), int(head[2])
    field = get_field(q, head[3] if len(head) == 4 else None)
    values = [int(tok) for ln in lines[1:] for tok in ln.split()]
    if len(values) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(values)}")
    return Matrix(field, np.array(values, dtype=np.int64).reshape(rows, cols))


def read_matrix(path) -> Matrix:
    return parse_matrix(Path(path).read_text())


def write_matrix(path, a: Matrix) -> None:
    Path(path).write_text(format_matrix(a))
