"""Dense exact linear algebra over complex rationals.

Everything is immutable and every operation returns a fresh value, so
values are safe to share freely.  Elimination uses exact division with
first-nonzero pivoting: pivot magnitude is irrelevant in exact
arithmetic and a deterministic pivot choice keeps golden outputs
stable.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .errors import BackendError, ShapeError, SingularMatrixError
from .scalars import CR, ComplexRational, ONE, ZERO, conj, is_exact


def _coerce_scalar(x):
    if isinstance(x, ComplexRational):
        return x
    if isinstance(x, int):
        return CR(x)
    if isinstance(x, (float, complex)):
        # floating entries are kept as-is; exact operations refuse them
        return x
    try:
        return CR(x)
    except (TypeError, ValueError):
        raise TypeError(f"cannot use {x!r} as a matrix entry") from None


class Vector:
    """An exact column vector."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable):
        object.__setattr__(
            self, "entries", tuple(_coerce_scalar(e) for e in entries)
        )

    def __setattr__(self, name, value):
        raise AttributeError("Vector is immutable")

    @property
    def dim(self) -> int:
        return len(self.entries)

    @staticmethod
    def zero(n: int) -> "Vector":
        return Vector([ZERO] * n)

    @staticmethod
    def unit(n: int, i: int) -> "Vector":
        """Standard basis vector e_{i+1} (0-based index i) in C^n."""
        if not 0 <= i < n:
            raise ShapeError(f"unit index {i} out of range for dim {n}")
        return Vector([ONE if j == i else ZERO for j in range(n)])

    def __getitem__(self, i: int):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __add__(self, other: "Vector") -> "Vector":
        if self.dim != other.dim:
            raise ShapeError("vector dimensions differ")
        return Vector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "Vector") -> "Vector":
        if self.dim != other.dim:
            raise ShapeError("vector dimensions differ")
        return Vector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self):
        return Vector(-a for a in self.entries)

    def scale(self, c) -> "Vector":
        c = _coerce_scalar(c)
        return Vector(c * a for a in self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, Vector)
            and self.dim == other.dim
            and all(a == b for a, b in zip(self.entries, other.entries))
        )

    def __hash__(self):
        return hash(self.entries)

    @property
    def is_zero(self) -> bool:
        return all(not e for e in self.entries)

    def concat(self, other: "Vector") -> "Vector":
        return Vector(self.entries + other.entries)

    def conj(self) -> "Vector":
        return Vector(conj(a) for a in self.entries)

    def as_column(self) -> "Matrix":
        return Matrix(self.dim, 1, self.entries)

    def __repr__(self):
        return "Vector([" + ", ".join(str(e) for e in self.entries) + "])"


def inner(u: Vector, v: Vector):
    """u* v, conjugate-linear in the left argument."""
    if u.dim != v.dim:
        raise ShapeError("inner product of different dimensions")
    s = ZERO
    for a, b in zip(u.entries, v.entries):
        s = s + conj(a) * b
    return s


def dot(u: Vector, v: Vector):
    """Plain bilinear u^T v (no conjugation)."""
    if u.dim != v.dim:
        raise ShapeError("dot product of different dimensions")
    s = ZERO
    for a, b in zip(u.entries, v.entries):
        s = s + a * b
    return s


def outer_conj(u: Vector, v: Vector) -> "Matrix":
    """Rank-one matrix u v* (conjugate transpose of v)."""
    return Matrix(
        u.dim, v.dim, [a * conj(b) for a in u.entries for b in v.entries]
    )


def outer_plain(u: Vector, v: Vector) -> "Matrix":
    """Rank-one matrix u v^T (plain transpose, Brauer's convention)."""
    return Matrix(u.dim, v.dim, [a * b for a in u.entries for b in v.entries])


class Matrix:
    """Dense row-major matrix of exact scalars."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(_coerce_scalar(e) for e in entries)
        if len(entries) != rows * cols:
            raise ShapeError(
                f"{rows}x{cols} matrix needs {rows * cols} entries, "
                f"got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ShapeError("ragged rows")
        return Matrix(r, c, [e for row in rows for e in row])

    @staticmethod
    def from_columns(columns: Sequence[Vector], dim: int | None = None) -> "Matrix":
        if not columns:
            if dim is None:
                raise ShapeError("cannot infer dimension of empty column set")
            return Matrix(dim, 0, [])
        n = columns[0].dim
        if any(v.dim != n for v in columns):
            raise ShapeError("columns of different dimensions")
        return Matrix(
            n, len(columns), [v[i] for i in range(n) for v in columns]
        )

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, [ZERO] * (rows * cols))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(
            n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)]
        )

    # -- access -------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_exact(self) -> bool:
        return all(is_exact(e) for e in self.entries)

    def __getitem__(self, key):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise ShapeError(f"index {key} out of range for {self.shape}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return Vector(self.entries[i * self.cols : (i + 1) * self.cols])

    def col(self, j: int) -> Vector:
        return Vector(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def row_list(self):
        return [
            list(self.entries[i * self.cols : (i + 1) * self.cols])
            for i in range(self.rows)
        ]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        """Rows r0:r1, columns c0:c1 (half-open, 0-based)."""
        return Matrix(
            r1 - r0,
            c1 - c0,
            [self[i, j] for i in range(r0, r1) for j in range(c0, c1)],
        )

    # -- algebra ------------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(
            self.rows,
            self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix(
            self.rows,
            self.cols,
            [a - b for a, b in zip(self.entries, other.entries)],
        )

    def __neg__(self):
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> "Matrix":
        c = _coerce_scalar(c)
        return Matrix(self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other):
        if isinstance(other, Vector):
            if self.cols != other.dim:
                raise ShapeError(f"{self.shape} @ vector of dim {other.dim}")
            return Vector(
                sum(
                    (self[i, k] * other[k] for k in range(self.cols)),
                    start=ZERO,
                )
                for i in range(self.rows)
            )
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * m : (i + 1) * m]
            for j in range(p):
                s = ZERO
                for k in range(m):
                    s = s + arow[k] * b[k * p + j]
                out.append(s)
        return Matrix(n, p, out)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.shape == other.shape
            and all(a == b for a, b in zip(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            [self[i, j] for j in range(self.cols) for i in range(self.rows)],
        )

    def conj_transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            [conj(self[i, j]) for j in range(self.cols) for i in range(self.rows)],
        )

    @property
    def H(self) -> "Matrix":
        return self.conj_transpose()

    @property
    def is_zero(self) -> bool:
        return all(not e for e in self.entries)

    def map(self, fn: Callable) -> "Matrix":
        return Matrix(self.rows, self.cols, [fn(e) for e in self.entries])

    def to_float_rows(self):
        """Nested lists of Python complex, for demonstration output only."""
        return [
            [complex(self[i, j]) for j in range(self.cols)]
            for i in range(self.rows)
        ]

    def __repr__(self):
        body = "; ".join(
            ", ".join(str(self[i, j]) for j in range(self.cols))
            for i in range(self.rows)
        )
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    # -- exact elimination ---------------------------------------------------

    def _require_exact(self, op: str):
        if not self.is_exact:
            raise BackendError(
                f"{op} needs the exact scalar backend; "
                "the floating backend is for demonstration output only"
            )

    def _echelon(self, rows):
        """In-place echelon form of a list-of-lists copy.

        Returns (pivot column list, determinant scale).  The scale is the
        product of pivots times the swap sign, so for square input with
        full rank it equals the determinant of the triangularized rows,
        i.e. the determinant itself.
        """
        n = len(rows)
        m = len(rows[0]) if n else 0
        piv_cols = []
        det = ONE
        r = 0
        for c in range(m):
            pr = next((i for i in range(r, n) if rows[i][c]), None)
            if pr is None:
                continue
            if pr != r:
                rows[r], rows[pr] = rows[pr], rows[r]
                det = -det
            pivot = rows[r][c]
            det = det * pivot
            for i in range(r + 1, n):
                f = rows[i][c]
                if not f:
                    continue
                f = f / pivot
                rows[i][c] = ZERO
                for j in range(c + 1, m):
                    rows[i][j] = rows[i][j] - f * rows[r][j]
            piv_cols.append(c)
            r += 1
            if r == n:
                break
        return piv_cols, det

    def exact_rank(self) -> int:
        """Rank over the complex rationals."""
        self._require_exact("exact_rank")
        if self.rows == 0 or self.cols == 0:
            return 0
        rows = self.row_list()
        piv_cols, _ = self._echelon(rows)
        return len(piv_cols)

    def det(self):
        """Exact determinant (square matrices only)."""
        self._require_exact("det")
        if not self.is_square:
            raise ShapeError("determinant of a non-square matrix")
        if self.rows == 0:
            return ONE
        rows = self.row_list()
        piv_cols, det = self._echelon(rows)
        if len(piv_cols) < self.rows:
            return ZERO
        return det

    def solve(self, rhs):
        """Solve self @ X = rhs for square nonsingular self.

        rhs may be a Vector or a Matrix; the result has matching kind.
        """
        self._require_exact("solve")
        if not self.is_square:
            raise ShapeError("solve requires a square matrix")
        vector_rhs = isinstance(rhs, Vector)
        B = rhs.as_column() if vector_rhs else rhs
        if B.rows != self.rows:
            raise ShapeError("right-hand side has wrong number of rows")
        n, m = self.rows, B.cols
        rows = [
            list(self.entries[i * n : (i + 1) * n])
            + list(B.entries[i * m : (i + 1) * m])
            for i in range(n)
        ]
        piv_cols, _ = self._echelon(rows)
        if len(piv_cols) < n or any(c >= n for c in piv_cols):
            raise SingularMatrixError(
                f"matrix is singular (rank {len([c for c in piv_cols if c < n])})",
                rank=len([c for c in piv_cols if c < n]),
            )
        # back substitution
        sol = [[ZERO] * m for _ in range(n)]
        for r in range(n - 1, -1, -1):
            pivot = rows[r][r]
            for j in range(m):
                s = rows[r][n + j]
                for c in range(r + 1, n):
                    s = s - rows[r][c] * sol[c][j]
                sol[r][j] = s / pivot
        out = Matrix(n, m, [sol[i][j] for i in range(n) for j in range(m)])
        return out.col(0) if vector_rhs else out

    def inverse(self) -> "Matrix":
        return self.solve(Matrix.identity(self.rows))

    def null_space_basis(self):
        """Exact basis (list of Vectors) of the right null space."""
        self._require_exact("null_space_basis")
        n, m = self.rows, self.cols
        if m == 0:
            return []
        if n == 0:
            return [Vector.unit(m, j) for j in range(m)]
        rows = self.row_list()
        piv_cols, _ = self._echelon(rows)
        rank = len(piv_cols)
        piv_set = set(piv_cols)
        free_cols = [c for c in range(m) if c not in piv_set]
        basis = []
        for fc in free_cols:
            x = [ZERO] * m
            x[fc] = ONE
            for r in range(rank - 1, -1, -1):
                pc = piv_cols[r]
                s = ZERO
                for c in range(pc + 1, m):
                    if x[c]:
                        s = s + rows[r][c] * x[c]
                x[pc] = -s / rows[r][pc]
            basis.append(Vector(x))
        return basis


def jordan_block(lam, k: int) -> Matrix:
    """k-by-k upper bidiagonal Jordan block: lam on the diagonal, 1 above."""
    if k < 1:
        raise ShapeError(f"Jordan block size must be >= 1, got {k}")
    lam = _coerce_scalar(lam)
    entries = []
    for i in range(k):
        for j in range(k):
            if i == j:
                entries.append(lam)
            elif j == i + 1:
                entries.append(ONE)
            else:
                entries.append(ZERO)
    return Matrix(k, k, entries)


def hstack(*mats: Matrix) -> Matrix:
    mats = [m for m in mats if m.cols > 0 or m.rows > 0]
    if not mats:
        raise ShapeError("hstack of nothing")
    n = mats[0].rows
    if any(m.rows != n for m in mats):
        raise ShapeError("hstack with differing row counts")
    entries = []
    for i in range(n):
        for m in mats:
            entries.extend(m.entries[i * m.cols : (i + 1) * m.cols])
    return Matrix(n, sum(m.cols for m in mats), entries)


def vstack(*mats: Matrix) -> Matrix:
    mats = list(mats)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise ShapeError("vstack with differing column counts")
    entries = []
    for m in mats:
        entries.extend(m.entries)
    return Matrix(sum(m.rows for m in mats), c, entries)


def direct_sum(*mats: Matrix) -> Matrix:
    n = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    out = [[ZERO] * c for _ in range(n)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                out[r0 + i][c0 + j] = m[i, j]
        r0 += m.rows
        c0 += m.cols
    return Matrix.from_rows(out)


def stack_vectors_as_rows(vectors: Sequence[Vector]) -> Matrix:
    if not vectors:
        raise ShapeError("no vectors to stack")
    return Matrix.from_rows([list(v.entries) for v in vectors])
