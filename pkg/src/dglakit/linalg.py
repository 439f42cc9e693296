"""Exact dense linear algebra over the rationals.

Every subspace is stored by its reduced row-echelon basis, so two
``Subspace`` objects span the same space iff they compare equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotASubspace

Rational = Fraction
Vector = tuple  # tuple of Fraction


def Q(value) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, str or Fraction")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(Q(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> Matrix:
        cols = len(columns)
        data = [[Q(columns[j][i]) for j in range(cols)] for i in range(rows)]
        return cls(rows, cols, tuple(x for r in data for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> Matrix:
        return Matrix(self.cols, self.rows,
                      tuple(self.entries[i * self.cols + j]
                            for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
            out = []
            ocols = [other.column(j) for j in range(other.cols)]
            for i in range(self.rows):
                r = self.row(i)
                for c in ocols:
                    out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
            return Matrix(self.rows, other.cols, tuple(out))
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(self.row(i), vec) if a and b), Fraction(0))
                     for i in range(self.rows))

    def __add__(self, other: Matrix) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> Matrix:
        c = Q(c)
        return Matrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def _rref_rows(rows: list[list[Fraction]], ncols: int):
    """In-place Gauss-Jordan elimination; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = [x / lead for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return pivots


def rref(M: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row-echelon form, pivot columns and rank."""
    rows = M.to_rows()
    pivots = _rref_rows(rows, M.cols)
    R = Matrix(M.rows, M.cols, tuple(x for r in rows for x in r))
    return R, pivots, len(pivots)


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple  # tuple of vectors, reduced echelon

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        rows = [[Q(x) for x in v] for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in rows[:len(pivots)]))

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(v) if x) for v in self.basis]

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def coordinates(self, v: Sequence):
        """Coordinates of ``v`` in the echelon basis, or None if v is outside."""
        v = [Q(x) for x in v]
        coeffs = []
        for b, p in zip(self.basis, self.pivots):
            c = v[p]
            coeffs.append(c)
            if c:
                v = [a - c * bb if bb else a for a, bb in zip(v, b)]
        if any(v):
            return None
        return tuple(coeffs)

    def is_subspace_of(self, other: Subspace) -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)

    def intersection(self, other: Subspace) -> Subspace:
        n = self.ambient_dim
        if not self.basis or not other.basis:
            return Subspace.zero(n)
        # a.self - b.other = 0
        cols = [list(b) for b in self.basis] + [[-x for x in b] for b in other.basis]
        K = kernel_basis(Matrix.from_columns(cols, n))
        vecs = []
        for k in K.basis:
            a = k[:self.dim]
            vecs.append([sum((c * b[i] for c, b in zip(a, self.basis)), Fraction(0)) for i in range(n)])
        return Subspace.span(vecs, n)


def kernel_basis(M: Matrix) -> Subspace:
    R, pivots, _ = rref(M)
    free = [j for j in range(M.cols) if j not in set(pivots)]
    vecs = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        vecs.append(v)
    return Subspace.span(vecs, M.cols)


def image_basis(M: Matrix) -> Subspace:
    return Subspace.span([M.column(j) for j in range(M.cols)], M.rows)


def complement(U: Subspace, V: Subspace) -> Subspace:
    """Canonical complement of U inside V.

    The echelon basis vectors of V whose positions are not pivotal for U
    (written in V's coordinates) span W with V = U + W, U & W = 0.
    """
    if U.ambient_dim != V.ambient_dim:
        raise NotASubspace("ambient dimensions differ")
    coords = []
    for u in U.basis:
        c = V.coordinates(u)
        if c is None:
            raise NotASubspace(f"vector {u} does not lie in the ambient subspace")
        coords.append(list(c))
    pivots = set(_rref_rows(coords, V.dim))
    # a subset of rows of an echelon basis is itself in echelon form
    return Subspace(V.ambient_dim, tuple(b for i, b in enumerate(V.basis) if i not in pivots))


def solve(M: Matrix, b: Sequence):
    """Some x with Mx = b (free variables zero), or None if inconsistent."""
    b = [Q(x) for x in b]
    if len(b) != M.rows:
        raise ValueError("right-hand side has the wrong length")
    rows = [r + [bi] for r, bi in zip(M.to_rows(), b)]
    pivots = _rref_rows(rows, M.cols + 1)
    if pivots and pivots[-1] == M.cols:
        return None
    x = [Fraction(0)] * M.cols
    for i, p in enumerate(pivots):
        x[p] = rows[i][M.cols]
    return tuple(x)


def inverse(M: Matrix) -> Matrix:
    if M.rows != M.cols:
        raise ValueError("only square matrices are invertible")
    n = M.rows
    rows = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M.to_rows())]
    pivots = _rref_rows(rows, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix.from_rows([r[n:] for r in rows])


def rank(M: Matrix) -> int:
    return rref(M)[2]
