"""Exact linear algebra over the Gaussian rationals Q(i).

Vectors are columns and matrices act on the left. Every routine is exact:
ranks, kernels and span membership are decided by fraction-valued Gaussian
elimination, so the cohomology dimensions built on top of them are never
subject to rounding.

>>> m = Matrix([[1, I], [I, -1]])
>>> rank(m)
1
>>> kernel_basis(m).cols
1
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import AmbientMismatchError, FormatError

__all__ = [
    "Scalar", "I", "ZERO", "ONE", "Matrix",
    "rank", "kernel_basis", "image_basis", "subspace_dims",
    "coordinates_in_span", "extend_basis", "rref",
]


class Scalar:
    """An exact Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, str):
            return cls.parse(x)
        return cls(x)

    _RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse the canonical text form ``a/b+c/di`` (``1``, ``-2/3``, ``i``, ``1/2-3i``)."""
        s = text.strip()
        if s.endswith("i"):
            body = s[:-1]
            k = max(body.rfind("+"), body.rfind("-"))
            re_txt, im_txt = (body[:k], body[k:]) if k > 0 else ("", body)
        else:
            re_txt, im_txt = s, None
        try:
            if re_txt == "":
                re_part = Fraction(0)
            elif cls._RATIONAL.fullmatch(re_txt):
                re_part = Fraction(re_txt)
            else:
                raise FormatError(f"bad scalar {text!r}")
            if im_txt is None:
                if not s:
                    raise FormatError("empty scalar")
                im_part = Fraction(0)
            elif im_txt in ("", "+", "-"):
                im_part = Fraction(-1 if im_txt == "-" else 1)
            elif cls._RATIONAL.fullmatch(im_txt):
                im_part = Fraction(im_txt)
            else:
                raise FormatError(f"bad scalar {text!r}")
        except ZeroDivisionError:
            raise FormatError(f"zero denominator in scalar {text!r}") from None
        return cls(re_part, im_part)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if self.im == 1:
            im = "i"
        elif self.im == -1:
            im = "-i"
        else:
            im = f"{self.im}i"
        if not self.re:
            return im
        return f"{self.re}{'' if im.startswith('-') else '+'}{im}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.coerce(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.coerce(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar(a * c, 0)
        return Scalar(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.coerce(other)
        c, d = other.re, other.im
        if not c and not d:
            raise ZeroDivisionError("division by zero scalar")
        if not d:
            return Scalar(self.re / c, self.im / c)
        n = c * c + d * d
        a, b = self.re, self.im
        return Scalar((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


class Matrix:
    """Dense immutable matrix of :class:`Scalar` entries, stored row-major.

    ``Matrix(rows_data)`` builds from a list of rows; 0 x n and n x 0 matrices
    are created with :meth:`zeros` and represent zero maps.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Sequence[Sequence] = (), rows: Optional[int] = None,
                 cols: Optional[int] = None):
        data = [tuple(Scalar.coerce(x) for x in row) for row in data]
        nrows = len(data) if rows is None else rows
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != nrows or any(len(r) != cols for r in data):
            raise ValueError("ragged or mis-sized matrix data")
        self.rows = nrows
        self.cols = cols
        self._data = tuple(data)

    @classmethod
    def _raw(cls, data, rows, cols):
        m = object.__new__(cls)
        m.rows, m.cols, m._data = rows, cols, tuple(tuple(r) for r in data)
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence], nrows: int) -> "Matrix":
        columns = [[Scalar.coerce(x) for x in c] for c in columns]
        if any(len(c) != nrows for c in columns):
            raise AmbientMismatchError("column length differs from the ambient dimension")
        return cls._raw([[c[i] for c in columns] for i in range(nrows)], nrows, len(columns))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def tolist(self):
        return [list(r) for r in self._data]

    def column(self, j):
        return tuple(r[j] for r in self._data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"Matrix<{self.rows}x{self.cols}>[{body}]"

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    def transpose(self) -> "Matrix":
        return Matrix._raw([[self._data[i][j] for i in range(self.rows)]
                            for j in range(self.cols)], self.cols, self.rows)

    T = property(transpose)

    def conj(self) -> "Matrix":
        return Matrix._raw([[x.conjugate() for x in r] for r in self._data], self.rows, self.cols)

    def __neg__(self):
        return Matrix._raw([[-x for x in r] for r in self._data], self.rows, self.cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise AmbientMismatchError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
                           self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = Scalar.coerce(c)
        return Matrix._raw([[c * x for x in r] for r in self._data], self.rows, self.cols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise AmbientMismatchError(f"cannot compose {self.shape} with {other.shape}")
            ocols = other.columns()
            out = []
            for r in self._data:
                nz = [(k, a) for k, a in enumerate(r) if a]
                out.append([_dot_sparse(nz, c) for c in ocols])
            return Matrix._raw(out, self.rows, other.cols)
        v = [Scalar.coerce(x) for x in other]
        if len(v) != self.cols:
            raise AmbientMismatchError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(_dot_sparse([(k, a) for k, a in enumerate(r) if a], v) for r in self._data)

    def hstack(self, *others: "Matrix") -> "Matrix":
        ms = (self,) + others
        if len({m.rows for m in ms}) > 1:
            raise AmbientMismatchError("row counts differ")
        return Matrix._raw([sum((m._data[i] for m in ms), ()) for i in range(self.rows)],
                           self.rows, sum(m.cols for m in ms))

    def vstack(self, *others: "Matrix") -> "Matrix":
        ms = (self,) + others
        if len({m.cols for m in ms}) > 1:
            raise AmbientMismatchError("column counts differ")
        return Matrix._raw([r for m in ms for r in m._data], sum(m.rows for m in ms), self.cols)

    def kron(self, other: "Matrix") -> "Matrix":
        out = []
        for r in self._data:
            for s in other._data:
                out.append([a * b for a in r for b in s])
        return Matrix._raw(out, self.rows * other.rows, self.cols * other.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw([[self._data[i][j] for j in cols] for i in rows], len(rows), len(cols))


def _dot_sparse(nz, v):
    acc = ZERO
    for k, a in nz:
        b = v[k]
        if b:
            acc = acc + a * b
    return acc


def block_matrix(row_sizes: Sequence[int], col_sizes: Sequence[int], blocks) -> Matrix:
    """Assemble a matrix from a ``{(i, j): Matrix}`` map of blocks; missing blocks are zero."""
    rows, cols = sum(row_sizes), sum(col_sizes)
    data = [[ZERO] * cols for _ in range(rows)]
    roff = [sum(row_sizes[:i]) for i in range(len(row_sizes))]
    coff = [sum(col_sizes[:j]) for j in range(len(col_sizes))]
    for (i, j), b in blocks.items():
        if b.shape != (row_sizes[i], col_sizes[j]):
            raise AmbientMismatchError(f"block {(i, j)} has shape {b.shape}")
        for a in range(b.rows):
            row = data[roff[i] + a]
            for c, x in enumerate(b.row(a)):
                row[coff[j] + c] = x
    return Matrix._raw(data, rows, cols)


def rref(m: Matrix):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``.

    Pivots are the first nonzero entry found scanning down each column.
    """
    a = [list(r) for r in m._data]
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv if x else x for x in a[r]]
        prow = a[r]
        nzc = [(k, x) for k, x in enumerate(prow) if x]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                row = a[i]
                for k, x in nzc:
                    row[k] = row[k] - f * x
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the null space of ``m``."""
    n = m.cols
    if m.rows == 0:
        return Matrix.identity(n)
    a, pivots = rref(m)
    pivset = set(pivots)
    cols = []
    for f in range(n):
        if f in pivset:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][f]
        cols.append(v)
    return Matrix.from_columns(cols, n)


def image_basis(m: Matrix) -> Matrix:
    """A basis of the column span, chosen among the columns of ``m``."""
    if m.rows == 0 or m.cols == 0:
        return Matrix.zeros(m.rows, 0)
    _, pivots = rref(m)
    return m.submatrix(range(m.rows), pivots)


def subspace_dims(u: Matrix, v: Matrix):
    """``(dim U, dim V, dim(U+V), dim(U∩V))`` for the column spans of ``u`` and ``v``."""
    if u.rows != v.rows:
        raise AmbientMismatchError(f"ambient dimensions differ: {u.rows} vs {v.rows}")
    du, dv = rank(u), rank(v)
    ds = rank(u.hstack(v))
    return du, dv, ds, du + dv - ds


def coordinates_in_span(v: Sequence, basis: Matrix) -> Optional[tuple]:
    """Return ``c`` with ``basis @ c == v``, or ``None`` if ``v`` is outside the span."""
    v = [Scalar.coerce(x) for x in v]
    if len(v) != basis.rows:
        raise AmbientMismatchError(f"vector of length {len(v)} in ambient dimension {basis.rows}")
    if basis.rows == 0:
        return tuple([ZERO] * basis.cols)
    aug = basis.hstack(Matrix.from_columns([v], basis.rows))
    a, pivots = rref(aug)
    if pivots and pivots[-1] == basis.cols:
        return None
    c = [ZERO] * basis.cols
    for i, pc in enumerate(pivots):
        c[pc] = a[i][basis.cols]
    return tuple(c)


def extend_basis(sub: Matrix, sup: Matrix) -> Matrix:
    """Columns of ``sup`` that extend a basis of span(``sub``) to span(``sub``) + span(``sup``).

    When span(sub) ⊆ span(sup), the result represents a basis of the quotient.
    """
    if sub.rows != sup.rows:
        raise AmbientMismatchError("ambient dimensions differ")
    if sup.cols == 0 or sup.rows == 0:
        return Matrix.zeros(sup.rows, 0)
    _, pivots = rref(sub.hstack(sup))
    chosen = [p - sub.cols for p in pivots if p >= sub.cols]
    return sup.submatrix(range(sup.rows), chosen)
