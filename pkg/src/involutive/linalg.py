"""Exact dense linear algebra over the rationals.

Everything downstream (characters, prolongations, the quadratic
criterion) reduces to rank / kernel / solve questions, and those are
only well-posed in exact arithmetic.  Scalars are ``fractions.Fraction``
throughout; matrices are immutable and row-major.

Matrices here are desk-scale (a few hundred entries), so plain Gaussian
elimination with exact pivoting is adequate.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

QQ = Fraction  # short constructor alias, QQ(2, 3) etc.


class LinAlgError(Exception):
    pass


class SingularMatrix(LinAlgError):
    pass


class InconsistentSystem(LinAlgError):
    pass


class RatMatrix:
    """Immutable dense matrix with Fraction entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        data = tuple(Fraction(e) for e in entries)
        if len(data) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self._data = data

    def __setattr__(self, name, value):
        if hasattr(self, "_data"):
            raise AttributeError("RatMatrix is immutable")
        super().__setattr__(name, value)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        return cls(r, c, [e for row in rows for e in row])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [Fraction(int(i == j)) for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [Fraction(0)] * (rows * cols))

    @classmethod
    def column(cls, entries: Sequence) -> "RatMatrix":
        entries = list(entries)
        return cls(len(entries), 1, entries)

    def __getitem__(self, key):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._data[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self._data[j::self.cols]

    def row_list(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def entries(self) -> tuple:
        return self._data

    def __eq__(self, other):
        return (isinstance(other, RatMatrix) and self.rows == other.rows
                and self.cols == other.cols and self._data == other._data)

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        body = "; ".join(
            " ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols,
                         [a + b for a, b in zip(self._data, other._data)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols,
                         [a - b for a, b in zip(self._data, other._data)])

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, [-a for a in self._data])

    def scale(self, c) -> "RatMatrix":
        c = Fraction(c)
        return RatMatrix(self.rows, self.cols, [c * a for a in self._data])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ "
                             f"{other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                cj = other.col(j)
                out.append(sum((a * b for a, b in zip(ri, cj)), Fraction(0)))
        return RatMatrix(self.rows, other.cols, out)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         [self._data[i * self.cols + j]
                          for j in range(self.cols) for i in range(self.rows)])

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RatMatrix":
        out = [self._data[i * self.cols + j] for i in row_idx for j in col_idx]
        return RatMatrix(len(row_idx), len(col_idx), out)

    def select_columns(self, col_idx: Sequence[int]) -> "RatMatrix":
        return self.submatrix(range(self.rows), col_idx)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self._data)

    def _check_same_shape(self, other: "RatMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")


def vstack(mats: Sequence[RatMatrix]) -> RatMatrix:
    cols = mats[0].cols
    data = []
    for m in mats:
        if m.cols != cols:
            raise ValueError("column count mismatch in vstack")
        data.extend(m.entries())
    return RatMatrix(sum(m.rows for m in mats), cols, data)


def hstack(mats: Sequence[RatMatrix]) -> RatMatrix:
    rows = mats[0].rows
    out = []
    for i in range(rows):
        for m in mats:
            if m.rows != rows:
                raise ValueError("row count mismatch in hstack")
            out.extend(m.row(i))
    return RatMatrix(rows, sum(m.cols for m in mats), out)


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form with the pivot column list.

    Pivot rule: first nonzero entry in column order, so the output is
    deterministic for a given input.
    """
    a = m.row_list()
    rows, cols = m.rows, m.cols
    pivots: list[int] = []
    pr = 0
    for pc in range(cols):
        found = -1
        for i in range(pr, rows):
            if a[i][pc] != 0:
                found = i
                break
        if found < 0:
            continue
        a[pr], a[found] = a[found], a[pr]
        inv = 1 / a[pr][pc]
        a[pr] = [e * inv for e in a[pr]]
        for i in range(rows):
            if i != pr and a[i][pc] != 0:
                f = a[i][pc]
                a[i] = [e - f * p for e, p in zip(a[i], a[pr])]
        pivots.append(pc)
        pr += 1
        if pr == rows:
            break
    return RatMatrix.from_rows(a) if rows else m, pivots


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


def row_basis(m: RatMatrix) -> list[RatMatrix]:
    """Basis of the row space, as 1xN matrices (rref rows)."""
    r, pivots = rref(m)
    return [RatMatrix(1, m.cols, r.row(i)) for i in range(len(pivots))]


def kernel_basis(m: RatMatrix) -> list[RatMatrix]:
    """Basis of the right kernel, as column vectors.

    Returns exactly ``cols - rank`` vectors; each satisfies M v = 0
    exactly.  Free variables are set to 1 one at a time, in column
    order.
    """
    r, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    out = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r[i, f]
        out.append(RatMatrix.column(v))
    return out


def solve(m: RatMatrix, b: RatMatrix) -> RatMatrix:
    """One exact solution of M x = b (b a column vector).

    Free variables are set to zero.  Raises InconsistentSystem when no
    solution exists.
    """
    if b.rows != m.rows or b.cols != 1:
        raise ValueError("right-hand side shape mismatch")
    aug = hstack([m, b])
    r, pivots = rref(aug)
    if m.cols in pivots:
        raise InconsistentSystem("no exact solution")
    x = [Fraction(0)] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = r[i, m.cols]
    return RatMatrix.column(x)


def invert(m: RatMatrix) -> RatMatrix:
    if m.rows != m.cols:
        raise SingularMatrix("not square")
    aug = hstack([m, RatMatrix.identity(m.rows)])
    r, pivots = rref(aug)
    if pivots != list(range(m.rows)):
        raise SingularMatrix("matrix is singular")
    return r.select_columns(range(m.cols, 2 * m.cols))


def random_matrix(rows: int, cols: int, rng: random.Random,
                  bound: int = 9) -> RatMatrix:
    return RatMatrix(rows, cols,
                     [rng.randint(-bound, bound) for _ in range(rows * cols)])


def random_invertible(dim: int, seed: int = 0, bound: int = 9) -> RatMatrix:
    """Deterministic seeded invertible integer matrix, entries in [-bound, bound]."""
    rng = random.Random(seed)
    return random_invertible_rng(dim, rng, bound)


def random_invertible_rng(dim: int, rng: random.Random,
                          bound: int = 9) -> RatMatrix:
    if dim == 0:
        return RatMatrix.zeros(0, 0)
    while True:
        m = random_matrix(dim, dim, rng, bound)
        if rank(m) == dim:
            return m


def random_unit_upper_triangular(dim: int, rng: random.Random,
                                 bound: int = 9) -> RatMatrix:
    """Unit upper-triangular integer matrix (a Borel change of basis)."""
    entries = []
    for i in range(dim):
        for j in range(dim):
            if i == j:
                entries.append(1)
            elif j > i:
                entries.append(rng.randint(-bound, bound))
            else:
                entries.append(0)
    return RatMatrix(dim, dim, entries)


def parse_rational(text: str) -> Fraction:
    """Parse 'p' or 'p/q' with arbitrary-precision integers."""
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        num, den = num.strip(), den.strip()
    else:
        num, den = s, "1"
    if not _is_int(num) or not _is_int(den):
        raise ValueError(f"malformed rational {text!r}")
    d = int(den)
    if d == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), d)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _is_int(s: str) -> bool:
    if s.startswith("-") or s.startswith("+"):
        s = s[1:]
    return s.isdigit()
