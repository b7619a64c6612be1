"""Exact arithmetic substrate: extended binomials, rational serialization,
dense rational matrices, and fraction-free elimination."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Sequence


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), with C(n, k) = 0 for k < 0 or k > n.

    The out-of-range convention lets alternating sums truncate without
    explicit range guards; n < 0 is rejected.
    """
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


_RATIONAL_RE = re.compile(r"-?\d+(?:/\d+)?\Z")


def rational_str(x: Fraction) -> str:
    """Render a rational as "num/den" in lowest terms; zero renders as "0"."""
    if x == 0:
        return "0"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    """Parse "num/den" or a bare integer literal; inverse of rational_str."""
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational literal: {s!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator: {s!r}") from None


@dataclass(frozen=True)
class RationalMatrix:
    """Dense row-major matrix of exact rationals."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self) -> None:
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if not isinstance(self.entries, tuple):
            object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        nrows = len(rows)
        ncols = len(rows[0])
        flat = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            flat.extend(Fraction(v) for v in row)
        return cls(nrows, ncols, tuple(flat))

    @classmethod
    def identity(cls, dim: int) -> "RationalMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(dim, dim, tuple(one if i == j else zero
                                   for i in range(dim) for j in range(dim)))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace requires a square matrix")
        return sum((self.at(i, i) for i in range(self.rows)), Fraction(0))

    def shift_diagonal(self, shift: Fraction) -> "RationalMatrix":
        """Return self - shift * I."""
        if self.rows != self.cols:
            raise ValueError("diagonal shift requires a square matrix")
        flat = list(self.entries)
        for i in range(self.rows):
            flat[i * self.cols + i] -= shift
        return RationalMatrix(self.rows, self.cols, tuple(flat))


def _integer_rows(m: RationalMatrix) -> list:
    """Row-scaled integer copy of m (row scaling preserves rank)."""
    out = []
    for i in range(m.rows):
        row = [Fraction(v) for v in m.row(i)]
        scale = 1
        for v in row:
            scale = lcm(scale, v.denominator)
        out.append([int(v * scale) for v in row])
    return out


def rational_rank(m: RationalMatrix) -> int:
    """Exact rank over the rationals via fraction-free (Bareiss) elimination.

    Intermediate entries are minors of the scaled integer matrix, so every
    division below is exact; no floating point is involved.
    """
    work = _integer_rows(m)
    nrows, ncols = m.rows, m.cols
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for rr in range(rank, nrows):
            if work[rr][col]:
                piv = rr
                break
        if piv is None:
            continue
        if piv != rank:
            work[rank], work[piv] = work[piv], work[rank]
        pval = work[rank][col]
        wp = work[rank]
        for rr in range(rank + 1, nrows):
            wr = work[rr]
            rv = wr[col]
            for cc in range(col + 1, ncols):
                q, rem = divmod(pval * wr[cc] - rv * wp[cc], prev)
                if rem:
                    raise ArithmeticError("fraction-free invariant violated")
                wr[cc] = q
            wr[col] = 0
        prev = pval
        rank += 1
        if rank == nrows:
            break
    return rank


def is_positive_semidefinite(m: RationalMatrix) -> bool:
    """Exact PSD test for a symmetric rational matrix.

    Pivoted Schur elimination: a zero diagonal pivot forces its whole row to
    vanish, a negative pivot refutes PSD, otherwise eliminate and recurse on
    the trailing block.
    """
    if m.rows != m.cols:
        raise ValueError("PSD test requires a square matrix")
    dim = m.rows
    a = [[Fraction(m.at(i, j)) for j in range(dim)] for i in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            if a[i][j] != a[j][i]:
                raise ValueError("PSD test requires a symmetric matrix")
    for i in range(dim):
        d = a[i][i]
        if d < 0:
            return False
        if d == 0:
            if any(a[i][j] != 0 for j in range(i + 1, dim)):
                return False
            continue
        for rr in range(i + 1, dim):
            f = a[rr][i] / d
            if f == 0:
                continue
            arow, irow = a[rr], a[i]
            for cc in range(i + 1, dim):
                arow[cc] -= f * irow[cc]
            arow[i] = Fraction(0)
    return True
