"""Exact rational linear algebra.

Rationals are :class:`fractions.Fraction`.  Linear systems are reduced with
integer row operations (each row is kept primitive by dividing out its content),
so no fraction arithmetic happens inside the elimination loop.  Rows are held
sparsely during elimination; the intersection matrices met in this package are
trees of stars and stay sparse unless a contraction densifies a block.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InconsistentSystem

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings; floats are rejected."""
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(value)


def _entry(value):
    # ints are exact rationals already and much cheaper to carry around
    if type(value) is int or type(value) is Fraction:
        return value
    return as_rational(value)


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix; entries are ``int`` or ``Fraction``."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, data: Iterable[Iterable]) -> "RationalMatrix":
        entries = tuple(tuple(_entry(x) for x in row) for row in data)
        ncols = len(entries[0]) if entries else 0
        if any(len(row) != ncols for row in entries):
            raise DimensionMismatch("ragged rows")
        return cls(len(entries), ncols, entries)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i)
        )

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def column_subset(self, keep: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(
            self.rows, len(keep), tuple(tuple(row[j] for j in keep) for row in self.entries)
        )

    def drop_column(self, k: int) -> "RationalMatrix":
        return RationalMatrix(
            self.rows, self.cols - 1, tuple(row[:k] + row[k + 1 :] for row in self.entries)
        )

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} against {self.cols} columns")
        nz = [(j, x) for j, x in enumerate(v) if x]
        return [sum((row[j] * x for j, x in nz), Fraction(0)) for row in self.entries]


def _primitive(row: dict[int, int]) -> dict[int, int]:
    c = 0
    for x in row.values():
        c = gcd(c, x)
        if c == 1:
            return row
    if c > 1:
        return {j: x // c for j, x in row.items()}
    return row


def _integer_row(row: Sequence[Fraction], rhs: Fraction, ncols: int) -> dict[int, int]:
    # column ``ncols`` carries the right-hand side
    items = [(j, x) for j, x in enumerate(row) if x]
    if rhs:
        items.append((ncols, rhs))
    if not items:
        return {}
    if all(type(x) is int for _, x in items):
        return _primitive(dict(items))
    # ints expose numerator/denominator too
    den = lcm(*(x.denominator for _, x in items))
    return _primitive({j: x.numerator * (den // x.denominator) for j, x in items})


def _all_int(row: dict) -> bool:
    return all(type(x) is int for x in row.values())


def _eliminate(row: dict, prow: dict, col: int) -> dict:
    a, c = prow[col], row[col]
    if len(row) > 3 * len(prow) or not (_all_int(row) and _all_int(prow)):
        # touch only the pivot row's columns; entries may become Fractions
        m = Fraction(c, a) if type(a) is int and type(c) is int else c / a
        for j, x in prow.items():
            v = row.get(j, 0) - m * x
            if v:
                row[j] = v.numerator if type(v) is Fraction and v.denominator == 1 else v
            else:
                row.pop(j, None)
        return row
    g = gcd(a, c)
    fa, fc = a // g, c // g
    new = {j: x * fa for j, x in row.items()} if fa != 1 else dict(row)
    for j, x in prow.items():
        v = new.get(j, 0) - fc * x
        if v:
            new[j] = v
        else:
            new.pop(j, None)
    return _primitive(new) if new else new


def _echelon(M: RationalMatrix, b: Sequence[Fraction]):
    n = M.cols
    rows: dict[int, dict] = {}
    for i in range(M.rows):
        r = _integer_row(M.entries[i], b[i], n)
        if r:
            rows[i] = r
    where: dict[int, set[int]] = {j: set() for j in range(n)}
    for i, r in rows.items():
        for j in r:
            if j < n:
                where[j].add(i)

    # lazy heap of (column count, column); stale entries are skipped on pop
    heap = [(len(w), j) for j, w in where.items() if w]
    heapq.heapify(heap)

    def touch(j):
        if j < n and j in where and where[j]:
            heapq.heappush(heap, (len(where[j]), j))

    pivots: list[tuple[int, dict]] = []
    while heap:
        # Markowitz-style: sparsest column, then sparsest row, then smallest entry
        cnt, col = heapq.heappop(heap)
        if col not in where or len(where[col]) != cnt or not cnt:
            continue
        k = min(where[col], key=lambda i: (len(rows[i]), abs(rows[i][col]), i))
        prow = rows.pop(k)
        for j in prow:
            if j < n:
                where[j].discard(k)
                touch(j)
        for i in list(where[col]):
            old = rows[i]
            before = set(old)
            new = _eliminate(dict(old), prow, col)
            after = set(new)
            for j in before - after:
                if j < n and j in where:
                    where[j].discard(i)
                    touch(j)
            for j in after - before:
                if j < n:
                    where[j].add(i)
                    touch(j)
            if new:
                rows[i] = new
            else:
                del rows[i]
        del where[col]
        pivots.append((col, prow))
    # every remaining row has only the rhs entry
    return pivots, list(rows.values())


def solve_affine(M: RationalMatrix, b: Sequence) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Solve ``M x = b`` exactly.

    Returns a particular solution (free variables set to zero) and a kernel
    basis, one vector per free column, scaled so its first nonzero entry is 1.
    Raises :class:`InconsistentSystem` carrying a certificate ``y`` with
    ``y^T M = 0`` and ``y . b = 1``.
    """
    if M.rows != len(b):
        raise DimensionMismatch(f"{M.rows} rows but right-hand side of length {len(b)}")
    b = [_entry(x) for x in b]
    n = M.cols
    pivots, leftover = _echelon(M, b)
    if leftover:
        raise InconsistentSystem(
            "system has no solution", certificate=_certificate(M, b)
        )

    pivot_cols = [c for c, _ in pivots]
    free = [j for j in range(n) if j not in set(pivot_cols)]

    def back_substitute(rhs_on: bool, fixed: dict[int, Fraction]) -> list[Fraction]:
        x = [Fraction(0)] * n
        for j, v in fixed.items():
            x[j] = v
        for col, row in reversed(pivots):
            acc = Fraction(row.get(n, 0) if rhs_on else 0)
            for j, a in row.items():
                if j != col and j != n and x[j]:
                    acc -= a * x[j]
            x[col] = acc / row[col]
        return x

    particular = back_substitute(True, {})
    kernel = []
    for f in free:
        v = back_substitute(False, {f: Fraction(1)})
        lead = next(x for x in v if x)
        kernel.append([x / lead for x in v])
    return particular, kernel


def _certificate(M: RationalMatrix, b: Sequence[Fraction]) -> list[Fraction]:
    # Fredholm alternative: y^T M = 0, y . b = 1 is solvable exactly when M x = b is not
    aug = RationalMatrix(
        M.cols + 1,
        M.rows,
        tuple(tuple(M.entries[i][j] for i in range(M.rows)) for j in range(M.cols))
        + (tuple(b),),
    )
    y, _ = solve_affine(aug, [0] * M.cols + [1])
    return y


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"lengths {len(u)} and {len(v)}")
    return sum((x * y for x, y in zip(u, v) if x and y), Fraction(0))
