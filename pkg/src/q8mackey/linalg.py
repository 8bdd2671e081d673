"""Exact integer matrices, Smith normal form and abelian group presentations.

Everything here works over Python ints, so there is no overflow and no
floating point.  Matrices are small (a few thousand entries at most); the
algorithms favour determinism over speed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Sequence


class IntegerMatrix:
    """Immutable dense matrix over Z, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if entries is None:
            data = (0,) * (rows * cols)
        else:
            data = tuple(int(x) for x in entries)
        if len(data) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(data)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("IntegerMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, rows: int, cols: int, diag: Sequence[int]) -> "IntegerMatrix":
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["IntegerMatrix"]) -> "IntegerMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls.from_rows(out, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> list[int]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    @property
    def T(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows,
                             (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        a = self.to_rows()
        bt = other.T.to_rows()
        return IntegerMatrix(self.rows, other.cols,
                             (sum(x * y for x, y in zip(ra, cb)) for ra in a for cb in bt))

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntegerMatrix(self.rows, self.cols, (x + y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, (-x for x in self.entries))

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return self + (-other)

    def scale(self, c: int) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, (c * x for x in self.entries))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntegerMatrix":
        return IntegerMatrix(len(rows), len(cols), (self[i, j] for i in rows for j in cols))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.rows}, {self.cols}, {self.to_rows()!r})"


def determinant(M: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = M.rows
    if n != M.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = M.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    """``U @ M @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    S: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _smith(a: list[list[int]], rows: int, cols: int, track: bool):
    """In-place Smith reduction of ``a``; returns (U, V, factors) as row lists."""
    U = [[int(i == j) for j in range(rows)] for i in range(rows)] if track else None
    V = [[int(i == j) for j in range(cols)] for i in range(cols)] if track else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if track:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        if track:
            for r in V:
                r[j], r[k] = r[k], r[j]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        ra, rs = a[dst], a[src]
        for j in range(cols):
            if rs[j]:
                ra[j] += c * rs[j]
        if track:
            ua, us = U[dst], U[src]
            for j in range(rows):
                if us[j]:
                    ua[j] += c * us[j]

    def add_col(dst, src, c):
        for r in a:
            if r[src]:
                r[dst] += c * r[src]
        if track:
            for r in V:
                if r[src]:
                    r[dst] += c * r[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        if track:
            U[i] = [-x for x in U[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # pivot: smallest nonzero |entry| in the trailing block, ties by (row, col)
        best = None
        for i in range(t, rows):
            ri = a[i]
            for j in range(t, cols):
                x = ri[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the whole trailing block
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(t, bad, 1)
                continue
            # move the smallest remaining entry of row/column t into the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, rows):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, cols):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            _, bi, bj = best
            if bi != t:
                swap_rows(t, bi)
            if bj != t:
                swap_cols(t, bj)
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    factors = [a[i][i] for i in range(t)]
    return U, V, factors


def smith_normal_form(M: IntegerMatrix) -> SNFResult:
    """Smith normal form with transforms.

    Deterministic: the pivot is always the nonzero entry of least absolute
    value in the remaining block, ties broken by lowest (row, col).

    >>> smith_normal_form(IntegerMatrix.from_rows([[8], [-8]])).invariant_factors
    (8,)
    """
    rows, cols = M.shape
    a = M.to_rows()
    U, V, factors = _smith(a, rows, cols, track=True)
    S = IntegerMatrix.from_rows(a, cols) if rows else IntegerMatrix(0, cols)
    return SNFResult(
        S=S,
        U=IntegerMatrix.from_rows(U, rows) if rows else IntegerMatrix(0, 0),
        V=IntegerMatrix.from_rows(V, cols) if cols else IntegerMatrix(0, 0),
        invariant_factors=tuple(factors),
    )


def invariant_factors(M: IntegerMatrix) -> tuple[int, ...]:
    """Nonzero invariant factors of ``M`` without computing transforms."""
    rows, cols = M.shape
    _, _, factors = _smith(M.to_rows(), rows, cols, track=False)
    return tuple(factors)


def rank(M: IntegerMatrix) -> int:
    return len(invariant_factors(M))


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """Z^free_rank + Z/t_1 + ... + Z/t_k with t_1 | t_2 | ... | t_k, all t_i >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        tors = tuple(self.torsion)
        object.__setattr__(self, "torsion", tors)
        for t in tors:
            if t < 2:
                raise ValueError(f"torsion coefficients must be >= 2, got {tors}")
        for a, b in zip(tors, tors[1:]):
            if b % a:
                raise ValueError(f"torsion {tors} is not a divisor chain")

    @classmethod
    def from_orders(cls, free_rank: int = 0, orders: Iterable[int] = ()) -> "AbelianGroup":
        """Normalize an arbitrary list of cyclic orders (1 and 0 allowed).

        A 0 entry contributes a free summand; 1's are dropped.
        """
        orders = [abs(int(o)) for o in orders]
        free_rank += sum(1 for o in orders if o == 0)
        cyc = [o for o in orders if o > 1]
        return cls(free_rank, _invariant_chain(cyc))

    @classmethod
    def zero(cls) -> "AbelianGroup":
        return cls()

    @classmethod
    def Z(cls, r: int = 1) -> "AbelianGroup":
        return cls(r)

    @classmethod
    def cyclic(cls, *orders: int) -> "AbelianGroup":
        return cls.from_orders(0, orders)

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.from_orders(self.free_rank + other.free_rank,
                                        self.torsion + other.torsion)

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        return reduce(lambda x, y: x * y, self.torsion, 1)

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj: dict) -> "AbelianGroup":
        return cls(int(obj["rank"]), tuple(int(t) for t in obj["torsion"]))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Inverse of ``str``."""
        text = text.strip()
        if text == "0":
            return cls()
        free = 0
        orders = []
        for part in text.split("+"):
            part = part.strip()
            if part == "Z":
                free += 1
            elif part.startswith("Z^"):
                free += int(part[2:])
            elif part.startswith("Z/"):
                orders.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse group term {part!r}")
        return cls.from_orders(free, orders)


def _invariant_chain(orders: list[int]) -> tuple[int, ...]:
    """Invariant factors of a direct sum of cyclic groups of the given orders."""
    if not orders:
        return ()
    # prime-power decomposition, then regroup largest powers together
    from sympy import factorint

    by_prime: dict[int, list[int]] = {}
    for o in orders:
        for p, e in factorint(o).items():
            by_prime.setdefault(p, []).append(p ** e)
    length = max(len(v) for v in by_prime.values())
    chain = [1] * length
    for powers in by_prime.values():
        powers.sort()
        offset = length - len(powers)
        for i, q in enumerate(powers):
            chain[offset + i] *= q
    return tuple(c for c in chain if c > 1)


def cokernel(M: IntegerMatrix) -> AbelianGroup:
    """Z^rows / im(M)."""
    factors = invariant_factors(M)
    return AbelianGroup.from_orders(M.rows - len(factors), factors)


def cokernel_with_kernel_restriction(d_out: IntegerMatrix, d_in: IntegerMatrix) -> AbelianGroup:
    """ker(d_out) / im(d_in) for composable ``d_out @ d_in == 0``.

    ker(d_out) is a direct summand of the middle lattice, so the torsion of
    the quotient is the torsion of coker(d_in) and only ranks are needed
    beyond the invariant factors of ``d_in``.
    """
    if d_out.cols != d_in.rows:
        raise ValueError(
            f"non-composable differentials: d_out is {d_out.shape}, d_in is {d_in.shape}"
        )
    if not (d_out @ d_in).is_zero():
        raise ValueError("d_out @ d_in != 0: not a chain complex")
    in_factors = invariant_factors(d_in)
    free = d_in.rows - rank(d_out) - len(in_factors)
    return AbelianGroup.from_orders(free, in_factors)


def gcd_all(values: Iterable[int]) -> int:
    return reduce(gcd, values, 0)


def sparse_invariant_factors(columns: Sequence[dict[int, int]], nrows: int) -> tuple[int, ...]:
    """Invariant factors of a sparse matrix given as a list of columns.

    Unit pivots are eliminated sparsely first (cheap on cellular boundary
    matrices, which are mostly +-1); the leftover block goes through the
    dense Smith reduction.
    """
    cols = [dict(c) for c in columns if c]
    row_index: dict[int, set[int]] = {}
    for j, col in enumerate(cols):
        for i in col:
            row_index.setdefault(i, set()).add(j)
    alive = set(range(len(cols)))
    units = 0
    while True:
        pivot = None
        best = None
        for j in alive:
            col = cols[j]
            for i, v in col.items():
                if v == 1 or v == -1:
                    cost = (len(col) - 1) * (len(row_index[i]) - 1)
                    if best is None or cost < best:
                        best, pivot = cost, (i, j)
                        if cost == 0:
                            break
            if best == 0:
                break
        if pivot is None:
            break
        pi, pj = pivot
        pcol = cols[pj]
        pv = pcol[pi]
        for j in list(row_index[pi]):
            if j == pj:
                continue
            col = cols[j]
            factor = col[pi] * pv  # pv is +-1, so pv == 1/pv
            for i, v in pcol.items():
                nv = col.get(i, 0) - factor * v
                if nv:
                    if i not in col:
                        row_index.setdefault(i, set()).add(j)
                    col[i] = nv
                elif i in col:
                    del col[i]
                    row_index[i].discard(j)
            if not col:
                alive.discard(j)
        # the pivot row is now zero outside the pivot column: drop both
        for i in pcol:
            row_index[i].discard(pj)
        alive.discard(pj)
        units += 1
    rest = [cols[j] for j in sorted(alive) if cols[j]]
    if not rest:
        return (1,) * units
    used_rows = sorted({i for c in rest for i in c})
    pos = {r: k for k, r in enumerate(used_rows)}
    dense = [[0] * len(rest) for _ in used_rows]
    for j, c in enumerate(rest):
        for i, v in c.items():
            dense[pos[i]][j] = v
    _, _, factors = _smith(dense, len(used_rows), len(rest), track=False)
    return (1,) * units + tuple(factors)


def matrix_columns(M: IntegerMatrix) -> list[dict[int, int]]:
    cols: list[dict[int, int]] = [dict() for _ in range(M.cols)]
    c = M.cols
    for k, v in enumerate(M.entries):
        if v:
            cols[k % c][k // c] = v
    return cols


def unimodular_inverse(M: IntegerMatrix) -> IntegerMatrix:
    """Inverse of a matrix with determinant +-1 (exact Gauss-Jordan)."""
    from fractions import Fraction

    n = M.rows
    if n != M.cols:
        raise ValueError("inverse of a non-square matrix")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M.to_rows())]
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        a[k], a[p] = a[p], a[k]
        pv = a[k][k]
        a[k] = [x / pv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    out = []
    for row in a:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("matrix is not unimodular")
        out.append([int(v) for v in vals])
    return IntegerMatrix.from_rows(out, n) if n else IntegerMatrix(0, 0)
