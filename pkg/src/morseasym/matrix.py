"""Exact linear algebra over Z[Z^m] and over Z.

Polynomial matrices are dense :class:`PolyMatrix` objects. Integer matrices
are plain lists of lists of Python ints.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, List, Sequence

from .errors import LatticeRankError
from .laurent import LaurentPoly
from .ring import exact_divide

IntMatrix = List[List[int]]


class PolyMatrix:
    """Immutable ``rows x cols`` matrix of Laurent polynomials in ``nvars`` variables."""

    __slots__ = ("rows", "cols", "nvars", "_entries")

    def __init__(self, entries: Sequence[Sequence], nvars: int = 1, shape=None):
        entries = [list(r) for r in entries]
        if shape is None:
            shape = (len(entries), len(entries[0]) if entries else 0)
        rows, cols = shape
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError(f"entries do not form a {rows}x{cols} matrix")
        out = []
        for r in entries:
            row = []
            for x in r:
                if isinstance(x, int):
                    x = LaurentPoly.constant(x, nvars)
                elif isinstance(x, str):
                    x = LaurentPoly.parse(x, nvars)
                elif x.nvars != nvars:
                    raise LatticeRankError(
                        f"entry {x} has lattice rank {x.nvars}, expected {nvars}")
                row.append(x)
            out.append(tuple(row))
        self.rows, self.cols, self.nvars = rows, cols, nvars
        self._entries = tuple(out)

    # -- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, rows, cols, nvars=1):
        z = LaurentPoly.zero(nvars)
        return cls([[z] * cols for _ in range(rows)], nvars, (rows, cols))

    @classmethod
    def identity(cls, n, nvars=1):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], nvars, (n, n))

    @classmethod
    def from_ints(cls, A, nvars=0, shape=None):
        return cls(A, nvars, shape)

    @classmethod
    def block_diag(cls, blocks, nvars):
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        z = LaurentPoly.zero(nvars)
        out = [[z] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls(out, nvars, (rows, cols))

    @classmethod
    def from_blocks(cls, grid, nvars):
        """Assemble a matrix from a 2-D grid of PolyMatrix blocks."""
        row_heights = [row[0].rows for row in grid]
        col_widths = [b.cols for b in grid[0]] if grid else []
        out = []
        for bi, row in enumerate(grid):
            for i in range(row_heights[bi]):
                line = []
                for b in row:
                    line.extend(b[i, j] for j in range(b.cols))
                out.append(line)
        return cls(out, nvars, (sum(row_heights), sum(col_widths)))

    # -- access -------------------------------------------------------
    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._entries[i][j]

    def row(self, i):
        return self._entries[i]

    def tolist(self):
        return [list(r) for r in self._entries]

    def to_ints(self) -> IntMatrix:
        out = []
        for r in self._entries:
            row = []
            for x in r:
                if not x.is_constant():
                    raise ValueError(f"entry {x} is not an integer")
                row.append(x.constant_term())
            out.append(row)
        return out

    def is_zero(self):
        return all(x.is_zero() for r in self._entries for x in r)

    def map(self, f, nvars=None):
        nvars = self.nvars if nvars is None else nvars
        return PolyMatrix([[f(x) for x in r] for r in self._entries], nvars, self.shape)

    def transpose(self):
        return PolyMatrix([[self[i, j] for i in range(self.rows)] for j in range(self.cols)],
                          self.nvars, (self.cols, self.rows))

    def submatrix(self, rows, cols):
        return PolyMatrix([[self[i, j] for j in cols] for i in rows], self.nvars,
                          (len(rows), len(cols)))

    # -- arithmetic ---------------------------------------------------
    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = LaurentPoly.zero(self.nvars)
        out = []
        for i in range(self.rows):
            line = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self._entries[i][k]
                    if a:
                        b = other._entries[k][j]
                        if b:
                            acc = acc + a * b
                line.append(acc)
            out.append(line)
        return PolyMatrix(out, self.nvars, (self.rows, other.cols))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix([[a + b for a, b in zip(r, s)]
                           for r, s in zip(self._entries, other._entries)],
                          self.nvars, self.shape)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.nvars == other.nvars
                and self._entries == other._entries)

    def __hash__(self):
        return hash((self.shape, self.nvars, self._entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self._entries)
        return f"PolyMatrix({self.rows}x{self.cols}, nvars={self.nvars}, [{body}])"


# ---------------------------------------------------------------------------
# fraction-free elimination over Z[Z^m]
# ---------------------------------------------------------------------------

def _bareiss(A: list, stop_at_zero_pivot=False):
    """Fraction-free elimination with full pivoting, in place.

    Returns (rank, sign, last_pivot). Pivots prefer entries with the fewest
    terms to limit intermediate swell.
    """
    n = len(A)
    m = len(A[0]) if n else 0
    prev = None
    sign = 1
    rank = 0
    for k in range(min(n, m)):
        best = None
        for i in range(k, n):
            row = A[i]
            for j in range(k, m):
                x = row[j]
                if x:
                    size = len(x)
                    if best is None or size < best[0]:
                        best = (size, i, j)
                        if size == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != k:
            A[k], A[i] = A[i], A[k]
            sign = -sign
        if j != k:
            for row in A:
                row[k], row[j] = row[j], row[k]
            sign = -sign
        piv = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, m):
                v = piv * row_i[j]
                if aik and row_k[j]:
                    v = v - aik * row_k[j]
                if prev is not None and v:
                    v = exact_divide(v, prev)
                row_i[j] = v
            row_i[k] = row_i[k] * 0
        prev = piv
        rank += 1
    return rank, sign, prev


def rank_ff(M: PolyMatrix) -> int:
    """Rank of ``M`` over the fraction field Q(t_1..t_m), computed exactly."""
    if M.rows == 0 or M.cols == 0:
        return 0
    A = M.tolist()
    return _bareiss(A)[0]


def det(M: PolyMatrix) -> LaurentPoly:
    """Determinant of a square polynomial matrix."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return LaurentPoly.constant(1, M.nvars)
    A = M.tolist()
    rank, sign, last = _bareiss(A)
    if rank < n:
        return LaurentPoly.zero(M.nvars)
    return last if sign > 0 else -last


def iter_minors(M: PolyMatrix, size: int) -> Iterator[tuple]:
    """Yield ``(rows, cols, minor)`` for every ``size x size`` minor.

    Order: column combinations lexicographically (outer), row combinations
    lexicographically (inner).
    """
    if size == 0:
        yield (), (), LaurentPoly.constant(1, M.nvars)
        return
    if size > min(M.rows, M.cols):
        return
    zero_rows = {i for i in range(M.rows) if all(not x for x in M.row(i))}
    live_rows = [i for i in range(M.rows) if i not in zero_rows]
    for cols in combinations(range(M.cols), size):
        if any(all(not M[i, j] for i in live_rows) for j in cols):
            continue
        for rows in combinations(live_rows, size):
            yield rows, cols, det(M.submatrix(rows, cols))


def minor_family_content(M: PolyMatrix, size: int):
    """``(all_zero, content)`` for the family of ``size x size`` minors.

    ``content`` is the gcd of the integer contents of all minors (0 when they
    all vanish). Enumeration stops once the running gcd reaches 1.
    """
    if size == 0:
        return False, 1
    g = 0
    for _, _, minor in iter_minors(M, size):
        if minor:
            g = math.gcd(g, minor.content())
            if g == 1:
                return False, 1
    return g == 0, g


# ---------------------------------------------------------------------------
# integer matrices
# ---------------------------------------------------------------------------

def identity(n) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntMatrix, B: IntMatrix, inner=None) -> IntMatrix:
    inner = len(B) if inner is None else inner
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


@dataclass
class SnfResult:
    """``U @ A @ V == S`` with ``S`` diagonal and ``divisors`` the non-zero diagonal."""

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    divisors: list

    @property
    def rank(self):
        return len(self.divisors)


def _snf_core(A: IntMatrix, ncols: int, track: bool):
    n, m = len(A), ncols
    S = [list(r) for r in A]
    U = identity(n) if track else None
    V = identity(m) if track else None

    def swap_rows(a, b):
        S[a], S[b] = S[b], S[a]
        if track:
            U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for r in S:
            r[a], r[b] = r[b], r[a]
        if track:
            for r in V:
                r[a], r[b] = r[b], r[a]

    def add_row(dst, src, q):  # row_dst += q * row_src
        rs, rd = S[src], S[dst]
        for j in range(m):
            if rs[j]:
                rd[j] += q * rs[j]
        if track:
            us, ud = U[src], U[dst]
            for j in range(n):
                if us[j]:
                    ud[j] += q * us[j]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for r in S:
            if r[src]:
                r[dst] += q * r[src]
        if track:
            for r in V:
                if r[src]:
                    r[dst] += q * r[src]

    divisors = []
    t = 0
    while t < min(n, m):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                x = S[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = S[t][t]
            for i in range(t + 1, n):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
            for j in range(t + 1, m):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
            # a non-zero remainder is smaller than the pivot: move it in
            cand = [(abs(S[i][t]), i, None) for i in range(t + 1, n) if S[i][t]]
            cand += [(abs(S[t][j]), None, j) for j in range(t + 1, m) if S[t][j]]
            if cand:
                _, i, j = min(cand, key=lambda c: c[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if S[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            if track:
                U[t] = [-x for x in U[t]]
        divisors.append(S[t][t])
        t += 1
    return S, U, V, divisors


def snf(A: IntMatrix, ncols=None) -> SnfResult:
    """Smith normal form with transforms: ``U A V = S``, ``det U, det V = ±1``."""
    ncols = (len(A[0]) if A else 0) if ncols is None else ncols
    S, U, V, divisors = _snf_core(A, ncols, track=True)
    return SnfResult(S, U, V, divisors)


def smith_divisors(A: IntMatrix, ncols=None) -> list:
    """Non-zero Smith invariants of ``A`` (no transforms kept)."""
    ncols = (len(A[0]) if A else 0) if ncols is None else ncols
    return _snf_core(A, ncols, track=False)[3]


def determinantal_divisors(A: IntMatrix, ncols=None) -> list:
    """``d_k`` = gcd of all k x k minors, for k = 1..rank."""
    out = []
    acc = 1
    for d in smith_divisors(A, ncols):
        acc *= d
        out.append(acc)
    return out


def int_rank(A: IntMatrix, ncols=None) -> int:
    return len(smith_divisors(A, ncols))
