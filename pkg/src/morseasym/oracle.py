"""Integer ground truth.

Over the principal ideal domain Z the Morse number of a free complex is
``sum_p (b_p + q_p + q_{p-1})`` where ``q_p`` is the number of torsion
invariants of ``H_p``. Everything here reduces to Smith normal forms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence

from .complex import FreeComplex
from .errors import LatticeRankError, OracleRefused
from .laurent import LaurentPoly
from .matrix import IntMatrix, PolyMatrix, determinantal_divisors, smith_divisors
from .novikov import BasicSubcomplex, truncate
from .ring import classify


@dataclass
class ZHomology:
    betti: List[int]
    torsion: List[List[int]]   # non-unit Smith divisors, a divisibility chain

    @property
    def q(self) -> List[int]:
        return [len(t) for t in self.torsion]

    def as_dict(self):
        return {"betti": self.betti, "torsion": self.torsion}


def _int_boundaries(C: FreeComplex) -> List[IntMatrix]:
    if C.lattice_rank != 0:
        raise LatticeRankError(f"integer oracle needs lattice rank 0, got {C.lattice_rank}")
    return [d.to_ints() for d in C.boundaries]


def homology_Z(C: FreeComplex) -> ZHomology:
    """Integral homology from the Smith forms of the boundaries."""
    bds = _int_boundaries(C)
    divs = [smith_divisors(A, C.ranks[p + 1]) for p, A in enumerate(bds)]
    rk = lambda p: len(divs[p - 1]) if 1 <= p <= len(divs) else 0
    betti = [C.ranks[p] - rk(p) - rk(p + 1) for p in range(len(C.ranks))]
    torsion = []
    for p in range(len(C.ranks)):
        ds = divs[p] if p < len(divs) else []
        torsion.append([d for d in ds if d > 1])
    return ZHomology(betti, torsion)


def morse_number_Z(C: FreeComplex) -> int:
    """``sum_p (b_p + q_p + q_{p-1})`` for an integer complex."""
    H = homology_Z(C)
    q = H.q
    return sum(H.betti) + 2 * sum(q)


# ---------------------------------------------------------------------------
# mu-series and slope fits
# ---------------------------------------------------------------------------

@dataclass
class MuSeries:
    values: List[int]
    source: str = ""

    def __getitem__(self, k):
        """1-based access: ``s[k] = mu_k``."""
        return self.values[k - 1]

    @property
    def K(self):
        return len(self.values)

    def subadditivity_violations(self):
        v = self.values
        return [(k, l) for k in range(1, self.K + 1) for l in range(1, self.K + 1 - k)
                if v[k - 1] + v[l - 1] < v[k + l - 1]]


def mu_series(D, K: int) -> MuSeries:
    """``mu_k`` = integer Morse number of the truncation ``A[k]``, k = 1..K."""
    C = D.complex if isinstance(D, BasicSubcomplex) else D
    if C.lattice_rank != 1:
        raise OracleRefused(
            f"kernel rank {C.lattice_rank - 1} >= 1: the exact Morse number over "
            "Z[Z^n] with n >= 1 is not computed")
    if K < 1:
        raise ValueError("K must be >= 1")
    return MuSeries([morse_number_Z(truncate(C, k)) for k in range(1, K + 1)],
                    source=f"truncations of {C!r}")


@dataclass
class SlopeFit:
    slope: Fraction
    max_deviation: Fraction
    window: tuple   # (first k, last k), inclusive

    def as_dict(self):
        return {"slope": str(self.slope), "max_deviation": str(self.max_deviation),
                "window": list(self.window)}


def slope_fit(series, burnin: int = 0) -> SlopeFit:
    """Exact minimax slope over ``k = burnin+1 .. K``.

    Candidate slopes are the secants ``(mu_j - mu_i)/(j - i)``; the winner
    minimizes the Chebyshev error of a line with free intercept, ties broken
    by smaller ``max |mu_k - slope*k|`` and then smaller slope. The reported
    deviation is ``max |mu_k - slope*k|`` (the intercept is absorbed).
    """
    values = series.values if isinstance(series, MuSeries) else list(series)
    K = len(values)
    if K - burnin < 4:
        raise ValueError(f"window too short: need K - burnin >= 4, got {K - burnin}")
    ks = list(range(burnin + 1, K + 1))
    pts = [(k, values[k - 1]) for k in ks]
    cands = {Fraction(b[1] - a[1], b[0] - a[0]) for a, b in combinations(pts, 2)}
    best = None
    for s in cands:
        res = [y - s * k for k, y in pts]
        width = (max(res) - min(res)) / 2
        dev = max(abs(r) for r in res)
        key = (width, dev, s)
        if best is None or key < best:
            best = key
    _, dev, s = best
    return SlopeFit(s, dev, (ks[0], ks[-1]))


# ---------------------------------------------------------------------------
# covers
# ---------------------------------------------------------------------------

def _substitute_blocks(C: FreeComplex, k: int) -> FreeComplex:
    """Replace each ``t_i`` by the commuting permutation ``I x .. x P_k x .. x I``."""
    m = C.lattice_rank
    n = k ** m

    def index(multi):
        out = 0
        for x in multi:
            out = out * k + x
        return out

    multis = []
    for idx in range(n):
        digits = []
        v = idx
        for _ in range(m):
            digits.append(v % k)
            v //= k
        multis.append(tuple(reversed(digits)))

    bds = []
    for d in C.boundaries:
        rows, cols = d.rows, d.cols
        out = [[0] * (cols * n) for _ in range(rows * n)]
        for i in range(rows):
            for j in range(cols):
                x = d[i, j]
                for e, c in x.terms.items():
                    # t^e sends basis vector (j, a) to (i, a + e mod k)
                    for a in multis:
                        b = tuple((ai + ei) % k for ai, ei in zip(a, e))
                        out[i * n + index(b)][j * n + index(a)] += c
        bds.append(PolyMatrix.from_ints(out, 0, (rows * n, cols * n)))
    return FreeComplex(0, tuple(r * n for r in C.ranks), tuple(bds))


def cyclic_cover_Z(C: FreeComplex, k: int) -> FreeComplex:
    """Integer chain complex of the k-fold cyclic cover: ``t -> P_k``."""
    if C.lattice_rank != 1:
        raise LatticeRankError("cyclic_cover_Z needs a univariate complex; "
                               "use finite_quotient_Z")
    if k < 1:
        raise ValueError("k must be positive")
    return _substitute_blocks(C, k)


def finite_quotient_Z(C: FreeComplex, k: int) -> FreeComplex:
    """Integer chain complex of the cover for the subgroup ``k Z^m``."""
    if k < 1:
        raise ValueError("k must be positive")
    return _substitute_blocks(C, k)


# ---------------------------------------------------------------------------
# the determinantal check on the banded matrices of a special polynomial
# ---------------------------------------------------------------------------

def banded_matrix(coeffs: Sequence[int], k: int) -> IntMatrix:
    """The ``(k+r) x (k+r)`` lower-triangular Toeplitz matrix with first column
    ``a_0, .., a_r, 0, ..``."""
    r = len(coeffs) - 1
    n = k + r
    return [[coeffs[i - j] if 0 <= i - j <= r else 0 for j in range(n)] for i in range(n)]


@dataclass
class BandedCheck:
    rho: LaurentPoly
    special: bool
    numerically_prime: bool
    nonzero_constant: bool
    unit_ideal: List[bool]                      # per k = 1..K
    kth_divisor: List[int] = field(default_factory=list)

    @property
    def preconditions_hold(self):
        return self.special and self.numerically_prime and self.nonzero_constant

    def as_dict(self):
        return {"rho": str(self.rho), "special": self.special,
                "numerically_prime": self.numerically_prime,
                "nonzero_constant": self.nonzero_constant,
                "unit_ideal": self.unit_ideal, "kth_divisor": self.kth_divisor}


def banded_unit_check(rho: LaurentPoly, K: int) -> BandedCheck:
    """For k = 1..K: is the ideal of k x k minors of the first k columns of the
    banded matrix of ``rho`` the whole ring Z (i.e. is d_k = 1)?"""
    if rho.nvars != 1:
        raise LatticeRankError("rho must be a univariate integer polynomial")
    if rho.is_zero() or rho.min_exponents()[0] < 0:
        raise ValueError("rho must be a non-zero polynomial in t")
    cls = classify(rho)
    r = rho.max_exponents()[0]
    coeffs = [rho.terms.get((j,), 0) for j in range(r + 1)]
    flags, divisors = [], []
    for k in range(1, K + 1):
        A = banded_matrix(coeffs, k)
        Bk = [row[:k] for row in A]
        dd = determinantal_divisors(Bk, k)
        dk = dd[k - 1] if len(dd) >= k else 0
        divisors.append(dk)
        flags.append(dk == 1)
    return BandedCheck(rho, cls.is_special, cls.is_numerically_prime,
                         coeffs[0] != 0, flags, divisors)
