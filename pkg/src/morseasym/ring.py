"""Exact algorithms in Z[Z^m]: content, exact division, gcd, element
classification and the change of basis attached to a cohomology class.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import LatticeRankError, NonUnimodular, NotDivisible, ZeroClass
from .laurent import LaurentPoly
from .parsing import parse_poly

__all__ = [
    "parse_poly", "arith", "integer_content", "exact_divide", "divides", "gcd",
    "normalize", "associated", "classify", "ElementClass", "CohomologyClass",
    "split_along_xi", "apply_basis_change", "int_det", "int_inverse",
    "smallest_prime_factor",
]


def arith(op: str, a: LaurentPoly, b=None) -> LaurentPoly:
    """Dispatch ``add``, ``sub``, ``neg``, ``mul`` and ``pow`` by name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "neg":
        return -a
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown operation {op!r}")


def integer_content(p: LaurentPoly) -> int:
    """gcd of all coefficients; 0 for the zero polynomial."""
    return p.content()


def smallest_prime_factor(n: int) -> int:
    n = abs(n)
    if n < 2:
        raise ValueError(f"{n} has no prime factor")
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


# ---------------------------------------------------------------------------
# raw dict helpers; keys are exponent tuples of a fixed length
# ---------------------------------------------------------------------------

def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def _sub_scaled(a: dict, b: dict, c: int, shift) -> None:
    """In place: a -= c * x^shift * b."""
    for e, v in b.items():
        k = tuple(x + y for x, y in zip(e, shift))
        w = a.get(k, 0) - c * v
        if w:
            a[k] = w
        else:
            del a[k]


def _divexact(a: dict, b: dict) -> Optional[dict]:
    """Return q with a == b*q in Z[Z^m], or None.

    Long division by lexicographic leading terms. If a quotient exists its
    support lies in the box [min(a) - min(b), max(a) - max(b)] coordinatewise,
    which bounds the loop.
    """
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return {}
    m = len(next(iter(a)))
    lo = tuple(min(e[i] for e in a) - min(e[i] for e in b) for i in range(m))
    hi = tuple(max(e[i] for e in a) - max(e[i] for e in b) for i in range(m))
    if any(l > h for l, h in zip(lo, hi)):
        return None
    lead_b = max(b)
    lc_b = b[lead_b]
    r = dict(a)
    q: dict = {}
    while r:
        lead_r = max(r)
        e = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(x < l or x > h for x, l, h in zip(e, lo, hi)):
            return None
        c, rem = divmod(r[lead_r], lc_b)
        if rem:
            return None
        q[e] = c
        _sub_scaled(r, b, c, e)
    return q


def _coeffs(a: dict, v: int) -> dict:
    out: dict = {}
    for e, c in a.items():
        out.setdefault(e[v], {})[e[:v] + (0,) + e[v + 1:]] = c
    return out


def _deg(a: dict, v: int) -> int:
    return max(e[v] for e in a)


def _content_prim(a: dict, v: int):
    """Split ``a`` (as polynomial in x_v over Z[x_0..x_{v-1}]) into content and primitive part."""
    cs = _coeffs(a, v)
    cont: dict = {}
    for c in cs.values():
        cont = _gcd_rec(cont, c, v - 1)
        if _is_pm_one(cont):
            return {next(iter(cont)): 1}, dict(a)
    prim: dict = {}
    for d, c in cs.items():
        q = _divexact(c, cont)
        assert q is not None
        for e, val in q.items():
            prim[e[:v] + (d,) + e[v + 1:]] = val
    return cont, prim


def _is_pm_one(a: dict) -> bool:
    if len(a) != 1:
        return False
    (e, c), = a.items()
    return abs(c) == 1 and not any(e)


def _prem(a: dict, b: dict, v: int) -> dict:
    db = _deg(b, v)
    lb = _coeffs(b, v)[db]
    r = dict(a)
    zero_shift = None
    while r:
        dr = _deg(r, v)
        if dr < db:
            break
        lr = _coeffs(r, v)[dr]
        if zero_shift is None:
            zero_shift = (0,) * len(next(iter(b)))
        shift = list(zero_shift)
        shift[v] = dr - db
        r = _mul(lb, r)
        prod = _mul(lr, b)
        _sub_scaled(r, prod, 1, tuple(shift))
    return r


def _gcd_rec(a: dict, b: dict, v: int) -> dict:
    """gcd in Z[x_0..x_v] (non-negative exponents, other variables absent), up to sign."""
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    if v < 0:
        (ka, ca), = a.items()
        (_, cb), = b.items()
        return {ka: math.gcd(ca, cb)}
    # skip variables that neither input involves
    while v >= 0 and not any(e[v] for e in a) and not any(e[v] for e in b):
        v -= 1
    if v < 0:
        return _gcd_rec(a, b, -1)
    ca, pa = _content_prim(a, v)
    cb, pb = _content_prim(b, v)
    c = _gcd_rec(ca, cb, v - 1)
    if _deg(pa, v) < _deg(pb, v):
        pa, pb = pb, pa
    while pb and _deg(pb, v) > 0:
        r = _prem(pa, pb, v)
        pa = pb
        pb = _content_prim(r, v)[1] if r else {}
    if pb:
        # pb is free of x_v and primitive, hence a unit
        g = {tuple(0 for _ in next(iter(pb))): 1}
    else:
        g = _content_prim(pa, v)[1]
    return _mul(c, g)


# ---------------------------------------------------------------------------
# public ring operations
# ---------------------------------------------------------------------------

def _check_rank(a: LaurentPoly, b: LaurentPoly):
    if a.nvars != b.nvars:
        raise LatticeRankError(f"lattice ranks differ: {a.nvars} vs {b.nvars}")


def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``a == b*q``; raise :class:`NotDivisible` otherwise."""
    if isinstance(b, int):
        b = LaurentPoly.constant(b, a.nvars)
    _check_rank(a, b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    q = _divexact(a._terms, b._terms)
    if q is None:
        raise NotDivisible(f"{b} does not divide {a} in Z[Z^{a.nvars}]")
    return LaurentPoly._raw(q, a.nvars)


def divides(b: LaurentPoly, a: LaurentPoly) -> bool:
    if b.is_zero():
        return a.is_zero()
    return _divexact(a._terms, b._terms) is not None


def normalize(p: LaurentPoly) -> LaurentPoly:
    """Canonical associate of ``p`` under units ``±g``.

    The lexicographically least support point is moved to the origin and its
    coefficient made positive.
    """
    if p.is_zero():
        return p
    e, c = p.trailing()
    q = p.shift(tuple(-x for x in e))
    return -q if c < 0 else q


def associated(a: LaurentPoly, b: LaurentPoly) -> bool:
    """True when ``a`` and ``b`` differ by a unit ``±g``."""
    return normalize(a) == normalize(b)


def gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Normalized greatest common divisor in Z[Z^m] (a UFD)."""
    _check_rank(a, b)
    if a.is_zero():
        return normalize(b)
    if b.is_zero():
        return normalize(a)
    m = a.nvars
    if m == 0:
        return LaurentPoly.constant(math.gcd(a.constant_term(), b.constant_term()), 0)
    pa = a.shift(tuple(-x for x in a.min_exponents()))
    pb = b.shift(tuple(-x for x in b.min_exponents()))
    g = _gcd_rec(pa._terms, pb._terms, m - 1)
    return normalize(LaurentPoly._raw(g, m))


def gcd_many(polys) -> LaurentPoly:
    out = None
    for p in polys:
        out = p if out is None else gcd(out, p)
        if out.is_unit():
            return normalize(out)
    if out is None:
        raise ValueError("gcd of an empty family")
    return normalize(out)


# ---------------------------------------------------------------------------
# cohomology classes
# ---------------------------------------------------------------------------

def int_det(M) -> int:
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[k][k] * A[i][j] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def int_inverse(M):
    """Inverse of a unimodular integer matrix; raises NonUnimodular otherwise."""
    n = len(M)
    d = int_det(M)
    if d not in (1, -1):
        raise NonUnimodular(f"determinant {d} is not ±1")
    # Gauss-Jordan over Z works because every pivot can be made ±1
    A = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(M)]
    for k in range(n):
        while True:
            rows = [i for i in range(k, n) if A[i][k]]
            i = min(rows, key=lambda i: abs(A[i][k]))
            A[k], A[i] = A[i], A[k]
            done = True
            for i in range(k + 1, n):
                q = A[i][k] // A[k][k]
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[k])]
                if A[i][k]:
                    done = False
            if done:
                break
        if A[k][k] < 0:
            A[k] = [-x for x in A[k]]
    for k in range(n - 1, -1, -1):
        for i in range(k):
            q = A[i][k]
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[k])]
    return [r[n:] for r in A]


@dataclass(frozen=True)
class CohomologyClass:
    """A non-zero covector ``xi: Z^m -> Z`` together with its splitting.

    ``basis_change`` is a unimodular matrix (list of rows) whose first ``m-1``
    columns span ``Ker xi`` and whose last column ``T`` has ``reduced(T) = -1``.
    """

    covector: tuple
    divisibility: int
    reduced: tuple
    basis_change: tuple

    @property
    def lattice_rank(self):
        return len(self.covector)

    @property
    def kernel_basis(self):
        m = self.lattice_rank
        return [tuple(self.basis_change[i][j] for i in range(m)) for j in range(m - 1)]

    @property
    def t_vector(self):
        m = self.lattice_rank
        return tuple(self.basis_change[i][m - 1] for i in range(m))

    def __call__(self, exp) -> int:
        return sum(a * b for a, b in zip(self.covector, exp))

    def inverse_basis_change(self):
        return int_inverse(self.basis_change)


def split_along_xi(xi: Sequence[int]) -> CohomologyClass:
    """Build the splitting Z^m = Ker(xi) + Z attached to ``xi``.

    >>> c = split_along_xi((1, 0))
    >>> c.kernel_basis, c.t_vector
    ([(0, 1)], (-1, 0))
    """
    xi = tuple(int(x) for x in xi)
    m = len(xi)
    if m == 0 or not any(xi):
        raise ZeroClass("the cohomology class must be non-zero")
    l = 0
    for x in xi:
        l = math.gcd(l, x)
    red = [x // l for x in xi]
    # column operations on the row vector `red`, tracked in U, until
    # red @ U == (0, ..., 0, ±1)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    row = list(red)

    def col_swap(a, b):
        row[a], row[b] = row[b], row[a]
        for r in U:
            r[a], r[b] = r[b], r[a]

    def col_addmul(dst, src, q):
        row[dst] += q * row[src]
        for r in U:
            r[dst] += q * r[src]

    while sum(1 for x in row if x) > 1 or not row[m - 1]:
        nz = [j for j in range(m) if row[j]]
        j = min(nz, key=lambda j: abs(row[j]))
        col_swap(j, m - 1)
        for k in range(m - 1):
            if row[k]:
                col_addmul(k, m - 1, -(row[k] // row[m - 1]))
    if row[m - 1] == 1:
        for r in U:
            r[m - 1] = -r[m - 1]
    return CohomologyClass(
        covector=xi, divisibility=l, reduced=tuple(red),
        basis_change=tuple(tuple(r) for r in U))


def apply_basis_change(p: LaurentPoly, U) -> LaurentPoly:
    """Substitute monomials ``g -> U g`` (a ring automorphism when U is unimodular)."""
    U = [tuple(r) for r in U]
    if len(U) != p.nvars or any(len(r) != p.nvars for r in U):
        raise LatticeRankError(f"basis change must be {p.nvars}x{p.nvars}")
    if int_det(U) not in (1, -1):
        raise NonUnimodular("basis change is not unimodular")
    return p.substitute_monomials(U)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ElementClass:
    is_zero: bool
    is_monomial: bool
    is_special: bool
    is_monic: bool
    is_numerically_prime: bool
    np_witness: Optional[int] = None
    is_xi_special: Optional[bool] = None
    is_xi_monic: Optional[bool] = None

    def as_dict(self):
        return {k: v for k, v in self.__dict__.items() if v is not None}


def _xi_flags(p: LaurentPoly, xi) -> tuple:
    weights = {}
    for e in p.terms:
        weights.setdefault(sum(a * b for a, b in zip(xi, e)), []).append(e)
    special = all(len(v) == 1 for v in weights.values())
    if p.is_zero():
        return False, False
    top = weights[max(weights)]
    monic = len(top) == 1 and abs(p.terms[top[0]]) == 1
    return special, monic


def is_xi_monic(p: LaurentPoly, xi) -> bool:
    covector = xi.covector if isinstance(xi, CohomologyClass) else xi
    return _xi_flags(p, covector)[1]


def is_xi_special(p: LaurentPoly, xi) -> bool:
    covector = xi.covector if isinstance(xi, CohomologyClass) else xi
    return _xi_flags(p, covector)[0]


def classify(p: LaurentPoly, t_index: Optional[int] = None,
             xi: Optional[CohomologyClass] = None) -> ElementClass:
    """Classify ``p``.

    ``monic`` and ``special`` regard ``p`` as a Laurent polynomial in the
    variable ``t_index`` (default: the last one) with coefficients in the
    remaining variables. ``xi`` adds the xi-monic / xi-special flags.
    """
    if t_index is None and p.nvars:
        t_index = p.nvars - 1
    if p.is_zero():
        flags = dict(is_zero=True, is_monomial=False, is_special=False,
                     is_monic=False, is_numerically_prime=False, np_witness=None)
    else:
        if p.nvars == 0:
            coeffs = {0: p}
        else:
            coeffs = p.coefficients_in(t_index)
        low = coeffs[min(coeffs)]
        content = p.content()
        flags = dict(
            is_zero=False,
            is_monomial=p.is_monomial(),
            is_special=all(c.is_monomial() for c in coeffs.values()),
            is_monic=low.is_unit(),
            is_numerically_prime=content == 1,
            np_witness=None if content == 1 else smallest_prime_factor(content),
        )
    if xi is not None:
        covector = xi.covector if isinstance(xi, CohomologyClass) else tuple(xi)
        if len(covector) != p.nvars:
            raise LatticeRankError("cohomology class and polynomial ranks differ")
        flags["is_xi_special"], flags["is_xi_monic"] = _xi_flags(p, covector)
    return ElementClass(**flags)
