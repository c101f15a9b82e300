"""Integer Laurent polynomials, i.e. elements of the group ring Z[Z^m].

A polynomial is a finite map from exponent vectors (length ``m``) to non-zero
Python ints. Instances are immutable and hashable.
"""
from __future__ import annotations

import math
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import LatticeRankError

Exponent = tuple


def _var_name(i, nvars):
    return "t" if nvars == 1 else f"t{i + 1}"


class LaurentPoly:
    """Element of Z[Z^m] with ``m = nvars``.

    >>> t = LaurentPoly.var(0, 1)
    >>> (1 + t) * (1 - t)
    LaurentPoly('1-t^2', nvars=1)
    """

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), nvars: int = 1):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for exp, coeff in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise LatticeRankError(
                    f"exponent vector {exp} has length {len(exp)}, expected {nvars}")
            coeff = int(coeff)
            if coeff:
                clean[exp] = clean.get(exp, 0) + coeff
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "LaurentPoly":
        # trusted constructor: keys are tuples of the right length, no zeros
        p = object.__new__(cls)
        p._terms = terms
        p.nvars = nvars
        p._hash = None
        return p

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars=1):
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars=1):
        c = int(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def monomial(cls, exp, coeff=1):
        exp = tuple(int(e) for e in exp)
        return cls._raw({exp: int(coeff)} if coeff else {}, len(exp))

    @classmethod
    def var(cls, i, nvars=1, power=1):
        exp = [0] * nvars
        exp[i] = power
        return cls._raw({tuple(exp): 1}, nvars)

    @classmethod
    def parse(cls, text: str, nvars: int = 1) -> "LaurentPoly":
        from .parsing import parse_poly
        return parse_poly(text, nvars)

    # -- accessors ----------------------------------------------------
    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def support(self) -> list:
        """Exponent vectors in lexicographic order."""
        return sorted(self._terms)

    def items(self):
        """(exponent, coefficient) pairs in lexicographic exponent order."""
        return [(e, self._terms[e]) for e in sorted(self._terms)]

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and (0,) * self.nvars in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, 0)

    def is_monomial(self):
        """Single term ``a*g`` (any non-zero integer ``a``)."""
        return len(self._terms) == 1

    def is_unit(self):
        """Units of Z[Z^m] are exactly ``±g``."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    def min_exponents(self):
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self._terms)) if self.nvars else ()

    def max_exponents(self):
        if not self._terms:
            return (0,) * self.nvars
        return tuple(max(col) for col in zip(*self._terms)) if self.nvars else ()

    def leading(self):
        """Lexicographically largest (exponent, coefficient)."""
        e = max(self._terms)
        return e, self._terms[e]

    def trailing(self):
        e = min(self._terms)
        return e, self._terms[e]

    def coefficients_in(self, var: int) -> dict:
        """Group terms by the exponent of ``var``.

        Returns ``{d: coefficient}`` where each coefficient is a polynomial in
        the same ring whose ``var`` exponent is zero.
        """
        out: dict = {}
        for e, c in self._terms.items():
            d = e[var]
            key = e[:var] + (0,) + e[var + 1:]
            out.setdefault(d, {})[key] = c
        return {d: LaurentPoly._raw(t, self.nvars) for d, t in out.items()}

    def degree_range(self, var: int):
        if not self._terms:
            return None
        ds = [e[var] for e in self._terms]
        return min(ds), max(ds)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise LatticeRankError(
                    f"lattice ranks differ: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            self, other = other, self
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()}, self.nvars)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return LaurentPoly._raw(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ArithmeticError(f"{self} is not a unit; negative power undefined")
            (e, c), = self._terms.items()
            return LaurentPoly._raw({tuple(n * x for x in e): c ** (-n)}, self.nvars)
        result = LaurentPoly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exp) -> "LaurentPoly":
        """Multiply by the group element ``exp``."""
        return LaurentPoly._raw(
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()},
            self.nvars)

    def substitute_monomials(self, matrix) -> "LaurentPoly":
        """Monomial substitution ``g -> matrix @ g`` (matrix given as rows)."""
        out: dict = {}
        rows = [tuple(r) for r in matrix]
        n_out = len(rows)
        for e, c in self._terms.items():
            new = tuple(sum(r[j] * e[j] for j in range(len(e))) for r in rows)
            v = out.get(new, 0) + c
            if v:
                out[new] = v
            else:
                out.pop(new, None)
        return LaurentPoly._raw(out, n_out)

    def evaluate(self, point) -> "object":
        """Evaluate at a point of (Q^*)^m; exact for ints / Fractions."""
        total = 0
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                if k < 0 and isinstance(x, int):
                    x = Fraction(x)
                v = v * (x ** k)
            total += v
        return total

    # -- comparison / display -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_constant() and self.constant_term() == other
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                _var_name(i, self.nvars) + ("" if k == 1 else f"^{k}")
                for i, k in enumerate(e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"LaurentPoly({str(self)!r}, nvars={self.nvars})"
