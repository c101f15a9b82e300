"""Asymptotic Morse-number invariants of a free complex over Z[Z^m].

For each boundary ``d_{p+1}: C_{p+1} -> C_p`` with ``d = rank C_p`` the
Fitting ideal ``F_t`` is generated by the ``(d - t)``-minors. ``B_p`` is the
fraction-field Betti number and ``Q_p`` counts the non-zero Fitting ideals of
``d_{p+1}`` that are not numerically prime. The predicted slope of the Morse
numbers of cyclic covers is ``B + 2Q``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

from .complex import FreeComplex
from .laurent import LaurentPoly
from .matrix import PolyMatrix, iter_minors, rank_ff
from .ring import (CohomologyClass, ElementClass, classify, exact_divide, gcd,
                   normalize, smallest_prime_factor, split_along_xi)


class IdealClass(str, Enum):
    ZERO = "zero"
    NOT_NUMERICALLY_PRIME = "not_numerically_prime"
    PROPER_NUMERICALLY_PRIME = "numerically_prime"
    UNIT = "unit"


@dataclass
class FittingIdeal:
    t: int
    minor_size: int
    kind: IdealClass
    content: int
    witness: Optional[int] = None
    rho: Optional[LaurentPoly] = None   # normalized gcd of the generating minors
    certificate: Optional[str] = None   # how a UNIT label was certified

    @property
    def is_zero(self):
        return self.kind is IdealClass.ZERO

    @property
    def is_numerically_prime(self):
        return self.kind in (IdealClass.UNIT, IdealClass.PROPER_NUMERICALLY_PRIME)


@dataclass
class FittingClassification:
    """The Fitting sequence ``F_0 <= ... <= F_d`` of one boundary matrix."""

    d: int
    ideals: List[FittingIdeal]

    def __getitem__(self, t):
        return self.ideals[t]

    def __len__(self):
        return len(self.ideals)

    @property
    def first_nonzero(self) -> int:
        return next(i.t for i in self.ideals if not i.is_zero)

    @property
    def first_unit(self) -> int:
        """Index of the first certified unit ideal (always exists: ``F_d`` is the ring)."""
        return next(i.t for i in self.ideals if i.kind is IdealClass.UNIT)

    @property
    def reduced(self) -> List[FittingIdeal]:
        """Non-zero ideals below the first certified unit (the reduced window)."""
        return [i for i in self.ideals if not i.is_zero and i.t < self.first_unit]

    @property
    def upper_end_certified(self) -> bool:
        """False when the last ideal of the window may secretly be the unit ideal."""
        red = self.reduced
        if not red or red[-1].kind is not IdealClass.PROPER_NUMERICALLY_PRIME:
            return True
        # contained in the principal ideal (rho), hence proper, unless rho is a unit
        return red[-1].rho is not None and not red[-1].rho.is_unit()

    @property
    def not_numerically_prime_count(self) -> int:
        return sum(1 for i in self.ideals if i.kind is IdealClass.NOT_NUMERICALLY_PRIME)


def fitting_sequence(M: PolyMatrix, with_gcd: bool = True) -> FittingClassification:
    """Classify every Fitting ideal of ``M`` (rows = rank of the target module)."""
    d = M.rows
    m = M.nvars
    ideals = []
    for t in range(d + 1):
        s = d - t
        if s == 0:
            ideals.append(FittingIdeal(t, 0, IdealClass.UNIT, 1,
                                       rho=LaurentPoly.constant(1, m), certificate="empty minor"))
            continue
        content = 0
        g = None
        int_gcd = 0
        unit_minor = None
        for rows, cols, minor in iter_minors(M, s):
            if not minor:
                continue
            content = math.gcd(content, minor.content())
            if minor.is_unit() and unit_minor is None:
                unit_minor = (rows, cols)
            if minor.is_constant():
                int_gcd = math.gcd(int_gcd, minor.constant_term())
            if with_gcd:
                g = minor if g is None else (g if g.is_unit() else gcd(g, minor))
            elif content == 1 and (unit_minor or int_gcd == 1):
                break
        if content == 0:
            ideals.append(FittingIdeal(t, s, IdealClass.ZERO, 0, rho=LaurentPoly.zero(m)))
            continue
        rho = normalize(g) if g is not None else None
        if unit_minor is not None:
            ideals.append(FittingIdeal(t, s, IdealClass.UNIT, 1, rho=rho,
                                       certificate=f"unit minor rows={list(unit_minor[0])} "
                                                   f"cols={list(unit_minor[1])}"))
        elif int_gcd == 1:
            ideals.append(FittingIdeal(t, s, IdealClass.UNIT, 1, rho=rho,
                                       certificate="integer minors with gcd 1"))
        elif content > 1:
            ideals.append(FittingIdeal(t, s, IdealClass.NOT_NUMERICALLY_PRIME, content,
                                       witness=smallest_prime_factor(content), rho=rho))
        else:
            ideals.append(FittingIdeal(t, s, IdealClass.PROPER_NUMERICALLY_PRIME, 1, rho=rho))
    return FittingClassification(d, ideals)


def betti_B(C: FreeComplex) -> List[int]:
    """Fraction-field Betti numbers ``B_p = r_p - rk d_p - rk d_{p+1}``."""
    ranks = [rank_ff(C.boundary(p)) for p in range(1, len(C.ranks))]
    rk = lambda p: ranks[p - 1] if 1 <= p <= len(ranks) else 0
    return [C.ranks[p] - rk(p) - rk(p + 1) for p in range(len(C.ranks))]


def torsion_Q(C: FreeComplex, sequences=None) -> List[int]:
    """``Q_p`` = number of non-zero, non-numerically-prime Fitting ideals of ``d_{p+1}``."""
    if sequences is None:
        sequences = [fitting_sequence(C.boundary(p + 1), with_gcd=False)
                     for p in range(len(C.ranks))]
    return [s.not_numerically_prime_count for s in sequences]


def rho_zeta(M: PolyMatrix, seq: Optional[FittingClassification] = None):
    """gcd ladder ``rho_i`` over the reduced window and quotients ``zeta_i = rho_i / rho_{i+1}``."""
    if seq is None:
        seq = fitting_sequence(M)
    rho = [i.rho for i in seq.reduced]
    zeta = []
    for i, r in enumerate(rho):
        nxt = rho[i + 1] if i + 1 < len(rho) else LaurentPoly.constant(1, M.nvars)
        zeta.append(normalize(exact_divide(r, nxt)))
    return rho, zeta


@dataclass
class DegreeData:
    """Per-degree principal data attached to a cohomology class."""

    p: int
    B: int
    Q: int
    q: int
    a: List[LaurentPoly]
    a_classes: List[ElementClass]
    consistent: Optional[bool]     # None when some zeta is not xi-special
    all_special: bool

    def as_dict(self):
        return {"p": self.p, "B": self.B, "Q": self.Q, "q": self.q,
                "a": [str(x) for x in self.a],
                "a_numerically_prime": [c.is_numerically_prime for c in self.a_classes],
                "xi_special": self.all_special, "consistent": self.consistent}


def _as_class(xi, m) -> CohomologyClass:
    if isinstance(xi, CohomologyClass):
        return xi
    return split_along_xi(xi)


def principal_invariants(C: FreeComplex, xi, _cache=None) -> List[DegreeData]:
    """For each degree: ``q_p`` = number of non-xi-monic ``rho_i`` of ``d_{p+1}``
    and the representatives ``a_j = zeta_{q-j}`` (j = 1..q).

    ``consistent`` compares the number of non-numerically-prime ``a_j`` with
    ``Q_p``; it is only meaningful when all ``zeta`` are xi-special.
    """
    xi = _as_class(xi, C.lattice_rank)
    B = betti_B(C)
    out = []
    for p in range(len(C.ranks)):
        seq = _cache[p] if _cache else fitting_sequence(C.boundary(p + 1))
        rho, zeta = rho_zeta(C.boundary(p + 1), seq)
        k = sum(1 for r in rho if not classify(r, xi=xi).is_xi_monic)
        a = [zeta[k - j] for j in range(1, k + 1)]
        a_cls = [classify(x, xi=xi) for x in a]
        all_special = all(classify(z, xi=xi).is_xi_special for z in zeta)
        Qp = seq.not_numerically_prime_count
        nnp = sum(1 for c in a_cls if not c.is_numerically_prime)
        out.append(DegreeData(p, B[p], Qp, k, a, a_cls,
                              (nnp == Qp) if all_special else None, all_special))
    return out


@dataclass
class InvariantReport:
    lattice_rank: int
    B_per_degree: List[int]
    Q_per_degree: List[int]
    rho: List[List[LaurentPoly]]        # rho[p]: ladder of d_{p+1}
    zeta: List[List[LaurentPoly]]
    fitting: List[FittingClassification]
    xi: Optional[CohomologyClass] = None
    principal: Optional[List[DegreeData]] = None
    generic: Optional[object] = None    # novikov.GenericityCertificate
    flags: dict = field(default_factory=dict)

    @property
    def B_total(self):
        return sum(self.B_per_degree)

    @property
    def Q_total(self):
        return sum(self.Q_per_degree)

    @property
    def bound(self):
        """Predicted slope ``B + 2Q``."""
        return self.B_total + 2 * self.Q_total

    @property
    def per_degree_bound(self):
        Q = self.Q_per_degree
        return [self.B_per_degree[p] + Q[p] + (Q[p - 1] if p else 0)
                for p in range(len(self.B_per_degree))]

    @property
    def k_xi(self):
        return None if self.principal is None else [d.q for d in self.principal]

    @property
    def a_list(self):
        return None if self.principal is None else [d.a for d in self.principal]

    def as_dict(self) -> dict:
        out = {
            "lattice_rank": self.lattice_rank,
            "B_per_degree": self.B_per_degree,
            "Q_per_degree": self.Q_per_degree,
            "B": self.B_total,
            "Q": self.Q_total,
            "bound": self.bound,
            "per_degree_bound": self.per_degree_bound,
            "rho": [[str(r) for r in rs] for rs in self.rho],
            "zeta": [[str(z) for z in zs] for zs in self.zeta],
            "fitting": [
                [{"t": i.t, "class": i.kind.value, "content": i.content,
                  **({"witness": i.witness} if i.witness else {})} for i in f.ideals]
                for f in self.fitting],
            "flags": dict(self.flags),
        }
        if self.xi is not None:
            out["xi"] = {"covector": list(self.xi.covector),
                         "divisibility": self.xi.divisibility,
                         "reduced": list(self.xi.reduced),
                         "basis_change": [list(r) for r in self.xi.basis_change]}
            out["principal"] = [d.as_dict() for d in self.principal]
        if self.generic is not None:
            out["genericity"] = self.generic.as_dict()
        return out


def main_bound(C: FreeComplex, xi=None) -> InvariantReport:
    """Aggregate ``B_p``, ``Q_p``, the rho/zeta ladders and (optionally) the
    xi-dependent principal data into one report."""
    fitting = [fitting_sequence(C.boundary(p + 1)) for p in range(len(C.ranks))]
    B = betti_B(C)
    Q = torsion_Q(C, fitting)
    rho, zeta = [], []
    for p, seq in enumerate(fitting):
        r, z = rho_zeta(C.boundary(p + 1), seq)
        rho.append(r)
        zeta.append(z)
    report = InvariantReport(C.lattice_rank, B, Q, rho, zeta, fitting)
    report.flags["fr_endpoint_certified"] = all(f.upper_end_certified for f in fitting)
    if xi is not None:
        from .novikov import check_xi_generic
        cls = _as_class(xi, C.lattice_rank)
        report.xi = cls
        report.principal = principal_invariants(C, cls, fitting)
        report.generic = check_xi_generic(C, cls, zeta=zeta, rho=rho)
        report.flags["generic_certified"] = report.generic.certified
        report.flags["a_heuristic"] = not report.generic.certified
    return report
