"""The xi-direction: re-presenting a complex over R[t, t^-1], basic
subcomplexes over R[[t]], truncations A/t^k A, and the excluded hyperplanes
that certify genericity of a cohomology class.

Here ``R = Z[Z^(m-1)]`` is the group ring of ``Ker xi`` and ``t`` is always
the last variable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .complex import FreeComplex
from .errors import ComplexError, LatticeRankError
from .laurent import LaurentPoly
from .matrix import PolyMatrix
from .ring import CohomologyClass, int_inverse, split_along_xi


@dataclass(frozen=True)
class XiPresentation:
    complex: FreeComplex
    origin: FreeComplex
    xi: CohomologyClass

    def to_origin(self) -> FreeComplex:
        """Undo the substitution; reproduces ``origin`` exactly."""
        U = [list(r) for r in self.xi.basis_change]
        return self.complex.map_entries(lambda p: p.substitute_monomials(U))


def to_xi_presentation(C: FreeComplex, xi) -> XiPresentation:
    """Rewrite ``C`` in coordinates ``(u_1..u_{m-1}, t)`` adapted to ``xi``.

    A group element ``g`` gets new coordinates ``U^-1 g`` where ``U`` is the
    basis change of ``xi``; the last coordinate is the t-degree and equals
    ``-xi_reduced(g)``.
    """
    if not isinstance(xi, CohomologyClass):
        xi = split_along_xi(xi)
    if xi.lattice_rank != C.lattice_rank:
        raise LatticeRankError(f"class has rank {xi.lattice_rank}, complex {C.lattice_rank}")
    Uinv = int_inverse([list(r) for r in xi.basis_change])
    return XiPresentation(C.map_entries(lambda p: p.substitute_monomials(Uinv)), C, xi)


@dataclass(frozen=True)
class BasicSubcomplex:
    """Free R[[t]]-complex with polynomial boundary entries.

    ``shifts[p]`` is the power of ``t`` by which every basis vector of degree
    ``p`` was scaled relative to the presentation it came from.
    """

    complex: FreeComplex
    shifts: tuple

    @property
    def kernel_rank(self) -> int:
        return self.complex.lattice_rank - 1

    def localize(self) -> FreeComplex:
        """Invert t and undo the scaling: the complex this was built from."""
        return _rescale(self.complex, [-s for s in self.shifts])


def _t_shift(p: LaurentPoly, k: int) -> LaurentPoly:
    if not k or p.is_zero():
        return p
    e = [0] * p.nvars
    e[-1] = k
    return p.shift(tuple(e))


def _rescale(C: FreeComplex, shifts: Sequence[int]) -> FreeComplex:
    # entry of d_p picks up t^(N_p - N_{p-1})
    bds = []
    for p, d in enumerate(C.boundaries, start=1):
        k = shifts[p] - shifts[p - 1]
        bds.append(d.map(lambda x, k=k: _t_shift(x, k)))
    return FreeComplex(C.lattice_rank, C.ranks, tuple(bds))


def basic_subcomplex(X) -> BasicSubcomplex:
    """Smallest uniform per-degree t-scaling (with ``N_0 = 0`` and
    non-decreasing ``N_p``) making every boundary entry polynomial in t."""
    C = X.complex if isinstance(X, XiPresentation) else X
    if C.lattice_rank < 1:
        raise LatticeRankError("need at least one variable to play the role of t")
    shifts = [0]
    for d in C.boundaries:
        low = 0
        for i in range(d.rows):
            for j in range(d.cols):
                x = d[i, j]
                if x:
                    low = min(low, x.min_exponents()[-1])
        shifts.append(shifts[-1] - low)
    shifts = shifts[:len(C.ranks)] or [0]
    return BasicSubcomplex(_rescale(C, shifts), tuple(shifts))


def rescale_basic(D: BasicSubcomplex, extra: Sequence[int]) -> BasicSubcomplex:
    """Another basic subcomplex of the same localized complex: scale degree ``p``
    by a further ``t^extra[p]`` (``extra`` must be non-decreasing in p to stay
    polynomial)."""
    extra = list(extra) + [extra[-1] if extra else 0] * (len(D.shifts) - len(extra))
    C = _rescale(D.complex, extra)
    for d in C.boundaries:
        for i in range(d.rows):
            for j in range(d.cols):
                if d[i, j] and d[i, j].min_exponents()[-1] < 0:
                    raise ComplexError("rescaling leaves negative powers of t")
    return BasicSubcomplex(C, tuple(a + b for a, b in zip(D.shifts, extra)))


def t_coefficients(p: LaurentPoly) -> Dict[int, LaurentPoly]:
    """``{j: c_j}`` with ``p = sum c_j t^j`` and ``c_j`` in the kernel ring (t dropped)."""
    out: dict = {}
    for e, c in p.terms.items():
        out.setdefault(e[-1], {})[e[:-1]] = c
    return {j: LaurentPoly(t, p.nvars - 1) for j, t in out.items()}


def truncate(D, k: int) -> FreeComplex:
    """``A[k] = A / t^k A`` as a free complex over the kernel ring.

    The basis of ``A[k]_p`` is ``t^a e_i`` (a = 0..k-1) grouped by ``a``; the
    boundary is block lower-triangular Toeplitz with block ``(a + j, a)`` the
    coefficient matrix of ``t^j``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    C = D.complex if isinstance(D, BasicSubcomplex) else D
    n = C.lattice_rank - 1
    if n < 0:
        raise LatticeRankError("truncation needs a distinguished variable t")
    zero = LaurentPoly.zero(n)
    bds = []
    for p, d in enumerate(C.boundaries, start=1):
        rows, cols = d.rows, d.cols
        blocks: Dict[int, list] = {}
        for i in range(rows):
            for j in range(cols):
                x = d[i, j]
                if not x:
                    continue
                for deg, c in t_coefficients(x).items():
                    if deg < 0:
                        raise ComplexError(f"entry {x} of d_{p} is not polynomial in t")
                    if deg < k:
                        blocks.setdefault(deg, []).append((i, j, c))
        out = [[zero] * (cols * k) for _ in range(rows * k)]
        for deg, entries in blocks.items():
            for a in range(k - deg):
                r0, c0 = (a + deg) * rows, a * cols
                for i, j, c in entries:
                    out[r0 + i][c0 + j] = c
        bds.append(PolyMatrix(out, n, (rows * k, cols * k)))
    return FreeComplex(n, tuple(r * k for r in C.ranks), tuple(bds))


# ---------------------------------------------------------------------------
# genericity
# ---------------------------------------------------------------------------

def _primitive(v) -> tuple:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    v = [x // g for x in v]
    first = next(x for x in v if x)
    return tuple(-x for x in v) if first < 0 else tuple(v)


@dataclass
class HyperplaneSet:
    """Primitive lattice vectors ``v``; each stands for the hyperplane ``xi(v) = 0``."""

    vectors: List[tuple] = field(default_factory=list)
    provenance: Dict[tuple, List[str]] = field(default_factory=dict)

    def add(self, v, source: str):
        v = _primitive(v)
        if v not in self.provenance:
            self.vectors.append(v)
            self.provenance[v] = []
        if source not in self.provenance[v]:
            self.provenance[v].append(source)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def as_dict(self):
        return [{"vector": list(v), "from": self.provenance[v]} for v in self.vectors]


def _support_pairs(p: LaurentPoly):
    sup = p.support()
    for i in range(len(sup)):
        for j in range(i + 1, len(sup)):
            yield tuple(a - b for a, b in zip(sup[j], sup[i]))


def excluded_hyperplanes(C: FreeComplex, zeta=None, rho=None) -> HyperplaneSet:
    """Support differences of every ``zeta_i`` and ``rho_i`` of every boundary.

    A class vanishing on none of them makes every ``zeta_i`` xi-special and
    fixes the xi-monic status of every ``rho_i``. For ``m = 1`` the set is
    empty: the only class on such a "hyperplane" is zero.
    """
    from .invariants import rho_zeta
    hs = HyperplaneSet()
    if C.lattice_rank <= 1:
        return hs
    if zeta is None or rho is None:
        rho, zeta = [], []
        for p in range(len(C.ranks)):
            r, z = rho_zeta(C.boundary(p + 1))
            rho.append(r)
            zeta.append(z)
    for p, (rs, zs) in enumerate(zip(rho, zeta)):
        for i, z in enumerate(zs):
            for v in _support_pairs(z):
                hs.add(v, f"zeta_{i}(d_{p + 1})")
        for i, r in enumerate(rs):
            for v in _support_pairs(r):
                hs.add(v, f"rho_{i}(d_{p + 1})")
    return hs


@dataclass
class GenericityCertificate:
    certified: bool
    excluded_by: Optional[tuple]
    hyperplanes: HyperplaneSet
    note: str = ("sufficient condition relative to the computed hyperplane set; "
                 "not a decision procedure for the exceptional locus")

    def as_dict(self):
        return {"certified": self.certified,
                "excluded_by": list(self.excluded_by) if self.excluded_by else None,
                "hyperplanes": self.hyperplanes.as_dict(),
                "note": self.note}


def check_xi_generic(C: FreeComplex, xi, zeta=None, rho=None) -> GenericityCertificate:
    if not isinstance(xi, CohomologyClass):
        xi = split_along_xi(xi)
    hs = excluded_hyperplanes(C, zeta=zeta, rho=rho)
    for v in hs:
        if xi(v) == 0:
            return GenericityCertificate(False, v, hs)
    return GenericityCertificate(True, None, hs)
