"""Free chain complexes over Z[Z^m].

A complex ``0 <- C_0 <-d_1- C_1 <- ... <-d_L- C_L <- 0`` is stored as its
ranks and boundary matrices; ``d_p`` has shape ``r_{p-1} x r_p``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from .errors import ComplexError, LatticeRankError
from .laurent import LaurentPoly
from .matrix import PolyMatrix
from .ring import classify, divides


@dataclass(frozen=True)
class FreeComplex:
    lattice_rank: int
    ranks: tuple
    boundaries: tuple  # boundaries[p-1] is d_p

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        bds = tuple(self.boundaries)
        # trim trailing zero modules so that the length is well defined
        while ranks and ranks[-1] == 0 and len(bds) == len(ranks) - 1:
            ranks = ranks[:-1]
            bds = bds[:-1]
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "boundaries", bds)

    @property
    def length(self) -> int:
        """Largest ``p`` with ``C_p != 0`` (-1 for the zero complex)."""
        return len(self.ranks) - 1

    @property
    def total_rank(self) -> int:
        return sum(self.ranks)

    def rank(self, p: int) -> int:
        return self.ranks[p] if 0 <= p < len(self.ranks) else 0

    def boundary(self, p: int) -> PolyMatrix:
        """``d_p: C_p -> C_{p-1}``; a zero matrix of the right shape outside 1..L."""
        if 1 <= p <= len(self.boundaries):
            return self.boundaries[p - 1]
        return PolyMatrix.zeros(self.rank(p - 1), self.rank(p), self.lattice_rank)

    def map_entries(self, f, lattice_rank=None) -> "FreeComplex":
        m = self.lattice_rank if lattice_rank is None else lattice_rank
        return FreeComplex(m, self.ranks, tuple(d.map(f, m) for d in self.boundaries))

    def __repr__(self):
        return f"FreeComplex(m={self.lattice_rank}, ranks={list(self.ranks)})"


def make_complex(lattice_rank: int, ranks: Sequence[int], boundaries: Sequence) -> FreeComplex:
    """Build a complex, accepting nested lists of entries for the boundaries."""
    bds = []
    for p, d in enumerate(boundaries, start=1):
        if not isinstance(d, PolyMatrix):
            shape = (ranks[p - 1], ranks[p]) if p < len(ranks) else None
            d = PolyMatrix(d, lattice_rank, shape)
        bds.append(d)
    return FreeComplex(lattice_rank, tuple(ranks), tuple(bds))


def zero_complex(lattice_rank=1) -> FreeComplex:
    return FreeComplex(lattice_rank, (), ())


@dataclass(frozen=True)
class Violation:
    kind: str           # "shape", "lattice_rank" or "dd"
    p: int
    row: Optional[int] = None
    col: Optional[int] = None
    message: str = ""

    def __str__(self):
        return self.message


def validate(C: FreeComplex) -> List[Violation]:
    """Check shapes, lattice ranks and ``d_p d_{p+1} = 0``; empty list means valid."""
    out = []
    if len(C.boundaries) != max(len(C.ranks) - 1, 0):
        out.append(Violation("shape", len(C.boundaries),
                             message=f"{len(C.ranks)} modules need {max(len(C.ranks) - 1, 0)} "
                                     f"boundaries, got {len(C.boundaries)}"))
        return out
    for p, d in enumerate(C.boundaries, start=1):
        if d.nvars != C.lattice_rank:
            out.append(Violation("lattice_rank", p,
                                 message=f"d_{p} has lattice rank {d.nvars}, "
                                         f"complex has {C.lattice_rank}"))
        want = (C.ranks[p - 1], C.ranks[p])
        if d.shape != want:
            out.append(Violation("shape", p,
                                 message=f"d_{p} has shape {d.shape}, expected {want}"))
    if out:
        return out
    for p in range(2, len(C.boundaries) + 1):
        prod = C.boundaries[p - 2] @ C.boundaries[p - 1]
        for i in range(prod.rows):
            for j in range(prod.cols):
                if prod[i, j]:
                    out.append(Violation(
                        "dd", p, i, j,
                        f"d_{p - 1} d_{p} != 0 at ({i}, {j}): {prod[i, j]}"))
                    break
            else:
                continue
            break
    return out


def is_valid(C: FreeComplex) -> bool:
    return not validate(C)


def require_valid(C: FreeComplex) -> FreeComplex:
    bad = validate(C)
    if bad:
        raise ComplexError("; ".join(str(v) for v in bad))
    return C


# ---------------------------------------------------------------------------
# combinators
# ---------------------------------------------------------------------------

def direct_sum(C: FreeComplex, D: FreeComplex) -> FreeComplex:
    """Block-diagonal sum; the basis of ``C_p`` comes first."""
    if C.lattice_rank != D.lattice_rank:
        raise LatticeRankError("direct sum of complexes over different rings")
    m = C.lattice_rank
    L = max(len(C.ranks), len(D.ranks))
    ranks = tuple(C.rank(p) + D.rank(p) for p in range(L))
    bds = tuple(PolyMatrix.block_diag([C.boundary(p), D.boundary(p)], m) for p in range(1, L))
    return FreeComplex(m, ranks, bds)


def direct_sum_all(complexes, lattice_rank=1) -> FreeComplex:
    out = zero_complex(lattice_rank)
    for c in complexes:
        out = direct_sum(out, c)
    return out


def suspension(C: FreeComplex, times: int = 1) -> FreeComplex:
    """``(SC)_p = C_{p-1}`` with differential ``-d``."""
    for _ in range(times):
        m = C.lattice_rank
        bds = (PolyMatrix.zeros(0, C.rank(0), m),) + tuple(-d for d in C.boundaries)
        C = FreeComplex(m, (0,) + C.ranks, bds)
    return C


@dataclass(frozen=True)
class ChainMap:
    source: FreeComplex
    target: FreeComplex
    components: tuple  # components[p]: source C_p -> target C_p

    def component(self, p) -> PolyMatrix:
        if 0 <= p < len(self.components):
            return self.components[p]
        return PolyMatrix.zeros(self.target.rank(p), self.source.rank(p),
                                self.source.lattice_rank)


def validate_chain_map(f: ChainMap) -> List[str]:
    out = []
    S, T = f.source, f.target
    if S.lattice_rank != T.lattice_rank:
        return ["source and target live over different rings"]
    L = max(len(S.ranks), len(T.ranks))
    for p in range(L):
        c = f.component(p)
        if c.shape != (T.rank(p), S.rank(p)):
            out.append(f"f_{p} has shape {c.shape}, expected {(T.rank(p), S.rank(p))}")
    if out:
        return out
    for p in range(1, L):
        if T.boundary(p) @ f.component(p) != f.component(p - 1) @ S.boundary(p):
            out.append(f"d f_{p} != f_{p - 1} d in degree {p}")
    return out


def identity_map(C: FreeComplex) -> ChainMap:
    comps = tuple(PolyMatrix.identity(r, C.lattice_rank) for r in C.ranks)
    return ChainMap(C, C, comps)


def zero_map(S: FreeComplex, T: FreeComplex) -> ChainMap:
    L = max(len(S.ranks), len(T.ranks))
    comps = tuple(PolyMatrix.zeros(T.rank(p), S.rank(p), S.lattice_rank) for p in range(L))
    return ChainMap(S, T, comps)


def mapping_cone(f: ChainMap) -> FreeComplex:
    """``Cone(f)_p = T_p + S_{p-1}`` with ``d(y, x) = (d y + f x, -d x)``."""
    bad = validate_chain_map(f)
    if bad:
        raise ComplexError("invalid chain map: " + "; ".join(bad))
    S, T = f.source, f.target
    m = S.lattice_rank
    L = max(len(T.ranks), len(S.ranks) + 1)
    ranks = tuple(T.rank(p) + S.rank(p - 1) for p in range(L))
    bds = []
    for p in range(1, L):
        top = [T.boundary(p), f.component(p - 1)]
        bottom = [PolyMatrix.zeros(S.rank(p - 2), T.rank(p), m), -S.boundary(p - 1)]
        bds.append(PolyMatrix.from_blocks([top, bottom], m))
    return FreeComplex(m, ranks, tuple(bds))


# ---------------------------------------------------------------------------
# model builders
# ---------------------------------------------------------------------------

def _as_poly(x, m):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x, m)
    return LaurentPoly.parse(x, m)


def free_model(i: int, s: int, lattice_rank: int = 1) -> FreeComplex:
    """``F(i, s)``: a free module of rank ``s`` in degree ``i``, zero boundary."""
    ranks = (0,) * i + (s,)
    bds = tuple(PolyMatrix.zeros(ranks[p - 1], ranks[p], lattice_rank) for p in range(1, i + 1))
    return FreeComplex(lattice_rank, ranks, bds)


def tau(rho, i: int, lattice_rank: Optional[int] = None) -> FreeComplex:
    """``0 <- L <-rho- L <- 0`` in degrees ``[i, i+1]``."""
    m = lattice_rank if lattice_rank is not None else getattr(rho, "nvars", 1)
    rho = _as_poly(rho, m)
    ranks = (0,) * i + (1, 1)
    bds = [PolyMatrix.zeros(ranks[p - 1], ranks[p], m) for p in range(1, i + 1)]
    bds.append(PolyMatrix([[rho]], m))
    return FreeComplex(m, ranks, tuple(bds))


def tau_basic(rho, i: int, lattice_rank: Optional[int] = None) -> FreeComplex:
    """Standard basic form of ``tau``; ``rho`` must be polynomial in the last variable."""
    C = tau(rho, i, lattice_rank)
    rho = C.boundaries[-1][0, 0]
    if rho.nvars and rho and rho.min_exponents()[-1] < 0:
        raise ComplexError(f"{rho} has negative powers of t; not a basic subcomplex")
    return C


def principal(b: Sequence[int], a: Sequence[Sequence], lattice_rank: int = 1) -> FreeComplex:
    """Principal model ``sum_i (F(i, b_i) + sum_s tau(a_s^(i), i))``.

    Every ``a_s^(i)`` must be non-zero and not monic (in the last variable),
    and ``a_s^(i)`` must divide ``a_{s+1}^(i)``.
    """
    m = lattice_rank
    degrees = max(len(b), len(a))
    parts = []
    for i in range(degrees):
        bi = b[i] if i < len(b) else 0
        ai = [_as_poly(x, m) for x in (a[i] if i < len(a) else [])]
        for s, x in enumerate(ai):
            if x.is_zero():
                raise ComplexError(f"a_{s + 1}^({i}) is zero")
            if classify(x).is_monic:
                raise ComplexError(
                    f"a_{s + 1}^({i}) = {x} is monic: its lowest t-coefficient is a unit, "
                    "so the torsion summand is invisible over Z((t)); principal models "
                    "require non-monic torsion coefficients")
        for s in range(len(ai) - 1):
            if not divides(ai[s], ai[s + 1]):
                raise ComplexError(f"a_{s + 1}^({i}) = {ai[s]} does not divide "
                                   f"a_{s + 2}^({i}) = {ai[s + 1]}")
        if bi:
            parts.append(free_model(i, bi, m))
        parts.extend(tau(x, i, m) for x in ai)
    return direct_sum_all(parts, m)


def build(model: str, **kw) -> FreeComplex:
    """Dispatch by model name: ``F``, ``tau``, ``tau_basic`` or ``principal``."""
    builders = {"F": free_model, "free": free_model, "tau": tau,
                "tau_basic": tau_basic, "principal": principal}
    try:
        fn = builders[model]
    except KeyError:
        raise ComplexError(f"unknown model {model!r}") from None
    return require_valid(fn(**kw))


# ---------------------------------------------------------------------------
# base change
# ---------------------------------------------------------------------------

def base_change(C: FreeComplex, images: Sequence, target_rank: int) -> FreeComplex:
    """Apply the ring map sending generator ``t_i`` to the unit ``images[i]``.

    Images are Laurent monomials ``±g`` in ``target_rank`` variables (``1`` for
    the augmentation).
    """
    if len(images) != C.lattice_rank:
        raise LatticeRankError(f"need {C.lattice_rank} generator images, got {len(images)}")
    imgs = []
    for x in images:
        x = _as_poly(x, target_rank)
        if x.nvars != target_rank:
            raise LatticeRankError("image lives in the wrong ring")
        if not x.is_unit():
            raise ComplexError(f"image {x} is not a unit ±g; use the cover oracles "
                               "for matrix-valued substitutions")
        imgs.append(x.items()[0])

    def sub(p: LaurentPoly) -> LaurentPoly:
        out: dict = {}
        for e, c in p.terms.items():
            coeff = c
            exp = [0] * target_rank
            for (ge, gc), k in zip(imgs, e):
                if k:
                    coeff *= gc ** abs(k)
                    for j in range(target_rank):
                        exp[j] += k * ge[j]
            key = tuple(exp)
            out[key] = out.get(key, 0) + coeff
        return LaurentPoly(out, target_rank)

    return C.map_entries(sub, target_rank)


def augmentation(C: FreeComplex, keep: Sequence[int]) -> FreeComplex:
    """Send every generator not in ``keep`` to 1; kept ones become the new variables in order."""
    k = len(keep)
    images = []
    for i in range(C.lattice_rank):
        if i in keep:
            images.append(LaurentPoly.var(list(keep).index(i), k))
        else:
            images.append(LaurentPoly.constant(1, k))
    return base_change(C, images, k)
