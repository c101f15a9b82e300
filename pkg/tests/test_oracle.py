import random
from fractions import Fraction

import pytest

from morseasym import (FreeComplex, LaurentPoly, LatticeRankError, OracleRefused, PolyMatrix,
                       basic_subcomplex, cyclic_cover_Z, direct_sum, finite_quotient_Z,
                       homology_Z, banded_unit_check, make_complex, morse_number_Z, mu_series,
                       slope_fit, tau, tau_basic, validate)
from morseasym.oracle import banded_matrix
from strategies import random_int_matrix

P = LaurentPoly.parse


def int_complex(ranks, mats):
    return FreeComplex(0, tuple(ranks), tuple(PolyMatrix.from_ints(A, 0, (ranks[p], ranks[p + 1]))
                                           for p, A in enumerate(mats)))


def test_homology_of_small_integer_complexes():
    C = int_complex([1, 1], [[[2]]])
    H = homology_Z(C)
    assert H.betti == [0, 0] and H.torsion == [[2], []]
    assert morse_number_Z(C) == 2
    C = int_complex([1, 1], [[[0]]])
    assert morse_number_Z(C) == 2
    C = int_complex([1, 1], [[[1]]])
    assert morse_number_Z(C) == 0
    with pytest.raises(LatticeRankError):
        homology_Z(tau("t", 0))


# --- brute force: cancel unit entries after elementary basis changes --------

def _cancel(mats, ranks, p, i, j):
    """Cancel generator j of C_p against generator i of C_{p-1} through d_p[i][j] = ±1."""
    d = [list(map(list, A)) for A in mats]
    A = d[p - 1]
    u = A[i][j]
    # clear column j and row i of d_p by Gaussian steps over the unit pivot
    for r in range(len(A)):
        if r != i and A[r][j]:
            f = A[r][j] * u
            A[r] = [x - f * y for x, y in zip(A[r], A[i])]
            if p >= 2:  # row op on C_{p-1}: compensating column op on d_{p-1}
                B = d[p - 2]
                for row in B:
                    row[i] += f * row[r]
    for c in range(len(A[0])):
        if c != j and A[i][c]:
            f = A[i][c] * u
            for row in A:
                row[c] -= f * row[j]
            if p < len(d):
                B = d[p]
                B[j] = [x + f * y for x, y in zip(B[j], B[c])]
    d[p - 1] = [[x for cc, x in enumerate(row) if cc != j] for rr, row in enumerate(A) if rr != i]
    if p >= 2:
        d[p - 2] = [[x for cc, x in enumerate(row) if cc != i] for row in d[p - 2]]
    if p < len(d):
        d[p] = [row for rr, row in enumerate(d[p]) if rr != j]
    new_ranks = list(ranks)
    new_ranks[p] -= 1
    new_ranks[p - 1] -= 1
    return d, new_ranks


def brute_force_morse(ranks, mats, budget=3000):
    """Smallest total rank reachable by +-1 basis changes and unit cancellations."""
    start = (tuple(ranks), tuple(tuple(map(tuple, A)) for A in mats))
    best = sum(ranks)
    seen = {start}
    frontier = [start]
    while frontier and len(seen) < budget:
        nxt = []
        for rk, ms in frontier:
            mats_l = [list(map(list, A)) for A in ms]
            best = min(best, sum(rk))
            moves = []
            for p in range(1, len(rk)):
                A = mats_l[p - 1]
                for i in range(rk[p - 1]):
                    for j in range(rk[p]):
                        if abs(A[i][j]) == 1:
                            moves.append(_cancel(mats_l, rk, p, i, j))
            for p in range(len(rk)):
                for a in range(rk[p]):
                    for b in range(rk[p]):
                        if a == b:
                            continue
                        for s in (1, -1):
                            # e_a' = e_a + s e_b
                            d = [list(map(list, A)) for A in mats_l]
                            if p >= 1:
                                for row in d[p - 1]:
                                    row[a] += s * row[b]
                            if p < len(d):
                                d[p][b] = [x - s * y for x, y in zip(d[p][b], d[p][a])]
                            if all(abs(x) <= 8 for A in d for row in A for x in row):
                                moves.append((d, list(rk)))
            for d, r in moves:
                key = (tuple(r), tuple(tuple(map(tuple, A)) for A in d))
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
        frontier = nxt
    return best


def random_int_complex(rng):
    """d_1 d_2 = 0 by construction: d_2 spans part of the kernel of d_1."""
    r0, r1, r2 = rng.randint(0, 2), rng.randint(1, 2), rng.randint(0, 1)
    d1 = random_int_matrix(rng, r0, r1, bound=3)
    if r0 == 0:
        d1 = [[] for _ in range(0)]
    # kernel vector of d1 (r1 <= 2) by hand
    if r2:
        if r0 == 0 or r1 == 1 and all(row[0] == 0 for row in d1):
            v = [rng.randint(-3, 3) for _ in range(r1)]
        elif r1 == 2:
            a = [row[0] for row in d1]
            b = [row[1] for row in d1]
            cand = (b[0], -a[0]) if r0 >= 1 else (1, 0)
            v = list(cand) if all(x * cand[0] + y * cand[1] == 0 for x, y in zip(a, b)) else [0, 0]
            v = [rng.randint(1, 3) * x for x in v]
        else:
            v = [0]
        d2 = [[x] for x in v]
    else:
        d2 = None
    ranks = [r0, r1] + ([r2] if r2 else [])
    mats = [d1 if r0 else []] + ([d2] if d2 is not None else [])
    return ranks, mats


def test_morse_number_matches_brute_force():
    rng = random.Random(7)
    checked = 0
    while checked < 25:
        ranks, mats = random_int_complex(rng)
        C = int_complex(ranks, mats)
        if validate(C):
            continue
        assert brute_force_morse(ranks, mats) == morse_number_Z(C), (ranks, mats)
        checked += 1


# --- mu-series and fits --------------------------------------------------------

def test_mu_series_examples():
    assert mu_series(basic_subcomplex(tau_basic("2+2*t", 0)), 8).values == [2 * k for k in range(1, 9)]
    assert mu_series(basic_subcomplex(tau_basic("2+t", 0)), 8).values == [2] * 8
    assert mu_series(basic_subcomplex(tau_basic("1+t", 0)), 8).values == [0] * 8
    s = mu_series(tau_basic("2+2*t", 0), 3)
    assert s[3] == 6 and s.K == 3 and s.subadditivity_violations() == []


def test_mu_series_refuses_kernel_rank():
    with pytest.raises(OracleRefused):
        mu_series(tau("t1+t2", 0, 2), 3)


def test_slope_fit_exact_line_and_intercept():
    fit = slope_fit([3 * k + 5 for k in range(1, 11)])
    assert fit.slope == 3 and fit.max_deviation == 5 and fit.window == (1, 10)


def test_slope_fit_rational_slope():
    vals = [k // 2 for k in range(1, 13)]  # 0,1,1,2,2,...
    fit = slope_fit(vals)
    assert fit.slope == Fraction(1, 2)
    assert isinstance(fit.max_deviation, Fraction)


def test_slope_fit_burnin_and_short_window():
    vals = [0, 0, 0, 4, 6, 8, 10, 12]
    assert slope_fit(vals, 3).slope == 2
    with pytest.raises(ValueError):
        slope_fit(vals, 5)


def test_slope_fit_is_minimax():
    rng = random.Random(3)
    for _ in range(20):
        vals = [2 * k + rng.randint(-2, 2) for k in range(1, 9)]
        fit = slope_fit(vals)
        pts = list(enumerate(vals, start=1))
        width = lambda s: (max(y - s * k for k, y in pts) - min(y - s * k for k, y in pts)) / 2
        grid = [Fraction(n, 12) for n in range(0, 60)]
        assert all(width(fit.slope) <= width(s) for s in grid)


# --- covers -----------------------------------------------------------------------

def test_cyclic_cover_examples():
    for k in range(1, 6):
        assert morse_number_Z(cyclic_cover_Z(tau("t-1", 0), k)) == 2
        assert morse_number_Z(cyclic_cover_Z(tau("2+2*t", 0), k)) == 2 * k
    assert cyclic_cover_Z(tau("2+2*t", 0), 3).boundary(1).to_ints() == \
        [[2, 0, 2], [2, 2, 0], [0, 2, 2]]
    with pytest.raises(LatticeRankError):
        cyclic_cover_Z(tau("t1", 0, 2), 2)


def test_finite_quotient_shape_and_value():
    C = direct_sum(tau("2+2*t1", 0, 2), tau("t2-1", 0, 2))
    Z = finite_quotient_Z(C, 2)
    assert Z.ranks == (8, 8)
    assert morse_number_Z(Z) == 2 * 4 + 2 * 2
    assert morse_number_Z(finite_quotient_Z(tau("t1-1", 0, 1), 4)) == 2


def test_cover_commutes_with_homology_rank_one():
    # k = 1 cover is the augmentation t -> 1
    C = make_complex(1, [1, 2, 1], [[["1-t", "2+2*t"]], [["2+2*t"], ["t-1"]]])
    from morseasym import augmentation
    assert morse_number_Z(cyclic_cover_Z(C, 1)) == morse_number_Z(augmentation(C, []))


# --- banded determinantal check ---------------------------------------------------

def test_banded_unit_check():
    r = banded_unit_check(P("2+3*t"), 15)
    assert r.preconditions_hold and all(r.unit_ideal)
    r = banded_unit_check(P("2+2*t"), 4)
    assert not r.numerically_prime and not r.preconditions_hold
    assert r.kth_divisor[0] == 2 and not any(r.unit_ideal)
    assert banded_matrix([2, 3], 2) == [[2, 0, 0], [3, 2, 0], [0, 3, 2]]
    with pytest.raises(ValueError):
        banded_unit_check(P("t^-1+2"), 3)
