import math
import random
from itertools import combinations

import pytest
import sympy

from morseasym import LaurentPoly, PolyMatrix, det, rank_ff, smith_divisors, snf
from morseasym.matrix import (determinantal_divisors, int_rank, iter_minors, matmul,
                              minor_family_content)
from morseasym.ring import int_det
from strategies import random_int_matrix, random_poly_matrix

P = LaurentPoly.parse


def eval_rank(M, rng, trials=4):
    """Rank over Q at random integer points; equals the generic rank w.h.p."""
    best = 0
    for _ in range(trials):
        pt = [rng.choice([-1, 1]) * rng.randint(2, 40) for _ in range(M.nvars)]
        A = sympy.Matrix(M.rows, M.cols,
                         lambda i, j: sympy.Rational(M[i, j].evaluate(pt)) if M[i, j] else 0)
        best = max(best, A.rank())
    return best


def test_matrix_basics():
    A = PolyMatrix([["1+t", 0], [2, "t^-1"]], 1)
    B = PolyMatrix.identity(2, 1)
    assert A @ B == A
    assert (A + A) - A == A
    assert A.transpose()[0, 1] == 2
    assert PolyMatrix.from_ints([[1, 2]], 0).to_ints() == [[1, 2]]
    with pytest.raises(ValueError):
        A.to_ints()


def test_det_and_rank_examples():
    A = PolyMatrix([["1+t", "t"], ["1", "1-t"]], 1)
    assert det(A) == P("1-t-t^2")
    assert det(PolyMatrix([[2, 4], [1, 2]], 1)) == 0
    assert rank_ff(PolyMatrix([[2, 4], [1, 2]], 1)) == 1
    assert rank_ff(PolyMatrix.zeros(3, 2, 1)) == 0
    assert rank_ff(PolyMatrix.zeros(0, 2, 1)) == 0


def test_rank_against_random_evaluation():
    rng = random.Random(11)
    for _ in range(60):
        n, m, v = rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 2)
        M = random_poly_matrix(rng, n, m, v, max_terms=2, exp_lo=-1, exp_hi=1)
        # force rank deficiency now and then
        if n > 1 and rng.random() < 0.4:
            rows = M.tolist()
            rows[-1] = [a * P("1+t1" if v == 2 else "1+t", v) + b
                        for a, b in zip(rows[0], rows[1])]
            M = PolyMatrix(rows, v, (n, m))
        assert rank_ff(M) == eval_rank(M, rng)


def test_det_against_sympy():
    rng = random.Random(5)
    t = sympy.Symbol("t")
    for _ in range(30):
        n = rng.randint(1, 4)
        M = random_poly_matrix(rng, n, n, 1, max_terms=3)
        S = sympy.Matrix(n, n, lambda i, j: sum(c * t ** e[0] for e, c in M[i, j].items()))
        ref = sympy.Poly(sympy.expand(S.det()), t) if n else None
        got = det(M)
        want = LaurentPoly({(e[0],): int(c) for e, c in ref.terms()}, 1) if ref else 0
        assert got == want


def brute_minors(M, s):
    out = []
    for rows in combinations(range(M.rows), s):
        for cols in combinations(range(M.cols), s):
            out.append(det(M.submatrix(rows, cols)))
    return out


def test_minor_content_matches_full_enumeration():
    rng = random.Random(3)
    for _ in range(40):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        M = random_poly_matrix(rng, n, m, 1, max_terms=2, coeff=6)
        for s in range(1, min(n, m) + 1):
            full = 0
            for x in brute_minors(M, s):
                full = math.gcd(full, x.content())
            all_zero, content = minor_family_content(M, s)
            assert all_zero == (full == 0)
            assert content == full or (content == 1 and full == 1)


def test_iter_minors_order_and_edge_sizes():
    M = PolyMatrix([[1, 2, 3], [4, 5, 6]], 1)
    got = [(r, c) for r, c, _ in iter_minors(M, 2)]
    assert got == [((0, 1), (0, 1)), ((0, 1), (0, 2)), ((0, 1), (1, 2))]
    assert list(iter_minors(M, 3)) == []
    assert [x for _, _, x in iter_minors(M, 0)] == [1]
    assert minor_family_content(M, 0) == (False, 1)


@pytest.mark.parametrize("A, divisors", [
    ([[2, 0], [1, 2]], [1, 4]),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
    ([[0, 0], [0, 0]], []),
    ([[6]], [6]),
    ([[4, 0], [0, 6]], [2, 12]),
])
def test_snf_examples(A, divisors):
    assert snf(A).divisors == divisors
    assert smith_divisors(A) == divisors


def check_snf_contract(A):
    n, m = len(A), len(A[0]) if A else 0
    r = snf(A, m)
    assert matmul(matmul(r.U, A), r.V, m) == r.S if n and m else True
    assert int_det(r.U) in (1, -1) and int_det(r.V) in (1, -1)
    for i in range(n):
        for j in range(m):
            if i != j:
                assert r.S[i][j] == 0
    d = r.divisors
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
    assert [r.S[i][i] for i in range(len(d))] == d
    assert smith_divisors(A, m) == d
    return r


def test_snf_contract_random():
    rng = random.Random(2024)
    for _ in range(60):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        check_snf_contract(random_int_matrix(rng, n, m))


def test_determinantal_divisors_against_minors():
    rng = random.Random(9)
    for _ in range(25):
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        A = random_int_matrix(rng, n, m, bound=6)
        dd = determinantal_divisors(A, m)
        for k in range(1, min(n, m) + 1):
            g = 0
            for rows in combinations(range(n), k):
                for cols in combinations(range(m), k):
                    g = math.gcd(g, int_det([[A[i][j] for j in cols] for i in rows]))
            assert (dd[k - 1] if k <= len(dd) else 0) == g
        assert int_rank(A, m) == sympy.Matrix(A).rank()
