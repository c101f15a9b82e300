"""Hypothesis strategies and small generators shared by the tests."""
from hypothesis import strategies as st

from morseasym import LaurentPoly
from morseasym.complex import direct_sum_all, free_model, tau
from morseasym.matrix import PolyMatrix


def polys(nvars=1, max_terms=4, coeff=5, exp_lo=-2, exp_hi=3):
    term = st.tuples(st.tuples(*[st.integers(exp_lo, exp_hi)] * nvars),
                     st.integers(-coeff, coeff))
    return st.lists(term, max_size=max_terms).map(lambda ts: _sum_terms(ts, nvars))


def _sum_terms(ts, nvars):
    out = {}
    for e, c in ts:
        out[e] = out.get(e, 0) + c
    return LaurentPoly(out, nvars)


def nonzero_polys(**kw):
    return polys(**kw).filter(lambda p: not p.is_zero())


def random_poly(rng, nvars=1, max_terms=3, coeff=5, exp_lo=0, exp_hi=2):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = tuple(rng.randint(exp_lo, exp_hi) for _ in range(nvars))
        terms[e] = terms.get(e, 0) + rng.randint(-coeff, coeff)
    return LaurentPoly(terms, nvars)


def random_poly_matrix(rng, rows, cols, nvars=1, **kw):
    return PolyMatrix([[random_poly(rng, nvars, **kw) for _ in range(cols)]
                       for _ in range(rows)], nvars, (rows, cols))


def random_int_matrix(rng, rows, cols, bound=9, density=0.7):
    return [[rng.randint(-bound, bound) if rng.random() < density else 0
             for _ in range(cols)] for _ in range(rows)]


def random_univariate_complex(rng, max_total=6, height=5):
    """A sum of elementary models conjugated by random elementary basis changes."""
    parts = []
    total = 0
    while total < max_total:
        kind = rng.random()
        if kind < 0.3 and total + 1 <= max_total:
            parts.append(free_model(rng.randint(0, 2), 1))
            total += 1
        elif total + 2 <= max_total:
            rho = LaurentPoly({(j,): rng.randint(-height, height) for j in range(rng.randint(1, 3))}, 1)
            if rho.is_zero():
                rho = LaurentPoly({(0,): 2, (1,): 2}, 1)
            parts.append(tau(rho, rng.randint(0, 1), 1))
            total += 2
        else:
            break
        if rng.random() < 0.3:
            break
    C = direct_sum_all(parts, 1)
    return conjugate(C, rng)


def conjugate(C, rng, steps=3):
    """Change basis in each degree by elementary matrices I + c t^j E_ab (a != b)."""
    from morseasym.complex import FreeComplex
    bds = list(C.boundaries)
    for p, r in enumerate(C.ranks):
        if r < 2:
            continue
        for _ in range(steps):
            a, b = rng.sample(range(r), 2)
            c = LaurentPoly({(rng.randint(0, 1),): rng.choice([-1, 1])}, 1)
            E = [[LaurentPoly.constant(int(i == j), 1) for j in range(r)] for i in range(r)]
            Einv = [row[:] for row in E]
            E[a][b] = c
            Einv[a][b] = -c
            E, Einv = PolyMatrix(E, 1), PolyMatrix(Einv, 1)
            # new basis e' = E e: d_p -> E^-1 d_p on the target side, d_{p+1} -> ... E
            if p >= 1:
                bds[p - 1] = bds[p - 1] @ E
            if p < len(bds):
                bds[p] = Einv @ bds[p]
    return FreeComplex(1, C.ranks, tuple(bds))
