import itertools
import random
from math import comb

import pytest

from dpinv.exactla import ExactMatrix
from dpinv.freering import Alphabet, FreePoly, parse_freepoly, word_from_str
from dpinv.gamma import (ContextError, DPMonomial, GammaElement,
                         enumerate_dp_monomials, tau)
from dpinv.invariants import CommPoly, MatrixInvariants, charpoly_coeffs

AB = Alphabet("xy")
X = word_from_str("x", AB)
Y = word_from_str("y", AB)
XX = word_from_str("xx", AB)


def inv(n):
    return MatrixInvariants.get(AB, n)


def test_generic_matrix_entries():
    z = inv(2).generic_matrix("x")
    assert [[e.to_str() for e in row] for row in z.entries] == \
        [["x[x][1][1]", "x[x][1][2]"], ["x[x][2][1]", "x[x][2][2]"]]
    z1 = inv(1).generic_matrix("x")
    assert z1.entries[0][0].to_str() == "x[x][1][1]"
    with pytest.raises(KeyError):
        inv(2).generic_matrix("q")


def test_distinct_letters_use_disjoint_variables():
    zx = inv(2).generic_matrix("x")
    zy = inv(2).generic_matrix("y")
    keys_x = {k for row in zx.entries for p in row for k in p.terms}
    keys_y = {k for row in zy.entries for p in row for k in p.terms}
    assert keys_x.isdisjoint(keys_y)


def test_jn_eval_is_a_ring_map():
    ctx = inv(2)
    f = parse_freepoly("x*y - y*x", AB)
    direct = ctx.jn_eval(f)
    zx, zy = ctx.generic_matrix("x"), ctx.generic_matrix("y")
    assert direct == zx * zy - zy * zx
    assert ctx.jn_eval(FreePoly.one()).entries[0][0].to_str() == "1"
    assert ctx.jn_eval(FreePoly.letter(0)) == zx


def int_charpoly_oracle(m):
    """det(tI - m) by cofactor expansion with dense int coefficient lists
    (index = power of t); completely independent of the library path."""

    def pmul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return out

    def padd(a, b):
        out = [0] * max(len(a), len(b))
        for i, ai in enumerate(a):
            out[i] += ai
        for j, bj in enumerate(b):
            out[j] += bj
        return out

    def det(rows):
        n = len(rows)
        if n == 1:
            return rows[0][0]
        acc = [0]
        for j in range(n):
            sub = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = pmul(rows[0][j], det(sub))
            if j % 2:
                term = [-c for c in term]
            acc = padd(acc, term)
        return acc

    n = len(m)
    rows = [[[-m[i][j], 1] if i == j else [-m[i][j]] for j in range(n)]
            for i in range(n)]
    return det(rows)


def test_charpoly_on_identity():
    for n in (1, 2, 3, 4):
        eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        assert charpoly_coeffs(eye) == [comb(n, i) for i in range(n + 1)]


def test_charpoly_against_cofactor_oracle():
    rng = random.Random(99)
    for n in (2, 3, 4):
        for _ in range(40):
            m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
            es = charpoly_coeffs(m)
            poly = int_charpoly_oracle(m)
            # det(tI - m) = sum (-1)^i e_i t^(n-i)
            expected = [(-1) ** i * es[i] for i in range(n + 1)]
            assert poly == list(reversed(expected))
            assert es[1] == sum(m[i][i] for i in range(n))
            assert es[n] == cofactor_int_det(m)


def cofactor_int_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j]
               * cofactor_int_det([r[:j] + r[j + 1:] for r in m[1:]])
               for j in range(n))


def test_charpoly_generic_2x2():
    ctx = inv(2)
    es = charpoly_coeffs(ctx.generic_matrix("x"))
    assert es[1].to_str() == "x[x][1][1] + x[x][2][2]"
    assert es[2] == ctx.pi_monomial(DPMonomial.single(X, 2))


def test_multidet_coeff_edge_cases():
    ctx = inv(2)
    zx = ctx.generic_matrix("x")
    one = ctx.multidet_coeff([zx], (0,))
    assert one == CommPoly.const(ctx.ring, 1)
    assert ctx.multidet_coeff([zx], (3,)).is_zero()
    for i in (1, 2):
        assert ctx.multidet_coeff([zx], (i,)) == charpoly_coeffs(zx)[i]


def test_multidet_polarization_2x2():
    # coefficient of t1 t2 in det(t0 + t1 X + t2 Y) is tr X tr Y - tr(XY)
    ctx = inv(2)
    zx, zy = ctx.generic_matrix("x"), ctx.generic_matrix("y")
    mixed = ctx.multidet_coeff([zx, zy], (1, 1))
    trx = zx.trace()
    try_ = zy.trace()
    trxy = (zx * zy).trace()
    assert mixed == trx * try_ - trxy


def test_pi_examples():
    ctx = inv(2)
    trace = ctx.pi_n_eval(GammaElement.monomial(DPMonomial.single(X), 2))
    assert trace == ctx.generic_matrix("x").trace()
    det = ctx.pi_monomial(DPMonomial.single(X, 2))
    zx = ctx.generic_matrix("x")
    assert det == charpoly_coeffs(zx)[2]
    # the 2x2 closed identity tr^2 = tr(X^2) + 2 det
    gx = GammaElement.monomial(DPMonomial.single(X), 2)
    lhs = ctx.pi_n_eval(tau(gx, gx))
    rhs = ctx.pi_n_eval(GammaElement({DPMonomial.single(XX): 1,
                                      DPMonomial.single(X, 2): 2}, 2))
    assert lhs == rhs == trace * trace


def test_pi_context_mismatch():
    ctx = inv(2)
    with pytest.raises(ContextError):
        ctx.pi_n_eval(GammaElement.monomial(DPMonomial.single(X), 3))


def all_level_monomials(max_total, n):
    out = [DPMonomial.one()]
    for t in range(1, max_total + 1):
        for d in [(a, t - a) for a in range(t + 1)]:
            out.extend(m for m in enumerate_dp_monomials(d, n))
    return out


def test_pi_multiplicative_exhaustive_n2():
    ctx = inv(2)
    monos = all_level_monomials(3, 2)
    cache = {m: ctx.pi_monomial(m) for m in monos}
    for u, v in itertools.product(monos, repeat=2):
        if sum(u.multidegree(2)) + sum(v.multidegree(2)) > 3:
            continue
        gu = GammaElement.monomial(u, 2)
        gv = GammaElement.monomial(v, 2)
        assert ctx.pi_n_eval(tau(gu, gv)) == cache[u] * cache[v]


def test_e_homogeneity():
    ctx = inv(2)
    for word in (X, Y, XX, word_from_str("xy", AB)):
        wd = word.multidegree(2)
        for i in (1, 2):
            p = ctx.e_poly(word, i)
            want = tuple(i * c for c in wd)
            for key in p.terms:
                exps = ctx.ring.unpack(key)
                seen = [0, 0]
                for s in range(2):
                    for a in range(2):
                        for b in range(2):
                            seen[s] += exps[ctx.ring.x_index(s, a + 1, b + 1)]
                assert tuple(seen) == want


def test_invariant_span_examples():
    assert [p.to_str() for p in inv(1).invariant_span((2, 1))] == \
        ["x[x][1][1]^2*x[y][1][1]"]
    span = inv(2).invariant_span((2, 0))
    keys = sorted({k for p in span for k in p.terms})
    cols = {k: i for i, k in enumerate(keys)}
    rows = [p.coeff_vector(cols) for p in span]
    assert len(span) == 3
    assert ExactMatrix(rows, len(cols)).rank() == 2
    assert inv(2).invariant_span((0, 0)) == [CommPoly.const(inv(2).ring, 1)]


def test_covariant_span_small():
    ctx = inv(2)
    cov = ctx.covariant_span((1, 0))
    # e_1(x) * I and the generic matrix itself
    assert any(m == ctx.generic_matrix("x") for m in cov)
    assert len(cov) == 2


def random_specialization(rng, nletters, n):
    mats = [[[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            for _ in range(nletters)]
    flat = [a for m in mats for row in m for a in row]
    return mats, flat


def test_conjugation_invariance_randomized():
    rng = random.Random(2718)
    for n in (2, 3):
        ctx = MatrixInvariants.get(AB, n)
        span = ctx.invariant_span((1, 1))
        for _ in range(5):
            mats, flat = random_specialization(rng, 2, n)
            g = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            for _ in range(4):
                i, j = rng.randrange(n), rng.randrange(n)
                if i != j:
                    c = rng.choice((-2, -1, 1, 2))
                    for k in range(n):
                        g[j][k] += c * g[i][k]
            det = cofactor_int_det(g)
            assert det in (1, -1)
            from fractions import Fraction
            ginv = [[Fraction((-1) ** (i + j) * cofactor_int_det(
                [row[:i] + row[i + 1:] for k, row in enumerate(g) if k != j]),
                det) for j in range(n)] for i in range(n)]

            def mul(a, b):
                return [[sum(a[i][k] * b[k][j] for k in range(n))
                         for j in range(n)] for i in range(n)]

            conj_flat = []
            for m in mats:
                c = mul(mul(g, m), ginv)
                conj_flat.extend(int(x) for row in c for x in row)
            for p in span:
                assert p.evaluate(flat) == p.evaluate(conj_flat)


def test_covariants_are_equivariant():
    # the defining property: F(g X g^-1, g Y g^-1) = g F(X, Y) g^-1 for
    # every covariant span element, at random integer specializations
    rng = random.Random(424242)
    n = 2
    ctx = inv(n)
    cov = ctx.covariant_span((1, 1))
    for _ in range(4):
        mats, flat = random_specialization(rng, 2, n)
        g = [[1, rng.randint(-2, 2)], [0, 1]]
        gi = [[1, -g[0][1]], [0, 1]]

        def mul(a, b):
            return [[sum(a[i][k] * b[k][j] for k in range(n))
                     for j in range(n)] for i in range(n)]

        conj_flat = []
        for m in mats:
            conj_flat.extend(x for row in mul(mul(g, m), gi) for x in row)
        for f in cov:
            lhs = f.evaluate(conj_flat)
            rhs = mul(mul(g, f.evaluate(flat)), gi)
            assert lhs == rhs


def test_pi_agrees_with_numeric_trace_and_det():
    # independent numeric oracle: specialize and compare against integer
    # matrix arithmetic
    rng = random.Random(5)
    ctx = inv(2)
    g_xy = GammaElement.monomial(DPMonomial.single(word_from_str("xy", AB)), 2)
    p = ctx.pi_n_eval(g_xy)
    for _ in range(25):
        mats, flat = random_specialization(rng, 2, 2)
        xy = [[sum(mats[0][i][k] * mats[1][k][j] for k in range(2))
               for j in range(2)] for i in range(2)]
        assert p.evaluate(flat) == xy[0][0] + xy[1][1]
