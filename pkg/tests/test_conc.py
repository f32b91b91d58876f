import json
import random
from fractions import Fraction

import pytest

from quartics import conc, rep3
from quartics.conc import (Concomitant, Conic, TernaryQuartic, concomitant,
                           evaluate, expand_concomitant, flip_xhat, gl3_act,
                           highest_weight_vectors, pair, universal_quartic)
from quartics.rep3 import EXPONENTS, INDEX, NFACT


def mono(*pairs):
    m = [0] * 15
    for idx, e in pairs:
        m[idx] += e
    return tuple(m)


# Salmon's sigma: the four displayed coordinate blocks (hat-monomial: poly)
SIGMA_BLOCKS = {
    (4, 0, 0): {mono((10, 1), (14, 1)): 1, mono((11, 1), (13, 1)): -4,
                mono((12, 2)): 3},
    (3, 1, 0): {mono((9, 1), (11, 1)): 4, mono((8, 1), (12, 1)): -12,
                mono((7, 1), (13, 1)): 12, mono((6, 1), (14, 1)): -4},
    (3, 0, 1): {mono((9, 1), (10, 1)): -4, mono((8, 1), (11, 1)): 12,
                mono((7, 1), (12, 1)): -12, mono((6, 1), (13, 1)): 4},
    (2, 2, 0): {mono((5, 1), (12, 1)): 6, mono((4, 1), (13, 1)): -12,
                mono((3, 1), (14, 1)): 6, mono((7, 1), (9, 1)): -12,
                mono((8, 2)): 12},
}

# the degree-3 invariant iota, all 23 printed terms
IOTA = {
    mono((0, 1), (10, 1), (14, 1)): 1, mono((0, 1), (11, 1), (13, 1)): -4,
    mono((0, 1), (12, 2)): 3, mono((1, 1), (11, 1), (9, 1)): 4,
    mono((1, 1), (12, 1), (8, 1)): -12, mono((1, 1), (13, 1), (7, 1)): 12,
    mono((1, 1), (14, 1), (6, 1)): -4, mono((10, 1), (2, 1), (9, 1)): -4,
    mono((10, 1), (5, 2)): 3, mono((11, 1), (2, 1), (8, 1)): 12,
    mono((11, 1), (4, 1), (5, 1)): -12, mono((12, 1), (2, 1), (7, 1)): -12,
    mono((12, 1), (3, 1), (5, 1)): 6, mono((12, 1), (4, 2)): 12,
    mono((13, 1), (2, 1), (6, 1)): 4, mono((13, 1), (3, 1), (4, 1)): -12,
    mono((14, 1), (3, 2)): 3, mono((3, 1), (7, 1), (9, 1)): -12,
    mono((3, 1), (8, 2)): 12, mono((4, 1), (6, 1), (9, 1)): 12,
    mono((4, 1), (7, 1), (8, 1)): -12, mono((5, 1), (6, 1), (8, 1)): -12,
    mono((5, 1), (7, 2)): 12,
}


def poly_ratio(p, q):
    """p == r*q for a single rational r; returns r or None."""
    if set(p) != set(q):
        return None
    r = None
    for m, c in p.items():
        rr = Fraction(c) / Fraction(q[m])
        if r is None:
            r = rr
        elif r != rr:
            return None
    return r


def test_universal_quartic_coordinates():
    f = universal_quartic()
    for n, I in enumerate(EXPONENTS):
        poly = f.coords[(I, (0, 0, 0))]
        assert poly == {mono((n, 1)): NFACT[n]}


def test_hwv_multiplicities_match_plethysm():
    for d in (1, 2, 3):
        table = rep3.plethysm_sym_sym4(d)
        for lam, mult in table.items():
            assert len(highest_weight_vectors(d, lam)) == mult


def test_hwv_weight_sum_mismatch():
    with pytest.raises(rep3.WeightError):
        highest_weight_vectors(2, (4, 2, 0))


def test_sigma_matches_printed_blocks_up_to_one_scalar():
    sigma = concomitant(2, (4, 4, 0))
    scalar = None
    for beta, expected in SIGMA_BLOCKS.items():
        got = sigma.coords[((0, 0, 0), beta)]
        r = poly_ratio(got, expected)
        assert r is not None, f"sigma block {beta} mismatch"
        scalar = r if scalar is None else scalar
        assert r == scalar
    assert scalar != 0


def test_iota_matches_printed_invariant_up_to_scalar():
    iota = concomitant(3, (4, 4, 4))
    got = iota.coords[((0, 0, 0), (0, 0, 0))]
    assert poly_ratio(got, IOTA) not in (None, 0)


def test_pair_f_sigma_equals_iota():
    f = universal_quartic()
    sigma = concomitant(2, (4, 4, 0))
    prod = pair(f, sigma)
    got = prod.coords[((0, 0, 0), (0, 0, 0))]
    r = poly_ratio(got, IOTA)
    assert r is not None and r != 0
    # consistency: the pairing inherits exactly sigma's scalar
    s = poly_ratio(sigma.coords[((0, 0, 0), (4, 0, 0))], SIGMA_BLOCKS[(4, 0, 0)])
    assert r == s == 1


def test_pair_with_zero():
    f = universal_quartic()
    zero = Concomitant(2, (4, 4, 0), {})
    assert pair(f, zero).coords[((0, 0, 0), (0, 0, 0))] == {}


def test_pair_fermat_self_flip():
    # sum of n_I a_I^2 over the three Fermat slots, times the recorded
    # contraction constant
    f = universal_quartic()
    val = evaluate(pair(f, flip_xhat(f)), conc.FERMAT)
    assert val[((0, 0, 0), (0, 0, 0))] == 3 * conc.PAIRING_CONSTANT


def test_f_squared_concomitant():
    fsq = concomitant(2, (8, 0, 0))
    f = universal_quartic()
    oracle = f * f
    # both are multiples of each other coordinatewise with one scalar
    scalar = None
    for alpha in conc.monomials_of_degree(8):
        got = fsq.coords[(alpha, (0, 0, 0))]
        exp = oracle.coords.get((alpha, (0, 0, 0)), {})
        if not exp:
            assert not got
            continue
        r = poly_ratio(got, exp)
        assert r is not None
        scalar = r if scalar is None else scalar
        assert r == scalar


def test_evaluate_iota_and_sigma_on_fermat():
    iota = concomitant(3, (4, 4, 4))
    s = poly_ratio(iota.coords[((0, 0, 0), (0, 0, 0))], IOTA)
    val = evaluate(iota, conc.FERMAT)[((0, 0, 0), (0, 0, 0))]
    assert val == s * 1  # a0*a10*a14 is the only surviving term
    sigma = concomitant(2, (4, 4, 0))
    ssig = poly_ratio(sigma.coords[((0, 0, 0), (4, 0, 0))], SIGMA_BLOCKS[(4, 0, 0)])
    vals = evaluate(sigma, conc.FERMAT)
    assert vals[((0, 0, 0), (4, 0, 0))] == ssig  # a10*a14 = 1
    assert vals[((0, 0, 0), (3, 1, 0))] == 0


def test_gl3_act_identity_and_scaling():
    q = TernaryQuartic(range(1, 16))
    ident = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert gl3_act(ident, q) == q
    x4 = TernaryQuartic([1] + [0] * 14)
    out = gl3_act([[2, 0, 0], [0, 1, 0], [0, 0, 1]], x4)
    assert out.a[0] == 16 and all(c == 0 for c in out.a[1:])


def test_gl3_act_permutation_x_y():
    # x^3 y slot (a_1) maps to the y^3 x slot (a_6) with n_I preserved
    q = TernaryQuartic([0, 1] + [0] * 13)
    P = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    out = gl3_act(P, q)
    assert out.a[INDEX[(1, 3, 0)]] == 1
    assert sum(1 for c in out.a if c) == 1


def wedge_substitution(S):
    """Induced substitution matrix on (xh, yh, zh) from x_j -> sum_k S[k][j] x_k."""
    basis = [(1, 2), (2, 0), (0, 1)]  # xh = y^z, yh = z^x, zh = x^y
    W = [[Fraction(0)] * 3 for _ in range(3)]
    for j, (u, v) in enumerate(basis):
        for k in range(3):
            for l in range(3):
                c = S[k][u] * S[l][v]
                if k == l or not c:
                    continue
                pos, sign = None, 1
                for idx, (a, b) in enumerate(basis):
                    if (k, l) == (a, b):
                        pos, sign = idx, 1
                    elif (l, k) == (a, b):
                        pos, sign = idx, -1
                if pos is not None:
                    W[pos][j] += sign * c
    return W


def total_polynomial(c, values):
    """sum of value * x^alpha xh^beta as {(alpha, beta): value}."""
    return {k: v for k, v in values.items() if v}


def substitute_pairs(values, S):
    """Apply x/hat substitutions to a total polynomial {(alpha,beta): val}."""
    W = wedge_substitution(S)
    xs = [{(1, 0, 0): Fraction(S[0][i]), (0, 1, 0): Fraction(S[1][i]),
           (0, 0, 1): Fraction(S[2][i])} for i in range(3)]
    hs = [{(1, 0, 0): Fraction(W[0][i]), (0, 1, 0): Fraction(W[1][i]),
           (0, 0, 1): Fraction(W[2][i])} for i in range(3)]
    out = {}
    for (alpha, beta), val in values.items():
        term = {((0, 0, 0), (0, 0, 0)): Fraction(val)}
        for i in range(3):
            for _ in range(alpha[i]):
                nxt = {}
                for (am, bm), c in term.items():
                    for m, cc in xs[i].items():
                        key = (tuple(x + y for x, y in zip(am, m)), bm)
                        nxt[key] = nxt.get(key, 0) + c * cc
                term = nxt
            for _ in range(beta[i]):
                nxt = {}
                for (am, bm), c in term.items():
                    for m, cc in hs[i].items():
                        key = (am, tuple(x + y for x, y in zip(bm, m)))
                        nxt[key] = nxt.get(key, 0) + c * cc
                term = nxt
        for k, v in term.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("ctype", [(1, (4, 0, 0)), (2, (4, 4, 0)), (2, (6, 2, 0)),
                                   (3, (7, 4, 1))])
def test_sl3_equivariance_on_samples(ctype):
    d, lam = ctype
    c = concomitant(d, lam)
    rng = random.Random(11)
    for _ in range(3):
        # random SL3 via elementary shears
        S = [[Fraction(1), 0, 0], [0, Fraction(1), 0], [0, 0, Fraction(1)]]
        for _ in range(4):
            i, j = rng.sample(range(3), 2)
            t = Fraction(rng.randrange(-3, 4))
            T = [[Fraction(int(r == s)) for s in range(3)] for r in range(3)]
            T[i][j] = t
            S = [[sum(S[r][k] * T[k][s] for k in range(3)) for s in range(3)]
                 for r in range(3)]
        q = TernaryQuartic([rng.randrange(-5, 6) for _ in range(15)])
        lhs = total_polynomial(c, evaluate(c, gl3_act(S, q)))
        rhs = substitute_pairs(total_polynomial(c, evaluate(c, q)), S)
        assert lhs == rhs


def test_dc_order_examples():
    assert conc.order_along_DC(universal_quartic(), trials=2, seed=1) == 0
    assert conc.order_along_DC(concomitant(3, (9, 3, 0)), trials=2, seed=1) == 1
    assert conc.order_along_DC(concomitant(3, (7, 4, 1)), trials=2, seed=1) == 1


def test_dc_order_additivity_under_f():
    f = universal_quartic()
    for d, lam in ((2, (4, 4, 0)), (3, (7, 4, 1))):
        c = concomitant(d, lam)
        assert conc.order_along_DC(f * c, trials=2, seed=3) == \
            conc.order_along_DC(c, trials=2, seed=3)


def test_dc_order_zero_concomitant_errors():
    zero = Concomitant(2, (4, 4, 0), {((0, 0, 0), (4, 0, 0)): {}})
    with pytest.raises(ArithmeticError):
        conc.order_along_DC(zero, trials=1, seed=0)


def test_dc_filtered_dimension_examples():
    assert conc.dc_filtered_dimension(3, (9, 3, 0), 1, samples=3, seed=2) == 1
    assert conc.dc_filtered_dimension(2, (8, 0, 0), 1, samples=3, seed=2) == 0
    for lam in ((8, 0, 0), (6, 2, 0), (4, 4, 0)):
        assert conc.dc_filtered_dimension(2, lam, 0) == 1


def test_disc_evaluate_examples():
    fermat = [1 if EXPONENTS[n] in ((4, 0, 0), (0, 4, 0), (0, 0, 4)) else 0
              for n in range(15)]
    assert conc.disc_evaluate(fermat) != 0
    x4 = [1] + [0] * 14
    assert conc.disc_evaluate(x4) == 0
    g = Conic([1, 0, 0, 1, 0, 1])  # x^2 + y^2 + z^2
    p = conc.DEFAULT_MODULUS
    dconic = [conc._frac_mod(c, p) for c in conc.conic_square_coeffs(g)]
    assert conc.disc_evaluate(dconic, p=p) == 0


def test_concomitant_json_roundtrip():
    sigma = concomitant(2, (4, 4, 0))
    data = json.loads(json.dumps(sigma.to_json()))
    back = Concomitant.from_json(data)
    assert back.d == sigma.d and back.lam == sigma.lam
    for key, poly in sigma.coords.items():
        assert back.coords.get(key, {}) == {m: Fraction(c)
                                            for m, c in poly.items()}
