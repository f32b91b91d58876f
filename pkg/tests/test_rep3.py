from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quartics import rep3
from quartics.linalg import nullspace

# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def shear_images(xvar, yvar):
    """Coefficientwise effect on a_0..a_14 of the substitution xvar += eps*yvar.

    Independent derivation of the induced derivation on quartic coefficients:
    expand f(.., xvar + eps*yvar, ..) symbolically to first order in eps and
    re-read coefficients against the multinomial basis.
    """
    out = {}
    for n, I in enumerate(rep3.EXPONENTS):
        # d/deps of (monomial with xvar -> xvar + eps*yvar), first order
        e = I[xvar]
        if not e:
            continue
        J = list(I)
        J[xvar] -= 1
        J[yvar] += 1
        J = tuple(J)
        # n_I * e * x^J = coeff * n_J * x^J
        coeff = Fraction(rep3.NFACT[n] * e, rep3.NFACT[rep3.INDEX[J]])
        out[n] = (coeff, rep3.INDEX[J])
    return out


def brute_force_decomposition(d):
    """Decompose Sym^d(Sym^4) by raising-operator kernels per dominant weight."""
    weights = rep3.weight_multiplicities(d)
    out = {}
    for w in sorted(weights, reverse=True):
        if not rep3.is_dominant(w):
            continue
        basis = rep3.weight_space_monomials(d, w)
        pos = {m: i for i, m in enumerate(basis)}
        rows = []
        for name in ("e1", "e2"):
            cols = {}
            for m in basis:
                img = rep3.apply_generator(name, {m: 1})
                for mono, c in img.items():
                    cols.setdefault(mono, {})[pos[m]] = Fraction(c)
            rows.extend(cols.values())
        mult = len(nullspace(rows, len(basis)))
        if mult:
            out[w] = mult
    return out


# ---------------------------------------------------------------------------
# dimensions and decompositions
# ---------------------------------------------------------------------------


def test_weyl_dim_examples():
    assert rep3.weyl_dim((0, 0, 0)) == 1
    assert rep3.weyl_dim((1, 0, 0)) == 3
    # count of degree-4 monomials in 3 variables
    assert rep3.weyl_dim((4, 0, 0)) == len(rep3.EXPONENTS) == 15


def test_weyl_dim_rejects_non_dominant():
    with pytest.raises(rep3.WeightError):
        rep3.weyl_dim((1, 2, 0))


def test_plethysm_d0():
    assert rep3.plethysm_sym_sym4(0) == {(0, 0, 0): 1}


def test_plethysm_d2_matches_printed_list():
    assert rep3.plethysm_sym_sym4(2) == {
        (8, 0, 0): 1, (6, 2, 0): 1, (4, 4, 0): 1}


def test_plethysm_d3_matches_printed_list():
    expected = [(12, 0, 0), (10, 2, 0), (9, 3, 0), (8, 4, 0), (8, 2, 2),
                (7, 4, 1), (6, 6, 0), (6, 4, 2), (4, 4, 4)]
    assert rep3.plethysm_sym_sym4(3) == {w: 1 for w in expected}


def test_plethysm_d5_matches_printed_list():
    expected = {
        (8, 6, 6): 2, (8, 8, 4): 2, (9, 6, 5): 1, (9, 7, 4): 1, (9, 8, 3): 1,
        (10, 6, 4): 4, (10, 7, 3): 2, (10, 8, 2): 3, (10, 9, 1): 1,
        (10, 10, 0): 1, (11, 5, 4): 1, (11, 6, 3): 3, (11, 7, 2): 2,
        (11, 8, 1): 1, (12, 4, 4): 3, (12, 5, 3): 1, (12, 6, 2): 4,
        (12, 7, 1): 1, (12, 8, 0): 2, (13, 4, 3): 2, (13, 5, 2): 2,
        (13, 6, 1): 2, (13, 7, 0): 1, (14, 4, 2): 3, (14, 5, 1): 1,
        (14, 6, 0): 2, (15, 3, 2): 1, (15, 4, 1): 1, (15, 5, 0): 1,
        (16, 2, 2): 1, (16, 4, 0): 2, (17, 3, 0): 1, (18, 2, 0): 1,
        (20, 0, 0): 1,
    }
    table = rep3.plethysm_sym_sym4(5)
    assert table == expected
    assert len(table) == 34


def test_plethysm_bound_error():
    with pytest.raises(rep3.WeightError):
        rep3.plethysm_sym_sym4(9)


@pytest.mark.parametrize("d", range(7))
def test_dimension_sum(d):
    assert rep3.check_dimension_sum(d)
    assert sum(m * rep3.weyl_dim(w)
               for w, m in rep3.plethysm_sym_sym4(d).items()) == comb(d + 14, 14)


@pytest.mark.parametrize("d", [0, 1, 2])
def test_brute_force_oracle_matches_peeling(d):
    assert brute_force_decomposition(d) == rep3.plethysm_sym_sym4(d)


def test_invariant_dimensions_match_poincare_series():
    expected = {0: 1, 3: 1, 6: 2, 9: 4, 12: 7, 15: 11, 18: 19}
    for n, dim in expected.items():
        assert rep3.invariant_dimension(n) == dim
    assert rep3.invariant_dimension(1) == 0
    assert rep3.invariant_dimension(2) == 0


def test_invariant_dimension_agrees_with_plethysm():
    for n in (3, 6):
        lam = (4 * n // 3,) * 3
        assert rep3.invariant_dimension(n) == rep3.plethysm_sym_sym4(n).get(lam, 0)


# ---------------------------------------------------------------------------
# raising/lowering operators
# ---------------------------------------------------------------------------

A = [tuple(1 if i == j else 0 for j in range(15)) for i in range(15)]


def derivation_on_variable(oracle, var):
    """delta(a_var) as {source index: coeff} from a shear-image table."""
    return {src: coeff for src, (coeff, tgt) in oracle.items() if tgt == var}


def test_raising_a10_hits_a6_with_shear_constant():
    # E_12 on coefficients is induced by the substitution x -> x + eps*y
    oracle = shear_images(xvar=0, yvar=1)
    expected = derivation_on_variable(oracle, 10)
    assert expected == {6: 4}
    got = rep3.raising_operator(1, {A[10]: 1})
    # a_10 is the y^4 slot; expect a multiple of a_6 (x y^3 slot)
    assert got == {A[6]: 4}


def test_raising_kills_a0():
    assert rep3.raising_operator(1, {A[0]: 1}) == {}


def test_lowering_a6_hits_a10():
    # F_21 on coefficients is induced by the substitution y -> y + eps*x
    oracle = shear_images(xvar=1, yvar=0)
    expected = derivation_on_variable(oracle, 6)
    assert expected == {10: 1}
    got = rep3.lowering_operator(1, {A[6]: 1})
    assert got == {A[10]: 1}


def test_lowering_f32_kills_a0():
    assert rep3.lowering_operator(2, {A[0]: 1}) == {}


def test_four_lowerings_send_a0_to_a10():
    p = {A[0]: 1}
    for _ in range(4):
        p = rep3.lowering_operator(1, p)
    assert set(p) == {A[10]} and p[A[10]] == 24


mono_strategy = st.lists(st.integers(0, 14), min_size=1, max_size=4).map(
    lambda idxs: tuple(sum(1 for j in idxs if j == i) for i in range(15)))


@settings(max_examples=60, deadline=None)
@given(mono_strategy)
def test_weight_shift_and_sl2_commutator(mono):
    w = rep3.monomial_weight(mono)
    for i, alpha in ((1, rep3.ALPHA1), (2, rep3.ALPHA2)):
        up = rep3.raising_operator(i, {mono: 1})
        for m in up:
            assert rep3.monomial_weight(m) == (
                w[0] + alpha[0], w[1] + alpha[1], w[2] + alpha[2])
        # [E, F] = H with eigenvalue <weight, alpha-check>
        ef = rep3.raising_operator(i, rep3.lowering_operator(i, {mono: 1}))
        fe = rep3.lowering_operator(i, rep3.raising_operator(i, {mono: 1}))
        diff = dict(ef)
        for m, c in fe.items():
            diff[m] = diff.get(m, 0) - c
            if not diff[m]:
                del diff[m]
        h = w[0] - w[1] if i == 1 else w[1] - w[2]
        expected = {mono: h} if h else {}
        assert diff == expected


def test_weight_space_monomials_consistency():
    # every listed monomial has the requested degree and weight
    basis = rep3.weight_space_monomials(3, (4, 4, 4))
    assert basis
    for m in basis:
        assert sum(m) == 3
        assert rep3.monomial_weight(m) == (4, 4, 4)
    # total over all weights = dim Sym^3(C^15)
    counts = rep3.weight_multiplicities(3)
    assert sum(counts.values()) == comb(3 + 14, 14)
    assert counts[(4, 4, 4)] == len(basis)


def test_serialization_format():
    d = rep3.decomposition_to_json(2)
    assert d == {"d": 2, "entries": [
        {"weight": [8, 0, 0], "mult": 1},
        {"weight": [6, 2, 0], "mult": 1},
        {"weight": [4, 4, 0], "mult": 1},
    ]}
