from fractions import Fraction
from itertools import permutations

import pytest

from quartics import theta3
from quartics.series import laurent_mul
from quartics.theta3 import U, Z_MONOMIALS_4, chi408, s3_transport


def N_key(n11, n22, n33, m12, m13, m23):
    """Stored (q-block, uvw-exponent) of the half-integral matrix
    [n11,n22,n33; 2n12,2n13,2n23] (the m arguments are the 2n_ij)."""
    return (8 * n11, 8 * n22, 8 * n33), (U * m12, U * m13, U * m23)


def coeff_vector(coords, key):
    (e, m) = key
    out = []
    for s in coords:
        re, im = s.coefficient(e, m)
        assert im == 0
        out.append(re)
    return out


# printed Fourier coefficients of chi_{4,0,8}
A_111 = [0, 0, 0, 4, 0, 4, 0, 0, 0, 0, 0, 0, 4, 0, 0]
A_222 = [-512, 0, 0, -2816, 0, -2816, 0, 0, 0, 0, -512, 0, -2816, 0, -512]
A_112_122 = [0, 0, 0, 0, 1, 1, 0, 1, 3, 2, 0, 0, 1, 2, 1]
A_122_020 = [0, 0, 0, -24, 0, -48, 0, -48, 0, -96, 48, 0, -48, 0, -48]
A_122_200 = [0, 0, 0, -48, 0, -24, -96, 0, -48, 0, -48, 0, -48, 0, 48]

BOX2 = (16, 16, 16)


@pytest.fixture(scope="module")
def chi():
    return chi408(BOX2)


def test_leading_coefficient_vector(chi):
    assert coeff_vector(chi, N_key(1, 1, 1, 0, 0, 0)) == A_111


def test_printed_coefficient_tables(chi):
    assert coeff_vector(chi, N_key(2, 2, 2, 0, 0, 0)) == A_222
    assert coeff_vector(chi, N_key(1, 1, 2, 1, 2, 2)) == A_112_122
    assert coeff_vector(chi, N_key(1, 2, 2, 0, 2, 0)) == A_122_020
    assert coeff_vector(chi, N_key(1, 2, 2, 2, 0, 0)) == A_122_200


def lexp(poly_pairs):
    """{(u-exp, v-exp, w-exp): coeff} -> stored-unit keys."""
    return {(U * a, U * b, U * c): Fraction(v)
            for (a, b, c), v in poly_pairs.items()}


def test_leading_block_matches_displayed_vector(chi):
    e = (8, 8, 8)
    # entry 4: (v-1)^2 (w-1)^2 / vw
    vw = {}
    for a, ca in ((1, 1), (0, -2), (-1, 1)):
        for b, cb in ((1, 1), (0, -2), (-1, 1)):
            vw[(0, a, b)] = ca * cb
    assert chi[3].block(e) == lexp(vw)
    # entry 5: (u-1)(v-1)(w-1) * (-1 + 1/vw + 1/uw - 1/uv)
    lin = {}
    for a, ca in ((1, 1), (0, -1)):
        for b, cb in ((1, 1), (0, -1)):
            for c, cc in ((1, 1), (0, -1)):
                lin[(a, b, c)] = ca * cb * cc
    second = {(0, 0, 0): -1, (0, -1, -1): 1, (-1, 0, -1): 1, (-1, -1, 0): -1}
    expected = {}
    for m1, c1 in lin.items():
        for m2, c2 in second.items():
            key = tuple(x + y for x, y in zip(m1, m2))
            expected[key] = expected.get(key, 0) + c1 * c2
    expected = {k: v for k, v in expected.items() if v}
    assert chi[4].block(e) == lexp(expected)
    # the other entries of the displayed vector vanish in this block
    for i in (0, 1, 2, 6, 9, 10, 11, 13, 14):
        assert chi[i].block(e) == {}


PERM_23 = [1, 3, 2, 6, 5, 4, 10, 9, 8, 7, 15, 14, 13, 12, 11]
PERM_13 = [15, 14, 10, 13, 9, 6, 12, 8, 5, 3, 11, 7, 4, 2, 1]


def sigma_index(perm, I):
    moved = [0, 0, 0]
    for pos in range(3):
        moved[perm[pos] - 1] = I[pos]
    return Z_MONOMIALS_4.index(tuple(moved))


def test_printed_index_permutations_match_multiindex_action():
    for perm, printed in (((1, 3, 2), PERM_23), ((3, 2, 1), PERM_13)):
        computed = [sigma_index(perm, I) + 1 for I in Z_MONOMIALS_4]
        assert computed == printed


def test_s3_equivariance_of_coordinates(chi):
    # substituting the permuted variables into coordinate I gives the
    # coordinate at the permuted multi-index
    for perm in permutations((1, 2, 3)):
        for i, I in enumerate(Z_MONOMIALS_4):
            j = sigma_index(perm, I)
            assert s3_transport(perm, chi[i]) == chi[j], (perm, I)


def test_s3_orbit_structure():
    orbits = {frozenset(permutations(I)) for I in Z_MONOMIALS_4}
    sizes = sorted(len(o) for o in orbits)
    assert sizes == [3, 3, 3, 6]
