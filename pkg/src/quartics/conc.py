"""Ternary quartics and explicit concomitants.

A concomitant of degree d and SL-type lam = (l1 >= l2 >= l3 >= 0) is stored
through its coordinates: for each pair (x-monomial of degree l1-l2,
hat-monomial of degree l2-l3) the coefficient polynomial in a_0..a_14.
Coordinates are filled from a highest-weight vector by propagating the
equivariance relations; the normalization is anchored so that the degree-1
concomitant is the universal quartic itself (coordinate of x^I is n_I a_I).
"""

import random
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import rep3
from .linalg import nullspace, rank_mod_p
from .rep3 import (EXPONENTS, INDEX, NFACT, apply_generator, poly_weight,
                   weight_space_monomials, WeightError)

DEFAULT_MODULUS = (1 << 61) - 1  # Mersenne prime, comfortably > 2^31


class NotDivisibleError(ArithmeticError):
    pass


def multi_factorial(mono):
    out = 1
    for e in mono:
        out *= factorial(e)
    return out


def monomials_of_degree(n):
    """Exponent triples of total degree n, descending lex."""
    return [(i, j, n - i - j) for i in range(n, -1, -1) for j in range(n - i, -1, -1)]


def multinomial(mono):
    return factorial(sum(mono)) // multi_factorial(mono)


HAT_WEIGHTS = ((0, 1, 1), (1, 0, 1), (1, 1, 0))  # x^=y^z, y^=z^x, z^=x^y


def pair_weight(alpha, beta):
    return tuple(alpha[i] + sum(beta[j] * HAT_WEIGHTS[j][i] for j in range(3))
                 for i in range(3))


class TernaryQuartic:
    """15 exact rational coefficients in the multinomial basis."""

    __slots__ = ("a",)

    def __init__(self, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != 15:
            raise ValueError("a ternary quartic needs 15 coefficients")
        self.a = coeffs

    @classmethod
    def from_monomial_dict(cls, poly):
        """Build from {(i,j,k): coefficient} of an honest quartic polynomial."""
        coeffs = []
        for n, I in enumerate(EXPONENTS):
            coeffs.append(Fraction(poly.get(I, 0)) / NFACT[n])
        return cls(coeffs)

    def to_monomial_dict(self):
        return {I: self.a[n] * NFACT[n] for n, I in enumerate(EXPONENTS) if self.a[n]}

    def __eq__(self, other):
        return isinstance(other, TernaryQuartic) and self.a == other.a

    def __repr__(self):
        return f"TernaryQuartic({list(self.a)})"


FERMAT = TernaryQuartic([1 if EXPONENTS[n] in ((4, 0, 0), (0, 4, 0), (0, 0, 4)) else 0
                         for n in range(15)])


# ---------------------------------------------------------------------------
# small trivariate polynomial helpers ({(i,j,k): coeff})
# ---------------------------------------------------------------------------

def tri_mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            key = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            v = out.get(key, 0) + c1 * c2
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def tri_pow(p, e):
    out = {(0, 0, 0): Fraction(1)}
    for _ in range(e):
        out = tri_mul(out, p)
    return out


def gl3_act(A, q):
    """Coefficients of f(a11 x + a21 y + a31 z, ..., ...) in the n_I basis."""
    cols = [{(1, 0, 0): Fraction(A[0][i]), (0, 1, 0): Fraction(A[1][i]),
             (0, 0, 1): Fraction(A[2][i])} for i in range(3)]
    total = {}
    for n, I in enumerate(EXPONENTS):
        if not q.a[n]:
            continue
        term = {(0, 0, 0): q.a[n] * NFACT[n]}
        for i in range(3):
            if I[i]:
                term = tri_mul(term, tri_pow(cols[i], I[i]))
        for m, c in term.items():
            v = total.get(m, 0) + c
            if v:
                total[m] = v
            else:
                total.pop(m, None)
    return TernaryQuartic.from_monomial_dict(total)


# ---------------------------------------------------------------------------
# highest-weight vectors
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def highest_weight_vectors(d, lam):
    """Basis of the joint kernel of the raising operators at weight lam.

    Returns content-1 integer polynomials ({mono15: int}); their number
    equals the multiplicity of lam in Sym^d(Sym^4).
    """
    lam = tuple(lam)
    if sum(lam) != 4 * d:
        raise WeightError(f"weight sum {sum(lam)} != 4d = {4 * d}")
    basis = weight_space_monomials(d, lam)
    if not basis:
        return ()
    pos = {m: i for i, m in enumerate(basis)}
    rows = {}
    for tag in ("e1", "e2"):
        for m in basis:
            for mono, c in apply_generator(tag, {m: 1}).items():
                rows.setdefault((tag, mono), {})[pos[m]] = Fraction(c)
    vecs = nullspace(list(rows.values()), len(basis))
    hwvs = tuple({basis[i]: c for i, c in sorted(v.items())} for v in vecs)
    if d <= rep3.PLETHYSM_BOUND:
        mult = rep3.plethysm_sym_sym4(d).get(lam, 0)
        if len(hwvs) != mult:
            raise AssertionError(
                f"kernel dimension {len(hwvs)} != plethysm multiplicity {mult}")
    return hwvs


# ---------------------------------------------------------------------------
# coordinate fill
# ---------------------------------------------------------------------------

def _poly_scale_add(acc, poly, scalar):
    if not scalar:
        return
    for m, c in poly.items():
        v = acc.get(m, 0) + scalar * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def _ftilde_rows(mprime, which):
    """Row vector F~_i(m') over pair monomials, as {pair: int coeff}."""
    (a1, a2, a3), (b1, b2, b3) = mprime
    out = {}
    if which == 1:
        if a1 >= 1:
            out[((a1 - 1, a2 + 1, a3), (b1, b2, b3))] = a2 + 1
        if b2 >= 1:
            out[((a1, a2, a3), (b1 + 1, b2 - 1, b3))] = -(b1 + 1)
    else:
        if a2 >= 1:
            out[((a1, a2 - 1, a3 + 1), (b1, b2, b3))] = a3 + 1
        if b3 >= 1:
            out[((a1, a2, a3), (b1, b2 + 1, b3 - 1))] = -(b2 + 1)
    return out


def _etilde_rows(mprime, which):
    """Row vector E~_i(m') over pair monomials, as {pair: int coeff}."""
    (a1, a2, a3), (b1, b2, b3) = mprime
    out = {}
    if which == 1:
        if a2 >= 1:
            out[((a1 + 1, a2 - 1, a3), (b1, b2, b3))] = a1 + 1
        if b1 >= 1:
            out[((a1, a2, a3), (b1 - 1, b2 + 1, b3))] = -(b2 + 1)
    else:
        if a3 >= 1:
            out[((a1, a2 + 1, a3 - 1), (b1, b2, b3))] = a2 + 1
        if b2 >= 1:
            out[((a1, a2, a3), (b1, b2 - 1, b3 + 1))] = -(b3 + 1)
    return out


class Concomitant:
    """Degree-d concomitant of SL-type lam with explicit coordinates."""

    __slots__ = ("d", "lam", "coords", "index")

    def __init__(self, d, lam, coords, index=0):
        self.d = d
        self.lam = tuple(lam)
        self.coords = coords
        self.index = index

    @property
    def xdeg(self):
        return self.lam[0] - self.lam[1]

    @property
    def hatdeg(self):
        return self.lam[1] - self.lam[2]

    def pairs(self):
        """Coordinate index pairs, x-monomial outer, both descending lex."""
        return [(alpha, beta) for alpha in monomials_of_degree(self.xdeg)
                for beta in monomials_of_degree(self.hatdeg)]

    def leading_coordinate(self):
        p, q = self.xdeg, self.hatdeg
        return self.coords[((p, 0, 0), (q, 0, 0))]

    def __mul__(self, other):
        coords = {}
        for (a1, b1), p1 in self.coords.items():
            if not p1:
                continue
            for (a2, b2), p2 in other.coords.items():
                if not p2:
                    continue
                key = (tuple(x + y for x, y in zip(a1, a2)),
                       tuple(x + y for x, y in zip(b1, b2)))
                acc = coords.setdefault(key, {})
                for m1, c1 in p1.items():
                    for m2, c2 in p2.items():
                        mono = tuple(x + y for x, y in zip(m1, m2))
                        v = acc.get(mono, 0) + c1 * c2
                        if v:
                            acc[mono] = v
                        else:
                            acc.pop(mono, None)
        lam = tuple(x + y for x, y in zip(self.lam, other.lam))
        return Concomitant(self.d + other.d, lam, coords)

    def to_json(self):
        coords = []
        for (alpha, beta) in self.pairs():
            poly = self.coords.get((alpha, beta), {})
            terms = [{"mono": list(m), "coef": str(Fraction(poly[m]))}
                     for m in sorted(poly, reverse=True)]
            coords.append({"xmon": list(alpha), "xhmon": list(beta),
                           "poly": terms})
        return {"d": self.d, "lambda": list(self.lam), "index": self.index,
                "coords": coords}

    @classmethod
    def from_json(cls, data):
        coords = {}
        for entry in data["coords"]:
            poly = {tuple(t["mono"]): Fraction(t["coef"]) for t in entry["poly"]}
            coords[(tuple(entry["xmon"]), tuple(entry["xhmon"]))] = poly
        return cls(data["d"], tuple(data["lambda"]), coords,
                   index=data.get("index", 0))


def expand_concomitant(d, lam, hwv):
    """Fill all coordinates of the concomitant generated by hwv.

    The highest-weight vector sits at the unique pair monomial of maximal
    torus weight, (x^p, zhat^q); the remaining coordinates follow from the
    equivariance relations, with new non-Cartan directions mapped to zero.
    """
    lam = tuple(lam)
    for i in (1, 2):
        if rep3.raising_operator(i, hwv):
            raise WeightError("vector is not annihilated by the raising operators")
    if poly_weight(hwv) != lam:
        raise WeightError(f"vector does not have weight {lam}")
    p, q = lam[0] - lam[1], lam[1] - lam[2]
    pairs = [(alpha, beta) for alpha in monomials_of_degree(p)
             for beta in monomials_of_degree(q)]
    by_weight = {}
    for m in pairs:
        by_weight.setdefault(pair_weight(*m), []).append(m)
    top = ((p, 0, 0), (0, 0, q))
    top_w = pair_weight(*top)
    hwv = {m: Fraction(c) for m, c in hwv.items()}
    coords = {top: hwv}

    def ht(w):
        return w[0] - w[2]

    levels = {}
    for w in by_weight:
        levels.setdefault(ht(w), []).append(w)
    for h in sorted(levels, reverse=True):
        for w in levels[h]:
            if w == top_w:
                if by_weight[w] != [top]:
                    raise AssertionError("top weight space is not one-dimensional")
                continue
            mons = by_weight[w]
            pos = {m: i for i, m in enumerate(mons)}
            rows, rhs = [], []
            for which, alpha in ((1, rep3.ALPHA1), (2, rep3.ALPHA2)):
                src_w = (w[0] + alpha[0], w[1] + alpha[1], w[2] + alpha[2])
                for mprime in by_weight.get(src_w, ()):
                    row = {pos[m]: Fraction(c)
                           for m, c in _ftilde_rows(mprime, which).items()
                           if m in pos}
                    rows.append(row)
                    rhs.append(apply_generator("f1" if which == 1 else "f2",
                                               coords[mprime]))
            # zero rows for fresh highest-weight directions at this level
            eups = []
            for which, alpha in ((1, rep3.ALPHA1), (2, rep3.ALPHA2)):
                tgt_w = (w[0] + alpha[0], w[1] + alpha[1], w[2] + alpha[2])
                tgt_mons = by_weight.get(tgt_w, ())
                tpos = {m: i for i, m in enumerate(tgt_mons)}
                for m in mons:
                    row = {}
                    for mm, c in _etilde_rows(m, which).items():
                        if mm in tpos:
                            row[(which, tpos[mm])] = Fraction(c)
                    eups.append((pos[m], row))
            kernel_rows = {}
            for src, row in eups:
                for key, c in row.items():
                    kernel_rows.setdefault(key, {})[src] = c
            # vectors in ker(E~1) cap ker(E~2): nullspace of the stacked map
            for vec in nullspace(list(kernel_rows.values()), len(mons)):
                rows.append({i: Fraction(c) for i, c in vec.items()})
                rhs.append({})
            # eliminate; full rank makes each reduced row a unit vector
            pivots, values = [], []
            reduced = []
            for row, b in zip(rows, rhs):
                row = dict(row)
                b = dict(b)
                for piv, r, v in zip(pivots, reduced, values):
                    x = row.get(piv)
                    if x:
                        for c, vv in r.items():
                            y = row.get(c, 0) - x * vv
                            if y:
                                row[c] = y
                            else:
                                row.pop(c, None)
                        _poly_scale_add(b, v, -x)
                if not row:
                    if b:
                        raise AssertionError("inconsistent coordinate relations")
                    continue
                piv = min(row)
                inv = Fraction(1) / row[piv]
                row = {c: v * inv for c, v in row.items()}
                b = {m: c * inv for m, c in b.items()}
                for i, r in enumerate(reduced):
                    x = r.get(piv)
                    if x:
                        for c, v in row.items():
                            y = r.get(c, 0) - x * v
                            if y:
                                r[c] = y
                            else:
                                r.pop(c, None)
                        _poly_scale_add(values[i], b, -x)
                pivots.append(piv)
                reduced.append(row)
                values.append(b)
            if len(pivots) != len(mons):
                raise AssertionError(
                    f"coordinate fill rank-deficient at weight {w}")
            for piv, row, val in zip(pivots, reduced, values):
                if len(row) != 1:
                    raise AssertionError("reduced relation row is not a unit vector")
                coords[mons[piv]] = val
    return Concomitant(d, lam, coords)


@lru_cache(maxsize=None)
def concomitant(d, lam, index=0):
    """The index-th concomitant of type (d, lam)."""
    hwvs = highest_weight_vectors(d, tuple(lam))
    if not 0 <= index < len(hwvs):
        raise IndexError(
            f"multiplicity index {index} out of range ({len(hwvs)} available)")
    c = expand_concomitant(d, tuple(lam), hwvs[index])
    c.index = index
    return c


def universal_quartic():
    return concomitant(1, (4, 0, 0))


def evaluate(c, q):
    """Substitute the quartic's coefficients into every coordinate."""
    out = {}
    for key, poly in c.coords.items():
        total = Fraction(0)
        for mono, coef in poly.items():
            term = Fraction(coef)
            for idx, e in enumerate(mono):
                if e:
                    term *= q.a[idx] ** e
            total += term
        out[key] = total
    return out


def flip_xhat(c):
    """Formally swap the x and hat variables (bookkeeping for pairings)."""
    coords = {(beta, alpha): poly for (alpha, beta), poly in c.coords.items()}
    p, q = c.xdeg, c.hatdeg
    return Concomitant(c.d, (p + q, p, 0), coords)


PAIRING_CONSTANT = Fraction(1, 3)  # quartic x/hat contraction; <f, sigma> = iota


def pair(c1, c2):
    """Full contraction of the quartic-dual shapes (p,q) vs (q,p).

    Weighted by 1/(n_alpha n_beta) and the recorded global constant that
    makes the contraction of the universal quartic against Salmon's sigma
    reproduce the degree-3 invariant iota with identical coefficients.
    """
    p1, q1 = c1.xdeg, c1.hatdeg
    if (c2.xdeg, c2.hatdeg) != (q1, p1):
        raise WeightError("pairing needs dual x/hat degrees")
    if {p1, q1} != {4, 0}:
        raise NotImplementedError(
            "full contraction is calibrated for the quartic shape only")
    acc = {}
    for alpha in monomials_of_degree(p1):
        for beta in monomials_of_degree(q1):
            pol1 = c1.coords.get((alpha, beta))
            pol2 = c2.coords.get((beta, alpha))
            if not pol1 or not pol2:
                continue
            scale = PAIRING_CONSTANT / (multinomial(alpha) * multinomial(beta))
            for m1, a in pol1.items():
                for m2, b in pol2.items():
                    mono = tuple(x + y for x, y in zip(m1, m2))
                    v = acc.get(mono, 0) + scale * a * b
                    if v:
                        acc[mono] = v
                    else:
                        acc.pop(mono, None)
    d = c1.d + c2.d
    lam = (4 * d // 3,) * 3
    return Concomitant(d, lam, {((0, 0, 0), (0, 0, 0)): acc})


# ---------------------------------------------------------------------------
# order along the double-conic locus (prime-field sampling)
# ---------------------------------------------------------------------------

CONIC_BASIS = [((2, 0, 0), 1), ((1, 1, 0), 2), ((1, 0, 1), 2),
               ((0, 2, 0), 1), ((0, 1, 1), 2), ((0, 0, 2), 2)]


class Conic:
    """Six exact rationals against the basis x^2, 2xy, 2xz, y^2, 2yz, z^2."""

    __slots__ = ("g",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != 6:
            raise ValueError("a conic needs 6 coefficients")
        self.g = coeffs

    def to_monomial_dict(self):
        return {m: c * self.g[i] for i, (m, c) in enumerate(CONIC_BASIS)
                if self.g[i]}


def conic_square_coeffs(g, p=None):
    """Quartic coefficients (n_I basis) of g^2, optionally mod p."""
    poly = tri_mul(g.to_monomial_dict(), g.to_monomial_dict())
    out = []
    for n, I in enumerate(EXPONENTS):
        c = poly.get(I, 0)
        if p is None:
            out.append(Fraction(c) / NFACT[n])
        else:
            out.append(int(c) * pow(NFACT[n], p - 2, p) % p)
    return out


def _frac_mod(x, p):
    f = Fraction(x)
    return f.numerator % p * pow(f.denominator % p, p - 2, p) % p


def _t_poly_eval(poly, a_of_t, d, p):
    """Evaluate {mono15: coeff} at a_i(t) in GF(p)[t], truncated at degree d."""
    out = [0] * (d + 1)
    powers = {}
    for mono, coef in poly.items():
        term = [1]
        for idx, e in enumerate(mono):
            if not e:
                continue
            key = (idx, e)
            if key not in powers:
                v = a_of_t[idx]
                acc = v
                for _ in range(e - 1):
                    acc = _t_mul(acc, v, d, p)
                powers[key] = acc
            term = _t_mul(term, powers[key], d, p)
        c = _frac_mod(coef, p)
        for i, t in enumerate(term):
            out[i] = (out[i] + c * t) % p
    return out


def _t_mul(a, b, d, p):
    out = [0] * min(len(a) + len(b) - 1, d + 1)
    for i, x in enumerate(a):
        if not x or i > d:
            continue
        for j, y in enumerate(b):
            if i + j > d:
                break
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _dc_sample(rng, p):
    f0 = [rng.randrange(p) for _ in range(15)]
    g0 = Conic([rng.randrange(p) for _ in range(6)])
    gsq = conic_square_coeffs(g0, p=p)
    return [[gi, fi] for fi, gi in zip(f0, gsq)]  # a_i(t) = g2_i + t f_i


def order_along_DC(c, trials=3, seed=0, modulus=DEFAULT_MODULUS):
    """Generic t-valuation of c evaluated on t*f0 + g0^2, minimum over trials."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p = modulus
    best = None
    for t in range(trials):
        rng = random.Random(seed * 1_000_003 + t)
        a_of_t = _dc_sample(rng, p)
        for poly in c.coords.values():
            if not poly:
                continue
            vals = _t_poly_eval(poly, a_of_t, c.d, p)
            for i, v in enumerate(vals):
                if v:
                    best = i if best is None else min(best, i)
                    break
        if best == 0:
            return 0
    if best is None:
        raise ArithmeticError("zero concomitant: all coordinates vanish")
    return best


def dc_filtered_dimension(d, lam, m, samples=4, seed=0, modulus=DEFAULT_MODULUS):
    """dim of the subspace of multiplicity space with generic DC-order >= m."""
    if m < 0:
        raise ValueError("order must be >= 0")
    hwvs = highest_weight_vectors(d, tuple(lam))
    k = len(hwvs)
    if k == 0 or m == 0:
        return k
    concs = [concomitant(d, tuple(lam), i) for i in range(k)]
    p = modulus
    rows = []
    pairs = concs[0].pairs()
    for s in range(samples):
        rng = random.Random(seed * 9_000_011 + s)
        a_of_t = _dc_sample(rng, p)
        per_conc = []
        for c in concs:
            per_conc.append({key: _t_poly_eval(c.coords.get(key, {}), a_of_t, d, p)
                             for key in pairs})
        for key in pairs:
            for j in range(m):
                row = {i: per_conc[i][key][j] for i in range(k)
                       if per_conc[i][key][j]}
                if row:
                    rows.append(row)
    return k - rank_mod_p(rows, p)


def dc_filtered_subspace(d, lam, m, samples=6, seed=0):
    """Exact rational basis of the DC-order >= m subspace of the HWV space."""
    hwvs = highest_weight_vectors(d, tuple(lam))
    k = len(hwvs)
    concs = [concomitant(d, tuple(lam), i) for i in range(k)]
    rows = []
    pairs = concs[0].pairs()
    for s in range(samples):
        rng = random.Random(seed * 7_000_003 + s)
        f0 = [rng.randrange(-99, 100) for _ in range(15)]
        g0 = Conic([rng.randrange(-99, 100) for _ in range(6)])
        gsq = conic_square_coeffs(g0)
        for key in pairs:
            coeffs = []
            for c in concs:
                poly = c.coords.get(key, {})
                tc = [Fraction(0)] * (m + 1)
                for mono, coef in poly.items():
                    # expand prod (g2_i + t f_i)^e_i up to t^(m-1)
                    term = [Fraction(coef)] + [Fraction(0)] * m
                    for idx, e in enumerate(mono):
                        for _ in range(e):
                            nxt = [Fraction(0)] * (m + 1)
                            for i in range(m + 1):
                                if term[i]:
                                    nxt[i] += term[i] * gsq[idx]
                                    if i + 1 <= m:
                                        nxt[i + 1] += term[i] * f0[idx]
                            term = nxt
                    for i in range(m + 1):
                        tc[i] += term[i]
                coeffs.append(tc)
            for j in range(m):
                row = {i: coeffs[i][j] for i in range(k) if coeffs[i][j]}
                if row:
                    rows.append(row)
    return nullspace(rows, k)


# ---------------------------------------------------------------------------
# discriminant via the Macaulay resultant of the partial derivatives
# ---------------------------------------------------------------------------

def _partials_mod_p(quartic_coeffs, p):
    f = {}
    for n, I in enumerate(EXPONENTS):
        c = quartic_coeffs[n] * NFACT[n] % p
        if c:
            f[I] = c
    parts = []
    for v in range(3):
        g = {}
        for mono, c in f.items():
            if mono[v]:
                key = tuple(e - (1 if i == v else 0) for i, e in enumerate(mono))
                g[key] = (g.get(key, 0) + c * mono[v]) % p
        parts.append(g)
    return parts


def _det_mod_p(mat, p):
    n = len(mat)
    mat = [[x % p for x in row] for row in mat]
    det = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if mat[r][col] % p:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        inv = pow(mat[col][col], p - 2, p)
        det = det * mat[col][col] % p
        for r in range(col + 1, n):
            x = mat[r][col]
            if x:
                x = x * inv % p
                for cc in range(col, n):
                    mat[r][cc] = (mat[r][cc] - x * mat[col][cc]) % p
    return det % p


def _macaulay_ratio(parts, p):
    """Macaulay resultant of three ternary cubics: det(M)/det(M')."""
    mons = monomials_of_degree(7)
    pos = {m: i for i, m in enumerate(mons)}
    rows = []
    reduced_twice = []
    for m in mons:
        if m[0] >= 3:
            v, shift = 0, (m[0] - 3, m[1], m[2])
        elif m[1] >= 3:
            v, shift = 1, (m[0], m[1] - 3, m[2])
        else:
            v, shift = 2, (m[0], m[1], m[2] - 3)
        row = [0] * len(mons)
        for mono, c in parts[v].items():
            key = (mono[0] + shift[0], mono[1] + shift[1], mono[2] + shift[2])
            row[pos[key]] = c
        rows.append(row)
        if sum(1 for i in range(3) if m[i] >= 3) >= 2:
            reduced_twice.append(pos[m])
    det = _det_mod_p(rows, p)
    sub = [[rows[i][j] for j in reduced_twice] for i in reduced_twice]
    minor = _det_mod_p(sub, p)
    return det, minor


def disc_evaluate(quartic_coeffs, p=DEFAULT_MODULUS, seed=0):
    """Discriminant of a quartic over GF(p), up to one fixed global constant.

    Macaulay: det(M) = Res * E with E the extraneous minor.  A vanishing E
    triggers a random SL(3) change of chart; det(M) = 0 across every chart
    certifies a zero resultant (E cannot vanish on all charts otherwise).
    """
    coeffs = [int(c) % p for c in quartic_coeffs]
    attempts = 8
    all_det_zero = True
    for attempt in range(attempts):
        if attempt == 0:
            cur = coeffs
        else:
            rng = random.Random(seed * 31 + attempt)
            A = _random_sl3(rng, p)
            cur = _gl3_act_mod_p(A, coeffs, p)
        det, minor = _macaulay_ratio(_partials_mod_p(cur, p), p)
        if minor:
            return det * pow(minor, p - 2, p) % p
        if det:
            all_det_zero = False
    if all_det_zero:
        return 0
    raise ArithmeticError("extraneous Macaulay minor vanished persistently")


def _random_sl3(rng, p):
    while True:
        A = [[rng.randrange(p) for _ in range(3)] for _ in range(3)]
        det = (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
               - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
               + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0])) % p
        if det:
            inv = pow(det, p - 2, p)
            return [[x * inv % p if i == 0 else x % p for x in row]
                    for i, row in enumerate(A)]


def _gl3_act_mod_p(A, coeffs, p):
    cols = [{(1, 0, 0): A[0][i], (0, 1, 0): A[1][i], (0, 0, 1): A[2][i]}
            for i in range(3)]
    total = {}
    for n, I in enumerate(EXPONENTS):
        c = coeffs[n] * NFACT[n] % p
        if not c:
            continue
        term = {(0, 0, 0): c}
        for i in range(3):
            for _ in range(I[i]):
                nxt = {}
                for m1, c1 in term.items():
                    for m2, c2 in cols[i].items():
                        key = tuple(x + y for x, y in zip(m1, m2))
                        nxt[key] = (nxt.get(key, 0) + c1 * c2) % p
                term = nxt
        for m, c2 in term.items():
            total[m] = (total.get(m, 0) + c2) % p
    out = []
    for n, I in enumerate(EXPONENTS):
        out.append(total.get(I, 0) * pow(NFACT[n], p - 2, p) % p)
    return out


def _interp_valuation(ts, vals, p, max_degree):
    """Valuation at t=0 of the poly through (ts, vals) over GF(p)."""
    n = max_degree + 1
    ts, vals = ts[:n], vals[:n]
    # Newton divided differences mod p
    coef = list(vals)
    for j in range(1, len(ts)):
        for i in range(len(ts) - 1, j - 1, -1):
            num = (coef[i] - coef[i - 1]) % p
            den = (ts[i] - ts[i - j]) % p
            coef[i] = num * pow(den, p - 2, p) % p
    # expand the Newton form into monomial coefficients
    poly = [0] * len(ts)
    basis = [1]  # prod_{k<i} (t - t_k)
    for i, c in enumerate(coef):
        for k, a in enumerate(basis):
            poly[k] = (poly[k] + c * a) % p
        shifted = [0] + basis
        scaled = [(-ts[i] * a) % p for a in basis] + [0]
        basis = [(x + y) % p for x, y in zip(shifted, scaled)]
    for i, c in enumerate(poly):
        if c % p:
            return i
    return None


def discriminant_dc_order(trials=2, seed=0, modulus=DEFAULT_MODULUS):
    """t-valuation of disc(t*f0 + g0^2): the DC-order of the discriminant."""
    p = modulus
    best = None
    for t in range(trials):
        rng = random.Random(seed * 5_000_011 + t)
        a_of_t = _dc_sample(rng, p)
        ts, vals = [], []
        tval = 1
        while len(ts) < 29:
            coeffs = [(g + tval * f) % p for (g, f) in a_of_t]
            try:
                vals.append(disc_evaluate(coeffs, p=p, seed=seed + tval))
                ts.append(tval)
            except ArithmeticError:
                pass
            tval += 1
        v = _interp_valuation(ts, vals, p, 28)
        if v is not None:
            best = v if best is None else min(best, v)
    if best is None:
        raise ArithmeticError("discriminant vanished identically on samples")
    return best
