"""GL(3) representation theory on the space of ternary quartics.

The 15 coefficients a_0..a_14 of a quartic (multinomial normalization,
lexicographic monomial order) carry the torus weights given by their
exponent triples.  This module provides the decomposition of
Sym^d(Sym^4(C^3)) into irreducibles by character peeling, Weyl dimensions,
invariant dimensions, and the infinitesimal raising/lowering action on
polynomials in a_0..a_14.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

PLETHYSM_BOUND = 8
INVARIANT_BOUND = 18

# degree-4 exponent triples in descending lexicographic order: a_i <-> EXPONENTS[i]
EXPONENTS = tuple(
    (i, j, 4 - i - j) for i in range(4, -1, -1) for j in range(4 - i, -1, -1)
)
NFACT = tuple(factorial(4) // (factorial(i) * factorial(j) * factorial(k))
              for (i, j, k) in EXPONENTS)
INDEX = {I: n for n, I in enumerate(EXPONENTS)}

ALPHA1 = (1, -1, 0)
ALPHA2 = (0, 1, -1)


class WeightError(ValueError):
    pass


def is_dominant(w):
    return w[0] >= w[1] >= w[2]


def weyl_dim(w):
    """Dimension of the GL(3) irreducible with highest weight w."""
    if not is_dominant(w):
        raise WeightError(f"non-dominant weight {w}")
    l1, l2, l3 = w
    return (l1 - l2 + 1) * (l2 - l3 + 1) * (l1 - l3 + 2) // 2


@lru_cache(maxsize=None)
def schur_weights(lam):
    """Weight multiplicities of the irreducible W[lam], via GT patterns."""
    l1, l2, l3 = lam
    out = {}
    for a in range(l2, l1 + 1):
        for b in range(l3, l2 + 1):
            for c in range(b, a + 1):
                w = (c, a + b - c, l1 + l2 + l3 - a - b)
                out[w] = out.get(w, 0) + 1
    return out


@lru_cache(maxsize=None)
def weight_multiplicities(d):
    """Weight multiplicities of Sym^d(Sym^4(C^3)).

    Counts multisets of size d drawn from the 15 degree-4 exponent triples,
    keyed by the componentwise sum.
    """
    table = {0: {(0, 0, 0): 1}}  # degree -> weight -> count
    for (w1, w2, w3) in EXPONENTS:
        new = {deg: dict(ws) for deg, ws in table.items()}
        for deg in sorted(table):
            for k in range(1, d - deg + 1):
                tgt = new.setdefault(deg + k, {})
                for (u1, u2, u3), c in table[deg].items():
                    key = (u1 + k * w1, u2 + k * w2, u3 + k * w3)
                    tgt[key] = tgt.get(key, 0) + c
        table = new
    return table.get(d, {})


def plethysm_sym_sym4(d, bound=None):
    """Decomposition of Sym^d(Sym^4(C^3)) as {highest weight: multiplicity}.

    Peels Schur characters off the weight-multiplicity table, always at the
    lexicographically largest remaining weight.
    """
    bound = PLETHYSM_BOUND if bound is None else bound
    if d < 0:
        raise WeightError("degree must be nonnegative")
    if d > bound:
        raise WeightError(f"degree too large: {d} > bound {bound}")
    char = dict(weight_multiplicities(d))
    out = {}
    while char:
        lam = max(char)
        mult = char[lam]
        if not is_dominant(lam) or mult <= 0:
            raise AssertionError(f"character peeling failed at {lam}: {mult}")
        out[lam] = mult
        for w, c in schur_weights(lam).items():
            r = char.get(w, 0) - mult * c
            if r:
                char[w] = r
            else:
                char.pop(w, None)
    return out


def decomposition_entries(d, bound=None):
    """Plethysm table as a list of (weight, multiplicity), descending lex."""
    table = plethysm_sym_sym4(d, bound=bound)
    return sorted(table.items(), key=lambda kv: kv[0], reverse=True)


def check_dimension_sum(d):
    total = sum(m * weyl_dim(w) for w, m in plethysm_sym_sym4(d).items())
    return total == comb(d + 14, 14)


def invariant_dimension(n, bound=None):
    """dim of the degree-n invariants = multiplicity of [4n/3,4n/3,4n/3].

    Uses the Weyl alternation formula on the weight table, so large n stays
    cheap compared to a full peel.
    """
    bound = INVARIANT_BOUND if bound is None else bound
    if n < 0:
        raise WeightError("degree must be nonnegative")
    if n % 3:
        return 0
    if n > bound:
        raise WeightError(f"degree too large: {n} > bound {bound}")
    m = 4 * n // 3
    counts = weight_multiplicities(n)
    rho = (2, 1, 0)
    shifted = (m + 2, m + 1, m)
    total = 0
    for perm, sign in (((0, 1, 2), 1), ((1, 0, 2), -1), ((0, 2, 1), -1),
                       ((1, 2, 0), 1), ((2, 0, 1), 1), ((2, 1, 0), -1)):
        w = tuple(shifted[perm[i]] - rho[i] for i in range(3))
        total += sign * counts.get(w, 0)
    return total


def decomposition_to_json(d, bound=None):
    return {
        "d": d,
        "entries": [{"weight": list(w), "mult": m}
                    for w, m in decomposition_entries(d, bound=bound)],
    }


# ---------------------------------------------------------------------------
# polynomials in a_0..a_14: {exponent 15-tuple: coefficient}
# ---------------------------------------------------------------------------

def monomial_weight(mono):
    w = [0, 0, 0]
    for idx, e in enumerate(mono):
        if e:
            I = EXPONENTS[idx]
            w[0] += e * I[0]
            w[1] += e * I[1]
            w[2] += e * I[2]
    return tuple(w)


def poly_weight(p):
    """Torus weight of a weight-homogeneous polynomial (None for 0)."""
    it = iter(p)
    try:
        first = next(it)
    except StopIteration:
        return None
    w = monomial_weight(first)
    for mono in it:
        if monomial_weight(mono) != w:
            raise WeightError("polynomial is not weight-homogeneous")
    return w


def _single_variable_images(shift, factor_index):
    """Images a_I -> coeff * a_J of the four sl3 generators.

    shift: J = I + shift; factor: the multiplier is I[factor_index].
    Returns {source index: (coeff, target index)} omitting zero images.
    """
    images = {}
    for n, I in enumerate(EXPONENTS):
        c = I[factor_index]
        J = (I[0] + shift[0], I[1] + shift[1], I[2] + shift[2])
        if c and J in INDEX:
            images[n] = (c, INDEX[J])
    return images

# Derivations on C[a_0..a_14] induced by the GL(3) action on quartics;
# e1/e2 raise the torus weight by a simple root, f1/f2 lower it.
_GEN_IMAGES = {
    "e1": _single_variable_images(ALPHA1, 1),
    "e2": _single_variable_images(ALPHA2, 2),
    "f1": _single_variable_images((-1, 1, 0), 0),
    "f2": _single_variable_images((0, -1, 1), 1),
}


def apply_generator(name, poly):
    """Apply a generator derivation to {mono: coeff}."""
    images = _GEN_IMAGES[name]
    out = {}
    for mono, coeff in poly.items():
        for idx, e in enumerate(mono):
            if not e or idx not in images:
                continue
            c, tgt = images[idx]
            new = list(mono)
            new[idx] -= 1
            new[tgt] += 1
            key = tuple(new)
            val = out.get(key, 0) + coeff * e * c
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def raising_operator(i, poly):
    """E_12 (i=1) or E_23 (i=2) acting on a polynomial in a_0..a_14."""
    if i not in (1, 2):
        raise ValueError("raising index must be 1 or 2")
    return apply_generator("e1" if i == 1 else "e2", poly)


def lowering_operator(i, poly):
    """F_21 (i=1) or F_32 (i=2) acting on a polynomial in a_0..a_14."""
    if i not in (1, 2):
        raise ValueError("lowering index must be 1 or 2")
    return apply_generator("f1" if i == 1 else "f2", poly)


def weight_space_monomials(d, weight):
    """Degree-d monomials in a_0..a_14 of the given torus weight."""
    out = []
    mono = [0] * 15

    def rec(idx, deg_left, w):
        if deg_left == 0:
            if w == (0, 0, 0):
                out.append(tuple(mono))
            return
        if idx == 15:
            return
        # bound: remaining variables all have first coordinate <= EXPONENTS[idx][0]
        I = EXPONENTS[idx]
        if w[0] > 4 * deg_left or w[1] > 4 * deg_left or w[2] > 4 * deg_left:
            return
        if w[0] < 0 or w[1] < 0 or w[2] < 0:
            return
        if idx == 14:
            # last variable is a_14 with weight (0,0,4)
            if w[0] == 0 and w[1] == 0 and w[2] == 4 * deg_left:
                mono[idx] = deg_left
                out.append(tuple(mono))
                mono[idx] = 0
            return
        for k in range(deg_left, -1, -1):
            nw = (w[0] - k * I[0], w[1] - k * I[1], w[2] - k * I[2])
            if nw[0] < 0 or nw[1] < 0 or nw[2] < 0:
                continue
            mono[idx] = k
            rec(idx + 1, deg_left - k, nw)
            mono[idx] = 0

    rec(0, d, tuple(weight))
    return sorted(out, reverse=True)


def poly_content_normalize(p):
    """Scale a rational polynomial to coprime ints, positive lex-leading."""
    from math import gcd
    den = 1
    for v in p.values():
        f = Fraction(v)
        den = den * f.denominator // gcd(den, f.denominator)
    ints = {m: int(Fraction(v) * den) for m, v in p.items() if v}
    if not ints:
        return {}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {m: v // g for m, v in ints.items()}
    if ints[max(ints)] < 0:
        ints = {m: -v for m, v in ints.items()}
    return ints
