"""Genus-3 theta constants with characteristics and the forms chi18, chi408.

Conventions: a theta term carries q_i-exponent (l_i+a_i/2)^2/2 and
u-exponent (l_1+a_1/2)(l_2+a_2/2) relative to q_j = e^{2 pi i tau_jj} and
u = e^{2 pi i tau_12}.  Exponents are stored as integers (2l+a)^2 for q
(eighths of the paper unit) and (2l_i+a_i)(2l_j+a_j) for u,v,w (halves of
the paper unit), so a half-integral matrix N = [n11,n22,n33;2n12,2n13,2n23]
sits at stored q-block (8 n11, 8 n22, 8 n33) and stored u,v,w-exponents
(4 n12, 4 n13, 4 n23).  The phase e^{pi i (l+a/2).b} splits
as (-1)^{l.b} i^{a.b}; for even characteristics i^{a.b} = +-1 and all bodies
are real with integer coefficients.

Every constructor takes an optional `point` (su, sv, sw): exact rationals
interpreted as square roots of u, v, w.  With a point the series collapse to
q-only series (all u,v,w exponents evaluated), which is what the deep
quotient pipeline uses; the code path is otherwise identical.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt

from .series import QSeries, _from_fraction_blocks, divide_by

Z_MONOMIALS_4 = [(i, j, 4 - i - j) for i in range(4, -1, -1)
                 for j in range(4 - i, -1, -1)]
Z_MONOMIALS_2 = [(i, j, 2 - i - j) for i in range(2, -1, -1)
                 for j in range(2 - i, -1, -1)]


def is_even_characteristic(a, b):
    return sum(x * y for x, y in zip(a, b)) % 2 == 0


@lru_cache(maxsize=None)
def even_characteristics():
    chars = []
    for abits in range(8):
        for bbits in range(8):
            a = ((abits >> 2) & 1, (abits >> 1) & 1, abits & 1)
            b = ((bbits >> 2) & 1, (bbits >> 1) & 1, bbits & 1)
            if is_even_characteristic(a, b):
                chars.append((a, b))
    assert len(chars) == 36
    return tuple(chars)


def _lattice_range(a_i, bound):
    """Integers l with (2l + a_i)^2 <= bound."""
    out = []
    top = isqrt(bound) + 1
    for l in range(-(top + 1) // 2 - 1, top // 2 + 2):
        if (2 * l + a_i) ** 2 <= bound:
            out.append(l)
    return out


def _theta_sum(a, b, trunc, point, zorders):
    """Shared lattice sum for constants (zorders={0}) and jets.

    Returns {k: blocks} with blocks {e: {m: int}} and the common denominator
    2^|k| k! handled by the caller.
    """
    sign_global = 1 if sum(x * y for x, y in zip(a, b)) % 4 == 0 else -1
    ranges = [_lattice_range(a[i], trunc[i]) for i in range(3)]
    out = {k: {} for deg in zorders for k in _zmons(deg)}
    su = sv = sw = None
    if point is not None:
        su, sv, sw = (Fraction(x) for x in point)
    for l1 in ranges[0]:
        c1 = 2 * l1 + a[0]
        e1 = c1 * c1
        for l2 in ranges[1]:
            c2 = 2 * l2 + a[1]
            e2 = c2 * c2
            m1 = c1 * c2
            for l3 in ranges[2]:
                c3 = 2 * l3 + a[2]
                e3 = c3 * c3
                sgn = sign_global * (-1) ** ((l1 * b[0] + l2 * b[1] + l3 * b[2]) % 2)
                e = (e1, e2, e3)
                m = (m1, c1 * c3, c2 * c3)
                if point is None:
                    for k, blocks in out.items():
                        wt = sgn * c1 ** k[0] * c2 ** k[1] * c3 ** k[2]
                        if not wt:
                            continue
                        blk = blocks.setdefault(e, {})
                        v = blk.get(m, 0) + wt
                        if v:
                            blk[m] = v
                        else:
                            del blk[m]
                else:
                    val = sgn * su ** m[0] * sv ** m[1] * sw ** m[2]
                    for k, blocks in out.items():
                        wt = val * c1 ** k[0] * c2 ** k[1] * c3 ** k[2]
                        if not wt:
                            continue
                        blk = blocks.setdefault(e, {})
                        v = blk.get((0, 0, 0), 0) + wt
                        if v:
                            blk[(0, 0, 0)] = v
                        else:
                            del blk[(0, 0, 0)]
    return out


def _zmons(deg):
    if deg == 0:
        return [(0, 0, 0)]
    if deg == 2:
        return Z_MONOMIALS_2
    if deg == 4:
        return Z_MONOMIALS_4
    raise ValueError(deg)


def _blocks_to_series(trunc, blocks, den=1, point=None):
    if point is None:
        re = {e: blk for e, blk in blocks.items() if blk}
        return QSeries(trunc, re=re, den=den)
    fr = {e: {m: Fraction(c, den) for m, c in blk.items()}
          for e, blk in blocks.items() if blk}
    return _from_fraction_blocks(trunc, fr)


def theta_constant(ch, trunc, point=None):
    """theta[a;b](tau) as a QSeries; identically zero for odd characteristics."""
    a, b = ch
    if not is_even_characteristic(a, b):
        return QSeries.zero(trunc)
    sums = _theta_sum(a, b, trunc, point, {0})
    return _blocks_to_series(trunc, sums[(0, 0, 0)], point=point)


def theta_jet(ch, trunc, point=None):
    """z-jet of theta[a;b](tau,z) to total degree 4.

    Returns {z-monomial k: QSeries}; the factor (2 pi i)^|k| is factored out
    (recorded by |k| itself), the 1/k! and the half-integer powers of
    (l + a/2) are folded into the coefficients.  Even characteristics only
    have even z-degrees; odd-degree parts vanish by the l -> -l-a pairing.
    """
    a, b = ch
    if not is_even_characteristic(a, b):
        return {k: QSeries.zero(trunc) for deg in (0, 2, 4) for k in _zmons(deg)}
    sums = _theta_sum(a, b, trunc, point, (0, 2, 4))
    out = {}
    for k, blocks in sums.items():
        deg = sum(k)
        den = 2 ** deg * factorial(k[0]) * factorial(k[1]) * factorial(k[2])
        out[k] = _blocks_to_series(trunc, blocks, den=den, point=point)
    return out


def _char(mu, nu, alpha, beta):
    return ((mu, 0, 0), (nu, alpha, beta))


def _symbolic_cache(fn):
    """Cache results only when no evaluation point is given."""
    cache = {}

    def wrapped(*args, point=None):
        if point is not None:
            return fn(*args, point=point)
        if args not in cache:
            cache[args] = fn(*args, point=None)
        return cache[args]

    wrapped.__name__ = fn.__name__
    wrapped.__doc__ = fn.__doc__
    return wrapped


@_symbolic_cache
def r_munu(mu, nu, trunc, point=None):
    """Product of the four theta constants theta[mu 0 0; nu alpha beta]."""
    prod = None
    for alpha in (0, 1):
        for beta in (0, 1):
            t = theta_constant(_char(mu, nu, alpha, beta), trunc, point)
            prod = t if prod is None else prod * t
    prod.assert_real(f"r_{mu}{nu}")
    return prod.normalize()


@_symbolic_cache
def s_munu_jet(mu, nu, trunc, point=None):
    """Jet of s_munu(tau,z): {k: QSeries} for |k| in {0,2,4}.

    s = sum over (alpha,beta) of (theta-jet / theta-constant)^2; the degree-0
    part is the constant 4.
    """
    acc = {k: QSeries.zero(trunc) for deg in (0, 2, 4) for k in _zmons(deg)}
    for alpha in (0, 1):
        for beta in (0, 1):
            jets = theta_jet(_char(mu, nu, alpha, beta), trunc, point)
            t0 = jets[(0, 0, 0)]
            u2 = {}
            for k in Z_MONOMIALS_2:
                u2[k] = divide_by(jets[k], t0)
                acc[k] = acc[k] + u2[k].scale(2)
            for k in Z_MONOMIALS_4:
                term = divide_by(jets[k], t0).scale(2)
                for k1 in Z_MONOMIALS_2:
                    k2 = (k[0] - k1[0], k[1] - k1[1], k[2] - k1[2])
                    if min(k2) < 0 or k2 < k1:
                        continue
                    prod = u2[k1] * u2[k2]
                    term = term + (prod if k1 != k2 else prod) \
                        .scale(1 if k1 == k2 else 2)
                acc[k] = acc[k] + term
            acc[(0, 0, 0)] = acc[(0, 0, 0)] + QSeries.constant(trunc, 1)
    for k, s in acc.items():
        s.assert_real(f"s_{mu}{nu} jet {k}")
    return {k: s.normalize() for k, s in acc.items()}


# ---------------------------------------------------------------------------
# chi18
# ---------------------------------------------------------------------------

def _product_tree(factors):
    items = list(factors)
    while len(items) > 1:
        nxt = []
        for i in range(0, len(items) - 1, 2):
            nxt.append(items[i] * items[i + 1])
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


U = 4  # stored exponent of the paper's u (= e^{2 pi i tau_12}); likewise v, w


def _sigma_polys():
    """Elementary symmetric polynomials of u,v,w in stored exponent keys."""
    s1 = {(U, 0, 0): Fraction(1), (0, U, 0): Fraction(1), (0, 0, U): Fraction(1)}
    s2 = {(U, U, 0): Fraction(1), (U, 0, U): Fraction(1), (0, U, U): Fraction(1)}
    s3 = {(U, U, U): Fraction(1)}
    return s1, s2, s3


def chi18_target_block():
    """The printed leading block of chi18 at q1^2 q2^2 q3^2.

    -((s3 - s2 + s1 - 1)/s3)^2 (s3^2 - 2 s3 s1 + 8 s3 + s1^2 - 4 s2) as a
    Laurent polynomial in u,v,w (stored half-unit exponents).
    """
    from .series import laurent_mul
    s1, s2, s3 = _sigma_polys()

    def add(a, b, scale=1):
        out = dict(a)
        for m, c in b.items():
            v = out.get(m, 0) + scale * c
            if v:
                out[m] = v
            else:
                del out[m]
        return out

    one = {(0, 0, 0): Fraction(1)}
    lin = add(add(add(s3, s2, -1), s1), one, -1)
    quad = add(add(add(add(laurent_mul(s3, s3), laurent_mul(s3, s1), -2),
                       s3, 8), laurent_mul(s1, s1)), s2, -4)
    num = laurent_mul(laurent_mul(lin, lin), quad)
    # divide by s3^2 = (uvw)^2 and negate
    return {(m[0] - 2 * U, m[1] - 2 * U, m[2] - 2 * U): -c
            for m, c in num.items()}


@_symbolic_cache
def chi18_raw(trunc, point=None):
    """Unnormalized product of the 36 even theta constants."""
    factors = [theta_constant(ch, trunc, point) for ch in even_characteristics()]
    prod = _product_tree(factors)
    prod.assert_real("chi18")
    return prod.normalize()


@lru_cache(maxsize=None)
def chi18_normalization():
    """The rational scalar mapping the raw 36-fold product onto the printed
    leading block; asserted constant across the whole block.

    Stored q-units are eighths of the e^{2 pi i tau_jj} exponent, so the
    paper's q1^2 q2^2 q3^2 block lives at (16,16,16).
    """
    trunc = (16, 16, 16)
    raw = chi18_raw(trunc)
    block = raw.block((16, 16, 16))
    target = chi18_target_block()
    if set(block) != set(target):
        raise ArithmeticError("chi18 leading block support mismatch")
    ratio = None
    for m, c in target.items():
        r = c / block[m]
        if ratio is None:
            ratio = r
        elif ratio != r:
            raise ArithmeticError("chi18 normalization is not a single scalar")
    return ratio


def chi18(trunc, point=None):
    """chi18 with the leading q1^2 q2^2 q3^2 block matching the printed one."""
    return chi18_raw(trunc, point=point).scale(chi18_normalization())


# ---------------------------------------------------------------------------
# chi408
# ---------------------------------------------------------------------------

def chi408_raw(trunc, point=None):
    """The 15 coordinate series before the one-scalar calibration."""
    r00 = r_munu(0, 0, trunc, point=point)
    r01 = r_munu(0, 1, trunc, point=point)
    r10 = r_munu(1, 0, trunc, point=point)
    s00 = s_munu_jet(0, 0, trunc, point=point)
    s01 = s_munu_jet(0, 1, trunc, point=point)
    s10 = s_munu_jet(1, 0, trunc, point=point)
    rrr = r00 * r01 * r10
    out = []
    for I in Z_MONOMIALS_4:
        combo = r01 * s01[I] + r10 * s10[I] - r00 * s00[I]
        out.append((rrr * combo).normalize())
    return out


CHI408_LEAD = (0, 0, 0, 4, 0, 4, 0, 0, 0, 0, 0, 0, 4, 0, 0)


@lru_cache(maxsize=None)
def chi408_calibration():
    """One rational scalar making a([1,1,1;0,0,0]) = [0,0,0,4,0,4,0,...,4,0,0]."""
    raw = chi408_raw((8, 8, 8))
    scalar = None
    for i, series in enumerate(raw):
        re, im = series.coefficient((8, 8, 8), (0, 0, 0))
        if im:
            raise ArithmeticError("chi408 coordinate has imaginary part")
        target = CHI408_LEAD[i]
        if target == 0:
            if re:
                raise ArithmeticError(
                    f"chi408 calibration: entry {i} should vanish at n0")
            continue
        r = Fraction(target) / re
        if scalar is None:
            scalar = r
        elif scalar != r:
            raise ArithmeticError("chi408 rescale ratios disagree")
    return scalar


@_symbolic_cache
def chi408(trunc, point=None):
    """The 15 calibrated coordinate series of the weight-(4,0,8) cusp form."""
    c = chi408_calibration()
    return tuple(s.scale(c) for s in chi408_raw(trunc, point))


# ---------------------------------------------------------------------------
# S3 action on the Fourier variables
# ---------------------------------------------------------------------------

PAIRS = ((0, 1), (0, 2), (1, 2))  # u=tau12, v=tau13, w=tau23 (0-indexed)


def _pair_permutation(perm):
    """Index map P: new uvw slot of each old slot under sigma."""
    out = []
    for (i, j) in PAIRS:
        img = frozenset((perm[i] - 1, perm[j] - 1))
        out.append([frozenset(p) for p in PAIRS].index(img))
    return tuple(out)


def s3_transport(perm, series):
    """Substitute q_i -> q_{perm(i)} and permute u,v,w as pair labels.

    perm is a tuple (sigma(1), sigma(2), sigma(3)) of {1,2,3}.
    """
    pperm = _pair_permutation(perm)

    def move(blocks):
        out = {}
        for e, blk in blocks.items():
            ne = [0, 0, 0]
            for i in range(3):
                ne[perm[i] - 1] = e[i]
            tgt = out.setdefault(tuple(ne), {})
            for m, c in blk.items():
                nm = [0, 0, 0]
                for i in range(3):
                    nm[pperm[i]] = m[i]
                nm = tuple(nm)
                v = tgt.get(nm, 0) + c
                if v:
                    tgt[nm] = v
                else:
                    del tgt[nm]
        return out

    nt = [0, 0, 0]
    for i in range(3):
        nt[perm[i] - 1] = series.trunc[i]
    return QSeries(tuple(nt), re=move(series.re),
                   im=move(series.im) if series.im else None, den=series.den)
