"""Sparse truncated Fourier-Laurent series in q1,q2,q3 and u,v,w.

Exponents are stored as integers: quarter-units for q1,q2,q3 (single theta
constants carry denominators 4) and half-units for u,v,w.  Terms live in
blocks keyed by the q-exponent triple; each block is a Laurent polynomial
{(m1,m2,m3): int} in u,v,w.  A series carries one positive integer
denominator and an optional imaginary part with the same layout, so the
coefficients are Gaussian rationals while the hot loops stay integer-only.

The truncation box (T1,T2,T3) is a completeness contract: every exponent
with e_i <= T_i for all i that has a nonzero coefficient is stored.
"""

from fractions import Fraction
from math import gcd


def _merge_block(target, block, scale):
    for m, c in block.items():
        v = target.get(m, 0) + scale * c
        if v:
            target[m] = v
        else:
            del target[m]


def _conv(blocks_a, blocks_b, trunc, sign=1):
    """Convolution of two block dicts, truncated; returns a new block dict."""
    t0, t1, t2 = trunc
    out = {}
    for (a0, a1, a2), da in blocks_a.items():
        for (b0, b1, b2), db in blocks_b.items():
            e0, e1, e2 = a0 + b0, a1 + b1, a2 + b2
            if e0 > t0 or e1 > t1 or e2 > t2:
                continue
            tgt = out.setdefault((e0, e1, e2), {})
            small, big = (db, da) if len(da) > len(db) else (da, db)
            for (x0, x1, x2), ca in small.items():
                if sign != 1:
                    ca = ca * sign
                for (y0, y1, y2), cb in big.items():
                    key = (x0 + y0, x1 + y1, x2 + y2)
                    v = tgt.get(key, 0) + ca * cb
                    if v:
                        tgt[key] = v
                    else:
                        del tgt[key]
    return {e: blk for e, blk in out.items() if blk}


class QSeries:
    __slots__ = ("trunc", "den", "re", "im")

    def __init__(self, trunc, re=None, im=None, den=1):
        self.trunc = tuple(trunc)
        self.re = re if re is not None else {}
        self.im = im  # None means exactly real
        self.den = den

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, trunc):
        return cls(trunc)

    @classmethod
    def constant(cls, trunc, value):
        value = Fraction(value)
        re = {(0, 0, 0): {(0, 0, 0): value.numerator}} if value else {}
        return cls(trunc, re=re, den=value.denominator)

    @classmethod
    def monomial(cls, trunc, e, m, value=1):
        value = Fraction(value)
        if any(e[i] > trunc[i] for i in range(3)) or not value:
            return cls(trunc)
        return cls(trunc, re={tuple(e): {tuple(m): value.numerator}},
                   den=value.denominator)

    # -- bookkeeping --------------------------------------------------------

    def is_real(self):
        return self.im is None or not self.im

    def is_zero(self):
        return not self.re and not self.im

    def valuation(self):
        """Componentwise minimal stored q-exponent; None for the zero series."""
        keys = list(self.re) + (list(self.im) if self.im else [])
        if not keys:
            return None
        return tuple(min(k[i] for k in keys) for i in range(3))

    def normalize(self):
        g = self.den
        for blocks in (self.re, self.im or {}):
            for blk in blocks.values():
                for c in blk.values():
                    g = gcd(g, c)
                    if g == 1:
                        return self
        if g > 1:
            self.den //= g
            for blocks in (self.re, self.im or {}):
                for blk in blocks.values():
                    for m in blk:
                        blk[m] //= g
        if self.im is not None and not self.im:
            self.im = None
        return self

    def copy(self):
        re = {e: dict(b) for e, b in self.re.items()}
        im = {e: dict(b) for e, b in self.im.items()} if self.im else None
        return QSeries(self.trunc, re=re, im=im, den=self.den)

    def restrict(self, trunc):
        trunc = tuple(trunc)

        def cut(blocks):
            return {e: dict(b) for e, b in blocks.items()
                    if all(e[i] <= trunc[i] for i in range(3))}

        return QSeries(trunc, re=cut(self.re),
                       im=cut(self.im) if self.im else None, den=self.den)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        return self._add_scaled(other, 1)

    def __sub__(self, other):
        return self._add_scaled(other, -1)

    def _add_scaled(self, other, sign):
        trunc = tuple(min(self.trunc[i], other.trunc[i]) for i in range(3))
        g = gcd(self.den, other.den)
        sa, sb = other.den // g, self.den // g
        den = self.den * sa

        def combine(a, b):
            out = {}
            if a:
                for e, blk in a.items():
                    if all(e[i] <= trunc[i] for i in range(3)):
                        out[e] = {m: c * sa for m, c in blk.items()}
            if b:
                for e, blk in b.items():
                    if all(e[i] <= trunc[i] for i in range(3)):
                        tgt = out.setdefault(e, {})
                        _merge_block(tgt, blk, sign * sb)
            return {e: blk for e, blk in out.items() if blk}

        re = combine(self.re, other.re)
        im = None
        if self.im is not None or other.im is not None:
            im = combine(self.im, other.im)
            if not im:
                im = None
        out = QSeries(trunc, re=re, im=im, den=den)
        if den > 1 << 128:
            out.normalize()
        return out

    def __neg__(self):
        return self.scale(-1)

    def scale(self, value):
        value = Fraction(value)
        if not value:
            return QSeries.zero(self.trunc)

        def sc(blocks):
            return {e: {m: c * value.numerator for m, c in blk.items()}
                    for e, blk in blocks.items()}

        out = QSeries(self.trunc, re=sc(self.re),
                      im=sc(self.im) if self.im else None,
                      den=self.den * value.denominator)
        return out.normalize()

    def mul_i_power(self, t):
        """Multiply by i^t."""
        t %= 4
        if t == 0:
            return self.copy()
        re = {e: dict(b) for e, b in self.re.items()}
        im = {e: dict(b) for e, b in self.im.items()} if self.im else {}
        if t == 1:
            re2, im2 = {e: {m: -c for m, c in b.items()} for e, b in im.items()}, re
        elif t == 2:
            re2 = {e: {m: -c for m, c in b.items()} for e, b in re.items()}
            im2 = {e: {m: -c for m, c in b.items()} for e, b in im.items()}
        else:
            re2, im2 = im, {e: {m: -c for m, c in b.items()} for e, b in re.items()}
        return QSeries(self.trunc, re=re2, im=im2 or None, den=self.den)

    def _mul_trunc(self, other):
        va = self.valuation() or self.trunc
        vb = other.valuation() or other.trunc
        return tuple(min(self.trunc[i] + vb[i], other.trunc[i] + va[i])
                     for i in range(3))

    def __mul__(self, other):
        trunc = self._mul_trunc(other)
        den = self.den * other.den
        if self.is_real() and other.is_real():
            re = _conv(self.re, other.re, trunc)
            out = QSeries(trunc, re=re, den=den)
        else:
            a_re, a_im = self.re, self.im or {}
            b_re, b_im = other.re, other.im or {}
            re = _conv(a_re, b_re, trunc)
            if a_im and b_im:
                sub = _conv(a_im, b_im, trunc)
                for e, blk in sub.items():
                    tgt = re.setdefault(e, {})
                    _merge_block(tgt, blk, -1)
                re = {e: blk for e, blk in re.items() if blk}
            im = _conv(a_re, b_im, trunc) if b_im else {}
            if a_im:
                part = _conv(a_im, b_re, trunc)
                for e, blk in part.items():
                    tgt = im.setdefault(e, {})
                    _merge_block(tgt, blk, 1)
                im = {e: blk for e, blk in im.items() if blk}
            out = QSeries(trunc, re=re, im=im or None, den=den)
        if out.den > 1 << 160:
            out.normalize()
        return out

    # -- division -----------------------------------------------------------

    def leading_term(self):
        """(e, m, coeff) of the graded-lex smallest q-block, which must hold
        a single u,v,w term; raises otherwise."""
        if self.im:
            raise ArithmeticError("leading term of a non-real series")
        if not self.re:
            raise ArithmeticError("leading term of the zero series")
        e = min(self.re, key=lambda k: (k[0] + k[1] + k[2], k))
        blk = self.re[e]
        if len(blk) != 1:
            raise ArithmeticError("leading q-block is not a monomial")
        (m, c), = blk.items()
        return e, m, Fraction(c, self.den)

    def shift(self, dq, dm):
        """Multiply by q^dq u^dm; q-exponents must stay nonnegative."""
        def sh(blocks):
            out = {}
            for e, blk in blocks.items():
                key = (e[0] + dq[0], e[1] + dq[1], e[2] + dq[2])
                if any(k < 0 for k in key):
                    raise ArithmeticError("negative q-exponent after shift")
                out[key] = {(m[0] + dm[0], m[1] + dm[1], m[2] + dm[2]): c
                            for m, c in blk.items()}
            return out

        trunc = tuple(self.trunc[i] + dq[i] for i in range(3))
        return QSeries(trunc, re=sh(self.re),
                       im=sh(self.im) if self.im else None, den=self.den)

    def reciprocal(self):
        """Inverse of a unit series (leading block = constant at q^0)."""
        if self.im:
            raise ArithmeticError("reciprocal implemented for real series")
        blk0 = self.re.get((0, 0, 0))
        if not blk0 or list(blk0) != [(0, 0, 0)]:
            raise ArithmeticError("not a unit series")
        c0 = Fraction(blk0[(0, 0, 0)], self.den)
        trunc = self.trunc
        # Y_e = -(sum_{0<f<=e} U_f Y_{e-f}) / c0, graded-lex over blocks
        u_blocks = {e: blk for e, blk in self.re.items() if e != (0, 0, 0)}
        inv_blocks = {(0, 0, 0): {(0, 0, 0): Fraction(1) / c0}}
        order = sorted(self._box_blocks(trunc, u_blocks),
                       key=lambda k: (k[0] + k[1] + k[2], k))
        for e in order:
            if e == (0, 0, 0):
                continue
            acc = {}
            for f, ublk in u_blocks.items():
                g = (e[0] - f[0], e[1] - f[1], e[2] - f[2])
                if min(g) < 0:
                    continue
                yblk = inv_blocks.get(g)
                if not yblk:
                    continue
                for mu, cu in ublk.items():
                    cu = Fraction(cu, self.den)
                    for my, cy in yblk.items():
                        key = (mu[0] + my[0], mu[1] + my[1], mu[2] + my[2])
                        v = acc.get(key, 0) + cu * cy
                        if v:
                            acc[key] = v
                        else:
                            del acc[key]
            if acc:
                inv_blocks[e] = {m: -c / c0 for m, c in acc.items()}
        return _from_fraction_blocks(trunc, inv_blocks)

    @staticmethod
    def _box_blocks(trunc, u_blocks):
        """Blocks reachable as sums of input blocks within the box."""
        reach = {(0, 0, 0)}
        frontier = [(0, 0, 0)]
        while frontier:
            e = frontier.pop()
            for f in u_blocks:
                g = (e[0] + f[0], e[1] + f[1], e[2] + f[2])
                if g not in reach and all(g[i] <= trunc[i] for i in range(3)):
                    reach.add(g)
                    frontier.append(g)
        return reach

    # -- access -------------------------------------------------------------

    def coefficient(self, e, m):
        """Gaussian-rational coefficient at q^e u^m (stored units)."""
        e, m = tuple(e), tuple(m)
        re = Fraction(self.re.get(e, {}).get(m, 0), self.den)
        im = Fraction((self.im or {}).get(e, {}).get(m, 0), self.den)
        return re, im

    def block(self, e):
        """The u,v,w Laurent polynomial at q-block e, as {m: Fraction}."""
        if self.im and self.im.get(tuple(e)):
            raise ArithmeticError("block of a non-real series")
        blk = self.re.get(tuple(e), {})
        return {m: Fraction(c, self.den) for m, c in blk.items()}

    def terms(self):
        out = []
        for e in sorted(self.re):
            for m in sorted(self.re[e]):
                out.append((e, m, Fraction(self.re[e][m], self.den),
                            Fraction((self.im or {}).get(e, {}).get(m, 0),
                                     self.den)))
        if self.im:
            for e in sorted(self.im):
                for m in sorted(self.im[e]):
                    if m not in self.re.get(e, {}):
                        out.append((e, m, Fraction(0),
                                    Fraction(self.im[e][m], self.den)))
        out.sort(key=lambda t: (t[0], t[1]))
        return out

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self - other).is_zero()

    def assert_real(self, what="series"):
        if self.im:
            raise ArithmeticError(f"{what} has a nonzero imaginary part")
        self.im = None
        return self

    # -- serialization ------------------------------------------------------

    def to_json(self):
        terms = [{"q": list(e), "uvw": list(m),
                  "re": str(cre), "im": str(cim)}
                 for (e, m, cre, cim) in self.terms()]
        return {"trunc": list(self.trunc), "terms": terms}

    @classmethod
    def from_json(cls, data):
        out = cls.zero(tuple(data["trunc"]))
        den = 1
        parsed = []
        for t in data["terms"]:
            cre, cim = Fraction(t["re"]), Fraction(t["im"])
            parsed.append((tuple(t["q"]), tuple(t["uvw"]), cre, cim))
            den = den * cre.denominator // gcd(den, cre.denominator)
            den = den * cim.denominator // gcd(den, cim.denominator)
        re, im = {}, {}
        for e, m, cre, cim in parsed:
            if cre:
                re.setdefault(e, {})[m] = int(cre * den)
            if cim:
                im.setdefault(e, {})[m] = int(cim * den)
        return cls(tuple(data["trunc"]), re=re, im=im or None, den=den)


def _from_fraction_blocks(trunc, blocks):
    den = 1
    for blk in blocks.values():
        for c in blk.values():
            den = den * c.denominator // gcd(den, c.denominator)
    re = {}
    for e, blk in blocks.items():
        cur = {m: int(c * den) for m, c in blk.items() if c}
        if cur:
            re[e] = cur
    return QSeries(trunc, re=re, den=den)


def divide_by(num, den_series):
    """Exact division num / den for den with a monomial leading q-block."""
    e0, m0, c0 = den_series.leading_term()
    val = num.valuation()
    if val is not None and any(val[i] < e0[i] for i in range(3)):
        raise ArithmeticError("numerator valuation below denominator valuation")
    unit = den_series.shift((-e0[0], -e0[1], -e0[2]), (-m0[0], -m0[1], -m0[2]))
    unit = unit.scale(Fraction(1) / c0)
    shifted = num.shift((-e0[0], -e0[1], -e0[2]), (-m0[0], -m0[1], -m0[2]))
    return shifted.scale(Fraction(1) / c0) * unit.reciprocal()


# ---------------------------------------------------------------------------
# Laurent polynomial blocks ({(m1,m2,m3): Fraction}) for blockwise division
# ---------------------------------------------------------------------------

def laurent_mul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            key = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            v = out.get(key, 0) + c1 * c2
            if v:
                out[key] = v
            else:
                del out[key]
    return out


def laurent_divide_exact(num, den):
    """num / den for Laurent polynomials in u,v,w; None when not exact.

    Exact quotients have support inside the componentwise Newton-polytope
    bound [min(num)-max(den), max(num)-min(den)]; a quotient term escaping
    that box certifies non-divisibility.
    """
    if not num:
        return {}
    if not den:
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    num = dict(num)
    lead = max(den)
    lo = tuple(min(m[i] for m in num) - max(m[i] for m in den) for i in range(3))
    hi = tuple(max(m[i] for m in num) - min(m[i] for m in den) for i in range(3))
    quot = {}
    while num:
        top = max(num)
        key = (top[0] - lead[0], top[1] - lead[1], top[2] - lead[2])
        if any(key[i] < lo[i] or key[i] > hi[i] for i in range(3)):
            return None
        c = num[top] / den[lead]
        quot[key] = quot.get(key, 0) + c
        for m, v in den.items():
            mm = (key[0] + m[0], key[1] + m[1], key[2] + m[2])
            w = num.get(mm, 0) - c * v
            if w:
                num[mm] = w
            else:
                num.pop(mm, None)
    return quot
