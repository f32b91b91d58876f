"""Vector-valued Siegel modular form arithmetic.

Forms of weight (i,j,k) carry one QSeries per monomial of
Sym^i(std) x Sym^j(wedge^2 std), ordered Sym^i-monomial outer, Sym^j inner,
both descending lex.  Stored exponent units follow theta3: a half-integral
matrix N = [n11,n22,n33; 2n12,2n13,2n23] sits at q-block (8n11,8n22,8n33)
with u,v,w exponents (4*2n12, 4*2n13, 4*2n23).
"""

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from . import theta3
from .conc import Concomitant, NotDivisibleError, monomials_of_degree, multinomial
from .linalg import lagrange_coefficients
from .rep3 import EXPONENTS, NFACT
from .series import QSeries, laurent_divide_exact, laurent_mul

QSTEP = 8          # stored q-units per integer q-exponent
USTEP = theta3.U   # stored u,v,w-units per paper exponent


class VectorValuedForm:
    __slots__ = ("weight", "coords", "basis", "scalar_note")

    def __init__(self, weight, coords, basis="symi-outer-lex", scalar_note="1"):
        self.weight = tuple(weight)
        self.coords = list(coords)
        self.basis = basis
        self.scalar_note = scalar_note
        i, j, _ = self.weight
        expected = len(monomials_of_degree(i)) * len(monomials_of_degree(j))
        if len(self.coords) != expected:
            raise ValueError(
                f"weight {self.weight} needs {expected} coordinates, "
                f"got {len(self.coords)}")

    @property
    def trunc(self):
        return tuple(min(s.trunc[i] for s in self.coords) for i in range(3))

    def basis_pairs(self):
        i, j, _ = self.weight
        return [(g, h) for g in monomials_of_degree(i)
                for h in monomials_of_degree(j)]

    def scale(self, x):
        return VectorValuedForm(self.weight, [s.scale(x) for s in self.coords],
                                basis=self.basis, scalar_note=self.scalar_note)

    def to_json(self):
        return {"weight": list(self.weight),
                "coords": [s.to_json() for s in self.coords],
                "basis": self.basis, "scalar_note": self.scalar_note}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data["weight"]),
                   [QSeries.from_json(c) for c in data["coords"]],
                   basis=data.get("basis", "symi-outer-lex"),
                   scalar_note=data.get("scalar_note", "1"))


def chi408_form(trunc, point=None):
    return VectorValuedForm((4, 0, 8), list(theta3.chi408(trunc, point=point)))


def chi18_form(trunc, point=None):
    return VectorValuedForm((0, 0, 18), [theta3.chi18(trunc, point=point)])


def stored_key(N):
    """(q-block, uvw-exponents) of N = (n11,n22,n33,2n12,2n13,2n23)."""
    n11, n22, n33, m12, m13, m23 = N
    return ((QSTEP * n11, QSTEP * n22, QSTEP * n33),
            (USTEP * m12, USTEP * m13, USTEP * m23))


def fourier_coefficient(F, N):
    """Coefficient vector of F at the half-integral matrix N (exact)."""
    e, m = stored_key(N)
    box = F.trunc
    if any(e[i] > box[i] for i in range(3)):
        raise ValueError(f"N={N} outside the truncation box {box}")
    out = []
    for s in F.coords:
        re, im = s.coefficient(e, m)
        if im:
            raise ArithmeticError("non-real Fourier coefficient")
        out.append(re)
    return out


def order_at_infinity(F):
    """min over stored terms of min_i(e_i), in integer q-units.

    Truncation-limited diagnostic; integer floor of the stored valuation.
    """
    best = None
    for s in F.coords:
        for e in list(s.re) + (list(s.im) if s.im else []):
            v = min(e)
            best = v if best is None else min(best, v)
    if best is None:
        raise ArithmeticError("identically zero form")
    return best // QSTEP


# ---------------------------------------------------------------------------
# gamma-prime: substitute the chi408 coordinates into a concomitant
# ---------------------------------------------------------------------------

def _prefix_product(indices, values, cache):
    if indices in cache:
        return cache[indices]
    if len(indices) == 1:
        out = values[indices[0]]
    else:
        out = _prefix_product(indices[:-1], values, cache) * values[indices[-1]]
    cache[indices] = out
    return out


def evaluate_poly_on_series(poly, values, trunc, cache=None):
    if cache is None:
        cache = {}
    acc = QSeries.zero(trunc)
    for mono, coef in poly.items():
        idx = []
        for i, e in enumerate(mono):
            idx.extend([i] * e)
        prod = _prefix_product(tuple(idx), values, cache)
        acc = acc + prod.scale(coef)
    return acc


def gamma_prime(cnc, chi=None, trunc=None, point=None, need=None):
    """gamma'(c) = c(chi408 coordinates), a form of weight
    (l1-l2, l2-l3, l3+8d) for a concomitant of SL-type lam and degree d.
    """
    if chi is None:
        if trunc is None:
            raise ValueError("gamma_prime needs a chi408 form or a truncation")
        chi = chi408_form(trunc, point=point)
    lam, d = cnc.lam, cnc.d
    weight = (lam[0] - lam[1], lam[1] - lam[2], lam[2] + 8 * d)
    # substitute a_I <- coordinate_I / n_I
    values = [chi.coords[i].scale(Fraction(1, NFACT[i])) for i in range(15)]
    base = chi.trunc
    out_box = tuple(base[i] + (d - 1) * QSTEP for i in range(3))
    if need is not None:
        want = tuple(QSTEP * n for n in need)
        if any(want[i] > out_box[i] for i in range(3)):
            raise ValueError(
                f"truncation insufficient: need stored box {want}, "
                f"complete only to {out_box}")
    cache = {}
    coords = []
    for alpha in monomials_of_degree(cnc.xdeg):
        for beta in monomials_of_degree(cnc.hatdeg):
            poly = cnc.coords.get((alpha, beta), {})
            coords.append(evaluate_poly_on_series(poly, values, out_box, cache))
    return VectorValuedForm(weight, coords)


def form_product(F, G):
    """Coordinate-convolution product of two Sym^i(std)-valued forms (j = 0)."""
    (i1, j1, k1), (i2, j2, k2) = F.weight, G.weight
    if j1 or j2:
        raise NotImplementedError("form products implemented for j = 0")
    mons1 = monomials_of_degree(i1)
    mons2 = monomials_of_degree(i2)
    out_mons = monomials_of_degree(i1 + i2)
    pos = {m: n for n, m in enumerate(out_mons)}
    trunc = tuple(min(F.trunc[t], G.trunc[t]) for t in range(3))
    coords = [QSeries.zero(trunc) for _ in out_mons]
    for a, sa in zip(mons1, F.coords):
        for b, sb in zip(mons2, G.coords):
            key = (a[0] + b[0], a[1] + b[1], a[2] + b[2])
            coords[pos[key]] = coords[pos[key]] + sa * sb
    return VectorValuedForm((i1 + i2, 0, k1 + k2), coords)


def pair_forms(F, G):
    """<F, G> = sum_I F_I G_I / n_I, times the recorded pairing constant.

    Mirrors the polynomial-side contraction, so gamma' intertwines the two.
    """
    from .conc import PAIRING_CONSTANT
    if F.weight[:2] != (4, 0) or G.weight[:2] != (0, 4):
        raise NotImplementedError("pairing implemented for (4,0)x(0,4) shapes")
    trunc = tuple(min(F.trunc[t], G.trunc[t]) for t in range(3))
    acc = QSeries.zero(trunc)
    for n in range(15):
        acc = acc + (F.coords[n] * G.coords[n]).scale(
            PAIRING_CONSTANT / NFACT[n])
    k = F.weight[2] + G.weight[2]
    return VectorValuedForm((0, 0, k), [acc])


# ---------------------------------------------------------------------------
# exact division by powers of chi18
# ---------------------------------------------------------------------------

def _blocks_in_box(box):
    """Stored q-blocks (multiples of QSTEP) within the box, graded-lex."""
    out = [(QSTEP * a, QSTEP * b, QSTEP * c)
           for a in range(box[0] // QSTEP + 1)
           for b in range(box[1] // QSTEP + 1)
           for c in range(box[2] // QSTEP + 1)]
    out.sort(key=lambda e: (e[0] + e[1] + e[2], e))
    return out


def divide_chi18(F, m, chi18_series=None):
    """Exact division by chi18^m; raises NotDivisibleError with a witness."""
    if m < 1:
        raise ValueError("m must be >= 1")
    box = F.trunc
    off = (16 * m, 16 * m, 16 * m)
    qbox = tuple(box[i] - off[i] for i in range(3))
    if any(b < 0 for b in qbox):
        raise ValueError("truncation box does not reach past chi18^m")
    if chi18_series is None:
        chi18_series = theta3.chi18(box)
    X = chi18_series
    for _ in range(m - 1):
        X = X * chi18_series
    X0 = X.block(off)
    xblocks = {e: X.block(e) for e in X.re}
    out_coords = []
    for ci, s in enumerate(F.coords):
        qblocks = {}
        for n in _blocks_in_box(qbox):
            num = dict(s.block((n[0] + off[0], n[1] + off[1], n[2] + off[2])))
            for jb, qv in qblocks.items():
                if any(jb[i] > n[i] for i in range(3)):
                    continue
                xb = xblocks.get((n[0] - jb[0] + off[0], n[1] - jb[1] + off[1],
                                  n[2] - jb[2] + off[2]))
                if not xb or not qv:
                    continue
                for mm, c in laurent_mul(qv, xb).items():
                    v = num.get(mm, 0) - c
                    if v:
                        num[mm] = v
                    else:
                        num.pop(mm, None)
            quot = laurent_divide_exact(num, X0)
            if quot is None:
                raise NotDivisibleError(
                    f"NotDivisible at block {tuple(x // QSTEP for x in n)} "
                    f"(coordinate {ci})")
            qblocks[n] = quot
        from .series import _from_fraction_blocks
        out_coords.append(_from_fraction_blocks(qbox, qblocks))
    i, j, k = F.weight
    return VectorValuedForm((i, j, k - 18 * m), out_coords)


# ---------------------------------------------------------------------------
# representation matrices and Hecke operators at p = 2
# ---------------------------------------------------------------------------

def _mat_inverse(A):
    A = [[Fraction(x) for x in row] for row in A]
    n = len(A)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ArithmeticError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def sym_rep_matrix(A, j):
    """Matrix of Sym^j of the substitution z_i -> sum_k A[i][k] z_k on the
    descending-lex monomial basis.  Sym^{-j}(A) is sym_rep_matrix(A^{-1}, j).
    """
    mons = monomials_of_degree(j)
    pos = {m: i for i, m in enumerate(mons)}
    rows = [[Fraction(0)] * len(mons) for _ in mons]
    lin = [{(1, 0, 0): Fraction(A[i][0]), (0, 1, 0): Fraction(A[i][1]),
            (0, 0, 1): Fraction(A[i][2])} for i in range(3)]
    for c, mono in enumerate(mons):
        term = {(0, 0, 0): Fraction(1)}
        for i in range(3):
            for _ in range(mono[i]):
                nxt = {}
                for m1, c1 in term.items():
                    for m2, c2 in lin[i].items():
                        key = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                        nxt[key] = nxt.get(key, 0) + c1 * c2
                term = nxt
        for mm, cc in term.items():
            rows[pos[mm]][c] += cc
    return rows


def sym_neg_rep_matrix(A, j):
    return sym_rep_matrix(_mat_inverse(A), j)


def wedge2_matrix(A):
    """Matrix of A on wedge^2(C^3) in the basis (y^z, z^x, x^y)."""
    A = [[Fraction(x) for x in row] for row in A]
    basis = [(1, 2), (2, 0), (0, 1)]
    W = [[Fraction(0)] * 3 for _ in range(3)]
    for col, (u, v) in enumerate(basis):
        # image of e_u ^ e_v = (A e_u) ^ (A e_v)
        for k in range(3):
            for l in range(3):
                c = A[k][u] * A[l][v]
                if k == l or not c:
                    continue
                for row, (a, b) in enumerate(basis):
                    if (k, l) == (a, b):
                        W[row][col] += c
                    elif (l, k) == (a, b):
                        W[row][col] -= c
    return W


def det3(A):
    return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
            - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
            + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))


def _mat_vec(M, v):
    return [sum(M[r][c] * v[c] for c in range(len(v))) for r in range(len(M))]


def _kron_apply(Mi, Mj, vec):
    """Apply Mi (x) Mj to a vector in the outer-Sym^i ordering."""
    ni, nj = len(Mi), len(Mj)
    out = [Fraction(0)] * (ni * nj)
    for r1 in range(ni):
        for c1 in range(ni):
            x = Mi[r1][c1]
            if not x:
                continue
            for r2 in range(nj):
                acc = Fraction(0)
                for c2 in range(nj):
                    y = Mj[r2][c2]
                    if y:
                        acc += y * vec[c1 * nj + c2]
                out[r1 * nj + r2] += x * acc
    return out


# matrices of the printed p = 2 instance formulas
HECKE_W408_MATS = (
    ((1, 0, 1), (0, 1, 1), (0, 0, 2)),
    ((1, 0, 1), (0, 2, 0), (0, 0, 2)),
    ((0, 1, 1), (2, 0, 0), (0, 0, 2)),
)
HECKE_TEMPLATE_MAT = ((1, 1, 1), (0, 2, 0), (0, 0, 2))


def hecke2_eigenvalue(F, kind, ijk=None):
    """lambda_2 via the printed instance formulas; exact proportionality."""
    if kind == "w408":
        i, j, k = 4, 0, 8
        n0 = (1, 1, 1, 0, 0, 0)
        a0 = fourier_coefficient(F, n0)
        a2 = fourier_coefficient(F, (2, 2, 2, 0, 0, 0))
        m1, m2, m3 = (sym_neg_rep_matrix(M, 4) for M in HECKE_W408_MATS)
        t1 = _mat_vec(m1, fourier_coefficient(F, (1, 1, 2, 1, 2, 2)))
        t2 = _mat_vec(m2, fourier_coefficient(F, (1, 2, 2, 2, 0, 0)))
        t3 = _mat_vec(m3, fourier_coefficient(F, (1, 2, 2, 0, 2, 0)))
        total = [a2[n] + 2 ** 15 * t1[n] + 2 ** 9 * (t2[n] + t3[n])
                 for n in range(len(a2))]
    elif kind in ("w337", "template"):
        if kind == "w337":
            i, j, k = 3, 3, 7
        else:
            if ijk is None:
                raise ValueError("template kind needs ijk")
            i, j, k = ijk
        if (i, j, k) != tuple(F.weight):
            raise ValueError(f"form weight {F.weight} != requested {(i,j,k)}")
        n0 = (1, 1, 1, 1, 1, 1)
        a0 = fourier_coefficient(F, n0)
        a2 = fourier_coefficient(F, (2, 2, 2, 2, 2, 2))
        A = HECKE_TEMPLATE_MAT
        Mi = sym_neg_rep_matrix(A, i)
        Mj = sym_neg_rep_matrix(wedge2_matrix(A), j)
        corr = _kron_apply(Mi, Mj, fourier_coefficient(F, (3, 2, 2, 4, 4, 2)))
        factor = 2 ** (i + 2 * j + k - 3)
        total = [a2[n] + factor * corr[n] for n in range(len(a2))]
    else:
        raise ValueError(f"unknown Hecke kind {kind!r}")
    lam = None
    for x, y in zip(total, a0):
        if y:
            lam = Fraction(x) / y
            break
    if lam is None:
        raise ArithmeticError("reference coefficient vanishes identically")
    for x, y in zip(total, a0):
        if Fraction(x) != lam * y:
            raise ArithmeticError(
                "not an eigenvector for this instance formula")
    return lam


# ---------------------------------------------------------------------------
# S3 coordinate check
# ---------------------------------------------------------------------------

S3_PERMS = ((1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1))


def s3_check(F):
    """Verify the S3 coordinate equivariance; returns a report dict."""
    i, j, k = F.weight
    for perm in S3_PERMS:
        P = [[Fraction(int(perm[c] - 1 == r)) for c in range(3)]
             for r in range(3)]
        Mi = sym_rep_matrix(P, i)
        Mj = sym_rep_matrix(wedge2_matrix(P), j)
        sign = det3(P) ** k
        ni, nj = len(Mi), len(Mj)
        transported = [theta3.s3_transport(perm, s) for s in F.coords]
        for r1 in range(ni):
            for r2 in range(nj):
                acc = None
                for c1 in range(ni):
                    for c2 in range(nj):
                        coeff = Mi[r1][c1] * Mj[r2][c2] * sign
                        if not coeff:
                            continue
                        term = F.coords[c1 * nj + c2].scale(coeff)
                        acc = term if acc is None else acc + term
                diff = transported[r1 * nj + r2] - acc
                if not diff.is_zero():
                    witness = diff.terms()[0]
                    return {"ok": False, "perm": perm,
                            "coordinate": r1 * nj + r2,
                            "witness": [list(witness[0]), list(witness[1]),
                                        str(witness[2]), str(witness[3])]}
    return {"ok": True}


# ---------------------------------------------------------------------------
# pointwise quotient pipeline (deep blocks without full uvw series)
# ---------------------------------------------------------------------------

DEFAULT_SQRT_GRID = (2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13)


def _uvw_ranges(qbox):
    """Paper u,v,w exponent ranges of PSD support, per pair, over the box."""
    n1, n2, n3 = qbox
    r12 = isqrt(4 * n1 * n2)
    r13 = isqrt(4 * n1 * n3)
    r23 = isqrt(4 * n2 * n3)
    return r12, r13, r23


def quotient_form_via_points(cnc, m, qbox, grid=DEFAULT_SQRT_GRID,
                             validate_points=1, progress=None):
    """gamma'(cnc) / chi18^m restricted to quotient q-blocks <= qbox.

    Evaluates the whole pipeline at rational points u = s_u^2, v = s_v^2,
    w = s_w^2 (so half-integral theta exponents stay rational), then
    tensor-interpolates each block's Laurent coefficients from the grid.
    The support bound per block is the PSD box of a holomorphic form; extra
    off-grid validation points re-check the interpolated quotient, and
    failures surface as NotDivisibleError.
    """
    d = cnc.d
    lam = cnc.lam
    weight = (lam[0] - lam[1], lam[1] - lam[2], lam[2] + 8 * d - 18 * m)
    numbox = tuple(qbox[i] + 2 * m for i in range(3))
    stored_numbox = tuple(QSTEP * n for n in numbox)
    r12, r13, r23 = _uvw_ranges(qbox)
    npts = (r12 + 1, r13 + 1, r23 + 1)  # degrees 2r -> 2r+1 points in s^2
    need = (2 * r12 + 1, 2 * r13 + 1, 2 * r23 + 1)
    if any(need[i] > len(grid) for i in range(3)):
        raise ValueError("interpolation grid too small for the target box")
    qblocks = [tuple(QSTEP * x for x in n)
               for n in _paper_blocks(qbox)]
    ncoords = len(monomials_of_degree(cnc.xdeg)) * \
        len(monomials_of_degree(cnc.hatdeg))
    values = {}
    total = need[0] * need[1] * need[2]
    count = 0
    for ia in range(need[0]):
        for ib in range(need[1]):
            for ic in range(need[2]):
                pt = (Fraction(grid[ia]), Fraction(grid[ib]),
                      Fraction(grid[ic]))
                values[(ia, ib, ic)] = _quotient_at_point(
                    cnc, m, qbox, stored_numbox, pt)
                count += 1
                if progress and count % 25 == 0:
                    progress(count, total)
    # tensor interpolation per coordinate and block
    upoints = [Fraction(grid[t]) ** 2 for t in range(max(need))]
    coords = []
    for ci in range(ncoords):
        blocks = {}
        for bi, e in enumerate(qblocks):
            n = tuple(x // QSTEP for x in e)
            b12 = isqrt(4 * n[0] * n[1])
            b13 = isqrt(4 * n[0] * n[2])
            b23 = isqrt(4 * n[1] * n[2])
            c12, c13, c23 = 2 * b12 + 1, 2 * b13 + 1, 2 * b23 + 1
            # interpolate along w, then v, then u
            cube = [[[values[(ia, ib, ic)][ci][bi] for ic in range(c23)]
                     for ib in range(c13)] for ia in range(c12)]
            poly = _tensor_interpolate(cube, upoints, (b12, b13, b23))
            blk = {}
            for (k1, k2, k3), c in poly.items():
                if c:
                    blk[(USTEP * k1, USTEP * k2, USTEP * k3)] = c
            if blk:
                blocks[e] = blk
        from .series import _from_fraction_blocks
        coords.append(_from_fraction_blocks(
            tuple(QSTEP * x for x in qbox), blocks))
    out = VectorValuedForm(weight, coords)
    # off-grid validation: re-run the pipeline at fresh points and compare
    for t in range(validate_points):
        g = grid[-1]
        pt = (Fraction(g + 1 + 3 * t), Fraction(g + 2 + 3 * t),
              Fraction(g + 3 + 3 * t))
        expect = _quotient_at_point(cnc, m, qbox, stored_numbox, pt)
        for ci in range(ncoords):
            for bi, e in enumerate(qblocks):
                got = _eval_block(out.coords[ci].block(e), pt)
                if got != expect[ci][bi]:
                    raise NotDivisibleError(
                        f"pointwise validation failed at block "
                        f"{tuple(x // QSTEP for x in e)} coordinate {ci}")
    return out


def _tensor_interpolate(cube, upoints, ranges):
    """Laurent coefficients {(k1,k2,k3): Fraction} from a value cube.

    cube[a][b][c] is the value at (u,v,w) = (U_a, U_b, U_c); the Laurent
    exponents along axis t run over [-ranges[t], ranges[t]].
    """
    b1, b2, b3 = ranges
    n1, n2, n3 = 2 * b1 + 1, 2 * b2 + 1, 2 * b3 + 1

    def interp_axis(values, b):
        n = 2 * b + 1
        pts = upoints[:n]
        scaled = [v * pts[i] ** b for i, v in enumerate(values)]
        coeffs = lagrange_coefficients(pts, scaled)
        return [coeffs[k] for k in range(n)]  # index k <-> exponent k - b

    # along w
    stage1 = [[interp_axis([cube[a][b][c] for c in range(n3)], b3)
               for b in range(n2)] for a in range(n1)]
    # along v
    stage2 = [[interp_axis([stage1[a][b][kc] for b in range(n2)], b2)
               for kc in range(n3)] for a in range(n1)]
    # along u
    out = {}
    for kc in range(n3):
        for kb in range(n2):
            col = interp_axis([stage2[a][kc][kb] for a in range(n1)], b1)
            for ka in range(n1):
                c = col[ka]
                if c:
                    out[(ka - b1, kb - b2, kc - b3)] = c
    return out


def _paper_blocks(qbox):
    out = [(a, b, c) for a in range(qbox[0] + 1)
           for b in range(qbox[1] + 1) for c in range(qbox[2] + 1)]
    out.sort(key=lambda e: (sum(e), e))
    return out


def _eval_block(blk, pt):
    su, sv, sw = pt
    total = Fraction(0)
    for (m1, m2, m3), c in blk.items():
        total += c * su ** (2 * m1 // USTEP) * sv ** (2 * m2 // USTEP) \
            * sw ** (2 * m3 // USTEP)
    return total


def _quotient_at_point(cnc, m, qbox, stored_numbox, pt):
    """Per-coordinate lists of quotient block values at one uvw-point."""
    chi = chi408_form(stored_numbox, point=pt)
    # every factor of a degree-d product sits at blocks <= numbox-(d-1)*1
    d = cnc.d
    cut = tuple(stored_numbox[i] - (d - 1) * QSTEP for i in range(3))
    chi_cut = VectorValuedForm((4, 0, 8), [s.restrict(cut) for s in chi.coords])
    F = gamma_prime(cnc, chi=chi_cut)
    X = theta3.chi18(stored_numbox, point=pt)
    Xp = X
    for _ in range(m - 1):
        Xp = Xp * X
    off = (16 * m,) * 3
    x0 = Xp.block(off).get((0, 0, 0), Fraction(0))
    if not x0:
        raise ArithmeticError("chi18^m leading value vanishes at this point")
    xvals = {e: Xp.block(e).get((0, 0, 0), Fraction(0)) for e in Xp.re}
    out = []
    blocks = _paper_blocks(qbox)
    for s in F.coords:
        qv = {}
        vals = []
        for n in blocks:
            e = tuple(QSTEP * n[i] + off[i] for i in range(3))
            num = s.block(e).get((0, 0, 0), Fraction(0))
            for jb, q in qv.items():
                if any(jb[i] > n[i] for i in range(3)):
                    continue
                xe = tuple(QSTEP * (n[i] - jb[i]) + off[i] for i in range(3))
                num -= q * xvals.get(xe, Fraction(0))
            q = num / x0
            qv[n] = q
            vals.append(q)
        out.append(vals)
    return out
