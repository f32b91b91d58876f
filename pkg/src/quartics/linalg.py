"""Exact linear algebra over Q and GF(p), plus Lagrange interpolation.

Matrices are kept sparse as lists of dict rows {column: coefficient}.
Rational work uses Fraction; prime-field work uses plain ints mod p.
"""

from fractions import Fraction
from math import gcd


def _leading_column(row, order):
    for c in order:
        if c in row:
            return c
    return None


def rref(rows, ncols, column_order=None):
    """Reduced row echelon form over Q.

    rows: list of {col: Fraction}; returns (pivots, reduced_rows) where
    reduced_rows[i] has a unit coefficient at pivots[i] and zeros in the
    other pivot columns.  Column order defaults to 0..ncols-1.
    """
    order = list(range(ncols)) if column_order is None else list(column_order)
    pivots = []
    reduced = []
    for row in rows:
        row = dict(row)
        for p, r in zip(pivots, reduced):
            x = row.get(p)
            if x:
                for c, v in r.items():
                    w = row.get(c, 0) - x * v
                    if w:
                        row[c] = w
                    else:
                        row.pop(c, None)
        row = {c: v for c, v in row.items() if v}
        if not row:
            continue
        p = _leading_column(row, order)
        inv = Fraction(1) / row[p]
        row = {c: v * inv for c, v in row.items()}
        # back-substitute into earlier rows
        for i, r in enumerate(reduced):
            x = r.get(p)
            if x:
                for c, v in row.items():
                    w = r.get(c, 0) - x * v
                    if w:
                        r[c] = w
                    else:
                        r.pop(c, None)
        pivots.append(p)
        reduced.append(row)
    return pivots, reduced


def nullspace(rows, ncols):
    """Basis of the right kernel of the sparse matrix, over Q.

    Returns primitive integer vectors (content 1, positive leading entry),
    one per free column, ordered by free column index.
    """
    pivots, reduced = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = {free: Fraction(1)}
        for p, r in zip(pivots, reduced):
            x = r.get(free)
            if x:
                vec[p] = -x
        basis.append(primitive_integer_vector(vec))
    return basis


def primitive_integer_vector(vec):
    """Scale {index: Fraction} to coprime ints with positive first entry."""
    den = 1
    for v in vec.values():
        den = den * v.denominator // gcd(den, v.denominator)
    ints = {k: int(v * den) for k, v in vec.items() if v}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {k: v // g for k, v in ints.items()}
    lead = min(ints)
    if ints[lead] < 0:
        ints = {k: -v for k, v in ints.items()}
    return ints


def solve_exact(rows, rhs, ncols):
    """Solve a consistent full-column-rank system row·x = rhs over Q.

    rows: list of {col: Fraction}, rhs: list of Fraction.  Returns the unique
    solution as a list, or raises ValueError when inconsistent/deficient.
    """
    pivots = []
    reduced = []
    values = []
    for row, b in zip(rows, rhs):
        row = dict(row)
        for p, r, v in zip(pivots, reduced, values):
            x = row.get(p)
            if x:
                b = b - x * v
                for c, w in r.items():
                    y = row.get(c, 0) - x * w
                    if y:
                        row[c] = y
                    else:
                        row.pop(c, None)
        row = {c: v for c, v in row.items() if v}
        if not row:
            if b:
                raise ValueError("inconsistent linear system")
            continue
        p = min(row)
        inv = Fraction(1) / row[p]
        row = {c: v * inv for c, v in row.items()}
        b = b * inv
        for i, r in enumerate(reduced):
            x = r.get(p)
            if x:
                values[i] = values[i] - x * b
                for c, v in row.items():
                    y = r.get(c, 0) - x * v
                    if y:
                        r[c] = y
                    else:
                        r.pop(c, None)
        pivots.append(p)
        reduced.append(row)
        values.append(b)
    if len(pivots) < ncols:
        raise ValueError("rank-deficient linear system")
    sol = [Fraction(0)] * ncols
    for p, v in zip(pivots, values):
        sol[p] = v
    return sol


def rank_mod_p(rows, p):
    """Rank of a sparse matrix over GF(p); rows are {col: int}."""
    pivots = {}
    rank = 0
    for row in rows:
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            c = min(row)
            if c in pivots:
                piv = pivots[c]
                x = row[c]
                for cc, vv in piv.items():
                    w = (row.get(cc, 0) - x * vv) % p
                    if w:
                        row[cc] = w
                    else:
                        row.pop(cc, None)
            else:
                inv = pow(row[c], p - 2, p)
                pivots[c] = {cc: (vv * inv) % p for cc, vv in row.items()}
                rank += 1
                break
    return rank


def nullity_mod_p(rows, ncols, p):
    return ncols - rank_mod_p(rows, p)


def lagrange_coefficients(points, values):
    """Exact 1-D polynomial interpolation.

    Returns coefficients c[0..n-1] (ascending powers) of the unique
    polynomial of degree < n through (points[i], values[i]).
    """
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(zip(points, values)):
        if not yi:
            continue
        # numerator polynomial prod_{j != i} (x - x_j), ascending coefficients
        num = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(points):
            if j == i:
                continue
            num = [Fraction(0)] + num
            for k in range(len(num) - 1):
                num[k] -= xj * num[k + 1]
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for k in range(n):
            coeffs[k] += scale * num[k]
    return coeffs
