"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples; "columns are vectors" whenever a
matrix stacks basis vectors (HNF, unimodular solves).  Determinants of
integer matrices use fraction-free Bareiss elimination; rational work
uses plain Gaussian elimination over Fraction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import SingularSources

Vec = Tuple[Fraction, ...]
Mat = Tuple[Tuple[Fraction, ...], ...]


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m) -> Mat:
    return tuple(zip(*m))


def mat_mul(a, b) -> Mat:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a)


def mat_vec(a, v) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_sub(a, b) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a, c) -> Mat:
    return tuple(tuple(c * x for x in row) for row in a)


def columns(m) -> List[Vec]:
    return [tuple(row[j] for row in m) for j in range(len(m[0]))]


def from_columns(cols) -> Mat:
    return tuple(tuple(col[i] for col in cols) for i in range(len(cols[0])))


def is_integral(m) -> bool:
    return all(Fraction(x).denominator == 1 for row in m for x in row)


def to_int_matrix(m) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(Fraction(x)) for x in row) for row in m)


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def det_frac(rows) -> Fraction:
    """Determinant of a rational matrix, by clearing denominators row-wise
    and delegating to the integer Bareiss routine."""
    scaled = []
    factor = Fraction(1)
    for row in rows:
        row = [Fraction(x) for x in row]
        den = math.lcm(*[x.denominator for x in row]) if row else 1
        factor *= den
        scaled.append([int(x * den) for x in row])
    return Fraction(det_int(scaled), 1) / factor


def rref(rows) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q.  Returns (matrix, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def nullspace(rows) -> List[Vec]:
    """Basis of the rational kernel {x : M x = 0}."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(tuple(v))
    return basis


def inverse(rows) -> Mat:
    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a)
    aug = [a[i] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return tuple(tuple(red[i][n:]) for i in range(n))


def charpoly(rows) -> Tuple[int, ...]:
    """Characteristic polynomial det(xI - A) of an integer matrix,
    constant term first, via the Faddeev-LeVerrier recurrence."""
    n = len(rows)
    a = tuple(tuple(Fraction(x) for x in row) for row in rows)
    coeffs = [Fraction(1)]          # descending: x^n, x^(n-1), ...
    b = identity(n)
    for k in range(1, n + 1):
        if k > 1:
            b = mat_mul(a, mat_sub(b, mat_scale(identity(n), -coeffs[-1])))
            # b = A (b_prev + c_{k-1} I)
        else:
            b = a
        c = -Fraction(sum(b[i][i] for i in range(n)), k)
        coeffs.append(c)
    asc = list(reversed(coeffs))
    assert all(c.denominator == 1 for c in asc)
    return tuple(int(c) for c in asc)


def _bezout(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf(mat) -> Tuple[Mat, Mat]:
    """Column-style Hermite normal form.

    Returns (H, U) with H = M U, U in GL(Z), H lower triangular on its
    pivot structure with positive pivots and, in each pivot row, the
    entries left of the pivot reduced into [0, pivot).  Re-running on a
    canonical H yields the identity transform.
    """
    m = [list(map(int, row)) for row in mat]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    u = [list(row) for row in identity(ncols)]

    def colop(j, k, a, b, c, d):
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
        for rowset in (m, u):
            for row in rowset:
                x, y = row[j], row[k]
                row[j] = a * x + b * y
                row[k] = c * x + d * y

    cur = 0
    for r in range(nrows):
        if cur >= ncols:
            break
        piv = next((j for j in range(cur, ncols) if m[r][j] != 0), None)
        if piv is None:
            continue
        if piv != cur:
            colop(cur, piv, 0, 1, 1, 0)
        for j in range(cur + 1, ncols):
            if m[r][j] == 0:
                continue
            g, x, y = _bezout(m[r][cur], m[r][j])
            p, q = m[r][cur] // g, m[r][j] // g
            colop(cur, j, x, y, -q, p)
        if m[r][cur] < 0:
            for rowset in (m, u):
                for row in rowset:
                    row[cur] = -row[cur]
        for j in range(cur):
            q = m[r][j] // m[r][cur]
            if q:
                for rowset in (m, u):
                    for row in rowset:
                        row[j] -= q * row[cur]
        cur += 1
    h = tuple(tuple(row) for row in m)
    ut = tuple(tuple(row) for row in u)
    return h, ut


def is_unimodular(mat) -> bool:
    n = len(mat)
    if any(len(row) != n for row in mat):
        return False
    if not is_integral(mat):
        return False
    return abs(det_int(to_int_matrix(mat))) == 1


def is_z4_basis(v1, v2, v3, v4) -> bool:
    """True iff the four vectors are integral and span Z^4."""
    vs = (v1, v2, v3, v4)
    if any(len(v) != 4 for v in vs):
        raise ValueError("expected four vectors of length 4")
    if any(Fraction(x).denominator != 1 for v in vs for x in v):
        return False
    cols = from_columns([tuple(int(Fraction(x)) for x in v) for v in vs])
    return abs(det_int(cols)) == 1


def solve_unimodular_map(sources, targets) -> Optional[Mat]:
    """X with X source_i = target_i for all i, if a unimodular X exists.

    X = T S^{-1} where S, T stack the vectors as columns; raises on
    linearly dependent sources; returns None when X is not in GL(Z).
    """
    s = from_columns([tuple(Fraction(x) for x in v) for v in sources])
    t = from_columns([tuple(Fraction(x) for x in v) for v in targets])
    if det_frac(s) == 0:
        raise SingularSources("source vectors are linearly dependent")
    x = mat_mul(t, inverse(s))
    if not is_unimodular(x):
        return None
    return to_int_matrix(x)


def primitive_vector(v) -> Tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector,
    keeping its direction."""
    fr = [Fraction(x) for x in v]
    den = math.lcm(*[x.denominator for x in fr])
    ints = [int(x * den) for x in fr]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(c // g for c in ints)


def random_unimodular(rng, n: int = 4, steps: int = 12,
                      entry_bound: Optional[int] = None) -> Mat:
    """Random element of GL_n(Z) as a product of elementary operations.

    With entry_bound set, operations that would push any entry past the
    bound are retried, so the result stays desk-sized.
    """
    m = [list(row) for row in identity(n)]
    done = 0
    attempts = 0
    while done < steps and attempts < 60 * steps:
        attempts += 1
        kind = rng.randrange(3)
        i, j = rng.randrange(n), rng.randrange(n)
        if kind == 0 and i != j:
            k = rng.choice((-2, -1, 1, 2))
            new_row = [m[i][c] + k * m[j][c] for c in range(n)]
            if entry_bound and any(abs(x) > entry_bound for x in new_row):
                continue
            m[i] = new_row
            done += 1
        elif kind == 1 and i != j:
            m[i], m[j] = m[j], m[i]
            done += 1
        elif kind == 2:
            m[i] = [-x for x in m[i]]
            done += 1
    return tuple(tuple(row) for row in m)
