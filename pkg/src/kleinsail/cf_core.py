"""Hyperbolic matrices, eigen-direction extraction, and cone location.

A 4x4 integer matrix is hyperbolic when it is unimodular, its
characteristic polynomial is irreducible over Q, and all four
eigenvalues are real (then automatically distinct).  Its eigendirections
are spanned by vectors (1, a, b, g) whose entries lie in the quartic
field K = Q[x]/(charpoly); direction i applies the i-th real embedding.

Eigen-coordinates of a rational point reduce to a single field element:
if p = sum_i t_i l_i then t_i = sigma_i(w) for
    w = sum_k q_k * c_k(theta) / f'(theta),     q = T^{-1} p,
where T stacks the coordinates of (1, a, b, g) over the power basis and
c_k are the synthetic-division coefficients of f(x)/(x - theta).  Signs
of embeddings of field elements are certified, so locating lattice
points in the 16 cones is exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from . import intervals as iv
from . import intlat, numfield, polys
from .errors import (NormalizationFailure, NotABasis, NotTotallyReal,
                     NotUnimodular, Reducible, RenormalizationFailure,
                     RepeatedEigenvalue, ZeroVector)
from .numfield import FieldElement, IntPolynomial, NumberField

IntMat = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class HyperbolicMatrix:
    matrix: IntMat
    charpoly: IntPolynomial
    irreducible: bool
    totally_real: bool
    squarefree: bool


@dataclass(frozen=True)
class Cone:
    """One of the 2^4 simplicial cones, identified by the sign pattern of
    the eigen-coordinates."""

    signs: Tuple[int, int, int, int]

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("cone signs must be +1/-1")

    def __neg__(self):
        return Cone(tuple(-s for s in self.signs))

    def label(self) -> str:
        return ",".join("+" if s > 0 else "-" for s in self.signs)

    @staticmethod
    def from_label(text: str) -> "Cone":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4 or any(p not in "+-" for p in parts):
            raise ValueError("cone label must look like '+,-,+,-'")
        return Cone(tuple(1 if p == "+" else -1 for p in parts))


def all_cones():
    return [Cone(s) for s in itertools.product((1, -1), repeat=4)]


@dataclass(frozen=True)
class AlgebraicCF:
    """A 4-dimensional algebraic continued fraction.

    `labeling[i-1]` is the field root evaluated by sigma_i; direction
    l_i = (1, sigma_i(alpha), sigma_i(beta), sigma_i(gamma)).
    """

    field: NumberField
    labeling: Tuple[int, int, int, int]
    alpha: FieldElement
    beta: FieldElement
    gamma: FieldElement
    source: Tuple[str, Optional[HyperbolicMatrix]]
    _cache: Dict = dc_field(default_factory=dict, compare=False, repr=False)

    def basis_elements(self):
        return (self.field.one(), self.alpha, self.beta, self.gamma)

    def basis_matrix(self):
        """Rows are the power-basis coordinates of 1, alpha, beta, gamma."""
        return tuple(e.coords for e in self.basis_elements())

    def root_of_direction(self, i: int) -> int:
        return self.labeling[i - 1]

    def direction_interval(self, i: int, eps) -> Tuple:
        """Certified enclosure of l_i as four rational intervals."""
        return tuple(numfield.embed_eval(e, self.root_of_direction(i), eps)
                     for e in self.basis_elements())


def companion_matrix(p: Sequence[int]) -> IntMat:
    """Row companion matrix: C (1, t, t^2, t^3)^T = t (1, t, t^2, t^3)^T."""
    cs = tuple(int(c) for c in p)
    n = len(cs) - 1
    assert cs[-1] == 1
    rows = [tuple(1 if j == i + 1 else 0 for j in range(n)) for i in range(n - 1)]
    rows.append(tuple(-c for c in cs[:-1]))
    return tuple(rows)


def is_hyperbolic(a) -> HyperbolicMatrix:
    """Certify a 4x4 integer matrix as hyperbolic, or raise the specific
    rejection: NotUnimodular, Reducible, NotTotallyReal, RepeatedEigenvalue."""
    a = tuple(tuple(int(x) for x in row) for row in a)
    if len(a) != 4 or any(len(row) != 4 for row in a):
        raise ValueError("expected a 4x4 integer matrix")
    chi = intlat.charpoly(a)
    if abs(chi[0]) != 1:
        raise NotUnimodular(f"det A = {chi[0]} is not +-1")
    if not polys.is_irreducible_monic(chi):
        raise Reducible(f"characteristic polynomial {chi} factors over Q")
    if polys.count_real_roots(chi) != 4:
        raise NotTotallyReal("characteristic polynomial has complex roots")
    if polys.degree(polys.gcd_q(chi, polys.derivative(chi))) != 0:
        raise RepeatedEigenvalue("characteristic polynomial is not squarefree")
    return HyperbolicMatrix(matrix=a, charpoly=IntPolynomial(chi),
                            irreducible=True, totally_real=True, squarefree=True)


def eigen_data(a) -> AlgebraicCF:
    """Exact eigen-direction data of a hyperbolic matrix.

    Builds K = Q[x]/(charpoly), solves (A - theta I) v = 0 by Gaussian
    elimination over K, normalizes the first coordinate to 1 and reads
    off (alpha, beta, gamma)."""
    if not isinstance(a, HyperbolicMatrix):
        a = is_hyperbolic(a)
    k = numfield.make_field(a.charpoly)
    theta = k.theta()
    m = [[k.rational(a.matrix[i][j]) - (theta if i == j else 0)
          for j in range(4)] for i in range(4)]
    v = _kernel_vector(k, m)
    if v[0].is_zero():
        raise NormalizationFailure(
            "kernel generator has first coordinate 0; direction cannot be "
            "normalized to (1, a, b, g)")
    inv = v[0].inverse()
    alpha, beta, gamma = (v[1] * inv, v[2] * inv, v[3] * inv)
    cf = AlgebraicCF(field=k, labeling=(1, 2, 3, 4), alpha=alpha, beta=beta,
                     gamma=gamma, source=("matrix", a))
    _assert_eigvec(cf, a.matrix)
    return cf


def _kernel_vector(k, m):
    # Gaussian elimination over the field; the matrix has rank 3.
    rows = [list(r) for r in m]
    n = 4
    pivots = {}
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, n) if not rows[i][c].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots[c] = r
        r += 1
    free = [c for c in range(n) if c not in pivots]
    assert len(free) == 1, "eigenvalue of a hyperbolic matrix must be simple"
    fc = free[0]
    v = [k.zero()] * n
    v[fc] = k.one()
    for c, pr in pivots.items():
        v[c] = -rows[pr][fc]
    return v


def _assert_eigvec(cf, matrix):
    m = cf.basis_elements()
    theta = cf.field.theta()
    for i in range(4):
        lhs = sum((cf.field.rational(matrix[i][j]) * m[j] for j in range(4)),
                  cf.field.zero())
        assert lhs == theta * m[i], "A l1 != theta l1: eigen solve failed"


def cf_from_coords(field: NumberField, labeling, alpha, beta, gamma,
                   matrix_search_height: Optional[int] = None) -> AlgebraicCF:
    """Continued fraction from a distinguished direction (1, a, b, g).

    Requires 1, alpha, beta, gamma linearly independent over Q (4x4
    coordinate determinant nonzero).  Optionally runs a bounded search
    for an integer unimodular matrix acting as multiplication by a field
    element, which realizes the CF as eigen-data of a hyperbolic matrix;
    failure of that search is reported as source ("coords", None), not
    as an error."""
    if field.degree != 4:
        raise ValueError("4-dimensional continued fractions need a quartic field")
    labeling = tuple(int(x) for x in labeling)
    if sorted(labeling) != [1, 2, 3, 4]:
        raise ValueError("labeling must be a permutation of 1..4")
    alpha, beta, gamma = field.element(alpha.coords if isinstance(alpha, FieldElement) else alpha), \
        field.element(beta.coords if isinstance(beta, FieldElement) else beta), \
        field.element(gamma.coords if isinstance(gamma, FieldElement) else gamma)
    t = (field.one().coords, alpha.coords, beta.coords, gamma.coords)
    if intlat.det_frac(t) == 0:
        raise NotABasis("1, alpha, beta, gamma are linearly dependent over Q")
    source = ("coords", None)
    cf = AlgebraicCF(field=field, labeling=labeling, alpha=alpha, beta=beta,
                     gamma=gamma, source=source)
    if matrix_search_height:
        found = associated_matrix_search(cf, matrix_search_height)
        if found is not None:
            cf = AlgebraicCF(field=field, labeling=labeling, alpha=alpha,
                             beta=beta, gamma=gamma, source=("matrix", found))
    return cf


def multiplication_matrix(cf: AlgebraicCF, u: FieldElement) -> IntMat:
    """Matrix A with A l_i = sigma_i(u) l_i, i.e. the transpose of the
    multiplication-by-u matrix over the basis (1, alpha, beta, gamma).
    Entries are rational in general; integrality is the caller's test."""
    t = cf.basis_matrix()
    t_inv_T = intlat.inverse(intlat.transpose(t))
    cols = []
    for b in cf.basis_elements():
        y = (u * b).coords
        cols.append(intlat.mat_vec(t_inv_T, y))
    # cols[j] = coordinates of u*b_j over the basis; A = M^T means
    # A[i][j] = M[j][i] with M[i][j] = cols[j][i], so A[i][j] = cols[i][j].
    return tuple(tuple(cols[i][j] for j in range(4)) for i in range(4))


def associated_matrix_search(cf: AlgebraicCF,
                             height: int = 10) -> Optional[HyperbolicMatrix]:
    """Bounded best-effort search for a hyperbolic matrix with the CF's
    directions as eigendirections.

    Sweeps multiplication operators by u = c0 + c1 a + c2 b + c3 g with
    |c_i| <= height (increasing height, lexicographic), accepting the
    first unimodular integral one with irreducible characteristic
    polynomial.  Exhaustion returns None; existence is guaranteed in
    principle but no algorithm is promised here."""
    basis = cf.basis_elements()
    for h in range(1, height + 1):
        for coeffs in itertools.product(range(-h, h + 1), repeat=4):
            if max(abs(c) for c in coeffs) != h:
                continue
            u = sum((basis[i] * c for i, c in enumerate(coeffs)),
                    cf.field.zero())
            m = multiplication_matrix(cf, u)
            if not intlat.is_integral(m):
                continue
            mi = intlat.to_int_matrix(m)
            if abs(intlat.det_int(mi)) != 1:
                continue
            try:
                return is_hyperbolic(mi)
            except (Reducible, NotTotallyReal, RepeatedEigenvalue,
                    NotUnimodular):
                continue
    return None


def transform_cf(cf: AlgebraicCF, x) -> AlgebraicCF:
    """The CF with directions X l_i, renormalized to first coordinate 1.

    The renormalization divides by the first coordinate of X l_1, an
    element of K; if that element is zero the witness is incompatible
    with the (1, a, b, g) convention and RenormalizationFailure is
    raised.  A single exact zero test covers all four directions because
    embeddings are injective."""
    x = tuple(tuple(int(v) for v in row) for row in x)
    if not intlat.is_unimodular(x):
        raise NotUnimodular("transforms of a CF must be unimodular")
    m = cf.basis_elements()
    img = [sum((cf.field.rational(x[i][j]) * m[j] for j in range(4)),
               cf.field.zero()) for i in range(4)]
    if img[0].is_zero():
        raise RenormalizationFailure(
            "X maps l_1 into the hyperplane x_1 = 0")
    inv = img[0].inverse()
    return cf_from_coords(cf.field, cf.labeling,
                          img[1] * inv, img[2] * inv, img[3] * inv)


# -- eigen-coordinates and cones --------------------------------------------------


class _EigencoordEvaluator:
    """Certified sign evaluation of eigen-coordinates of integer points.

    Maintains, per direction, integer enclosures at a dyadic scale for
    the embeddings of the synthetic-division elements d_k, so that the
    per-point work is pure integer arithmetic; precision escalates only
    when an enclosure straddles zero."""

    def __init__(self, cf: AlgebraicCF):
        self.cf = cf
        t = cf.basis_matrix()
        t_inv = intlat.inverse(t)
        den = math.lcm(*[x.denominator for row in t_inv for x in row])
        self.ti = tuple(tuple(int(x * den) for x in row) for row in t_inv)
        f = cf.field.minpoly.coefficients
        theta = cf.field.theta()
        cks = [None] * 4
        cks[3] = cf.field.one()
        for k in (2, 1, 0):
            cks[k] = theta * cks[k + 1] + f[k + 1]
        fprime = polys.evaluate(polys.derivative(f), theta)
        fp_inv = fprime.inverse()
        self.d = [c * fp_inv for c in cks]
        self.scale = 30
        self.width = Fraction(1, 2 ** 24)
        self._tables = None

    def _refresh(self):
        tables = []
        two_s = 2 ** self.scale
        for i in range(1, 5):
            root = self.cf.field.root_interval(self.cf.labeling[i - 1],
                                               self.width)
            row = []
            for k in range(4):
                lo, hi = iv.eval_poly(self.d[k].coords, root)
                row.append((math.floor(lo * two_s), math.ceil(hi * two_s)))
            tables.append(row)
        self._tables = tables

    def signs(self, p) -> Optional[Tuple[int, int, int, int]]:
        q = [sum(self.ti[k][j] * p[j] for j in range(4)) for k in range(4)]
        if all(x == 0 for x in q):
            raise ZeroVector("eigen-coordinates of the zero vector")
        if self._tables is None:
            self._refresh()
        for attempt in range(80):
            out = []
            for i in range(4):
                lo = hi = 0
                for k in range(4):
                    a, b = self._tables[i][k]
                    qk = q[k]
                    if qk >= 0:
                        lo += qk * a
                        hi += qk * b
                    else:
                        lo += qk * b
                        hi += qk * a
                if lo > 0:
                    out.append(1)
                elif hi < 0:
                    out.append(-1)
                else:
                    break
            else:
                return tuple(out)
            if attempt == 2:
                w = sum((self.d[k] * q[k] for k in range(4)),
                        self.cf.field.zero())
                if w.is_zero():
                    return None          # wall hit: impossible for p != 0
            self.width /= 16
            self.scale += 6
            self._refresh()
        raise AssertionError("sign refinement failed to converge")


def _evaluator(cf: AlgebraicCF) -> _EigencoordEvaluator:
    ev = cf._cache.get("evaluator")
    if ev is None:
        ev = _EigencoordEvaluator(cf)
        cf._cache["evaluator"] = ev
    return ev


def cone_locate(cf: AlgebraicCF, p) -> Optional[Cone]:
    """The cone of C(l_1..l_4) containing an integer point, decided by
    certified signs of its eigen-coordinates.

    Returns None only if some eigen-coordinate is exactly zero (a wall
    hit), which cannot happen for a nonzero integer point of an
    irrational cone family; the case is surfaced for diagnostics rather
    than hidden."""
    p = tuple(int(x) for x in p)
    if all(x == 0 for x in p):
        raise ZeroVector("the origin lies in no cone")
    signs = _evaluator(cf).signs(p)
    if signs is None:
        return None
    return Cone(signs)


def eigencoord_element(cf: AlgebraicCF, p) -> FieldElement:
    """The element w with sigma_i(w) = i-th eigen-coordinate of p."""
    ev = _evaluator(cf)
    t_inv = intlat.inverse(cf.basis_matrix())
    q = intlat.mat_vec(t_inv, tuple(Fraction(x) for x in p))
    return sum((ev.d[k] * q[k] for k in range(4)), cf.field.zero())


# -- the repository's canonical hyperbolic test matrix -----------------------------


def canonical_test_polynomial() -> Tuple[int, ...]:
    """First monic integer quartic with constant term +-1 that is
    irreducible and totally real, in the deterministic search order
    (increasing coefficient box, lexicographic inside)."""
    for h in range(1, 7):
        for a3 in range(-h, h + 1):
            for a2 in range(-h, h + 1):
                for a1 in range(-h, h + 1):
                    if max(abs(a3), abs(a2), abs(a1)) != h:
                        continue
                    for a0 in (1, -1):
                        p = (a0, a1, a2, a3, 1)
                        if not polys.is_irreducible_monic(p):
                            continue
                        if polys.count_real_roots(p) != 4:
                            continue
                        return p
    raise AssertionError("search box exhausted")


def canonical_test_matrix() -> HyperbolicMatrix:
    """U C(p) U^{-1} for the canonical polynomial and a fixed unimodular U;
    the repository's standing example of a hyperbolic matrix."""
    import random
    p = canonical_test_polynomial()
    c = companion_matrix(p)
    rng = random.Random(411)
    u = intlat.random_unimodular(rng, 4, steps=8, entry_bound=4)
    u_inv = intlat.to_int_matrix(intlat.inverse(u))
    a = intlat.mat_mul(intlat.mat_mul(u, c), u_inv)
    return is_hyperbolic(intlat.to_int_matrix(a))
