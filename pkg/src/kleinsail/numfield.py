"""Totally real number fields with certified real embeddings.

A field is Q[x]/(f) for a monic integer polynomial f, irreducible over
Q, all of whose roots are real.  The roots are stored as disjoint
rational isolating intervals in ascending order; embedding sigma_e
evaluates the power basis at root number e.  All arithmetic is exact;
embeddings are evaluated to rational intervals of requested width, so
every sign decision is certified.

Conjugate detection (does root b lie in Q(root a)?) is decided exactly:
if u in K satisfies sigma_a(u) = root_b, then u is an algebraic integer
and its power-basis coordinates have denominators bounded by
sqrt(|disc f|), because the index [O_K : Z[theta]] squared divides the
discriminant.  Refining the candidate coordinate intervals below the
resolution of that denominator bound pins at most one rational per
coordinate, and the pinned candidate is then verified by exact
arithmetic.  Failure across all root assignments is therefore a
certified "no".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from . import intervals as iv
from . import intlat, polys
from .errors import (DivisionByZero, NotIrreducible, NotMonic, NotTotallyReal,
                     ZeroPolynomial)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, constant term first, nonzero leading coefficient."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coefficients)
        if not cs or cs[-1] == 0:
            raise ZeroPolynomial("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", cs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        return polys.evaluate(self.coefficients, x)


@dataclass(frozen=True)
class NumberField:
    """Q(theta) for theta a root of a monic, irreducible, totally real
    integer polynomial of degree 2..4.  Roots are indexed 1..degree in
    ascending order."""

    minpoly: IntPolynomial
    degree: int
    root_intervals: Tuple[Tuple[Fraction, Fraction], ...]
    _cache: Dict = dc_field(default_factory=dict, compare=False, repr=False)

    def element(self, coords) -> "FieldElement":
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.degree:
            raise ValueError("coordinate vector length must equal the degree")
        return FieldElement(self, coords)

    def zero(self) -> "FieldElement":
        return self.element((0,) * self.degree)

    def one(self) -> "FieldElement":
        return self.element((1,) + (0,) * (self.degree - 1))

    def theta(self) -> "FieldElement":
        return self.element((0, 1) + (0,) * (self.degree - 2))

    def rational(self, c) -> "FieldElement":
        return self.element((Fraction(c),) + (0,) * (self.degree - 1))

    # -- root interval refinement (monotone cache; purely narrowing) ------

    def _roots(self) -> List[Tuple[Fraction, Fraction]]:
        if "roots" not in self._cache:
            self._cache["roots"] = [tuple(r) for r in self.root_intervals]
        return self._cache["roots"]

    def root_interval(self, index: int, width: Optional[Fraction] = None):
        """Isolating interval of root `index` (1-based), refined to the
        requested width on demand."""
        roots = self._roots()
        lo, hi = roots[index - 1]
        if width is not None and hi - lo > width:
            sf = self.minpoly.coefficients
            lo, hi = polys.refine_to_width(sf, lo, hi, width)
            roots[index - 1] = (lo, hi)
        return (lo, hi)

    def _power_table(self) -> List[Tuple[Fraction, ...]]:
        # coordinates of theta^k for k = 0..2(deg-1), reduced mod minpoly
        if "powers" in self._cache:
            return self._cache["powers"]
        n = self.degree
        table = []
        for k in range(n):
            table.append(tuple(Fraction(1 if i == k else 0) for i in range(n)))
        # theta^n = -(a_0 + ... + a_{n-1} theta^{n-1}) since minpoly is monic
        reduction = tuple(-Fraction(c) for c in self.minpoly.coefficients[:-1])
        for k in range(n, 2 * n - 1):
            prev = table[k - 1]
            shifted = (Fraction(0),) + prev[:-1]
            overflow = prev[-1]
            table.append(tuple(s + overflow * r for s, r in zip(shifted, reduction)))
        self._cache["powers"] = table
        return table


@dataclass(frozen=True)
class FieldElement:
    """Element of a NumberField in power-basis coordinates 1, theta, ..."""

    field: NumberField
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords",
                           tuple(Fraction(c) for c in self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements belong to different fields")
            return other
        return self.field.rational(other)

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field,
                            tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field,
                            tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        other = self._coerce(other)
        n = self.field.degree
        conv = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(other.coords):
                if b != 0:
                    conv[i + j] += a * b
        table = self.field._power_table()
        out = [Fraction(0)] * n
        for k, c in enumerate(conv):
            if c != 0:
                for i, t in enumerate(table[k]):
                    out[i] += c * t
        return FieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("zero has no inverse")
        g, s, _ = polys.ext_gcd_q(polys.trim(self.coords),
                                  tuple(Fraction(c) for c in
                                        self.field.minpoly.coefficients))
        assert polys.degree(g) == 0 and g[0] == 1, "minpoly not irreducible?"
        n = self.field.degree
        # reduce s mod minpoly (deg(s) < deg(minpoly) already holds, but be safe)
        coords = list(s) + [Fraction(0)] * n
        table = self.field._power_table()
        out = [Fraction(0)] * n
        for k, c in enumerate(polys.trim(coords[:2 * n - 1])):
            if c != 0:
                for i, t in enumerate(table[k]):
                    out[i] += c * t
        return FieldElement(self.field, tuple(out))

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.minpoly.coefficients, self.coords))


# -- construction -------------------------------------------------------------


def make_field(minpoly) -> NumberField:
    """Build a totally real field from a monic integer polynomial.

    Rejects non-monic input (NotMonic), reducible polynomials
    (NotIrreducible: rational root, or a quartic splitting into two
    integer quadratics) and polynomials with fewer real roots than the
    degree (NotTotallyReal).
    """
    if not isinstance(minpoly, IntPolynomial):
        minpoly = IntPolynomial(tuple(minpoly))
    cs = minpoly.coefficients
    n = minpoly.degree
    if cs[-1] != 1:
        raise NotMonic("minimal polynomial must be monic")
    if not 2 <= n <= 4:
        raise ValueError("field degree must be 2, 3 or 4")
    if not polys.is_irreducible_monic(cs):
        raise NotIrreducible(f"{cs} factors over Q")
    real_roots = polys.count_real_roots(cs)
    if real_roots != n:
        raise NotTotallyReal(
            f"Sturm count {real_roots} < degree {n}: field is not totally real")
    iso = polys.isolate_real_roots(cs)
    assert len(iso) == n and all(m == 1 for _, _, m in iso)
    return NumberField(minpoly=minpoly, degree=n,
                       root_intervals=tuple((lo, hi) for lo, hi, _ in iso))


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Exact field arithmetic dispatch: op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by the zero element")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def isolate_roots(p) -> List[Tuple[Fraction, Fraction, int]]:
    """Isolating intervals (lo, hi, multiplicity) for an integer polynomial;
    the squarefree part is taken internally."""
    if isinstance(p, IntPolynomial):
        p = p.coefficients
    return polys.isolate_real_roots(p)


def min_poly_of(a: FieldElement) -> Tuple[IntPolynomial, int]:
    """Minimal polynomial of an element over Q (primitive integer multiple)
    and its degree, found as the first linear dependence among the powers
    1, a, a^2, ... in power-basis coordinates."""
    n = a.field.degree
    powers = [a.field.one()]
    for _ in range(n):
        powers.append(powers[-1] * a)
    for d in range(1, n + 1):
        rows = [powers[k].coords for k in range(d + 1)]
        kernel = intlat.nullspace(intlat.transpose(rows))
        if kernel:
            coeffs = kernel[0]
            assert coeffs[d] != 0
            normalized = polys.monic(polys.trim(coeffs))
            prim = polys.to_int_primitive(normalized)
            if prim[-1] < 0:
                prim = tuple(-c for c in prim)
            return IntPolynomial(prim), d
    raise AssertionError("powers of a field element must become dependent")


def degree_of(a: FieldElement) -> int:
    return min_poly_of(a)[1]


# -- certified embedding evaluation --------------------------------------------


def embed_eval(a: FieldElement, e: int, eps) -> Tuple[Fraction, Fraction]:
    """Rational interval of width <= eps certified to contain sigma_e(a)."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be a positive rational")
    f = a.field
    root_width = None
    while True:
        root = f.root_interval(e, root_width)
        val = iv.eval_poly(a.coords, root)
        if iv.width(val) <= eps:
            return val
        cur = root[1] - root[0]
        root_width = cur / 2 if root_width is None else root_width / 2
        if root_width == 0:
            return val          # exact rational root; interval is a point


def sign_at(a: FieldElement, e: int) -> int:
    """Certified sign of sigma_e(a): -1, 0, or +1.

    Zero is decided exactly from the coordinates (an embedding is
    injective), so the refinement loop below always terminates.
    """
    if a.is_zero():
        return 0
    f = a.field
    root_width = None
    while True:
        root = f.root_interval(e, root_width)
        s = iv.sign(iv.eval_poly(a.coords, root))
        if s is not None:
            return s
        cur = root[1] - root[0]
        root_width = cur / 2 if root_width is None else root_width / 2


def identify_root(u: FieldElement, at_root: int) -> int:
    """Which root of the minimal polynomial equals sigma_{at_root}(u)?

    Caller must know that u is a root of the field polynomial (so the
    value is one of the stored roots); refinement then separates it from
    the others.
    """
    f = u.field
    eps = Fraction(1, 4)
    while True:
        val = embed_eval(u, at_root, eps)
        hits = []
        for idx in range(1, f.degree + 1):
            r = f.root_interval(idx, eps)
            if not iv.disjoint(val, r):
                hits.append(idx)
        if len(hits) == 1:
            return hits[0]
        eps /= 8


def apply_hom(u: FieldElement, a: FieldElement) -> FieldElement:
    """Image of `a` under the field homomorphism theta -> u (u must be a
    root of the minimal polynomial for this to be a homomorphism)."""
    out = u.field.zero()
    for c in reversed(a.coords):
        out = out * u + c
    return out


# -- conjugates inside the field ------------------------------------------------


def _denominator_bound(f: NumberField) -> int:
    disc = polys.discriminant(f.minpoly.coefficients)
    return isqrt(abs(disc)) + 1


def conjugate_element(f: NumberField, from_root: int,
                      to_root: int) -> Optional[FieldElement]:
    """Exact u in K with sigma_{from_root}(u) = root number `to_root`,
    or None (certified) when that root lies outside sigma_{from_root}(K).

    Method: if u exists, the vector of its embeddings is a permutation of
    the roots, so its coordinates solve a Vandermonde system whose data are
    root intervals.  Solving by interval Cramer and shrinking below the
    denominator-bound resolution pins at most one rational candidate per
    assignment; candidates are then verified exactly.
    """
    cache = f._cache.setdefault("conjugates", {})
    key = (from_root, to_root)
    if key in cache:
        return cache[key]
    result = _conjugate_search(f, from_root, to_root)
    cache[key] = result
    return result


def _conjugate_search(f, from_root, to_root):
    n = f.degree
    if from_root == to_root:
        return f.theta()
    bound = _denominator_bound(f)
    target = Fraction(1, 2 * bound * bound)
    perms = []
    for assign in itertools.permutations(range(1, n + 1), n):
        if assign[from_root - 1] == to_root and len(set(assign)) == n:
            perms.append(assign)
    alive = {p: None for p in perms}
    width = Fraction(1, 4)
    while alive:
        roots = [f.root_interval(i, width) for i in range(1, n + 1)]
        powers = [[iv.power(roots[i], k) for k in range(n)] for i in range(n)]
        detv = iv.det_interval(powers)
        if iv.contains_zero(detv):
            width /= 4
            continue
        for perm in list(alive):
            coords = []
            ok = True
            done = True
            for j in range(n):
                mat = [[powers[i][k] if k != j else roots[perm[i] - 1]
                        for k in range(n)] for i in range(n)]
                cj = iv.divide(iv.det_interval(mat), detv)
                if iv.width(cj) > target:
                    done = False
                    break
                mid = (cj[0] + cj[1]) / 2
                cand = mid.limit_denominator(bound)
                if not cj[0] <= cand <= cj[1]:
                    ok = False
                    break
                coords.append(cand)
            if not done and ok:
                continue
            del alive[perm]
            if not ok:
                continue
            u = f.element(coords)
            if u.is_rational():
                continue
            value = polys.evaluate(f.minpoly.coefficients, u)
            if not value.is_zero():
                continue
            if identify_root(u, from_root) == to_root:
                return u
        width /= 4
    return None


def conjugate_table(f: NumberField) -> Dict[Tuple[int, int], Optional[FieldElement]]:
    """All pairwise root-conjugation elements (cached)."""
    out = {}
    for a in range(1, f.degree + 1):
        for b in range(1, f.degree + 1):
            out[(a, b)] = conjugate_element(f, a, b)
    return out


def find_conjugate_in_field(f: NumberField, e: int,
                            from_index: int = 1) -> Optional[FieldElement]:
    """u in K with sigma_{from_index}(u) equal to root number e, if that
    root lies in sigma_{from_index}(K); otherwise None.  Absence is a
    certified answer, not a search failure."""
    return conjugate_element(f, from_index, e)


# -- embedding structure (the involution package) --------------------------------


@dataclass(frozen=True)
class EmbeddingStructure:
    """Whether a labeling sigma_1..sigma_4 := roots labeling[0..3] has the
    structure required for the canonical classes: sigma_3 maps the field to
    itself and is an involution, and sigma_4 = sigma_2 sigma_3 (so the
    images of sigma_2 and sigma_4 coincide)."""

    labeling: Tuple[int, int, int, int]
    sigma3_fixes_field: bool
    sigma3_involutive: bool
    sigma4_is_sigma2_sigma3: bool
    sigma24_same_image: bool
    sigma3_witness: Optional[FieldElement]
    witness_labeling: Optional[Tuple[int, int, int, int]]

    @property
    def full_package(self) -> bool:
        return (self.sigma3_fixes_field and self.sigma3_involutive
                and self.sigma4_is_sigma2_sigma3 and self.sigma24_same_image)


def _check_labeling(f, labeling):
    l1, l2, l3, l4 = labeling
    u3 = conjugate_element(f, l1, l3)
    fixes = u3 is not None
    involutive = False
    s4_comp = False
    if u3 is not None:
        involutive = apply_hom(u3, u3) == f.theta()
        s4_comp = identify_root(u3, l2) == l4
    same_image = conjugate_element(f, l2, l4) is not None
    return fixes, involutive, s4_comp, same_image, u3


def admissible_labelings(f: NumberField, sigma1_root: int = 1):
    """All labelings with the given distinguished root whose package holds,
    in deterministic order (sigma_3 candidate ascending)."""
    if f.degree != 4:
        raise ValueError("embedding structure is defined for quartic fields")
    out = []
    rest = [r for r in range(1, 5) if r != sigma1_root]
    for l3 in rest:
        pair = [r for r in rest if r != l3]
        for l2, l4 in (tuple(pair), tuple(reversed(pair))):
            lab = (sigma1_root, l2, l3, l4)
            fx, inv, comp, same, _ = _check_labeling(f, lab)
            if fx and inv and comp and same:
                out.append(lab)
    return out


def embedding_structure(f: NumberField, labeling) -> EmbeddingStructure:
    """Report on a given labeling, plus a sweep over the three pairings of
    the non-distinguished roots for a labeling satisfying the full package."""
    labeling = tuple(int(x) for x in labeling)
    if f.degree != 4 or sorted(labeling) != [1, 2, 3, 4]:
        raise ValueError("labeling must be a permutation of 1..4 on a quartic field")
    fx, inv, comp, same, u3 = _check_labeling(f, labeling)
    sweeps = admissible_labelings(f, sigma1_root=labeling[0])
    return EmbeddingStructure(
        labeling=labeling,
        sigma3_fixes_field=fx,
        sigma3_involutive=inv,
        sigma4_is_sigma2_sigma3=comp,
        sigma24_same_image=same,
        sigma3_witness=u3,
        witness_labeling=sweeps[0] if sweeps else None,
    )
