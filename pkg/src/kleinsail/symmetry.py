"""Symmetries of 4-dimensional algebraic continued fractions.

A unimodular G is a symmetry iff it permutes the four eigendirections:
G l_i = lambda_i l_{sigma(i)}.  Writing m = (1, a, b, g) for the
distinguished direction's field coordinates, the whole identity is
driven by a single field homomorphism tau (theta maps to a root u of
the minimal polynomial lying in K):

    G m = (G m)_1 * tau(m)        (componentwise, exact in K)

and then sigma(i) is the index of the embedding sigma_i o tau, while
lambda_i has the exact value sigma_i((G m)_1).  Everything below
(classification, the mu-product properness criterion, the ten canonical
classes and their matrices, and the class-membership criterion with a
unimodular witness) reduces to exact field arithmetic plus certified
sign/root identification.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import intlat, numfield, sail
from .cf_core import AlgebraicCF, Cone, transform_cf
from .errors import (InconsistentProperness, LemmaViolation, NoFixedLine,
                     NoSigma3, NotUnimodular, WrongCharPoly)
from .numfield import FieldElement, apply_hom, conjugate_element, identify_root

IntMat = Tuple[Tuple[int, ...], ...]

ORD2_CHARPOLY = (1, 0, -2, 0, 1)        # (x^2 - 1)^2, constant term first


@dataclass(frozen=True)
class SymmetryReport:
    """Certified data of one symmetry: G l_i = lambda_i l_{sigma(i)}.

    `lambdas[i-1]` is a field element whose value under sigma_i is the
    real scalar lambda_i; `tau_witness` is the root of the minimal
    polynomial driving the permutation (None for synthetic reports built
    from rational lambdas in tests)."""

    G: IntMat
    sigma: Tuple[int, int, int, int]
    lambdas: Tuple[FieldElement, ...]
    tau_witness: Optional[FieldElement]
    kind: Optional[str] = None
    proper: Optional[bool] = None
    fixed_point: Optional[Tuple[int, ...]] = None
    fixed_cone: Optional[Cone] = None
    invariant_planes: Optional[Tuple] = None


def perm_order(sigma) -> int:
    order = 1
    seen = set()
    for start in range(1, len(sigma) + 1):
        if start in seen:
            continue
        length = 0
        x = start
        while x not in seen:
            seen.add(x)
            x = sigma[x - 1]
            length += 1
        if length:
            from math import lcm
            order = lcm(order, length)
    return order


def cycle_type(sigma) -> Tuple[int, ...]:
    seen = set()
    lengths = []
    for start in range(1, len(sigma) + 1):
        if start in seen:
            continue
        x, length = start, 0
        while x not in seen:
            seen.add(x)
            x = sigma[x - 1]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def sigma_of(cf: AlgebraicCF, g) -> Optional[SymmetryReport]:
    """The permutation and scalars of a candidate symmetry, or None when
    G permutes no labeling of the eigendirections (then G does not fix
    the continued fraction)."""
    g = tuple(tuple(int(x) for x in row) for row in g)
    if not intlat.is_unimodular(g):
        raise NotUnimodular("symmetry candidates must lie in GL_4(Z)")
    field = cf.field
    m = cf.basis_elements()
    w = [sum((field.rational(g[i][j]) * m[j] for j in range(4)), field.zero())
         for i in range(4)]
    lam = w[0]
    if lam.is_zero():
        return None
    for root in range(1, 5):
        u = conjugate_element(field, 1, root)
        if u is None:
            continue
        if all(w[k] == lam * apply_hom(u, m[k]) for k in range(1, 4)):
            sigma = _sigma_from_tau(cf, u)
            report = SymmetryReport(G=g, sigma=sigma,
                                    lambdas=(lam, lam, lam, lam),
                                    tau_witness=u)
            _lemma1_guard(cf, report)
            return replace(report, kind=classify(report))
    return None


def _sigma_from_tau(cf, u) -> Tuple[int, int, int, int]:
    # sigma(i) = index j with sigma_j = sigma_i o tau; the value of u under
    # the i-th embedding is the root labeled by j.
    sigma = []
    for i in range(1, 5):
        value_root = identify_root(u, cf.labeling[i - 1])
        sigma.append(cf.labeling.index(value_root) + 1)
    assert sorted(sigma) == [1, 2, 3, 4]
    return tuple(sigma)


def _is_pm_identity(g) -> bool:
    return g == intlat.identity(4) or \
        g == tuple(tuple(-x for x in row) for row in intlat.identity(4))


def _lemma1_guard(cf, report):
    # a non +-I symmetry fixing a direction must scale it irrationally
    if _is_pm_identity(report.G):
        return
    for i in range(1, 5):
        if report.sigma[i - 1] == i and report.lambdas[i - 1].is_rational():
            raise LemmaViolation(
                f"direction {i} is fixed with rational scalar "
                f"{report.lambdas[i - 1].as_rational()}; this contradicts "
                "the irrationality of eigendirection scalars")


def classify(report: SymmetryReport) -> str:
    """dirichlet iff sigma is the identity, palindromic otherwise; a
    palindromic permutation must be a double transposition or a 4-cycle,
    anything else marks an upstream bug."""
    if report.sigma == (1, 2, 3, 4):
        return "dirichlet"
    ct = cycle_type(report.sigma)
    if ct not in ((2, 2), (4,)):
        raise LemmaViolation(
            f"palindromic symmetry with cycle type {ct}; only (2,2) and "
            "(4,) can occur")
    return "palindromic"


def reduce_to_ord2(cf: AlgebraicCF, report: SymmetryReport) -> SymmetryReport:
    """The order-2 companion: G itself when ord(sigma) = 2, else G^2."""
    if report.kind != "palindromic":
        raise ValueError("reduce_to_ord2 expects a palindromic report")
    if perm_order(report.sigma) == 2:
        return report
    g2 = intlat.to_int_matrix(intlat.mat_mul(report.G, report.G))
    out = sigma_of(cf, g2)
    assert out is not None and perm_order(out.sigma) == 2
    return out


def mu_products_ok(report: SymmetryReport) -> bool:
    """Exact order-2 properness products: lambda_i lambda_{sigma(i)} = 1
    for both transpositions.

    For genuine reports the product over a transposition starting at i is
    sigma_i(lambda * tau(lambda)), so the criterion is the single exact
    identity lambda * tau(lambda) = 1.  Synthetic reports with rational
    lambdas multiply scalars directly.
    """
    sigma = report.sigma
    if cycle_type(sigma) != (2, 2):
        raise ValueError("mu products in this form apply to order-2 sigma")
    for i in range(1, 5):
        j = sigma[i - 1]
        if j == i:
            continue
        li, lj = report.lambdas[i - 1], report.lambdas[j - 1]
        if li.is_rational() and lj.is_rational():
            if li.as_rational() * lj.as_rational() != 1:
                return False
        else:
            assert report.tau_witness is not None
            prod = li * apply_hom(report.tau_witness, lj)
            if not (prod.is_rational() and prod.as_rational() == 1):
                return False
    return True


def is_proper(cf: AlgebraicCF, report: SymmetryReport) -> SymmetryReport:
    """Properness of a palindromic symmetry, decided twice.

    Algebraically: the order-2 companion must satisfy the mu-product
    identities (for a 4-cycle this is equivalent to the product of all
    four scalars being 1).  Geometrically: G must have an integer fixed
    vector, necessarily interior to a cone.  The two answers must agree;
    disagreement raises InconsistentProperness.  Returns the report with
    proper / fixed_point / invariant_planes filled in.
    """
    if report.kind != "palindromic":
        raise ValueError("properness applies to palindromic symmetries")
    companion = reduce_to_ord2(cf, report)
    algebraic = mu_products_ok(companion)
    try:
        cone, v = sail.fixed_point_in_cone(cf, report.G)
        geometric = True
    except NoFixedLine:
        cone, v = None, None
        geometric = False
    if algebraic != geometric:
        raise InconsistentProperness(
            f"mu-product test says {algebraic}, fixed-point test says "
            f"{geometric}")
    planes = None
    if algebraic and perm_order(report.sigma) == 2:
        chi = intlat.charpoly(report.G)
        if chi != ORD2_CHARPOLY:
            raise LemmaViolation(
                f"proper order-2 symmetry must have charpoly (x^2-1)^2, "
                f"got {chi}")
        planes = invariant_planes(report.G)
    return replace(report, proper=algebraic, fixed_point=v, fixed_cone=cone,
                   invariant_planes=planes)


def invariant_planes(g) -> Tuple[Tuple, Tuple]:
    """Rational bases of ker(G - I) and ker(G + I) for an involution with
    characteristic polynomial (x^2 - 1)^2; the two planes span R^4."""
    g = tuple(tuple(int(x) for x in row) for row in g)
    chi = intlat.charpoly(g)
    if chi != ORD2_CHARPOLY:
        raise WrongCharPoly(f"characteristic polynomial is {chi}, "
                            "expected (x^2-1)^2")
    if intlat.to_int_matrix(intlat.mat_mul(g, g)) != intlat.identity(4):
        raise WrongCharPoly("G is not an involution; eigenplanes do not split")
    plus = [intlat.primitive_vector(v) for v in
            intlat.nullspace(intlat.mat_sub(g, intlat.identity(4)))]
    minus = [intlat.primitive_vector(v) for v in
             intlat.nullspace(intlat.mat_sub(
                 g, intlat.mat_scale(intlat.identity(4), -1)))]
    assert len(plus) == 2 and len(minus) == 2
    assert intlat.det_frac(tuple(plus) + tuple(minus)) != 0
    return tuple(plus), tuple(minus)


# -- the ten canonical classes -------------------------------------------------------

CANONICAL_MATRICES: Tuple[IntMat, ...] = (
    ((1, 0, 0, 0), (0, 0, 0, 1), (0, -1, -1, -1), (0, 1, 0, 0)),
    ((1, 0, 0, 0), (0, 0, 0, 1), (1, -1, -1, -1), (0, 1, 0, 0)),
    ((1, 0, 0, 0), (0, 0, 0, 1), (2, -1, -1, -1), (0, 1, 0, 0)),
    ((1, 0, 0, 0), (0, -1, 0, 2), (0, 0, -1, -2), (0, 0, 0, 1)),
    ((1, 0, 0, 0), (0, -1, 0, 2), (2, 0, -1, -2), (0, 0, 0, 1)),
    ((1, 0, 0, 0), (-1, -1, 0, 2), (1, 0, -1, -2), (0, 0, 0, 1)),
    ((1, 0, 0, 0), (-1, -1, 0, 2), (3, 0, -1, -2), (0, 0, 0, 1)),
    ((1, 0, 0, 0), (0, -1, 0, 2), (1, 0, -1, -1), (0, 0, 0, 1)),
    ((1, 0, 0, 0), (0, -1, 0, 2), (2, 0, -1, -1), (0, 0, 0, 1)),
    ((1, 0, 0, 0), (0, 1, 0, 4), (2, -1, -1, -2), (0, 0, 0, -1)),
)


@dataclass(frozen=True)
class CanonicalClass:
    index: int
    matrix: IntMat
    trace_constant: Fraction     # beta + s3(beta) = trace_constant - trace_scale * s
    trace_scale: Fraction        # with s = alpha + s3(alpha)
    gamma_kind: str              # how gamma is built from alpha and s3(alpha)


_CLASS_DATA = (
    (1, Fraction(0), Fraction(1), "conj"),
    (2, Fraction(1), Fraction(1), "conj"),
    (3, Fraction(2), Fraction(1), "conj"),
    (4, Fraction(0), Fraction(1), "half_trace"),
    (5, Fraction(2), Fraction(1), "half_trace"),
    (6, Fraction(0), Fraction(1), "half_trace_shift"),
    (7, Fraction(2), Fraction(1), "half_trace_shift"),
    (8, Fraction(1), Fraction(1, 2), "half_trace"),
    (9, Fraction(2), Fraction(1, 2), "half_trace"),
    (10, Fraction(2), Fraction(1, 2), "quarter_diff"),
)


def canonical_class(i: int) -> CanonicalClass:
    if not 1 <= i <= 10:
        raise ValueError("class index must be 1..10")
    idx, const, scl, kind = _CLASS_DATA[i - 1]
    return CanonicalClass(index=idx, matrix=CANONICAL_MATRICES[i - 1],
                          trace_constant=const, trace_scale=scl,
                          gamma_kind=kind)


def canonical_matrix(i: int) -> IntMat:
    m = canonical_class(i).matrix
    assert intlat.is_unimodular(m), "canonical matrix data corrupted"
    return m


def class_gamma(cls: CanonicalClass, alpha: FieldElement,
                alpha_conj: FieldElement) -> FieldElement:
    s = alpha + alpha_conj
    if cls.gamma_kind == "conj":
        return alpha_conj
    if cls.gamma_kind == "half_trace":
        return s * Fraction(1, 2)
    if cls.gamma_kind == "half_trace_shift":
        return (s + 1) * Fraction(1, 2)
    if cls.gamma_kind == "quarter_diff":
        return (alpha_conj - alpha) * Fraction(1, 4)
    raise AssertionError(cls.gamma_kind)


def _relation_holds(cf, cls, u3) -> bool:
    alpha_conj = apply_hom(u3, cf.alpha)
    s = cf.alpha + alpha_conj
    beta_trace = cf.beta + apply_hom(u3, cf.beta)
    want_trace = cf.field.rational(cls.trace_constant) - s * cls.trace_scale
    if beta_trace != want_trace:
        return False
    return cf.gamma == class_gamma(cls, cf.alpha, alpha_conj)


def class_membership(cf: AlgebraicCF, i: int) -> bool:
    """Exact membership in the i-th canonical class, swept over every
    admissible involution labeling (the class relations fix no canonical
    order among the non-identity embeddings)."""
    cls = canonical_class(i)
    labelings = numfield.admissible_labelings(cf.field,
                                              sigma1_root=cf.labeling[0])
    if not labelings:
        raise NoSigma3("no labeling of the embeddings has the involution "
                       "structure required by the canonical classes")
    seen = set()
    for lab in labelings:
        root3 = lab[2]
        if root3 in seen:
            continue
        seen.add(root3)
        u3 = conjugate_element(cf.field, cf.labeling[0], root3)
        if _relation_holds(cf, cls, u3):
            return True
    return False


def verify_lemma6(cf: AlgebraicCF, i: int) -> bool:
    """Self-consistency: membership in class i must coincide with the
    canonical matrix G_i being a proper symmetry of order 2."""
    try:
        member = class_membership(cf, i)
    except NoSigma3:
        member = False
    report = sigma_of(cf, canonical_matrix(i))
    if report is None or report.kind != "palindromic" \
            or perm_order(report.sigma) != 2:
        matrix_side = False
    else:
        matrix_side = bool(is_proper(cf, report).proper)
    return member == matrix_side


# -- the main criterion ---------------------------------------------------------------


@dataclass(frozen=True)
class CriterionVerdict:
    kind: str                               # proper | not_in_class | unknown
    class_index: Optional[int] = None
    witness: Optional[IntMat] = None
    symmetry: Optional[IntMat] = None
    report: Optional[SymmetryReport] = None
    candidates_tried: int = 0

    @property
    def is_proper(self) -> bool:
        return self.kind == "proper"


def _try_witness(cf, x):
    image = transform_cf(cf, x)
    for i in range(1, 11):
        if class_membership(image, i):
            x_inv = intlat.to_int_matrix(intlat.inverse(x))
            g = intlat.to_int_matrix(
                intlat.mat_mul(intlat.mat_mul(x_inv, canonical_matrix(i)), x))
            report = sigma_of(cf, g)
            assert report is not None and report.kind == "palindromic"
            report = is_proper(cf, report)
            assert report.proper, "class membership must certify properness"
            return i, g, report
    return None


def criterion_check(cf: AlgebraicCF, witness=None, search_bound: int = 2,
                    search_cap: int = 2000, seed: int = 0) -> CriterionVerdict:
    """Does the CF have a proper palindromic symmetry?

    With a witness X the answer is definite for that witness: the
    transformed CF (directions X l_i, renormalized) is tested against all
    ten classes under all admissible labelings; success returns the
    symmetry X^{-1} G_i X of the original CF, verified proper.  Without a
    witness the equivalence transform is searched over GL_4(Z) matrices
    with entries bounded by search_bound up to a hard candidate cap, and
    exhaustion is reported as Unknown, never as a negative.

    One unconditional negative exists: the involution package of the
    field is invariant under any unimodular transform of the CF, so if no
    labeling of the embeddings carries it, no witness can ever exist and
    the verdict is not_in_class outright.
    """
    if not numfield.admissible_labelings(cf.field, sigma1_root=cf.labeling[0]):
        return CriterionVerdict(kind="not_in_class", witness=None)
    if witness is not None:
        x = tuple(tuple(int(v) for v in row) for row in witness)
        if not intlat.is_unimodular(x):
            raise NotUnimodular("witness must be unimodular")
        hit = _try_witness(cf, x)
        if hit is None:
            return CriterionVerdict(kind="not_in_class", witness=x,
                                    candidates_tried=1)
        i, g, report = hit
        return CriterionVerdict(kind="proper", class_index=i, witness=x,
                                symmetry=g, report=report, candidates_tried=1)
    rng = random.Random(seed)
    tried = 0
    seen = set()
    candidates = [intlat.identity(4)]
    while tried < search_cap:
        if not candidates:
            candidates.append(intlat.random_unimodular(
                rng, 4, steps=rng.randrange(2, 9),
                entry_bound=search_bound))
        x = candidates.pop()
        if x in seen:
            continue
        seen.add(x)
        tried += 1
        try:
            hit = _try_witness(cf, x)
        except Exception:
            continue
        if hit is not None:
            i, g, report = hit
            return CriterionVerdict(kind="proper", class_index=i, witness=x,
                                    symmetry=g, report=report,
                                    candidates_tried=tried)
    return CriterionVerdict(kind="unknown", candidates_tried=tried)


# -- bounded Dirichlet discovery --------------------------------------------------------


def find_dirichlet_symmetries(cf: AlgebraicCF, bound: int = 2,
                              limit: int = 5) -> List[SymmetryReport]:
    """Best-effort unit search: integer polynomials p with p(A) unimodular
    give Dirichlet symmetries (sigma = id).  Needs a matrix-sourced CF;
    the full unit group is out of reach here and no completeness is
    claimed."""
    kind, hm = cf.source
    if kind != "matrix" or hm is None:
        return []
    a = hm.matrix
    powers = [intlat.identity(4)]
    for _ in range(3):
        powers.append(intlat.to_int_matrix(intlat.mat_mul(powers[-1], a)))
    out = []
    seen = set()
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=4):
        if len(out) >= limit:
            break
        m = tuple(tuple(sum(c * powers[k][i][j] for k, c in enumerate(coeffs))
                        for j in range(4)) for i in range(4))
        if m in seen or _is_pm_identity(m):
            continue
        seen.add(m)
        if not intlat.is_unimodular(m):
            continue
        report = sigma_of(cf, m)
        if report is not None and report.kind == "dirichlet":
            out.append(report)
    return out


def cone_action(cf: AlgebraicCF, report: SymmetryReport, cone: Cone) -> Cone:
    """The cone a symmetry maps `cone` to: direction i goes to sigma(i)
    and the sign flips when the real scalar lambda_i is negative."""
    signs = [0, 0, 0, 0]
    for i in range(1, 5):
        lam_sign = numfield.sign_at(report.lambdas[i - 1],
                                    cf.labeling[i - 1])
        assert lam_sign != 0
        signs[report.sigma[i - 1] - 1] = cone.signs[i - 1] * lam_sign
    return Cone(tuple(signs))
