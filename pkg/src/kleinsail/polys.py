"""Exact univariate polynomial arithmetic over the rationals.

Polynomials are immutable tuples of coefficients, constant term first,
with no trailing zeros.  The zero polynomial is the empty tuple.  All
arithmetic is exact (``int`` / ``fractions.Fraction``); nothing here
touches floating point, so every sign decision downstream can be
certified.

The module supplies the kernels the number-field layer is built on:
Sturm sequences, real root isolation by certified bisection, Yun
squarefree decomposition, resultants via Sylvester/Bareiss, and an
exhaustive irreducibility test for monic polynomials of degree at
most four.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _gcd
from typing import Sequence, Tuple

from .errors import NotIrreducible, ZeroPolynomial

Poly = Tuple[Fraction, ...]


def trim(coeffs: Sequence) -> tuple:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p) -> int:
    return len(p) - 1


def evaluate(p, x):
    """Horner evaluation; exact for Fraction/int arguments."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def add(p, q):
    n = max(len(p), len(q))
    return trim(tuple((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                      for i in range(n)))


def neg(p):
    return tuple(-c for c in p)


def sub(p, q):
    return add(p, neg(q))


def mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p, c):
    if c == 0:
        return ()
    return tuple(a * c for a in p)


def derivative(p):
    return trim(tuple(i * p[i] for i in range(1, len(p))))


def divmod_exact(a, b):
    """Polynomial division over Q.  Returns (quotient, remainder)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and any(c != 0 for c in a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        coef = a[-1] / lead
        q[shift] = coef
        for i in range(len(b)):
            a[shift + i] -= coef * b[i]
        a.pop()
    return trim(q), trim(a)


def content(p) -> int:
    g = 0
    for c in p:
        g = _gcd(g, abs(int(c)))
    return g if g else 1


def to_int_primitive(p):
    """Clear denominators and divide by integer content; keeps the sign of
    the leading coefficient."""
    if not p:
        return ()
    from math import lcm
    den = lcm(*[Fraction(c).denominator for c in p])
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = _gcd(g, abs(c))
    g = g or 1
    return tuple(c // g for c in ints)


def monic(p):
    if not p:
        return ()
    lead = Fraction(p[-1])
    return tuple(Fraction(c) / lead for c in p)


def gcd_q(a, b):
    """Monic gcd over Q by the Euclidean algorithm."""
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_exact(a, b)
        a, b = b, r
    return monic(a)


def ext_gcd_q(a, b):
    """Extended Euclid over Q[x]: (g, s, t) with s a + t b = g, g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = divmod_exact(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return (), s0, t0
    lead = Fraction(r0[-1])
    inv = 1 / lead
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def compose(p, q):
    """p(q(x)), exact."""
    acc = ()
    for c in reversed(p):
        acc = add(mul(acc, q), (c,) if c != 0 else ())
    return acc


def yun_squarefree(p):
    """Yun's squarefree decomposition.

    Returns a list of (factor, multiplicity) with primitive integer
    factors, pairwise coprime, such that p = lc * prod factor^mult.
    """
    p = trim(p)
    if not p:
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    if degree(p) == 0:
        return []
    g = gcd_q(p, derivative(p))
    if degree(g) == 0:
        return [(to_int_primitive(p), 1)]
    out = []
    c, _ = divmod_exact(p, g)
    d, _ = divmod_exact(derivative(p), g)
    d = sub(d, derivative(c))
    i = 1
    while degree(c) > 0:
        a = gcd_q(c, d)
        if degree(a) > 0:
            out.append((to_int_primitive(a), i))
        c, _ = divmod_exact(c, a)
        aq, _ = divmod_exact(d, a)
        d = sub(aq, derivative(c))
        i += 1
    return out


def squarefree_part(p):
    """p / gcd(p, p'), as a primitive integer polynomial."""
    g = gcd_q(p, derivative(p))
    q, _ = divmod_exact(p, g)
    return to_int_primitive(q)


# -- Sturm sequences and root isolation ---------------------------------------

def sturm_chain(p):
    """Sturm sequence of a squarefree polynomial (rational coefficients)."""
    chain = [trim(tuple(Fraction(c) for c in p))]
    d = derivative(chain[0])
    if d:
        chain.append(d)
    while degree(chain[-1]) > 0:
        _, r = divmod_exact(chain[-2], chain[-1])
        r = neg(r)
        if not r:
            break
        chain.append(r)
    return chain


def _variations(chain, x) -> int:
    signs = []
    for q in chain:
        v = evaluate(q, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_in(chain, a, b) -> int:
    """Number of distinct real roots in the half-open interval (a, b]."""
    return _variations(chain, a) - _variations(chain, b)


def root_bound(p) -> int:
    """Integer B with every real root strictly inside (-B, B) (Cauchy)."""
    p = trim(p)
    if degree(p) < 1:
        return 1
    lead = abs(Fraction(p[-1]))
    m = max(abs(Fraction(c)) for c in p[:-1]) if len(p) > 1 else Fraction(0)
    b = 1 + m / lead
    return int(b) + 2


def count_real_roots(p) -> int:
    """Distinct real roots of p (multiplicity ignored)."""
    sf = squarefree_part(p)
    if degree(sf) < 1:
        return 0
    chain = sturm_chain(sf)
    bound = root_bound(sf)
    return count_roots_in(chain, Fraction(-bound), Fraction(bound))


def _nonroot_point(p, a, b):
    # A rational in (a, b) where p does not vanish; p has finitely many
    # roots so one of a few dyadic subdivision points works.
    for num in (8, 7, 9, 5, 11, 3, 13):
        x = a + (b - a) * Fraction(num, 16)
        if evaluate(p, x) != 0:
            return x
    raise AssertionError("no non-root subdivision point found")


def isolate_real_roots(p):
    """Isolating intervals for the distinct real roots of p.

    Returns a list of (lo, hi, multiplicity), ascending and pairwise
    disjoint, with p(lo) != 0 != p(hi) and exactly one root inside each
    open interval.  The count per factor is certified by a Sturm
    sequence on the squarefree part.
    """
    p = trim(tuple(Fraction(c) for c in p))
    if not p:
        raise ZeroPolynomial("the zero polynomial has no isolated roots")
    if degree(p) == 0:
        return []
    out = []
    for factor, multiplicity in yun_squarefree(p):
        if degree(factor) < 1:
            continue
        chain = sturm_chain(factor)
        bound = Fraction(root_bound(factor))
        stack = [(-bound, bound)]
        while stack:
            a, b = stack.pop()
            n = count_roots_in(chain, a, b)
            if n == 0:
                continue
            if n == 1:
                out.append([a, b, multiplicity, factor])
                continue
            mid = _nonroot_point(factor, a, b)
            stack.append((a, mid))
            stack.append((mid, b))
    # Make intervals from different factors disjoint, then sort.
    changed = True
    while changed:
        changed = False
        for i in range(len(out)):
            for j in range(i + 1, len(out)):
                a, b = out[i], out[j]
                if a[0] < b[1] and b[0] < a[1]:
                    out[i][0], out[i][1] = refine_step(a[3], a[0], a[1])
                    out[j][0], out[j][1] = refine_step(b[3], b[0], b[1])
                    changed = True
    out.sort(key=lambda r: r[0])
    return [(a, b, m) for a, b, m, _ in out]


def refine_step(sf, lo, hi):
    """Halve an isolating interval of a squarefree polynomial.

    The invariant sf(lo)*sf(hi) < 0 is maintained; the returned interval
    still contains the root and its endpoints are non-roots.
    """
    mid = _nonroot_point(sf, lo, hi)
    if evaluate(sf, lo) * evaluate(sf, mid) < 0:
        return lo, mid
    return mid, hi


def refine_to_width(sf, lo, hi, width):
    while hi - lo > width:
        lo, hi = refine_step(sf, lo, hi)
    return lo, hi


# -- resultants -----------------------------------------------------------------

def resultant(p, q) -> int:
    """Resultant of two integer polynomials via the Sylvester matrix."""
    from .intlat import det_int
    p = trim(tuple(int(c) for c in p))
    q = trim(tuple(int(c) for c in q))
    m, n = degree(p), degree(q)
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return p[0] ** n
    if n == 0:
        return q[0] ** m
    size = m + n
    rows = []
    rp = list(reversed(p))
    rq = list(reversed(q))
    for i in range(n):
        rows.append([0] * i + rp + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + rq + [0] * (size - n - 1 - i))
    return det_int(rows)


def discriminant(p) -> int:
    """Discriminant of an integer polynomial (exact)."""
    p = trim(tuple(int(c) for c in p))
    n = degree(p)
    if n < 1:
        raise ZeroPolynomial("discriminant needs degree >= 1")
    r = resultant(p, derivative(p))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    val = Fraction(sign * r, p[-1])
    assert val.denominator == 1
    return int(val)


# -- irreducibility over Q for monic degree <= 4 --------------------------------

def _divisors(n: int):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_roots_monic(p):
    """All rational roots of a monic integer polynomial (they are integers
    dividing the constant term)."""
    p = trim(tuple(int(c) for c in p))
    if not p:
        raise ZeroPolynomial("zero polynomial")
    roots = []
    if p[0] == 0:
        roots.append(0)
        while p[0] == 0:
            p = p[1:]
    for d in _divisors(p[0]):
        for r in (d, -d):
            if evaluate(p, r) == 0:
                roots.append(r)
    return sorted(set(roots))


def is_irreducible_monic(p) -> bool:
    """Exact irreducibility over Q for monic integer polynomials of degree
    1 to 4.

    Degree 2 and 3 reduce to the rational root test.  Degree 4 adds an
    exhaustive search over factorizations into two monic integer
    quadratics; the candidate constant terms are divisor pairs of the
    constant term, which bounds the search at least as tightly as the
    Mignotte coefficient bound would.
    """
    p = trim(tuple(int(c) for c in p))
    n = degree(p)
    if n < 1:
        raise NotIrreducible("constant polynomials are not irreducible")
    if p[-1] != 1:
        raise ValueError("is_irreducible_monic expects a monic polynomial")
    if n == 1:
        return True
    if rational_roots_monic(p):
        return False
    if n <= 3:
        return True
    if n == 4:
        a0, a1, a2, a3 = p[0], p[1], p[2], p[3]
        # (x^2 + s x + b)(x^2 + t x + d): b d = a0, s + t = a3,
        # b + d + s t = a2, s d + t b = a1.
        for b in _divisors(a0):
            for bb in (b, -b):
                if bb == 0 or a0 % bb != 0:
                    continue
                d = a0 // bb
                # s + t = a3 and s t = a2 - bb - d
                st = a2 - bb - d
                disc = a3 * a3 - 4 * st
                if disc < 0:
                    continue
                r = _isqrt(disc)
                if r * r != disc:
                    continue
                for num in (a3 + r, a3 - r):
                    if num % 2 != 0:
                        continue
                    s = num // 2
                    t = a3 - s
                    if s * t == st and s * d + t * bb == a1:
                        return False
        return True
    raise ValueError("irreducibility test implemented only through degree 4")


def _isqrt(n: int) -> int:
    from math import isqrt
    return isqrt(n)
