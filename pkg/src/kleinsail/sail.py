"""Truncated Klein sail patches.

The Klein polyhedron of an irrational simplicial cone is the convex hull
of its nonzero lattice points; the sail is its boundary.  The true sail
is infinite, so a patch truncates at sup-norm N, keeps the hull facets
whose supporting hyperplane separates the origin from the hull (the
apex side), and marks as "stable" the facets whose vertices all lie
within N/margin.  The stable zone is an engineering construct: those
facets are expected (and regression-tested) not to change as N grows,
but the paper-level object is the infinite sail.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import hull as hull_mod
from . import intlat
from .cf_core import AlgebraicCF, Cone, _evaluator, cone_locate
from .errors import EmptyPatch, NoFixedLine, ZeroVector
from .hull import Facet


@dataclass(frozen=True)
class SailPatch:
    cone: Cone
    bound: int
    margin: Fraction
    vertices: Tuple[Tuple[int, ...], ...]
    facets: Tuple[Facet, ...]
    stable_flags: Tuple[bool, ...]
    degenerate: bool


def enumerate_cone_points(cf: AlgebraicCF, cone: Cone, n: int) -> List[Tuple[int, ...]]:
    """All nonzero integer points of sup-norm <= n lying in the cone,
    in lexicographic order."""
    if n < 1:
        raise ValueError("bound must be >= 1")
    buckets = _enumerate_all(cf, n)
    return list(buckets.get(cone.signs, ()))


def _enumerate_all(cf: AlgebraicCF, n: int) -> Dict[Tuple[int, ...], List]:
    key = ("enumeration", n)
    cached = cf._cache.get(key)
    if cached is not None:
        return cached
    ev = _evaluator(cf)
    buckets: Dict[Tuple[int, ...], List] = {}
    rng = range(-n, n + 1)
    for p in itertools.product(rng, rng, rng, rng):
        if p == (0, 0, 0, 0):
            continue
        signs = ev.signs(p)
        if signs is None:
            continue
        buckets.setdefault(signs, []).append(p)
    cf._cache[key] = buckets
    return buckets


def sail_patch(cf: AlgebraicCF, cone: Cone, n: int,
               margin=Fraction(2)) -> SailPatch:
    """Truncated sail: hull of the cone's lattice points up to sup-norm n.

    Vertices are the extreme points of the hull; facets are the hull
    facets on the apex side (supporting hyperplane <normal, x> >= offset
    with offset > 0, so the origin is strictly outside).  A facet is
    stable when each of its vertices has sup-norm <= n/margin.
    """
    margin = Fraction(margin)
    if margin < 1:
        raise ValueError("margin must be >= 1")
    pts = enumerate_cone_points(cf, cone, n)
    if not pts:
        raise EmptyPatch(f"no lattice points of norm <= {n} in cone "
                         f"{cone.label()}")
    try:
        result = hull_mod.convex_hull(pts)
        degenerate = False
    except hull_mod.DegenerateHull:
        verts = tuple(sorted(hull_mod.extreme_points(pts)))
        return SailPatch(cone=cone, bound=n, margin=margin, vertices=verts,
                         facets=(), stable_flags=(), degenerate=True)
    keep = [f for f in result.facets if f.offset > 0]
    limit = Fraction(n) / margin
    flags = []
    for f in keep:
        flags.append(all(max(abs(x) for x in result.vertices[v]) <= limit
                         for v in f.vertices))
    return SailPatch(cone=cone, bound=n, margin=margin,
                     vertices=result.vertices, facets=tuple(keep),
                     stable_flags=tuple(flags), degenerate=degenerate)


def stable_facets(patch: SailPatch) -> List[Facet]:
    return [f for f, s in zip(patch.facets, patch.stable_flags) if s]


def facet_vertex_set(patch: SailPatch, facet: Facet):
    return {patch.vertices[i] for i in facet.vertices}


def fixed_point_in_cone(cf: AlgebraicCF, g) -> Tuple[Cone, Tuple[int, ...]]:
    """An integer fixed vector of G together with its cone.

    ker(G - I) over Q is computed exactly.  A one-dimensional kernel
    yields the primitive integer generator; a higher-dimensional kernel
    is swept over small-height integer combinations and the first
    primitive point found is reported.  Any nonzero integer point is
    interior to some cone because the cones of a hyperbolic CF are
    irrational.  Raises NoFixedLine when 1 is not an eigenvalue.
    """
    g = tuple(tuple(int(x) for x in row) for row in g)
    gi = intlat.mat_sub(g, intlat.identity(4))
    kernel = intlat.nullspace(gi)
    if not kernel:
        raise NoFixedLine("G has no eigenvalue 1")
    basis = [intlat.primitive_vector(v) for v in kernel]
    if len(basis) == 1:
        v = _canonical_sign(basis[0])
        return _located(cf, v)
    height = 5
    for h in range(1, height + 1):
        for coeffs in itertools.product(range(-h, h + 1), repeat=len(basis)):
            if max(abs(c) for c in coeffs) != h:
                continue
            v = tuple(sum(c * b[i] for c, b in zip(coeffs, basis))
                      for i in range(4))
            if all(x == 0 for x in v):
                continue
            return _located(cf, _canonical_sign(intlat.primitive_vector(v)))
    raise AssertionError("kernel sweep found no nonzero point")


def _canonical_sign(v):
    lead = next(x for x in v if x != 0)
    return v if lead > 0 else tuple(-x for x in v)


def _located(cf, v):
    cone = cone_locate(cf, v)
    if cone is None:
        raise ZeroVector("fixed vector unexpectedly on a wall")
    return cone, v


# -- OFF export of a 3-dimensional facet -------------------------------------------


def facet_off(patch: SailPatch, facet_index: int) -> str:
    """OFF-format dump of one facet of a patch, viewed as a 3-polytope in
    exact coordinates of its hyperplane lattice.  Intended for external
    viewers; coordinates are emitted as floats."""
    facet = patch.facets[facet_index]
    pts4 = [patch.vertices[i] for i in facet.vertices]
    if len(pts4) < 4:
        raise ValueError("facet has too few vertices for a 3-polytope dump")
    base = pts4[0]
    diffs = [tuple(p[i] - base[i] for i in range(4)) for p in pts4]
    red, pivots = intlat.rref(diffs)
    rank = len(pivots)
    if rank != 3:
        raise ValueError("facet is not 3-dimensional")
    basis = [red[r] for r in range(3)]
    coords = [hull_mod._solve_in_span(basis, d) for d in diffs]
    from math import lcm
    scale = [lcm(*[c[j].denominator for c in coords]) for j in range(3)]
    int_coords = [tuple(int(c[j] * scale[j]) for j in range(3)) for c in coords]
    inner = hull_mod.convex_hull(int_coords)
    lines = ["OFF", f"{len(inner.vertices)} {len(inner.facets)} 0"]
    for v in inner.vertices:
        lines.append(" ".join(str(float(Fraction(x, s)))
                              for x, s in zip(v, scale)))
    for f in inner.facets:
        ordered = _order_polygon([inner.vertices[i] for i in f.vertices],
                                 f.normal)
        idx = [inner.vertices.index(p) for p in ordered]
        lines.append(f"{len(idx)} " + " ".join(map(str, idx)))
    return "\n".join(lines) + "\n"


def _order_polygon(points, normal):
    # order convex-position points around their centroid; float angles are
    # fine for output ordering, geometry stays exact upstream
    import math as _m
    n = len(points)
    cx = [sum(p[i] for p in points) / n for i in range(3)]
    ax = max(range(3), key=lambda i: abs(normal[i]))
    u, w = [i for i in range(3) if i != ax]
    return sorted(points,
                  key=lambda p: _m.atan2(p[w] - cx[w], p[u] - cx[u]))
