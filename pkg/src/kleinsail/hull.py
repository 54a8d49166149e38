"""Exact convex hulls of integer point sets in dimension 2 to 4.

Incremental (beneath-beyond) insertion with integer orientation
predicates.  Facet normals come from cofactor expansion, so every
hyperplane is an exact integer (normal, offset) pair with the hull on
the side  <normal, x> >= offset.  Points exactly on a hyperplane are
never treated as visible; a point outside the current hull strictly
violates at least one facet inequality, so no extreme point is missed.
Coplanar simplicial facets are merged afterwards by their normalized
supporting hyperplane, and vertices are certified by requiring the
incident facet normals to span the full space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Sequence, Tuple

from . import intlat


@dataclass(frozen=True)
class Facet:
    normal: Tuple[int, ...]
    offset: int
    vertices: Tuple[int, ...]       # indices into HullResult.vertices


@dataclass(frozen=True)
class HullResult:
    vertices: Tuple[Tuple[int, ...], ...]
    facets: Tuple[Facet, ...]


class DegenerateHull(Exception):
    """Input points do not span the ambient dimension."""


def _cross_normal(points) -> Tuple[int, ...]:
    """Integer vector orthogonal to the differences of d points in R^d."""
    d = len(points[0])
    base = points[0]
    diffs = [tuple(p[i] - base[i] for i in range(d)) for p in points[1:]]
    normal = []
    for j in range(d):
        minor = [[row[i] for i in range(d) if i != j] for row in diffs]
        normal.append((-1) ** j * intlat.det_int(minor))
    return tuple(normal)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _affine_rank(points) -> int:
    base = points[0]
    diffs = [tuple(p[i] - base[i] for i in range(len(base))) for p in points[1:]]
    if not diffs:
        return 0
    _, pivots = intlat.rref(diffs)
    return len(pivots)


def _initial_simplex(points) -> List[int]:
    d = len(points[0])
    chosen = [0]
    for idx in range(1, len(points)):
        trial = chosen + [idx]
        if _affine_rank([points[i] for i in trial]) == len(trial) - 1:
            chosen = trial
            if len(chosen) == d + 1:
                return chosen
    raise DegenerateHull(f"points span only an affine subspace of rank "
                         f"{len(chosen) - 1}")


def convex_hull(points: Sequence[Tuple[int, ...]]) -> HullResult:
    """Convex hull of full-dimensional integer points, exact.

    Raises DegenerateHull when the points do not affinely span R^d.
    """
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    if not pts:
        raise ValueError("no points")
    d = len(pts[0])
    if d < 2:
        raise ValueError("hull dimension must be >= 2")
    simplex = _initial_simplex(pts)

    centroid = tuple(Fraction(sum(pts[i][j] for i in simplex), d + 1)
                     for j in range(d))

    facets: Dict[FrozenSet[int], Tuple[Tuple[int, ...], int]] = {}
    ridge_map: Dict[FrozenSet[int], set] = {}

    def add_facet(idx_set: FrozenSet[int]):
        members = [pts[i] for i in sorted(idx_set)]
        n = _cross_normal(members)
        c = _dot(n, members[0])
        side = _dot(n, centroid)
        assert side != c, "interior reference on a facet hyperplane"
        if side < c:
            n = tuple(-x for x in n)
            c = -c
        facets[idx_set] = (n, c)
        for v in idx_set:
            r = idx_set - {v}
            ridge_map.setdefault(r, set()).add(idx_set)

    def drop_facet(idx_set: FrozenSet[int]):
        del facets[idx_set]
        for v in idx_set:
            r = idx_set - {v}
            ridge_map[r].discard(idx_set)
            if not ridge_map[r]:
                del ridge_map[r]

    for v in range(d + 1):
        add_facet(frozenset(simplex) - {simplex[v]})

    in_simplex = set(simplex)
    for idx in range(len(pts)):
        if idx in in_simplex:
            continue
        p = pts[idx]
        visible = [k for k, (n, c) in facets.items() if _dot(n, p) < c]
        if not visible:
            continue
        visible_set = set(visible)
        horizon = []
        for fk in visible:
            for v in fk:
                r = fk - {v}
                other = ridge_map[r] - {fk}
                if not (other & visible_set):
                    horizon.append(r)
        for fk in visible:
            drop_facet(fk)
        for r in horizon:
            add_facet(r | {idx})

    # merge coplanar facets by their normalized supporting hyperplane
    merged: Dict[Tuple[Tuple[int, ...], int], set] = {}
    for idx_set, (n, c) in facets.items():
        g = math.gcd(abs(c), *[abs(x) for x in n]) or 1
        key = (tuple(x // g for x in n), c // g)
        merged.setdefault(key, set()).update(idx_set)

    # certify vertices: incident hyperplane normals must span R^d
    incident: Dict[int, list] = {}
    for (n, c), members in merged.items():
        for v in members:
            incident.setdefault(v, []).append(n)
    vertex_idx = []
    for v, normals in incident.items():
        _, pivots = intlat.rref(normals)
        if len(pivots) == d:
            vertex_idx.append(v)
    vertex_pts = sorted(pts[v] for v in vertex_idx)
    lookup = {p: i for i, p in enumerate(vertex_pts)}

    out_facets = []
    for (n, c), members in sorted(merged.items()):
        verts = sorted(lookup[pts[v]] for v in members if pts[v] in lookup)
        out_facets.append(Facet(normal=n, offset=c, vertices=tuple(verts)))
    return HullResult(vertices=tuple(vertex_pts), facets=tuple(out_facets))


def extreme_points(points: Sequence[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    """Extreme points of an arbitrary (possibly degenerate) integer point
    set, by mapping onto exact coordinates of the affine span and taking
    the hull there."""
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    if len(pts) <= 2:
        return pts
    d = len(pts[0])
    rank = _affine_rank(pts)
    if rank == d:
        return list(convex_hull(pts).vertices)
    if rank == 0:
        return [pts[0]]
    base = pts[0]
    diffs = [tuple(p[i] - base[i] for i in range(d)) for p in pts]
    red, pivots = intlat.rref(diffs)
    basis = [red[r] for r in range(rank)]
    # coordinates of each point over the basis (consistent by construction)
    coords = []
    for diff in diffs:
        sol = _solve_in_span(basis, diff)
        coords.append(sol)
    if rank == 1:
        lo = min(range(len(pts)), key=lambda i: coords[i][0])
        hi = max(range(len(pts)), key=lambda i: coords[i][0])
        return sorted({pts[lo], pts[hi]})
    scale = [math.lcm(*[c[j].denominator for c in coords])
             for j in range(rank)]
    int_coords = [tuple(int(c[j] * scale[j]) for j in range(rank))
                  for c in coords]
    inner = convex_hull(int_coords)
    keep = set(inner.vertices)
    return [pts[i] for i in range(len(pts)) if int_coords[i] in keep]


def _solve_in_span(basis, target):
    rows = [list(b) for b in basis]
    aug = intlat.transpose(rows + [list(target)])
    red, pivots = intlat.rref(aug)
    k = len(basis)
    sol = [Fraction(0)] * k
    for r, c in enumerate(pivots):
        if c == k:
            raise ValueError("target not in span")
        sol[c] = red[r][k]
    return tuple(sol)
