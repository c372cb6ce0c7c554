"""Origin-symmetric rational convex bodies.

Two variants: axis-aligned boxes (the workhorse) and symmetric polytopes
K = {x : |<c_j, x>| <= 1} carrying an explicit vertex list and exact
volume.  Gauge, support function and volume are exact rationals.  Vertex
enumeration and triangulation volume are provided up to dimension 3; in
higher dimensions the caller supplies vertices and volume and the
facet/vertex consistency checks still run.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import _intmat as im
from .errors import UnsupportedBodyError
from .exactarith import format_rational, parse_rational


@dataclass(frozen=True)
class SectionData:
    """A subspace together with the exact volume of the body section in it."""

    basis: tuple
    volume: Fraction

    def __post_init__(self):
        if self.volume <= 0:
            raise ValueError("section volume must be positive")


class ConvexBody:
    """Common interface: gauge, support, volume, dim, scale."""

    dim: int

    def gauge(self, x) -> Fraction:
        raise NotImplementedError

    def support(self, u) -> Fraction:
        raise NotImplementedError

    def volume(self) -> Fraction:
        raise NotImplementedError

    def scale(self, mu) -> "ConvexBody":
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    @staticmethod
    def from_dict(d: dict) -> "ConvexBody":
        if d["type"] == "box":
            return Box([parse_rational(x) for x in d["halfwidths"]])
        if d["type"] == "polytope":
            return SymmetricPolytope(
                facets=[[parse_rational(x) for x in row] for row in d["facets"]],
                vertices=[[parse_rational(x) for x in row] for row in d["vertices"]],
                volume=parse_rational(d["volume"]),
            )
        raise ValueError(f"unknown body type {d['type']!r}")


class Box(ConvexBody):
    """[-a_1, a_1] x ... x [-a_n, a_n] with positive rational half-widths."""

    __slots__ = ("halfwidths", "dim")

    def __init__(self, halfwidths):
        hw = tuple(Fraction(a) for a in halfwidths)
        if not hw or any(a <= 0 for a in hw):
            raise ValueError("half-widths must be positive")
        self.halfwidths = hw
        self.dim = len(hw)

    def gauge(self, x) -> Fraction:
        x = [Fraction(v) for v in x]
        return max(abs(xi) / a for xi, a in zip(x, self.halfwidths))

    def support(self, u) -> Fraction:
        u = [Fraction(v) for v in u]
        return sum(a * abs(ui) for ui, a in zip(u, self.halfwidths))

    def volume(self) -> Fraction:
        v = Fraction(1)
        for a in self.halfwidths:
            v *= 2 * a
        return v

    def scale(self, mu) -> "Box":
        mu = Fraction(mu)
        if mu <= 0:
            raise ValueError("scale must be positive")
        return Box([mu * a for a in self.halfwidths])

    def is_unit_cube(self) -> bool:
        return all(a == 1 for a in self.halfwidths)

    def to_dict(self) -> dict:
        return {"type": "box", "halfwidths": [format_rational(a) for a in self.halfwidths]}

    def __eq__(self, other):
        return isinstance(other, Box) and self.halfwidths == other.halfwidths

    def __hash__(self):
        return hash(("box", self.halfwidths))

    def __repr__(self):
        return f"Box({[format_rational(a) for a in self.halfwidths]})"


def unit_cube(n: int) -> Box:
    return Box([Fraction(1)] * n)


class SymmetricPolytope(ConvexBody):
    """K = {x : |<c_j, x>| <= 1} with explicit vertices and exact volume.

    The vertex list is closed under negation automatically.  Construction
    verifies that every vertex satisfies all facet constraints, is tight on
    at least dim of them, and (for dim <= 3) that the stored volume equals
    the central-fan triangulation volume of the vertex set.
    """

    __slots__ = ("facets", "vertices", "dim", "_volume")

    def __init__(self, facets, vertices=None, volume=None):
        facets = tuple(tuple(Fraction(x) for x in row) for row in facets)
        if not facets:
            raise ValueError("need at least one facet normal")
        n = len(facets[0])
        if any(len(row) != n for row in facets):
            raise ValueError("facet normals of mixed dimension")
        if im.frac_rank([list(f) for f in facets]) < n:
            raise ValueError("facet normals do not bound a compact set")
        self.dim = n
        self.facets = facets
        if vertices is None:
            if n > 3:
                raise UnsupportedBodyError(
                    "vertex enumeration implemented only up to dimension 3"
                )
            vertices = _enumerate_vertices(facets)
        verts = {tuple(Fraction(x) for x in v) for v in vertices}
        verts |= {tuple(-x for x in v) for v in verts}
        self.vertices = tuple(sorted(verts))
        self._check_vertices()
        tri = _triangulation_volume(self) if n <= 3 else None
        if volume is None:
            if tri is None:
                raise UnsupportedBodyError(
                    "volume must be supplied for dimension > 3"
                )
            self._volume = tri
        else:
            self._volume = Fraction(volume)
            if tri is not None and tri != self._volume:
                raise ValueError(
                    f"stored volume {self._volume} != triangulation volume {tri}"
                )
            if self._volume <= 0:
                raise ValueError("volume must be positive")

    def _check_vertices(self):
        if not self.vertices:
            raise ValueError("empty vertex list")
        for v in self.vertices:
            tight = 0
            for c in self.facets:
                val = abs(_dot(c, v))
                if val > 1:
                    raise ValueError(f"vertex {v} violates a facet constraint")
                if val == 1:
                    tight += 1
            if tight < self.dim:
                raise ValueError(f"vertex {v} is tight on fewer than dim facets")

    def gauge(self, x) -> Fraction:
        x = [Fraction(v) for v in x]
        return max(abs(_dot(c, x)) for c in self.facets)

    def support(self, u) -> Fraction:
        if not self.vertices:
            raise UnsupportedBodyError("support needs a vertex list")
        u = [Fraction(v) for v in u]
        return max(_dot(u, v) for v in self.vertices)

    def volume(self) -> Fraction:
        return self._volume

    def scale(self, mu) -> "SymmetricPolytope":
        mu = Fraction(mu)
        if mu <= 0:
            raise ValueError("scale must be positive")
        return SymmetricPolytope(
            facets=[[x / mu for x in c] for c in self.facets],
            vertices=[[mu * x for x in v] for v in self.vertices],
            volume=self._volume * mu**self.dim,
        )

    def to_dict(self) -> dict:
        return {
            "type": "polytope",
            "facets": [[format_rational(x) for x in c] for c in self.facets],
            "vertices": [[format_rational(x) for x in v] for v in self.vertices],
            "volume": format_rational(self._volume),
        }

    def __eq__(self, other):
        return (
            isinstance(other, SymmetricPolytope)
            and self.facets == other.facets
            and self.vertices == other.vertices
            and self._volume == other._volume
        )

    def __hash__(self):
        return hash(("polytope", self.facets, self.vertices))

    def __repr__(self):
        return f"SymmetricPolytope(dim={self.dim}, facets={len(self.facets)}, vertices={len(self.vertices)})"


def cross_polytope(n: int) -> SymmetricPolytope:
    """{x : sum |x_i| <= 1}: all sign patterns as facets, +-e_i as vertices."""
    facets = [list(signs) for signs in itertools.product((1, -1), repeat=n)]
    verts = []
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        verts.append(e)
    return SymmetricPolytope(facets, verts, volume=Fraction(2**n, _factorial(n)))


def coordinate_section(body: ConvexBody, coords) -> SectionData:
    """Exact section of a box by a coordinate subspace."""
    if not isinstance(body, Box):
        raise UnsupportedBodyError(
            "coordinate sections are exact for boxes only; supply SectionData"
        )
    coords = sorted(set(coords))
    if not coords:
        raise ValueError("need at least one coordinate")
    if coords[0] < 0 or coords[-1] >= body.dim:
        raise ValueError("coordinate index out of range")
    vol = Fraction(1)
    basis = []
    for i in coords:
        vol *= 2 * body.halfwidths[i]
        e = [Fraction(0)] * body.dim
        e[i] = Fraction(1)
        basis.append(tuple(e))
    return SectionData(basis=tuple(basis), volume=vol)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _enumerate_vertices(facets):
    """Vertices of {|<c_j,x>| <= 1} by intersecting facet hyperplanes (n <= 3)."""
    n = len(facets[0])
    verts = set()
    oriented = [list(c) for c in facets] + [[-x for x in c] for c in facets]
    for combo in itertools.combinations(oriented, n):
        if im.frac_rank([list(c) for c in combo]) < n:
            continue
        sol = im.frac_solve([list(c) for c in combo], [Fraction(1)] * n)
        if sol is None:
            continue
        if all(abs(_dot(c, sol)) <= 1 for c in facets):
            verts.add(tuple(sol))
    if not verts:
        raise ValueError("no vertices found; facets do not bound a polytope")
    return verts


def _triangulation_volume(poly: SymmetricPolytope) -> Fraction:
    n = poly.dim
    if n == 1:
        return 2 * max(abs(v[0]) for v in poly.vertices)
    if n == 2:
        ordered = _sort_cyclic_2d(poly.vertices)
        area = Fraction(0)
        for i in range(len(ordered)):
            a, b = ordered[i], ordered[(i + 1) % len(ordered)]
            area += a[0] * b[1] - a[1] * b[0]
        return abs(area) / 2
    if n == 3:
        total = Fraction(0)
        oriented = {tuple(c) for c in poly.facets}
        oriented |= {tuple(-x for x in c) for c in poly.facets}
        for c in sorted(oriented):
            face = [v for v in poly.vertices if _dot(c, v) == 1]
            if len(face) < 3:
                continue
            ordered = _sort_cyclic_face(face, c)
            v0 = ordered[0]
            for i in range(1, len(ordered) - 1):
                det = im.frac_det([list(v0), list(ordered[i]), list(ordered[i + 1])])
                total += abs(det)
        return total / 6
    raise UnsupportedBodyError("triangulation volume implemented up to dimension 3")


def _sort_cyclic_2d(points):
    """Counter-clockwise order around the origin via exact sign tests."""

    def half(p):  # upper half-plane first, split at the positive x-axis
        if p[1] > 0 or (p[1] == 0 and p[0] > 0):
            return 0
        return 1

    def cmp(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = a[0] * b[1] - a[1] * b[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(points, key=functools.cmp_to_key(cmp))


def _sort_cyclic_face(face, normal):
    """Cyclic order of coplanar points around their centroid, about `normal`."""
    k = len(face)
    centroid = tuple(sum(v[i] for v in face) / k for i in range(3))
    ref = tuple(face[0][i] - centroid[i] for i in range(3))

    def triple(u, v, w):
        return im.frac_det([list(u), list(v), list(w)])

    def half(p):
        a = tuple(p[i] - centroid[i] for i in range(3))
        s = triple(normal, ref, a)
        if s > 0:
            return 0
        if s < 0:
            return 1
        return 0 if _dot(ref, a) > 0 else 1

    def cmp(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return -1 if hp < hq else 1
        a = tuple(p[i] - centroid[i] for i in range(3))
        b = tuple(q[i] - centroid[i] for i in range(3))
        s = triple(normal, a, b)
        if s > 0:
            return -1
        if s < 0:
            return 1
        return 0

    return sorted(face, key=functools.cmp_to_key(cmp))
