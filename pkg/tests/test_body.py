from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latmin.body import (
    Box,
    ConvexBody,
    SymmetricPolytope,
    coordinate_section,
    cross_polytope,
    unit_cube,
)
from latmin.errors import UnsupportedBodyError

small_fracs = st.fractions(
    min_value=Fraction(-20), max_value=Fraction(20), max_denominator=50
)
pos_fracs = st.fractions(
    min_value=Fraction(1, 10), max_value=Fraction(10), max_denominator=20
)

RECT = Box([1, Fraction(2, 25)])


class TestBoxGauge:
    def test_golden_rectangle(self):
        assert RECT.gauge([1, 1]) == Fraction(25, 2)

    def test_origin(self):
        assert RECT.gauge([0, 0]) == 0
        assert cross_polytope(2).gauge([0, 0]) == 0

    def test_unit_box(self):
        assert unit_cube(2).gauge([3, -2]) == 3

    @given(x=st.lists(small_fracs, min_size=2, max_size=2), t=pos_fracs)
    def test_homogeneous_and_symmetric(self, x, t):
        g = RECT.gauge(x)
        assert RECT.gauge([t * v for v in x]) == t * g
        assert RECT.gauge([-v for v in x]) == g

    @given(x=st.lists(small_fracs, min_size=2, max_size=2), lam=pos_fracs)
    def test_gauge_membership_duality(self, x, lam):
        inside = all(
            abs(xi) <= lam * a for xi, a in zip(map(Fraction, x), RECT.halfwidths)
        )
        assert (RECT.gauge(x) <= lam) == inside


class TestSupport:
    def test_unit_box(self):
        assert unit_cube(2).support([1, 1]) == 2

    def test_rectangle_vertical(self):
        assert RECT.support([0, 1]) == Fraction(2, 25)

    def test_zero(self):
        assert RECT.support([0, 0]) == 0

    @given(u=st.lists(small_fracs, min_size=2, max_size=2))
    def test_even(self, u):
        assert RECT.support(u) == RECT.support([-v for v in u])

    @given(u=st.lists(small_fracs, min_size=2, max_size=2))
    def test_dominates_vertices(self, u):
        cp = cross_polytope(2)
        h = cp.support(u)
        for v in cp.vertices:
            assert sum(Fraction(a) * b for a, b in zip(u, v)) <= h


class TestVolume:
    def test_unit_box(self):
        assert unit_cube(2).volume() == 4

    def test_rectangle(self):
        assert RECT.volume() == Fraction(8, 25)

    def test_cross_polytope(self):
        assert cross_polytope(2).volume() == 2
        assert cross_polytope(3).volume() == Fraction(4, 3)

    @given(t=pos_fracs)
    def test_scaling(self, t):
        assert RECT.scale(t).volume() == t**2 * RECT.volume()
        cp = cross_polytope(2)
        assert cp.scale(t).volume() == t**2 * cp.volume()

    def test_scale_consistency(self):
        s = cross_polytope(2).scale(Fraction(3, 2))
        assert s.gauge([Fraction(3, 2), 0]) == 1
        assert s.support([1, 0]) == Fraction(3, 2)


class TestPolytopeConstruction:
    def test_vertex_enumeration_2d(self):
        hexagon = SymmetricPolytope([[1, 0], [0, 1], [1, 1]])
        assert len(hexagon.vertices) == 6
        assert hexagon.volume() == 3

    def test_vertex_enumeration_3d(self):
        octa = SymmetricPolytope(
            [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]]
        )
        assert len(octa.vertices) == 6
        assert octa.volume() == Fraction(4, 3)

    def test_wrong_volume_rejected(self):
        with pytest.raises(ValueError):
            SymmetricPolytope(
                [[1, 0], [0, 1]],
                vertices=[[1, 1], [1, -1], [-1, 1], [-1, -1]],
                volume=Fraction(5),
            )

    def test_vertex_violating_facet_rejected(self):
        with pytest.raises(ValueError):
            SymmetricPolytope([[1, 0], [0, 1]], vertices=[[2, 0]], volume=4)

    def test_unbounded_facets_rejected(self):
        with pytest.raises(ValueError):
            SymmetricPolytope([[1, 0]], vertices=[[1, 0]], volume=1)

    def test_vertices_auto_symmetrized(self):
        cp = SymmetricPolytope(
            [list(s) for s in [(1, 1), (1, -1)]],
            vertices=[[1, 0], [0, 1]],
            volume=2,
        )
        assert (-1, 0) in cp.vertices

    def test_high_dim_needs_vertices(self):
        with pytest.raises(UnsupportedBodyError):
            SymmetricPolytope([[1 if i == j else 0 for j in range(4)] for i in range(4)])

    def test_round_trip(self):
        cp = cross_polytope(2)
        again = ConvexBody.from_dict(cp.to_dict())
        assert again == cp
        box = Box([1, Fraction(2, 25)])
        assert ConvexBody.from_dict(box.to_dict()) == box


class TestCoordinateSection:
    def test_unit_box(self):
        assert coordinate_section(unit_cube(3), [0, 1]).volume == 4

    def test_rectangle_axes(self):
        assert coordinate_section(RECT, [0]).volume == 2
        assert coordinate_section(RECT, [1]).volume == Fraction(4, 25)

    def test_polytope_rejected(self):
        with pytest.raises(UnsupportedBodyError):
            coordinate_section(cross_polytope(2), [0])

    def test_bad_index(self):
        with pytest.raises(ValueError):
            coordinate_section(unit_cube(2), [5])
        with pytest.raises(ValueError):
            coordinate_section(unit_cube(2), [])
