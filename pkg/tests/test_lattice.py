import random
from fractions import Fraction

import pytest

from latmin import _intmat as im
from latmin.body import unit_cube
from latmin.errors import IndexOverflowError, NotSublatticeError, RankError
from latmin.lattice import (
    CosetSystem,
    Lattice,
    ZRowSpan,
    coset_system,
    extend_to_full_rank,
    intersect,
    kernel_lattice,
    m_value,
    minors_vector,
    saturate_rows,
    union_covers,
)
from latmin.minima import successive_minima


def random_lattice(rng, n, rank=None, span=4):
    rank = rank if rank is not None else n
    while True:
        rows = [[Fraction(rng.randint(-span, span)) for _ in range(n)] for _ in range(rank)]
        if im.frac_rank(rows) == rank:
            return Lattice(rows, n)


class TestConstruction:
    def test_dependent_rows_rejected(self):
        with pytest.raises(RankError):
            Lattice([[1, 2], [2, 4]])

    def test_from_generators_accepts_dependent(self):
        lat = Lattice.from_generators([[2, 0], [0, 2], [1, 1]])
        assert lat.det() == 2
        assert lat.det_squared == 4

    def test_canonical_equality(self):
        a = Lattice([[1, 0], [3, 1]])
        b = Lattice([[1, 0], [0, 1]])
        assert a == b and hash(a) == hash(b)

    def test_rational_basis(self):
        lat = Lattice([[Fraction(1, 2), 0], [0, Fraction(1, 3)]])
        assert lat.det() == Fraction(1, 6)

    def test_zero_lattice(self):
        lat = Lattice([], 3)
        assert lat.rank == 0 and lat.det_squared == 1
        assert lat.member([0, 0, 0]) and not lat.member([1, 0, 0])

    def test_round_trip(self):
        lat = Lattice([[Fraction(5, 2), 0], [1, 2]])
        assert Lattice.from_dict(lat.to_dict()) == lat

    def test_hnf_canonicity_random(self):
        rng = random.Random(17)
        for _ in range(100):
            n = rng.randint(2, 4)
            r = rng.randint(1, n)
            lat = random_lattice(rng, n, rank=r)
            u = im.identity(r)
            for _ in range(5):
                i, j = rng.randrange(r), rng.randrange(r)
                if i != j:
                    c = rng.choice((-1, 1))
                    u[i] = [u[i][k] + c * u[j][k] for k in range(r)]
            transformed = Lattice(im.mat_mul(u, [list(row) for row in lat.basis]), n)
            assert transformed == lat


class TestDeterminants:
    def test_standard(self):
        assert Lattice.standard(3).det_squared == 1

    def test_kernel_det(self):
        assert kernel_lattice([[1, 1, 1]]).det_squared == 3

    def test_scaled(self):
        assert Lattice([[2, 0], [0, 2]]).det_squared == 16

    def test_det_squared_is_perfect_square_for_integer_full_rank(self):
        rng = random.Random(23)
        for _ in range(40):
            lat = random_lattice(rng, rng.randint(2, 4))
            d2 = lat.det_squared
            assert d2.denominator == 1
            d = lat.det()
            assert d.denominator == 1 and d * d == d2

    def test_cauchy_binet_random(self):
        rng = random.Random(29)
        for _ in range(60):
            n = rng.randint(1, 4)
            r = rng.randint(1, n)
            lat = random_lattice(rng, n, rank=r)
            mv = minors_vector(lat)
            assert sum(e * e for e in mv.entries) == lat.det_squared


class TestMembership:
    def test_parity_lattice(self):
        lat = Lattice([[1, 0], [0, 2]])
        assert lat.member([3, 4])
        assert not lat.member([3, 3])

    def test_off_span(self):
        lat = Lattice([[1, 0]], 2)
        assert not lat.member([0, 1])
        assert lat.member([-7, 0])

    def test_coeffs(self):
        lat = Lattice([[1, 1], [0, 2]])
        assert lat.coeffs_of([1, 3]) == [Fraction(1), Fraction(1)]


class TestDual:
    def test_standard_self_dual(self):
        assert Lattice.standard(2).dual() == Lattice.standard(2)

    def test_scaled(self):
        assert Lattice([[2, 0], [0, 2]]).dual() == Lattice(
            [[Fraction(1, 2), 0], [0, Fraction(1, 2)]]
        )
        assert Lattice([[2, 0], [0, 3]]).dual() == Lattice(
            [[Fraction(1, 2), 0], [0, Fraction(1, 3)]]
        )

    def test_involution_and_reciprocity(self):
        rng = random.Random(31)
        for _ in range(40):
            lat = random_lattice(rng, rng.randint(2, 4))
            assert lat.dual().dual() == lat
            assert lat.dual().det_squared * lat.det_squared == 1

    def test_lower_rank_rejected(self):
        with pytest.raises(RankError):
            Lattice([[1, 0]], 2).dual()


class TestIntersect:
    def test_golden_pair(self):
        inter = intersect([Lattice([[1, 0], [0, 2]]), Lattice([[5, 0], [0, 1]])])
        assert inter == Lattice([[5, 0], [0, 2]])
        assert inter.det() == 10

    def test_golden_triple(self):
        lats = [
            Lattice([[1, 0], [0, 2]]),
            Lattice([[2, 0], [0, 1]]),
            Lattice([[1, 0], [0, 3]]),
        ]
        inter = intersect(lats, within=Lattice.standard(2))
        assert inter.det() == 12

    def test_idempotent(self):
        lat = Lattice([[2, 1], [0, 3]])
        assert intersect([lat, lat]) == lat

    def test_sandwich_random(self):
        rng = random.Random(37)
        z = None
        for _ in range(40):
            n = rng.randint(2, 3)
            ambient = Lattice.standard(n)
            subs = []
            for _ in range(rng.randint(1, 3)):
                m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
                if im.frac_det(m) == 0:
                    continue
                subs.append(Lattice(m, n))
            if not subs:
                continue
            inter = intersect(subs, within=ambient)  # sandwich asserted inside
            for sub in subs:
                assert sub.contains_lattice(inter)

    def test_lower_rank_rejected(self):
        with pytest.raises(RankError):
            intersect([Lattice([[1, 0]], 2)])


class TestCosets:
    def test_two_by_two(self):
        cs = coset_system(Lattice.standard(2), Lattice([[2, 0], [0, 2]]))
        assert cs.index == 4
        assert set(cs.representatives) == {(0, 0), (1, 0), (0, 1), (1, 1)}

    def test_golden_twelve(self):
        inter = intersect(
            [Lattice([[1, 0], [0, 2]]), Lattice([[2, 0], [0, 1]]), Lattice([[1, 0], [0, 3]])]
        )
        cs = coset_system(Lattice.standard(2), inter)
        assert cs.index == 12
        assert len(cs.representatives) == 12

    def test_trivial(self):
        lat = Lattice([[2, 1], [0, 1]])
        cs = coset_system(lat, lat)
        assert cs.index == 1

    def test_representatives_pairwise_distinct(self):
        lat = Lattice.standard(2)
        sub = Lattice([[2, 1], [0, 3]])
        cs = coset_system(lat, sub)
        assert cs.index == 6
        reps = cs.representatives
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                diff = [a - b for a, b in zip(reps[i], reps[j])]
                assert not sub.member(diff)
        labels = {cs.label_of(rep) for rep in reps}
        assert len(labels) == cs.index

    def test_not_sublattice_rejected(self):
        with pytest.raises(NotSublatticeError):
            coset_system(Lattice.standard(2), Lattice([[Fraction(1, 2), 0], [0, 1]]))

    def test_index_cap(self):
        with pytest.raises(IndexOverflowError):
            coset_system(
                Lattice.standard(2), Lattice([[100, 0], [0, 100]]), index_cap=100
            )


class TestMValueAndCovering:
    def test_golden_m(self):
        lat = Lattice.standard(2)
        lats = [
            Lattice([[1, 0], [0, 2]]),
            Lattice([[2, 0], [0, 1]]),
            Lattice([[1, 0], [0, 3]]),
        ]
        assert m_value(lat, lats) == 14
        assert m_value(lat, lats, capped=True) == 12

    def test_pair_m(self):
        lat = Lattice.standard(2)
        assert m_value(lat, [Lattice([[1, 0], [0, 2]]), Lattice([[5, 0], [0, 1]])]) == 6

    def test_self_m(self):
        lat = Lattice.standard(2)
        assert m_value(lat, [lat]) == 1

    def test_covering_golden(self):
        lat = Lattice.standard(2)
        l1 = Lattice([[1, 0], [0, 2]])
        l2 = Lattice([[2, 0], [0, 1]])
        l3 = Lattice([[1, 0], [0, 3]])
        l4 = Lattice([[1, 1], [0, 2]])
        assert union_covers(lat, [l1, l2, l4])
        assert not union_covers(lat, [l1, l2, l3])
        assert not union_covers(lat, [l1])

    def test_large_index_short_circuits(self):
        lat = Lattice.standard(2)
        with pytest.raises(IndexOverflowError):
            union_covers(lat, [Lattice([[60, 0], [0, 60]])], index_cap=1000)

    def test_two_strict_sublattices_never_cover(self):
        # index >= m+1 forces a non-cover
        rng = random.Random(41)
        for _ in range(30):
            n = rng.randint(2, 3)
            lat = Lattice.standard(n)
            subs = []
            for _ in range(2):
                while True:
                    m = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
                    d = abs(im.frac_det(m))
                    if 2 <= d <= 4:
                        subs.append(Lattice(m, n))
                        break
            inter = intersect(subs, within=lat)
            m_val = m_value(lat, subs)
            if inter.index_in(lat) >= m_val + 1:
                assert not union_covers(lat, subs)


class TestKernel:
    def test_all_ones_row(self):
        k = kernel_lattice([[1, 1, 1]])
        assert k.rank == 2 and k.det_squared == 3

    def test_scaled_row(self):
        k = kernel_lattice([[2, 0, 0]])
        assert k == Lattice([[0, 1, 0], [0, 0, 1]], 3)

    def test_identity_gives_zero_lattice(self):
        assert kernel_lattice([[1, 0], [0, 1]]).rank == 0

    def test_rank_deficient_rejected(self):
        with pytest.raises(RankError):
            kernel_lattice([[1, 1, 1], [2, 2, 2]])

    def test_kernel_vectors_annihilate(self):
        rng = random.Random(43)
        for _ in range(30):
            n = rng.randint(2, 5)
            m = rng.randint(1, n - 1)
            rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
            if im.frac_rank(rows) != m:
                continue
            k = kernel_lattice(rows)
            assert k.rank == n - m
            for b in k.basis:
                assert all(sum(r[j] * b[j] for j in range(n)) == 0 for r in rows)


class TestMinors:
    def test_standard(self):
        mv = minors_vector(Lattice.standard(2))
        assert mv.entries == (1,) and mv.max_abs == 1

    def test_rank_one(self):
        mv = minors_vector(Lattice([[1, 0]], 2))
        assert sorted(abs(e) for e in mv.entries) == [0, 1]
        assert mv.max_abs == 1

    def test_kernel_basis_minors(self):
        k = kernel_lattice([[1, 1, 1]])
        mv = minors_vector(k)
        assert sum(e * e for e in mv.entries) == 3
        assert sorted(abs(e) for e in mv.entries) == [1, 1, 1]


class TestExtendAndSaturate:
    def test_golden_extension(self):
        ext = extend_to_full_rank(Lattice.standard(2), Lattice([[1, 0]], 2), 10)
        assert ext == Lattice([[1, 0], [0, 10]])

    def test_scale_one_full_rank_superlattice(self):
        lat = Lattice.standard(3)
        sub = Lattice([[1, 1, 0]], 3)
        ext = extend_to_full_rank(lat, sub, 1)
        assert ext.rank == 3
        assert lat.contains_lattice(ext)
        assert ext.contains_lattice(sub)

    def test_span_intersection_is_preserved(self):
        lat = Lattice.standard(3)
        sub = Lattice([[2, 1, 0], [0, 0, 3]], 3)
        ext = extend_to_full_rank(lat, sub, 7)
        # members of ext lying in the span of sub must be members of sub
        rng = random.Random(47)
        for _ in range(50):
            z = [rng.randint(-3, 3) for _ in range(3)]
            v = [
                sum(Fraction(z[i]) * ext.basis[i][j] for i in range(3))
                for j in range(3)
            ]
            in_span = im.frac_rank([list(b) for b in sub.basis] + [v]) == sub.rank
            if in_span:
                assert sub.member(v)

    def test_large_scale_preserves_first_minimum(self):
        lat = Lattice.standard(2)
        sub = Lattice([[1, 0]], 2)
        ext = extend_to_full_rank(lat, sub, 10)
        box = unit_cube(2)
        lam_sub = successive_minima(box, sub, 1).values[0]
        lam_ext = successive_minima(box, ext, 1).values[0]
        assert lam_sub == lam_ext == 1

    def test_saturation(self):
        sat = saturate_rows([[2, 4]])
        assert ZRowSpan(sat).contains([1, 2])
        sat2 = saturate_rows([[2, 0], [0, 3]])
        span = ZRowSpan(sat2)
        assert span.contains([1, 0]) and span.contains([0, 1])
