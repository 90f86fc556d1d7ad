import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from gtmodules.tableau import (
    BaseVector,
    Family,
    Kind,
    Shift,
    TabKey,
    canonicalize,
    classify,
    distance,
    is_standard,
    singular_triple,
    tau,
)


class TestClassification:
    def test_fully_generic(self, v_gen3):
        assert classify(v_gen3).family is Family.GENERIC

    def test_one_singular_remark_pattern(self, v_rem):
        cls = classify(v_rem)
        assert cls.family is Family.ONE_SINGULAR
        assert cls.singular == (2, 1, 2)

    def test_row1_anchor_change_still_singular(self):
        # (a, b, c | x, x | y): distinct bottom anchor, same singular pair
        v = BaseVector.from_rows([[F(1, 2), F(1, 3), F(1, 5)], [F(1, 7), F(1, 7)], [F(1, 11)]])
        assert classify(v).singular == (2, 1, 2)

    def test_two_pairs_unsupported(self):
        q = [F(k, 17) for k in range(1, 8)]
        v = BaseVector.from_rows([[q[0], q[1], q[2], q[3]], [q[4], q[4], q[4]], [q[5], q[6]], [q[0] + 2]])
        assert classify(v).family is Family.UNSUPPORTED

    def test_finite_family(self, v_fin2):
        assert classify(v_fin2).family is Family.FINITE_STANDARD

    def test_cross_row_sharing_stays_generic(self, v_gen3_chain):
        assert classify(v_gen3_chain).family is Family.GENERIC


class TestValidation:
    def test_anchors_need_distinct_fractional_parts(self):
        with pytest.raises(ValueError, match="fractional"):
            BaseVector(2, (F(1, 2), F(3, 2)), ((0,), (1, 0)), ((0,), (0, 0)))

    def test_same_row_integral_pair_must_be_equal(self):
        # row 2 entries x and x+1 share an anchor with unequal offsets
        with pytest.raises(ValueError, match="normalize"):
            BaseVector.from_rows([[F(1, 2), F(1, 3), F(1, 5)], [F(1, 7), F(8, 7)], [F(1, 11)]])

    def test_rank_cap(self):
        with pytest.raises(ValueError):
            BaseVector.finite(list(range(14, 0, -2)))

    def test_shape_checked(self):
        with pytest.raises(ValueError):
            Shift(3, ((0,),))


class TestStandard:
    def test_gl2_weight_10(self, v_fin2):
        # entries (1, -1 | w11): standard exactly for w11 in {0, 1}
        assert is_standard(v_fin2, Shift(2, ((0,),)))
        assert is_standard(v_fin2, Shift(2, ((1,),)))
        assert not is_standard(v_fin2, Shift(2, ((-1,),)))
        assert not is_standard(v_fin2, Shift(2, ((2,),)))

    def test_generic_vector_never_standard(self, v_gen3):
        assert not is_standard(v_gen3, Shift.zero(3))

    def test_offset_translation_invariance(self, v_fin3_210):
        # adding one integer to every entry preserves all gap comparisons
        shifted = BaseVector(
            v_fin3_210.n,
            v_fin3_210.anchors,
            v_fin3_210.assignment,
            tuple(tuple(o + 5 for o in row) for row in v_fin3_210.offsets),
        )
        for w11 in range(-2, 3):
            for w21 in range(-2, 3):
                for w22 in range(-2, 3):
                    w = Shift(3, ((w11,), (w21, w22)))
                    assert is_standard(v_fin3_210, w) == is_standard(shifted, w)


class TestTau:
    def test_swaps_singular_positions(self, v_rem):
        w = Shift(3, ((5,), (2, 0)))
        assert tau(v_rem, w) == Shift(3, ((5,), (0, 2)))

    def test_fixed_point(self, v_rem):
        w = Shift(3, ((1,), (3, 3)))
        assert tau(v_rem, w) == w

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(-5, 5), min_size=3, max_size=3))
    def test_involution(self, entries):
        v = BaseVector.from_rows([[F(1, 2), F(1, 3), F(1, 5)], [F(1, 7), F(1, 7)], [F(1, 11)]])
        w = Shift(3, ((entries[0],), (entries[1], entries[2])))
        assert tau(v, tau(v, w)) == w

    def test_requires_singular(self, v_gen3):
        with pytest.raises(ValueError):
            tau(v_gen3, Shift.zero(3))


class TestCanonicalize:
    def test_regular_swaps_to_nonpositive_side(self, v_rem):
        key, sign = canonicalize(v_rem, Kind.REGULAR, Shift(3, ((0,), (3, 1))))
        assert key.shift.rows[1] == (1, 3) and sign == 1

    def test_derivative_swap_carries_sign(self, v_rem):
        key, sign = canonicalize(v_rem, Kind.DERIVATIVE, Shift(3, ((0,), (1, 3))))
        assert key.shift.rows[1] == (3, 1) and sign == -1

    def test_swap_fixed_derivative_vanishes(self, v_rem):
        _key, sign = canonicalize(v_rem, Kind.DERIVATIVE, Shift(3, ((0,), (2, 2))))
        assert sign == 0

    def test_idempotent(self, v_rem):
        for rows in [((0,), (3, 1)), ((1,), (-2, 4)), ((0,), (2, 2))]:
            for kind in Kind:
                key, sign = canonicalize(v_rem, kind, Shift(3, rows))
                if sign == 0:
                    continue
                key2, sign2 = canonicalize(v_rem, key.kind, key.shift)
                assert key2 == key and sign2 == 1

    def test_constant_on_swap_orbits(self, v_rem):
        # swapped references resolve to the same key; only the sign differs
        for rows in [((0,), (3, 1)), ((2,), (-1, 4)), ((0,), (0, 5))]:
            w = Shift(3, rows)
            wt = tau(v_rem, w)
            k1, s1 = canonicalize(v_rem, Kind.REGULAR, w)
            k2, s2 = canonicalize(v_rem, Kind.REGULAR, wt)
            assert k1 == k2 and s1 == s2 == 1
            d1, t1 = canonicalize(v_rem, Kind.DERIVATIVE, w)
            d2, t2 = canonicalize(v_rem, Kind.DERIVATIVE, wt)
            assert d1 == d2 and t1 == -t2 and abs(t1) == 1

    def test_nonsingular_context_regular_only(self, v_gen3):
        key, sign = canonicalize(v_gen3, Kind.REGULAR, Shift.zero(3))
        assert sign == 1 and key.kind is Kind.REGULAR
        with pytest.raises(ValueError):
            canonicalize(v_gen3, Kind.DERIVATIVE, Shift.zero(3))


class TestDistance:
    def test_zero_on_equal(self):
        z = Shift(3, ((1,), (2, -1)))
        assert distance(z, z) == 0

    def test_unit_shift(self):
        assert distance(Shift.zero(3), Shift.delta(3, 2, 1)) == 1

    def test_opposite_units(self):
        assert distance(Shift.delta(3, 1, 1), -Shift.delta(3, 1, 1)) == 2


class TestAnchorSoundness:
    @pytest.mark.parametrize("fixture", ["v_gen3", "v_gen3_chain", "v_rem", "v_sing4"])
    def test_integral_difference_iff_same_anchor(self, fixture, request):
        v = request.getfixturevalue(fixture)
        positions = [(r, s) for r in range(1, v.n + 1) for s in range(1, r + 1)]
        for p in positions:
            for q in positions:
                diff = v.entry(*p) - v.entry(*q)
                assert (diff.denominator == 1) == (v.anchor_index(*p) == v.anchor_index(*q))


class TestJson:
    def test_base_vector_roundtrip(self, v_rem):
        data = v_rem.to_json()
        again = BaseVector.from_json(json.loads(json.dumps(data)))
        assert again == v_rem
        assert again.to_json() == data

    def test_rows_input_normalizes(self, v_rem):
        data = {"rows": [["1/2", "1/3", "1/5"], ["1/7", "1/7"], ["1/7"]]}
        assert BaseVector.from_json(data) == v_rem

    def test_shift_roundtrip(self):
        w = Shift(3, ((4,), (-1, 2)))
        assert Shift.from_json(3, w.to_json()) == w
        assert w.to_json() == [[-1, 2], [4]]

    def test_key_roundtrip(self):
        key = TabKey(Shift(3, ((0,), (2, 0))), Kind.DERIVATIVE)
        assert TabKey.from_json(3, key.to_json()) == key


class TestSingularTriple:
    def test_reports_triple(self, v_sing4):
        assert singular_triple(v_sing4) == (2, 1, 2)

    def test_rejects_generic(self, v_gen3):
        with pytest.raises(ValueError):
            singular_triple(v_gen3)
