import pytest

from parker.algebra import make_carrier
from parker.core import dihedral_orbit, validate_square
from parker.search import (brute_force_oracle, msos_field, msos_ring,
                           oracle_agreement, prefilter_field, scaling_closure)
from parker.survey import field_orders

MOD29_SQUARE = tuple(x * x % 29 for x in (9, 11, 1, 6, 0, 14, 12, 16, 8))
COR71_SQUARE = tuple(x * x % 59 for x in (20, 12, 7, 2, 1, 23, 22, 25, 29))


class TestMsosField:
    def test_f29_count_and_content(self):
        result = msos_field(29)
        assert result.tuple_count == 2
        assert not result.parker
        assert dihedral_orbit(MOD29_SQUARE) & set(result.tuples)

    def test_parker_fields_empty(self):
        assert msos_field(17).tuple_count == 0
        assert msos_field(17).parker
        assert msos_field(4).tuple_count == 0

    def test_f59_contains_printed_construction(self):
        result = msos_field(59)
        assert result.tuple_count > 0
        assert dihedral_orbit(COR71_SQUARE) & set(result.tuples)

    def test_non_prime_power_rejected(self):
        with pytest.raises(ValueError):
            msos_field(12)
        with pytest.raises(ValueError):
            msos_field(make_carrier("ring", 29))

    def test_deterministic(self):
        assert msos_field(61).tuples == msos_field(61).tuples

    @pytest.mark.parametrize("q", [29, 59, 61, 81])
    def test_every_tuple_is_magic_with_expected_structure(self, q):
        carrier = make_carrier("field", q)
        for t in msos_field(carrier).tuples:
            report = validate_square(t, carrier)
            assert report.is_magic
            e2 = t[4]
            # the total is three times the center and each line through the
            # center splits as a pair summing to twice the center
            assert report.common_total == carrier.add(carrier.add(e2, e2), e2)
            two_e2 = carrier.add(e2, e2)
            for u, v in ((t[0], t[8]), (t[2], t[6]), (t[1], t[7]),
                         (t[3], t[5])):
                assert carrier.add(u, v) == two_e2


class TestMsosRing:
    def test_reference_counts(self):
        assert msos_ring(27).tuple_count == 3
        assert msos_ring(29).tuple_count == 7
        assert msos_ring(25).tuple_count == 0
        assert msos_ring(25).parker

    def test_bad_input(self):
        with pytest.raises(ValueError):
            msos_ring(1)
        with pytest.raises(ValueError):
            msos_ring(make_carrier("field", 29))

    @pytest.mark.parametrize("n", [27, 29, 54])
    def test_tuples_are_magic(self, n):
        carrier = make_carrier("ring", n)
        for t in msos_ring(carrier).tuples:
            assert validate_square(t, carrier).is_magic


class TestAssignmentPolicies:
    def test_both_policy_emits_dihedral_images(self):
        canonical = msos_field(29, "canonical")
        both = msos_field(29, "both")
        assert canonical.tuple_count == 2
        assert both.tuple_count == 4
        assert set(canonical.tuples) <= set(both.tuples)
        assert canonical.dihedral_class_count == both.dihedral_class_count == 2

    def test_unknown_policy(self):
        with pytest.raises(ValueError):
            msos_field(29, "sideways")

    def test_parker_flag_is_policy_independent_to_500(self):
        for q in field_orders(2, 500):
            assert msos_field(q, "canonical").parker == \
                msos_field(q, "both").parker, q
        for n in range(2, 501):
            assert msos_ring(n, "canonical").parker == \
                msos_ring(n, "both").parker, n


class TestPrefilter:
    def test_examples(self):
        assert prefilter_field(16) == "even-order"
        assert prefilter_field(13) == "too-few-squares"
        assert prefilter_field(23) == "pair-deficit"
        assert prefilter_field(29) is None

    def test_consecutive_square_verdicts(self):
        assert prefilter_field(17) == "no-consecutive-squares"
        assert prefilter_field(25) == "no-consecutive-squares"

    def test_sound_for_all_orders_to_1000(self):
        for q in field_orders(2, 1000):
            if prefilter_field(q) is not None:
                assert msos_field(q).tuple_count == 0, q


class TestBruteForceOracle:
    def test_f13_empty(self):
        assert brute_force_oracle(make_carrier("field", 13)) == set()

    def test_f29_contains_printed_square(self):
        oracle = brute_force_oracle(make_carrier("field", 29))
        assert MOD29_SQUARE in oracle

    def test_z27_nonempty(self):
        assert brute_force_oracle(make_carrier("ring", 27))

    def test_cap_refusal(self):
        with pytest.raises(ValueError):
            brute_force_oracle(make_carrier("field", 101))
        assert brute_force_oracle(make_carrier("field", 101), cap=101) \
            is not None

    def test_oracle_tuples_are_magic(self):
        carrier = make_carrier("ring", 29)
        for t in brute_force_oracle(carrier):
            assert validate_square(t, carrier).is_magic


class TestOracleAgreement:
    def test_f29(self):
        assert oracle_agreement(make_carrier("field", 29))

    def test_z27(self):
        assert oracle_agreement(make_carrier("ring", 27))

    def test_f17_both_empty(self):
        assert oracle_agreement(make_carrier("field", 17))

    def test_closure_matches_oracle_for_f29(self):
        carrier = make_carrier("field", 29)
        closure = scaling_closure(carrier, msos_field(carrier).tuples)
        assert closure == brute_force_oracle(carrier)

    @pytest.mark.parametrize("kind,order", [("field", 81), ("ring", 96),
                                            ("ring", 100)])
    def test_spot_checks_above_sixty(self, kind, order):
        assert oracle_agreement(make_carrier(kind, order), cap=100)
