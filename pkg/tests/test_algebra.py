import pytest
from hypothesis import given, settings, strategies as st

from parker.algebra import (ExtensionField, NonInvertibleError, PrimeField,
                            center_pairs, consecutive_square_triples,
                            divisor_representatives, divisors, factorize,
                            find_irreducible, is_prime, make_carrier,
                            prime_power_base, squares)


class TestIntegerUtilities:
    def test_is_prime_small(self):
        primes = [n for n in range(2, 60) if is_prime(n)]
        assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                          47, 53, 59]

    @given(st.integers(2, 10**9))
    @settings(max_examples=200)
    def test_factorize_multiplies_back(self, n):
        f = factorize(n)
        prod = 1
        for p, e in f.items():
            assert is_prime(p)
            prod *= p**e
        assert prod == n

    def test_divisors(self):
        assert divisors(27) == [1, 3, 9, 27]
        assert divisors(54) == [1, 2, 3, 6, 9, 18, 27, 54]

    def test_prime_power_base(self):
        assert prime_power_base(729) == (3, 6)
        assert prime_power_base(29) == (29, 1)
        assert prime_power_base(12) is None


class TestMakeCarrier:
    def test_order_9_uses_smallest_modulus(self):
        c = make_carrier("field", 9)
        assert isinstance(c, ExtensionField)
        assert (c.characteristic, c.degree) == (3, 2)
        assert c.modulus_poly == (1, 0, 1)  # x^2 + 1

    def test_order_8_modulus(self):
        c = make_carrier("field", 8)
        assert c.modulus_poly == (1, 1, 0, 1)  # x^3 + x + 1

    def test_order_27_modulus(self):
        # x^3 + 2x + 1, the same field presentation as xbar^3 = xbar + 2
        assert make_carrier("field", 27).modulus_poly == (1, 2, 0, 1)

    def test_non_prime_power_field_rejected(self):
        with pytest.raises(ValueError):
            make_carrier("field", 12)

    def test_bad_orders_rejected(self):
        with pytest.raises(ValueError):
            make_carrier("ring", 1)
        with pytest.raises(ValueError):
            make_carrier("field", 0)
        with pytest.raises(ValueError):
            make_carrier("lattice", 5)

    def test_prime_order_gives_prime_field(self):
        assert isinstance(make_carrier("field", 29), PrimeField)

    def test_reducible_modulus_rejected(self):
        with pytest.raises(ValueError):
            make_carrier("field", 9, modulus_poly=(2, 0, 1))  # x^2+2=(x+1)(x+2)


class TestCarrierOps:
    def test_f29_inverse(self):
        c = make_carrier("field", 29)
        assert c.inv(2) == 15

    def test_f9_generator_squares_to_minus_one(self):
        c = make_carrier("field", 9)
        xbar = c.encode_coeffs((0, 1))
        assert xbar == 3
        assert c.mul(xbar, xbar) == c.neg(c.encode_int(1)) == 2

    @pytest.mark.parametrize("kind,order", [("field", 29), ("field", 27),
                                            ("field", 16), ("ring", 54)])
    def test_add_neg_is_zero(self, kind, order):
        c = make_carrier(kind, order)
        assert all(c.add(a, c.neg(a)) == 0 for a in c.elements())

    def test_inv_of_zero_raises(self):
        for c in (make_carrier("field", 29), make_carrier("field", 9)):
            with pytest.raises(NonInvertibleError):
                c.inv(0)

    def test_ring_inv_identifies_non_unit(self):
        c = make_carrier("ring", 54)
        with pytest.raises(NonInvertibleError) as exc:
            c.inv(6)
        assert exc.value.element == 6

    @pytest.mark.parametrize("order", [8, 9, 25, 27, 49])
    def test_field_axioms_and_frobenius(self, order):
        c = make_carrier("field", order)
        els = list(c.elements())
        sample = els[:: max(1, len(els) // 12)]
        for a in sample:
            for b in sample:
                assert c.mul(a, b) == c.mul(b, a)
                for d in sample:
                    assert c.mul(a, c.add(b, d)) == c.add(c.mul(a, b), c.mul(a, d))
                    assert c.mul(c.mul(a, b), d) == c.mul(a, c.mul(b, d))
        one = c.encode_int(1)
        for a in els[1:]:
            assert c.mul(a, c.inv(a)) == one
        # x^q == x for all x exactly when the modulus defines the field
        assert all(c.pow(a, order) == a for a in els)

    @pytest.mark.parametrize("order", [8, 9, 27, 625])
    def test_extension_encoding_bijective(self, order):
        c = make_carrier("field", order)
        assert all(c.encode_coeffs(c.coeffs(a)) == a for a in c.elements())

    def test_element_repr(self):
        c = make_carrier("field", 9)
        assert c.element_repr(0) == "0"
        assert c.element_repr(5) == "2 + x"


class TestSquares:
    def test_f17_square_set(self):
        assert list(squares(make_carrier("field", 17))) == \
            [0, 1, 2, 4, 8, 9, 13, 15, 16]

    def test_f29_size(self):
        assert len(squares(make_carrier("field", 29))) == 15

    def test_f2(self):
        assert list(squares(make_carrier("field", 2))) == [0, 1]

    @pytest.mark.parametrize("order", [101, 343, 512, 729, 1000])
    def test_matches_brute_force(self, order):
        kind = "field" if prime_power_base(order) else "ring"
        c = make_carrier(kind, order)
        brute = {c.mul(x, x) for x in c.elements()}
        assert set(squares(c).elements) == brute
        if kind == "field" and order % 2 == 1:
            assert len(brute) == (order + 1) // 2

    def test_ring_squares_direct(self):
        c = make_carrier("ring", 27)
        assert set(c.square_set()) == {x * x % 27 for x in range(27)}


class TestCenterPairs:
    def test_f19_center_one(self):
        c = make_carrier("field", 19)
        assert center_pairs(c, 1).pairs == ((4, 17), (5, 16))

    def test_f23_center_one_counts_three(self):
        # 0^2 + 5^2 = 3^2 + 4^2 = 6^2 + 9^2 = 2 in F_23
        c = make_carrier("field", 23)
        idx = center_pairs(c, 1)
        assert len(idx) == 3
        assert (0, 2) in idx.pairs

    def test_f17_center_zero(self):
        c = make_carrier("field", 17)
        idx = center_pairs(c, 0, rule="nonzero")
        assert idx.pairs == ((1, 16), (2, 15), (4, 13), (8, 9))
        assert idx.target == 0

    def test_exclusion_rules(self):
        c = make_carrier("field", 23)
        assert len(center_pairs(c, 1, rule="not-target")) == 2
        with pytest.raises(ValueError):
            center_pairs(c, 1, rule="bogus")

    @pytest.mark.parametrize("kind,order", [("field", 101), ("field", 343),
                                            ("ring", 360), ("ring", 499)])
    def test_completeness_against_double_loop(self, kind, order):
        c = make_carrier(kind, order)
        sq = list(c.square_set())
        for e in (0, 1, 2):
            target = c.add(c.mul(e, e), c.mul(e, e))
            brute = {(u, v) for u in sq for v in sq
                     if u < v and c.add(u, v) == target}
            assert set(center_pairs(c, e).pairs) == brute


class TestDivisorRepresentatives:
    def test_prime(self):
        assert divisor_representatives(29) == [1, 0]

    def test_prime_power(self):
        assert divisor_representatives(27) == [1, 3, 9, 0]

    def test_composite(self):
        assert divisor_representatives(54) == [1, 2, 3, 6, 9, 18, 27, 0]

    def test_every_residue_is_unit_times_divisor(self):
        c = make_carrier("ring", 54)
        reps = divisor_representatives(54)
        reachable = {c.mul(u, d) for d in reps for u in c.units()} | {0}
        assert reachable == set(range(54))


class TestConsecutiveSquareTriples:
    def test_f17_and_f25_have_none(self):
        assert consecutive_square_triples(make_carrier("field", 17)) == []
        assert consecutive_square_triples(make_carrier("field", 25)) == []

    def test_f29(self):
        got = consecutive_square_triples(make_carrier("field", 29))
        assert got == [(4, 5, 6), (5, 6, 7), (22, 23, 24), (23, 24, 25)]

    def test_rejects_rings(self):
        with pytest.raises(ValueError):
            consecutive_square_triples(make_carrier("ring", 27))
