import cmath
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffcubic.exactnum import CycloNumber, phi_m, zeta

small = st.lists(st.integers(-6, 6), min_size=1, max_size=8)


def cy(m, coeffs, den=1):
    return CycloNumber(m, coeffs, den)


class TestIdentities:
    def test_cyclotomic_relation(self):
        z = zeta(3)
        assert z + z ** 2 + 1 == 0

    def test_root_power(self):
        assert zeta(15) ** 3 == zeta(5)
        assert zeta(15) ** 15 == 1

    def test_conj(self):
        assert zeta(3).conj() * zeta(3) == 1

    def test_abs_squared(self):
        for k in range(15):
            assert zeta(15, k).abs_squared() == 1
        assert (1 + zeta(3)).abs_squared() == 1
        assert CycloNumber.from_int(3, 0).abs_squared() == 0

    def test_phi_m(self):
        assert [phi_m(m) for m in (3, 5, 15)] == [2, 4, 8]


class TestEmbedding:
    def test_one(self):
        v, err = CycloNumber.from_int(15, 1).embed_with_bound()
        assert v == 1.0 and err == 0.0

    def test_zeta3(self):
        v = zeta(3).embed()
        assert abs(v - complex(-0.5, 0.8660254037844386)) < 1e-15

    def test_sum_of_roots_against_high_precision(self):
        rng = random.Random(5)
        ks = [rng.randrange(15) for _ in range(1000)]
        exact = sum((zeta(15, k) for k in ks), CycloNumber.from_int(15, 0))
        mpmath.mp.prec = 128
        ref = mpmath.fsum(mpmath.expjpi(mpmath.mpf(2 * k) / 15) for k in ks)
        v, err = exact.embed_with_bound()
        assert abs(abs(v) - float(abs(ref))) < 1e-12
        assert abs(v - complex(ref)) <= max(err, 1e-12)


class TestRing:
    @settings(max_examples=150, deadline=None)
    @given(small, small, small, st.sampled_from([3, 15]))
    def test_ring_axioms(self, a, b, c, m):
        x, y, z = cy(m, a), cy(m, b), cy(m, c)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x - x == 0
        assert (x * y).embed() == pytest.approx((x.embed() * y.embed()), abs=1e-9)

    @settings(max_examples=100, deadline=None)
    @given(small, small, st.sampled_from([3, 15]))
    def test_conj_is_automorphism(self, a, b, m):
        x, y = cy(m, a), cy(m, b)
        assert (x * y).conj() == x.conj() * y.conj()
        assert (x + y).conj() == x.conj() + y.conj()
        assert x.conj().conj() == x
        assert cmath.isclose(x.conj().embed(), x.embed().conjugate(), abs_tol=1e-9)

    @settings(max_examples=80, deadline=None)
    @given(small)
    def test_inverse(self, a):
        x = cy(15, a)
        if x.is_zero():
            return
        assert x * x.inverse() == 1
        assert x.norm() != 0

    def test_mixed_orders_lift(self):
        assert zeta(3) * zeta(5) == zeta(15, 5 + 3)
        assert (zeta(3) + zeta(15, 0)).m == 15

    def test_rationals(self):
        h = CycloNumber.from_fraction(3, Fraction(1, 2))
        assert (h + h) == 1 and h.is_rational() and h.to_fraction() == Fraction(1, 2)
        with pytest.raises(ValueError):
            zeta(3).to_fraction()

    def test_galois(self):
        assert zeta(15).galois(2) == zeta(15, 2)
        assert zeta(3).galois(2) == zeta(3).conj()

    def test_from_hist(self):
        x = CycloNumber.from_hist(3, [2, 0, 1])
        assert x == 2 + zeta(3, 2)

    def test_json_round_trip(self):
        x = cy(15, [1, -2, 3], 7)
        assert CycloNumber.from_json(x.to_json()) == x
