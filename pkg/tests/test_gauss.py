import random

import pytest

from ffcubic.characters import CubicCharacter, enumerate_family
from ffcubic.exactnum import CycloNumber, zeta
from ffcubic.gauss import (
    additive_char,
    gauss_prime_power,
    gauss_char,
    gauss_general,
    gauss_multiplicative,
    gauss_restricted,
    h_coeffs,
    psi_coeffs,
)
from ffcubic.polyring import Poly, enumerate_monic, euler_phi, primes_of_degree


def P(ctx, text, over="q2"):
    return Poly.parse(ctx, text, over=over)


class TestAdditiveCharacter:
    def test_one_over_t(self, ctx):
        assert additive_char(ctx, 1, P(ctx, "T", "q")) == zeta(5)

    def test_polynomials_trivial(self, ctx):
        one = Poly.one(ctx, "q2")
        for f in list(enumerate_monic(ctx, "q2", 2))[::31]:
            assert additive_char(ctx, f, one) == 1

    def test_additive(self, ctx):
        rng = random.Random(9)
        for _ in range(1000):
            h = Poly(ctx, [rng.randrange(25) for _ in range(rng.randint(1, 3))] + [1], "q2")
            a = Poly(ctx, [rng.randrange(25) for _ in range(4)], "q2")
            b = Poly(ctx, [rng.randrange(25) for _ in range(4)], "q2")
            assert additive_char(ctx, a + b, h) == additive_char(ctx, a, h) * additive_char(ctx, b, h)

    def test_values_are_pth_roots(self, ctx):
        h = P(ctx, "T^2+(1*x)")
        for a in list(enumerate_monic(ctx, "q2", 1))[:10]:
            assert additive_char(ctx, a, h) ** 5 == 1


class TestGaussModulus:
    def test_linear(self, ctx, alpha):
        ch = CubicCharacter(Poly(ctx, [alpha, 1], "q2"))
        assert gauss_char(ch).abs_squared() == 25

    def test_genus0_all_equal_q(self, ctx):
        for ch in enumerate_family(ctx, 0):
            assert gauss_char(ch) == 5

    def test_conjugate(self, ctx):
        for ch in list(enumerate_family(ctx, 2))[::15]:
            assert gauss_char(ch.conj()) == gauss_char(ch).conj()
            assert gauss_char(ch).abs_squared() == 625

    def test_restricted_equals_q2_sum(self, ctx):
        for ch in list(enumerate_family(ctx, 0)) + list(enumerate_family(ctx, 2))[::60]:
            assert gauss_restricted(ch) == gauss_char(ch)

    def test_direct_equals_radical(self, ctx):
        rng = random.Random(1)
        for _ in range(4):
            f = Poly(ctx, [rng.randrange(25) for _ in range(2)] + [1], "q2") ** 2
            V = Poly(ctx, [rng.randrange(25) for _ in range(3)], "q2")
            assert gauss_general(V, f, method="direct") == gauss_general(V, f, method="radical")


class TestPrimePowers:
    def test_vanishing_beyond(self, ctx):
        Pq = P(ctx, "T+(1*x)")
        V1 = P(ctx, "T+1")
        for a in range(3):
            assert gauss_general(V1 * Pq ** a, Pq ** (a + 2), method="radical") == 0

    def test_phi_case(self, ctx):
        Pq = P(ctx, "T+(1*x)")
        V1 = P(ctx, "T+1")
        assert gauss_general(V1 * Pq ** 3, Pq ** 3, method="radical") == euler_phi(Pq ** 3)

    def test_all_cases_linear_primes(self, ctx):
        rng = random.Random(3)
        for Pq in primes_of_degree(ctx, "q2", 1)[::4]:
            V1 = Poly(ctx, [rng.randrange(1, 25)], "q2")
            for i in range(1, 5):
                for a in range(5):
                    r = gauss_prime_power(V1, Pq, a, i)
                    assert r.ok, (str(Pq), a, i, r.case)


class TestGaussSeries:
    def test_constant_term(self, ctx):
        assert psi_coeffs(P(ctx, "T+1"), 0).coeffs == [CycloNumber.from_int(15, 1)]

    def test_f_one_degree_one(self, ctx):
        one = Poly.one(ctx, "q2")
        s = psi_coeffs(one, 1)
        terms = [gauss_general(one, F) for F in enumerate_monic(ctx, "q2", 1)]
        assert all(t.abs_squared() == 25 for t in terms)
        assert s.coeffs[1] == sum(terms, CycloNumber.from_int(15, 0))

    def test_coprime_only(self, ctx):
        f = P(ctx, "T")
        full = psi_coeffs(f, 1).coeffs[1]
        cop = psi_coeffs(f, 1, coprime_only=True).coeffs[1]
        assert full - cop == gauss_general(f, P(ctx, "T"))

    def test_h_matches_psi(self, ctx):
        Q = P(ctx, "T^2+1", "q")
        assert h_coeffs(Q, 2).coeffs == psi_coeffs(Q.as_over("q2"), 2, coprime_only=True).coeffs
        assert h_coeffs(Q, 2).coeffs[0] == 1

    def test_non_squarefree_vanish(self, ctx):
        Q = P(ctx, "T+1")
        for F in enumerate_monic(ctx, "q2", 2):
            if F.gcd(F.derivative()).deg > 0 and F.gcd(Q).deg == 0:
                assert gauss_general(Q, F) == 0

    def test_multiplicative_assembly(self, ctx):
        f = P(ctx, "T+2")
        a = psi_coeffs(f, 2, method="direct")
        b = psi_coeffs(f, 2, method="multiplicative")
        assert a.coeffs == b.coeffs

    def test_multiplicative_matches_direct(self, ctx):
        rng = random.Random(8)
        for _ in range(20):
            f = Poly(ctx, [rng.randrange(25) for _ in range(3)] + [1], "q2")
            V = Poly(ctx, [rng.randrange(25) for _ in range(2)], "q2")
            assert gauss_multiplicative(V, f) == gauss_general(V, f, method="radical")

    def test_non_monic_rejected(self, ctx):
        with pytest.raises(ValueError):
            gauss_general(1, Poly(ctx, [1, 2], "q2"))
