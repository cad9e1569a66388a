import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffcubic.characters import (
    CubicCharacter,
    cubic_symbol,
    enumerate_direct,
    enumerate_family,
    family_array,
    family_surplus,
    label_value,
)
from ffcubic.ffield import Fq2Element, make_field, omega_map
from ffcubic.polyring import Poly, enumerate_monic


def lin(ctx, root_code):
    return Poly(ctx, [root_code, 1], "q2")


@pytest.fixture(scope="module")
def pi(ctx, alpha):
    return lin(ctx, alpha)


@pytest.fixture(scope="module")
def family2(ctx):
    return list(enumerate_family(ctx, 2))


def q_poly(ctx, digits):
    return Poly(ctx, [ctx.fq(d).code for d in digits], "q")


class TestCubicSymbol:
    def test_constants_trivial(self, ctx, pi):
        for c in range(1, 5):
            assert cubic_symbol(pi, ctx.fq(c)) == 0

    def test_t_plus_one(self, ctx, pi, alpha):
        # brute force: T + 1 = 1 - alpha mod T + alpha, raised to (25 - 1)/3 = 8
        r = (Fq2Element(ctx, ctx.from_vec(1)) - Fq2Element(ctx, alpha)) ** 8
        assert r == ctx.element(2, 4)
        k = omega_map(ctx, r, inverse=True)
        assert k == 2
        assert cubic_symbol(pi, Poly.parse(ctx, "T+1", over="q2")) == k

    def test_zero_when_divisible(self, ctx, pi):
        assert cubic_symbol(pi, pi * Poly.parse(ctx, "T+3", over="q2")) is None
        assert CubicCharacter(pi)(pi) == 0

    def test_value_is_cube_root(self, ctx, pi):
        for N in enumerate_monic(ctx, "q2", 2):
            lab = cubic_symbol(pi, N)
            assert lab is None or lab in (0, 1, 2)


class TestPrimitivity:
    def test_linear_family_member(self, ctx, pi):
        ch = CubicCharacter(pi)
        assert ch.primitive and ch.genus == 0
        assert str(ch.conductor) == "T^2+2"

    def test_base_product_rejected(self, ctx, pi):
        F = pi * pi.sigma()
        assert F.in_base()
        assert not CubicCharacter(F).primitive

    def test_square_rejected(self, ctx, pi):
        ch = CubicCharacter(pi * pi)
        assert not ch.is_squarefree and not ch.primitive and ch.genus is None

    def test_non_monic_rejected(self, ctx, alpha):
        with pytest.raises(ValueError):
            CubicCharacter(Poly(ctx, [1, alpha], "q2"))


class TestFamily:
    def test_genus0(self, ctx):
        fam = list(enumerate_family(ctx, 0))
        assert len(fam) == 20
        roots = {ch.F.coeffs[0] for ch in fam}
        assert roots == {c for c in range(ctx.Q) if not ctx.in_base(c)}

    @pytest.mark.parametrize("g,expected", [(2, 480), (4, 12120)])
    def test_sizes_brute_force(self, ctx, g, expected):
        d = g // 2 + 1
        brute = sum(
            1
            for F in enumerate_monic(ctx, "q2", d)
            if F.gcd(F.derivative()).deg == 0 and F.gcd(F.sigma()).deg == 0
        )
        assert brute == expected == len(family_array(ctx, g))

    def test_closed_under_sigma(self, ctx, family2):
        Fs = {ch.F for ch in family2}
        assert all(F.sigma() in Fs and F.sigma() != F for F in Fs)
        assert len(Fs) % 2 == 0

    def test_odd_genus(self, ctx):
        with pytest.raises(ValueError):
            family_array(ctx, 3)

    def test_prime_only_surplus(self, ctx):
        surplus = family_surplus(ctx, 2)
        assert len(surplus) == 10
        for F in surplus:
            assert F.in_base() and F.as_over("q").is_irreducible()
        assert len(family_array(ctx, 2, "prime-only")) == 490


class TestCharacterLaws:
    def test_two_routes_agree(self, ctx, family2):
        rng = random.Random(2)
        Ns = list(enumerate_monic(ctx, "q", 3))
        for ch in rng.sample(family2, 40):
            for N in rng.sample(Ns, 25):
                assert ch.label(N) == ch.label_by_symbols(N)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 479), st.lists(st.integers(0, 4), min_size=1, max_size=4),
           st.lists(st.integers(0, 4), min_size=1, max_size=4))
    def test_multiplicative(self, i, a, b):
        ctx = make_field(5)
        ch = CubicCharacter(Poly(ctx, family_array(ctx, 2)[i], "q2"))
        A, B = q_poly(ctx, a), q_poly(ctx, b)
        if A.is_zero() or B.is_zero():
            return
        assert ch(A * B) == ch(A) * ch(B)

    def test_even(self, ctx, family2):
        for ch in family2[::10]:
            assert all(ch.label(ctx.fq(c)) == 0 for c in range(1, 5))

    def test_conjugate_character(self, ctx, family2):
        Ns = list(enumerate_monic(ctx, "q", 2))
        for ch in family2[::25]:
            cj = ch.conj()
            for N in Ns:
                assert cj(N) == ch(N).conj()

    def test_periodic_mod_conductor(self, ctx, family2):
        rng = random.Random(4)
        for ch in family2[::40]:
            h = ch.conductor
            for _ in range(20):
                N = q_poly(ctx, [rng.randrange(5) for _ in range(4)])
                M = q_poly(ctx, [rng.randrange(5) for _ in range(2)])
                assert ch.label(N) == ch.label(N + h * M)

    def test_order_three(self, ctx, family2):
        Ns = list(enumerate_monic(ctx, "q", 2))
        for ch in family2[::30]:
            labs = {ch.label(N) for N in Ns} - {None}
            assert labs == {0, 1, 2}

    def test_label_value(self):
        assert label_value(None) == 0
        assert label_value(0) == 1

    def test_json_round_trip(self, ctx, family2):
        ch = family2[7]
        assert CubicCharacter.from_json(ctx, ch.to_json()).F == ch.F


class TestDirect:
    def test_genus0_moduli(self, ctx):
        chars = list(enumerate_direct(ctx, 0))
        assert len(chars) == 20
        mods = {}
        for ch in chars:
            mods.setdefault(ch.modulus, 0)
            mods[ch.modulus] += 1
        assert len(mods) == 10 and set(mods.values()) == {2}
        assert all(m.is_irreducible() and m.deg == 2 for m in mods)

    def test_cubic_and_nontrivial(self, ctx):
        Ns = list(enumerate_monic(ctx, "q", 2))
        for ch in list(enumerate_direct(ctx, 2))[::20]:
            labs = [ch.label(N) for N in Ns]
            assert {x for x in labs if x is not None} == {0, 1, 2}
            # chi^3 trivial: 3 * label = 0 mod 3 for every unit
            assert all(label_value(x) ** 3 == 1 for x in labs if x is not None)

    def test_count_matches_family(self, ctx):
        assert len(list(enumerate_direct(ctx, 2))) == 480
