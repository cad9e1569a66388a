import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffcubic.ffield import (
    Fq2Element,
    FqElement,
    cube_roots,
    frobenius,
    make_field,
    omega_map,
)

codes = st.integers(min_value=0, max_value=24)


def el(ctx, a, b=0):
    return Fq2Element(ctx, ctx.from_vec(a, b))


class TestMakeField:
    def test_q5(self, ctx):
        assert ctx.p == 5 and ctx.q == 5 and ctx.Q == 25

    @pytest.mark.parametrize("q", [7, 13, 4, 9, 3, 6, 1, 0, -5])
    def test_rejected(self, q):
        with pytest.raises(ValueError):
            make_field(q)

    @pytest.mark.parametrize("q", [11, 17, 23, 29, 125])
    def test_accepted(self, q):
        c = make_field(q)
        assert c.q == q and c.Q == q * q

    def test_modulus_is_least_irreducible(self, ctx):
        # x^2 + 2: brute-force lex scan of monic quadratics, leading coefficients first
        p = 5
        first = None
        for c1 in range(p):
            for c0 in range(p):
                if all((x * x + c1 * x + c0) % p for x in range(p)):
                    first = (c0, c1, 1)
                    break
            if first:
                break
        assert first == (2, 0, 1)
        assert tuple(ctx.modulus) == first

    def test_large_characteristic_rejected(self):
        with pytest.raises(ValueError, match="characteristic"):
            make_field(41)


class TestFieldAxioms:
    @settings(max_examples=300, deadline=None)
    @given(codes, codes, codes)
    def test_ring_laws(self, a, b, c):
        ctx = make_field(5)
        x, y, z = Fq2Element(ctx, a), Fq2Element(ctx, b), Fq2Element(ctx, c)
        assert (x * y) * z == x * (y * z)
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x and x * y == y * x
        assert x - x == Fq2Element(ctx, 0)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(min_value=1, max_value=24))
    def test_inverse(self, a):
        ctx = make_field(5)
        x = Fq2Element(ctx, a)
        assert x * x.inverse() == Fq2Element(ctx, 1)

    def test_division_by_zero(self, ctx):
        with pytest.raises(ZeroDivisionError):
            Fq2Element(ctx, 0).inverse()

    def test_field_axioms_q11_random(self, ctx11):
        import random

        rng = random.Random(7)
        for _ in range(10_000):
            a, b, c = (Fq2Element(ctx11, rng.randrange(ctx11.Q)) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            if a:
                assert a / a == Fq2Element(ctx11, 1)

    def test_prime_power_base(self):
        c = make_field(125)
        rng = __import__("random").Random(1)
        for _ in range(500):
            a, b = (Fq2Element(c, rng.randrange(c.Q)) for _ in range(2))
            assert frobenius(a * b) == frobenius(a) * frobenius(b)
            assert frobenius(frobenius(a)) == a


class TestFrobenius:
    def test_alpha(self, ctx):
        # alpha^2 = 3, alpha^5 = alpha * 9 = 4 alpha
        a = el(ctx, 0, 1)
        assert a * a == el(ctx, 3)
        assert frobenius(a) == el(ctx, 0, 4)

    def test_fixes_base(self, ctx):
        for c in range(5):
            assert frobenius(el(ctx, c)) == el(ctx, c)

    @settings(max_examples=200, deadline=None)
    @given(codes, codes)
    def test_automorphism(self, a, b):
        ctx = make_field(5)
        x, y = Fq2Element(ctx, a), Fq2Element(ctx, b)
        assert frobenius(x * y) == frobenius(x) * frobenius(y)
        assert frobenius(x + y) == frobenius(x) + frobenius(y)
        assert frobenius(frobenius(x)) == x

    def test_fq_element_checks_subfield(self, ctx):
        assert ctx.fq(3) == FqElement(ctx, ctx.from_vec(3))
        with pytest.raises(ValueError):
            FqElement(ctx, ctx.from_vec(0, 1))


class TestCubeRoots:
    def test_q5(self, ctx):
        assert cube_roots(ctx) == {el(ctx, 1), el(ctx, 2, 1), el(ctx, 2, 4)}

    @pytest.mark.parametrize("q", [5, 11])
    def test_counts_brute_force(self, q):
        c = make_field(q)
        big = [z for z in range(1, c.Q) if c.pow(z, 3) == c.from_vec(1, 0)]
        small = [z for z in big if c.in_base(z)]
        assert len(big) == 3 and len(small) == 1

    def test_omega_relations(self, ctx):
        w = omega_map(ctx, 1)
        assert w == el(ctx, 2, 1)
        assert w * omega_map(ctx, 2) == el(ctx, 1)
        assert omega_map(ctx, 2) == frobenius(w)
        assert omega_map(ctx, 0) == el(ctx, 1)

    def test_omega_inverse(self, ctx):
        for k in range(3):
            assert omega_map(ctx, omega_map(ctx, k), inverse=True) == k
        with pytest.raises(ValueError):
            omega_map(ctx, el(ctx, 2), inverse=True)


class TestTextForms:
    def test_round_trip(self, ctx):
        for code in range(ctx.Q):
            assert ctx.parse_code(ctx.format_code(code)) == code

    def test_examples(self, ctx):
        assert ctx.format_code(ctx.from_vec(2, 1)) == "2+1*x"
        assert ctx.parse_code("2+x") == ctx.from_vec(2, 1)
        assert Fq2Element(ctx, ctx.from_vec(3, 4)).to_json() == [3, 4]
