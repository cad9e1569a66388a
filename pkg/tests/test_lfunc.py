import math
import random

import pytest

from ffcubic.characters import CubicCharacter, enumerate_direct, enumerate_family
from ffcubic.exactnum import CycloNumber
from ffcubic.lfunc import (
    functional_equation_check,
    hecke_l_coeffs,
    hecke_rationality_check,
    l_coeffs,
    l_eval,
    lindelof_report,
    weil_deviation,
)
from ffcubic.polyring import Poly


@pytest.fixture(scope="module")
def fam0(ctx):
    return list(enumerate_family(ctx, 0))


@pytest.fixture(scope="module")
def fam2(ctx):
    return list(enumerate_family(ctx, 2))


def one_minus_u():
    return [CycloNumber.from_int(3, 1), CycloNumber.from_int(3, -1)]


class TestCoefficients:
    def test_genus0_is_one_minus_u(self, fam0):
        for ch in fam0:
            L = l_coeffs(ch)
            assert L.poly == one_minus_u()
            assert L.vanishing_ok()

    def test_genus0_brute_force(self, ctx, fam0):
        # sum over c in GF(5) of chi(T + c) = -1
        for ch in fam0:
            s = sum((ch(Poly.parse(ctx, f"T+{c}", over="q")) for c in range(5)), CycloNumber.from_int(3, 0))
            assert s == -1

    def test_a0_is_one(self, fam2):
        assert all(l_coeffs(ch).coeffs[0] == 1 for ch in fam2[::20])

    def test_routes_agree(self, fam2):
        for ch in fam2[::12]:
            assert l_coeffs(ch, method="euler").poly == l_coeffs(ch, method="direct").poly

    def test_conjugate_pair_sum_rational(self, fam2):
        for ch in fam2[::24]:
            a, b = l_coeffs(ch), l_coeffs(ch.conj())
            for x, y in zip(a.coeffs, b.coeffs):
                assert y == x.conj()
                assert (x + y).is_integer()

    def test_direct_character(self, ctx):
        for ch in list(enumerate_direct(ctx, 0))[:4]:
            L = l_coeffs(ch)
            assert L.poly == one_minus_u()


class TestEvaluation:
    def test_centre_genus0(self, fam0):
        v, err = l_eval(l_coeffs(fam0[0]))
        assert abs(v - (1 - 5 ** -0.5)) <= err + 1e-15
        assert v.real == pytest.approx(0.5527864045000421, abs=1e-15)

    def test_trivial_zero_and_one(self, fam2):
        for ch in fam2[::40]:
            L = l_coeffs(ch)
            assert L.has_trivial_zero()
            assert l_eval(L, u=0)[0] == 1
            assert abs(l_eval(L, u=1)[0]) < 1e-12

    def test_s_argument(self, fam0):
        L = l_coeffs(fam0[0])
        assert l_eval(L, s=0.5)[0] == pytest.approx(l_eval(L)[0])

    def test_central_zero_is_exact(self, ctx):
        # L = (1 - u)(1 - 5u^2) vanishes at u = 5^(-1/2)
        ch = CubicCharacter(Poly.parse(ctx, "T^2+(1*x)", over="q2"))
        L = l_coeffs(ch)
        assert [int(c) for c in L.poly] == [1, -1, -5, 5]
        v, err = l_eval(L)
        assert abs(v) <= err + 1e-15

    def test_lindelof_report(self, ctx, fam2):
        rep = lindelof_report(ctx, [l_coeffs(ch) for ch in fam2[::10]], 2)
        assert rep["count"] == 48 and rep["max_abs_central"] > 0


class TestHecke:
    def test_unit(self, ctx):
        b = hecke_l_coeffs(Poly.one(ctx, "q"), 3)
        assert [int(x) for x in b] == [1, 25, 625, 15625]

    @pytest.mark.parametrize("text", ["T", "T^2+2", "T^2+1", "T^3+T+1"])
    def test_rational(self, ctx, text):
        N = Poly.parse(ctx, text, over="q")
        rep = hecke_rationality_check(N, hecke_l_coeffs(N, N.deg + 1))
        assert rep["ok"] and rep["certified"]

    def test_cube(self, ctx):
        N = Poly.parse(ctx, "T+1", over="q") ** 3
        rep = hecke_rationality_check(N, hecke_l_coeffs(N, 4))
        assert rep["kind"] == "principal" and rep["certified"]


class TestFunctionalEquation:
    def test_genus0(self, fam0):
        for ch in fam0:
            rep = functional_equation_check(ch)
            assert rep.c == 1 and rep.a == 0 and rep.c_matches_gauss
            assert not rep.literal_consistent and rep.sign_corrected_consistent

    def test_genus2(self, fam2):
        for ch in fam2[::6]:
            rep = functional_equation_check(ch)
            assert rep.c_abs2 == 1 and rep.reflection_ok and rep.c_matches_gauss
            assert (rep.a, rep.b) == (-2, 1)
            assert rep.eps_conductor_abs2 == 1
            assert rep.eps_literal_abs2 == 5 ** ch.F.deg
            assert not rep.literal_consistent and rep.sign_corrected_consistent

    def test_conjugate_root_number(self, fam2):
        for ch in fam2[::30]:
            assert functional_equation_check(ch.conj()).c == functional_equation_check(ch).c.conj()

    def test_report_json(self, fam2):
        obj = functional_equation_check(fam2[0]).to_json()
        assert obj["literal_consistent"] is False and obj["c_abs2"] == "1"


class TestWeil:
    def test_genus2(self, fam2):
        assert max(weil_deviation(l_coeffs(ch)) for ch in fam2) < 1e-8

    def test_genus4_sample(self, ctx):
        from ffcubic.characters import family_array

        Fs = family_array(ctx, 4)
        rng = random.Random(0)
        for i in rng.sample(range(len(Fs)), 20):
            L = l_coeffs(CubicCharacter(Poly(ctx, Fs[i], "q2")))
            assert weil_deviation(L) < 1e-8
            assert abs(abs(L.completed[-1].embed()) - math.sqrt(5) ** 4) < 1e-9
