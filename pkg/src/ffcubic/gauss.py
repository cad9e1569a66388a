"""Additive characters, polynomial Gauss sums and their generating series.

The additive character is the residue-at-infinity character
e(x) = zeta_p^Tr(c_{-1}(x)), where c_{-1} is the coefficient of 1/T in the
Laurent expansion of x at infinity and Tr is the absolute trace of the
coefficient field.  A Gauss sum is returned as an exact element of
Z[zeta_{3p}].

Sums over u mod f are reduced to u mod rad(f) when the character only
sees the radical: the remaining sum over u mod f/rad(f) is a sum of an
additive character over a subspace, hence |f/rad(f)| or 0.  Passing
rad = f gives the plain definition, so both routes share one kernel and
can be compared.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .characters import CubicCharacter, label_value
from .exactnum import CycloNumber
from .ffield import FieldCtx
from .polyring import Poly, digits_table, enumerate_monic, factor, field_base, euler_phi

__all__ = [
    "AdditiveChar",
    "GaussSeries",
    "additive_char",
    "gauss_general",
    "gauss_char",
    "gauss_restricted",
    "gauss_multiplicative",
    "psi_coeffs",
    "h_coeffs",
    "radical",
    "gauss_twisted_product",
    "gauss_prime_power",
    "local_root_number",
]


def _trace_table(ctx: FieldCtx, over: str) -> np.ndarray:
    return ctx.trace_p if over == "q2" else ctx.trace_q_p


def _poly(ctx, a, over):
    if isinstance(a, Poly):
        return a
    return Poly(ctx, (int(ctx.int_codes[int(a) % ctx.p]),), over)


@dataclass(frozen=True)
class AdditiveChar:
    """e(a/h) on polynomials over GF(q) (``over="q"``) or GF(q^2)."""

    ctx: FieldCtx
    over: str = "q2"

    def trace_exponent(self, a, h: Poly) -> int:
        ctx = self.ctx
        if h.is_zero():
            raise ZeroDivisionError("additive character of a/0")
        if h.deg == 0:
            return 0  # a/h is a polynomial: no T^-1 term
        a = _poly(ctx, a, self.over)
        r = a % h
        top = r.coeffs[h.deg - 1] if r.deg == h.deg - 1 else 0
        c = ctx.mul(top, ctx.inv(h.lc)) if top else 0
        return int(_trace_table(ctx, self.over)[c])

    def __call__(self, a, h: Poly) -> CycloNumber:
        return CycloNumber.zeta(self.ctx.m, 3 * self.trace_exponent(a, h))


def additive_char(ctx: FieldCtx, a, h: Poly, over: str | None = None) -> CycloNumber:
    return AdditiveChar(ctx, over or h.over)(a, h)


def radical(f: Poly) -> Poly:
    out = Poly.one(f.ctx, f.over)
    if f.deg > 0:
        for P, _ in factor(f):
            out = out * P
    return out


def _is_squarefree(f: Poly) -> bool:
    fp = f.derivative()
    return f.deg <= 0 or (not fp.is_zero() and f.gcd(fp).deg == 0)


def _hist_sum(ctx, chi: Poly, f: Poly, V: Poly, rad: Poly, over: str, power: int = 1):
    V = V % f if V.deg >= f.deg else V
    hist, mult = K.gauss_hist(
        chi.arr(), chi.deg, f.arr(), f.deg, V.arr(), V.deg, rad.arr(), rad.deg,
        digits_table(ctx, over), ctx.zech, _trace_table(ctx, over), ctx.omega_twist, ctx.p, power,
    )
    return CycloNumber.from_hist(ctx.m, hist) * int(mult)


def gauss_general(V, f: Poly, method: str = "auto", chi: Poly | None = None, power: int = 1) -> CycloNumber:
    """G(V, f) = sum over u mod f of chi_f(u) e(uV/f).

    Residues u run over the coefficient field of ``f``.  ``chi`` overrides
    the character modulus (default f); ``power`` raises the character.
    ``method`` is "direct" (all residues), "radical" (residues mod rad f)
    or "auto".
    """
    ctx, over = f.ctx, f.over
    if not f.is_monic():
        raise ValueError("modulus must be monic")
    V = _poly(ctx, V, over)
    if f.deg == 0:
        return CycloNumber.from_int(ctx.m, 1)
    chi_poly = (chi if chi is not None else f).as_over("q2")
    if method == "auto":
        method = "direct" if _is_squarefree(f) or chi is not None else "radical"
    if method == "direct":
        rad = f
    elif method == "radical":
        if chi is not None:
            raise ValueError("radical reduction needs the character modulus to be f")
        rad = radical(f)
    else:
        raise ValueError(f"unknown method {method!r}")
    if V.is_zero():
        V = Poly(ctx, (), over)
    return _hist_sum(ctx, chi_poly, f, V, rad, over, power)


def gauss_char(ch: CubicCharacter, method: str = "auto") -> CycloNumber:
    """G(chi_F) computed as G_{q^2}(1, F)."""
    return gauss_general(1, ch.F, method=method)


def gauss_restricted(ch: CubicCharacter) -> CycloNumber:
    """The Gauss sum of chi_F as a character of GF(q)[T] modulo F F^sigma."""
    if not ch.primitive:
        raise ValueError("restricted Gauss sum needs a primitive character")
    return gauss_general(1, ch.conductor, chi=ch.F)


def gauss_multiplicative(V, f: Poly) -> CycloNumber:
    """G(V, f) over GF(q^2) assembled from prime-power factors.

    Uses G(V, f1 f2) = chi_{f1}(f2)^2 G(V, f1) G(V, f2) for coprime f1, f2.
    """
    ctx = f.ctx
    if f.over != "q2":
        raise ValueError("multiplicative assembly is for moduli over GF(q^2)")
    V = _poly(ctx, V, "q2")
    acc = CycloNumber.from_int(ctx.m, 1)
    done = Poly.one(ctx, "q2")
    if f.deg == 0:
        return acc
    for P, e in factor(f):
        pe = P ** e
        term = gauss_general(V, pe, method="radical" if e > 1 else "direct")
        if done.deg > 0:
            lab = CubicCharacter(done).label(pe)
            acc = acc * label_value(None if lab is None else (2 * lab) % 3)
        acc = acc * term
        done = done * pe
    return acc


@dataclass
class GaussSeries:
    """Coefficients c_d = sum over monic F of degree d of G(f, F)."""

    f: Poly
    maxdeg: int
    coprime_only: bool
    coeffs: list = field(default_factory=list)
    method: str = "direct"

    def to_rows(self):
        return [(d, c) for d, c in enumerate(self.coeffs)]


def psi_coeffs(f: Poly, maxdeg: int, coprime_only: bool = False, method: str = "direct") -> GaussSeries:
    """Psi(f, u) (or its coprime variant) up to u^maxdeg, over the field of f.

    ``method`` selects direct summation for each G(f, F) or the
    multiplicative assembly from prime powers (GF(q^2) only).
    """
    ctx, over = f.ctx, f.over
    out = GaussSeries(f, maxdeg, coprime_only, method=method)
    for d in range(maxdeg + 1):
        acc = CycloNumber.from_int(ctx.m, 0)
        for F in enumerate_monic(ctx, over, d):
            if coprime_only and f.gcd(F).deg > 0:
                continue
            if method == "multiplicative":
                acc = acc + gauss_multiplicative(f, F)
            else:
                acc = acc + gauss_general(f, F)
        out.coeffs.append(acc)
    return out


def h_coeffs(Q: Poly, maxdeg: int, method: str = "direct") -> GaussSeries:
    """H(Q, u) = sum over F coprime to Q of G_{q^2}(Q, F) u^deg F."""
    return psi_coeffs(Q.as_over("q2"), maxdeg, coprime_only=True, method=method)


# ---------------------------------------- twisted products and prime powers
def gauss_twisted_product(V, f1: Poly, f2: Poly):
    """The three sides of the twisted multiplicativity for coprime f1, f2."""
    if f1.gcd(f2).deg > 0:
        raise ValueError("moduli must be coprime")
    ctx = f1.ctx
    V = _poly(ctx, V, f1.over)
    whole = gauss_general(V, f1 * f2)
    lab = CubicCharacter(f1).label(f2)
    twist = label_value(None if lab is None else (2 * lab) % 3)
    first = twist * gauss_general(V, f1) * gauss_general(V, f2)
    second = gauss_general(V * f2, f1) * gauss_general(V, f2)
    return whole, first, second


def local_root_number(P: Poly, i: int) -> CycloNumber:
    """|P|^(1/2) eps(chi_P^i) = sum over u mod P of chi_P(u)^i e(u/P)."""
    return gauss_general(1, P, power=i)


@dataclass(frozen=True)
class PrimePowerCase:
    case: int  # 1..5 in the order listed by gauss_prime_power
    computed: CycloNumber
    predicted: CycloNumber

    @property
    def ok(self):
        return self.computed == self.predicted


def gauss_prime_power(V1: Poly, P: Poly, alpha: int, i: int) -> PrimePowerCase:
    """G(V1 P^alpha, P^i) against its closed form.

    Cases: 1) i <= alpha, 3 does not divide i: 0;  2) i <= alpha, 3 | i:
    phi(P^i);  3) i = alpha + 1, 3 | i: -|P|^(i-1);  4) i = alpha + 1,
    3 does not divide i: |P|^alpha chi_P(V1)^(-i) times the local sum of
    chi_P^i;  5) i >= alpha + 2: 0.
    """
    ctx = P.ctx
    if P.gcd(V1).deg > 0:
        raise ValueError("P must not divide V1")
    V = V1 * P ** alpha
    computed = gauss_general(V, P ** i, method="radical")
    norm = field_base(ctx, P.over) ** P.deg
    zero = CycloNumber.from_int(ctx.m, 0)
    if i <= alpha:
        if i % 3:
            return PrimePowerCase(1, computed, zero)
        return PrimePowerCase(2, computed, CycloNumber.from_int(ctx.m, euler_phi(P ** i)))
    if i == alpha + 1:
        if i % 3 == 0:
            return PrimePowerCase(3, computed, CycloNumber.from_int(ctx.m, -norm ** (i - 1)))
        lab = CubicCharacter(P).label(V1)
        twist = label_value((-i * lab) % 3)
        return PrimePowerCase(4, computed, twist * local_root_number(P, i) * norm ** alpha)
    return PrimePowerCase(5, computed, zero)
