"""L-polynomials of cubic characters and their functional equation.

For a character chi of GF(q)[T] the L-function in u = q^(-s) is
L(u) = sum_n a_n u^n with a_n = sum over monic N of degree n of chi(N).
Coefficients are elements of Z[zeta_3]; batch kernels carry them as
integer pairs (x, y) meaning x + y*zeta_3.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels as K
from .characters import CubicCharacter, DirectCharacter, label_value
from .exactnum import CycloNumber
from .ffield import FieldCtx
from .gauss import gauss_char
from .polyring import Poly, enumerate_monic, factor, prime_table

__all__ = [
    "LPolynomial",
    "FEReport",
    "l_coeffs",
    "family_lcoeffs",
    "l_eval",
    "pairs_to_cyclo",
    "hecke_l_coeffs",
    "hecke_rationality_check",
    "functional_equation_check",
    "weil_deviation",
    "lindelof_report",
]


def pairs_to_cyclo(pairs) -> list:
    return [CycloNumber(3, [int(x), int(y)]) for x, y in pairs]


@dataclass
class LPolynomial:
    """a_0 .. a_nmax of L(u, chi) and the completed part L*(u) = L(u)/(1-u)."""

    ctx: FieldCtx
    cond_degree: int
    coeffs: list  # CycloNumber (m=3), length nmax + 1

    @property
    def nmax(self):
        return len(self.coeffs) - 1

    def vanishing_ok(self) -> bool:
        """a_n = 0 for every computed n >= deg(conductor)."""
        return all(c.is_zero() for c in self.coeffs[self.cond_degree:])

    @property
    def poly(self) -> list:
        return self.coeffs[: self.cond_degree]

    def has_trivial_zero(self) -> bool:
        total = CycloNumber.from_int(3, 0)
        for c in self.poly:
            total = total + c
        return total.is_zero()

    @property
    def completed(self) -> list:
        """Coefficients of L*(u) = L(u)/(1-u); requires the trivial zero."""
        if not self.has_trivial_zero():
            raise ArithmeticError("1 - u does not divide L(u)")
        out, acc = [], CycloNumber.from_int(3, 0)
        for c in self.poly[:-1]:
            acc = acc + c
            out.append(acc)
        return out or [CycloNumber.from_int(3, 1)]

    def key(self):
        """Hashable exact form, for multiset comparisons."""
        return tuple((c.num, c.den) for c in self.poly)

    def to_json(self):
        return [c.to_json() for c in self.poly]


def _euler_python(ctx, label, nmax):
    """Euler product over primes of GF(q)[T] for an arbitrary label function."""
    primes, pdegs = prime_table(ctx, "q", max(nmax, 1))
    sx = [0] * (nmax + 1)
    sy = [0] * (nmax + 1)
    sx[0] = 1
    for row, d in zip(primes, pdegs):
        d = int(d)
        if d > nmax:
            break
        e = label(Poly(ctx, row[: d + 1], "q"))
        if e is None:
            continue
        for j in range(d, nmax + 1):
            x, y = K.zeta3_mul(sx[j - d], sy[j - d], e)
            sx[j] += x
            sy[j] += y
    return list(zip(sx, sy))


def family_lcoeffs(ctx: FieldCtx, Fs: np.ndarray, nmax: int, method: str = "euler") -> np.ndarray:
    """(n, nmax+1, 2) integer pairs of a_n for each row F of ``Fs``."""
    Fs = np.ascontiguousarray(Fs, dtype=np.int64)
    nF, d = Fs.shape[0], Fs.shape[1] - 1
    out = np.zeros((nF, nmax + 1, 2), np.int64)
    if method == "euler":
        primes, pdegs = prime_table(ctx, "q", max(nmax, 1))
        K.euler_lcoeffs(Fs, d, primes, pdegs, nmax, ctx.zech, ctx.omega_twist, out)
    elif method == "direct":
        counts = np.zeros((nF, nmax + 1, 3), np.int64)
        K.direct_nsum(Fs, d, nmax, ctx.fq_codes, ctx.zech, ctx.omega_twist, counts)
        out[:, :, 0] = counts[:, :, 0] - counts[:, :, 2]
        out[:, :, 1] = counts[:, :, 1] - counts[:, :, 2]
    else:
        raise ValueError(f"unknown method {method!r}")
    return out


def l_coeffs(ch, nmax: int | None = None, method: str = "euler") -> LPolynomial:
    """Exact L-coefficients through u^nmax (default: deg conductor + 1).

    ``ch`` is a :class:`CubicCharacter` (either method) or a
    :class:`DirectCharacter` (Euler product only).
    """
    if isinstance(ch, DirectCharacter):
        cd = ch.modulus.deg
        nmax = cd + 1 if nmax is None else nmax
        if method != "euler":
            raise ValueError("direct characters support the Euler method only")
        return LPolynomial(ch.ctx, cd, pairs_to_cyclo(_euler_python(ch.ctx, ch.label, nmax)))
    if not ch.primitive:
        raise ValueError("L-polynomials are computed for primitive characters")
    cd = 2 * ch.F.deg
    nmax = cd + 1 if nmax is None else nmax
    arr = family_lcoeffs(ch.ctx, ch.F.arr()[None, :], nmax, method)[0]
    return LPolynomial(ch.ctx, cd, pairs_to_cyclo(arr))


def l_eval(L: LPolynomial, u: complex | None = None, s: complex | None = None):
    """L(u) (or L at u = q^-s) as a complex number with an absolute error bound.

    Default point is the centre s = 1/2, u = q^(-1/2).
    """
    q = L.ctx.q
    if u is None:
        u = q ** (-0.5) if s is None else cmath.exp(-s * math.log(q))
    coeffs = L.poly
    acc = 0j
    bound = 0.0
    mag = 0.0
    for c in reversed(coeffs):
        z, err = c.embed_with_bound()
        acc = acc * u + z
        mag = mag * abs(u) + abs(z)
        bound = bound * abs(u) + err
    bound += 4 * len(coeffs) * 2.0 ** -52 * mag
    return acc, bound


# --------------------------------------------------------------- Hecke side
def hecke_l_coeffs(N: Poly, maxdeg: int) -> list:
    """b_d = sum over monic F in GF(q^2)[T] of degree d of chi_F(N)."""
    ctx = N.ctx
    if N.deg < 0:
        raise ValueError("N must be nonzero")
    hist = K.hecke_hist(N.as_over("q2").arr(), N.deg, maxdeg, ctx.fq2_codes, ctx.zech, ctx.omega_twist)
    return [CycloNumber.from_hist(3, row) for row in hist]


def hecke_rationality_check(N: Poly, coeffs: list) -> dict:
    """Check that the truncated Hecke series is a rational function.

    Either chi^(N) is nonprincipal and the series is a polynomial of degree
    < deg N, or it is principal and (1 - q^2 u) times the series is a
    polynomial of degree <= deg rad N.
    """
    ctx = N.ctx
    n = len(coeffs)
    poly_ok = all(c.is_zero() for c in coeffs[max(N.deg, 0):])
    rad_deg = sum(P.deg for P, _ in factor(N)) if N.deg > 0 else 0
    prod = [coeffs[0]] + [coeffs[i] - coeffs[i - 1] * ctx.Q for i in range(1, n)]
    principal_ok = all(c.is_zero() for c in prod[rad_deg + 1:])
    kind = "polynomial" if poly_ok else ("principal" if principal_ok else "none")
    # certification needs coefficients beyond the claimed degree
    certified = (poly_ok and n > N.deg) or (principal_ok and n > rad_deg + 1)
    return {"kind": kind, "ok": kind != "none", "certified": bool(certified)}


# --------------------------------------------------------- functional equation
@dataclass
class FEReport:
    genus: int
    a: int  # u-exponent of the monomial: M(s) = c q^(a s + b)
    b: Fraction
    c: CycloNumber
    c_abs2: Fraction
    reflection_ok: bool
    involution_ok: bool
    literal_a: int
    literal_b: Fraction
    literal_consistent: bool
    sign_corrected_consistent: bool
    c_matches_gauss: bool  # c q^(deg F) = G_{q^2}(1, F)
    eps_conductor_abs2: Fraction
    eps_literal_abs2: Fraction
    gauss: CycloNumber = field(repr=False, default=None)

    def to_json(self):
        return {
            "genus": self.genus,
            "a": self.a,
            "b": str(self.b),
            "c": self.c.to_json(),
            "c_abs2": str(self.c_abs2),
            "reflection_ok": self.reflection_ok,
            "involution_ok": self.involution_ok,
            "literal_exponents": [self.literal_a, str(self.literal_b)],
            "literal_consistent": self.literal_consistent,
            "sign_corrected_consistent": self.sign_corrected_consistent,
            "c_matches_gauss": self.c_matches_gauss,
            "eps_conductor_abs2": str(self.eps_conductor_abs2),
            "eps_literal_abs2": str(self.eps_literal_abs2),
        }


def functional_equation_check(ch: CubicCharacter, L: LPolynomial | None = None) -> FEReport:
    """Solve for the monomial M(s) = c q^(a s + b) with
    L(s, chi) = M(s) (1 - q^-s)/(1 - q^(s-1)) L(1 - s, conj chi).

    In u = q^-s this reads L*(u) = c q^b u^(-a) conj(L*)(1/(q u)), i.e.
    b*_{g-i} = c q^(b - i) conj(b*_i) with g = -a = deg L*.
    """
    if L is None:
        L = l_coeffs(ch)
    q = ch.ctx.q
    star = L.completed
    g = len(star) - 1
    top = star[-1]
    if top.is_zero():
        raise ArithmeticError("no monomial reflection factor: L* has a zero leading term")
    # |b*_g| = q^b |b*_0| = q^b
    abs2 = top.abs_squared().to_fraction()
    b = Fraction(g, 2)
    if abs2 != Fraction(q) ** g:
        raise ArithmeticError("no monomial reflection factor: |leading coefficient| is not a power of q")
    c = top / (q ** (g // 2)) if g % 2 == 0 else None
    if c is None:
        raise ArithmeticError("odd-degree completed L-polynomial")
    reflection_ok = all(
        star[g - i] == c * star[i].conj() * Fraction(q) ** (g // 2 - i) for i in range(g + 1)
    )
    if not reflection_ok:
        raise ArithmeticError("functional equation fails: coefficients do not reflect")
    c_abs2 = c.abs_squared().to_fraction()
    d = ch.F.deg
    gauss = gauss_char(ch)
    c_matches = (c * q ** d) == gauss
    G_abs2 = gauss.abs_squared().to_fraction()
    # literal form: eps q^(-2s-1) |F|_2^(1/2 - s) = eps q^(-(2+2d)s + d - 1)
    literal_a, literal_b = -(2 + 2 * d), Fraction(d - 1)
    # with the exponent of the middle factor read as 2s - 1
    corrected_a, corrected_b = 2 - 2 * d, Fraction(d - 1)
    return FEReport(
        genus=g,
        a=-g,
        b=b,
        c=c,
        c_abs2=c_abs2,
        reflection_ok=reflection_ok,
        involution_ok=(c * c.conj()) == 1,
        literal_a=literal_a,
        literal_b=literal_b,
        literal_consistent=(literal_a, literal_b) == (-g, b),
        sign_corrected_consistent=(corrected_a, corrected_b) == (-g, b),
        c_matches_gauss=c_matches,
        # eps = q^(-1/2) q^(-(n-1)/2) G with n = 2 deg F (conductor) or deg F
        eps_conductor_abs2=G_abs2 / Fraction(q) ** (2 * d),
        eps_literal_abs2=G_abs2 / Fraction(q) ** d,
        gauss=gauss,
    )


# -------------------------------------------------------- Weil and Lindelof
def weil_deviation(L: LPolynomial) -> float:
    """max | |inverse root of L*| - q^(1/2) | (0 when L* is constant)."""
    star = [c.embed() for c in L.completed]
    if len(star) <= 1:
        return 0.0
    # inverse roots of sum b_i u^i are the roots of sum b_i x^(g-i)
    roots = np.roots(np.array(star, dtype=complex))
    return float(np.max(np.abs(np.abs(roots) - math.sqrt(L.ctx.q))))


def lindelof_report(ctx: FieldCtx, lpolys, genus: int) -> dict:
    """max |L(1/2, chi)| over a family and its size on the log_q |h| scale."""
    vals = [abs(l_eval(L)[0]) for L in lpolys]
    if not vals:
        return {"genus": genus, "count": 0}
    mx = max(vals)
    cond = genus + 2
    return {
        "genus": genus,
        "count": len(vals),
        "max_abs_central": mx,
        "mean_abs_central": sum(vals) / len(vals),
        "log_ratio": math.log(mx) / (cond * math.log(ctx.q)) if mx > 0 else float("-inf"),
    }
