"""Truncated bivariate series for A_3(u, v) and the Euler-product constants.

A_3(u, v) = sum over family F of L(v, chi_F) u^deg F, so the coefficient
of u^a v^b is the sum of chi_F(N) over family F of degree a and monic N of
degree b.  It is built twice:

* from the definition, by direct character sums;
* from the rearranged form, one monic N at a time, as the product of the
  Hecke series ratio L(u, chi^(N)) / L(u^2, chi^(N)), the Euler product
  P(u, chi^(N)) and the finite factor over primes dividing N.

The rearranged form counts F = 1 as well, so the definitional grid takes
``include_unit=True`` when the two are compared: its u^0 row is then
sum over N of degree b of 1 = q^b.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels as K
from .characters import CubicCharacter, family_array
from .exactnum import CycloNumber
from .ffield import FieldCtx
from .lfunc import hecke_l_coeffs
from .polyring import Poly, count_irreducible, enumerate_monic, factor, monic_array, prime_table

__all__ = [
    "BiSeries",
    "EulerConstants",
    "MainTerm",
    "a3_from_definition",
    "a3_from_rearrangement",
    "p_chi_series",
    "splitting",
    "euler_constants",
    "z_nsum",
    "z_product_truncated",
    "perron_extract",
    "main_term",
]

log = logging.getLogger(__name__)


class BiSeries:
    """Exact power series in u, v truncated at u^U, v^V.

    Coefficients are CycloNumbers of a common conductor m.  Sums and
    products of series with different truncations are truncated to the
    smaller orders, so nothing beyond the valid range is ever compared.
    """

    __slots__ = ("U", "V", "m", "grid", "name")

    def __init__(self, U: int, V: int, m: int = 3, grid=None, name: str = ""):
        if U < 0 or V < 0:
            raise ValueError("truncation orders must be non-negative")
        self.U, self.V, self.m, self.name = U, V, m, name
        if grid is None:
            zero = CycloNumber.from_int(m, 0)
            grid = [[zero] * (V + 1) for _ in range(U + 1)]
        self.grid = [list(row[: V + 1]) for row in grid[: U + 1]]

    @classmethod
    def one(cls, U, V, m=3):
        s = cls(U, V, m)
        s.grid[0][0] = CycloNumber.from_int(m, 1)
        return s

    @classmethod
    def from_u(cls, coeffs, U: int, m: int = 3, name=""):
        """Univariate series (V = 0) from a coefficient list in u."""
        s = cls(U, 0, m, name=name)
        for i, c in enumerate(coeffs[: U + 1]):
            s.grid[i][0] = c if isinstance(c, CycloNumber) else CycloNumber.from_fraction(m, c)
        return s

    def __getitem__(self, ij):
        i, j = ij
        return self.grid[i][j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.grid[i][j] = value

    def truncate(self, U, V):
        return BiSeries(min(U, self.U), min(V, self.V), self.m, self.grid, self.name)

    def __add__(self, other: "BiSeries"):
        U, V = min(self.U, other.U), min(self.V, other.V)
        grid = [[self.grid[i][j] + other.grid[i][j] for j in range(V + 1)] for i in range(U + 1)]
        return BiSeries(U, V, self.m, grid)

    def __neg__(self):
        return BiSeries(self.U, self.V, self.m, [[-c for c in row] for row in self.grid])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            return BiSeries(self.U, self.V, self.m, [[c * other for c in row] for row in self.grid])
        U, V = min(self.U, other.U), min(self.V, other.V)
        zero = CycloNumber.from_int(self.m, 0)
        grid = [[zero] * (V + 1) for _ in range(U + 1)]
        for i1 in range(U + 1):
            for j1 in range(V + 1):
                a = self.grid[i1][j1]
                if a.is_zero():
                    continue
                for i2 in range(U + 1 - i1):
                    row = other.grid[i2]
                    for j2 in range(V + 1 - j1):
                        b = row[j2]
                        if not b.is_zero():
                            grid[i1 + i2][j1 + j2] = grid[i1 + i2][j1 + j2] + a * b
        return BiSeries(U, V, self.m, grid)

    __rmul__ = __mul__

    def inverse(self):
        a00 = self.grid[0][0]
        if a00.is_zero():
            raise ZeroDivisionError("constant term is not invertible")
        inv00 = a00.inverse()
        out = BiSeries(self.U, self.V, self.m)
        for i in range(self.U + 1):
            for j in range(self.V + 1):
                if i == 0 and j == 0:
                    out.grid[0][0] = inv00
                    continue
                acc = CycloNumber.from_int(self.m, 0)
                for k in range(i + 1):
                    for l in range(j + 1):
                        if (k, l) != (0, 0) and not self.grid[k][l].is_zero():
                            acc = acc + self.grid[k][l] * out.grid[i - k][j - l]
                out.grid[i][j] = -(acc * inv00)
        return out

    def shift_v(self, k: int):
        """Multiply by v^k, keeping the truncation order."""
        out = BiSeries(self.U, self.V, self.m, name=self.name)
        for i in range(self.U + 1):
            for j in range(k, self.V + 1):
                out.grid[i][j] = self.grid[i][j - k]
        return out

    def widen(self, V):
        """Same series viewed with v-order V >= self.V (zeros filled in).

        Only valid for series that are genuinely polynomial in v.
        """
        out = BiSeries(self.U, V, self.m, name=self.name)
        for i in range(self.U + 1):
            for j in range(self.V + 1):
                out.grid[i][j] = self.grid[i][j]
        return out

    def first_mismatch(self, other):
        U, V = min(self.U, other.U), min(self.V, other.V)
        for i in range(U + 1):
            for j in range(V + 1):
                if self.grid[i][j] != other.grid[i][j]:
                    return (i, j)
        return None

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.U, self.V) == (other.U, other.V) and self.first_mismatch(other) is None

    def evaluate_v(self, v: complex):
        """u-coefficients with v substituted numerically."""
        return [sum(self.grid[i][j].embed() * v ** j for j in range(self.V + 1)) for i in range(self.U + 1)]

    def to_json(self):
        return {
            "U": self.U,
            "V": self.V,
            "name": self.name,
            "grid": [[c.to_json() for c in row] for row in self.grid],
        }

    def __repr__(self):
        return f"BiSeries({self.name or 'anon'}, U={self.U}, V={self.V})"


# ------------------------------------------------------------- A_3 by definition
def a3_from_definition(ctx: FieldCtx, U: int, V: int, include_unit: bool = False, condition: str = "gcd") -> BiSeries:
    """c[a][b] = sum over family F of degree a, monic N of degree b, of chi_F(N)."""
    out = BiSeries(U, V, 3, name="definition")
    if include_unit:
        for b in range(V + 1):
            out.grid[0][b] = CycloNumber.from_int(3, ctx.q ** b)
    for a in range(1, U + 1):
        Fs = family_array(ctx, 2 * a - 2, condition)
        counts = np.zeros((Fs.shape[0], V + 1, 3), np.int64)
        K.direct_nsum(np.ascontiguousarray(Fs), a, V, ctx.fq_codes, ctx.zech, ctx.omega_twist, counts)
        tot = counts.sum(axis=0)
        for b in range(V + 1):
            out.grid[a][b] = CycloNumber.from_hist(3, tot[b])
    return out


# ---------------------------------------------------------- A_3 rearranged
def splitting(P1: Poly):
    """Monic prime factors of P1 (over GF(q)) inside GF(q^2)[T]."""
    return [P for P, _ in factor(P1.as_over("q2"))]


def _inv_one_plus(label, k, U):
    """Coefficients of (1 + zeta3^label u^k)^-1 through u^U."""
    out = [CycloNumber.from_int(3, 0)] * (U + 1)
    z = CycloNumber.zeta(3, label)
    term = CycloNumber.from_int(3, 1)
    for n in range(0, U + 1, k):
        out[n] = term
        term = -(term * z)
    return out


def p_chi_series(ctx: FieldCtx, N: Poly, U: int, split_table=None) -> BiSeries:
    """P(u, chi^(N)) through u^U: product over primes P1 of GF(q)[T] of
    1 - u^deg P1 prod_{P2 | P1} (1 + chi_P2(N) u^deg P2)^-1."""
    primes, pdegs = prime_table(ctx, "q", max(U, 1))
    out = BiSeries.one(U, 0)
    for row, d in zip(primes, pdegs):
        d = int(d)
        if d > U:
            break
        P1 = Poly(ctx, row[: d + 1], "q")
        P2s = split_table[P1] if split_table is not None else splitting(P1)
        inner = BiSeries.one(U, 0)
        for P2 in P2s:
            lab = CubicCharacter(P2).label(N)
            if lab is None:
                continue
            inner = inner * BiSeries.from_u(_inv_one_plus(lab, P2.deg, U), U)
        shifted = [CycloNumber.from_int(3, 0)] * (U + 1)
        for i in range(U + 1 - d):
            shifted[i + d] = -inner.grid[i][0]
        shifted[0] = shifted[0] + 1
        out = out * BiSeries.from_u(shifted, U)
    return out


def _rearranged_term(ctx, N: Poly, U: int, split_table) -> BiSeries:
    b = hecke_l_coeffs(N, U)
    num = BiSeries.from_u(b, U)
    sq = [CycloNumber.from_int(3, 0)] * (U + 1)
    for d in range(U // 2 + 1):
        sq[2 * d] = b[d]
    term = num * BiSeries.from_u(sq, U).inverse()
    term = term * p_chi_series(ctx, N, U, split_table)
    if N.deg > 0:
        for P1, _ in factor(N):
            geo = [CycloNumber.from_int(3, 1 if i % P1.deg == 0 else 0) for i in range(U + 1)]
            term = term * BiSeries.from_u(geo, U)
    return term


def a3_from_rearrangement(ctx: FieldCtx, U: int, V: int) -> BiSeries:
    """A_3 through u^U v^V, summed over monic N of degree <= V."""
    primes, pdegs = prime_table(ctx, "q", max(U, 1))
    split_table = {}
    for row, d in zip(primes, pdegs):
        if d <= U:
            P1 = Poly(ctx, row[: int(d) + 1], "q")
            split_table[P1] = splitting(P1)
    total = BiSeries(U, V, 3, name="rearrangement")
    for n in range(V + 1):
        for N in enumerate_monic(ctx, "q", n):
            term = _rearranged_term(ctx, N, U, split_table)
            for i in range(U + 1):
                total.grid[i][n] = total.grid[i][n] + term.grid[i][0]
    return total


# ------------------------------------------------------------ Euler constants
def _p_factor(d: int, u):
    """Factor of P(u) at a prime of degree d, by its splitting type."""
    if d % 2:
        return 1 / (1 + u ** d)
    e = d // 2
    return 1 - u ** d / (1 + u ** e) ** 2


def _z_c(d: int, u):
    """c(P1) in the Euler factor 1 + c x/(1 - x) of Z at a prime of degree d."""
    if d % 2:
        inner = 1 / (1 + u ** d)
    else:
        inner = 1 / (1 + u ** (d // 2)) ** 2
    return inner / (1 - u ** d * inner)


@dataclass
class EulerConstants:
    q: int
    D: int
    P: float
    Z: float
    c_q: float
    P_increments: list
    Z_increments: list
    tail_bound: float
    certified: bool
    P_exact: Fraction | None = field(default=None, repr=False)

    def to_json(self):
        return {
            "q": self.q,
            "D": self.D,
            "P": self.P,
            "Z": self.Z,
            "c_q": self.c_q,
            "tail_bound": self.tail_bound,
            "certified": self.certified,
            "P_increments": self.P_increments,
            "Z_increments": self.Z_increments,
        }


TAIL_TARGET = 1e-10


def euler_constants(ctx: FieldCtx, D: int, exact: bool = False) -> EulerConstants:
    """P(q^-2) and Z(q^-2, q^-1/2) as Euler products over degrees 1..D.

    Each degree contributes its factor raised to the number of primes of
    that degree.  The tail bound covers all degrees beyond D for both
    products (relative error).
    """
    if D < 2:
        raise ValueError("cutoff D must be at least 2")
    q = ctx.q
    u = q ** -2.0
    logP = logZ = 0.0
    P_incr, Z_incr = [], []
    prevP = prevZ = 1.0
    Pexact = Fraction(1) if exact else None
    for d in range(1, D + 1):
        npr = count_irreducible(q, d)
        logP += npr * math.log(_p_factor(d, u))
        x = q ** (-1.5 * d)
        logZ += npr * math.log1p(_z_c(d, u) * x / (1 - x))
        Pd, Zd = math.exp(logP), math.exp(logZ)
        P_incr.append(abs(Pd - prevP))
        Z_incr.append(abs(Zd - prevZ))
        prevP, prevZ = Pd, Zd
        if exact:
            Pexact *= _p_factor(d, Fraction(1, q * q)) ** npr
    # |log factor| <= 2 |1 - factor| and #primes of degree d <= q^d / d
    tailP = 2 * q ** -(D + 1) / ((D + 1) * (1 - 1 / q))
    tailZ = 2 * q ** (-(D + 1) / 2) / ((D + 1) * (1 - q ** -0.5) * (1 - q ** -1.5))
    tail = math.expm1(tailP + tailZ)
    certified = tail < TAIL_TARGET
    if not certified:
        log.warning("cutoff D=%d leaves a tail bound %.3g above %.0e", D, tail, TAIL_TARGET)
    P, Z = math.exp(logP), math.exp(logZ)
    return EulerConstants(q, D, P, Z, (q * q - 1) * P * Z, P_incr, Z_incr, tail, certified, Pexact)


def z_nsum(ctx: FieldCtx, maxdeg: int) -> float:
    """Z(q^-2, q^-1/2) summed over monic N with deg N <= maxdeg.

    The GF(q^2) prime degrees of N come from a distinct-degree count in
    GF(q^2)[T]; the GF(q) ones from the same count over GF(q).
    """
    q = ctx.q
    u = q ** -2.0
    total = 0.0
    for n in range(maxdeg + 1):
        if n == 0:
            total += 1.0
            continue
        rows = monic_array(ctx, "q", n)
        acc = 0.0
        for row in rows:
            c1 = K.rad_prime_degrees(row, n, q, ctx.zech)
            c2 = K.rad_prime_degrees(row, n, ctx.Q, ctx.zech)
            w = 1.0
            for e in range(1, n + 1):
                if c2[e]:
                    w *= (1 + u ** e) ** -int(c2[e])
                if c1[e]:
                    inner = 1 / (1 + u ** e) if e % 2 else 1 / (1 + u ** (e // 2)) ** 2
                    w *= (1 - u ** e * inner) ** -int(c1[e])
            acc += w
        total += acc * q ** (-1.5 * n)
    return total


def z_product_truncated(ctx: FieldCtx, maxdeg: int) -> float:
    """The Euler product of Z expanded in t = v^3 and cut at t^maxdeg."""
    q = ctx.q
    u = q ** -2.0
    series = [1.0] + [0.0] * maxdeg
    for d in range(1, maxdeg + 1):
        c = _z_c(d, u)
        # factor 1 + c (t^d + t^2d + ...), raised to the prime count
        fac = [0.0] * (maxdeg + 1)
        fac[0] = 1.0
        for k in range(d, maxdeg + 1, d):
            fac[k] = c
        for _ in range(count_irreducible(q, d)):
            new = [0.0] * (maxdeg + 1)
            for i, a in enumerate(series):
                if a:
                    for j in range(0, maxdeg + 1 - i, d):
                        new[i + j] += a * fac[j]
            series = new
    return sum(a * q ** (-1.5 * n) for n, a in enumerate(series))


# ------------------------------------------------------- extraction and main term
def perron_extract(S, n: int, v: float | None = None, q: int | None = None):
    """Coefficient of u^n of A_3(u, v), v = q^-1/2 by default.

    ``S`` is a :class:`BiSeries` (exact coefficients combined with v^b) or
    a list of u-coefficients already evaluated at v.  Row 0 carries no
    family character and gives 0.
    """
    if isinstance(S, BiSeries):
        if n > S.U:
            raise ValueError(f"u^{n} exceeds the truncation order U={S.U}")
        if n == 0:
            return 0.0
        if S.V < 2 * n - 1:
            raise ValueError(f"v-order {S.V} too small: u^{n} needs v^{2 * n - 1}")
        if v is None:
            if q is None:
                raise ValueError("pass q or v")
            v = q ** -0.5
        return sum(S.grid[n][b].embed() * v ** b for b in range(S.V + 1)).real
    if n >= len(S):
        raise ValueError(f"u^{n} exceeds the truncation order")
    return 0.0 if n == 0 else S[n]


@dataclass(frozen=True)
class MainTerm:
    g: int
    value: float  # q^g (q^2 - 1) P Z
    literal_value: float  # q^g (1 - q^2) P Z

    def to_json(self):
        return {"g": self.g, "M": self.value, "M_literal_sign": self.literal_value}


def main_term(ctx: FieldCtx, g: int, constants: EulerConstants) -> MainTerm:
    if g < 0 or g % 2:
        raise ValueError("genus must be even and non-negative")
    q = ctx.q
    base = q ** g * constants.P * constants.Z
    return MainTerm(g, base * (q * q - 1), base * (1 - q * q))
