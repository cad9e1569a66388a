"""Cubic residue symbols and the primitive cubic characters chi_F.

A character value e_k = exp(2 pi i k / 3) is carried as its *label* k in
{0, 1, 2}; ``None`` stands for the value 0.  Labels add under
multiplication, which keeps every character sum an integer histogram.

Two independent routes evaluate chi_F(a):

* definition: factor F over GF(q^2) once and raise a to the power
  (q^(2 deg pi) - 1)/3 modulo each prime pi;
* resultant: chi_F(a) is the cubic character of Res(F, a) in GF(q^2)^*,
  which is what the power residue reduces to prime by prime.

The family for genus g is enumerated from the F side (square-free F over
GF(q^2) of degree g/2 + 1) and, as an oracle, from the conductor side
(square-free moduli over GF(q) and their local cubic characters).
"""
from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels as K
from .exactnum import CycloNumber
from .ffield import FieldCtx, Fq2Element, omega_map
from .polyring import Poly, digits_table, factor, monic_array, prime_table

__all__ = [
    "CubicCharacter",
    "DirectCharacter",
    "FAMILY_CONDITIONS",
    "cubic_symbol",
    "character_from_F",
    "enumerate_family",
    "family_array",
    "family_surplus",
    "enumerate_direct",
    "label_value",
]

FAMILY_CONDITIONS = ("gcd", "prime-only")


def label_value(label) -> CycloNumber:
    """The complex value of a label as an exact element of Z[zeta_3]."""
    if label is None:
        return CycloNumber.from_int(3, 0)
    return CycloNumber.zeta(3, label)


def _as_poly(ctx: FieldCtx, a, over="q2") -> Poly:
    if isinstance(a, Poly):
        return a
    if isinstance(a, Fq2Element):
        return Poly(ctx, (a.code,), over)
    if isinstance(a, int):
        return Poly(ctx, (int(ctx.int_codes[a % ctx.p]),), over)
    raise TypeError(f"cannot interpret {a!r} as a polynomial")


def _powmod_arr(ctx, a: Poly, e: int, f: Poly) -> Poly:
    if e < (1 << 62):
        r = a % f
        if r.is_zero():
            return r
        res, d = K.ppowmod(r.arr(), r.deg, e, f.arr(), f.deg, ctx.zech)
        return Poly(ctx, res[: d + 1], "q2")
    return a.powmod(e, f)


def cubic_symbol(pi: Poly, a) -> int | None:
    """Label of the cubic residue symbol chi_pi(a), or None when pi | a.

    ``pi`` must be a monic irreducible over GF(q^2).  The residue
    a^((q^(2 deg pi) - 1)/3) mod pi is a cube root of unity; its preimage
    under Omega is returned.
    """
    ctx = pi.ctx
    if pi.deg < 1:
        raise ValueError("cubic_symbol needs a prime of positive degree")
    Q = ctx.Q
    num = Q ** pi.deg - 1
    assert num % 3 == 0, "3 must divide q^(2 deg pi) - 1"
    pi2 = pi.as_over("q2")
    a = _as_poly(ctx, a).as_over("q2")
    r = _powmod_arr(ctx, a, num // 3, pi2)
    if r.is_zero():
        return None
    if r.deg != 0:
        raise ArithmeticError("power residue is not a constant; is pi irreducible?")
    return omega_map(ctx, r.coeffs[0], inverse=True)


class CubicCharacter:
    """The character chi_F attached to a monic F over GF(q^2)."""

    def __init__(self, F: Poly):
        if F.deg < 1:
            raise ValueError("F must have positive degree")
        if not F.is_monic():
            raise ValueError("F must be monic")
        self.F = F.as_over("q2")
        self.ctx = F.ctx
        self._arr = self.F.arr()
        self._symbols = {}

    @cached_property
    def factorization(self):
        return factor(self.F)

    @cached_property
    def is_squarefree(self) -> bool:
        f = self.F
        fp = f.derivative()
        return not fp.is_zero() and f.gcd(fp).deg == 0

    @cached_property
    def primitive(self) -> bool:
        """Square-free and gcd(F, F^sigma) = 1 (no divisor in GF(q)[T])."""
        return self.is_squarefree and self.F.gcd(self.F.sigma()).deg == 0

    @cached_property
    def conductor(self) -> Poly | None:
        if not self.primitive:
            return None
        return (self.F * self.F.sigma()).as_over("q")

    @property
    def genus(self) -> int | None:
        return 2 * self.F.deg - 2 if self.primitive else None

    def label(self, a) -> int | None:
        """Label of chi_F(a) by the resultant route."""
        a = _as_poly(self.ctx, a)
        if a.is_zero():
            return None
        e = K.chi_exp(self._arr, self.F.deg, a.arr(), a.deg, self.ctx.zech, self.ctx.omega_twist)
        return None if e < 0 else int(e)

    def label_by_symbols(self, a) -> int | None:
        """Label of chi_F(a) from the factorization and prime symbols."""
        a = _as_poly(self.ctx, a).as_over("q2")
        total = 0
        for pi, e in self.factorization:
            key = (pi.coeffs, (a % pi).coeffs)
            if key not in self._symbols:
                self._symbols[key] = cubic_symbol(pi, a)
            s = self._symbols[key]
            if s is None:
                return None
            total += e * s
        return total % 3

    def __call__(self, a) -> CycloNumber:
        return label_value(self.label(a))

    def conj(self) -> "CubicCharacter":
        return CubicCharacter(self.F.sigma())

    def to_json(self):
        cond = self.conductor
        return {
            "q": self.ctx.q,
            "F": self.F.to_json(),
            "conductor": cond.to_json() if cond is not None else None,
            "genus": self.genus,
        }

    @classmethod
    def from_json(cls, ctx, obj):
        return cls(Poly.from_json(ctx, obj["F"], over="q2"))

    def __repr__(self):
        return f"CubicCharacter(F={self.F})"


def character_from_F(F: Poly) -> CubicCharacter:
    return CubicCharacter(F)


# ------------------------------------------------------------- F-side family
def _check_genus(g):
    if g < 0 or g % 2:
        raise ValueError(f"genus must be even and non-negative, got {g}")
    return g // 2 + 1


@functools.lru_cache(maxsize=None)
def _family_indices(q: int, d: int, condition: str):
    from .ffield import make_field

    ctx = make_field(q)
    status = K.family_status(d, ctx.fq2_codes, ctx.zech, ctx.q, ctx.int_codes)
    good = np.nonzero(status == 1)[0]
    if condition == "gcd":
        return good
    surplus = _surplus_indices(ctx, d, status)
    return np.sort(np.concatenate([good, surplus]))


def _surplus_indices(ctx, d, status):
    """Square-free F sharing a factor with F^sigma but with no prime in GF(q)[T]."""
    cand = np.nonzero(status == 2)[0]
    out = []
    for idx, row in zip(cand, monic_array(ctx, "q2", d, cand)):
        F = Poly(ctx, row, "q2")
        if not any(pi.in_base() for pi, _ in factor(F)):
            out.append(idx)
    return np.array(out, np.int64)


def family_array(ctx: FieldCtx, g: int, condition: str = "gcd") -> np.ndarray:
    """(n, g/2+2) array of family F (codes), in enumeration order."""
    if condition not in FAMILY_CONDITIONS:
        raise ValueError(f"family condition must be one of {FAMILY_CONDITIONS}")
    d = _check_genus(g)
    return monic_array(ctx, "q2", d, _family_indices(ctx.q, d, condition))


def enumerate_family(ctx: FieldCtx, g: int, condition: str = "gcd"):
    """Family characters of genus g: monic square-free F of degree g/2+1."""
    for row in family_array(ctx, g, condition):
        yield CubicCharacter(Poly(ctx, row, "q2"))


def family_surplus(ctx: FieldCtx, g: int):
    """F admitted by the prime-only condition but rejected by the gcd one."""
    d = _check_genus(g)
    status = K.family_status(d, ctx.fq2_codes, ctx.zech, ctx.q, ctx.int_codes)
    idx = _surplus_indices(ctx, d, status)
    return [Poly(ctx, row, "q2") for row in monic_array(ctx, "q2", d, idx)]


# ------------------------------------------------------- conductor-side oracle
def _prime_divisors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _unit_generator(ctx: FieldCtx, P: Poly, rng: random.Random) -> Poly:
    """A generator of (GF(q)[T]/P)^* by random trial and order test."""
    n = ctx.q ** P.deg - 1
    rs = _prime_divisors(n)
    digits = digits_table(ctx, "q")
    while True:
        a = Poly(ctx, [int(digits[rng.randrange(ctx.q)]) for _ in range(P.deg)], "q")
        if a.is_zero():
            continue
        if all(_powmod_arr(ctx, a, n // r, P).coeffs != (1,) for r in rs):
            return a


@dataclass(frozen=True)
class _Local:
    P: Poly
    exponent: int  # (|P| - 1) / 3
    roots: tuple  # coefficient tuples of w^0, w^1, w^2 mod P
    sign: int  # 1 or 2: which of the two cubic characters of (A/P)^*


class DirectCharacter:
    """A primitive cubic character given by local data at each prime of h.

    chi(N) = prod_P chi_P(N)^s_P where chi_P(N) = k for
    N^((|P|-1)/3) = w_P^k mod P and w_P = gen_P^((|P|-1)/3).
    """

    def __init__(self, ctx: FieldCtx, locals_: tuple):
        self.ctx = ctx
        self.locals = locals_
        h = Poly.one(ctx, "q")
        for loc in locals_:
            h = h * loc.P
        self.modulus = h

    @property
    def genus(self):
        return self.modulus.deg - 2

    def label(self, N) -> int | None:
        N = _as_poly(self.ctx, N, "q")
        total = 0
        for loc in self.locals:
            r = _powmod_arr(self.ctx, N.as_over("q2"), loc.exponent, loc.P.as_over("q2"))
            if r.is_zero():
                return None
            total += loc.sign * loc.roots.index(r.coeffs)
        return total % 3

    def __call__(self, N) -> CycloNumber:
        return label_value(self.label(N))

    def __repr__(self):
        parts = ", ".join(f"{loc.P}^{loc.sign}" for loc in self.locals)
        return f"DirectCharacter({parts})"


def _local_data(ctx, P, rng):
    n = ctx.q ** P.deg - 1
    assert n % 3 == 0, "odd-degree primes carry no cubic character"
    gen = _unit_generator(ctx, P, rng)
    w = _powmod_arr(ctx, gen.as_over("q2"), n // 3, P.as_over("q2"))
    roots = ((1,), w.coeffs, (w * w % P.as_over("q2")).coeffs)
    return n // 3, roots


def enumerate_direct(ctx: FieldCtx, g: int, seed: int = 0):
    """All primitive cubic characters over GF(q)[T] with conductor degree g+2.

    Moduli are square-free products of even-degree primes; every prime
    contributes one of its two nontrivial cubic characters.
    """
    target = _check_genus(g) * 2
    rng = random.Random(seed)
    primes, pdegs = prime_table(ctx, "q", target)
    plist = [Poly(ctx, row[: d + 1], "q") for row, d in zip(primes, pdegs) if d % 2 == 0]
    # no cubic characters live at odd-degree primes: 3 does not divide q^odd - 1
    assert all((ctx.q ** d - 1) % 3 for d in range(1, target + 1, 2))
    local = {}

    def rec(start, remaining, chosen):
        if remaining == 0:
            yield tuple(chosen)
            return
        for i in range(start, len(plist)):
            P = plist[i]
            if P.deg > remaining:
                break
            chosen.append(P)
            yield from rec(i + 1, remaining - P.deg, chosen)
            chosen.pop()

    for combo in rec(0, target, []):
        for P in combo:
            if P not in local:
                local[P] = _local_data(ctx, P, rng)
        for mask in range(1 << len(combo)):
            locs = tuple(
                _Local(P, local[P][0], local[P][1], 2 if (mask >> j) & 1 else 1)
                for j, P in enumerate(combo)
            )
            yield DirectCharacter(ctx, locs)
