"""Exact arithmetic in Q(zeta_m).

Elements are stored as an integer coefficient vector on the power basis
1, z, ..., z^(phi(m)-1) plus a positive common denominator.  Character values
(cube roots of unity) and additive-character values (p-th roots of unity)
all live in Z[zeta_3p], so every Gauss sum and L-coefficient is exact.
"""
from __future__ import annotations

import cmath
import functools
import math
from fractions import Fraction

__all__ = ["CycloNumber", "cyclotomic_poly", "zeta"]


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple:
    """Integer coefficients of Phi_m, constant term first."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1]
        out[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    assert not any(a), "non-exact cyclotomic division"
    return out


def _reduce(coeffs, m):
    """Reduce an integer polynomial in z modulo Phi_m."""
    phi = cyclotomic_poly(m)
    n = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, n - 1, -1):
        top = c[i]
        if top:
            base = i - n
            for j in range(n):
                c[base + j] -= top * phi[j]
            c[i] = 0
    c = c[:n]
    if len(c) < n:
        c.extend([0] * (n - len(c)))
    return c


def _euler_phi(m):
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


class CycloNumber:
    """An exact element of Q(zeta_m)."""

    __slots__ = ("m", "num", "den")

    def __init__(self, m: int, coeffs=(), den: int = 1, _reduced: bool = False):
        if m < 1:
            raise ValueError("conductor must be positive")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        num = list(coeffs) if _reduced else _reduce(coeffs, m)
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = den
        for c in num:
            g = math.gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.m = m
        self.num = tuple(num)
        self.den = den

    # construction -------------------------------------------------------
    @classmethod
    def from_int(cls, m, n):
        return cls(m, [n])

    @classmethod
    def from_fraction(cls, m, x):
        x = Fraction(x)
        return cls(m, [x.numerator], x.denominator)

    @classmethod
    def zeta(cls, m, k=1):
        coeffs = [0] * m
        coeffs[k % m] = 1
        return cls(m, coeffs)

    @classmethod
    def from_hist(cls, m, hist):
        """sum_k hist[k] * zeta_m^k for a length-m integer histogram."""
        if len(hist) != m:
            raise ValueError("histogram length must equal m")
        return cls(m, [int(h) for h in hist])

    # coercion -----------------------------------------------------------
    def lift(self, L):
        """Same number viewed in Q(zeta_L); requires m | L."""
        if L == self.m:
            return self
        if L % self.m:
            raise ValueError(f"cannot lift from m={self.m} to m={L}")
        step = L // self.m
        coeffs = [0] * (step * (len(self.num) - 1) + 1)
        for i, c in enumerate(self.num):
            coeffs[i * step] = c
        return CycloNumber(L, coeffs, self.den)

    def _coerce(self, other):
        if isinstance(other, CycloNumber):
            if other.m == self.m:
                return self, other
            L = self.m * other.m // math.gcd(self.m, other.m)
            return self.lift(L), other.lift(L)
        if isinstance(other, (int, Fraction)):
            return self, CycloNumber.from_fraction(self.m, other)
        return None

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
        return CycloNumber(a.m, num, a.den * b.den, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.m, [-c for c in self.num], self.den, _reduced=True)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[0] + (-pair[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        prod = [0] * (len(a.num) + len(b.num) - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        prod[i + j] += x * y
        return CycloNumber(a.m, prod, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[0] * pair[1].inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloNumber.from_int(self.m, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def galois(self, k: int):
        """Apply the automorphism zeta -> zeta^k (gcd(k, m) = 1)."""
        m = self.m
        if math.gcd(k, m) != 1:
            raise ValueError("k must be a unit mod m")
        coeffs = [0] * m
        for i, c in enumerate(self.num):
            coeffs[(i * k) % m] += c
        return CycloNumber(m, coeffs, self.den)

    def conj(self):
        return self.galois(-1 % self.m) if self.m > 2 else self

    def norm(self) -> Fraction:
        """Field norm down to Q."""
        prod = self
        for k in range(2, self.m):
            if math.gcd(k, self.m) == 1:
                prod = prod * self.galois(k)
        return prod.to_fraction()

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_m)")
        others = CycloNumber.from_int(self.m, 1)
        for k in range(2, self.m):
            if math.gcd(k, self.m) == 1:
                others = others * self.galois(k)
        return others * (1 / (self * others).to_fraction())

    def abs_squared(self):
        return self * self.conj()

    # predicates / conversion ----------------------------------------------
    def is_zero(self):
        return not any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self.num[0] if self.num else 0, self.den)

    def is_integer(self):
        return self.is_rational() and self.den == 1

    def __int__(self):
        f = self.to_fraction()
        if f.denominator != 1:
            raise ValueError("not an integer")
        return f.numerator

    def embed(self) -> complex:
        return self.embed_with_bound()[0]

    def embed_with_bound(self):
        """Complex value at zeta_m = exp(2*pi*i/m) and an absolute error bound."""
        m = self.m
        if self.is_rational():
            x = self.to_fraction()
            v = float(x)
            # float() rounds correctly; the bound is 0 when x is representable
            return complex(v), float(abs(Fraction(v) - x))
        acc = 0j
        l1 = 0
        for i, c in enumerate(self.num):
            if c:
                acc += c * cmath.exp(2j * math.pi * i / m)
                l1 += abs(c)
        n = max(len(self.num), 1)
        bound = 4.0 * n * 2.0 ** -52 * l1 / self.den
        return acc / self.den, bound

    def __complex__(self):
        return self.embed()

    def __eq__(self, other):
        pair = self._coerce(other) if isinstance(other, (CycloNumber, int, Fraction)) else None
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        if self.is_rational():
            return hash(self.to_fraction())
        return hash((self.m, self.num, self.den))

    def sort_key(self):
        return (self.m, self.den, self.num)

    def to_json(self):
        return {"m": self.m, "num": list(self.num), "den": self.den}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["m"], obj["num"], obj.get("den", 1))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.num):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        body = " + ".join(terms) or "0"
        if self.den != 1:
            body = f"({body})/{self.den}"
        return f"CycloNumber[m={self.m}]({body})"


def zeta(m, k=1):
    return CycloNumber.zeta(m, k)


def phi_m(m):
    return _euler_phi(m)
