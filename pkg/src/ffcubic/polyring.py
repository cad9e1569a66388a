"""Polynomials over GF(q) and GF(q^2): arithmetic, enumeration, factoring.

``Poly`` is an immutable coefficient tuple of field codes (constant term
first, no trailing zeros) tagged with the field it lives over: ``"q"`` or
``"q2"``.  Heavy loops delegate to :mod:`ffcubic._kernels`.
"""
from __future__ import annotations

import functools
import random
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .ffield import FieldCtx, Fq2Element

__all__ = [
    "Poly",
    "Factorization",
    "CubeDecomposition",
    "enumerate_monic",
    "factor",
    "conjugate_sigma",
    "mobius_mu",
    "euler_phi",
    "cube_decompose",
    "bracket3",
    "count_irreducible",
    "prime_table",
    "field_base",
    "digits_table",
]

FIELDS = ("q", "q2")


def field_base(ctx: FieldCtx, over: str) -> int:
    return ctx.q if over == "q" else ctx.Q


def digits_table(ctx: FieldCtx, over: str) -> np.ndarray:
    return ctx.fq_codes if over == "q" else ctx.fq2_codes


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(int(c) for c in coeffs)


class Poly:
    """Polynomial over GF(q) (``over="q"``) or GF(q^2) (``over="q2"``)."""

    __slots__ = ("ctx", "over", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs, over: str = "q2"):
        if over not in FIELDS:
            raise ValueError(f"over must be 'q' or 'q2', got {over!r}")
        self.ctx = ctx
        self.over = over
        self.coeffs = _trim(coeffs)
        if over == "q" and not all(ctx.in_base(c) for c in self.coeffs):
            raise ValueError("coefficients do not lie in GF(q)")

    # constructors ---------------------------------------------------------
    @classmethod
    def from_vecs(cls, ctx, vecs, over="q2"):
        """From canonical coefficients: ints (GF(q)) or [a, b] pairs (GF(q^2))."""
        codes = []
        for v in vecs:
            if isinstance(v, (list, tuple)):
                codes.append(ctx.from_vec(v[0] % ctx.q, v[1] % ctx.q))
            else:
                codes.append(ctx.from_vec(v % ctx.q, 0))
        return cls(ctx, codes, over)

    @classmethod
    def one(cls, ctx, over="q2"):
        return cls(ctx, (1,), over)

    @classmethod
    def T(cls, ctx, over="q2"):
        return cls(ctx, (0, 1), over)

    @classmethod
    def const(cls, ctx, c, over="q2"):
        code = c.code if isinstance(c, Fq2Element) else int(c)
        return cls(ctx, (code,), over)

    @classmethod
    def linear(cls, ctx, root, over="q2"):
        """T - root."""
        code = root.code if isinstance(root, Fq2Element) else int(root)
        return cls(ctx, (ctx.neg(code), 1), over)

    # basics ------------------------------------------------------------------
    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def arr(self, size=None) -> np.ndarray:
        n = max(len(self.coeffs), 1) if size is None else size
        out = np.zeros(n, np.int64)
        out[: len(self.coeffs)] = self.coeffs
        return out

    def _mk(self, coeffs, other=None):
        over = "q" if self.over == "q" and (other is None or other.over == "q") else "q2"
        if over == "q" and not all(self.ctx.in_base(c) for c in _trim(coeffs)):
            over = "q2"
        return Poly(self.ctx, coeffs, over)

    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, Fq2Element):
            return Poly(self.ctx, (other.code,), "q2")
        if isinstance(other, int):
            return Poly(self.ctx, (int(self.ctx.int_codes[other % self.ctx.p]),), self.over)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = list(self.coeffs), list(o.coeffs)
        n = max(len(a), len(b))
        a += [0] * (n - len(a))
        b += [0] * (n - len(b))
        return self._mk([self.ctx.add(x, y) for x, y in zip(a, b)], o)

    __radd__ = __add__

    def __neg__(self):
        return self._mk([self.ctx.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return self._mk((), o)
        out = np.zeros(self.deg + o.deg + 1, np.int64)
        K.pmul(self.arr(), self.deg, o.arr(), o.deg, self.ctx.zech, out)
        return self._mk(out, o)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly.one(self.ctx, self.over)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        if self.deg < other.deg:
            return self._mk((), other), self
        rem = list(self.coeffs)
        quo = [0] * (self.deg - other.deg + 1)
        inv_lc = ctx.inv(other.lc)
        for i in range(self.deg, other.deg - 1, -1):
            c = ctx.mul(rem[i], inv_lc)
            quo[i - other.deg] = c
            if c:
                for j, bj in enumerate(other.coeffs):
                    rem[i - other.deg + j] = ctx.sub(rem[i - other.deg + j], ctx.mul(c, bj))
        return self._mk(quo, other), self._mk(rem[: other.deg], other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if self.is_zero():
            return self
        inv = self.ctx.inv(self.lc)
        return self._mk([self.ctx.mul(c, inv) for c in self.coeffs])

    def gcd(self, other: "Poly") -> "Poly":
        if self.is_zero():
            return other.monic()
        if other.is_zero():
            return self.monic()
        g, dg = K.pgcd(self.arr(), self.deg, other.arr(), other.deg, self.ctx.zech)
        return self._mk(g[: dg + 1], other)

    def powmod(self, e: int, f: "Poly") -> "Poly":
        """self^e mod f for arbitrary non-negative Python integers e."""
        ctx = self.ctx
        df = f.deg
        base = (self % f).arr(2 * df + 1)
        dbase = (self % f).deg
        res = np.zeros(2 * df + 1, np.int64)
        res[0] = 1
        dres = 0 if df > 0 else -1
        tmp = np.zeros(2 * df + 1, np.int64)
        farr = f.arr()
        while e > 0:
            if e & 1:
                dres = K.pmulmod(res, dres, base, dbase, farr, df, ctx.zech, tmp)
                res, tmp = tmp, res
            e >>= 1
            if e:
                dbase = K.pmulmod(base, dbase, base, dbase, farr, df, ctx.zech, tmp)
                base, tmp = tmp, base
        return self._mk(res[: dres + 1], f)

    def derivative(self):
        ctx = self.ctx
        return self._mk([ctx.mul(int(ctx.int_codes[i % ctx.p]), c) for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x) -> int:
        """Value at a field code (Horner)."""
        code = x.code if isinstance(x, Fq2Element) else int(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = self.ctx.add(self.ctx.mul(acc, code), c)
        return acc

    def sigma(self) -> "Poly":
        return Poly(self.ctx, [self.ctx.frob(c) for c in self.coeffs], self.over)

    def in_base(self) -> bool:
        return all(self.ctx.in_base(c) for c in self.coeffs)

    def as_over(self, over: str) -> "Poly":
        return Poly(self.ctx, self.coeffs, over)

    def is_irreducible(self) -> bool:
        if self.deg < 1:
            return False
        if self.deg == 1:
            return True
        b = field_base(self.ctx, self.over)
        f = self.monic()
        T = Poly.T(self.ctx, self.over)
        h = T
        for _ in range(1, self.deg // 2 + 1):
            h = h.powmod(b, f)
            if f.gcd(h - T).deg > 0:
                return False
        return True

    # comparison / serialization ------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def vecs(self):
        return [int(self.ctx.vec_of_code[c]) for c in self.coeffs]

    def sort_key(self):
        return (self.deg, tuple(reversed(self.vecs())))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def to_json(self):
        if self.over == "q":
            return [self.ctx.vec(c)[0] for c in self.coeffs]
        return [list(self.ctx.vec(c)) for c in self.coeffs]

    @classmethod
    def from_json(cls, ctx, obj, over=None):
        if over is None:
            over = "q2" if any(isinstance(v, (list, tuple)) for v in obj) else "q"
        return cls.from_vecs(ctx, obj, over)

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.deg, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = self.ctx.format_code(c)
            if "+" in cs and i > 0:
                cs = f"({cs})"
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if i == 0:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return "+".join(terms)

    def __repr__(self):
        return f"Poly[{self.over}]({self})"

    @classmethod
    def parse(cls, ctx, text, over=None):
        """Parse text such as "T^2+3*T+1" or "T+(2+1*x)"."""
        s = text.replace(" ", "")
        terms, depth, cur = [], 0, ""
        for ch in s:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "+" and depth == 0:
                terms.append(cur)
                cur = ""
            else:
                cur += ch
        terms.append(cur)
        coeffs = {}
        for term in terms:
            if not term:
                continue
            if "T" in term:
                head, _, tail = term.partition("T")
                exp = int(tail[1:]) if tail.startswith("^") else 1
                head = head.rstrip("*").strip("()")
                code = 1 if head == "" else ctx.parse_code(head)
            else:
                exp, code = 0, ctx.parse_code(term.strip("()"))
            coeffs[exp] = ctx.add(coeffs.get(exp, 0), code)
        deg = max(coeffs) if coeffs else -1
        arr = [coeffs.get(i, 0) for i in range(deg + 1)]
        if over is None:
            over = "q" if all(ctx.in_base(c) for c in arr) else "q2"
        return cls(ctx, arr, over)


MonicPoly = Poly


# ---------------------------------------------------------------- enumeration
def enumerate_monic(ctx: FieldCtx, over: str, degree: int):
    """All monic polynomials of the given degree, lexicographic order."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    base = field_base(ctx, over)
    digits = digits_table(ctx, over)
    buf = np.zeros(degree + 1, np.int64)
    for idx in range(base ** degree):
        K.decode_monic(idx, degree, base, digits, buf)
        yield Poly(ctx, buf.copy(), over)


def monic_array(ctx: FieldCtx, over: str, degree: int, indices=None) -> np.ndarray:
    """(n, degree+1) code array of monic polynomials (all, or selected indices)."""
    base = field_base(ctx, over)
    digits = digits_table(ctx, over)
    if indices is None:
        indices = range(base ** degree)
    indices = list(indices)
    out = np.zeros((len(indices), degree + 1), np.int64)
    for r, idx in enumerate(indices):
        K.decode_monic(int(idx), degree, base, digits, out[r])
    return out


def count_irreducible(b: int, d: int) -> int:
    """Number of monic irreducibles of degree d over GF(b) (necklace formula)."""
    total = 0
    for k in range(1, d + 1):
        if d % k == 0:
            total += _mu_int(k) * b ** (d // k)
    return total // d


def _mu_int(n):
    res, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            res = -res
        d += 1
    return -res if n > 1 else res


@functools.lru_cache(maxsize=None)
def _prime_table_mem(q: int, over: str, D: int):
    from .ffield import make_field

    ctx = make_field(q)
    digits = digits_table(ctx, over)
    rows, degs = [], []
    for d in range(1, D + 1):
        mask = K.irreducible_mask(d, digits, ctx.zech)
        idx = np.nonzero(mask)[0]
        arr = monic_array(ctx, over, d, idx)
        padded = np.zeros((len(idx), D + 1), np.int64)
        padded[:, : d + 1] = arr
        rows.append(padded)
        degs.append(np.full(len(idx), d, np.int64))
    primes = np.concatenate(rows) if rows else np.zeros((0, D + 1), np.int64)
    pdegs = np.concatenate(degs) if degs else np.zeros(0, np.int64)
    return primes, pdegs


def prime_table(ctx: FieldCtx, over: str, D: int, cache=None):
    """All monic irreducibles of degree 1..D as (padded code array, degrees).

    ``cache`` is an optional :class:`ffcubic.cache.Cache`; tables are then
    persisted as JSON lines and reused by later runs.
    """
    if cache is not None:
        key = {"q": ctx.q, "field": over, "kind": "primes", "bound": D}
        hit = cache.load(key)
        if hit is not None:
            primes = np.array([r["coeffs"] + [0] * (D + 1 - len(r["coeffs"])) for r in hit], np.int64).reshape(-1, D + 1)
            pdegs = np.array([len(r["coeffs"]) - 1 for r in hit], np.int64)
            return primes, pdegs
        primes, pdegs = _prime_table_mem(ctx.q, over, D)
        cache.store(key, [{"coeffs": [int(c) for c in row[: d + 1]]} for row, d in zip(primes, pdegs)])
        return primes, pdegs
    return _prime_table_mem(ctx.q, over, D)


def primes_of_degree(ctx, over, d):
    primes, pdegs = prime_table(ctx, over, d)
    return [Poly(ctx, row[: d + 1], over) for row, dd in zip(primes, pdegs) if dd == d]


# --------------------------------------------------------------- factoring
@dataclass(frozen=True)
class Factorization:
    unit: int  # leading coefficient code
    factors: tuple  # ((Poly, multiplicity), ...) sorted, monic, distinct

    def expand(self, ctx, over="q2"):
        out = Poly.const(ctx, self.unit, over)
        for f, e in self.factors:
            out = out * f ** e
        return out

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def _pth_root(f: Poly) -> Poly:
    ctx = f.ctx
    p = ctx.p
    inv_exp = ctx.Q // p  # x -> x^(Q/p) inverts the p-th power map
    coeffs = [ctx.pow(c, inv_exp) if c else 0 for c in f.coeffs[::p]]
    return Poly(ctx, coeffs, f.over)


def _squarefree(f: Poly):
    if f.deg <= 0:
        return []
    p = f.ctx.p
    fp = f.derivative()
    if fp.is_zero():
        return [(h, e * p) for h, e in _squarefree(_pth_root(f))]
    out = []
    c = f.gcd(fp)
    w = f // c
    i = 1
    while w.deg > 0:
        y = w.gcd(c)
        z = w // y
        if z.deg > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if c.deg > 0:
        out.extend((h, e * p) for h, e in _squarefree(_pth_root(c.monic())))
    return out


def _ddf(f: Poly):
    b = field_base(f.ctx, f.over)
    T = Poly.T(f.ctx, f.over)
    out = []
    h = T
    d = 0
    while f.deg >= 2 * (d + 1):
        d += 1
        h = h.powmod(b, f)
        g = f.gcd(h - T)
        if g.deg > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.deg > 0:
        out.append((f.monic(), f.deg))
    return out


def _edf(f: Poly, d: int, rng: random.Random):
    if f.deg == d:
        return [f]
    ctx = f.ctx
    b = field_base(ctx, f.over)
    digits = digits_table(ctx, f.over)
    e = (b ** d - 1) // 2
    while True:
        coeffs = [int(digits[rng.randrange(b)]) for _ in range(f.deg)]
        a = Poly(ctx, coeffs, f.over)
        if a.deg < 1:
            continue
        t = a.powmod(e, f) - 1
        g = f.gcd(t)
        if 0 < g.deg < f.deg:
            return _edf(g, d, rng) + _edf(f // g, d, rng)


def factor(f: Poly, seed: int = 0) -> Factorization:
    """Complete factorization into monic irreducibles (Cantor-Zassenhaus)."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    unit = f.lc
    found = {}
    for part, e in _squarefree(f.monic()):
        for g, d in _ddf(part):
            for h in _edf(g, d, rng):
                h = h.monic()
                found[h] = found.get(h, 0) + e
    facs = tuple(sorted(found.items(), key=lambda fe: fe[0].sort_key()))
    return Factorization(unit, facs)


def conjugate_sigma(f: Poly) -> Poly:
    """Apply the Frobenius of GF(q^2)/GF(q) to every coefficient."""
    return f.sigma()


def mobius_mu(f: Poly) -> int:
    if f.deg == 0:
        return 1
    facs = factor(f)
    if any(e > 1 for _, e in facs):
        return 0
    return -1 if len(facs) % 2 else 1


def euler_phi(f: Poly) -> int:
    """|(A/f)^*| = prod |P|^(e-1) (|P| - 1)."""
    b = field_base(f.ctx, f.over)
    if f.deg == 0:
        return 1
    out = 1
    for P, e in factor(f):
        norm = b ** P.deg
        out *= norm ** (e - 1) * (norm - 1)
    return out


@dataclass(frozen=True)
class CubeDecomposition:
    f1: Poly
    f2: Poly
    f3: Poly
    f3_star: Poly

    def reconstruct(self):
        return self.f1 * self.f2 ** 2 * self.f3 ** 3


def cube_decompose(f: Poly) -> CubeDecomposition:
    """f = f1 f2^2 f3^3 with f1, f2 square-free and coprime.

    f3_star is the product of the primes dividing f3 but not f1 f2.
    """
    ctx, over = f.ctx, f.over
    one = Poly.one(ctx, over)
    f1 = f2 = f3 = star = one
    if f.deg > 0:
        for P, e in factor(f):
            r, s = e % 3, e // 3
            if r == 1:
                f1 = f1 * P
            elif r == 2:
                f2 = f2 * P
            f3 = f3 * P ** s
            if s and r == 0:
                star = star * P
    return CubeDecomposition(f1, f2, f3, star)


def bracket3(d: int) -> int:
    """The least positive integer congruent to d mod 3."""
    r = d % 3
    return 3 if r == 0 else r
