"""GF(q) and GF(q^2) for odd prime powers q = 2 (mod 3).

Every element of GF(q^2) is carried as an integer *code*: 0 is zero and
``k >= 1`` stands for ``g**(k-1)`` with ``g`` a fixed generator of the
multiplicative group.  Multiplication, powers, the Frobenius map and the
cubic character are then plain integer arithmetic; addition goes through a
Zech-logarithm table.  GF(q) is the subfield of codes whose log is divisible
by q + 1.

The printable form of an element is its coefficient pair (a, b) on the basis
1, x where x is a root of the fixed quadratic modulus; a and b are canonical
GF(q) representatives (integers in [0, q), base-p digits when q = p^k).
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FieldCtx",
    "Fq2Element",
    "FqElement",
    "make_field",
    "frobenius",
    "cube_roots",
    "omega_map",
    "MAX_CHARACTERISTIC",
]

MAX_CHARACTERISTIC = 31
MAX_FIELD_SIZE = 1 << 20  # bound on q^2; tables are O(q^2)


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _prime_power(q):
    fs = _prime_factors(q)
    if len(fs) != 1:
        return None
    p = fs[0]
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return p, k


class _BaseField:
    """GF(q) on integers 0..q-1 (base-p digit vectors when q = p^k)."""

    def __init__(self, p, k):
        self.p, self.k, self.q = p, k, p ** k
        self.modulus = None
        if k > 1:
            self.modulus = self._least_irreducible()

    def digits(self, a):
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def undigits(self, ds):
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        return self.undigits([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        return self.undigits([(-x) % self.p for x in self.digits(a)])

    def mul(self, a, b):
        p = self.p
        if self.k == 1:
            return (a * b) % p
        x, y = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                prod[i + j] = (prod[i + j] + xi * yj) % p
        m = self.modulus  # monic, length k + 1
        for i in range(len(prod) - 1, self.k - 1, -1):
            c = prod[i]
            if c:
                for j in range(self.k + 1):
                    prod[i - self.k + j] = (prod[i - self.k + j] - c * m[j]) % p
        return self.undigits(prod[: self.k])

    def _least_irreducible(self):
        # lexicographically least monic irreducible of degree k over GF(p),
        # coefficients compared from the top; k is odd here and small.
        p, k = self.p, self.k
        for idx in range(p ** k):
            low = []
            t = idx
            for _ in range(k):
                t, r = divmod(t, p)
                low.append(r)
            low.reverse()  # idx enumerates top coefficient first
            coeffs = low[::-1] + [1]
            if coeffs[0] == 0:
                continue
            if _is_irreducible_mod_p(coeffs, p):
                return tuple(coeffs)
        raise RuntimeError("no irreducible polynomial found")


def _is_irreducible_mod_p(coeffs, p):
    """Brute force: no monic factor of degree <= n/2 (small n only)."""
    n = len(coeffs) - 1
    for d in range(1, n // 2 + 1):
        for idx in range(p ** d):
            g = []
            t = idx
            for _ in range(d):
                t, r = divmod(t, p)
                g.append(r)
            g.append(1)
            rem = list(coeffs)
            for i in range(n, d - 1, -1):
                c = rem[i]
                if c:
                    for j in range(d + 1):
                        rem[i - d + j] = (rem[i - d + j] - c * g[j]) % p
            if not any(rem[:d]):
                return False
    return True


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """Validated context for GF(q) and GF(q^2)."""

    p: int
    q: int
    k: int
    base_modulus: tuple | None  # GF(q) over GF(p), constant first; None when q = p
    modulus: tuple  # (c0, c1, 1): x^2 + c1 x + c0 over GF(q)
    generator: int  # vector code a + b*q of the chosen generator of GF(q^2)*
    omega: int  # code of the canonical primitive cube root of unity
    omega_twist: int  # t with g^((Q-1)/3) = omega^t
    zech: np.ndarray = field(repr=False)
    vec_of_code: np.ndarray = field(repr=False)
    code_of_vec: np.ndarray = field(repr=False)
    trace_p: np.ndarray = field(repr=False)  # Tr_{GF(q^2)/GF(p)} of each code
    trace_q_p: np.ndarray = field(repr=False)  # Tr_{GF(q)/GF(p)}; valid on GF(q) codes
    fq_codes: np.ndarray = field(repr=False)  # canonical GF(q) integer -> code
    fq2_codes: np.ndarray = field(repr=False)  # canonical vector code -> code
    int_codes: np.ndarray = field(repr=False)  # n mod p -> code

    @property
    def Q(self):
        return self.q * self.q

    @property
    def qm1(self):
        return self.q * self.q - 1

    @property
    def m(self):
        """Conductor of the cyclotomic ring holding all character values."""
        return 3 * self.p

    # raw code arithmetic -------------------------------------------------
    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return (a + b - 2) % self.qm1 + 1

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        z = int(self.zech[(b - a) % self.qm1])
        if z == 0:
            return 0
        return (a + z - 2) % self.qm1 + 1

    def neg(self, a):
        if a == 0:
            return 0
        return (a - 1 + self.qm1 // 2) % self.qm1 + 1

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(q^2)")
        return (-(a - 1)) % self.qm1 + 1

    def pow(self, a, e):
        if a == 0:
            if e <= 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return 0
        return ((a - 1) * e) % self.qm1 + 1

    def frob(self, a):
        return 0 if a == 0 else ((a - 1) * self.q) % self.qm1 + 1

    def in_base(self, a):
        return a == 0 or (a - 1) % (self.q + 1) == 0

    def cubic_exponent(self, a):
        """k with a^((Q-1)/3) = Omega(e_k); None for a = 0."""
        if a == 0:
            return None
        return (self.omega_twist * (a - 1)) % 3

    def vec(self, a):
        v = int(self.vec_of_code[a])
        return v % self.q, v // self.q

    def from_vec(self, a, b=0):
        if not (0 <= a < self.q and 0 <= b < self.q):
            raise ValueError("coordinates must be canonical GF(q) integers")
        return int(self.code_of_vec[a + b * self.q])

    def element(self, a, b=0):
        return Fq2Element(self, self.from_vec(a, b))

    def fq(self, a):
        return FqElement(self, self.from_vec(a % self.q if self.k == 1 else a, 0))

    def format_code(self, a):
        x, y = self.vec(a)
        if y == 0:
            return f"{x}"
        if x == 0:
            return f"{y}*x"
        return f"{x}+{y}*x"

    def parse_code(self, text):
        text = text.replace(" ", "")
        a = b = 0
        for term in text.replace("-", "+-").split("+"):
            if not term:
                continue
            if term.endswith("x"):
                coef = term[:-1].rstrip("*")
                coef = 1 if coef in ("", "+") else (-1 if coef == "-" else int(coef))
                b += coef
            else:
                a += int(term)
        return self.from_vec(a % self.q, b % self.q)

    def all_codes(self):
        return range(self.Q)

    def base_codes(self):
        return [int(c) for c in self.fq_codes]


def _build_tables(p, k, base: _BaseField, modulus):
    q = p ** k
    Q = q * q
    c0, c1 = modulus[0], modulus[1]

    def vmul(u, v):
        a, b = u % q, u // q
        c, d = v % q, v // q
        ac = base.mul(a, c)
        bd = base.mul(b, d)
        mid = base.add(base.mul(a, d), base.mul(b, c))
        # x^2 = -c1 x - c0
        re = base.add(ac, base.neg(base.mul(bd, c0)))
        im = base.add(mid, base.neg(base.mul(bd, c1)))
        return re + im * q

    def vadd(u, v):
        return base.add(u % q, v % q) + base.add(u // q, v // q) * q

    order = Q - 1
    primes = _prime_factors(order)

    def vpow(u, e):
        r, b = 1, u
        while e:
            if e & 1:
                r = vmul(r, b)
            b = vmul(b, b)
            e >>= 1
        return r

    gen = None
    for cand in range(2, Q):
        if all(vpow(cand, order // r) != 1 for r in primes):
            gen = cand
            break
    exp = np.zeros(order, dtype=np.int64)
    x = 1
    for i in range(order):
        exp[i] = x
        x = vmul(x, gen)
    assert x == 1
    code_of_vec = np.zeros(Q, dtype=np.int64)
    vec_of_code = np.zeros(Q, dtype=np.int64)
    for i in range(order):
        code_of_vec[exp[i]] = i + 1
        vec_of_code[i + 1] = exp[i]
    zech = np.zeros(order, dtype=np.int64)
    for d in range(order):
        zech[d] = code_of_vec[vadd(1, int(exp[d]))]
    return gen, zech, vec_of_code, code_of_vec


@functools.lru_cache(maxsize=None)
def make_field(q: int) -> FieldCtx:
    """Build the context for GF(q) and GF(q^2); deterministic across runs."""
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"q must be an integer prime power, got {q!r}")
    pk = _prime_power(q)
    if pk is None:
        raise ValueError(f"q={q} is not a prime power")
    p, k = pk
    if p == 2:
        raise ValueError(f"q={q} is even; an odd prime power is required")
    if q % 3 != 2:
        raise ValueError(f"q={q} is {q % 3} mod 3; only q = 2 mod 3 (non-Kummer) is supported")
    if p > MAX_CHARACTERISTIC:
        raise ValueError(f"characteristic {p} exceeds the supported bound {MAX_CHARACTERISTIC}")
    if q * q > MAX_FIELD_SIZE:
        raise ValueError(f"q^2 = {q * q} exceeds the table bound {MAX_FIELD_SIZE}")
    base = _BaseField(p, k)

    # lexicographically least monic irreducible x^2 + c1 x + c0, c1 compared first
    modulus = None
    for c1 in range(q):
        for c0 in range(q):
            if all(base.add(base.add(base.mul(r, r), base.mul(c1, r)), c0) != 0 for r in range(q)):
                modulus = (c0, c1, 1)
                break
        if modulus:
            break
    gen, zech, vec_of_code, code_of_vec = _build_tables(p, k, base, modulus)
    Q = q * q
    qm1 = Q - 1

    def cadd(a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        z = int(zech[(b - a) % qm1])
        return 0 if z == 0 else (a + z - 2) % qm1 + 1

    trace_p = np.zeros(Q, dtype=np.int64)
    trace_q_p = np.zeros(Q, dtype=np.int64)
    for c in range(1, Q):
        acc = 0
        for i in range(2 * k):
            acc = cadd(acc, ((c - 1) * p ** i) % qm1 + 1)
        trace_p[c] = int(vec_of_code[acc])
        if (c - 1) % (q + 1) == 0:
            acc = 0
            for i in range(k):
                acc = cadd(acc, ((c - 1) * p ** i) % qm1 + 1)
            trace_q_p[c] = int(vec_of_code[acc])
    assert all(0 <= t < p for t in trace_p)

    fq_codes = np.array([code_of_vec[a] for a in range(q)], dtype=np.int64)
    int_codes = np.array([code_of_vec[n] for n in range(p)], dtype=np.int64)

    # cube roots: 1, g^((Q-1)/3), g^(2(Q-1)/3); Omega(e_1) = lexicographically least
    # primitive one by coefficient vector (c0, c1)
    third = qm1 // 3
    prim = [third + 1, 2 * third + 1]
    key = {c: (int(vec_of_code[c]) % q, int(vec_of_code[c]) // q) for c in prim}
    omega = min(prim, key=lambda c: key[c])
    twist = 1 if omega == third + 1 else 2

    return FieldCtx(
        p=p,
        q=q,
        k=k,
        base_modulus=base.modulus,
        modulus=modulus,
        generator=int(gen),
        omega=int(omega),
        omega_twist=twist,
        zech=zech,
        vec_of_code=vec_of_code,
        code_of_vec=code_of_vec,
        trace_p=trace_p,
        trace_q_p=trace_q_p,
        fq_codes=fq_codes,
        fq2_codes=code_of_vec,
        int_codes=int_codes,
    )


class Fq2Element:
    """An element of GF(q^2) with operator overloading (API convenience)."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = int(code)

    def _other(self, other):
        if isinstance(other, Fq2Element):
            if other.ctx is not self.ctx:
                raise ValueError("elements from different fields")
            return other.code
        if isinstance(other, int):
            return int(self.ctx.int_codes[other % self.ctx.p])
        return None

    def _wrap(self, code):
        return Fq2Element(self.ctx, code)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ctx.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ctx.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ctx.sub(o, self.code))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.code))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ctx.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.ctx.mul(self.code, self.ctx.inv(o)))

    def __pow__(self, e):
        return self._wrap(self.ctx.pow(self.code, e))

    def inverse(self):
        return self._wrap(self.ctx.inv(self.code))

    def __eq__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self.code == o

    def __hash__(self):
        return hash((self.ctx.q, self.code))

    def __bool__(self):
        return self.code != 0

    def is_base(self):
        return self.ctx.in_base(self.code)

    def vec(self):
        return self.ctx.vec(self.code)

    def to_json(self):
        return list(self.vec())

    def __repr__(self):
        return self.ctx.format_code(self.code)


class FqElement(Fq2Element):
    """An element of the subfield GF(q)."""

    __slots__ = ()

    def __init__(self, ctx, code):
        super().__init__(ctx, code)
        if not ctx.in_base(self.code):
            raise ValueError("element does not lie in GF(q)")


def frobenius(x: Fq2Element) -> Fq2Element:
    """x -> x^q, the generator of Gal(GF(q^2)/GF(q))."""
    return Fq2Element(x.ctx, x.ctx.frob(x.code))


def cube_roots(ctx: FieldCtx):
    third = ctx.qm1 // 3
    return {Fq2Element(ctx, 1), Fq2Element(ctx, third + 1), Fq2Element(ctx, 2 * third + 1)}


def omega_map(ctx: FieldCtx, value, inverse: bool = False):
    """Omega: abstract label e_k (k mod 3) -> cube root of unity in GF(q^2).

    With ``inverse=True`` maps a cube root of unity (Fq2Element or code) back
    to its label k in {0, 1, 2}.
    """
    if not inverse:
        k = int(value) % 3
        return Fq2Element(ctx, ctx.pow(ctx.omega, k))
    code = value.code if isinstance(value, Fq2Element) else int(value)
    for k in range(3):
        if ctx.pow(ctx.omega, k) == code:
            return k
    raise ValueError("not a cube root of unity")
