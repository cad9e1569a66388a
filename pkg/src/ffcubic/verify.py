"""Verification suites: each check recomputes a finite identity exactly.

Every check returns a :class:`CheckResult`; the CLI prints one line per
result and exits nonzero when any check fails.
"""
from __future__ import annotations

import json
import random
import tempfile
import time
from dataclasses import dataclass, field

from .cache import Cache
from .characters import CubicCharacter, enumerate_family, family_array, label_value
from .ffield import FieldCtx
from .gauss import gauss_prime_power, gauss_twisted_product, gauss_char, gauss_general
from .lfunc import LPolynomial, family_lcoeffs, functional_equation_check, pairs_to_cyclo, weil_deviation
from .moments import compute_moment, cross_validate
from .polyring import Poly, enumerate_monic, primes_of_degree
from .series import (
    a3_from_definition,
    a3_from_rearrangement,
    euler_constants,
    z_nsum,
    z_product_truncated,
)

__all__ = ["CheckResult", "SUITES", "run_suite"]


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name} {json.dumps(self.detail, sort_keys=True, default=str)}"


def _timed(name, fn, *args, **kwargs):
    t0 = time.perf_counter()
    ok, detail = fn(*args, **kwargs)
    return CheckResult(name, bool(ok), detail, time.perf_counter() - t0)


def _family_lpolys(ctx, g):
    Fs = family_array(ctx, g)
    arr = family_lcoeffs(ctx, Fs, g + 3)
    chars = [CubicCharacter(Poly(ctx, row, "q2")) for row in Fs]
    return chars, [LPolynomial(ctx, g + 2, pairs_to_cyclo(a)) for a in arr]


# ------------------------------------------------------------------- checks
def gauss_modulus(ctx: FieldCtx, genera=(0, 2)):
    """|G_{q^2}(1, F)|^2 = q^(2 deg F) for every family F."""
    bad, count = [], 0
    for g in genera:
        for ch in enumerate_family(ctx, g):
            count += 1
            if ch.F.deg and gauss_char(ch).abs_squared() != ctx.Q ** ch.F.deg:
                bad.append(str(ch.F))
    return not bad, {"checked": count, "failures": bad[:5]}


def functional_equation(ctx: FieldCtx, genera=(0, 2)):
    """Exact FE solve for every family character; literal form flagged."""
    count, bad, literal_raised = 0, [], {}
    for g in genera:
        chars, lps = _family_lpolys(ctx, g)
        raised = True
        for ch, L in zip(chars, lps):
            count += 1
            try:
                rep = functional_equation_check(ch, L)
            except ArithmeticError:
                bad.append(str(ch.F))
                continue
            if not (rep.c_abs2 == 1 and rep.c_matches_gauss and rep.reflection_ok and rep.involution_ok):
                bad.append(str(ch.F))
            raised = raised and not rep.literal_consistent
        literal_raised[g] = raised
    ok = not bad and literal_raised.get(0, True)
    return ok, {"checked": count, "failures": bad[:5], "literal_flag_raised": literal_raised}


def weil_bound(ctx: FieldCtx, genera=(0, 2), sample_g=4, sample=100, seed=0, tol=1e-8):
    """Inverse roots of L* have modulus q^(1/2); trivial zero and vanishing."""
    worst, count, structural = 0.0, 0, []
    for g in genera:
        for ch, L in zip(*_family_lpolys(ctx, g)):
            count += 1
            if not (L.vanishing_ok() and L.has_trivial_zero()):
                structural.append(str(ch.F))
            worst = max(worst, weil_deviation(L))
    if sample:
        Fs = family_array(ctx, sample_g)
        rng = random.Random(seed)
        rows = sorted(rng.sample(range(len(Fs)), min(sample, len(Fs))))
        arr = family_lcoeffs(ctx, Fs[rows], sample_g + 1)
        for a in arr:
            count += 1
            L = LPolynomial(ctx, sample_g + 2, pairs_to_cyclo(a))
            worst = max(worst, weil_deviation(L))
    return worst <= tol and not structural, {"checked": count, "max_deviation": worst, "structural_failures": structural[:5]}


def family_bijection(ctx: FieldCtx, genera=(0, 2)):
    """F-side family and conductor-side enumeration agree."""
    detail, ok = {}, True
    for g in genera:
        cv = cross_validate(ctx, g)
        detail[g] = {"family": cv.family_count, "direct": cv.direct_count, "multisets_equal": cv.multisets_equal}
        ok = ok and cv.ok
    if 0 in genera and ctx.q == 5:
        ok = ok and detail[0]["family"] == 20
    return ok, detail


def a3_rearrangement(ctx: FieldCtx, U=3, V=3):
    lhs = a3_from_definition(ctx, U, V, include_unit=True)
    rhs = a3_from_rearrangement(ctx, U, V)
    mm = lhs.first_mismatch(rhs)
    detail = {"U": U, "V": V, "first_mismatch": mm}
    if mm is not None:
        detail["definition"] = repr(lhs[mm])
        detail["rearrangement"] = repr(rhs[mm])
    return mm is None, detail


def moment_vs_main(ctx: FieldCtx, genera=(0, 2, 4), D=30, jobs=1):
    const = euler_constants(ctx, D)
    rows = {}
    for g in genera:
        r = compute_moment(ctx, g, jobs=jobs, constants=const)
        rows[g] = {"S": r.S, "M": r.M, "M_literal_sign": r.M_literal_sign, "rel": abs(r.S - r.M) / r.M}
    ok = all(r["S"] > 0 and r["M"] > 0 for r in rows.values())
    sign_flag = all(r["M_literal_sign"] * r["S"] < 0 for r in rows.values())
    ok = ok and sign_flag
    if 2 in rows and 4 in rows:
        ok = ok and rows[4]["rel"] < rows[2]["rel"]
        ceiling = ctx.q ** (7 / 8 * 4 + 2)
        ok = ok and abs(rows[4]["S"] - rows[4]["M"]) <= ceiling
    return ok, {"rows": rows, "literal_sign_disagrees": sign_flag, "certified_constants": const.certified}


def gauss_product_suite(ctx: FieldCtx, pairs=100, seed=0, max_prime_deg=2, max_i=4):
    """Twisted multiplicativity and the prime-power table over GF(q^2)."""
    rng = random.Random(seed)
    twisted_bad, n_pairs = [], 0
    digits = ctx.fq2_codes
    while n_pairs < pairs:
        d1 = rng.randint(1, 2)
        d2 = rng.randint(1, 3 - d1)
        f1 = Poly(ctx, [int(digits[rng.randrange(ctx.Q)]) for _ in range(d1)] + [1], "q2")
        f2 = Poly(ctx, [int(digits[rng.randrange(ctx.Q)]) for _ in range(d2)] + [1], "q2")
        if f1.gcd(f2).deg > 0:
            continue
        V = Poly(ctx, [int(digits[rng.randrange(ctx.Q)]) for _ in range(rng.randint(1, 3))], "q2")
        whole, first, second = gauss_twisted_product(V, f1, f2)
        n_pairs += 1
        if not (whole == first == second):
            twisted_bad.append((str(V), str(f1), str(f2)))
    cases, pp_bad = {}, []
    for dP in range(1, max_prime_deg + 1):
        for P in primes_of_degree(ctx, "q2", dP):
            while True:
                V1 = Poly(ctx, [int(digits[rng.randrange(ctx.Q)]) for _ in range(2)], "q2")
                if not V1.is_zero() and P.gcd(V1).deg == 0:
                    break
            for i in range(1, max_i + 1):
                for alpha in range(0, max_i + 1):
                    res = gauss_prime_power(V1, P, alpha, i)
                    cases[res.case] = cases.get(res.case, 0) + 1
                    if not res.ok:
                        pp_bad.append((str(P), alpha, i, res.case))
    ok = not twisted_bad and not pp_bad and set(cases) == {1, 2, 3, 4, 5}
    return ok, {
        "twisted_pairs": n_pairs,
        "twisted_failures": twisted_bad[:5],
        "prime_power_cases": dict(sorted(cases.items())),
        "prime_power_failures": pp_bad[:5],
    }


def chi_D_trivial(ctx: FieldCtx, maxdeg=3):
    """chi_D(N) = 1 for coprime D, N in GF(q)[T], D factored over GF(q^2)."""
    count, bad = 0, []
    Ns = [N for n in range(maxdeg + 1) for N in enumerate_monic(ctx, "q", n)]
    for dD in range(1, maxdeg + 1):
        for D in enumerate_monic(ctx, "q", dD):
            ch = CubicCharacter(D)
            for N in Ns:
                if D.gcd(N).deg > 0:
                    continue
                count += 1
                if ch.label_by_symbols(N) != 0:
                    bad.append((str(D), str(N)))
    return not bad, {"pairs": count, "failures": bad[:5]}


def determinism(ctx: FieldCtx, g=2, jobs=(1, 4, 8), chunk=64):
    """Byte-identical reports across worker counts and cold/warm caches.

    A small chunk size splits the family so that the thread pool and the
    checkpoint path both run.  Each worker count gets its own cache
    directory, read cold and then warm.
    """
    dumps = set()
    runs = 0
    for j in jobs:
        with tempfile.TemporaryDirectory() as tmp:
            for _ in range(2):
                r = compute_moment(ctx, g, jobs=j, cache=Cache(tmp), chunk=chunk)
                dumps.add(json.dumps(r.to_json(), sort_keys=True))
                runs += 1
    r = compute_moment(ctx, g)
    dumps.add(json.dumps(r.to_json(), sort_keys=True))
    return len(dumps) == 1, {"distinct_reports": len(dumps), "runs": runs + 1}


def euler_convergence(ctx: FieldCtx, D=30, zdeg=6, tol=1e-10, ztol=1e-8):
    ec = euler_constants(ctx, D)
    zs, zp = z_nsum(ctx, zdeg), z_product_truncated(ctx, zdeg)
    dP, dZ = ec.P_increments[-1], ec.Z_increments[-1]
    ok = dP < tol and dZ < tol and abs(zs - zp) < ztol and 0 < ec.P < 1
    return ok, {
        "P": ec.P,
        "Z": ec.Z,
        "last_P_increment": dP,
        "last_Z_increment": dZ,
        "Z_nsum": zs,
        "Z_product_truncated": zp,
        "tail_bound": ec.tail_bound,
    }


def shift_identity(ctx: FieldCtx, maxdegF=2, maxdegN=2):
    """G(N, F) = conj(chi_F(N)) G(1, F) for square-free family F, (N, F) = 1."""
    count, bad = 0, []
    Ns = [N.as_over("q2") for n in range(maxdegN + 1) for N in enumerate_monic(ctx, "q", n)]
    for dF in range(1, maxdegF + 1):
        for ch in enumerate_family(ctx, 2 * dF - 2):
            G1 = gauss_char(ch)
            for N in Ns:
                lab = ch.label(N)
                if lab is None:
                    continue
                count += 1
                lhs = gauss_general(N, ch.F)
                if lhs != G1 * label_value((-lab) % 3):
                    bad.append((str(ch.F), str(N)))
    return not bad, {"pairs": count, "failures": bad[:5]}


SUITES = {
    "gauss": [
        ("gauss_modulus", gauss_modulus),
        ("gauss_products", gauss_product_suite),
    ],
    "characters": [
        ("chi_D_trivial", chi_D_trivial),
        ("gauss_shift", shift_identity),
    ],
    "lfunc": [
        ("functional_equation", functional_equation),
        ("weil_bound", weil_bound),
    ],
    "family": [
        ("family_bijection", family_bijection),
    ],
    "series": [
        ("a3_rearrangement", a3_rearrangement),
        ("euler_convergence", euler_convergence),
    ],
    "moments": [
        ("moment_vs_main_term", moment_vs_main),
        ("determinism", determinism),
    ],
}


def run_suite(ctx: FieldCtx, suite: str):
    names = list(SUITES) if suite == "all" else [suite]
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}")
        for check_name, fn in SUITES[name]:
            yield _timed(check_name, fn, ctx)
