"""The first moment of L(1/2, chi) over the genus-g family.

Coefficients are aggregated exactly: C_n = sum over family F of a_n(F) in
Z[zeta_3].  The family is closed under F -> F^sigma, which conjugates the
coefficients, so every C_n is a rational integer and the only floating
point step is S(g) = sum_n C_n q^(-n/2).
"""
from __future__ import annotations

import math
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from ._accel import backend
from .characters import enumerate_direct, family_array, family_surplus
from .ffield import FieldCtx
from .lfunc import LPolynomial, family_lcoeffs, l_coeffs, pairs_to_cyclo
from .polyring import prime_table
from .series import EulerConstants, euler_constants, main_term

__all__ = [
    "MomentReport",
    "BudgetError",
    "compute_moment",
    "scaling_table",
    "cross_validate",
    "CrossValidation",
    "family_cost",
    "DEFAULT_CEILING",
    "CHUNK",
]

DEFAULT_CEILING = 50_000  # candidate F per run without --force
CHUNK = 10_000  # characters per work unit and checkpoint


class BudgetError(RuntimeError):
    pass


def family_cost(ctx: FieldCtx, g: int) -> int:
    """Number of candidate F (all monic of degree g/2 + 1 over GF(q^2))."""
    return ctx.Q ** (g // 2 + 1)


@dataclass
class MomentReport:
    q: int
    g: int
    family_condition: str
    family_size: int
    C: list  # rational integers C_0 .. C_{g+1}
    S: float
    M: float
    M_literal_sign: float
    delta: float
    delta_over_q_5g6: float
    delta_over_q_7g8: float
    run: dict | None = field(default=None)  # jobs, backend, wall times

    def to_json(self):
        out = asdict(self)
        if out["run"] is None:
            del out["run"]
        return out


def _chunk_sum(ctx, Fs, nmax):
    arr = family_lcoeffs(ctx, Fs, nmax)
    return arr.sum(axis=0)


def _checkpoint_key(ctx, g, condition, chunk=CHUNK):
    return {
        "q": ctx.q,
        "field": "q2",
        "kind": "moment-checkpoint",
        "bound": g,
        "condition": condition,
        "chunk": chunk,
    }


def compute_moment(
    ctx: FieldCtx,
    g: int,
    jobs: int = 1,
    condition: str = "gcd",
    force: bool = False,
    cache=None,
    constants: EulerConstants | None = None,
    ceiling: int = DEFAULT_CEILING,
    timing: bool = False,
    chunk: int = CHUNK,
) -> MomentReport:
    """Sum of L(1/2, chi_F) over the family of genus g, exactly aggregated.

    Work is split into chunks of ``chunk`` characters; with ``jobs > 1`` chunks
    run on a thread pool (the kernels release the GIL).  When a cache is
    given, finished chunks are checkpointed there and a rerun resumes.
    """
    if g < 0 or g % 2:
        raise ValueError(f"genus must be even and non-negative, got {g}")
    if family_cost(ctx, g) > ceiling and not force:
        raise BudgetError(
            f"g={g} enumerates {family_cost(ctx, g)} candidates (> {ceiling}); pass --force to run it"
        )
    t0 = time.perf_counter()
    nmax = g + 1
    prime_table(ctx, "q", nmax, cache=cache)
    t_tables = time.perf_counter() - t0
    Fs = family_array(ctx, g, condition)
    t_family = time.perf_counter() - t0 - t_tables
    if chunk < 1:
        raise ValueError("chunk size must be positive")
    chunks = [Fs[i : i + chunk] for i in range(0, len(Fs), chunk)]
    done = {}
    key = _checkpoint_key(ctx, g, condition, chunk)
    if cache is not None and len(chunks) > 1:
        for row in cache.load(key) or []:
            done[row["chunk"]] = np.array(row["sum"], np.int64)
    todo = [i for i in range(len(chunks)) if i not in done]

    def work(i):
        return i, _chunk_sum(ctx, chunks[i], nmax)

    def record(i, s):
        done[i] = s
        if cache is not None and len(chunks) > 1:
            rows = [{"chunk": k, "sum": done[k].tolist()} for k in sorted(done)]
            cache.store(key, rows)

    if jobs > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for i, s in pool.map(work, todo):
                record(i, s)
    else:
        for i in todo:
            record(*work(i))
    total = np.zeros((nmax + 1, 2), np.int64)
    for i in sorted(done):
        total += done[i]
    if total[:, 1].any():
        raise ArithmeticError("aggregated coefficients are not rational integers")
    C = [int(x) for x in total[:, 0]]
    q = ctx.q
    S = math.fsum(c * q ** (-n / 2) for n, c in enumerate(C))
    if constants is None:
        constants = euler_constants(ctx, 30)
    mt = main_term(ctx, g, constants)
    delta = S - mt.value
    report = MomentReport(
        q=q,
        g=g,
        family_condition=condition,
        family_size=int(len(Fs)),
        C=C,
        S=S,
        M=mt.value,
        M_literal_sign=mt.literal_value,
        delta=delta,
        delta_over_q_5g6=delta / q ** (5 * g / 6),
        delta_over_q_7g8=delta / q ** (7 * g / 8),
    )
    if timing:
        report.run = {
            "jobs": jobs,
            "backend": backend(),
            "tables": t_tables,
            "family": t_family,
            "total": time.perf_counter() - t0,
        }
    return report


def scaling_table(ctx: FieldCtx, g_list, jobs: int = 1, constants=None, cache=None, force=False):
    """Rows (g, S, M, |S-M|, |S-M|/q^(5g/6), |S-M|/q^(7g/8))."""
    if constants is None:
        constants = euler_constants(ctx, 30)
    rows = []
    for g in g_list:
        r = compute_moment(ctx, g, jobs=jobs, constants=constants, cache=cache, force=force)
        err = abs(r.delta)
        rows.append(
            {
                "g": g,
                "S": r.S,
                "M": r.M,
                "abs_delta": err,
                "rel_delta": err / r.M,
                "abs_delta_over_q_5g6": err / ctx.q ** (5 * g / 6),
                "abs_delta_over_q_7g8": err / ctx.q ** (7 * g / 8),
            }
        )
    return rows


@dataclass
class CrossValidation:
    g: int
    condition: str
    family_count: int
    direct_count: int
    multisets_equal: bool
    surplus: list  # F admitted only by the prime-only reading

    @property
    def ok(self):
        return self.family_count == self.direct_count and self.multisets_equal

    def to_json(self):
        return {
            "g": self.g,
            "condition": self.condition,
            "family_count": self.family_count,
            "direct_count": self.direct_count,
            "multisets_equal": self.multisets_equal,
            "ok": self.ok,
            "surplus": [str(F) for F in self.surplus],
        }


def cross_validate(ctx: FieldCtx, g: int, condition: str = "gcd") -> CrossValidation:
    """Compare the F-side family with the conductor-side enumeration.

    Both sides are reduced to the multiset of exact L-polynomials.
    """
    cd = g + 2
    Fs = family_array(ctx, g, condition)
    arr = family_lcoeffs(ctx, Fs, cd - 1)
    fam = Counter(LPolynomial(ctx, cd, pairs_to_cyclo(a)).key() for a in arr)
    direct = Counter(l_coeffs(ch, nmax=cd - 1).key() for ch in enumerate_direct(ctx, g))
    surplus = family_surplus(ctx, g) if condition == "prime-only" else []
    return CrossValidation(
        g, condition, int(len(Fs)), sum(direct.values()), fam == direct, surplus
    )
