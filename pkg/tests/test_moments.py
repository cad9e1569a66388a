import json

import pytest

from ffcubic.cache import Cache
from ffcubic.moments import (
    CHUNK,
    BudgetError,
    _checkpoint_key,
    compute_moment,
    cross_validate,
    family_cost,
    scaling_table,
)
from ffcubic.series import euler_constants


@pytest.fixture(scope="module")
def consts(ctx):
    return euler_constants(ctx, 30)


@pytest.fixture(scope="module")
def g4(ctx, consts):
    return compute_moment(ctx, 4, constants=consts)


class TestComputeMoment:
    def test_genus0(self, ctx, consts):
        r = compute_moment(ctx, 0, constants=consts)
        assert r.family_size == 20 and r.C == [20, -20]
        assert r.S == pytest.approx(20 * (1 - 5 ** -0.5), rel=1e-15)

    def test_genus2(self, ctx, consts):
        r = compute_moment(ctx, 2, constants=consts)
        assert r.C == [480, 0, -480, 0]
        assert r.S == 384.0 and r.family_size % 2 == 0

    def test_genus4(self, g4):
        assert g4.family_size == 12120
        assert g4.C == [12120, -120, -600, 60600, -12000, -60000]
        # every L has a trivial zero at u = 1
        assert sum(g4.C) == 0
        assert all(isinstance(c, int) for c in g4.C)

    def test_normalised_deltas(self, g4):
        assert g4.delta == g4.S - g4.M
        assert g4.delta_over_q_7g8 == pytest.approx(g4.delta / 5 ** 3.5)

    def test_jobs_do_not_change_report(self, ctx, consts, g4):
        r = compute_moment(ctx, 4, jobs=3, constants=consts)
        assert json.dumps(r.to_json()) == json.dumps(g4.to_json())

    def test_timing_is_opt_in(self, ctx, consts):
        r = compute_moment(ctx, 0, constants=consts)
        assert "run" not in r.to_json()
        t = compute_moment(ctx, 0, constants=consts, timing=True, jobs=2)
        assert t.run["jobs"] == 2 and t.run["backend"] in ("numba", "python")

    def test_odd_genus(self, ctx):
        with pytest.raises(ValueError):
            compute_moment(ctx, 3)

    def test_budget(self, ctx):
        assert family_cost(ctx, 6) == 390625
        with pytest.raises(BudgetError):
            compute_moment(ctx, 6)
        with pytest.raises(BudgetError):
            compute_moment(ctx, 4, ceiling=100)


class TestCheckpoint:
    def test_resume(self, ctx, consts, g4, tmp_path):
        cache = Cache(tmp_path)
        compute_moment(ctx, 4, constants=consts, cache=cache)
        key = _checkpoint_key(ctx, 4, "gcd", CHUNK)
        rows = Cache(tmp_path).load(key)
        assert [r["chunk"] for r in rows] == [0, 1]
        # keep only the first chunk and resume
        cache2 = Cache(tmp_path)
        cache2.store(key, rows[:1])
        r = compute_moment(ctx, 4, constants=consts, cache=Cache(tmp_path))
        assert r.to_json() == g4.to_json()


    def test_resume_reads_checkpoint(self, ctx, consts, g4, tmp_path):
        """A marked checkpoint row shows up in the result, so chunk 0 is not recomputed."""
        cache = Cache(tmp_path)
        compute_moment(ctx, 4, constants=consts, cache=cache)
        key = _checkpoint_key(ctx, 4, "gcd", CHUNK)
        rows = cache.load(key)
        rows[0]["sum"][0][0] += 1
        Cache(tmp_path).store(key, rows[:1])
        r = compute_moment(ctx, 4, constants=consts, cache=Cache(tmp_path))
        assert r.C[0] == g4.C[0] + 1 and r.C[1:] == g4.C[1:]


class TestScalingAndCrossValidation:
    def test_scaling_table(self, ctx, consts):
        rows = scaling_table(ctx, [0, 2], constants=consts)
        assert [r["g"] for r in rows] == [0, 2]
        assert rows[1]["M"] / rows[0]["M"] == pytest.approx(25)
        assert rows[1]["rel_delta"] < rows[0]["rel_delta"]

    def test_relative_gap_shrinks(self, ctx, consts, g4):
        r2 = compute_moment(ctx, 2, constants=consts)
        assert abs(g4.delta) / g4.M < abs(r2.delta) / r2.M

    def test_cross_validate(self, ctx):
        assert cross_validate(ctx, 0).ok
        cv = cross_validate(ctx, 2)
        assert cv.ok and cv.family_count == 480

    def test_prime_only_reading_fails(self, ctx):
        cv = cross_validate(ctx, 2, "prime-only")
        assert not cv.ok
        assert cv.family_count - cv.direct_count == 10 == len(cv.surplus)
        assert all(F.in_base() for F in cv.surplus)
        assert cv.to_json()["ok"] is False
