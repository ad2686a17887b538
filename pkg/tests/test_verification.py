import math

import numpy as np
import pytest

from rwast import rwa
from rwast.distributions import IntervalBeta, uniform
from rwast.errors import DomainError
from rwast.rng import make_rng
from rwast.verification import (
    DEFAULT_SUITE,
    MomentError,
    UnknownCheck,
    SeedRecord,
    VerificationReport,
    VerifyConfig,
    ks_critical,
    ks_statistic,
    ks_two_sample,
    moment_compare,
    parse_check,
    run_checks,
    verify_theorem,
)

N = 100_000
SMALL = VerifyConfig(sample_count=20_000)


class TestKS:
    def test_single_sample_at_median(self):
        assert ks_statistic(np.array([0.5]), lambda x: x) == 0.5

    @pytest.mark.parametrize("n", [1, 7, 100])
    def test_samples_at_mid_quantiles(self, n):
        x = (np.arange(1, n + 1) - 0.5) / n
        assert ks_statistic(x, lambda t: t) == pytest.approx(0.5 / n, abs=1e-15)

    def test_critical_value(self):
        assert ks_critical(N, 1e-3) == pytest.approx(math.sqrt(math.log(2000) / (2 * N)))
        assert ks_critical(N) == pytest.approx(0.00616, abs=1e-5)
        assert ks_critical(N) * math.sqrt(N) <= 1.95

    @pytest.mark.parametrize("seed", range(5))
    def test_uniform_draws_pass(self, seed):
        x = np.sort(make_rng(seed).random(N))
        assert ks_statistic(x, lambda t: t) <= 1.95 / math.sqrt(N)

    def test_empty(self):
        with pytest.raises(DomainError):
            ks_statistic(np.array([]), lambda t: t)

    def test_two_sample(self):
        assert ks_two_sample(np.array([0.1, 0.2]), np.array([0.1, 0.2])) == 0.0
        assert ks_two_sample(np.array([0.0, 1.0]), np.array([2.0, 3.0])) == 1.0

    @pytest.mark.parametrize("seed", range(3))
    def test_against_scipy(self, seed):
        stats = pytest.importorskip("scipy.stats")
        g = make_rng(seed)
        law = IntervalBeta(2.0, 0.7, -1.0, 2.0)
        x = np.sort(law.sample(g, 2000))
        ref = stats.kstest(x, stats.beta(2.0, 0.7, loc=-1.0, scale=3.0).cdf).statistic
        assert ks_statistic(x, law.cdf) == pytest.approx(ref, abs=1e-12)
        y = g.normal(size=1500)
        ref2 = stats.ks_2samp(x, y).statistic
        assert ks_two_sample(x, y) == pytest.approx(ref2, abs=1e-12)


class TestMoments:
    def test_self_consistency(self):
        dist = IntervalBeta(2.5, 0.7, -1, 3)
        for m in moment_compare(dist.sample(make_rng(1), N), dist, 4):
            assert m.abs_error <= 5 * m.std_error

    def test_detects_wrong_law(self):
        errs = moment_compare(uniform().sample(make_rng(2), N), IntervalBeta(2, 2), 2)
        order2 = errs[1]
        assert order2.order == 2
        # E[U^2] = 1/3 against 3/10 for beta(2,2)
        assert abs(order2.abs_error - 1 / 30) < 0.005
        assert order2.abs_error > 5 * order2.std_error

    def test_empty(self):
        assert moment_compare(np.array([0.5, 0.6]), uniform(), 0) == []


def _report(**kw):
    base = dict(check_id="x", z_grid_max_abs_err=0.0, ks_statistic=0.001, ks_critical=0.006,
                moment_errors=(MomentError(1, 0.001, 0.001),), sample_count=10,
                seed=SeedRecord(1, "x"), config=VerifyConfig())
    base.update(kw)
    return VerificationReport(**base)


class TestReport:
    def test_pass_rule(self):
        assert _report().passed
        assert not _report(z_grid_max_abs_err=1e-7).passed
        assert not _report(ks_statistic=0.01).passed
        assert not _report(moment_errors=(MomentError(1, 0.006, 0.001),)).passed
        assert not _report(z_grid_max_abs_err=math.inf).passed

    def test_known_discrepancy_does_not_fail(self):
        r = _report(formula_max_abs_err=0.5, known_discrepancy=True)
        assert r.formula_verdict == "KNOWN-DISCREPANCY" and r.passed
        assert not _report(formula_max_abs_err=0.5).passed

    def test_lines_are_tab_separated(self):
        for line in _report().lines():
            assert len(line.split("\t")) == 4


class TestVerifyTheorem:
    def test_symmetric_family_passes(self):
        p = rwa.RwaProblem.from_blocks((1, 2), [IntervalBeta(1.5, 1.5), IntervalBeta(2.5, 2.5)])
        r = verify_theorem(p, VerifyConfig(), 42, check_id="t")
        assert r.source == "thm_3_1" and r.law == IntervalBeta(3.5, 3.5)
        assert r.passed, r.lines()

    def test_needs_a_target(self):
        p = rwa.RwaProblem.from_blocks((1, 2), [IntervalBeta(0.5, 0.5), IntervalBeta(1.5, 2.5)])
        with pytest.raises(DomainError):
            verify_theorem(p, SMALL, 1)

    def test_wrong_target_fails(self):
        p = rwa.RwaProblem.from_blocks((2, 2), [IntervalBeta(1, 1)] * 2)
        r = verify_theorem(p, VerifyConfig(), 3, expected=IntervalBeta(2.25, 2))
        assert not r.identity_ok and not r.ks_ok and not r.passed

    def test_deterministic(self):
        a = run_checks(["thm3.1:r=1,2", "example4.2:m=2"], SMALL, 7, workers=2)
        b = run_checks(["thm3.1:r=1,2", "example4.2:m=2"], SMALL, 7, workers=1)
        assert [r.lines() for r in a] == [r.lines() for r in b]

    def test_example_4_2_flags_formula(self):
        (r,) = run_checks(["example4.2:m=2"], VerifyConfig(), 42)
        assert r.formula_verdict == "KNOWN-DISCREPANCY"
        assert r.formula_at_zero == pytest.approx(math.sqrt(2) - 1, rel=1e-12)
        assert r.identity_ok
        assert any(line.endswith("KNOWN-DISCREPANCY") for line in r.lines())


class TestParsing:
    def test_canonical_ids(self):
        assert parse_check("thm3.1:r=1,2").check_id == "thm3.1:r=1,2:support=0,1"
        assert parse_check("thm3.2:r=1,2,3:s=1/2,1,3/2").check_id == (
            "thm3.2:r=1,2,3:s=0.5,1,1.5:support=0,1")
        assert parse_check("cor3.2:n=3").check_id == "cor3.2:n=3:sigma=1"

    @pytest.mark.parametrize("name", ["nope", "thm3.1", "thm3.1:r=1,2:color=red", "thm3.1:r",
                                      "thm3.2:r=1,2:s=0.5", "cor3.2:n=1.5", "example4.1:m=1",
                                      "thm3.1:r=1:path=sideways"])
    def test_rejects(self, name):
        with pytest.raises(DomainError):
            parse_check(name)

    def test_unknown_family_type(self):
        with pytest.raises(UnknownCheck):
            parse_check("thm9.9:r=1")

    def test_default_suite_parses(self):
        assert len({parse_check(n).check_id for n in DEFAULT_SUITE}) == len(DEFAULT_SUITE)
