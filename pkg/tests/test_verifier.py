
import numpy as np
import pytest

import oracles
from entropy_bounds.entropy import binary_entropy, conditional_entropy
from entropy_bounds.settings import (
    KeyPointKind,
    fano_family_setting,
    key_point_setting,
    mirrored_extremal_setting,
    symmetric_noise_setting,
    upper_extremal_setting,
)
from entropy_bounds.types import DiagramPoint, DomainError, make_priors
from entropy_bounds.verifier import (
    BLOCK_SIZE,
    _Partial,
    SamplerConfig,
    _conditional_entropy_array,
    _sample_arrays,
    admissibility_probe,
    brute_force_max_h,
    brute_force_min_h,
    certify_bounds,
    certify_settings,
    derivative_check,
    mi_finite_difference,
    sample_setting,
    setting_slacks,
    tightness_report,
)

P = make_priors(0.8)
H_02 = 0.7219280948873623


class TestSampler:
    def test_deterministic(self):
        cfg = SamplerConfig(seed=3, n_samples=10)
        assert sample_setting(cfg, 4) == sample_setting(cfg, 4)
        assert sample_setting(cfg, 4) != sample_setting(cfg, 5)
        assert sample_setting(SamplerConfig(4, 10), 4) != sample_setting(cfg, 4)

    def test_fixed_priors(self):
        cfg = SamplerConfig(seed=1, n_samples=5, priors=P)
        assert sample_setting(cfg, 0).priors == P

    def test_free_priors_range_and_validity(self):
        cfg = SamplerConfig(seed=9, n_samples=2000)
        for i in range(cfg.n_samples):
            s = sample_setting(cfg, i)
            assert 0.01 <= s.priors.p1 <= 0.99

    def test_uniformity(self):
        cfg = SamplerConfig(seed=5, n_samples=200_000)
        p1, p2, e1, e2 = _sample_arrays(cfg, np.arange(cfg.n_samples))
        u = e1 / p1
        assert abs(u.mean() - 0.5) < 0.005
        hist, _ = np.histogram(u, bins=10, range=(0, 1))
        assert hist.min() > 0.97 * cfg.n_samples / 10

    def test_index_independent_of_batch(self):
        cfg = SamplerConfig(seed=11, n_samples=100)
        whole = _sample_arrays(cfg, np.arange(100))
        part = _sample_arrays(cfg, np.arange(40, 60))
        for a, b in zip(whole, part):
            assert np.array_equal(a[40:60], b)

    def test_config_validation(self):
        with pytest.raises(DomainError):
            SamplerConfig(1, 0)
        with pytest.raises(DomainError):
            SamplerConfig(1, 10, tolerance=0)
        with pytest.raises(DomainError):
            sample_setting(SamplerConfig(1, 10), 10)


def test_vectorised_entropy_matches_scalar_route():
    cfg = SamplerConfig(seed=21, n_samples=5000)
    arrays = _sample_arrays(cfg, np.arange(cfg.n_samples))
    h = _conditional_entropy_array(*arrays)
    for i in range(cfg.n_samples):
        assert abs(h[i] - conditional_entropy(sample_setting(cfg, i))) <= 1e-12


class TestCertify:
    def test_small_run_clean(self):
        r = certify_bounds(SamplerConfig(seed=42, n_samples=50_000))
        assert r.samples_checked == 50_000
        assert r.violations == 0
        assert r.max_violation <= 1e-9

    def test_fixed_priors_run(self):
        r = certify_bounds(SamplerConfig(seed=1, n_samples=20_000, priors=P))
        assert r.violations == 0

    def test_parallel_matches_serial(self):
        cfg = SamplerConfig(seed=8, n_samples=3 * BLOCK_SIZE + 17)
        assert certify_bounds(cfg, workers=1) == certify_bounds(cfg, workers=3)

    def test_fano_equality_sample(self):
        slack = setting_slacks(symmetric_noise_setting(0.3))
        assert abs(slack["fano"]) <= 1e-10

    def test_analytical_equality_sample(self):
        slack = setting_slacks(upper_extremal_setting(P, 0.1))
        assert abs(slack["analytical"]) <= 1e-10

    def test_violation_accounting(self):
        slacks = np.array([[0.1, -2e-9, 0.0], [0.2, 0.3, -5e-10], [0.0, 0.1, -3e-3]])
        part = _Partial.of(slacks, 1e-9)
        assert part.count == 3
        assert part.violations == 2  # samples 1 and 2; sample 0 only touches a bound
        assert part.worst == (-2e-9, -5e-10, -3e-3)
        merged = part.merge(_Partial.of(slacks[:, :1], 1e-9))
        assert (merged.count, merged.violations) == (4, 2)

    def test_every_constructor_output_touches_a_bound(self):
        settings = [
            fano_family_setting(P, 0.05),
            upper_extremal_setting(P, 0.15),
            symmetric_noise_setting(0.7),
            mirrored_extremal_setting(P, 0.9),
        ]
        for kind in KeyPointKind:
            balanced = kind.name.startswith("A_") and kind is not KeyPointKind.A_PRIME
            settings.append(key_point_setting(kind, make_priors(0.5) if balanced else P))
        report = certify_settings(settings)
        assert report.violations == 0
        for row in report.details["slacks"]:
            assert min(abs(v) for v in row) <= 1e-9


class TestOracles:
    def test_min_reproduces_analytical_curve(self):
        r = brute_force_min_h(P, 0.1)
        assert r.extremal_h == pytest.approx(0.2754887502163468, abs=1e-6)
        assert r.arg_e2 <= 1e-4
        assert r.abs_gap <= 1e-6

    def test_min_perfect(self):
        assert brute_force_min_h(P, 0.0, 100).extremal_h == 0.0

    def test_min_balanced_corner(self):
        r = brute_force_min_h(make_priors(0.5), 0.5)
        assert r.extremal_h == pytest.approx(1.0, abs=1e-6)

    def test_min_domain(self):
        with pytest.raises(DomainError):
            brute_force_min_h(P, 0.3)
        with pytest.raises(DomainError):
            brute_force_min_h(P, 0.1, grid=50)

    def test_max_values(self):
        assert brute_force_max_h(P, 0.1).extremal_h == pytest.approx(0.4689955935892812, abs=1e-6)
        assert brute_force_max_h(P, 0.8).extremal_h == pytest.approx(H_02, abs=1e-6)
        balanced = brute_force_max_h(make_priors(0.5), 0.3)
        assert balanced.extremal_h == pytest.approx(0.8812908992306926, abs=1e-6)

    def test_max_outside_known_regimes_reports_scan(self):
        r = brute_force_max_h(P, 0.9)
        assert r.closed_form_h == r.extremal_h
        # relabelling the outputs maps error e to 1 - e
        assert r.extremal_h == pytest.approx(binary_entropy(0.1), abs=1e-6)


class TestMeasurements:
    def test_tightness_p_min_02(self):
        r = tightness_report(0.2, 400)
        assert r.violations == 0
        assert r.details["max_ratio"] < 1.0
        # the ratio approaches 1 towards the corner
        assert r.details["h_at_max_ratio"] == pytest.approx(0.4 * 400 / 401)
        assert r.details["max_ratio"] > 0.99
        # and falls towards 0 near the origin: the bounds meet at O only as points
        assert r.tightness_min_ratio < 0.2

    def test_tightness_balanced(self):
        r = tightness_report(0.5, 400)
        assert r.violations == 0
        assert r.details["max_ratio"] < 1.0

    def test_derivative_check_clean(self):
        r = derivative_check(10)
        assert r.samples_checked == 1000
        assert r.violations == 0
        assert r.details["largest_derivative"] < 0

    def test_finite_difference_matches_high_precision(self):
        for args in [(0.2, 0.05, 0.15), (0.3, 0.0, 0.1), (0.45, 0.1, 0.3)]:
            ref = float(oracles.mi_derivative_fd(*args))
            assert mi_finite_difference(*args) == pytest.approx(ref, abs=1e-7)


class TestProbe:
    def test_beyond_fano_not_found(self):
        r = admissibility_probe(DiagramPoint(1.0, 0.2))
        assert not r.found
        assert r.witness is None
        assert r.min_distance > 0.01

    def test_between_extremes_found(self):
        pt = DiagramPoint(0.8, 0.3)
        r = admissibility_probe(pt, make_priors(0.6))
        assert r.found
        h = conditional_entropy(r.witness)
        assert abs(h - 0.8) <= 1e-6 and abs(r.witness.e - 0.3) <= 1e-6

    def test_below_analytical_curve_not_found(self):
        # min entropy at e = 0.3 with priors (0.6, 0.4) is 0.6897
        r = admissibility_probe(DiagramPoint(0.5, 0.3), make_priors(0.6))
        assert not r.found
        assert r.min_distance > 0.0

    def test_origin(self):
        r = admissibility_probe(DiagramPoint(0.0, 0.0), P)
        assert r.found
        assert r.witness.cells == pytest.approx((0.8, 0.0, 0.0, 0.2))

    def test_free_priors_found(self):
        r = admissibility_probe(DiagramPoint(0.85, 0.3))
        assert r.found

    def test_budget(self):
        with pytest.raises(DomainError):
            admissibility_probe(DiagramPoint(0.0, 0.0), P, budget=10)
