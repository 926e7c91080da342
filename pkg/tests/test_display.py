import numpy as np
import pytest

from fovkit import (
    ClassifierConfig,
    DisplaySpec,
    DisplaySpecError,
    OffAxisDegradation,
    Tier,
    build_rdf,
    gaze_invariance_range,
    load_bundled_spec,
    make_adf,
    perceived_profile,
    rdf_eval,
)


def uniform(res, half_fov, **kw):
    return DisplaySpec(name="u", tiers=(Tier(resolution_cpd=res, half_fov_deg=half_fov),), **kw)


def two_tier(hi, hi_fov, lo, lo_fov, blend=0.0, steer=0.0):
    inner = Tier(
        resolution_cpd=hi,
        half_fov_deg=hi_fov,
        steerable=steer > 0,
        steer_range_deg=steer,
        blend_width_deg=blend,
    )
    return DisplaySpec(
        name="t", tiers=(inner, Tier(resolution_cpd=lo, half_fov_deg=lo_fov))
    )


class TestInvariants:
    def test_tier_validation(self):
        with pytest.raises(DisplaySpecError, match="resolution"):
            Tier(resolution_cpd=0.0, half_fov_deg=10.0)
        with pytest.raises(DisplaySpecError, match="blend"):
            Tier(resolution_cpd=5.0, half_fov_deg=10.0, blend_width_deg=11.0)
        with pytest.raises(DisplaySpecError, match="steer"):
            Tier(resolution_cpd=5.0, half_fov_deg=10.0, steerable=True, steer_range_deg=0.0)
        with pytest.raises(DisplaySpecError, match="steer"):
            Tier(resolution_cpd=5.0, half_fov_deg=10.0, steerable=False, steer_range_deg=5.0)

    def test_spec_needs_tiers(self):
        with pytest.raises(DisplaySpecError, match="at least one tier"):
            DisplaySpec(name="x", tiers=())

    def test_spec_orderings(self):
        with pytest.raises(DisplaySpecError, match="non-increasing resolution"):
            DisplaySpec(
                name="x",
                tiers=(
                    Tier(resolution_cpd=5.0, half_fov_deg=10.0),
                    Tier(resolution_cpd=6.0, half_fov_deg=20.0),
                ),
            )
        with pytest.raises(DisplaySpecError, match="extents"):
            DisplaySpec(
                name="x",
                tiers=(
                    Tier(resolution_cpd=10.0, half_fov_deg=20.0),
                    Tier(resolution_cpd=5.0, half_fov_deg=10.0),
                ),
            )

    def test_blend_band_must_fit_between_edges(self):
        with pytest.raises(DisplaySpecError, match="blend band"):
            DisplaySpec(
                name="x",
                tiers=(
                    Tier(resolution_cpd=30.0, half_fov_deg=16.0),
                    # band [15, 18] would reach inside the 16 deg inner edge
                    Tier(resolution_cpd=7.2, half_fov_deg=18.0, blend_width_deg=3.0),
                ),
            )

    def test_degradation_validation(self):
        with pytest.raises(DisplaySpecError, match="first degradation breakpoint"):
            OffAxisDegradation(kind="piecewise-linear", breakpoints=((1.0, 1.0),))
        with pytest.raises(DisplaySpecError, match="non-increasing"):
            OffAxisDegradation(
                kind="piecewise-linear", breakpoints=((0.0, 1.0), (5.0, 0.5), (9.0, 0.8))
            )
        with pytest.raises(DisplaySpecError, match="strictly increase"):
            OffAxisDegradation(
                kind="piecewise-linear", breakpoints=((0.0, 1.0), (5.0, 0.9), (5.0, 0.8))
            )
        with pytest.raises(DisplaySpecError, match="no breakpoints"):
            OffAxisDegradation(kind="none", breakpoints=((0.0, 1.0),))


class TestBuildRdf:
    def test_uniform_profile(self):
        rdf = build_rdf(uniform(5.4, 50.0))
        assert rdf_eval(rdf, 0.0) == 5.4
        assert rdf_eval(rdf, 20.0) == 5.4
        assert rdf_eval(rdf, 50.0) == 5.4
        assert rdf_eval(rdf, 50.1) == 0.0
        assert rdf.extent_deg == 50.0

    def test_step_profile(self):
        rdf = build_rdf(load_bundled_spec("varjo_vr1"))
        assert rdf_eval(rdf, 10.0) == 30.0
        assert rdf_eval(rdf, 16.0) == 30.0  # inset edge belongs to the inset
        assert rdf_eval(rdf, 20.0) == 7.2
        assert rdf_eval(rdf, 60.0) == 0.0

    def test_blend_ramp(self):
        spec = two_tier(30.0, 16.0, 7.2, 50.0)
        blended = DisplaySpec(
            name="b",
            tiers=(
                Tier(resolution_cpd=30.0, half_fov_deg=16.0, blend_width_deg=3.0),
                spec.tiers[1],
            ),
        )
        rdf = build_rdf(blended)
        assert rdf_eval(rdf, 13.0) == pytest.approx(30.0)
        assert rdf_eval(rdf, 14.5) == pytest.approx((30.0 + 7.2) / 2)
        assert rdf_eval(rdf, 16.0) == pytest.approx(7.2)
        assert rdf_eval(rdf, 12.9) == 30.0

    def test_degradation_multiplies_profile(self):
        spec = uniform(
            10.0,
            20.0,
            degradation=OffAxisDegradation(
                kind="piecewise-linear", breakpoints=((0.0, 1.0), (20.0, 0.5))
            ),
        )
        rdf = build_rdf(spec)
        assert rdf_eval(rdf, 0.0) == pytest.approx(10.0)
        assert rdf_eval(rdf, 10.0) == pytest.approx(7.5)
        assert rdf_eval(rdf, 20.0) == pytest.approx(5.0)

    def test_negative_eccentricity_rejected(self):
        rdf = build_rdf(uniform(5.4, 50.0))
        with pytest.raises(ValueError):
            rdf_eval(rdf, -1.0)


class TestPerceived:
    def test_gaze_zero_is_the_on_axis_profile(self):
        for name in ("vive", "varjo_vr1", "kim", "hololens"):
            spec = load_bundled_spec(name)
            assert perceived_profile(spec, 0.0) == build_rdf(spec)

    def test_static_inset_shrinks_on_the_worst_side(self):
        p = perceived_profile(load_bundled_spec("varjo_vr1"), 10.0)
        assert p.eval(6.0) == 30.0
        assert p.eval(6.1) == 7.2
        assert p.extent_deg == pytest.approx(40.0)

    def test_steered_inset_keeps_its_full_span(self):
        p = perceived_profile(load_bundled_spec("kim"), 10.0)
        assert p.eval(15.0) == 30.0
        assert p.eval(15.1) == 3.0

    def test_steering_saturates_beyond_its_range(self):
        p = perceived_profile(load_bundled_spec("kim"), 20.0)  # steer range is 18
        assert p.eval(13.0) == 30.0  # inset trails by 2 deg
        assert p.eval(13.1) == 3.0

    def test_gaze_sign_is_canonicalised(self):
        spec = load_bundled_spec("varjo_vr1")
        assert perceived_profile(spec, -10.0) == perceived_profile(spec, 10.0)

    def test_profile_nonnegative_and_zero_outside(self):
        spec = load_bundled_spec("vive")
        p = perceived_profile(spec, 7.0)
        es = np.linspace(0.0, 90.0, 901)
        vals = p.eval_many(es)
        assert np.all(vals >= 0.0)
        assert np.all(vals[es > p.extent_deg + 1e-9] == 0.0)


class TestGazeInvariance:
    def test_wide_uniform_display_reaches_the_cap(self):
        cfg = ClassifierConfig()
        spec = uniform(30.0, cfg.invariance_extent + cfg.full_gaze_range)
        adf = make_adf("constant-fovea", "20/20")
        assert gaze_invariance_range(spec, adf, cfg) == cfg.full_gaze_range

    def test_static_inset_range_matches_the_geometry_oracle(self):
        # Scanned oracle: the change becomes noticeable once the worst-side
        # inset edge (16 - g) moves inside the eccentricity where the falloff
        # still exceeds the surround by more than the tolerance.
        cfg = ClassifierConfig()
        adf = make_adf("constant-fovea", "20/20")
        reach = gaze_invariance_range(load_bundled_spec("varjo_vr1"), adf, cfg)
        threshold = 75.0 / (7.2 + cfg.noticeability_tol) - 0.5  # eccentricity of falloff = 7.45
        expected = np.floor((16.0 - threshold) / cfg.gaze_scan_step) * cfg.gaze_scan_step
        assert reach == pytest.approx(expected, abs=1e-9)
        assert reach == pytest.approx(6.4, abs=1e-9)

    def test_degraded_panel_fails_quickly(self):
        cfg = ClassifierConfig()
        adf = make_adf("constant-fovea", "20/20")
        assert gaze_invariance_range(load_bundled_spec("vive"), adf, cfg) < 5.0

    def test_visible_edge_fails_immediately(self):
        cfg = ClassifierConfig()
        adf = make_adf("constant-fovea", "20/20")
        assert gaze_invariance_range(load_bundled_spec("hololens"), adf, cfg) == 0.0
