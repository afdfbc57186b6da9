"""Smoke tests for the python bindings."""

import math

import pytest

import wpgen


def quick_vessel():
    v = wpgen.VesselConfig()
    v.name = "quick"
    v.kind = wpgen.VesselKind.surface
    v.min_wp_dist = 60.0
    v.acceptance_radius = 8.0
    v.max_leg_samples = 400
    v.dt = 0.5
    v.cruise_speed = 5.0
    v.lookahead = 40.0
    v.nomoto_k = 0.1
    v.nomoto_t = 4.0
    v.max_rudder = 0.6
    v.max_rudder_rate = 0.6
    v.heading_kp = 1.5
    v.heading_kd = 7.0
    v.roll_omega = 0.8
    v.roll_zeta = 0.25
    v.roll_gain = 0.3
    return v


ROUTE = [[0.0, 0.0], [150.0, 0.0], [300.0, 60.0], [450.0, 0.0]]


def test_domain_basics():
    assert wpgen.euclidean_distance([0, 0], [3, 4]) == pytest.approx(5.0)
    assert wpgen.validate_waypoint_set(ROUTE, 60.0)
    assert not wpgen.validate_waypoint_set([[0, 0], [10, 0]], 60.0)

    bounds = wpgen.make_bounds(ROUTE, 50.0)
    assert bounds.num_variables == 6
    flat = wpgen.flatten(ROUTE)
    assert bounds.contains(flat)
    assert wpgen.decode(flat, ROUTE) == ROUTE


def test_simulate_and_objectives():
    v = quick_vessel()
    result = wpgen.simulate(v, ROUTE)
    assert result.reached_all
    assert len(result.subpaths) == 3
    assert all(sp.status == wpgen.LegStatus.completed for sp in result.subpaths)
    assert wpgen.fit_unstable(result, ROUTE) > 0.0
    assert wpgen.fit_dist_wps(ROUTE, ROUTE) == 0.0

    cats = wpgen.categorize_path(result)
    assert all(c == wpgen.SubPathClass.stable for c in cats)


def test_evaluate_death_penalty():
    ctx = wpgen.EvalContext(ROUTE, 60.0, quick_vessel())
    ok = ctx.evaluate(wpgen.flatten(ROUTE))
    assert ok is not None
    dist, unstable = ok
    assert dist == 0.0 and unstable > 0.0
    # wp2 pulled onto wp3's position: spacing violation, never simulated
    bad = wpgen.flatten(ROUTE)
    bad[0] = 200.0
    bad[1] = 40.0
    bad[2] = 250.0
    bad[3] = 10.0
    before = ctx.simulations
    if wpgen.validate_waypoint_set(wpgen.decode(bad, ROUTE), 60.0):
        pytest.skip("geometry unexpectedly valid")
    assert ctx.evaluate(bad) is None
    assert ctx.simulations == before


def test_classify_ops():
    acf = wpgen.autocorrelation([1.0, -1.0] * 50)
    assert acf[0] == 1.0
    assert acf[1] == pytest.approx(-0.99)
    sine = [math.sin(2 * math.pi * t / 40) for t in range(200)]
    assert wpgen.classify_angle_unstable(sine)
    assert not wpgen.classify_angle_unstable([0.25] * 200)
    assert wpgen.max_category_count(7) == 74


def test_stats_ops():
    assert wpgen.hypervolume_2d([[0.25, 0.25]], [1.0, 1.0]) == pytest.approx(0.5625)
    assert wpgen.mann_whitney_u([1, 2, 3], [10, 20, 30]) == pytest.approx(0.1)
    assert wpgen.vargha_delaney_a12([5, 6], [1, 2]) == 1.0
    assert wpgen.strength_of(0.71) == "large"
    assert wpgen.strength_of(0.5) == "negligible"


def test_search_runs_and_budget():
    cfg = wpgen.SearchConfig()
    cfg.population_size = 4
    cfg.max_generations = 5
    cfg.seeding = wpgen.Seeding.comb
    cfg.rng_seed = 11

    ctx = wpgen.EvalContext(ROUTE, 60.0, quick_vessel())
    rec = wpgen.nsga2_run(ctx, cfg)
    assert rec.evaluations == 20
    assert ctx.evaluations == 20
    assert len(rec.front) >= 1
    # determinism
    ctx2 = wpgen.EvalContext(ROUTE, 60.0, quick_vessel())
    rec2 = wpgen.nsga2_run(ctx2, cfg)
    assert rec.front == rec2.front

    ctx3 = wpgen.EvalContext(ROUTE, 60.0, quick_vessel())
    rs = wpgen.random_search_run(ctx3, cfg)
    assert rs.evaluations == 20
    assert rs.approach == "RS"


def test_builtin_presets():
    names = wpgen.builtin_vessel_names()
    assert names == ["mariner", "remus100", "nspauv"]
    mariner = wpgen.builtin_case_study("mariner")
    assert len(mariner.original) == 6
    assert mariner.delta == 400.0
    remus = wpgen.builtin_case_study("remus100")
    assert len(remus.original) == 7
    assert remus.delta == 150.0
    assert wpgen.derive_run_seed(1, "RS", 0) != wpgen.derive_run_seed(1, "RS", 1)
