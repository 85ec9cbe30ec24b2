import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bridge_transforms import path_core as pc
from bridge_transforms.path_core import Path, Path3

from conftest import pl_paths


def uniform(values, horizon=None):
    values = list(values)
    return pc.make_uniform_path(horizon or len(values) - 1, values)


def at(p, s):
    return pc.eval_at(p, s)


def assert_same_function(p, q, tol=1e-12):
    ts = pc.union_times(p, q)
    np.testing.assert_allclose(at(p, ts), at(q, ts), atol=tol, rtol=0)


# ---------------------------------------------------------------- construction


def test_make_uniform_constant():
    p = pc.make_uniform_path(1.0, [0, 0])
    assert list(p.times) == [0.0, 1.0]
    assert list(p.values) == [0.0, 0.0]


def test_make_uniform_grid():
    assert list(pc.make_uniform_path(2.0, [0, 1, -1]).times) == [0.0, 1.0, 2.0]


@pytest.mark.parametrize("horizon, values", [
    (1.0, [0, math.nan]),
    (1.0, [0, math.inf]),
    (0.0, [0, 1]),
    (-1.0, [0, 1]),
    (1.0, [0]),
])
def test_make_uniform_rejects(horizon, values):
    with pytest.raises(ValueError):
        pc.make_uniform_path(horizon, values)


@pytest.mark.parametrize("ts, vs", [
    ([0.0, 1.0, 1.0], [0, 1, 2]),
    ([0.5, 1.0], [0, 1]),
    ([0.0, 2.0, 1.0], [0, 1, 2]),
    ([0.0, 1.0], [0, 1, 2]),
])
def test_path_invariants(ts, vs):
    with pytest.raises(ValueError):
        Path(np.array(ts), np.array(vs, dtype=float))


def test_path_is_immutable():
    p = uniform([0, 1, 2])
    with pytest.raises(ValueError):
        p.values[0] = 5.0


def test_path3_requires_shared_times():
    a = uniform([0, 1, 2])
    b = Path(np.array([0.0, 0.5, 2.0]), np.array([0.0, 1.0, 2.0]))
    with pytest.raises(ValueError):
        Path3(a, b, a)


# ---------------------------------------------------------------- evaluation


def test_eval_midpoint():
    assert at(Path(np.array([0.0, 1.0]), np.array([0.0, 2.0])), 0.5) == 1.0


def test_eval_second_segment():
    assert at(uniform([0, 1, -1]), 1.5) == 0.0


def test_eval_left_endpoint(zigzag):
    assert at(zigzag, 0.0) == zigzag.values[0]


@pytest.mark.parametrize("s", [-1e-9, 3.0000001, math.nan])
def test_eval_outside(zigzag, s):
    with pytest.raises(ValueError):
        at(zigzag, s)


# ---------------------------------------------------------------- extremes


def test_prefix_max_nonincreasing_input():
    q = pc.prefix_max(uniform([0, -1, -2]))
    assert np.all(q.values == 0.0)


def test_prefix_max_zigzag(zigzag):
    q = pc.prefix_max(zigzag)
    np.testing.assert_allclose(q.times, [0, 1, 2, 2 + 2 / 3, 3], atol=1e-15)
    np.testing.assert_allclose(q.values, [0, 1, 1, 1, 2], atol=1e-15)


def test_prefix_max_increasing_is_identity():
    p = uniform([0, 1])
    assert_same_function(pc.prefix_max(p), p, 0.0)


def test_suffix_constant():
    p = pc.constant_path(2.0, 3.5)
    assert np.all(pc.suffix_min(p).values == 3.5)
    assert np.all(pc.suffix_max(p).values == 3.5)


def test_suffix_min_zigzag(zigzag):
    q = pc.suffix_min(zigzag)
    assert at(q, 0.0) == -1.0
    assert at(q, 2.5) == pytest.approx(0.5, abs=1e-15)


def test_suffix_max_decreasing():
    assert at(pc.suffix_max(uniform([0, -2])), 0.0) == 0.0


# ---------------------------------------------------------------- affine & min


def test_affine_negation(zigzag):
    q = pc.affine(zigzag, -1.0, 0.0, 0.0)
    np.testing.assert_array_equal(q.values, -zigzag.values)


def test_affine_drift_builds_bridge():
    p = uniform([0.0, 0.3, -0.2, 0.0], horizon=1.0)
    q = pc.affine(p, 1.0, 0.7, 0.0)
    assert q.values[-1] == pytest.approx(0.7, abs=1e-15)
    assert q.values[0] == 0.0


def test_affine_zero_to_constant():
    q = pc.affine(pc.constant_path(1.0, 0.0), 5.0, 0.0, 2.0)
    assert np.all(q.values == 2.0)


def test_affine_rejects_nonfinite(zigzag):
    with pytest.raises(ValueError):
        pc.affine(zigzag, math.inf, 0.0, 0.0)


def test_pointwise_min_idempotent(zigzag):
    assert_same_function(pc.pointwise_min(zigzag, zigzag), zigzag, 0.0)


def test_pointwise_min_line_vs_constant():
    f = Path(np.array([0.0, 1.0]), np.array([0.0, 2.0]))
    q = pc.pointwise_min(f, pc.constant_path(1.0, 1.0))
    np.testing.assert_allclose(q.times, [0.0, 0.5, 1.0])
    np.testing.assert_allclose(q.values, [0.0, 1.0, 1.0])


def test_pointwise_min_dominating_constant(zigzag):
    assert_same_function(pc.pointwise_min(zigzag, pc.constant_path(3.0, 1e300)), zigzag, 0.0)


def test_pointwise_horizon_mismatch(zigzag):
    with pytest.raises(ValueError):
        pc.pointwise_min(zigzag, pc.constant_path(2.0, 0.0))
    with pytest.raises(ValueError):
        pc.pointwise_max(zigzag, pc.constant_path(2.0, 0.0))


# ---------------------------------------------------------------- abs, pitman, L


def test_abs_crossing():
    q = pc.abs_path(uniform([0, -1, 1]))
    np.testing.assert_allclose(q.times, [0, 1, 1.5, 2])
    np.testing.assert_allclose(q.values, [0, 1, 0, 1])


def test_abs_nonnegative_unchanged():
    p = uniform([0, 2, 1, 3])
    assert_same_function(pc.abs_path(p), p, 0.0)


def test_pitman_nonincreasing():
    p = uniform([0, -1, -1.5, -3])
    assert_same_function(pc.pitman(p), -p, 0.0)


def test_pitman_zigzag(zigzag):
    q = pc.pitman(zigzag)
    np.testing.assert_allclose(at(q, [0, 1, 2, 3]), [0, 1, 3, 2], atol=1e-15)
    np.testing.assert_allclose(at(q, 2 + 2 / 3), 1.0, atol=1e-14)
    assert np.any(np.abs(q.times - (2 + 2 / 3)) < 1e-14)


def test_pitman_nondecreasing_is_identity():
    p = uniform([0, 0.5, 0.5, 2])
    assert_same_function(pc.pitman(p), p, 0.0)


def test_l_transform_inverts_zigzag(zigzag):
    q = pc.l_transform(pc.pitman(zigzag), 2.0)
    assert_same_function(q, zigzag, 1e-14)


def test_l_transform_zero():
    q = pc.l_transform(pc.constant_path(1.0, 0.0), 0.0)
    assert np.all(q.values == 0.0)


def test_l_transform_terminal_min():
    q = pc.l_transform(pc.constant_path(1.0, 1.0), 5.0)
    assert at(q, 1.0) == 1.0


def test_l_transform_rejects_nonfinite(zigzag):
    with pytest.raises(ValueError):
        pc.l_transform(zigzag, math.nan)


def test_levy_second_zero():
    assert np.all(pc.levy_second_component(pc.constant_path(1.0, 0.0)).values == 0.0)


def test_levy_second_nondecreasing():
    q = pc.levy_second_component(uniform([0, 1, 1, 2.5]))
    assert np.all(q.values == 0.0)


def test_levy_second_hand_value():
    assert at(pc.levy_second_component(uniform([0, 1, -1])), 2.0) == 1.0


# ---------------------------------------------------------------- occupation


def test_band_constant_zero():
    q = pc.occupation_band(pc.constant_path(1.0, 0.0), 0.25)
    np.testing.assert_allclose(at(q, [0.0, 0.3, 1.0]), [0.0, 0.6, 2.0])


def test_band_line():
    q = pc.occupation_band(Path(np.array([0.0, 1.0]), np.array([0.0, 1.0])), 0.5)
    assert at(q, 1.0) == pytest.approx(0.5, abs=1e-15)


def test_band_never_entered():
    q = pc.occupation_band(uniform([1, 2, 1.5, 3]), 0.5)
    assert np.all(q.values == 0.0)


def test_band_edge_is_open():
    # flat at exactly eps: excluded; flat just inside: counted in full
    assert at(pc.occupation_band(pc.constant_path(1.0, 0.5), 0.5), 1.0) == 0.0
    assert at(pc.occupation_band(pc.constant_path(1.0, 0.4999), 0.5), 1.0) == 1.0


def test_band_rejects_eps():
    with pytest.raises(ValueError):
        pc.occupation_band(uniform([0, 1]), 0.0)


def test_density_crossing_segment():
    q = pc.occupation_density_zero(Path(np.array([0.0, 1.0]), np.array([-1.0, 1.0])))
    assert at(q, 1.0) == 0.5


def test_density_away_from_zero():
    assert np.all(pc.occupation_density_zero(uniform([1, 2, 1])).values == 0.0)


def test_density_flat_zero_errors():
    with pytest.raises(ValueError):
        pc.occupation_density_zero(uniform([0, 0, 1]))


def test_density_is_band_limit():
    rng = np.random.default_rng(3)
    for _ in range(20):
        p = uniform(np.concatenate([[0.0], np.cumsum(rng.normal(size=30))]), horizon=1.0)
        target = at(pc.occupation_density_zero(p), 1.0)
        errs = [abs(at(pc.occupation_band(p, e), 1.0) - target) for e in (1e-2, 1e-4, 1e-6)]
        assert errs[1] <= 1e-2 * (1 + target)
        assert errs[2] <= 1e-9 * (1 + target)


# ---------------------------------------------------------------- time functionals


def test_gamma_sigma_constant():
    p = pc.constant_path(2.0, 1.0)
    assert pc.gamma_last_return(p) == 2.0
    assert pc.sigma_first_argmax(p) == 0.0


def test_gamma_sigma_hand():
    p = uniform([0, 1, 0, -1])
    assert pc.gamma_last_return(p) == 2.0
    assert pc.sigma_first_argmax(p) == 1.0


def test_sigma_first_of_ties():
    assert pc.sigma_first_argmax(uniform([0, 2, 1, 2])) == 1.0


def test_gamma_interior_crossing():
    assert pc.gamma_last_return(uniform([0, -1, 3])) == pytest.approx(1.25)


def test_tau_linear():
    assert pc.tau_half(Path(np.array([0.0, 1.0]), np.array([0.0, 2.0]))) == 0.5


def test_tau_zero():
    assert pc.tau_half(pc.constant_path(1.0, 0.0)) == 0.0


def test_tau_hand():
    assert pc.tau_half(uniform([0, 0, 1, 1, 2])) == 2.0


def test_tau_rejects_decreasing():
    with pytest.raises(ValueError):
        pc.tau_half(uniform([0, 2, 1]))


# ---------------------------------------------------------------- radial


def test_radial_zero():
    z = pc.constant_path(1.0, 0.0)
    assert np.all(pc.radial3(Path3(z, z, z)).values == 0.0)


def test_radial_triple():
    r = pc.radial3(Path3(pc.constant_path(1.0, 3.0), pc.constant_path(1.0, 4.0), pc.constant_path(1.0, 0.0)))
    assert np.all(r.values == 5.0)


def test_radial_permutation():
    a, b, c = uniform([0, 1, 2]), uniform([0, -3, 1]), uniform([0, 2, 2])
    np.testing.assert_array_equal(pc.radial3(Path3(a, b, c)).values, pc.radial3(Path3(c, a, b)).values)


# ---------------------------------------------------------------- CSV


def test_csv_round_trip(zigzag):
    buf = io.StringIO()
    pc.write_path_csv(zigzag, buf)
    text = buf.getvalue()
    assert text.startswith("time,value\n") and "\r" not in text
    q = pc.read_path_csv(io.StringIO(text))
    np.testing.assert_array_equal(q.times, zigzag.times)
    np.testing.assert_array_equal(q.values, zigzag.values)


def test_csv3_round_trip():
    p3 = Path3(uniform([0, 1.1, 2]), uniform([0, -3, 1e-17]), uniform([0, 2, 2]))
    buf = io.StringIO()
    pc.write_path3_csv(p3, buf)
    q = pc.read_path3_csv(io.StringIO(buf.getvalue()))
    for a, b in zip(p3.components, q.components):
        np.testing.assert_array_equal(a.values, b.values)


def test_csv_bad_header():
    with pytest.raises(ValueError):
        pc.read_path_csv(io.StringIO("t,v\n0,0\n1,1\n"))


# ---------------------------------------------------------------- properties


@settings(max_examples=200, deadline=None)
@given(pl_paths())
def test_prefix_max_properties(p):
    q = pc.prefix_max(p)
    assert np.all(np.diff(q.values) >= 0)
    assert np.all(at(q, p.times) >= p.values)
    assert_same_function(pc.prefix_max(q), q, 0.0)
    # it is the running max at every breakpoint of either path
    for s in q.times:
        assert at(q, s) == pytest.approx(max(at(p, u) for u in np.append(p.times[p.times <= s], s)), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(pl_paths())
def test_suffix_properties(p):
    lo, hi = pc.suffix_min(p), pc.suffix_max(p)
    assert np.all(np.diff(lo.values) >= 0)
    assert np.all(np.diff(hi.values) <= 0)
    assert lo.values[-1] == p.values[-1] == hi.values[-1]
    assert np.all(at(lo, p.times) <= p.values) and np.all(at(hi, p.times) >= p.values)


@settings(max_examples=200, deadline=None)
@given(pl_paths())
def test_pitman_inversion_round_trip(p):
    q = pc.l_transform(pc.pitman(p), float(p.values[-1]))
    tol = 1e-9 * (1 + p.amplitude)
    ts = pc.union_times(p, q)
    assert np.max(np.abs(at(q, ts) - at(p, ts))) <= tol
    assert pc.pitman(p).values[0] == p.values[0]
    assert np.all(pc.pitman(p).values - at(p, pc.pitman(p).times) >= -tol)


@settings(max_examples=200, deadline=None)
@given(pl_paths())
def test_inputs_untouched(p):
    before = (p.times.copy(), p.values.copy())
    for f in (pc.prefix_max, pc.suffix_min, pc.suffix_max, pc.pitman, pc.abs_path, pc.levy_second_component):
        out = f(p)
        assert np.all(np.diff(out.times) > 0) and out.times[0] == 0.0
    np.testing.assert_array_equal(p.times, before[0])
    np.testing.assert_array_equal(p.values, before[1])


@settings(max_examples=150, deadline=None)
@given(pl_paths(), st.floats(0.01, 3.0))
def test_band_properties(p, eps):
    q = pc.occupation_band(p, eps)
    assert q.values[0] == 0.0
    assert np.all(np.diff(q.values) >= 0)
    # the band is symmetric: lambda(-p) = lambda(p)
    r = pc.occupation_band(-p, eps)
    ts = pc.union_times(q, r)
    np.testing.assert_allclose(at(q, ts), at(r, ts), atol=1e-12 * (1 + q.values[-1]))
    # no more than the elapsed time over 2 eps
    assert q.values[-1] <= p.horizon / (2 * eps) * (1 + 1e-12)


@settings(max_examples=150, deadline=None)
@given(pl_paths(min_points=3), st.randoms(use_true_random=False))
def test_reparametrization_invariance(p, rnd):
    # strictly increasing remap of the breakpoints: values of the transforms
    # at corresponding breakpoints do not move
    n = len(p)
    gaps = np.array([rnd.uniform(0.1, 2.0) for _ in range(n - 1)])
    ts2 = np.concatenate([[0.0], np.cumsum(gaps)])
    q = Path(ts2, p.values)
    for f in (pc.prefix_max, pc.suffix_min, pc.pitman):
        np.testing.assert_allclose(at(f(p), p.times), at(f(q), q.times), atol=1e-12 * (1 + p.amplitude))
    y = float(rnd.uniform(-3, 3))
    np.testing.assert_allclose(at(pc.l_transform(p, y), p.times), at(pc.l_transform(q, y), q.times),
                               atol=1e-12 * (1 + p.amplitude + abs(y)))
    for f in (pc.pitman, pc.levy_second_component):
        assert f(p).values.max() == pytest.approx(f(q).values.max(), abs=1e-12 * (1 + p.amplitude))
        assert f(p).values.min() == pytest.approx(f(q).values.min(), abs=1e-12 * (1 + p.amplitude))


@settings(max_examples=150, deadline=None)
@given(pl_paths())
def test_pointwise_extremes_bracket(p):
    q = pc.affine(p, -0.5, 0.3, 0.1)
    lo, hi = pc.pointwise_min(p, q), pc.pointwise_max(p, q)
    ts = pc.union_times(lo, hi, p, q)
    a, b = at(p, ts), at(q, ts)
    np.testing.assert_allclose(at(lo, ts), np.minimum(a, b), atol=1e-12 * (1 + p.amplitude))
    np.testing.assert_allclose(at(hi, ts), np.maximum(a, b), atol=1e-12 * (1 + p.amplitude))
