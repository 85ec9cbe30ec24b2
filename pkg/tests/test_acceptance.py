"""Acceptance criteria, one test per criterion, each recording a PASS/FAIL line.

The lines are printed in the terminal summary (see conftest.py).  The seed
sweep of criterion 2 costs hours on one core and only runs when
BRIDGE_TRANSFORMS_FULL=1 (it is also marked ``slow``).
"""

import json
import os
import re
import time

import numpy as np
import pytest

from bridge_transforms.cli import run_cli
from bridge_transforms.identities import (
    CATALOG,
    GLOBAL_INF_MAX_D,
    IdentityCase,
    check_inverse,
    check_lpit,
    check_piecewise,
    check_suff,
    checker_tolerance,
    evaluate,
    localtime_calibration,
    run_identity,
    run_weighted_identity,
    verify,
)
from bridge_transforms.samplers import RunParams
from bridge_transforms.stats import ks_one_sample, ks_pvalue, ks_two_sample

from conftest import record
from test_identities import adversarial_paths, gaussian_path, lattice_oracle, lattice_paths

XS = (0.0, -0.7, 1.3)
SUITE = (
    "THM_PITMAN_3D", "COR_PITMAN_BRIDGE", "COR_MEANDER_COND", "THM_LEVY_3D", "COR_LEVY_BRIDGE",
    "COR_LEVY_BRIDGE_T", "LEM_RADIAL_TERMINAL", "TAU_GAMMA", "SPHERE_DIRECTION", "ABSV",
)
SUITE_ALPHA = 0.001


def suite_cases(seed=42):
    for cid in SUITE:
        for x in (XS if CATALOG[cid].uses_x else (0.0,)):
            yield IdentityCase(cid, RunParams(x=x, base_seed=seed))


# ---------------------------------------------------------------- 1


def test_criterion_1_deterministic_exactness():
    start = time.perf_counter()
    rng = np.random.default_rng(1)
    paths = [gaussian_path(rng, int(rng.integers(4, 1025)), True) for _ in range(1000)]
    paths += adversarial_paths()
    worst = 0.0
    for p in paths:
        tol = checker_tolerance(p)
        for chk in (check_lpit, check_inverse, check_suff, check_piecewise):
            worst = max(worst, chk(p) / tol)
    lattice_bad = sum(lattice_oracle(v) != (0, 0) for v in lattice_paths(8))
    elapsed = time.perf_counter() - start
    ok = worst <= 1.0 and lattice_bad == 0 and elapsed < 10.0
    record(1, ok, f"worst deviation / tolerance {worst:.3g}, lattice mismatches {lattice_bad}, "
                  f"{elapsed:.1f}s")
    assert ok


# ---------------------------------------------------------------- 2


def test_criterion_2_distributional_suite():
    lines = []
    failing = []
    for case in suite_cases():
        rep = verify(case, alpha=SUITE_ALPHA)
        ks = [t.p_value for t in rep.tests if not t.fixed_rule]
        const_ok = all(t.passed for t in rep.tests if t.kind == "constant")
        lines.append(f"{case.id} x={case.params.x:+.1f}: min p {min(ks):.4f}, "
                     f"threshold {rep.threshold:.2e}, {rep.elapsed_seconds:.0f}s")
        if not (rep.overall_pass and const_ok):
            failing.append(f"{case.id} x={case.params.x:+.1f} " + ",".join(t.name for t in rep.failing()))
    for ln in lines:
        print(ln)
    ok = not failing
    record(2, ok, f"{len(lines)} cases at defaults, alpha {SUITE_ALPHA} Bonferroni"
                  + ("" if ok else f"; failing: {'; '.join(failing)}"))
    assert ok, failing


def test_criterion_2_terminal_constants_exact():
    # degenerate columns equal per replicate on both sides, at default grid
    bad = []
    for cid, x in (("THM_PITMAN_3D", 0.0), ("COR_PITMAN_BRIDGE", 1.3), ("COR_PITMAN_BRIDGE", -0.7)):
        s = run_identity(IdentityCase(cid, RunParams(x=x, replicates=2000)))
        left, right = s.column("terminal_residual")
        if np.any(left != 0.0) or np.any(right != 0.0):
            bad.append(cid)
    ok = not bad
    record("2b", ok, "terminal constants exactly equal per replicate" + (f"; {bad}" if bad else ""))
    assert ok


@pytest.mark.slow
@pytest.mark.skipif(os.environ.get("BRIDGE_TRANSFORMS_FULL") != "1",
                    reason="hours on one core; set BRIDGE_TRANSFORMS_FULL=1")
def test_criterion_2_seed_sweep():
    tests = fails = 0
    for seed in range(1, 21):
        for case in suite_cases(seed):
            rep = verify(case, alpha=SUITE_ALPHA)
            tests += len(rep.tests)
            fails += sum(not t.passed for t in rep.tests)
    rate = fails / tests
    ok = rate <= 0.05
    record("2c", ok, f"20 seeds: {fails}/{tests} individual failures = {rate:.4f} (limit 0.05)")
    assert ok


# ---------------------------------------------------------------- 3


def test_criterion_3_weighted():
    n = 100_000
    details = []
    ok = True
    for cid, x in (("IMHOF", 0.0), ("RCE", 0.0), ("RCE", -0.7), ("RCE", 1.3)):
        cmp = run_weighted_identity(IdentityCase(cid, RunParams(x=x, replicates=n)))
        zs = [r.statistic for r in cmp.results if r.kind == "weighted_z"]
        calib = cmp.results[-1]
        case_ok = all(r.passed for r in cmp.results) and max(zs, default=0.0) <= 4.0
        ok &= case_ok
        details.append(f"{cid} x={x:+.1f} max z {max(zs, default=0.0):.2f} calib {calib.statistic:.2f} SE")
    record(3, ok, "; ".join(details))
    assert ok


# ---------------------------------------------------------------- 4


def test_criterion_4_localtime():
    cal = localtime_calibration(t=1.0, n_steps=2**14, eps=2**-7, replicates=20000, seed=42)
    d = cal.ks_distance
    d_ray = ks_one_sample(cal.meander, lambda r: 1.0 - np.exp(-r * r / 2.0))
    p_ray = ks_pvalue(d_ray, cal.meander.size)
    ok = d <= 0.03 and p_ray >= 0.001
    record(4, ok, f"KS(band, meander) = {d:.4f} (limit 0.03), Rayleigh p = {p_ray:.3f}")
    assert ok


# ---------------------------------------------------------------- 5


def test_criterion_5_global_inf():
    case = IdentityCase("LEM_GLOBAL_INF", RunParams(replicates=20000, trunc_factor=256))
    s = run_identity(case)
    # left: truncated future min over R_t; right: an independent uniform
    ratio, indep_u = s.column("inf_ratio")
    d_uniform = ks_one_sample(ratio, lambda v: np.clip(v, 0.0, 1.0))
    d_two = ks_two_sample(ratio, indep_u)
    rep = evaluate(s, 0.01)
    note = next(t.note for t in rep.tests if t.name == "ks:inf_ratio")
    ok = d_two <= GLOBAL_INF_MAX_D and rep.overall_pass
    record(5, ok, f"KS(ratio, independent U) = {d_two:.4f}, vs exact uniform {d_uniform:.4f} "
                  f"(limit {GLOBAL_INF_MAX_D}); note: {note}")
    assert ratio.min() >= 0.0 and ratio.max() <= 1.0
    assert ok


# ---------------------------------------------------------------- 6


def test_criterion_6_negative_controls():
    found = {}
    for cid, variant, x in (("COR_PITMAN_BRIDGE", "endpoint-shift", 0.0), ("THM_PITMAN_3D", "drop-cap", 0.0)):
        rep = verify(IdentityCase(cid, RunParams(x=x), variant=variant), alpha=0.01)
        found[f"{cid}/{variant}"] = min(t.p_value for t in rep.tests if t.p_value is not None)
    ok = all(p < 1e-6 for p in found.values())
    record(6, ok, ", ".join(f"{k} min p {v:.2e}" for k, v in found.items()))
    assert ok


# ---------------------------------------------------------------- 7


TIMING = re.compile(rb'"(elapsed_seconds|version)": [^,\n]*')


def test_criterion_7_reproducibility(tmp_path):
    base = ["verify", "--identity", "all", "--steps", "128", "--replicates", "1000",
            "--trunc-factor", "16", "--x", "0.6"]
    outs = []
    raw = b""
    for i, threads in enumerate(("1", "1", "4")):
        out = tmp_path / f"r{i}.json"
        code = run_cli(base + ["--threads", threads, "--out", str(out)])
        assert code in (0, 1)
        raw = out.read_bytes()
        outs.append(TIMING.sub(b"", raw))
    n_reports = len(json.loads(raw))
    ok = outs[0] == outs[1] == outs[2]
    record(7, ok, f"{n_reports} reports byte-identical across reruns and thread counts 1/4 "
                  "(timing fields removed)")
    assert ok
