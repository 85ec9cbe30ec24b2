"""Compiled per-replicate generators for both sides of every identity.

Each function maps ``(side_seed, i, t, n, x, eps, trunc, max_tries, variant)``
to one row of functional values for replicate ``i``.  Row layouts are fixed by
the column lists in :mod:`bridge_transforms.identities`.
"""

import numpy as np
from numba import njit

from . import _kernels as K

_jit = njit(cache=True, nogil=True)

NB = K.N_BATTERY

VARIANT_NONE = 0
VARIANT_ENDPOINT_SHIFT = 1
VARIANT_DROP_CAP = 2
ENDPOINT_SHIFT = 0.5


@_jit
def _seed(side_seed, i):
    return K.derive(side_seed, np.uint64(i))


@_jit
def _const(t, c):
    ts = np.empty(2)
    ts[0] = 0.0
    ts[1] = t
    return ts, np.full(2, c)


@_jit
def _radial(t, n, seed):
    b1, b2, b3 = K.bm3_values(t, n, seed)
    return b1, b2, b3, K.norm3(b1, b2, b3)


# Refined samplers: the uniform grid plus exact bisections near running
# extremes and zero, drawn from the replicate's stream 7.  A positive
# ``band`` also refines around the edges of the occupation band.


@_jit
def _line(x, t, n, s, bridge, band):
    ts = K.uniform_times(t, n)
    comps = np.empty((1, n + 1))
    if bridge:
        comps[0] = K.bridge_values(x, t, n, K.derive(s, np.uint64(0)))
    else:
        comps[0] = K.bm_values(t, n, K.derive(s, np.uint64(0)))
    rules = K.RULES_ALL | K.RULE_BAND if band > 0.0 else K.RULES_ALL
    ts, comps = K.refine(ts, comps, K.derive(s, np.uint64(7)), False, rules, K.REFINE_LEVELS, band)
    return ts, comps[0].copy()


@_jit
def _radial_refined(x, t, n, s, meander):
    ts = K.uniform_times(t, n)
    if meander:
        comps = K.meander_components(x, t, n, K.derive(s, np.uint64(0)))
    else:
        b1, b2, b3 = K.bm3_values(t, n, K.derive(s, np.uint64(0)))
        comps = np.empty((3, n + 1))
        comps[0] = b1
        comps[1] = b2
        comps[2] = b3
    ts, comps = K.refine(ts, comps, K.derive(s, np.uint64(7)), True, K.RULES_RADIAL, K.REFINE_LEVELS, 0.0)
    return ts, comps[0].copy(), K.norm3(comps[0], comps[1], comps[2])


@_jit
def _abs_plus_band(ts, vs, eps):
    ats, avs = K.abs_path(ts, vs)
    lts, lvs = K.band_occupation(ts, vs, eps)
    fts, fvs = K.lincomb(ats, avs, 1.0, lts, lvs, 1.0)
    return fts, fvs, ats, avs


# ------------------------------------------------------------ Pitman, 3-d


@_jit
def pitman3d_left(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts, vs = _line(0.0, t, n, s, False, 0.0)
    pts, pvs = K.pitman(ts, vs)
    row = np.empty(NB + 1)
    K.battery(pts, pvs, ts, vs, row)
    row[NB] = 0.0
    return row


@_jit
def pitman3d_right(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts, b1, r = _radial_refined(0.0, t, n, s, False)
    if variant == VARIANT_DROP_CAP:
        sts, svs = K.running_max(ts, r, -1.0, True)
        qts, qvs = K.lincomb(sts, svs, 2.0, ts, r, -1.0)
    else:
        qts, qvs = K.l_transform(ts, r, b1[-1])
    row = np.empty(NB + 1)
    K.battery(ts, r, qts, qvs, row)
    row[NB] = qvs[qvs.shape[0] - 1] - b1[-1]
    return row


# ------------------------------------------------------- Pitman, bridges


@_jit
def pitman_bridge_left(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    end = x + ENDPOINT_SHIFT if variant == VARIANT_ENDPOINT_SHIFT else x
    ts, vs = _line(end, t, n, s, True, 0.0)
    pts, pvs = K.pitman(ts, vs)
    row = np.empty(NB + 1)
    K.battery(pts, pvs, ts, vs, row)
    row[NB] = vs[-1] - x
    return row


@_jit
def pitman_bridge_right(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts, b1, m = _radial_refined(x, t, n, s, True)
    qts, qvs = K.l_transform(ts, m, x)
    row = np.empty(NB + 1)
    K.battery(ts, m, qts, qvs, row)
    row[NB] = qvs[qvs.shape[0] - 1] - x
    return row


@_jit
def meander_cond_left(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts = K.uniform_times(t, n)
    m = K.meander_values(x, t, n, K.derive(s, np.uint64(0)))
    zts, zvs = _const(t, 0.0)
    row = np.empty(NB + 1)
    K.battery(ts, m, zts, zvs, row)
    row[NB] = max(0.0, abs(x) - m[n])
    return row


@_jit
def meander_cond_right(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts = K.uniform_times(t, n)
    m, used = K.conditioned_meander_values(abs(x), t, n, K.derive(s, np.uint64(0)), max_tries)
    if m.shape[0] == 0:
        raise ValueError("conditioned meander: rejection budget exhausted")
    zts, zvs = _const(t, 0.0)
    row = np.empty(NB + 1)
    K.battery(ts, m, zts, zvs, row)
    row[NB] = max(0.0, abs(x) - m[n])
    return row


# -------------------------------------------------------------- Levy side


@_jit
def levy3d_left(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts, vs = _line(0.0, t, n, s, False, eps)
    fts, fvs, ats, avs = _abs_plus_band(ts, vs, eps)
    row = np.empty(NB + 1)
    K.battery(fts, fvs, ats, avs, row)
    row[NB] = avs[avs.shape[0] - 1] - abs(vs[-1])
    return row


@_jit
def levy3d_right(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts, b1, r = _radial_refined(0.0, t, n, s, False)
    qts, qvs = K.radial_gap(ts, r, abs(b1[-1]))
    row = np.empty(NB + 1)
    K.battery(ts, r, qts, qvs, row)
    row[NB] = qvs[qvs.shape[0] - 1] - abs(b1[-1])
    return row


@_jit
def levy_bridge_left(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts, vs = _line(x, t, n, s, True, eps)
    fts, fvs, ats, avs = _abs_plus_band(ts, vs, eps)
    row = np.empty(NB + 1)
    K.battery(fts, fvs, ats, avs, row)
    row[NB] = avs[avs.shape[0] - 1] - abs(x)
    return row


@_jit
def levy_bridge_right(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts, b1, m = _radial_refined(x, t, n, s, True)
    qts, qvs = K.radial_gap(ts, m, abs(x))
    row = np.empty(NB + 1)
    K.battery(ts, m, qts, qvs, row)
    row[NB] = qvs[qvs.shape[0] - 1] - abs(x)
    return row


@_jit
def levy_bridge_t_right(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts, vs = _line(-abs(x), t, n, s, True, 0.0)
    pts, pvs = K.pitman(ts, vs)
    qts, qvs = K.levy_second(ts, vs)
    row = np.empty(NB + 1)
    K.battery(pts, pvs, qts, qvs, row)
    row[NB] = qvs[qvs.shape[0] - 1] - abs(x)
    return row


# ------------------------------------------------------------ lemmas


@_jit
def global_inf_left(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts = K.uniform_times(t, n)
    s0 = K.derive(s, np.uint64(0))
    b1, b2, b3, r = _radial(t, n, s0)
    fmin = K.future_radial_min(b1, b2, b3, t, n, trunc, s0)
    cts, cvs = _const(t, fmin)
    row = np.empty(NB + 1)
    K.battery(ts, r, cts, cvs, row)
    row[NB] = fmin / r[n]
    return row


@_jit
def global_inf_right(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts = K.uniform_times(t, n)
    b1, b2, b3, r = _radial(t, n, K.derive(s, np.uint64(0)))
    u = K.uniform_at(K.derive(s, np.uint64(1)), 0)
    cts, cvs = _const(t, u * r[n])
    row = np.empty(NB + 1)
    K.battery(ts, r, cts, cvs, row)
    row[NB] = u
    return row


@_jit
def radial_terminal_left(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts = K.uniform_times(t, n)
    b1, b2, b3, r = _radial(t, n, K.derive(s, np.uint64(0)))
    v = 2.0 * K.uniform_at(K.derive(s, np.uint64(1)), 0) - 1.0
    cts, cvs = _const(t, v * r[n])
    row = np.empty(NB + 1)
    K.battery(ts, r, cts, cvs, row)
    row[NB] = v
    return row


@_jit
def radial_terminal_right(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts = K.uniform_times(t, n)
    b1, b2, b3, r = _radial(t, n, K.derive(s, np.uint64(0)))
    cts, cvs = _const(t, b1[n])
    row = np.empty(NB + 1)
    K.battery(ts, r, cts, cvs, row)
    row[NB] = b1[n] / r[n]
    return row


# ---------------------------------------------------------- scalar cases


@_jit
def tau_gamma_left(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts, vs = _line(x, t, n, s, True, eps)
    lts, lvs = K.band_occupation(ts, vs, eps)
    tau = K.first_hit_half(lts, lvs)
    gam = K.last_return(ts, vs)
    row = np.empty(3)
    row[0] = tau
    row[1] = gam
    row[2] = tau + gam
    return row


@_jit
def tau_gamma_right(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts, vs = _line(-abs(x), t, n, s, True, 0.0)
    sig = K.first_argmax(ts, vs)
    gam = K.last_return(ts, vs)
    row = np.empty(3)
    row[0] = sig
    row[1] = gam
    row[2] = sig + gam
    return row


@_jit
def sphere_left(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    z = np.empty(3)
    K.fill_normals(K.derive(s, np.uint64(0)), 0, z)
    row = np.empty(1)
    row[0] = z[0] / np.sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2])
    return row


@_jit
def sym_uniform_side(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    row = np.empty(1)
    row[0] = 2.0 * K.uniform_at(K.derive(s, np.uint64(0)), 0) - 1.0
    return row


@_jit
def abs_v_left(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    row = np.empty(1)
    row[0] = abs(2.0 * K.uniform_at(K.derive(s, np.uint64(0)), 0) - 1.0)
    return row


@_jit
def uniform_side(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    row = np.empty(1)
    row[0] = K.uniform_at(K.derive(s, np.uint64(0)), 0)
    return row


# -------------------------------------------------------- weighted cases
# last column is the importance weight (1 on unweighted sides)


@_jit
def imhof_left(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts = K.uniform_times(t, n)
    m = K.meander_values(0.0, t, n, K.derive(s, np.uint64(0)))
    zts, zvs = _const(t, 0.0)
    row = np.empty(NB + 1)
    K.battery(ts, m, zts, zvs, row)
    row[NB] = 1.0
    return row


@_jit
def imhof_right(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts = K.uniform_times(t, n)
    b1, b2, b3, r = _radial(t, n, K.derive(s, np.uint64(0)))
    zts, zvs = _const(t, 0.0)
    row = np.empty(NB + 1)
    K.battery(ts, r, zts, zvs, row)
    row[NB] = np.sqrt(np.pi * t / 2.0) / r[n]
    return row


@_jit
def rce_left(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts, vs = _line(x, t, n, s, True, 0.0)
    pts, pvs = K.pitman(ts, vs)
    zts, zvs = _const(t, 0.0)
    row = np.empty(NB + 1)
    K.battery(pts, pvs, zts, zvs, row)
    row[NB] = 1.0
    return row


@_jit
def rce_right(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts, b1, r = _radial_refined(0.0, t, n, s, False)
    zts, zvs = _const(t, 0.0)
    row = np.empty(NB + 1)
    K.battery(ts, r, zts, zvs, row)
    row[NB] = 1.0 / (2.0 * r[-1]) if r[-1] >= abs(x) else 0.0
    return row


# ------------------------------------------------------ local-time check


@_jit
def band_terminal(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    ts = K.uniform_times(t, n)
    vs = K.bridge_values(x, t, n, K.derive(s, np.uint64(0)))
    lts, lvs = K.band_occupation(ts, vs, eps)
    row = np.empty(1)
    row[0] = lvs[lvs.shape[0] - 1]
    return row


@_jit
def meander_terminal(side_seed, i, t, n, x, eps, trunc, max_tries, variant):
    s = _seed(side_seed, i)
    m = K.meander_values(x, t, n, K.derive(s, np.uint64(0)))
    row = np.empty(1)
    row[0] = m[n]
    return row
