"""Compiled kernels for piecewise-linear paths and the counter-based generator.

Every path kernel takes a pair ``(ts, vs)`` of float64 arrays (strictly
increasing breakpoints starting at 0, values of equal length) and returns a
fresh pair.  Validation lives in :mod:`bridge_transforms.path_core`; these
functions assume valid input.
"""

import numpy as np
from numba import njit

# relative time tolerance for deduplicating breakpoints
TIME_TOL = 1e-15

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV53 = 1.0 / 9007199254740992.0
_TWO_PI = 2.0 * np.pi

_jit = njit(cache=True, nogil=True)


# ---------------------------------------------------------------- generator


@_jit
def mix64(z):
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@_jit
def derive(base, index):
    return mix64(base + (index + np.uint64(1)) * GOLDEN)


@_jit
def uniform_at(seed, k):
    """k-th uniform in [0, 1) of the stream keyed by ``seed``."""
    z = mix64(seed + (np.uint64(k) + np.uint64(1)) * GOLDEN)
    return (z >> _S11) * _INV53


@_jit
def fill_normals(seed, first_pair, out):
    """Box-Muller normals from uniform pairs ``first_pair, first_pair+1, ...``."""
    m = out.shape[0]
    j = 0
    pair = first_pair
    while j < m:
        u1 = 1.0 - uniform_at(seed, 2 * pair)
        u2 = uniform_at(seed, 2 * pair + 1)
        r = np.sqrt(-2.0 * np.log(u1))
        th = _TWO_PI * u2
        out[j] = r * np.cos(th)
        if j + 1 < m:
            out[j + 1] = r * np.sin(th)
        j += 2
        pair += 1


@_jit
def uniform_times(t, n):
    ts = np.empty(n + 1)
    for k in range(n + 1):
        ts[k] = (k / n) * t
    return ts


@_jit
def bm_values(t, n, seed):
    z = np.empty(n)
    fill_normals(seed, 0, z)
    scale = np.sqrt(t / n)
    vs = np.empty(n + 1)
    vs[0] = 0.0
    acc = 0.0
    for k in range(n):
        acc += scale * z[k]
        vs[k + 1] = acc
    return vs


@_jit
def bridge_values(x, t, n, seed):
    b = bm_values(t, n, seed)
    bn = b[n]
    vs = np.empty(n + 1)
    for k in range(n + 1):
        th = k / n
        vs[k] = (b[k] - th * bn) + th * x
    return vs


@_jit
def norm3(a, b, c):
    out = np.empty(a.shape[0])
    for k in range(a.shape[0]):
        out[k] = np.sqrt(a[k] * a[k] + b[k] * b[k] + c[k] * c[k])
    return out


@_jit
def bm3_values(t, n, seed):
    return (
        bm_values(t, n, derive(seed, np.uint64(0))),
        bm_values(t, n, derive(seed, np.uint64(1))),
        bm_values(t, n, derive(seed, np.uint64(2))),
    )


@_jit
def meander_components(x, t, n, seed):
    """Rows ``(bridge to x, B2, B3)`` on the uniform grid, from disjoint streams."""
    out = np.empty((3, n + 1))
    out[0] = bridge_values(x, t, n, derive(seed, np.uint64(0)))
    out[1] = bm_values(t, n, derive(seed, np.uint64(1)))
    out[2] = bm_values(t, n, derive(seed, np.uint64(2)))
    return out


@_jit
def meander_values(x, t, n, seed):
    c = meander_components(x, t, n, seed)
    return norm3(c[0], c[1], c[2])


@_jit
def conditioned_meander_values(x_abs, t, n, seed, max_tries):
    for j in range(max_tries):
        vs = meander_values(0.0, t, n, derive(seed, np.uint64(j)))
        if vs[n] >= x_abs:
            return vs, j + 1
    return np.empty(0), max_tries


# ---------------------------------------------------------- refinement
#
# Between two sampled times a Brownian component is a Brownian bridge, so a
# midpoint drawn as N((a + b) / 2, h / 4) is exact given everything sampled
# so far.  Bisecting only where the path might reach a running extreme (or
# zero) removes most of the O(sqrt(h)) bias of extrema read off a grid.

RULE_PREFIX_MAX = 1
RULE_PREFIX_MIN = 2
RULE_SUFFIX_MAX = 4
RULE_SUFFIX_MIN = 8
RULE_ZERO = 16
RULE_BAND = 32
RULES_ALL = 31
RULES_RADIAL = 15

REFINE_LEVELS = 6
# bisect when a bridge over the interval reaches the level with
# probability above REFINE_P: exp(-2 da db / h) > p  <=>  da db < h log(1/p) / 2
REFINE_P = 1e-2
REFINE_C = 0.5 * np.log(1.0 / REFINE_P)


@_jit
def _driver(comps, radial):
    if radial:
        return norm3(comps[0], comps[1], comps[2])
    return comps[0].copy()


@_jit
def refine(ts, comps, seed, radial, rules, levels, band=0.0):
    """Bisect intervals near running extremes, level by level.

    ``comps`` holds Brownian-type components row-wise (bridges included).
    The driver is row 0, or the Euclidean norm of three rows when
    ``radial``.  With ``RULE_BAND`` the levels ``+-band`` also count, so
    occupation of ``(-band, band)`` is resolved on both sides of each edge.
    Returns new ``(ts, comps)``; original samples are kept.
    """
    nc = comps.shape[0]
    h_floor = 1.5 * (ts[1] - ts[0]) / 2.0**levels
    pairs = 0
    for _ in range(levels):
        n = ts.shape[0]
        d = _driver(comps, radial)
        pmax = np.empty(n)
        pmin = np.empty(n)
        smax = np.empty(n)
        smin = np.empty(n)
        pmax[0] = d[0]
        pmin[0] = d[0]
        for k in range(1, n):
            pmax[k] = max(pmax[k - 1], d[k])
            pmin[k] = min(pmin[k - 1], d[k])
        smax[n - 1] = d[n - 1]
        smin[n - 1] = d[n - 1]
        for k in range(n - 2, -1, -1):
            smax[k] = max(smax[k + 1], d[k])
            smin[k] = min(smin[k + 1], d[k])
        flag = np.zeros(n - 1, dtype=np.bool_)
        cnt = 0
        for k in range(n - 1):
            h = ts[k + 1] - ts[k]
            if h < h_floor:
                continue
            a = d[k]
            b = d[k + 1]
            hc = h * REFINE_C
            f = False
            if rules & RULE_PREFIX_MAX and (pmax[k + 1] - a) * (pmax[k + 1] - b) < hc:
                f = True
            elif rules & RULE_PREFIX_MIN and (a - pmin[k + 1]) * (b - pmin[k + 1]) < hc:
                f = True
            elif rules & RULE_SUFFIX_MAX and (smax[k] - a) * (smax[k] - b) < hc:
                f = True
            elif rules & RULE_SUFFIX_MIN and (a - smin[k]) * (b - smin[k]) < hc:
                f = True
            elif rules & RULE_ZERO and a * b < hc:
                f = True
            elif rules & RULE_BAND and ((a - band) * (b - band) < hc or (a + band) * (b + band) < hc):
                f = True
            if f:
                flag[k] = True
                cnt += 1
        if cnt == 0:
            break
        z = np.empty(cnt * nc)
        fill_normals(seed, pairs, z)
        pairs += (cnt * nc + 1) // 2
        m = n + cnt
        nts = np.empty(m)
        nco = np.empty((nc, m))
        j = 0
        q = 0
        for k in range(n):
            nts[j] = ts[k]
            for ci in range(nc):
                nco[ci, j] = comps[ci, k]
            j += 1
            if k < n - 1 and flag[k]:
                h = ts[k + 1] - ts[k]
                nts[j] = ts[k] + 0.5 * h
                sd = np.sqrt(0.25 * h)
                for ci in range(nc):
                    nco[ci, j] = 0.5 * (comps[ci, k] + comps[ci, k + 1]) + sd * z[q]
                    q += 1
                j += 1
        ts = nts
        comps = nco
    return ts, comps


@_jit
def _dip_min(y, w, h, best, levels, rseed, pair):
    """Smallest norm seen while bisecting the 3-d step ``y -> w``.

    Only halves whose norm could dip below the current best are split.
    """
    cap = 2 * levels + 2
    st = np.empty((cap, 7))
    st[0, 0:3] = y
    st[0, 3:6] = w
    st[0, 6] = h
    top = 1
    z = np.empty(3)
    mid = np.empty(3)
    depth_h = h / 2.0**levels * 1.5
    while top > 0:
        top -= 1
        a0, a1, a2 = st[top, 0], st[top, 1], st[top, 2]
        b0, b1, b2 = st[top, 3], st[top, 4], st[top, 5]
        hh = st[top, 6]
        if hh < depth_h:
            continue
        ra = np.sqrt(a0 * a0 + a1 * a1 + a2 * a2)
        rb = np.sqrt(b0 * b0 + b1 * b1 + b2 * b2)
        if (ra - best) * (rb - best) >= hh * REFINE_C:
            continue
        fill_normals(rseed, pair, z)
        pair += 2
        sd = np.sqrt(0.25 * hh)
        mid[0] = 0.5 * (a0 + b0) + sd * z[0]
        mid[1] = 0.5 * (a1 + b1) + sd * z[1]
        mid[2] = 0.5 * (a2 + b2) + sd * z[2]
        rm = np.sqrt(mid[0] * mid[0] + mid[1] * mid[1] + mid[2] * mid[2])
        if rm < best:
            best = rm
        st[top, 0], st[top, 1], st[top, 2] = mid[0], mid[1], mid[2]
        st[top, 3], st[top, 4], st[top, 5] = b0, b1, b2
        st[top, 6] = 0.5 * hh
        st[top + 1, 0], st[top + 1, 1], st[top + 1, 2] = a0, a1, a2
        st[top + 1, 3:6] = mid
        st[top + 1, 6] = 0.5 * hh
        top += 2
    return best, pair


@_jit
def future_radial_min(b1, b2, b3, t, n, trunc_factor, seed):
    """Minimum of |bd| over [t, K t], continuing the three components.

    The step beyond t is four times the step on [0, t] when ``n`` allows it.
    Steps that could dip below the running minimum are bisected exactly
    (see :func:`refine`), so the minimum is not inflated by the grid.
    """
    coarsen = 4 if n % 4 == 0 else 1
    steps = (trunc_factor - 1) * (n // coarsen)
    h = coarsen * t / n
    scale = np.sqrt(h)
    levels = REFINE_LEVELS + (2 if coarsen == 4 else 0)
    y = np.empty(3)
    w = np.empty(3)
    w[0] = b1[n]
    w[1] = b2[n]
    w[2] = b3[n]
    best = np.sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2])
    block = 4096
    z1 = np.empty(block)
    z2 = np.empty(block)
    z3 = np.empty(block)
    s1 = derive(seed, np.uint64(3))
    s2 = derive(seed, np.uint64(4))
    s3 = derive(seed, np.uint64(5))
    rseed = derive(seed, np.uint64(6))
    pair = 0
    done = 0
    while done < steps:
        m = min(block, steps - done)
        fill_normals(s1, done // 2, z1[:m])
        fill_normals(s2, done // 2, z2[:m])
        fill_normals(s3, done // 2, z3[:m])
        for k in range(m):
            y[0] = w[0]
            y[1] = w[1]
            y[2] = w[2]
            w[0] += scale * z1[k]
            w[1] += scale * z2[k]
            w[2] += scale * z3[k]
            r = np.sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2])
            if r < best:
                best = r
            if (r - best) < 4.0 * scale:
                ry = np.sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2])
                if (ry - best) * (r - best) < h * REFINE_C:
                    best, pair = _dip_min(y, w, h, best, levels, rseed, pair)
        done += m
    return best


# ------------------------------------------------------------ path algebra


@_jit
def eval_at(ts, vs, s):
    n = ts.shape[0]
    k = np.searchsorted(ts, s, side="right") - 1
    if k >= n - 1:
        return vs[n - 1]
    if k < 0:
        return vs[0]
    if ts[k] == s:
        return vs[k]
    th = (s - ts[k]) / (ts[k + 1] - ts[k])
    return vs[k] + th * (vs[k + 1] - vs[k])


@_jit
def eval_many(ts, vs, ss):
    out = np.empty(ss.shape[0])
    for i in range(ss.shape[0]):
        out[i] = eval_at(ts, vs, ss[i])
    return out


@_jit
def running_max(ts, vs, sign, reverse):
    """Exact running maximum of ``sign * vs`` (times ``sign``).

    Forward gives the prefix extremum on [0, s]; reverse the suffix extremum
    on [s, t].  Crossing times with the running level are inserted.
    """
    n = ts.shape[0]
    tol = TIME_TOL * ts[n - 1]
    cap = 2 * n
    ots = np.empty(cap)
    ovs = np.empty(cap)
    m = 0
    if not reverse:
        level = sign * vs[0]
        ots[0] = ts[0]
        ovs[0] = level
        m = 1
        for k in range(n - 1):
            a = sign * vs[k]
            b = sign * vs[k + 1]
            if b > level:
                if a < level:
                    th = (level - a) / (b - a)
                    u = ts[k] + th * (ts[k + 1] - ts[k])
                    if u > ts[k] + tol and u < ts[k + 1] - tol:
                        ots[m] = u
                        ovs[m] = level
                        m += 1
                level = b
            ots[m] = ts[k + 1]
            ovs[m] = level
            m += 1
    else:
        level = sign * vs[n - 1]
        ots[0] = ts[n - 1]
        ovs[0] = level
        m = 1
        for k in range(n - 2, -1, -1):
            a = sign * vs[k + 1]
            b = sign * vs[k]
            if b > level:
                if a < level:
                    th = (level - a) / (b - a)
                    u = ts[k + 1] - th * (ts[k + 1] - ts[k])
                    if u > ts[k] + tol and u < ts[k + 1] - tol:
                        ots[m] = u
                        ovs[m] = level
                        m += 1
                level = b
            ots[m] = ts[k]
            ovs[m] = level
            m += 1
        ots[:m] = ots[:m][::-1].copy()
        ovs[:m] = ovs[:m][::-1].copy()
    out_v = ovs[:m].copy()
    if sign != 1.0:
        for i in range(m):
            out_v[i] = sign * out_v[i]
    return ots[:m].copy(), out_v


@_jit
def merge(ts1, vs1, ts2, vs2):
    """Union of breakpoints with both paths evaluated on it."""
    n1 = ts1.shape[0]
    n2 = ts2.shape[0]
    if n1 == n2:
        same = True
        for i in range(n1):
            if ts1[i] != ts2[i]:
                same = False
                break
        if same:
            return ts1.copy(), vs1.copy(), vs2.copy()
    tol = TIME_TOL * max(ts1[n1 - 1], ts2[n2 - 1])
    cap = n1 + n2
    ts = np.empty(cap)
    a = np.empty(cap)
    b = np.empty(cap)
    i = 0
    j = 0
    m = 0
    while i < n1 or j < n2:
        if j >= n2 or (i < n1 and ts1[i] < ts2[j] - tol):
            u = ts1[i]
            ts[m] = u
            a[m] = vs1[i]
            if j >= n2:
                b[m] = vs2[n2 - 1]
            else:
                th = (u - ts2[j - 1]) / (ts2[j] - ts2[j - 1])
                b[m] = vs2[j - 1] + th * (vs2[j] - vs2[j - 1])
            i += 1
        elif i >= n1 or ts2[j] < ts1[i] - tol:
            u = ts2[j]
            ts[m] = u
            b[m] = vs2[j]
            if i >= n1:
                a[m] = vs1[n1 - 1]
            else:
                th = (u - ts1[i - 1]) / (ts1[i] - ts1[i - 1])
                a[m] = vs1[i - 1] + th * (vs1[i] - vs1[i - 1])
            j += 1
        else:
            ts[m] = ts1[i]
            a[m] = vs1[i]
            b[m] = vs2[j]
            i += 1
            j += 1
        m += 1
    return ts[:m].copy(), a[:m].copy(), b[:m].copy()


@_jit
def lincomb(ts1, vs1, a, ts2, vs2, b):
    ts, x, y = merge(ts1, vs1, ts2, vs2)
    out = np.empty(ts.shape[0])
    for k in range(ts.shape[0]):
        out[k] = a * x[k] + b * y[k]
    return ts, out


@_jit
def cross_extreme(ts, x, y, sign):
    """Exact pointwise min (sign=1) or max (sign=-1) of two paths on shared times."""
    n = ts.shape[0]
    tol = TIME_TOL * ts[n - 1]
    cap = 2 * n
    ots = np.empty(cap)
    ovs = np.empty(cap)
    m = 0
    for k in range(n):
        if sign > 0:
            ovs[m] = min(x[k], y[k])
        else:
            ovs[m] = max(x[k], y[k])
        ots[m] = ts[k]
        m += 1
        if k < n - 1:
            d0 = x[k] - y[k]
            d1 = x[k + 1] - y[k + 1]
            if (d0 < 0.0 and d1 > 0.0) or (d0 > 0.0 and d1 < 0.0):
                th = d0 / (d0 - d1)
                u = ts[k] + th * (ts[k + 1] - ts[k])
                if u > ts[k] + tol and u < ts[k + 1] - tol:
                    ots[m] = u
                    ovs[m] = x[k] + th * (x[k + 1] - x[k])
                    m += 1
    return ots[:m].copy(), ovs[:m].copy()


@_jit
def pointwise_extreme(ts1, vs1, ts2, vs2, sign):
    ts, x, y = merge(ts1, vs1, ts2, vs2)
    return cross_extreme(ts, x, y, sign)


@_jit
def clip_below(ts, vs, level):
    """Exact max(path, level)."""
    return cross_extreme(ts, vs, np.full(ts.shape[0], level), -1.0)


@_jit
def abs_path(ts, vs):
    n = ts.shape[0]
    tol = TIME_TOL * ts[n - 1]
    ots = np.empty(2 * n)
    ovs = np.empty(2 * n)
    m = 0
    for k in range(n):
        ots[m] = ts[k]
        ovs[m] = abs(vs[k])
        m += 1
        if k < n - 1:
            a = vs[k]
            b = vs[k + 1]
            if (a < 0.0 and b > 0.0) or (a > 0.0 and b < 0.0):
                u = ts[k] + (a / (a - b)) * (ts[k + 1] - ts[k])
                if u > ts[k] + tol and u < ts[k + 1] - tol:
                    ots[m] = u
                    ovs[m] = 0.0
                    m += 1
    return ots[:m].copy(), ovs[:m].copy()


@_jit
def pitman(ts, vs):
    mts, mvs = running_max(ts, vs, 1.0, False)
    return lincomb(mts, mvs, 2.0, ts, vs, -1.0)


@_jit
def l_transform(ts, vs, y):
    """-phi + min(2 suffix_min(phi), phi_t + y), evaluated as
    min(2 suffix_min - phi, (phi_t - phi) + y) so that s = t is exact."""
    n = ts.shape[0]
    sts, svs = running_max(ts, vs, -1.0, True)
    ats, avs = lincomb(sts, svs, 2.0, ts, vs, -1.0)
    cvs = np.empty(n)
    vt = vs[n - 1]
    for k in range(n):
        cvs[k] = (vt - vs[k]) + y
    return pointwise_extreme(ats, avs, ts, cvs, 1.0)


@_jit
def levy_second(ts, vs):
    """min(prefix_max, (suffix_max)_+) - phi."""
    pts, pvs = running_max(ts, vs, 1.0, False)
    qts, qvs = running_max(ts, vs, 1.0, True)
    cts, cvs = clip_below(qts, qvs, 0.0)
    mts, mvs = pointwise_extreme(pts, pvs, cts, cvs, 1.0)
    return lincomb(mts, mvs, 1.0, ts, vs, -1.0)


@_jit
def radial_gap(ts, vs, c):
    """max(R - suffix_min(R), (R - R_t) + c): equals R - min(suffix_min(R), R_t - c)."""
    n = ts.shape[0]
    sts, svs = running_max(ts, vs, -1.0, True)
    dts, dvs = lincomb(ts, vs, 1.0, sts, svs, -1.0)
    evs = np.empty(n)
    vt = vs[n - 1]
    for k in range(n):
        evs[k] = (vs[k] - vt) + c
    return pointwise_extreme(dts, dvs, ts, evs, -1.0)


@_jit
def band_occupation(ts, vs, eps):
    """(1/2eps) * time spent in (-eps, eps) up to s, with entry/exit kinks."""
    n = ts.shape[0]
    ots = np.empty(3 * n)
    ovs = np.empty(3 * n)
    scale = 1.0 / (2.0 * eps)
    acc = 0.0
    ots[0] = ts[0]
    ovs[0] = 0.0
    m = 1
    for k in range(n - 1):
        a = vs[k]
        b = vs[k + 1]
        dt = ts[k + 1] - ts[k]
        if a == b:
            if abs(a) < eps:
                acc += dt * scale
        else:
            th1 = (-eps - a) / (b - a)
            th2 = (eps - a) / (b - a)
            lo = max(0.0, min(th1, th2))
            hi = min(1.0, max(th1, th2))
            if hi > lo:
                if lo > 0.0:
                    ots[m] = ts[k] + lo * dt
                    ovs[m] = acc
                    m += 1
                acc += (hi - lo) * dt * scale
                if hi < 1.0:
                    ots[m] = ts[k] + hi * dt
                    ovs[m] = acc
                    m += 1
        ots[m] = ts[k + 1]
        ovs[m] = acc
        m += 1
    # a kink landing on a breakpoint up to rounding would repeat a time
    keep = np.ones(m, dtype=np.bool_)
    for i in range(1, m):
        if ots[i] <= ots[i - 1]:
            keep[i - 1] = False
    return ots[:m][keep[:m]].copy(), ovs[:m][keep[:m]].copy()


@_jit
def density_at_zero(ts, vs):
    n = ts.shape[0]
    out = np.empty(n)
    out[0] = 0.0
    acc = 0.0
    for k in range(n - 1):
        a = vs[k]
        b = vs[k + 1]
        if a == 0.0 and b == 0.0:
            raise ValueError("segment identically zero: occupation density undefined")
        dt = ts[k + 1] - ts[k]
        if (a < 0.0 and b > 0.0) or (a > 0.0 and b < 0.0):
            acc += dt / abs(b - a)
        elif a == 0.0 or b == 0.0:
            acc += 0.5 * dt / abs(b - a)
        out[k + 1] = acc
    return out


@_jit
def last_return(ts, vs):
    n = ts.shape[0]
    level = vs[0]
    for k in range(n - 2, -1, -1):
        a = vs[k] - level
        b = vs[k + 1] - level
        if b == 0.0:
            return ts[k + 1]
        if (a < 0.0 and b > 0.0) or (a > 0.0 and b < 0.0):
            return ts[k] + (a / (a - b)) * (ts[k + 1] - ts[k])
    return ts[0]


@_jit
def first_argmax(ts, vs):
    return ts[np.argmax(vs)]


@_jit
def first_hit_half(ts, vs):
    n = ts.shape[0]
    target = 0.5 * vs[n - 1]
    if vs[n - 1] == 0.0:
        return 0.0
    for k in range(n):
        if vs[k] >= target:
            if k == 0:
                return ts[0]
            a = vs[k - 1]
            b = vs[k]
            if b == a:
                return ts[k]
            return ts[k - 1] + ((target - a) / (b - a)) * (ts[k] - ts[k - 1])
    return ts[n - 1]


@_jit
def integral(ts, vs):
    acc = 0.0
    for k in range(ts.shape[0] - 1):
        acc += 0.5 * (vs[k] + vs[k + 1]) * (ts[k + 1] - ts[k])
    return acc


N_BATTERY = 8


@_jit
def battery(ts1, vs1, ts2, vs2, out):
    t = ts1[ts1.shape[0] - 1]
    out[0] = vs1[vs1.shape[0] - 1]
    out[1] = eval_at(ts1, vs1, 0.5 * t)
    out[2] = vs1.max()
    out[3] = integral(ts1, vs1) / t
    out[4] = eval_at(ts2, vs2, 0.5 * t)
    out[5] = vs2.max()
    out[6] = vs2.min()
    out[7] = eval_at(ts2, vs2, 0.25 * t) + 2.0 * eval_at(ts2, vs2, 0.75 * t)
