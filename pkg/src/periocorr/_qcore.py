"""Jitted inner loops for folding, binning, and pairwise kernel sums.

Everything here is numerics on plain float64 arrays; validation and the
public API live in the wrapper modules.  Keep these functions free of
Python objects so they stay compilable.
"""

import numpy as np
from numba import njit

SQRT_TWO_PI = float(np.sqrt(2.0 * np.pi))


@njit(cache=True)
def _fold_sorted(times, mags, period):
    n = times.size
    ph = np.empty(n, np.float64)
    for i in range(n):
        p = (times[i] % period) / period
        if p >= 1.0:
            p -= 1.0
        ph[i] = p
    order = np.argsort(ph)
    return ph[order], mags[order]


@njit(cache=True)
def _circular_mean(x, span):
    # moving average that wraps around the phase seam
    n = x.size
    if span > n:
        span = n
    if span <= 1:
        return x.copy()
    out = np.empty(n, np.float64)
    lo = -((span - 1) // 2)
    hi = span // 2
    for i in range(n):
        acc = 0.0
        for o in range(lo, hi + 1):
            acc += x[(i + o) % n]
        out[i] = acc / span
    return out


@njit(cache=True)
def _window_optima(sm, m_win):
    # sliding windows of m_win samples, stride m_win // 2; a window's
    # argmax/argmin counts only when it is interior to the window
    n = sm.size
    stride = m_win // 2
    if stride < 1:
        stride = 1
    is_max = np.zeros(n, np.bool_)
    is_min = np.zeros(n, np.bool_)
    start = 0
    while True:
        end = start + m_win
        if end > n:
            end = n
        if end - start >= 3:
            amax = start
            amin = start
            for i in range(start + 1, end):
                if sm[i] > sm[amax]:
                    amax = i
                if sm[i] < sm[amin]:
                    amin = i
            if amax != start and amax != end - 1:
                is_max[amax] = True
            if amin != start and amin != end - 1:
                is_min[amin] = True
        if end >= n:
            break
        start += stride
    return is_max, is_min


@njit(cache=True)
def _optima_indices(sm, m_win):
    is_max, is_min = _window_optima(sm, m_win)
    n = sm.size
    count = 0
    for i in range(n):
        if is_max[i] or is_min[i]:
            count += 1
    if count < 2:
        # degenerate fold: use the global extrema instead
        gmax = int(np.argmax(sm))
        gmin = int(np.argmin(sm))
        if gmax == gmin:
            out = np.empty(1, np.int64)
            out[0] = gmax
            return out
        out = np.empty(2, np.int64)
        if gmin < gmax:
            out[0] = gmin
            out[1] = gmax
        else:
            out[0] = gmax
            out[1] = gmin
        return out
    out = np.empty(count, np.int64)
    w = 0
    for i in range(n):
        if is_max[i] or is_min[i]:
            out[w] = i
            w += 1
    return out


@njit(cache=True)
def _edges_from_optima(ph, opt_idx):
    # bin boundaries at midpoints between consecutive optima, plus 0 and 1
    h = opt_idx.size
    edges = np.empty(h + 1, np.float64)
    edges[0] = 0.0
    edges[h] = 1.0
    for a in range(h - 1):
        edges[a + 1] = 0.5 * (ph[opt_idx[a]] + ph[opt_idx[a + 1]])
    return edges


@njit(cache=True)
def _information_potential(x, sigma):
    n = x.size
    inv = 1.0 / (2.0 * sigma * sigma)
    acc = float(n)
    for i in range(n):
        xi = x[i]
        for j in range(i + 1, n):
            d = xi - x[j]
            acc += 2.0 * np.exp(-d * d * inv)
    return acc / (SQRT_TWO_PI * sigma * n * n)


@njit(cache=True)
def _q_from_edges(ph, ms, edges, sigma, global_ip):
    n = ph.size
    n_bins = edges.size - 1
    acc = 0.0
    used = 0
    b_lo = 0
    for h in range(n_bins):
        if h == n_bins - 1:
            b_hi = n
        else:
            hi_edge = edges[h + 1]
            b_hi = b_lo
            while b_hi < n and ph[b_hi] < hi_edge:
                b_hi += 1
        if b_hi - b_lo >= 2:
            d = _information_potential(ms[b_lo:b_hi], sigma) - global_ip
            acc += d * d
            used += 1
        b_lo = b_hi
    if used == 0:
        return 0.0
    return acc / used


@njit(cache=True)
def _q_single(times, mags, period, sigma, smooth_span, m_win, fixed_bins, global_ip):
    ph, ms = _fold_sorted(times, mags, period)
    if fixed_bins > 0:
        edges = np.linspace(0.0, 1.0, fixed_bins + 1)
    else:
        sm = _circular_mean(ms, smooth_span)
        opt = _optima_indices(sm, m_win)
        edges = _edges_from_optima(ph, opt)
    return _q_from_edges(ph, ms, edges, sigma, global_ip)


@njit(cache=True)
def _q_grid(times, mags, periods, sigma, smooth_span, m_win, fixed_bins, global_ip):
    out = np.empty(periods.size, np.float64)
    for i in range(periods.size):
        out[i] = _q_single(times, mags, periods[i], sigma, smooth_span, m_win,
                           fixed_bins, global_ip)
    return out


@njit(cache=True)
def _sllk_grid(times, mags, periods):
    n = mags.size
    mu = 0.0
    for i in range(n):
        mu += mags[i]
    mu /= n
    den = 0.0
    for i in range(n):
        d = mags[i] - mu
        den += d * d
    out = np.empty(periods.size, np.float64)
    for p in range(periods.size):
        ph, ms = _fold_sorted(times, mags, periods[p])
        num = 0.0
        for i in range(n - 1):
            d = ms[i + 1] - ms[i]
            num += d * d
        d = ms[0] - ms[n - 1]
        num += d * d
        out[p] = num / den
    return out


@njit(cache=True)
def _aov_grid(times, mags, periods, n_bins):
    # fixed equal-width phase bins; bins with fewer than 2 samples drop out
    n = mags.size
    out = np.empty(periods.size, np.float64)
    cnt = np.empty(n_bins, np.int64)
    s = np.empty(n_bins, np.float64)
    ss = np.empty(n_bins, np.float64)
    for p in range(periods.size):
        period = periods[p]
        for b in range(n_bins):
            cnt[b] = 0
            s[b] = 0.0
            ss[b] = 0.0
        for i in range(n):
            phv = (times[i] % period) / period
            if phv >= 1.0:
                phv -= 1.0
            b = int(phv * n_bins)
            if b >= n_bins:
                b = n_bins - 1
            cnt[b] += 1
            s[b] += mags[i]
            ss[b] += mags[i] * mags[i]
        n_used = 0
        h_used = 0
        tot = 0.0
        for b in range(n_bins):
            if cnt[b] >= 2:
                n_used += cnt[b]
                h_used += 1
                tot += s[b]
        if h_used < 2 or n_used <= h_used:
            out[p] = 0.0
            continue
        gmean = tot / n_used
        between = 0.0
        within = 0.0
        for b in range(n_bins):
            if cnt[b] >= 2:
                bm = s[b] / cnt[b]
                d = bm - gmean
                between += cnt[b] * d * d
                within += ss[b] - cnt[b] * bm * bm
        s1 = between / (h_used - 1)
        s2 = within / (n_used - h_used)
        if s2 <= 0.0:
            out[p] = np.inf
        else:
            out[p] = s1 / s2
    return out
