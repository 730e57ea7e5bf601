"""Pure-python/numpy implementations of the hot numerical kernels.

Same call signatures as the compiled backend (``_ckernels``); import goes
through :mod:`dislocflux.kernels`, which picks the compiled module when it
built successfully and falls back to this one otherwise.
"""

import numpy as np

# Convergence flags shared with the compiled backend.
SERIES_OK = 0
SERIES_CAP = 1
SERIES_OVERFLOW = 2

_TERM_TOL = 1e-16  # stop once term/partial-sum drops below this, 3 in a row
_BIG = 1e290


def kummer_series(a, b, y, max_terms=10000):
    """Partial sum of the confluent hypergeometric series sum_s (a)_s/(b)_s y^s/s!.

    Returns ``(value, sum_abs, n_terms, status)`` where ``sum_abs`` accumulates
    |term| (cancellation diagnostic) and ``status`` is one of the SERIES_*
    flags.  Poles of (b)_s are the caller's problem.
    """
    t = 1.0
    s = 1.0
    s_abs = 1.0
    small = 0
    for n in range(1, max_terms + 1):
        t *= (a + n - 1.0) * y / ((b + n - 1.0) * n)
        if t == 0.0:
            # terminating (polynomial) case
            return s, s_abs, n, SERIES_OK
        s += t
        s_abs += abs(t)
        if s_abs > _BIG or s_abs != s_abs:
            return s, s_abs, n, SERIES_OVERFLOW
        if abs(t) < _TERM_TOL * max(abs(s), 1e-300):
            small += 1
            if small >= 3:
                return s, s_abs, n, SERIES_OK
        else:
            small = 0
    return s, s_abs, max_terms, SERIES_CAP


def _pivmin(e2):
    return max(float(np.max(e2)) if len(e2) else 1.0, 1.0) * 1e-292


def sturm_count(d, e, x):
    """Number of eigenvalues of the symmetric tridiagonal (d, e) below x.

    Standard LDL^T pivot-sign count; tiny pivots are clamped negative so a
    numerically singular shift counts the touching eigenvalue as below.
    """
    d = np.asarray(d, dtype=float)
    e2 = np.asarray(e, dtype=float) ** 2
    piv = _pivmin(e2)
    q = d[0] - x
    if abs(q) < piv:
        q = -piv
    count = 1 if q < 0.0 else 0
    for i in range(1, len(d)):
        q = d[i] - x - e2[i - 1] / q
        if abs(q) < piv:
            q = -piv
        if q < 0.0:
            count += 1
    return count


def _sturm_count_multi(d, e2, xs, piv):
    """Vectorised pivot count for an array of shifts (one grid sweep)."""
    q = d[0] - xs
    np.copyto(q, -piv, where=np.abs(q) < piv)
    counts = (q < 0.0).astype(np.int64)
    for i in range(1, len(d)):
        q = d[i] - xs - e2[i - 1] / q
        np.copyto(q, -piv, where=np.abs(q) < piv)
        counts += q < 0.0
    return counts


def sturm_lowest(d, e, k):
    """Lowest k eigenvalues by Sturm bisection.

    The python fallback narrows all k intervals at once with several probe
    points per interval per grid sweep, so the 20k-point recurrence runs a
    bounded number of times instead of once per bisection step.
    """
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    e2 = e * e
    piv = _pivmin(e2)
    radius = np.zeros_like(d)
    radius[:-1] += np.abs(e)
    radius[1:] += np.abs(e)
    lo = float(np.min(d - radius))
    hi = float(np.max(d + radius))
    probes = 7
    los = np.full(k, lo)
    his = np.full(k, hi)
    for _ in range(60):
        widths = his - los
        tol = 1e-14 * np.maximum(np.maximum(np.abs(los), np.abs(his)), 1.0)
        live = widths > tol
        if not live.any():
            break
        idx = np.nonzero(live)[0]
        grids = [los[j] + widths[j] * np.arange(1, probes + 1) / (probes + 1) for j in idx]
        xs = np.concatenate(grids)
        counts = _sturm_count_multi(d, e2, xs, piv)
        for pos, j in enumerate(idx):
            cj = counts[pos * probes:(pos + 1) * probes]
            g = grids[pos]
            # first probe with count >= j+1 bounds the eigenvalue from above
            above = np.nonzero(cj >= j + 1)[0]
            if len(above):
                a0 = above[0]
                his[j] = g[a0]
                if a0 > 0:
                    los[j] = g[a0 - 1]
            else:
                los[j] = g[-1]
    return 0.5 * (los + his)


def tridiag_shifted_solve(d, e, shift, rhs):
    """Solve (T - shift*I) x = rhs for symmetric tridiagonal T (Thomas).

    Near-singular pivots are clamped, which is exactly what inverse iteration
    wants when the shift sits on an eigenvalue.
    """
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    n = len(d)
    c = np.empty(n - 1)
    g = np.empty(n)
    piv = d[0] - shift
    if abs(piv) < 1e-290:
        piv = 1e-290
    c[0] = e[0] / piv
    g[0] = rhs[0] / piv
    for i in range(1, n):
        piv = d[i] - shift - e[i - 1] * c[i - 1]
        if abs(piv) < 1e-290:
            piv = 1e-290
        if i < n - 1:
            c[i] = e[i] / piv
        g[i] = (rhs[i] - e[i - 1] * g[i - 1]) / piv
    x = np.empty(n)
    x[-1] = g[-1]
    for i in range(n - 2, -1, -1):
        x[i] = g[i] - c[i] * x[i + 1]
    return x
