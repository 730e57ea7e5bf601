"""Confluent hypergeometric machinery, built from scratch.

Evaluates the Kummer function M(a,b;y), the Tricomi function U(a,b;y), the
exponentially decaying Whittaker function W, and the large-parameter cosine
form of U whose zeros approximate the quantization roots.  No external
special-function library is used for the functions themselves: U comes from
the standard two-M connection formula

    U(a,b;y) = Gamma(1-b)/Gamma(a-b+1) M(a,b;y)
             + Gamma(b-1)/Gamma(a) y^(1-b) M(a-b+1,2-b;y)      (b not integer)

with integer b handled by a small offset in b plus Richardson extrapolation.
The double-precision fast path tracks its own cancellation estimate and the
evaluation transparently re-runs the same series at higher working precision
(mpmath) whenever that estimate misses the target, so results stay reliable
arbitrarily close to the zeros of U that the spectrum root-finder brackets.

An independent check route, ``u_reference_quadrature``, evaluates U from the
integral representation (and the downward recurrence in ``a`` where the
integral does not apply).  It shares no code with the series route and is the
oracle the identity tests compare against.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath as mp
from scipy import integrate

from dislocflux import kernels
from dislocflux.errors import AccuracyError, DomainError, PoleError

_EPS = 2.2e-16
_MAX_TERMS = 10000
_MAX_DPS = 250
# internal relative targets (tighter than the 1e-8 contract)
_U_TARGET_DOUBLE = 2e-12
_U_TARGET_MP = 1e-12
_M_TARGET = 1e-13


@dataclass(frozen=True)
class SpecFunResult:
    """Value together with an absolute error estimate and the route taken."""

    value: float
    abs_error_estimate: float
    method_used: str  # series | integral | recurrence | log_case | asymptotic

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise OverflowError("special function value overflows double precision")
        if not (math.isfinite(self.abs_error_estimate) and self.abs_error_estimate >= 0):
            raise AccuracyError("non-finite error estimate")


def _is_nonpos_int(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def _gamma_sign_log(x: float):
    """(sign, log|Gamma(x)|); sign 0 flags a pole (1/Gamma = 0 there)."""
    if _is_nonpos_int(x):
        return 0, -math.inf
    sign = 1
    if x < 0 and int(math.floor(x)) % 2 != 0:
        sign = -1
    return sign, math.lgamma(x)


def _series_mp(a, b, y, dps):
    """Kummer series in the current-precision mpmath context."""
    t = mp.mpf(1)
    s = mp.mpf(1)
    s_abs = mp.mpf(1)
    tol = mp.mpf(10) ** (-dps - 5)
    small = 0
    n = 1
    while n <= 20 * _MAX_TERMS:
        t *= (a + n - 1) * y / ((b + n - 1) * n)
        if t == 0:
            return s, s_abs
        s += t
        s_abs += abs(t)
        if abs(t) < tol * max(abs(s), mp.mpf(10) ** -999):
            small += 1
            if small >= 3:
                return s, s_abs
        else:
            small = 0
        n += 1
    return s, s_abs


# ---------------------------------------------------------------------------
# Kummer M
# ---------------------------------------------------------------------------

def _m_asymptotic(a, b, y):
    """Large-y form M ~ Gamma(b)/Gamma(a) e^y y^(a-b) 2F0-series, stop at the
    smallest term.  Only called for y > 50 with a not a non-positive integer."""
    sgn_a, lg_a = _gamma_sign_log(a)
    if sgn_a == 0:
        raise PoleError("asymptotic M needs 1/Gamma(a) != 0")
    log_pref = math.lgamma(b) - lg_a + y + (a - b) * math.log(y)
    if log_pref > 709.0:
        raise OverflowError(f"M({a},{b};{y}) overflows double precision")
    pref = sgn_a * math.exp(log_pref)
    t = 1.0
    s = 1.0
    best = abs(t)
    omitted = 1.0
    for n in range(1, 2 * _MAX_TERMS):
        t *= (b - a + n - 1.0) * (1.0 - a + n - 1.0) / (n * y)
        if abs(t) >= best:
            omitted = abs(t)  # divergent tail reached
            break
        s += t
        best = abs(t)
        omitted = best
        if abs(t) < _EPS * abs(s):
            break
    # subdominant second component of the complete expansion
    sgn_ba, lg_ba = _gamma_sign_log(b - a)
    sub = 0.0
    if sgn_ba != 0:
        log_sub = math.lgamma(b) - lg_ba - a * math.log(y)
        sub = math.exp(min(log_sub, 700.0))
    value = pref * s
    err = abs(pref) * (omitted + _EPS * abs(s) * 4) + sub
    return value, err


def kummer_m(a: float, b: float, y: float) -> SpecFunResult:
    """Confluent hypergeometric function of the first kind, M(a,b;y), y >= 0."""
    if _is_nonpos_int(b):
        raise PoleError(f"M(a,b;y) undefined for b = {b} (non-positive integer)")
    if y < 0:
        raise DomainError(f"kummer_m requires y >= 0, got {y}")
    polynomial = _is_nonpos_int(a)
    if y > 50.0 and not polynomial:
        value, err = _m_asymptotic(a, b, y)
        return SpecFunResult(value, err, "asymptotic")
    v, s_abs, _, status = kernels.kummer_series(a, b, y, _MAX_TERMS)
    err = _EPS * s_abs * 4.0
    if status == kernels.SERIES_OK and err <= _M_TARGET * abs(v):
        return SpecFunResult(v, err, "series")
    # escalate working precision until the cancellation is resolved
    loss = 0.0
    if status == kernels.SERIES_OK and s_abs > 0 and math.isfinite(s_abs):
        loss = math.log10(max(s_abs / max(abs(v), 1e-300), 1.0))
    dps = min(_MAX_DPS, max(30, 22 + int(loss) + 6))
    while True:
        with mp.workdps(dps):
            s, sa = _series_mp(mp.mpf(a), mp.mpf(b), mp.mpf(y), dps)
            err = float(abs(sa) * mp.mpf(10) ** (-dps + 1))
            value = float(s)
            scale = float(sa)
        if err <= _M_TARGET * abs(value) or err <= 1e-16 * scale:
            if not math.isfinite(value):
                raise OverflowError(f"M({a},{b};{y}) overflows double precision")
            return SpecFunResult(value, err, "series")
        if dps >= _MAX_DPS:
            raise AccuracyError(f"M({a},{b};{y}): error estimate {err:.2e} not reducible")
        dps = min(_MAX_DPS, dps * 3 // 2 + 8)


# ---------------------------------------------------------------------------
# Tricomi U
# ---------------------------------------------------------------------------

def _u_double(a, b, y):
    """Connection-formula U in doubles: (value, abs_err, term_scale, ok)."""
    sgn1, lg1b = _gamma_sign_log(1.0 - b)
    sgn1a, lg1a = _gamma_sign_log(a - b + 1.0)
    if sgn1a == 0 or sgn1 == 0:
        c1 = 0.0
    else:
        lc1 = lg1b - lg1a
        if lc1 > 709.0:
            return math.nan, math.inf, math.inf, False
        c1 = sgn1 * sgn1a * math.exp(lc1)
    sgn2, lg2b = _gamma_sign_log(b - 1.0)
    sgn2a, lg2a = _gamma_sign_log(a)
    if sgn2a == 0 or sgn2 == 0:
        c2 = 0.0
    else:
        lc2 = lg2b - lg2a + (1.0 - b) * math.log(y)
        if lc2 > 709.0:
            return math.nan, math.inf, math.inf, False
        c2 = sgn2 * sgn2a * math.exp(lc2)
    wc = 0.0
    t1 = t2 = 0.0
    if c1 != 0.0:
        m1, sa1, _, st1 = kernels.kummer_series(a, b, y, _MAX_TERMS)
        if st1 != kernels.SERIES_OK:
            return math.nan, math.inf, math.inf, False
        t1 = c1 * m1
        wc += abs(c1) * sa1
    if c2 != 0.0:
        m2, sa2, _, st2 = kernels.kummer_series(a - b + 1.0, 2.0 - b, y, _MAX_TERMS)
        if st2 != kernels.SERIES_OK:
            return math.nan, math.inf, math.inf, False
        t2 = c2 * m2
        wc += abs(c2) * sa2
    value = t1 + t2
    scale = abs(t1) + abs(t2)
    if not math.isfinite(scale):
        return math.nan, math.inf, math.inf, False
    err = _EPS * (wc + scale) * 4.0
    return value, err, scale, True


def _u_mp(a, b, y, dps):
    with mp.workdps(dps):
        aa, bb, yy = mp.mpf(a), mp.mpf(b), mp.mpf(y)
        zero = mp.mpf(0)
        if _is_nonpos_int(a - b + 1.0) or _is_nonpos_int(1.0 - b):
            t1 = zero
            wc1 = zero
        else:
            c1 = mp.gamma(1 - bb) / mp.gamma(aa - bb + 1)
            m1, sa1 = _series_mp(aa, bb, yy, dps)
            t1 = c1 * m1
            wc1 = abs(c1) * sa1
        if _is_nonpos_int(a) or _is_nonpos_int(b - 1.0):
            t2 = zero
            wc2 = zero
        else:
            c2 = mp.gamma(bb - 1) / mp.gamma(aa) * yy ** (1 - bb)
            m2, sa2 = _series_mp(aa - bb + 1, 2 - bb, yy, dps)
            t2 = c2 * m2
            wc2 = abs(c2) * sa2
        value = t1 + t2
        scale = abs(t1) + abs(t2)
        err = (wc1 + wc2 + scale) * mp.mpf(10) ** (-dps + 1)
        return float(value), float(err), float(scale)


def _u_large_y(a, b, y):
    """Divergent large-y expansion U ~ y^(-a) sum_s (a)_s(a-b+1)_s/s! (-y)^-s.

    Returns None when the expansion cannot reach full double accuracy here."""
    if y < 100.0 or abs(a) * abs(a - b + 1.0) > 0.25 * y:
        return None
    la = -a * math.log(y)
    if abs(la) > 700.0:
        return None
    t = 1.0
    s = 1.0
    w = 1.0
    omitted = 1.0
    for n in range(1, 400):
        t *= (a + n - 1.0) * (a - b + n) / (-y * n)
        if abs(t) >= omitted:
            break
        s += t
        w += abs(t)
        omitted = abs(t)
        if abs(t) < _EPS * abs(s):
            break
    pref = math.exp(la)
    value = pref * s
    err = pref * (omitted + _EPS * w * 4)
    if err > 1e-12 * abs(value):
        return None
    return value, err


def _u_noninteger_b(a, b, y):
    """U for non-integer b with automatic precision escalation.

    Returns (value, abs_err, method, term_scale); term_scale is the natural
    magnitude |t1| + |t2| of the connection formula at this point, the yard-
    stick for "how small is this value because it sits next to a zero of U"."""
    fast = _u_large_y(a, b, y)
    if fast is not None:
        return fast[0], fast[1], "asymptotic", abs(fast[0])
    v, err, scale, ok = _u_double(a, b, y)
    if ok and err <= _U_TARGET_DOUBLE * abs(v):
        return v, err, "series", scale
    loss = 6.0
    if ok and math.isfinite(scale) and scale > 0:
        loss = math.log10(max(err / (_EPS * 4.0 * scale), 1.0))
    dps = min(_MAX_DPS, max(30, 22 + int(loss) + 6))
    while True:
        value, err, scale = _u_mp(a, b, y, dps)
        # the 1e-30*scale floor keeps sign resolution deep into the flanks of
        # a zero without demanding relative accuracy of an exact 0
        if err <= _U_TARGET_MP * abs(value) or err <= 1e-30 * scale:
            return value, err, "series", scale
        if dps >= _MAX_DPS:
            raise AccuracyError(
                f"U({a},{b};{y}): error estimate {err:.2e} irreducible at {dps} digits"
            )
        dps = min(_MAX_DPS, dps * 3 // 2 + 8)


def _u_integer_b(a, b, y):
    """Limit onto integer b by offset evaluations and Richardson extrapolation.

    Offsets 1e-6, 5e-7, 2.5e-7 give two first-order extrapolants; their
    difference is the surviving O(eps^2) error scale."""
    eps_b = 1e-6
    u1, e1, _, s1 = _u_noninteger_b(a, b + eps_b, y)
    u2, e2, _, s2 = _u_noninteger_b(a, b + eps_b / 2, y)
    u3, e3, _, s3 = _u_noninteger_b(a, b + eps_b / 4, y)
    r1 = 2.0 * u2 - u1
    r2 = 2.0 * u3 - u2
    err = abs(r2 - r1) + 3.0 * max(e1, e2, e3)
    return r2, err, "log_case", max(s1, s2, s3)


def tricomi_u(a: float, b: float, y: float) -> SpecFunResult:
    """Confluent hypergeometric function of the second kind, U(a,b;y), y > 0."""
    if not y > 0:
        raise DomainError(f"tricomi_u requires y > 0, got {y}")
    if b == math.floor(b):
        if b <= 0:
            # reflect onto integer b' = 2-b >= 2
            vr, er, method, sc = _u_integer_b(a - b + 1.0, 2.0 - b, y)
            pw = y ** (1.0 - b)
            value, err, scale = pw * vr, pw * er, pw * sc
        else:
            value, err, method, scale = _u_integer_b(a, b, y)
    else:
        value, err, method, scale = _u_noninteger_b(a, b, y)
    if not math.isfinite(value):
        raise OverflowError(f"U({a},{b};{y}) overflows double precision")
    if err > 1e-8 * abs(value) + 1e-300 and err > 5e-14 * max(scale, abs(value)):
        # small values right next to a zero of U are fine as long as they are
        # certified against the term scale; anything else is a genuine failure
        raise AccuracyError(f"U({a},{b};{y}): estimate {err:.2e} vs value {value:.2e}")
    return SpecFunResult(value, err, method)


# ---------------------------------------------------------------------------
# Whittaker W and the large-parameter cosine form
# ---------------------------------------------------------------------------

def whittaker_w(kappa: float, nu: float, y: float) -> SpecFunResult:
    """W_{kappa,nu}(y) = e^{-y/2} y^{1/2+nu} U(1/2+nu-kappa, 1+2nu; y)."""
    if nu < 0:
        raise DomainError(f"whittaker_w requires nu >= 0, got {nu}")
    if not y > 0:
        raise DomainError(f"whittaker_w requires y > 0, got {y}")
    u = tricomi_u(0.5 + nu - kappa, 1.0 + 2.0 * nu, y)
    log_pref = -0.5 * y + (0.5 + nu) * math.log(y)
    if log_pref > 709.0:
        raise OverflowError("Whittaker prefactor overflows double precision")
    pref = math.exp(log_pref)
    value = pref * u.value
    err = pref * u.abs_error_estimate + _EPS * abs(value)
    return SpecFunResult(value, err, u.method_used)


def asymptotic_u_large_a(a: float, b: float, y0: float) -> float:
    """cos(sqrt(2 b y0 - 4 a y0) - b pi/2 + a pi + pi/4).

    Proportionality constant fixed to 1: only the zero locations feed the
    level construction."""
    s = 2.0 * b * y0 - 4.0 * a * y0
    if not (y0 > 0 and s > 0):
        raise DomainError(f"asymptotic_u_large_a needs 2*b*y0 - 4*a*y0 > 0, got {s}")
    return math.cos(math.sqrt(s) - 0.5 * b * math.pi + a * math.pi + 0.25 * math.pi)


def cosine_argument(a: float, b: float, y0: float) -> float:
    """Continuous phase inside asymptotic_u_large_a (used for root bisection)."""
    s = 2.0 * b * y0 - 4.0 * a * y0
    if not (y0 > 0 and s > 0):
        raise DomainError(f"cosine_argument needs 2*b*y0 - 4*a*y0 > 0, got {s}")
    return math.sqrt(s) - 0.5 * b * math.pi + a * math.pi + 0.25 * math.pi


# ---------------------------------------------------------------------------
# Independent quadrature reference (the oracle side of the dual route)
# ---------------------------------------------------------------------------

def _u_quadrature_pos_a(a, b, y):
    """U from the integral representation, a > 0.

    The [0,1] piece is flattened by t = v^(1/a) so the endpoint algebraic
    singularity disappears; the tail piece is integrated directly."""

    def head(v):
        t = v ** (1.0 / a)
        return math.exp(-y * t) * (1.0 + t) ** (b - a - 1.0) / a

    def tail(t):
        return math.exp(-y * t + (a - 1.0) * math.log(t) + (b - a - 1.0) * math.log1p(t))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        i1, e1 = integrate.quad(head, 0.0, 1.0, epsabs=1e-280, epsrel=1e-12, limit=300)
        i2, e2 = integrate.quad(tail, 1.0, math.inf, epsabs=1e-280, epsrel=1e-12, limit=300)
    g = math.gamma(a)
    return (i1 + i2) / g, (e1 + e2) / g + _EPS * abs(i1 + i2) / g * 4


def u_reference_quadrature(a: float, b: float, y: float) -> SpecFunResult:
    """Independent U evaluation: integral representation for a > 0, extended to
    a <= 0 by the downward recurrence
    U(x-1,b;y) = (y + 2x - b) U(x,b;y) - x (1 + x - b) U(x+1,b;y)."""
    if not y > 0:
        raise DomainError(f"u_reference_quadrature requires y > 0, got {y}")
    if a > 0:
        value, err = _u_quadrature_pos_a(a, b, y)
        return SpecFunResult(value, err, "integral")
    frac = a - math.floor(a)
    a0 = frac if frac > 0 else 1.0
    steps = round(a0 - a)
    u_hi, e_hi = _u_quadrature_pos_a(a0 + 1.0, b, y)
    u_lo, e_lo = _u_quadrature_pos_a(a0, b, y)
    x = a0
    for _ in range(steps):
        u_next = (y + 2.0 * x - b) * u_lo - x * (1.0 + x - b) * u_hi
        e_next = abs(y + 2.0 * x - b) * e_lo + abs(x * (1.0 + x - b)) * e_hi \
            + _EPS * abs(u_next) * 4
        u_hi, e_hi = u_lo, e_lo
        u_lo, e_lo = u_next, e_next
        x -= 1.0
    return SpecFunResult(u_lo, e_lo, "recurrence")
