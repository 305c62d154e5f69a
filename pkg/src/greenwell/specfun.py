"""Scalar special functions evaluated from scratch (no external libraries).

Everything the closed-form resolvents need: Gamma and its reciprocal,
the Kummer confluent hypergeometric series M(a,b,z), the parabolic
cylinder function D_nu(z), Airy Ai/Bi with derivatives, and physicists'
Hermite polynomials.

Design notes:
  * rgamma is the primary primitive.  It is entire, exactly zero at
    non-positive integers, and lets characteristic functions stay
    pole-free by construction.  gamma() is derived from it.
  * D_nu is evaluated through the even/odd Kummer fundamental system of
    Weber's equation.  This representation is entire in z and avoids the
    connection formulas an asymptotic approach would need for z < 0.
  * Airy functions use the Maclaurin series for |x| <= 7 and asymptotic
    expansions beyond.  Inside the series region a compensated
    double-double accumulation is switched on for x > 4, where the
    cancellation between the two series branches would otherwise destroy
    the exponentially small Ai against the large Bi.
  * Functions returning EvalResult report est_abs_error, an upper bound
    on the absolute error built from truncation plus rounding terms.

All functions are pure and hold no mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "EvalResult",
    "ConvergenceError",
    "DomainError",
    "PoleError",
    "gamma",
    "rgamma",
    "kummer_m",
    "pcf_d",
    "weber_even_odd",
    "airy_ai",
    "airy_ai_prime",
    "airy_bi",
    "airy_bi_prime",
    "airy_all",
    "hermite_h",
]

_EPS = 2.220446049250313e-16
_SQRT_PI = 1.7724538509055160273
_SQRT_2PI = 2.5066282746310005024


@dataclass(frozen=True)
class EvalResult:
    """A value together with a claimed upper bound on its absolute error."""

    value: float
    est_abs_error: float


class ConvergenceError(ArithmeticError):
    """A series failed to converge within its term budget."""


class DomainError(ValueError):
    """Argument outside the documented validity window."""


class PoleError(ValueError):
    """Evaluation requested at (or too close to) a pole."""


# ----------------------------------------------------------------------
# Gamma / reciprocal Gamma
# ----------------------------------------------------------------------

# Lanczos approximation, g = 607/128 with 15 coefficients.  Checked
# against 40-digit references: relative error < 2e-14 for |x| <= 50.
_LANCZOS_G = 4.7421875
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
)


def _gamma_lanczos(x):
    # requires x >= 0.5
    acc = _LANCZOS_C[0]
    for i in range(1, 15):
        acc += _LANCZOS_C[i] / (x - 1.0 + i)
    t = x + _LANCZOS_G - 0.5
    return _SQRT_2PI * t ** (x - 0.5) * math.exp(-t) * acc


def _sinpi(x):
    # sin(pi x) with exact zeros at integers (r below is computed exactly)
    n = round(x)
    r = x - n
    s = math.sin(math.pi * r)
    return -s if (n & 1) else s


def rgamma(x: float) -> float:
    """Reciprocal Gamma 1/Gamma(x), entire; exactly 0 at 0, -1, -2, ..."""
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"rgamma argument must be finite, got {x}")
    if x >= 0.5:
        return 1.0 / _gamma_lanczos(x)
    # reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x)/pi
    return _gamma_lanczos(1.0 - x) * _sinpi(x) / math.pi


def gamma(x: float) -> float:
    """Gamma(x).  Raises PoleError at non-positive integers (tol 1e-12)."""
    if x <= 0.5 and abs(x - round(x)) <= 1e-12 and round(x) <= 0:
        raise PoleError(f"gamma pole at x = {round(x)}")
    return 1.0 / rgamma(x)


# ----------------------------------------------------------------------
# Kummer confluent hypergeometric M(a, b, z)
# ----------------------------------------------------------------------

_KUMMER_MAX_TERMS = 10000


def kummer_m(a: float, b: float, z: float) -> EvalResult:
    """M(a,b,z) by direct series with compensated (Kahan) summation.

    Stops when two consecutive terms are below eps * |partial sum|.
    est_abs_error combines the last-term magnitude with a rounding bound
    eps * sum(|terms|), which also tracks cancellation for z < 0.
    """
    if b <= 0.5 and abs(b - round(b)) <= 1e-12 and round(b) <= 0:
        raise PoleError(f"kummer_m requires b not a non-positive integer, got b = {b}")
    if abs(z) > 200.0:
        raise DomainError(f"kummer_m series restricted to |z| <= 200, got z = {z}")
    term = 1.0
    total = 1.0
    comp = 0.0  # Kahan compensation
    abs_sum = 1.0
    small_streak = 0
    n = 0
    while n < _KUMMER_MAX_TERMS:
        term *= (a + n) * z / ((b + n) * (n + 1.0))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        abs_sum += abs(term)
        n += 1
        if abs(term) <= _EPS * abs(total):
            small_streak += 1
            if small_streak >= 2:
                break
        else:
            small_streak = 0
    else:
        raise ConvergenceError(
            f"kummer_m({a}, {b}, {z}) did not converge in {_KUMMER_MAX_TERMS} terms"
        )
    est = 2.0 * abs(term) + 16.0 * _EPS * abs_sum
    return EvalResult(total, est)


# ----------------------------------------------------------------------
# Weber / parabolic cylinder functions
# ----------------------------------------------------------------------


def weber_even_odd(nu: float, z: float):
    """Even/odd fundamental pair of Weber's equation y'' + (nu + 1/2 - z^2/4) y = 0.

    Returns (E, E', O, O', est) where
        E(z) = exp(-z^2/4) M(-nu/2, 1/2, z^2/2)
        O(z) = z exp(-z^2/4) M((1-nu)/2, 3/2, z^2/2)
    and est bounds the absolute error of the four values jointly.
    These two solutions are independent for every nu, which makes them
    the safe basis for continuing piecewise-parabolic problems.
    """
    w = 0.5 * z * z
    g = math.exp(-0.25 * z * z)
    m1 = kummer_m(-0.5 * nu, 0.5, w)
    m2 = kummer_m(0.5 * (1.0 - nu), 1.5, w)
    m3 = kummer_m(1.0 - 0.5 * nu, 1.5, w)
    m4 = kummer_m(0.5 * (3.0 - nu), 2.5, w)
    even = g * m1.value
    odd = z * g * m2.value
    # dM/dw = (a/b) M(a+1, b+1, w), dw/dz = z
    even_p = g * z * (-0.5 * m1.value - nu * m3.value)
    odd_p = g * ((1.0 - w) * m2.value + (z * z) * ((1.0 - nu) / 3.0) * m4.value)
    est = g * (m1.est_abs_error + abs(z) * m2.est_abs_error
               + abs(z) * (0.5 * m1.est_abs_error + abs(nu) * m3.est_abs_error)
               + (1.0 + w) * m2.est_abs_error + z * z * m4.est_abs_error)
    return even, even_p, odd, odd_p, est


def _pcf_series(nu, z):
    w = 0.5 * z * z
    m1 = kummer_m(-0.5 * nu, 0.5, w)
    m2 = kummer_m(0.5 * (1.0 - nu), 1.5, w)
    r1 = rgamma(0.5 * (1.0 - nu))
    r2 = rgamma(-0.5 * nu)
    pref = 2.0 ** (0.5 * nu) * math.exp(-0.25 * z * z) * _SQRT_PI
    t1 = r1 * m1.value
    t2 = math.sqrt(2.0) * z * r2 * m2.value
    value = pref * (t1 - t2)
    est = pref * (
        abs(r1) * m1.est_abs_error
        + math.sqrt(2.0) * abs(z) * abs(r2) * m2.est_abs_error
        + 16.0 * _EPS * (abs(t1) + abs(t2))
    )
    return EvalResult(value, est)


def _pcf_miller(nu, z):
    """D_nu(z) for strongly negative nu and z > 0 by upward recurrence.

    D_nu(z) is the minimal solution of D_{v+1} = z D_v - v D_{v-1} as
    v -> -infinity (for z > 0), so an arbitrary seed far below nu,
    recursed upward and normalized at an accurately-known anchor order,
    converges onto it (Miller's algorithm).  The anchor is the chain
    point in [0, 4) whose direct series evaluation reports the smallest
    relative error estimate.
    """
    m0 = int(math.ceil(-nu))
    best = None
    for extra in range(4):
        na = nu + m0 + extra
        r = _pcf_series(na, z)
        q = r.est_abs_error / abs(r.value) if r.value != 0.0 else math.inf
        if best is None or q < best[2]:
            best = (na, r, q)
    na, anchor, anchor_rel = best
    # seed depth: contaminating solution suppressed by exp(2 z dsqrt) >= 1e20
    dsqrt = 46.0 / (2.0 * z)
    nus_target = -((math.sqrt(max(-nu, 1.0)) + dsqrt) ** 2)
    length = max(int(math.ceil(na - nus_target)) + 2, m0 + 6)
    j_nu = length - (m0 + int(round(na - (nu + m0))))  # index of nu on the chain
    v = na - length
    prev, cur = 0.0, 1e-280
    val_nu = None
    j = 0
    while j < length:
        nxt = z * cur - v * prev
        prev, cur = cur, nxt
        v += 1.0
        j += 1
        if j == j_nu:
            val_nu = cur
        if abs(cur) > 1e250:
            prev *= 1e-250
            cur *= 1e-250
            if val_nu is not None:
                val_nu *= 1e-250
    scale = anchor.value / cur
    value = val_nu * scale
    est = abs(value) * (anchor_rel + 1e-18 + 8.0 * _EPS * length)
    return EvalResult(value, est)


def pcf_d(nu: float, z: float) -> EvalResult:
    """Parabolic cylinder D_nu(z).

    Primary route is the two-term Kummer representation
    D_nu(z) = 2^(nu/2) e^(-z^2/4) sqrt(pi) [ rgamma((1-nu)/2) M(-nu/2, 1/2, z^2/2)
              - sqrt(2) z rgamma(-nu/2) M((1-nu)/2, 3/2, z^2/2) ],
    which is entire in z.  For strongly negative nu with z > 0 the two
    terms cancel catastrophically (the value is exponentially small), so
    that regime switches to Miller-normalized upward recurrence in nu.
    Accuracy is ~1e-10 relative over the figure window |z| <= 10 with
    moderate nu; est_abs_error reports the cancellation honestly
    everywhere else.
    """
    if abs(z) > 30.0:
        raise DomainError(f"pcf_d restricted to |z| <= 30, got z = {z}")
    if abs(nu) > 60.0:
        raise DomainError(f"pcf_d restricted to |nu| <= 60, got nu = {nu}")
    if z > 0.0 and nu < 1.0 and not (nu >= 0.0 and nu == math.floor(nu)):
        # nonneg integer orders terminate exactly; everything else below
        # the anchor band goes through Miller once cancellation bites
        cancel_exp = 0.5 * z * z + z * math.sqrt(max(0.0, -2.0 * nu))
        if cancel_exp > 10.0:
            return _pcf_miller(nu, z)
    return _pcf_series(nu, z)


# ----------------------------------------------------------------------
# Airy functions
# ----------------------------------------------------------------------

# Ai(0), Ai'(0) split into double-double (hi, lo) pairs.
_AI0 = (0.3550280538878172, 2.05233632436212e-17)
_AIP0 = (-0.2588194037928068, 2.522243111610832e-17)
_SQRT3 = (1.7320508075688772, 1.0035084221806903e-16)

_AIRY_SERIES_CUT = 7.0   # Maclaurin series window
_AIRY_DD_MIN = 4.0       # double-double accumulation for x above this
_AIRY_DOMAIN = 25.0


def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _split(a):
    t = 134217729.0 * a  # 2^27 + 1
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def _dd_add(x, y):
    s, e = _two_sum(x[0], y[0])
    e += x[1] + y[1]
    hi, lo = _two_sum(s, e)
    return (hi, lo)


def _dd_mul(x, y):
    p, e = _two_prod(x[0], y[0])
    e += x[0] * y[1] + x[1] * y[0]
    hi, lo = _two_sum(p, e)
    return (hi, lo)


def _dd_div_d(x, d):
    q1 = x[0] / d
    p, e = _two_prod(q1, d)
    r = ((x[0] - p) - e) + x[1]
    return _two_sum(q1, r / d)


def _dd_scale(x, d):
    p, e = _two_prod(x[0], d)
    e += x[1] * d
    hi, lo = _two_sum(p, e)
    return (hi, lo)


def _airy_series_dd(x):
    """f, g branches and derivatives with double-double accumulation."""
    x_dd = (x, 0.0)
    x3 = _dd_mul(_dd_mul(x_dd, x_dd), x_dd)
    tf = (1.0, 0.0)       # f term, power x^(3k)
    tg = x_dd             # g term, power x^(3k+1)
    f = tf
    g = tg
    fp = (0.0, 0.0)       # f' = sum 3k c_k x^(3k-1)
    gp = (1.0, 0.0)       # g' = sum (3k+1) d_k x^(3k)
    for k in range(1, 80):
        tf = _dd_div_d(_dd_mul(tf, x3), (3.0 * k) * (3.0 * k - 1.0))
        tg = _dd_div_d(_dd_mul(tg, x3), (3.0 * k) * (3.0 * k + 1.0))
        f = _dd_add(f, tf)
        g = _dd_add(g, tg)
        # scale by the exact integer first, then dd-divide by x
        fp = _dd_add(fp, _dd_div_d(_dd_scale(tf, 3.0 * k), x))
        gp = _dd_add(gp, _dd_div_d(_dd_scale(tg, 3.0 * k + 1.0), x))
        if abs(tf[0]) < 1e-32 * abs(f[0]) and abs(tg[0]) < 1e-32 * abs(g[0]):
            break
    return f, g, fp, gp


def _airy_series(x):
    """Plain-double Maclaurin evaluation; also returns |term| sums."""
    x3 = x * x * x
    tf = 1.0
    tg = x
    f, g = tf, tg
    fp, gp = 0.0, 1.0
    sf, sg = 1.0, abs(x)
    for k in range(1, 80):
        tf = tf * x3 / ((3.0 * k) * (3.0 * k - 1.0))
        tg = tg * x3 / ((3.0 * k) * (3.0 * k + 1.0))
        f += tf
        g += tg
        fp += tf * (3.0 * k) / x
        gp += tg * (3.0 * k + 1.0) / x
        sf += abs(tf)
        sg += abs(tg)
        if abs(tf) < _EPS * 0.01 * sf and abs(tg) < _EPS * 0.01 * max(sg, 1.0):
            break
    return f, g, fp, gp, sf, sg


# u_k, v_k asymptotic coefficients: u_0 = v_0 = 1,
# u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / (216 k (2k-1)),  v_k = -u_k (6k+1)/(6k-1).
def _asym_uv(max_k=60):
    us, vs = [1.0], [1.0]
    u = 1.0
    for k in range(1, max_k):
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / (216.0 * k * (2.0 * k - 1.0))
        us.append(u)
        vs.append(-u * (6.0 * k + 1.0) / (6.0 * k - 1.0))
    return us, vs


_ASYM_U, _ASYM_V = _asym_uv()


def _asym_sums(zeta, signed):
    """sum u_k s^k / zeta^k and companion v-sum, with truncation estimate.

    signed=True alternates the sign (the e^{-zeta} expansions); stops at
    the smallest term.  Returns (Su, Sv, trunc_rel).
    """
    s = -1.0 if signed else 1.0
    su = sv = 1.0
    prev = 1.0
    trunc = 0.0
    p = 1.0
    for k in range(1, len(_ASYM_U)):
        p *= s / zeta
        tu = _ASYM_U[k] * p
        if abs(tu) >= prev:  # divergence point reached
            trunc = abs(tu)
            break
        su += tu
        sv += _ASYM_V[k] * p
        prev = abs(tu)
        trunc = abs(tu)
        if abs(tu) < 1e-18:
            break
    return su, sv, trunc


def _airy_asym_pos(x):
    """Exponential-form expansions for x > series cut."""
    zeta = 2.0 / 3.0 * x ** 1.5
    q = x ** 0.25
    su_m, sv_m, tr_m = _asym_sums(zeta, signed=True)
    su_p, sv_p, tr_p = _asym_sums(zeta, signed=False)
    em = math.exp(-zeta)
    ep = math.exp(zeta)
    ai = 0.5 * em / (_SQRT_PI * q) * su_m
    aip = -0.5 * q * em / _SQRT_PI * sv_m
    bi = ep / (_SQRT_PI * q) * su_p
    bip = q * ep / _SQRT_PI * sv_p
    # eps*zeta covers the rounding of the exponential's argument
    rel = 2.0 * max(tr_m, tr_p) + (4.0 + 2.0 * zeta) * _EPS
    return (ai, aip, bi, bip, rel)


def _airy_asym_neg(x):
    """Oscillatory expansions for x < -series cut (t = -x).

    P_u = sum (-1)^k u_{2k} zeta^{-2k},  Q_u = sum (-1)^k u_{2k+1} zeta^{-2k-1}
    (same with v for the derivatives), truncated at the smallest term.
    """
    t = -x
    zeta = 2.0 / 3.0 * t ** 1.5
    q = t ** 0.25
    theta = zeta - 0.25 * math.pi
    c, s = math.cos(theta), math.sin(theta)
    pu = qu = pv = qv = 0.0
    prev = math.inf
    trunc = 0.0
    zp = 1.0  # zeta^-k
    for k in range(len(_ASYM_U)):
        tu = _ASYM_U[k] * zp
        if abs(tu) >= prev:
            trunc = abs(tu)
            break
        sign = -1.0 if (k // 2) & 1 else 1.0
        if k % 2 == 0:
            pu += sign * tu
            pv += sign * _ASYM_V[k] * zp
        else:
            qu += sign * tu
            qv += sign * _ASYM_V[k] * zp
        prev = abs(tu)
        trunc = abs(tu)
        zp /= zeta
        if abs(tu) < 1e-18:
            break
    ai = (c * pu + s * qu) / (_SQRT_PI * q)
    bi = (-s * pu + c * qu) / (_SQRT_PI * q)
    aip = q / _SQRT_PI * (s * pv - c * qv)
    bip = q / _SQRT_PI * (c * pv + s * qv)
    # amplitude-level bound: phase rounding eps*zeta dominates for large zeta
    rel = 2.0 * trunc + (4.0 + 2.0 * zeta) * _EPS
    return (ai, aip, bi, bip, rel)


def airy_all(x: float):
    """(Ai, Ai', Bi, Bi') at x, each an EvalResult."""
    if math.isnan(x) or abs(x) > _AIRY_DOMAIN:
        raise DomainError(f"airy functions restricted to |x| <= {_AIRY_DOMAIN}, got {x}")
    if x > _AIRY_SERIES_CUT:
        ai, aip, bi, bip, rel = _airy_asym_pos(x)
        return (
            EvalResult(ai, abs(ai) * rel),
            EvalResult(aip, abs(aip) * rel),
            EvalResult(bi, abs(bi) * rel),
            EvalResult(bip, abs(bip) * rel),
        )
    if x < -_AIRY_SERIES_CUT:
        ai, aip, bi, bip, rel = _airy_asym_neg(x)
        amp = 1.0 / (_SQRT_PI * (-x) ** 0.25)
        ampp = (-x) ** 0.25 / _SQRT_PI
        return (
            EvalResult(ai, amp * rel),
            EvalResult(aip, ampp * rel),
            EvalResult(bi, amp * rel),
            EvalResult(bip, ampp * rel),
        )
    if x == 0.0:
        return (
            EvalResult(_AI0[0], 2.0 * _EPS * _AI0[0]),
            EvalResult(_AIP0[0], 2.0 * _EPS * abs(_AIP0[0])),
            EvalResult(_SQRT3[0] * _AI0[0], 4.0 * _EPS * _AI0[0]),
            EvalResult(-_SQRT3[0] * _AIP0[0], 4.0 * _EPS * abs(_AIP0[0])),
        )
    if x > _AIRY_DD_MIN:
        f, g, fp, gp = _airy_series_dd(x)
        c1, c2 = _AI0, _AIP0
        ai = _dd_add(_dd_mul(c1, f), _dd_mul(c2, g))
        aip = _dd_add(_dd_mul(c1, fp), _dd_mul(c2, gp))
        nc2 = (-c2[0], -c2[1])
        bi = _dd_mul(_SQRT3, _dd_add(_dd_mul(c1, f), _dd_mul(nc2, g)))
        bip = _dd_mul(_SQRT3, _dd_add(_dd_mul(c1, fp), _dd_mul(nc2, gp)))
        return (
            EvalResult(ai[0], 8.0 * _EPS * abs(ai[0]) + 1e-26 * abs(f[0])),
            EvalResult(aip[0], 8.0 * _EPS * abs(aip[0]) + 1e-26 * abs(fp[0])),
            EvalResult(bi[0], 8.0 * _EPS * abs(bi[0])),
            EvalResult(bip[0], 8.0 * _EPS * abs(bip[0])),
        )
    f, g, fp, gp, sf, sg = _airy_series(x)
    c1, c2 = _AI0[0], _AIP0[0]
    r3 = _SQRT3[0]
    ai = c1 * f + c2 * g
    aip = c1 * fp + c2 * gp
    bi = r3 * (c1 * f - c2 * g)
    bip = r3 * (c1 * fp - c2 * gp)
    df = 4.0 * _EPS * (abs(c1) * sf + abs(c2) * sg)
    dfp = 4.0 * _EPS * (abs(c1) + abs(c2)) * (sf + sg) * max(1.0, abs(x))
    return (
        EvalResult(ai, df),
        EvalResult(aip, dfp),
        EvalResult(bi, r3 * df),
        EvalResult(bip, r3 * dfp),
    )


def airy_ai(x: float) -> EvalResult:
    return airy_all(x)[0]


def airy_ai_prime(x: float) -> EvalResult:
    return airy_all(x)[1]


def airy_bi(x: float) -> EvalResult:
    return airy_all(x)[2]


def airy_bi_prime(x: float) -> EvalResult:
    return airy_all(x)[3]


# ----------------------------------------------------------------------
# Hermite polynomials
# ----------------------------------------------------------------------


def hermite_h(n: int, x: float) -> float:
    """Physicists' Hermite H_n(x) by the three-term recurrence."""
    if n < 0 or n != int(n):
        raise ValueError(f"hermite_h order must be a non-negative integer, got {n}")
    if n > 2000:
        raise ValueError(f"hermite_h order limited to 2000, got {n}")
    if n == 0:
        return 1.0
    hm, h = 1.0, 2.0 * x
    for k in range(1, n):
        hm, h = h, 2.0 * x * h - 2.0 * k * hm
    return h
