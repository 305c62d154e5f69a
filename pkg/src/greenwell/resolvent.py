"""Closed-form energy-dependent Green functions for the confining wells.

Every operation returns the resolvent kernel G(x, x'; E) in the
convention (H - E) G = delta(x - x'), i.e. G = sum psi psi* / (E_n - E).
The dimensionless companion is G~ = -(hbar^2 / 2m) G and satisfies
[d^2/dx^2 + (2m/hbar^2)(E - V)] G~ = delta.

The harmonic-oscillator kernel (and its Stark shift) is globally exact:
both D_nu(mu x) and D_nu(-mu x) solve Weber's equation on the whole
line.  The |x|-type wells are piecewise problems: the decaying solution
of one side continued through x = 0 acquires a component of the second
solution of the other side.  The product forms that drop that component
are exact only when x and x' straddle the origin; here the continuation
is carried out properly, so the kernels satisfy the defining equation
for every argument pair (the straddling case reproduces the plain
product forms identically).

The truncated Hermite-series resolvent is retained as an internal test
oracle.  Its plain truncation tail decays like 1/sqrt(n_terms), far too
slow for tight cross-checks, so `tail=True` completes the sum with a
quadrature of the Mehler-kernel generating function minus the summed
polynomial part; the completed value is accurate to ~1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import specfun as sf
from .model import HO, LINEAR_ABS, PhysicalScales

__all__ = [
    "GreenEval",
    "NearPoleError",
    "OnResonanceError",
    "green_ho",
    "green_ho_series",
    "green_ho_stark",
    "green_linear",
    "green_ho_plus_abs",
    "green_decorated",
    "to_tilde",
    "linear_solution_pair",
    "hoabs_solution_pair",
]

_HO_POLE_RADIUS = 1e-9
_LINEAR_POLE_RADIUS = 1e-10
_RESONANCE_RADIUS = 1e-12


@dataclass(frozen=True)
class GreenEval:
    value: float
    convention: str  # "G" or "G_TILDE"
    x_lt: float
    x_gt: float


class NearPoleError(ArithmeticError):
    """Energy within the exclusion radius of a bound-state pole."""

    def __init__(self, message, index=None, parity=None):
        super().__init__(message)
        self.index = index
        self.parity = parity


class OnResonanceError(ArithmeticError):
    """Decorated resolvent evaluated at one of its own bound states."""


def to_tilde(g: GreenEval, scales: PhysicalScales) -> GreenEval:
    """Convert a G-convention evaluation to G~ = -(hbar^2/2m) G."""
    if g.convention != "G":
        return g
    return GreenEval(-(scales.hbar ** 2 / (2.0 * scales.mass)) * g.value,
                     "G_TILDE", g.x_lt, g.x_gt)


def _check_ho_pole(eps, radius=_HO_POLE_RADIUS):
    k = round(eps - 0.5)
    if k >= 0 and abs(eps - (k + 0.5)) < radius:
        raise NearPoleError(
            f"eps = {eps} within {radius:g} of bound state n = {k}", index=int(k))


# ----------------------------------------------------------------------
# Harmonic oscillator and Stark shift
# ----------------------------------------------------------------------


def green_ho(x: float, xp: float, energy: float, scales: PhysicalScales) -> GreenEval:
    """G_ho = sqrt(m/(pi w hbar^3)) Gamma(1/2 - eps) D_{eps-1/2}(mu x>) D_{eps-1/2}(-mu x<)."""
    s = scales
    w = s.omega1
    eps = energy / (s.hbar * w)
    _check_ho_pole(eps)
    mu = math.sqrt(2.0 * s.mass * w / s.hbar)
    lo, hi = (x, xp) if x <= xp else (xp, x)
    nu = eps - 0.5
    # group the D product first: IEEE multiplication commutes, so the
    # parity map (x, x') -> (-x', -x), which swaps the two factors,
    # reproduces the value bit-exactly
    dprod = sf.pcf_d(nu, mu * hi).value * sf.pcf_d(nu, -mu * lo).value
    val = math.sqrt(s.mass / (math.pi * w * s.hbar ** 3)) / sf.rgamma(0.5 - eps) * dprod
    return GreenEval(val, "G", lo, hi)


def _series_terms(y, yp, n_terms):
    """a_n = H_n(y) H_n(yp) / (2^n n!) by the normalized pair recurrence."""
    out = [1.0]
    if n_terms == 1:
        return out
    hy0, hp0 = 1.0, 1.0
    hy1, hp1 = math.sqrt(2.0) * y, math.sqrt(2.0) * yp
    out.append(hy1 * hp1)
    for n in range(1, n_terms - 1):
        c1 = math.sqrt(2.0 / (n + 1.0))
        c2 = math.sqrt(n / (n + 1.0))
        hy2 = c1 * y * hy1 - c2 * hy0
        hp2 = c1 * yp * hp1 - c2 * hp0
        out.append(hy2 * hp2)
        hy0, hy1 = hy1, hy2
        hp0, hp1 = hp1, hp2
    return out


# 32-point Gauss-Legendre nodes/weights on [-1, 1]
_GL32_X = (
    -0.9972638618494816, -0.9856115115452684, -0.9647622555875064,
    -0.9349060759377397, -0.8963211557660522, -0.84936761373257,
    -0.7944837959679424, -0.7321821187402897, -0.6630442669302152,
    -0.5877157572407623, -0.5068999089322294, -0.42135127613063533,
    -0.33186860228212767, -0.23928736225213706, -0.1444719615827965,
    -0.04830766568773831, 0.04830766568773831, 0.1444719615827965,
    0.23928736225213706, 0.33186860228212767, 0.42135127613063533,
    0.5068999089322294, 0.5877157572407623, 0.6630442669302152,
    0.7321821187402897, 0.7944837959679424, 0.84936761373257,
    0.8963211557660522, 0.9349060759377397, 0.9647622555875064,
    0.9856115115452684, 0.9972638618494816,
)
_GL32_W = (
    0.007018610009469298, 0.016274394730905965, 0.025392065309262427,
    0.034273862913021626, 0.042835898022226426, 0.050998059262376244,
    0.058684093478535704, 0.06582222277636175, 0.07234579410884845,
    0.07819389578707031, 0.08331192422694685, 0.08765209300440391,
    0.09117387869576386, 0.09384439908080457, 0.09563872007927483,
    0.09654008851472781, 0.09654008851472781, 0.09563872007927483,
    0.09384439908080457, 0.09117387869576386, 0.08765209300440391,
    0.08331192422694685, 0.07819389578707031, 0.07234579410884845,
    0.06582222277636175, 0.058684093478535704, 0.050998059262376244,
    0.042835898022226426, 0.034273862913021626, 0.025392065309262427,
    0.016274394730905965, 0.007018610009469298,
)
# panel edges in v (u = 1 - v^2); graded toward v = 0 where u^n peaks
_TAIL_PANELS = (0.0, 0.02, 0.05, 0.12, 0.25, 0.45, 0.7, 1.0)


def _series_tail(y, yp, eps, a_terms):
    """integral_0^1 u^(-eps-1/2) [K(u) - P(u)] du over u = 1 - v^2.

    K is the Mehler generating kernel sum a_n u^n; P is the partial sum
    of the first len(a_terms) terms.  Together with the analytically
    integrated partial sum this completes the truncated series.
    """
    n_terms = len(a_terms)
    dyp2 = (y - yp) ** 2

    def integrand(v):
        u = 1.0 - v * v
        acc = 0.0
        for a_n in reversed(a_terms):
            acc = acc * u + a_n
        one_minus_u2 = v * v * (2.0 - v * v)
        if one_minus_u2 <= 0.0:
            return 0.0
        expo = 2.0 * y * yp * u / (1.0 + u) - dyp2 * u * u / one_minus_u2
        kern = math.exp(expo) / math.sqrt(one_minus_u2)
        val = kern - acc
        if u > 0.0:
            val *= u ** (-eps - 0.5)
        return val * 2.0 * v

    total = 0.0
    for i in range(len(_TAIL_PANELS) - 1):
        lo, hi = _TAIL_PANELS[i], _TAIL_PANELS[i + 1]
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        acc = 0.0
        for r, wgt in zip(_GL32_X, _GL32_W):
            acc += wgt * integrand(mid + half * r)
        total += acc * half
    return total


def green_ho_series(x, xp, energy, scales, n_terms=500, tail=False) -> GreenEval:
    """Truncated Hermite resolvent series (optionally tail-completed).

    With tail=False this is the plain truncation of
      G = sqrt(m/(w hbar^3)) e^{-(y^2+y'^2)/2}/sqrt(pi)
          sum_n a_n / (n + 1/2 - eps),      a_n = H_n(y)H_n(y')/(2^n n!),
    whose remainder decays only like 1/sqrt(n_terms).  With tail=True
    the remainder is completed by Mehler-kernel quadrature, giving an
    independent oracle accurate to ~1e-10 relative.
    """
    if not (1 <= n_terms <= 2000):
        raise ValueError(f"n_terms must be in 1..2000, got {n_terms}")
    s = scales
    w = s.omega1
    eps = energy / (s.hbar * w)
    k = round(eps - 0.5)
    if k >= 0 and abs(eps - (k + 0.5)) < 1e-6:
        raise NearPoleError(
            f"series resolvent needs eps at least 1e-6 from poles, eps = {eps}",
            index=int(k))
    if tail and n_terms <= eps - 0.5:
        raise ValueError("tail completion requires n_terms > eps - 1/2")
    lo, hi = (x, xp) if x <= xp else (xp, x)
    gam = math.sqrt(s.mass * w / s.hbar)
    y, yp = gam * lo, gam * hi
    a_terms = _series_terms(y, yp, n_terms)
    acc = 0.0
    for n in range(n_terms - 1, -1, -1):
        acc += a_terms[n] / (n + 0.5 - eps)
    if tail:
        acc += _series_tail(y, yp, eps, a_terms)
    pref = math.sqrt(s.mass / (w * s.hbar ** 3)) / math.sqrt(math.pi)
    val = pref * math.exp(-0.5 * (y * y + yp * yp)) * acc
    return GreenEval(val, "G", lo, hi)


def green_ho_stark(x, xp, energy, scales) -> GreenEval:
    """Uniform-field shift: G_{ho,a}(x,x';E) = G_ho(x+phi, x'+phi; E + hbar w (mu phi/2)^2)."""
    s = scales
    w = s.omega1
    mu = math.sqrt(2.0 * s.mass * w / s.hbar)
    phi = s.alpha1 ** 3 / (s.mass * w * w)
    shift = s.hbar * w * (0.5 * mu * phi) ** 2
    inner = green_ho(x + phi, xp + phi, energy + shift, scales)
    lo, hi = (x, xp) if x <= xp else (xp, x)
    return GreenEval(inner.value, "G", lo, hi)


# ----------------------------------------------------------------------
# |x| well
# ----------------------------------------------------------------------


def linear_solution_pair(t, rho):
    """Decaying solutions of w'' = (|t| - rho) w in the scaled variable t.

    Returns (u, u', v, v') at t, where u decays as t -> +inf and
    v(t) = u(-t) decays as t -> -inf.  For t >= 0, u is Ai(t - rho); for
    t < 0 it is continued as alpha Ai(-t - rho) + beta Bi(-t - rho)
    with the matching coefficients fixed at t = 0.
    """
    a0, ap0, b0, bp0 = (r.value for r in sf.airy_all(-rho))
    alpha = math.pi * (a0 * bp0 + ap0 * b0)
    beta = -2.0 * math.pi * a0 * ap0
    if t >= 0.0:
        ai, aip, bi, bip = (r.value for r in sf.airy_all(t - rho))
        u, up = ai, aip
        v = alpha * ai + beta * bi
        vp = alpha * aip + beta * bip
    else:
        ai, aip, bi, bip = (r.value for r in sf.airy_all(-t - rho))
        u = alpha * ai + beta * bi
        up = -(alpha * aip + beta * bip)
        v, vp = ai, -aip
    return u, up, v, vp


def _check_linear_pole(a0, ap0, radius=_LINEAR_POLE_RADIUS):
    if abs(a0 * ap0) < radius:
        parity = "odd" if abs(a0) < abs(ap0) else "even"
        raise NearPoleError(
            f"rho within the exclusion radius of an Airy-zero pole ({parity} state)",
            parity=parity)


def green_linear(x, xp, energy, scales) -> GreenEval:
    """Green function of V = alpha^3 |x| built from Airy solutions.

    Reduces to
      -(2m/hbar^2)^(2/3) (1/2 alpha) Ai(zeta x> - rho) Ai(-zeta x< - rho)
        / (Ai(-rho) Ai'(-rho))
    when x and x' straddle the origin; same-side pairs use the properly
    continued left/right-decaying solutions.
    """
    s = scales
    k = (2.0 * s.mass / s.hbar ** 2) ** (1.0 / 3.0)
    rho = energy / s.alpha1 ** 2 * k
    zeta = s.alpha1 * k
    a0 = sf.airy_ai(-rho).value
    ap0 = sf.airy_ai_prime(-rho).value
    _check_linear_pole(a0, ap0)
    lo, hi = (x, xp) if x <= xp else (xp, x)
    u_hi = linear_solution_pair(zeta * hi, rho)[0]
    v_lo = linear_solution_pair(zeta * lo, rho)[2]
    # G = -(2m/hbar^2) G~,  G~ = -u(x>) v(x<) / W,  W = -2 zeta Ai Ai';
    # the grouped product keeps the parity swap bit-exact
    val = -(2.0 * s.mass / s.hbar ** 2) * (u_hi * v_lo) / (2.0 * zeta * a0 * ap0)
    return GreenEval(val, "G", lo, hi)


# ----------------------------------------------------------------------
# Harmonic oscillator plus symmetric linear term
# ----------------------------------------------------------------------


def hoabs_solution_pair(x, energy, scales):
    """(psi1, psi1', psi2, psi2') for V = m w^2 x^2/2 + alpha^3 |x|.

    psi1 decays at +inf: D_{sigma-1/2}(mu x + mu phi) for x >= 0.  For
    x < 0 the potential branch is the parabola centered at x = +phi, so
    psi1 is continued there in the always-independent even/odd Weber
    basis of z = mu (x - phi).  psi2(x) = psi1(-x) by parity.
    """
    s = scales
    w = s.omega1
    mu = math.sqrt(2.0 * s.mass * w / s.hbar)
    phi = s.alpha1 ** 3 / (s.mass * w * w)
    eps = energy / (s.hbar * w)
    sigma = eps + (0.5 * mu * phi) ** 2
    nu = sigma - 0.5

    def psi1(t):
        if t >= 0.0:
            z = mu * t + mu * phi
            d = sf.pcf_d(nu, z).value
            # D'(z) = (z/2) D(z) - D_{nu+1}(z)
            dp = 0.5 * z * d - sf.pcf_d(nu + 1.0, z).value
            return d, mu * dp
        # x < 0: solutions of the left branch are functions of z = mu (t - phi)
        z0 = -mu * phi
        e0, ep0, o0, op0, _ = sf.weber_even_odd(nu, z0)
        d0 = sf.pcf_d(nu, mu * phi).value
        dp0 = 0.5 * (mu * phi) * d0 - sf.pcf_d(nu + 1.0, mu * phi).value
        # match A e + B o to (value, derivative/mu) of psi1 at t = 0
        det = e0 * op0 - o0 * ep0
        A = (d0 * op0 - o0 * dp0) / det
        B = (e0 * dp0 - d0 * ep0) / det
        z = mu * (t - phi)
        ev, evp, ov, ovp, _ = sf.weber_even_odd(nu, z)
        return A * ev + B * ov, mu * (A * evp + B * ovp)

    v1, v1p = psi1(x)
    v2, v2p = psi1(-x)
    return v1, v1p, v2, -v2p


def _hoabs_denominator(nu, mu_phi):
    d0 = sf.pcf_d(nu, mu_phi).value
    d1 = sf.pcf_d(nu + 1.0, mu_phi).value
    return d0, mu_phi * d0 - 2.0 * d1


def green_ho_plus_abs(x, xp, energy, scales) -> GreenEval:
    """Green function of V = m w^2 x^2 / 2 + alpha^3 |x|.

    The denominator D_{s-1/2}(mu phi) [mu phi D_{s-1/2}(mu phi)
    - 2 D_{s+1/2}(mu phi)] carries the bound states (odd/even factor).
    Straddling argument pairs reduce to the plain product of
    D_{s-1/2}(-mu x< + mu phi) D_{s-1/2}(mu x> + mu phi); same-side
    pairs use the continued solutions.  Overall sign fixed by the
    defining equation (H - E) G = delta.
    """
    s = scales
    w = s.omega1
    mu = math.sqrt(2.0 * s.mass * w / s.hbar)
    phi = s.alpha1 ** 3 / (s.mass * w * w)
    eps = energy / (s.hbar * w)
    sigma = eps + (0.5 * mu * phi) ** 2
    nu = sigma - 0.5
    d0, even = _hoabs_denominator(nu, mu * phi)
    den = d0 * even
    if abs(den) < _LINEAR_POLE_RADIUS:
        parity = "odd" if abs(d0) < abs(even) else "even"
        raise NearPoleError("energy within the exclusion radius of a pole "
                            f"({parity} state)", parity=parity)
    lo, hi = (x, xp) if x <= xp else (xp, x)
    p1 = hoabs_solution_pair(hi, energy, scales)[0]
    p2 = hoabs_solution_pair(lo, energy, scales)[2]
    val = -(2.0 * s.mass / (mu * s.hbar ** 2)) * (p1 * p2) / den
    return GreenEval(val, "G", lo, hi)


# ----------------------------------------------------------------------
# Dirac-delta decoration
# ----------------------------------------------------------------------

_BASE_GREEN = {}


def _base_green(tag):
    try:
        return _BASE_GREEN[tag]
    except KeyError:
        raise ValueError(f"green_decorated base must be HO or LINEAR_ABS, got {tag!r}") from None


def green_decorated(x, xp, energy, base_family, scales) -> GreenEval:
    """Resolvent of base potential + a delta(x - q), resummed exactly.

    From (H0 + V - E) G = 1 with V = a delta(. - q):
        G = G0 - a G0(x,q) G0(q,x') / (1 + a G0(q,q)),
    whose denominator vanishes exactly on the decorated bound states
    G0(q,q) = -1/a.
    """
    g0 = _base_green(base_family)
    a = scales.delta_strength
    q = scales.delta_position
    if a is None or q is None:
        raise ValueError("decorated resolvent requires delta_strength and delta_position")
    gqq = g0(q, q, energy, scales).value
    den = 1.0 + a * gqq
    if abs(den) < _RESONANCE_RADIUS:
        raise OnResonanceError(
            f"1 + a G(q,q) = {den:g}: E = {energy} is a decorated bound state")
    lo, hi = (x, xp) if x <= xp else (xp, x)
    base = g0(lo, hi, energy, scales).value
    val = base - a * g0(lo, q, energy, scales).value * g0(q, hi, energy, scales).value / den
    return GreenEval(val, "G", lo, hi)


_BASE_GREEN[HO] = green_ho
_BASE_GREEN[LINEAR_ABS] = green_linear
