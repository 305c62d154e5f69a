"""Pole-free characteristic functions and bound-state root finding.

Each potential family gets a real function of its natural dimensionless
energy variable (eps for the quadratic families, rho for the linear
ones) whose zeros are exactly the bound states.  Poles of the Green
functions are cleared with the entire reciprocal-Gamma, so every
function here is finite and smooth across its scan window.

Root finding is deliberately simple and robust: scan at a fixed step,
bracket every sign change, refine by bisection.  Tangential
(non-sign-changing) roots are not detected; the only known candidates
are parameter-limit coincidences (e.g. the two factor families of a
symmetric well merging at beta = 1), which are handled by the parent
family's characteristic function instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import specfun as sf
from .model import (
    DELTA_DECORATED,
    HALF_HO_HALF_LINEAR,
    HO,
    HO_ASYM,
    HO_PLUS_ABS,
    HO_STARK,
    LINEAR_ABS,
    LINEAR_ASYM,
    PotentialFamily,
    dimensionless,
    with_scales,
)

__all__ = [
    "CharacteristicFunction",
    "Root",
    "SpectrumResult",
    "SweepResult",
    "chi_ho",
    "chi_ho_stark",
    "levels_ho_stark",
    "chi_asym_ho",
    "chi_linear",
    "chi_linear_even",
    "chi_linear_odd",
    "chi_asym_linear",
    "chi_half_half",
    "chi_ho_plus_abs",
    "chi_ho_plus_abs_even",
    "chi_ho_plus_abs_odd",
    "chi_delta_ho",
    "chi_delta_linear",
    "build_chi",
    "find_roots",
    "flag_missing",
    "sweep",
    "SWEEP_PARAMS",
]

_BRACKET_WIDTH = 2.5e-13


# ----------------------------------------------------------------------
# characteristic functions
# ----------------------------------------------------------------------


def chi_ho(eps: float) -> float:
    """Zero exactly at eps = n + 1/2 (reciprocal-Gamma form)."""
    return sf.rgamma(0.5 - eps)


def chi_ho_stark(eps: float, dmap) -> float:
    """Shifted-oscillator condition: zero at eps = n + 1/2 - (mu phi/2)^2."""
    shift = (0.5 * dmap.mu * dmap.phi) ** 2
    return sf.rgamma(0.5 - (eps + shift))


def levels_ho_stark(n: int, dmap) -> float:
    """Analytic Stark-shifted levels eps_n = n + 1/2 - (mu phi / 2)^2."""
    if n < 0:
        raise ValueError("level index must be >= 0")
    return n + 0.5 - (0.5 * dmap.mu * dmap.phi) ** 2


def chi_asym_ho(eps: float, lam: float) -> float:
    """Two-frequency matching condition, cleared of Gamma poles:

    1/(G(1/4 - lam eps/2) G(3/4 - eps/2))
        + sqrt(lam)/(G(1/4 - eps/2) G(3/4 - lam eps/2)) = 0.
    """
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    return (sf.rgamma(0.25 - 0.5 * lam * eps) * sf.rgamma(0.75 - 0.5 * eps)
            + math.sqrt(lam) * sf.rgamma(0.25 - 0.5 * eps) * sf.rgamma(0.75 - 0.5 * lam * eps))


def chi_linear_even(rho: float) -> float:
    """Even states of the |x| well: zeros of Ai'(-rho)."""
    return sf.airy_ai_prime(-rho).value


def chi_linear_odd(rho: float) -> float:
    """Odd states of the |x| well: zeros of Ai(-rho)."""
    return sf.airy_ai(-rho).value


def chi_linear(rho: float) -> float:
    """Product form, vanishing on the merged (alternating) spectrum."""
    ai, aip, _, _ = sf.airy_all(-rho)
    return ai.value * aip.value


def chi_asym_linear(rho: float, beta: float) -> float:
    """Two-slope matching condition with denominators cleared:

    Ai(-rho) Ai'(-rho beta^2) + beta Ai(-rho beta^2) Ai'(-rho) = 0.

    Clearing is safe here: the expression equals the matching
    determinant of the two decaying half-line solutions, whose zeros
    are all genuine eigenvalues (coincident factor zeros included).
    """
    if beta <= 0.0:
        raise ValueError("beta must be positive")
    a1, a1p, _, _ = sf.airy_all(-rho)
    a2, a2p, _, _ = sf.airy_all(-rho * beta * beta)
    return a1.value * a2p.value + beta * a2.value * a1p.value


def _asym_linear_degenerate(rho, beta):
    """True when both determinant terms vanish individually (coincident
    zeros of the two factors); such roots deserve an oracle cross-check
    and are flagged rather than silently reported."""
    a1, a1p, _, _ = sf.airy_all(-rho)
    a2, a2p, _, _ = sf.airy_all(-rho * beta * beta)
    t1 = a1.value * a2p.value
    t2 = beta * a2.value * a1p.value
    scale = (abs(a1.value) + abs(a1p.value)) * (abs(a2.value) + abs(a2p.value))
    return max(abs(t1), abs(t2)) < 1e-9 * max(scale, 1e-30)


def chi_half_half(eps: float, xi: float, scales) -> float:
    """Composite half-oscillator/half-linear condition:

    Ai'(-xi^2 eps)/Gamma(3/4 - eps/2)
        - sqrt(2) (hbar^2/2m)^(1/3) xi Ai(-xi^2 eps)/Gamma(1/4 - eps/2) = 0

    The (hbar^2/2m)^(1/3) factor is kept symbolic; at the family default
    hbar^2 = 2m it equals one.  (Dimensional analysis of the matching
    condition gives exactly one at any convention; see the ledger.)
    """
    if xi <= 0.0:
        raise ValueError("xi must be positive")
    unit = (scales.hbar ** 2 / (2.0 * scales.mass)) ** (1.0 / 3.0)
    ai, aip, _, _ = sf.airy_all(-xi * xi * eps)
    return (aip.value * sf.rgamma(0.75 - 0.5 * eps)
            - math.sqrt(2.0) * unit * xi * ai.value * sf.rgamma(0.25 - 0.5 * eps))


def chi_ho_plus_abs_odd(eps: float, dmap) -> float:
    """Odd factor D_{sigma-1/2}(mu phi) = 0, as a function of eps."""
    sigma = eps + (0.5 * dmap.mu * dmap.phi) ** 2
    return sf.pcf_d(sigma - 0.5, dmap.mu * dmap.phi).value


def chi_ho_plus_abs_even(eps: float, dmap) -> float:
    """Even factor mu phi D_{sigma-1/2}(mu phi) - 2 D_{sigma+1/2}(mu phi) = 0."""
    mu_phi = dmap.mu * dmap.phi
    sigma = eps + (0.5 * mu_phi) ** 2
    return (mu_phi * sf.pcf_d(sigma - 0.5, mu_phi).value
            - 2.0 * sf.pcf_d(sigma + 0.5, mu_phi).value)


def chi_ho_plus_abs(eps: float, dmap) -> float:
    """Product of the even and odd factors (simple zeros; the factors
    never vanish together for mu phi > 0)."""
    return chi_ho_plus_abs_odd(eps, dmap) * chi_ho_plus_abs_even(eps, dmap)


def chi_delta_ho(eps: float, tau: float, p: float) -> float:
    """Delta-decorated oscillator condition G(q,q;E) = -1/a, pole-cleared:

    tau D_{eps-1/2}(p) D_{eps-1/2}(-p) + 1/Gamma(1/2 - eps) = 0.
    """
    nu = eps - 0.5
    return (tau * sf.pcf_d(nu, p).value * sf.pcf_d(nu, -p).value
            + sf.rgamma(0.5 - eps))


def chi_delta_linear(rho: float, eta: float, zeta_q: float) -> float:
    """Delta-decorated |x| well condition G(q,q;E) = -1/a, pole-cleared:

    eta Ai(zq - rho) v(zq; rho) - Ai(-rho) Ai'(-rho) = 0,
    v(t; rho) = pi (Ai Bi' + Ai' Bi)(-rho) Ai(t - rho)
                - 2 pi (Ai Ai')(-rho) Bi(t - rho).

    v is the left-decaying solution continued to t = zeta q >= 0; the
    widely quoted product form with Ai(-zq - rho) in place of v drops
    the Bi component the continuation generates and is exact only at
    q = 0 (where v(0) = Ai(-rho) identically).  Entire in rho.
    """
    if zeta_q < 0.0:
        raise ValueError("zeta_q must be >= 0 (the condition is q-symmetric)")
    a0, ap0, b0, bp0 = (r.value for r in sf.airy_all(-rho))
    at, _, bt, _ = (r.value for r in sf.airy_all(zeta_q - rho))
    v = math.pi * ((a0 * bp0 + ap0 * b0) * at - 2.0 * a0 * ap0 * bt)
    return eta * at * v - a0 * ap0


# ----------------------------------------------------------------------
# root containers
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Root:
    index: int
    value: float
    bracket: tuple
    residual: float       # |chi(value)| / local scan scale
    parity: str | None = None
    degenerate: bool = False


@dataclass
class SpectrumResult:
    roots: list
    scan_window: tuple
    scan_step: float
    suspected_missing: list = field(default_factory=list)

    def values(self):
        return [r.value for r in self.roots]


@dataclass(frozen=True)
class CharacteristicFunction:
    """A pole-free scan target.

    fn maps the dimensionless energy to a real value; factors, when
    present, are (parity_label, callable) pairs scanned separately so
    roots come back parity-labeled.  var names the energy variable
    ('eps' or 'rho').  validator, when present, marks degenerate roots.
    """

    family: str
    var: str
    fn: object
    window: tuple
    factors: tuple = ()
    validator: object = None


def build_chi(family: PotentialFamily) -> CharacteristicFunction:
    """Wire the family's characteristic function with its default window.

    Default windows span (0, 12] in the natural energy variable, widened
    downward for families whose spectrum can start below zero (Stark
    shift, attractive delta) and capped wherever the Airy-argument
    domain |t| <= 25 binds (large beta or xi).
    """
    tag = family.tag
    if tag == HO:
        return CharacteristicFunction(tag, "eps", chi_ho, (1e-6, 12.0))
    if tag == HO_STARK:
        dmap = dimensionless(family, 0.0)
        shift = (0.5 * dmap.mu * dmap.phi) ** 2
        return CharacteristicFunction(
            tag, "eps", lambda e: chi_ho_stark(e, dmap), (-shift - 1.0, 12.0))
    if tag == HO_ASYM:
        dmap = dimensionless(family, 0.0)
        lam = dmap.lam
        return CharacteristicFunction(
            tag, "eps", lambda e: chi_asym_ho(e, lam), (1e-6, 12.0))
    if tag == LINEAR_ABS:
        return CharacteristicFunction(
            tag, "rho", chi_linear, (1e-6, 12.0),
            factors=(("even", chi_linear_even), ("odd", chi_linear_odd)))
    if tag == LINEAR_ASYM:
        dmap = dimensionless(family, 0.0)
        beta = dmap.beta
        # both rho and rho beta^2 must stay inside the Airy domain
        top = min(12.0, 24.5 / max(1.0, beta * beta))
        return CharacteristicFunction(
            tag, "rho", lambda r: chi_asym_linear(r, beta), (1e-6, top),
            validator=lambda r: _asym_linear_degenerate(r, beta))
    if tag == HALF_HO_HALF_LINEAR:
        dmap = dimensionless(family, 0.0)
        xi = dmap.xi
        scales = family.scales
        top = min(12.0, 24.5 / (xi * xi))  # Airy argument is xi^2 eps
        return CharacteristicFunction(
            tag, "eps", lambda e: chi_half_half(e, xi, scales), (1e-6, top))
    if tag == HO_PLUS_ABS:
        dmap = dimensionless(family, 0.0)
        return CharacteristicFunction(
            tag, "eps", lambda e: chi_ho_plus_abs(e, dmap), (1e-6, 12.0),
            factors=(("even", lambda e: chi_ho_plus_abs_even(e, dmap)),
                     ("odd", lambda e: chi_ho_plus_abs_odd(e, dmap))))
    if tag == DELTA_DECORATED and family.base == HO:
        dmap = dimensionless(family, 0.0)
        tau, p = dmap.tau, dmap.p
        return CharacteristicFunction(
            "DELTA_DECORATED(HO)", "eps",
            lambda e: chi_delta_ho(e, tau, p), (-50.0, 12.0))
    if tag == DELTA_DECORATED and family.base == LINEAR_ABS:
        dmap = dimensionless(family, 0.0)
        eta = dmap.eta
        zq = dmap.zeta * family.scales.delta_position
        return CharacteristicFunction(
            "DELTA_DECORATED(LINEAR_ABS)", "rho",
            lambda r: chi_delta_linear(r, eta, zq), (-24.0, 12.0))
    raise ValueError(f"no characteristic function for family {tag!r}")


# ----------------------------------------------------------------------
# scanning and refinement
# ----------------------------------------------------------------------


def _bisect(fn, lo, hi, f_lo, f_hi):
    while hi - lo > _BRACKET_WIDTH:
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_mid == 0.0:
            half = 0.25 * _BRACKET_WIDTH
            return mid - half, mid + half, f_lo, f_mid
        if (f_lo < 0.0) != (f_mid < 0.0):
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    return lo, hi, f_lo, f_hi


def _scan_one(fn, window, step, parity=None):
    lo, hi = window
    out = []
    x_prev = lo
    f_prev = fn(lo)
    if not math.isfinite(f_prev):
        raise ValueError(f"characteristic function not finite at {lo}")
    n_steps = max(1, int(math.ceil((hi - lo) / step)))
    for i in range(1, n_steps + 1):
        x = min(lo + i * step, hi)
        f = fn(x)
        if not math.isfinite(f):
            raise ValueError(f"characteristic function not finite at {x}")
        if f == 0.0:
            out.append((x, (x - 0.5 * _BRACKET_WIDTH, x + 0.5 * _BRACKET_WIDTH),
                        0.0, parity))
        elif f_prev != 0.0 and (f_prev < 0.0) != (f < 0.0):
            scale = max(abs(f_prev), abs(f), 1e-300)
            b_lo, b_hi, _, _ = _bisect(fn, x_prev, x, f_prev, f)
            root = 0.5 * (b_lo + b_hi)
            out.append((root, (b_lo, b_hi), abs(fn(root)) / scale, parity))
        x_prev, f_prev = x, f
    return out


def find_roots(chi: CharacteristicFunction, window=None, step=0.005) -> SpectrumResult:
    """All sign-change roots of `chi` in the window at scan resolution `step`.

    Brackets are refined by bisection to width <= 2.5e-13; the stored
    residual is |chi(root)| normalized by the detection-bracket scale.
    Tangential roots (no sign change at resolution `step`) are not
    found.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    win = tuple(window) if window is not None else chi.window
    if not (win[0] < win[1]):
        raise ValueError(f"empty window {win}")
    if chi.factors:
        raw = []
        for parity, fn in chi.factors:
            raw.extend(_scan_one(fn, win, step, parity))
    else:
        raw = _scan_one(chi.fn, win, step)
    raw.sort(key=lambda t: t[0])
    roots = []
    for i, (val, bracket, residual, parity) in enumerate(raw):
        degenerate = bool(chi.validator(val)) if chi.validator is not None else False
        roots.append(Root(i, val, bracket, residual, parity, degenerate))
    return SpectrumResult(roots, win, step)


def flag_missing(result: SpectrumResult, reference_values, tol=1e-3):
    """Record reference levels inside the scan window that match no root."""
    lo, hi = result.scan_window
    missing = []
    for ref in reference_values:
        if not (lo <= ref <= hi):
            continue
        if not any(abs(r.value - ref) <= tol for r in result.roots):
            missing.append(ref)
    result.suspected_missing = missing
    return missing


# ----------------------------------------------------------------------
# parameter sweeps
# ----------------------------------------------------------------------

# sweep parameter -> (family tag, function(family, value) -> family)


def _sweep_lam(fam, lam):
    return with_scales(fam, omega2=fam.scales.omega1 / lam)


def _sweep_beta(fam, beta):
    return with_scales(fam, alpha2=fam.scales.alpha1 / beta)


def _sweep_xi(fam, xi):
    s = fam.scales
    a1 = (2.0 * s.mass * s.hbar * s.omega1 ** 3) ** (1.0 / 6.0) / xi
    return with_scales(fam, alpha1=a1)


def _sweep_muphi(fam, t):
    s = fam.scales
    mu = math.sqrt(2.0 * s.mass * s.omega1 / s.hbar)
    a1 = (t / mu * s.mass * s.omega1 ** 2) ** (1.0 / 3.0)
    return with_scales(fam, alpha1=a1)


def _sweep_tau(fam, tau):
    s = fam.scales
    a = tau / math.sqrt(s.mass / (math.pi * s.omega1 * s.hbar ** 3))
    return with_scales(fam, delta_strength=a)


def _sweep_p(fam, p):
    s = fam.scales
    mu = math.sqrt(2.0 * s.mass * s.omega1 / s.hbar)
    return with_scales(fam, delta_position=p / mu)


SWEEP_PARAMS = {
    "lam": (HO_ASYM, None, _sweep_lam),
    "beta": (LINEAR_ASYM, None, _sweep_beta),
    "xi": (HALF_HO_HALF_LINEAR, None, _sweep_xi),
    "muphi": (HO_PLUS_ABS, None, _sweep_muphi),
    "tau": (DELTA_DECORATED, HO, _sweep_tau),
    "p": (DELTA_DECORATED, HO, _sweep_p),
}


@dataclass
class SweepResult:
    param_name: str
    rows: list          # (param_value, root_index, energy_value)
    breaks: list        # parameter values where the in-window root count changed
    results: list       # (param_value, SpectrumResult) in parameter order


def sweep(family: PotentialFamily, param_name: str, values, window=None,
          step=0.005) -> SweepResult:
    """SpectrumResult per parameter value, with index-continuity assembly.

    Roots of adjacent parameter values are matched in sorted order
    (curves of these families do not cross); a change of the in-window
    root count is recorded in `breaks` and the curves re-indexed from
    the new count.  Rows come back ordered by (param_value, root_index)
    regardless of internal evaluation order.
    """
    try:
        tag_req, base_req, apply = SWEEP_PARAMS[param_name]
    except KeyError:
        raise ValueError(f"unknown sweep parameter {param_name!r}") from None
    if family.tag != tag_req or (base_req is not None and family.base != base_req):
        raise ValueError(
            f"sweep parameter {param_name!r} applies to {tag_req}"
            + (f"({base_req})" if base_req else "") + f", not {family.tag}")
    rows = []
    breaks = []
    results = []
    prev_count = None
    for v in values:
        fam_v = apply(family, v)
        chi = build_chi(fam_v)
        res = find_roots(chi, window=window, step=step)
        if prev_count is not None and len(res.roots) != prev_count:
            breaks.append(v)
        prev_count = len(res.roots)
        results.append((v, res))
        for r in res.roots:
            rows.append((v, r.index, r.value))
    return SweepResult(param_name, rows, breaks, results)
