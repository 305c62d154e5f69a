"""Potential families, physical scales, and dimensionless parameter maps.

Single source of truth for unit conventions.  Eight families are
supported; each is defined by a tag plus the physical scales it uses:

    HO                   V = (1/2) m w1^2 x^2
    HO_STARK             V = (1/2) m w1^2 x^2 + a1^3 x
    HO_ASYM              V = (1/2) m w1^2 x^2 (x<=0), (1/2) m w2^2 x^2 (x>=0)
    LINEAR_ABS           V = a1^3 |x|
    LINEAR_ASYM          V = -a1^3 x (x<=0), a2^3 x (x>=0)
    HALF_HO_HALF_LINEAR  V = (1/2) m w1^2 x^2 (x<=0), a1^3 x (x>=0)
    HO_PLUS_ABS          V = (1/2) m w1^2 x^2 + a1^3 |x|
    DELTA_DECORATED      base potential (HO or LINEAR_ABS) + a delta(x - q)

Default scale conventions follow the reference figures: hbar = m = w = 1
for the quadratic families and hbar^2 = 2m, alpha = 1 for the linear
ones (so rho = E and zeta = 1).  The composite half/half family also
uses hbar^2 = 2m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

__all__ = [
    "HO",
    "HO_STARK",
    "HO_ASYM",
    "LINEAR_ABS",
    "LINEAR_ASYM",
    "HALF_HO_HALF_LINEAR",
    "HO_PLUS_ABS",
    "DELTA_DECORATED",
    "FAMILY_TAGS",
    "QUADRATIC_TAGS",
    "LINEAR_TAGS",
    "PhysicalScales",
    "PotentialFamily",
    "DimensionlessMap",
    "dimensionless",
    "potential_value",
    "default_family",
    "family_from_dict",
    "family_to_dict",
    "with_scales",
    "FamilyError",
]

HO = "HO"
HO_STARK = "HO_STARK"
HO_ASYM = "HO_ASYM"
LINEAR_ABS = "LINEAR_ABS"
LINEAR_ASYM = "LINEAR_ASYM"
HALF_HO_HALF_LINEAR = "HALF_HO_HALF_LINEAR"
HO_PLUS_ABS = "HO_PLUS_ABS"
DELTA_DECORATED = "DELTA_DECORATED"

FAMILY_TAGS = frozenset({
    HO, HO_STARK, HO_ASYM, LINEAR_ABS, LINEAR_ASYM,
    HALF_HO_HALF_LINEAR, HO_PLUS_ABS, DELTA_DECORATED,
})
# families whose natural energy variable is eps = E/(hbar w1)
QUADRATIC_TAGS = frozenset({HO, HO_STARK, HO_ASYM, HALF_HO_HALF_LINEAR, HO_PLUS_ABS})
# families whose natural energy variable is rho = (E/a1^2)(2m/hbar^2)^(1/3)
LINEAR_TAGS = frozenset({LINEAR_ABS, LINEAR_ASYM})

# per-family required scale fields (beyond hbar, mass)
_REQUIRED = {
    HO: ("omega1",),
    HO_STARK: ("omega1", "alpha1"),
    HO_ASYM: ("omega1", "omega2"),
    LINEAR_ABS: ("alpha1",),
    LINEAR_ASYM: ("alpha1", "alpha2"),
    HALF_HO_HALF_LINEAR: ("omega1", "alpha1"),
    HO_PLUS_ABS: ("omega1", "alpha1"),
}


class FamilyError(ValueError):
    """Invalid or incomplete potential-family description."""


@dataclass(frozen=True)
class PhysicalScales:
    """Dimensional constants defining one problem instance.

    alpha1/alpha2 are the linear-slope scales (V ~ alpha^3 x), so they
    carry units of (energy/length)^(1/3) and must be non-negative:
    the Airy boundary argument requires confining slopes.  The delta
    strength a may take either sign (attractive a < 0, repulsive a > 0).
    """

    hbar: float = 1.0
    mass: float = 1.0
    omega1: float | None = None
    omega2: float | None = None
    alpha1: float | None = None
    alpha2: float | None = None
    delta_strength: float | None = None
    delta_position: float | None = None

    def __post_init__(self):
        if not (self.hbar > 0.0) or not (self.mass > 0.0):
            raise FamilyError("hbar and mass must be positive")
        for name in ("omega1", "omega2", "alpha1", "alpha2"):
            v = getattr(self, name)
            if v is not None and v < 0.0:
                raise FamilyError(f"{name} must be >= 0, got {v}")
        for name in ("delta_strength", "delta_position"):
            v = getattr(self, name)
            if v is not None and not math.isfinite(v):
                raise FamilyError(f"{name} must be finite")


@dataclass(frozen=True)
class PotentialFamily:
    tag: str
    scales: PhysicalScales
    base: str | None = None  # DELTA_DECORATED only: HO or LINEAR_ABS

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise FamilyError(f"unknown family tag {self.tag!r}")
        if self.tag == DELTA_DECORATED:
            if self.base not in (HO, LINEAR_ABS):
                raise FamilyError("DELTA_DECORATED requires base HO or LINEAR_ABS")
            if self.scales.delta_strength is None or self.scales.delta_position is None:
                raise FamilyError("DELTA_DECORATED requires delta_strength and delta_position")
            for name in _REQUIRED[self.base]:
                if getattr(self.scales, name) is None:
                    raise FamilyError(f"{self.tag}({self.base}) requires scale {name}")
        else:
            if self.base is not None:
                raise FamilyError("base is only meaningful for DELTA_DECORATED")
            for name in _REQUIRED[self.tag]:
                if getattr(self.scales, name) is None:
                    raise FamilyError(f"{self.tag} requires scale {name}")

    @property
    def smooth_tag(self):
        """Tag of the smooth part (base potential for delta decoration)."""
        return self.base if self.tag == DELTA_DECORATED else self.tag


@dataclass(frozen=True)
class DimensionlessMap:
    """Derived dimensionless parameters; only family-relevant fields set."""

    eps: float | None = None    # E / (hbar w1)
    mu: float | None = None     # sqrt(2 m w1 / hbar), 1/length
    phi: float | None = None    # alpha1^3 / (m w1^2), length
    sigma: float | None = None  # eps + (mu phi / 2)^2
    rho: float | None = None    # (E/alpha1^2) (2m/hbar^2)^(1/3)
    zeta: float | None = None   # alpha1 (2m/hbar^2)^(1/3), 1/length
    lam: float | None = None    # w1 / w2
    beta: float | None = None   # alpha1 / alpha2
    xi: float | None = None     # (2 m hbar w1^3)^(1/6) / alpha1
    tau: float | None = None    # a sqrt(m / (pi w1 hbar^3))
    p: float | None = None      # mu q
    eta: float | None = None    # (a / 2 alpha1) (2m/hbar^2)^(2/3)


def dimensionless(family: PotentialFamily, energy: float) -> DimensionlessMap:
    """Compute the dimensionless parameters of `family` at `energy`."""
    if not math.isfinite(energy):
        raise FamilyError(f"energy must be finite, got {energy}")
    s = family.scales
    tag = family.tag
    smooth = family.smooth_tag
    out = {}
    if smooth in QUADRATIC_TAGS:
        w = s.omega1
        out["eps"] = energy / (s.hbar * w)
        out["mu"] = math.sqrt(2.0 * s.mass * w / s.hbar)
        if smooth in (HO_STARK, HO_PLUS_ABS, HALF_HO_HALF_LINEAR):
            out["phi"] = s.alpha1 ** 3 / (s.mass * w * w)
        if smooth in (HO_STARK, HO_PLUS_ABS):
            out["sigma"] = out["eps"] + (out["mu"] * out["phi"] / 2.0) ** 2
        if smooth == HALF_HO_HALF_LINEAR:
            out["xi"] = (2.0 * s.mass * s.hbar * w ** 3) ** (1.0 / 6.0) / s.alpha1
        if smooth == HO_ASYM:
            out["lam"] = s.omega1 / s.omega2
    else:
        k = (2.0 * s.mass / s.hbar ** 2) ** (1.0 / 3.0)
        out["rho"] = energy / s.alpha1 ** 2 * k
        out["zeta"] = s.alpha1 * k
        if smooth == LINEAR_ASYM:
            out["beta"] = s.alpha1 / s.alpha2
    if tag == DELTA_DECORATED:
        a = s.delta_strength
        if family.base == HO:
            out["tau"] = a * math.sqrt(s.mass / (math.pi * s.omega1 * s.hbar ** 3))
            out["p"] = out["mu"] * s.delta_position
        else:
            out["eta"] = (a / (2.0 * s.alpha1)) * (2.0 * s.mass / s.hbar ** 2) ** (2.0 / 3.0)
    return DimensionlessMap(**out)


def potential_value(family: PotentialFamily, x: float) -> float:
    """Smooth part of V(x) in energy units (delta spikes excluded)."""
    if not math.isfinite(x):
        raise FamilyError(f"x must be finite, got {x}")
    s = family.scales
    tag = family.smooth_tag
    if tag == HO:
        return 0.5 * s.mass * s.omega1 ** 2 * x * x
    if tag == HO_STARK:
        return 0.5 * s.mass * s.omega1 ** 2 * x * x + s.alpha1 ** 3 * x
    if tag == HO_ASYM:
        w = s.omega1 if x <= 0.0 else s.omega2
        return 0.5 * s.mass * w * w * x * x
    if tag == LINEAR_ABS:
        return s.alpha1 ** 3 * abs(x)
    if tag == LINEAR_ASYM:
        return -s.alpha1 ** 3 * x if x <= 0.0 else s.alpha2 ** 3 * x
    if tag == HALF_HO_HALF_LINEAR:
        if x <= 0.0:
            return 0.5 * s.mass * s.omega1 ** 2 * x * x
        return s.alpha1 ** 3 * x
    if tag == HO_PLUS_ABS:
        return 0.5 * s.mass * s.omega1 ** 2 * x * x + s.alpha1 ** 3 * abs(x)
    raise FamilyError(f"unhandled family tag {tag!r}")


# figure-convention defaults for each family; see module docstring
_SQRT_HALF = math.sqrt(0.5)
_DEFAULTS = {
    HO: dict(hbar=1.0, mass=1.0, omega1=1.0),
    HO_STARK: dict(hbar=1.0, mass=1.0, omega1=1.0, alpha1=1.3 ** (1.0 / 3.0)),
    HO_ASYM: dict(hbar=1.0, mass=1.0, omega1=1.0, omega2=2.0),
    LINEAR_ABS: dict(hbar=1.0, mass=0.5, alpha1=1.0),
    LINEAR_ASYM: dict(hbar=1.0, mass=0.5, alpha1=1.0, alpha2=2.0),
    HALF_HO_HALF_LINEAR: dict(hbar=1.0, mass=0.5, omega1=1.0, alpha1=_SQRT_HALF),
    HO_PLUS_ABS: dict(hbar=1.0, mass=1.0, omega1=1.0, alpha1=1.0),
}


def default_family(tag: str, base: str | None = None, **overrides) -> PotentialFamily:
    """Family at the figure-convention defaults, with optional overrides.

    For DELTA_DECORATED the defaults place a unit-strength attractive
    delta near the well center: base HO gets tau = -1, p = 0.5; base
    LINEAR_ABS gets eta = 1, zeta q = 0.5.
    """
    if tag == DELTA_DECORATED:
        if base == HO:
            d = dict(_DEFAULTS[HO])
            d["delta_strength"] = -math.sqrt(math.pi)        # tau = -1
            d["delta_position"] = 0.5 / math.sqrt(2.0)       # p = 0.5
        elif base == LINEAR_ABS:
            d = dict(_DEFAULTS[LINEAR_ABS])
            d["delta_strength"] = 2.0                        # eta = 1
            d["delta_position"] = 0.5                        # zeta q = 0.5
        else:
            raise FamilyError("DELTA_DECORATED requires base HO or LINEAR_ABS")
        d.update(overrides)
        return PotentialFamily(tag, PhysicalScales(**d), base=base)
    if tag not in _DEFAULTS:
        raise FamilyError(f"unknown family tag {tag!r}")
    d = dict(_DEFAULTS[tag])
    d.update(overrides)
    return PotentialFamily(tag, PhysicalScales(**d))


_SCALE_FIELDS = ("hbar", "mass", "omega1", "omega2", "alpha1", "alpha2",
                 "delta_strength", "delta_position")


def family_from_dict(obj) -> PotentialFamily:
    """Build a PotentialFamily from its JSON-schema dict.

    Schema: {"tag": <tag>, "base": <tag or null>, "scales": {<field>: number}}.
    Scales omitted from the dict fall back to the family defaults.
    """
    if not isinstance(obj, dict):
        raise FamilyError("family description must be a JSON object")
    try:
        tag = obj["tag"]
    except KeyError:
        raise FamilyError("family description missing field 'tag'") from None
    if not isinstance(tag, str) or tag not in FAMILY_TAGS:
        raise FamilyError(f"field 'tag' must be one of {sorted(FAMILY_TAGS)}, got {tag!r}")
    base = obj.get("base")
    raw = obj.get("scales", {})
    if not isinstance(raw, dict):
        raise FamilyError("field 'scales' must be an object")
    unknown = set(raw) - set(_SCALE_FIELDS)
    if unknown:
        raise FamilyError(f"unknown scale fields: {sorted(unknown)}")
    clean = {}
    for k, v in raw.items():
        if v is None:
            continue
        if not isinstance(v, (int, float)) or not math.isfinite(float(v)):
            raise FamilyError(f"scale field {k!r} must be a finite number, got {v!r}")
        clean[k] = float(v)
    return default_family(tag, base=base, **clean)


def family_to_dict(family: PotentialFamily) -> dict:
    """Inverse of family_from_dict (None fields omitted)."""
    scales = {k: getattr(family.scales, k) for k in _SCALE_FIELDS
              if getattr(family.scales, k) is not None}
    out = {"tag": family.tag, "scales": scales}
    if family.base is not None:
        out["base"] = family.base
    return out


def with_scales(family: PotentialFamily, **changes) -> PotentialFamily:
    """Copy of `family` with some scale fields replaced."""
    return PotentialFamily(family.tag, replace(family.scales, **changes), base=family.base)
