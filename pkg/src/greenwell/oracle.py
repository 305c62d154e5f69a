"""Independent finite-difference eigensolver and resolvent oracle.

Discretizes any potential family on a uniform grid with hard Dirichlet
walls at +-L, producing a symmetric tridiagonal operator.  Eigenvalues
come from Sturm-sequence sign-count bisection (no external eigensolver,
keeping this module genuinely independent of the closed forms it
checks); fixed-energy resolvent columns come from a direct tridiagonal
solve of (H - E) g = delta_h.

Delta terms are represented as a/h added to the diagonal at the node
nearest q.  That is the simplest O(h)-consistent scheme; tolerances of
the comparisons against closed forms are sized for it, and a two-grid
Richardson check in the test-suite guards the systematic error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import DELTA_DECORATED, PotentialFamily, potential_value

__all__ = [
    "GridSpec",
    "TridiagonalOperator",
    "WallError",
    "NearEigenvalueError",
    "discretize",
    "auto_grid",
    "lowest_eigenvalues",
    "eigenvalue_count_below",
    "resolvent_solve",
]


class WallError(ValueError):
    """The Dirichlet walls sit too low for the requested energy range."""


class NearEigenvalueError(ArithmeticError):
    """Resolvent solve requested too close to an operator eigenvalue."""


@dataclass(frozen=True)
class GridSpec:
    half_width: float
    n_points: int  # interior points; walls at +-half_width excluded

    def __post_init__(self):
        if self.n_points < 100:
            raise ValueError(f"n_points must be >= 100, got {self.n_points}")
        if not (self.half_width > 0.0):
            raise ValueError("half_width must be positive")

    @property
    def h(self):
        return 2.0 * self.half_width / (self.n_points + 1)

    def node(self, i):
        return -self.half_width + (i + 1) * self.h


@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal H: diag entries hbar^2/(m h^2) + V(x_i) (+ delta),
    constant off-diagonal -hbar^2/(2 m h^2)."""

    diag: tuple
    offdiag: tuple  # length n-1, all equal
    grid: GridSpec

    @property
    def n(self):
        return len(self.diag)

    @property
    def off(self):
        return self.offdiag[0]

    def node(self, i):
        return self.grid.node(i)

    def nearest_index(self, x):
        i = int(round((x + self.grid.half_width) / self.grid.h)) - 1
        return min(max(i, 0), self.n - 1)


def auto_grid(family: PotentialFamily, e_max: float, n_points: int) -> GridSpec:
    """Smallest half-width on a 0.5 lattice with V(+-L) >= e_max + 10."""
    L = 1.0
    while L < 4096.0:
        if (potential_value(family, -L) >= e_max + 10.0
                and potential_value(family, L) >= e_max + 10.0):
            return GridSpec(L, n_points)
        L += 0.5
    raise WallError("could not satisfy V(+-L) >= e_max + 10 within L <= 4096")


def discretize(family: PotentialFamily, grid: GridSpec, e_max: float = 0.0) -> TridiagonalOperator:
    """Three-point discretization of the family on `grid`.

    e_max is the largest eigenvalue the caller intends to trust; the
    walls must satisfy V(+-L) >= e_max + 10 or WallError is raised.
    """
    s = family.scales
    L = grid.half_width
    for wall in (-L, L):
        v_wall = potential_value(family, wall)
        if v_wall < e_max + 10.0:
            raise WallError(
                f"V({wall:+g}) = {v_wall:g} < e_max + 10 = {e_max + 10.0:g}; widen the grid"
            )
    h = grid.h
    c = s.hbar ** 2 / (s.mass * h * h)
    n = grid.n_points
    diag = [c + potential_value(family, grid.node(i)) for i in range(n)]
    if family.tag == DELTA_DECORATED:
        q = s.delta_position
        i_q = int(round((q + L) / h)) - 1
        if not (0 <= i_q < n):
            raise WallError(f"delta position {q} outside the grid")
        diag[i_q] += s.delta_strength / h
    return TridiagonalOperator(tuple(diag), tuple([-0.5 * c] * (n - 1)), grid)


def eigenvalue_count_below(op: TridiagonalOperator, x: float) -> int:
    """Number of eigenvalues of `op` strictly below x (Sturm sign count)."""
    offsq = op.off * op.off
    count = 0
    d = 1.0
    first = True
    for a in op.diag:
        if first:
            d = a - x
            first = False
        else:
            d = (a - x) - offsq / d
        if d == 0.0:
            d = -1e-300
        if d < 0.0:
            count += 1
    return count


def _gershgorin(op):
    lo = min(op.diag) - 2.0 * abs(op.off)
    hi = max(op.diag) + 2.0 * abs(op.off)
    return lo, hi


def lowest_eigenvalues(op: TridiagonalOperator, k: int, tol: float = 1e-10):
    """The k smallest eigenvalues, each bisected to absolute width `tol`.

    Deterministic: pure bisection on the Sturm count, no iteration order
    dependence.  k is capped at 50 by contract.
    """
    if not (1 <= k <= 50):
        raise ValueError(f"k must be in 1..50, got {k}")
    lo0, hi0 = _gershgorin(op)
    out = []
    for j in range(1, k + 1):
        lo, hi = lo0, hi0
        # shrink: reuse the previous eigenvalue as a lower bound
        if out:
            lo = out[-1] - tol
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if eigenvalue_count_below(op, mid) >= j:
                hi = mid
            else:
                lo = mid
        out.append(0.5 * (lo + hi))
    return out


def resolvent_solve(op: TridiagonalOperator, energy: float, source_index: int):
    """Solve (H - E) g = delta_h with delta_h = 1/h at `source_index`.

    The returned grid vector is the FD approximation of G(., x_src; E).
    Raises NearEigenvalueError if E sits within 1e-6 of an operator
    eigenvalue (detected by Sturm counts at E +- 1e-6).
    """
    if not (0 <= source_index < op.n):
        raise ValueError(f"source_index {source_index} out of range")
    if eigenvalue_count_below(op, energy - 1e-6) != eigenvalue_count_below(op, energy + 1e-6):
        raise NearEigenvalueError(f"E = {energy} within 1e-6 of an eigenvalue of the operator")
    n = op.n
    off = op.off
    h = op.grid.h
    diag = [a - energy for a in op.diag]
    rhs = [0.0] * n
    rhs[source_index] = 1.0 / h
    # Thomas algorithm (constant off-diagonal)
    cp = [0.0] * (n - 1)
    dp = [0.0] * n
    cp[0] = off / diag[0]
    dp[0] = rhs[0] / diag[0]
    for i in range(1, n - 1):
        den = diag[i] - off * cp[i - 1]
        cp[i] = off / den
        dp[i] = (rhs[i] - off * dp[i - 1]) / den
    den = diag[n - 1] - off * cp[n - 2]
    dp[n - 1] = (rhs[n - 1] - off * dp[n - 2]) / den
    g = [0.0] * n
    g[n - 1] = dp[n - 1]
    for i in range(n - 2, -1, -1):
        g[i] = dp[i] - cp[i] * g[i + 1]
    return g
