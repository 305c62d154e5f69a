"""Finite-difference oracle: discretization, Sturm bisection, resolvent solve."""

import math

import pytest

from greenwell import model, oracle
from greenwell.model import DELTA_DECORATED, HO, LINEAR_ABS, default_family
from greenwell.oracle import (
    GridSpec,
    TridiagonalOperator,
    NearEigenvalueError,
    WallError,
    discretize,
    eigenvalue_count_below,
    lowest_eigenvalues,
    resolvent_solve,
)

AIRY_EVEN_1 = 1.018792971647471  # first zero of Ai', i.e. the |x| well ground state


def box_operator(L=1.0, n=200):
    """V = 0 between hard walls: analytic discrete spectrum available."""
    h = 2.0 * L / (n + 1)
    c = 1.0 / (h * h)  # hbar = m = 1
    return TridiagonalOperator(tuple([c] * n), tuple([-0.5 * c] * (n - 1)), GridSpec(L, n))


def test_two_by_two_analytic():
    # grid metadata is irrelevant to the pure eigenvalue solve
    op = TridiagonalOperator((2.0, 2.0), (-1.0,), GridSpec(1.0, 100))
    eigs = lowest_eigenvalues(op, 2)
    assert eigs[0] == pytest.approx(1.0, abs=1e-10)
    assert eigs[1] == pytest.approx(3.0, abs=1e-10)


def test_box_matches_discrete_laplacian_spectrum():
    n, L = 300, 1.0
    op = box_operator(L, n)
    h = op.grid.h
    eigs = lowest_eigenvalues(op, 4)
    for k, e in enumerate(eigs, start=1):
        exact = (2.0 - 2.0 * math.cos(k * math.pi / (n + 1))) * 0.5 / (h * h)
        assert e == pytest.approx(exact, abs=1e-10)


def test_box_continuum_limit():
    # (k pi / 2L)^2 hbar^2/2m within O(h^2)
    n, L = 2000, 1.0
    op = box_operator(L, n)
    eigs = lowest_eigenvalues(op, 3)
    for k, e in enumerate(eigs, start=1):
        cont = (k * math.pi / (2.0 * L)) ** 2 * 0.5
        assert abs(e - cont) <= 5.0 * cont * (op.grid.h) ** 2


def test_ho_levels():
    fam = default_family(HO)
    op = discretize(fam, GridSpec(12.0, 4000), e_max=6.0)
    eigs = lowest_eigenvalues(op, 5)
    for k, e in enumerate(eigs):
        assert e == pytest.approx(k + 0.5, abs=1e-4)


def test_linear_ground_state_is_airy_prime_zero():
    fam = default_family(LINEAR_ABS)
    op = discretize(fam, GridSpec(20.0, 6000), e_max=2.0)
    e0 = lowest_eigenvalues(op, 1)[0]
    assert e0 == pytest.approx(AIRY_EVEN_1, abs=1e-3)


def test_grid_convergence_second_order():
    # halving h reduces the HO ground-state error by >= 3.5
    fam = default_family(HO)
    errs = []
    for n in (1000, 2000):
        op = discretize(fam, GridSpec(10.0, n), e_max=1.0)
        errs.append(abs(lowest_eigenvalues(op, 1)[0] - 0.5))
    assert errs[0] / errs[1] >= 3.5


def test_sturm_count_monotone_and_ho_counts():
    fam = default_family(HO)
    op = discretize(fam, GridSpec(12.0, 2000), e_max=8.0)
    prev = 0
    for e in (0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0):
        c = eigenvalue_count_below(op, e)
        assert c >= prev
        prev = c
    for n in range(6):
        # count below eps = n + 1 equals n + 1 (levels at k + 1/2)
        assert eigenvalue_count_below(op, float(n + 1)) == n + 1


def test_wall_error():
    fam = default_family(HO)
    with pytest.raises(WallError):
        discretize(fam, GridSpec(3.0, 500), e_max=10.0)  # V(3) = 4.5 < 20


def test_auto_grid_sizes_walls():
    fam = default_family(HO)
    grid = oracle.auto_grid(fam, e_max=6.0, n_points=500)
    assert model.potential_value(fam, grid.half_width) >= 16.0


def test_delta_discretization_shifts_spectrum():
    fam = default_family(DELTA_DECORATED, base=HO)  # attractive, tau = -1
    op = discretize(fam, GridSpec(12.0, 4000), e_max=6.0)
    e0 = lowest_eigenvalues(op, 1)[0]
    assert e0 < 0.0  # pulled below the unperturbed ground state


def test_resolvent_symmetry():
    fam = default_family(HO)
    op = discretize(fam, GridSpec(10.0, 1200), e_max=4.0)
    i, j = op.nearest_index(-0.7), op.nearest_index(1.1)
    gi = resolvent_solve(op, 2.0, i)
    gj = resolvent_solve(op, 2.0, j)
    assert gi[j] == pytest.approx(gj[i], rel=1e-10)


def test_resolvent_near_eigenvalue_error():
    fam = default_family(HO)
    op = discretize(fam, GridSpec(10.0, 1500), e_max=4.0)
    e0 = lowest_eigenvalues(op, 1)[0]
    with pytest.raises(NearEigenvalueError):
        resolvent_solve(op, e0 + 2e-7, op.nearest_index(0.0))


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(5.0, 99)
    with pytest.raises(ValueError):
        GridSpec(-1.0, 500)
    with pytest.raises(ValueError):
        lowest_eigenvalues(box_operator(), 51)
