# tests/test_graphnet.py
import math

import numpy as np
import pytest

from graphnet.laplacian import GraphLaplacian, lambda2, laplacian_from_edges, named_laplacian, parse_graph
from graphnet.network import DiffusionMatrix, assemble_network, mode_growth_rates
from graphnet.pde import SpatialGrid, discretize_pde, explicit_step_limit
from linalg.norms import WeightedNorm, grid_weighted_norm
from lognorm.measures import mu_closed_form, mu_weighted
from models.enzyme import enzyme_equilibrium, enzyme_reduced
from models.linear import counterexample_field, linear_field
from sim.integrator import integrate
from utils.errors import (
    DimensionMismatchError,
    DisconnectedGraphError,
    InvalidLaplacianError,
    InvalidParameterError,
)


def test_named_laplacians():
    path = named_laplacian("path-3")
    assert np.array_equal(path.matrix, [[1, -1, 0], [-1, 2, -1], [0, -1, 1]])
    assert lambda2(named_laplacian("path-2")) == pytest.approx(2.0)
    assert lambda2(named_laplacian("complete-3")) == pytest.approx(3.0)
    assert lambda2(path) == pytest.approx(1.0)
    assert named_laplacian("star-4").n_nodes == 4
    assert named_laplacian("cycle-5").matrix.trace() == 10.0

    for bad in ("ring-3", "path", "cycle-2", "path-1"):
        with pytest.raises(InvalidLaplacianError):
            named_laplacian(bad)


def test_laplacian_from_edges():
    l = laplacian_from_edges(3, [(0, 1, 2.0), (1, 2, 0.5)])
    assert np.array_equal(l.matrix, [[2.0, -2.0, 0.0], [-2.0, 2.5, -0.5], [0.0, -0.5, 0.5]])
    assert parse_graph({"n_nodes": 3, "edges": [[0, 1, 2.0], [1, 2, 0.5]]}).matrix.tolist() == l.matrix.tolist()
    assert parse_graph("complete-3").name == "complete-3"

    bad_edges = [
        [(0, 0, 1.0)],                  # петля
        [(0, 1, 0.0)],                  # вес ≤ 0
        [(0, 1, 1.0), (1, 0, 1.0)],     # повтор
        [(0, 3, 1.0)],                  # вне диапазона
        [(0, 1)],                       # не тройка
    ]
    for edges in bad_edges:
        with pytest.raises(InvalidLaplacianError):
            laplacian_from_edges(3, edges)
    with pytest.raises(InvalidLaplacianError):
        laplacian_from_edges(1, [])


def test_laplacian_validation():
    with pytest.raises(InvalidLaplacianError):
        GraphLaplacian(np.array([[1.0, 1.0], [1.0, 1.0]]))      # внедиагональ > 0
    with pytest.raises(InvalidLaplacianError):
        GraphLaplacian(np.array([[2.0, -1.0], [-1.0, 1.0]]))    # суммы строк ≠ 0
    with pytest.raises(InvalidLaplacianError):
        GraphLaplacian(np.array([[1.0, -1.0], [0.0, 0.0]]))     # несимметрична


def test_disconnected_graph():
    l = laplacian_from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)])
    with pytest.raises(DisconnectedGraphError) as excinfo:
        lambda2(l)
    assert excinfo.value.zero_multiplicity == 2


def test_mixed_power_product_inequality(rng):
    """(|α|^{p−2} + |β|^{p−2})αβ ≤ |α|ᵖ + |β|ᵖ."""
    alpha = rng.uniform(-5.0, 5.0, 10_000)
    beta = rng.uniform(-5.0, 5.0, 10_000)
    p = rng.uniform(1.0, 8.0, 10_000)
    left = (np.abs(alpha) ** (p - 2) + np.abs(beta) ** (p - 2)) * alpha * beta
    right = np.abs(alpha) ** p + np.abs(beta) ** p
    assert np.all(left <= right + 1e-12 * (1.0 + right))


# ==================== ДИФФУЗИЯ ДИССИПАТИВНА ====================

def _coupling_laplacians(rng, random_laplacian):
    laplacians = [named_laplacian(name) for name in ("path-2", "path-3", "complete-3")]
    laplacians += [random_laplacian(rng, int(rng.integers(2, 7))) for _ in range(3)]
    return laplacians


def test_coupling_measures_vanish(rng, random_laplacian):
    for k, l in enumerate(_coupling_laplacians(rng, random_laplacian)):
        n = 2
        d = DiffusionMatrix(tuple(rng.uniform(0.01, 10.0, n)))
        system = assemble_network(enzyme_reduced(), l, d)
        coupling = system.coupling
        exact = k < 3
        for p in (1, "inf"):
            value = mu_closed_form(coupling, p)
            if exact:
                assert value == 0.0
            else:
                assert value == pytest.approx(0.0, abs=1e-12)
        assert mu_closed_form(coupling, 2) == pytest.approx(0.0, abs=1e-10)

        for _ in range(20):
            w = WeightedNorm(1.0, tuple(rng.uniform(0.1, 10.0, n))).tiled(l.n_nodes)
            for p in (1.0, 2.0, math.inf):
                weighted = WeightedNorm(p, w.q)
                assert mu_weighted(coupling, weighted).value == mu_weighted(
                    coupling, WeightedNorm.unweighted(p, system.dim)).value

        if k in (0, 2, 3):
            estimate = mu_weighted(coupling, WeightedNorm.unweighted(3.0, system.dim))
            assert abs(estimate.value) <= 1e-4


def test_uniform_states_are_coupling_free(rng):
    l = named_laplacian("complete-3")
    system = assemble_network(enzyme_reduced(), l, DiffusionMatrix((0.3, 1.7)))
    assert np.allclose(system.coupling @ np.ones(system.dim), 0.0, atol=1e-12)
    assert np.array_equal(system.coupling, system.coupling.T)

    x = np.array([2.0, 0.5])
    u = system.uniform_state(x)
    assert np.allclose(system.eval(u), np.tile(enzyme_reduced().eval(x), 3), atol=1e-12)
    assert system.jacobian(u).shape == (6, 6)
    assert system.name == "network:enzyme/complete-3"


def test_diffusion_matrix_validation():
    with pytest.raises(InvalidParameterError):
        DiffusionMatrix((1.0, 0.0))
    with pytest.raises(InvalidParameterError):
        DiffusionMatrix(())
    assert DiffusionMatrix.uniform(0.5, 3).d == (0.5, 0.5, 0.5)
    with pytest.raises(DimensionMismatchError):
        assemble_network(enzyme_reduced(), named_laplacian("path-2"), DiffusionMatrix((1.0,)))


def test_default_step_follows_stiffness():
    # λ_max(complete-3) = 3
    stiff = assemble_network(enzyme_reduced(), named_laplacian("complete-3"), DiffusionMatrix((100.0, 1.0)))
    assert stiff.default_dt() == pytest.approx(0.9 * 2.0 / 300.0)
    mild = assemble_network(enzyme_reduced(), named_laplacian("complete-3"), DiffusionMatrix((0.1, 0.1)))
    assert mild.default_dt() == 1e-2
    pde = discretize_pde(enzyme_reduced(), DiffusionMatrix((1.0, 1.0)), SpatialGrid(1.0, 10))
    assert pde.default_dt() == pde.max_dt


def test_counterexample_network(rng):
    """μ_{2,Q}(A) < 0, но μ_{1,Q} сети равна 1 при любых d."""
    a_field = counterexample_field()
    q = WeightedNorm(2.0, (3.0, 1.0))
    assert mu_weighted(a_field.jacobian([0.0, 0.0]), q).value == pytest.approx(-1.0 / 3.0, abs=1e-10)

    for _ in range(20):
        d = DiffusionMatrix(tuple(rng.uniform(0.01, 10.0, 2)))
        system = assemble_network(a_field, named_laplacian("path-2"), d)
        jac = system.jacobian(np.zeros(system.dim))
        w = WeightedNorm(1.0, (3.0, 1.0)).tiled(2)
        assert mu_weighted(jac, w).value == pytest.approx(1.0, abs=1e-10)


def test_contractive_field_has_no_turing_modes(rng, enzyme_params):
    f = enzyme_reduced(enzyme_params)
    x_star = enzyme_equilibrium(enzyme_params)
    for _ in range(5):
        d = DiffusionMatrix(tuple(rng.uniform(0.01, 10.0, 2)))
        rates = mode_growth_rates(f, x_star, named_laplacian("path-5"), d)
        assert len(rates) == 5
        assert rates[0][0] == pytest.approx(0.0, abs=1e-12)
        assert all(rate < 0 for _, rate in rates)


# ==================== PDE ====================

def test_discretized_pde_structure():
    grid = SpatialGrid(1.0, 8)
    d = DiffusionMatrix((0.1, 0.4))
    system = discretize_pde(enzyme_reduced(), d, grid)
    assert system.laplacian.name == "neumann-8"
    assert system.laplacian.matrix[0, 1] == pytest.approx(-64.0)
    assert system.name == "pde:enzyme/neumann-8"
    assert system.max_dt == pytest.approx(0.9 * (1 / 64) / 0.8)
    assert explicit_step_limit(grid, d, safety=1.0) == pytest.approx((1 / 64) / 0.8)
    assert grid.centers[0] == pytest.approx(1 / 16)
    assert grid.to_dict() == {"length": 1.0, "cells": 8, "h": 0.125}

    with pytest.raises(InvalidParameterError):
        SpatialGrid(1.0, 1)
    with pytest.raises(InvalidParameterError):
        SpatialGrid(0.0, 8)


def test_pde_distance_is_grid_norm(rng):
    grid = SpatialGrid(2.0, 10)
    system = discretize_pde(enzyme_reduced(), DiffusionMatrix((0.1, 0.1)), grid)
    w = WeightedNorm(1.0, (1.0, 1.25))
    diff = rng.normal(size=system.dim)
    assert system.distance(diff, w) == pytest.approx(grid_weighted_norm(diff.reshape(10, 2), w, 0.2))

    network = assemble_network(enzyme_reduced(), named_laplacian("path-3"), DiffusionMatrix((0.1, 0.1)))
    diff = rng.normal(size=network.dim)
    assert network.distance(diff, w) == pytest.approx(w.tiled(3)(diff))


def test_pure_diffusion_conserves_mass(rng):
    grid = SpatialGrid(1.0, 16)
    d = DiffusionMatrix((0.5,))
    system = discretize_pde(linear_field([[0.0]]), d, grid)
    u0 = rng.uniform(0.0, 1.0, grid.m)
    trajectory = integrate(system, u0, 0.5, system.max_dt)
    mass = grid.h * trajectory.states.sum(axis=1)
    assert np.max(np.abs(mass - mass[0])) <= 1e-12
    # профиль выравнивается к среднему
    assert np.ptp(trajectory.final) < np.ptp(u0)
