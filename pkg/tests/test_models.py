# tests/test_models.py
import math

import numpy as np
import pytest

from models.enzyme import (
    EnzymeParams,
    enzyme_boundary_inflow,
    enzyme_conservation_check,
    enzyme_equilibrium,
    enzyme_forced,
    enzyme_full,
    enzyme_l1_rate,
    enzyme_l1_weight,
    enzyme_reduced,
    lift,
    project,
)
from models.linear import counterexample_field, linear_field
from models.registry import MODEL_REGISTRY, build_model
from models.vector_field import BoxDomain, VectorField, check_jacobian, finite_difference_jacobian
from sim.integrator import integrate
from utils.errors import InputError, InvalidParameterError, UnknownModelError


def test_params_validation():
    assert EnzymeParams().to_dict() == {"z": 1.0, "delta": 1.0, "k1": 1.0, "k2": 1.0, "s_y": 2.0}
    with pytest.raises(InvalidParameterError):
        EnzymeParams(delta=0.0)
    with pytest.raises(InvalidParameterError):
        EnzymeParams(k2=float("nan"))
    with pytest.raises(InvalidParameterError):
        EnzymeParams.from_dict({"kappa": 1.0})
    assert EnzymeParams.from_dict({"delta": 2}).delta == 2.0


def test_reduced_jacobian_structure(rng, enzyme_params):
    field_ = enzyme_reduced(enzyme_params)
    points = field_.domain.sample(rng, 200, cap=10.0)
    jac = field_.jacobian(points)
    assert jac.shape == (200, 2, 2)
    # столбцовые суммы (−δ, 0)
    assert np.allclose(jac.sum(axis=1), [-enzyme_params.delta, 0.0], atol=1e-12)

    x, y = 3.0, 0.5
    a = enzyme_params.k2 * (enzyme_params.s_y - y)
    b = enzyme_params.k1 + enzyme_params.k2 * x
    expected = [[-enzyme_params.delta - a, b], [a, -b]]
    assert np.allclose(field_.jacobian([x, y]), expected)


@pytest.mark.parametrize("builder", [enzyme_reduced, enzyme_full, enzyme_forced])
def test_jacobians_match_finite_differences(builder, enzyme_params):
    assert check_jacobian(builder(enzyme_params), seed=1) <= 1e-5


def test_finite_difference_fallback():
    a = np.array([[-1.0, 0.5], [2.0, -3.0]])
    field_ = VectorField("no-jac", 2, lambda x, t: x @ a.T, BoxDomain.unbounded(2), default_cap=1.0)
    assert field_.jacobian_source == "finite_difference"
    assert np.allclose(field_.jacobian([0.3, -0.2]), a, atol=1e-8)
    assert field_.jacobian(np.zeros((4, 2))).shape == (4, 2, 2)
    assert np.allclose(finite_difference_jacobian(field_, np.array([5.0, 1.0])), a, atol=1e-8)


def test_shifted_field(enzyme_params):
    field_ = enzyme_reduced(enzyme_params)
    shift = np.array([0.2, 0.7])
    shifted = field_.shifted(shift)
    point = np.array([1.5, 0.5])
    assert np.allclose(shifted.eval(point), field_.eval(point) - shift * point)
    assert np.allclose(shifted.jacobian(point), field_.jacobian(point) - np.diag(shift))


def test_equilibrium_is_zero_of_field(enzyme_params):
    x_star = enzyme_equilibrium(enzyme_params)
    assert np.allclose(enzyme_reduced(enzyme_params).eval(x_star), 0.0, atol=1e-12)
    assert x_star == pytest.approx([1.0, 2.0 / 2.0])


def test_l1_weight_and_rate(enzyme_params):
    w = enzyme_l1_weight(enzyme_params, 0.25)
    assert w.p == 1.0
    assert w.q == (1.0, 1.25)
    assert enzyme_l1_rate(enzyme_params, 1.25) == pytest.approx(-0.2)
    assert enzyme_l1_rate(enzyme_params, 1.0) == 0.0
    # при q < 1 второй столбец растёт по x
    assert enzyme_l1_rate(enzyme_params, 0.5, x_cap=None) == math.inf
    assert enzyme_l1_rate(enzyme_params, 0.5, x_cap=10.0) == pytest.approx(11.0)

    for zeta in (0.0, 0.5, 0.7):
        with pytest.raises(InvalidParameterError):
            enzyme_l1_weight(enzyme_params, zeta)


def test_domain_is_forward_invariant(enzyme_params):
    inflow = enzyme_boundary_inflow(enzyme_params, points=41)
    assert set(inflow) == {"x=0", "y=0", "y=S_Y"}
    for values in inflow.values():
        assert np.all(values >= 0.0)


def test_full_model_conserves_and_reduces(rng, enzyme_params):
    reduced = enzyme_reduced(enzyme_params)
    full = enzyme_full(enzyme_params)
    for x0 in reduced.domain.sample(rng, 3, cap=5.0, margin=0.05):
        small = integrate(reduced, x0, 10.0, 1e-2)
        big = integrate(full, lift(x0, enzyme_params), 10.0, 1e-2)
        assert enzyme_conservation_check(big, enzyme_params) <= 1e-8
        assert np.max(np.abs(project(big.states) - small.states)) <= 1e-7


def test_lift_and_project(enzyme_params):
    state = np.array([[1.0, 0.5], [2.0, 1.5]])
    lifted = lift(state, enzyme_params)
    assert np.allclose(lifted[:, 2], [1.5, 0.5])
    assert np.array_equal(project(lifted), state)
    with pytest.raises(InvalidParameterError):
        enzyme_conservation_check(np.zeros((3, 2)), enzyme_params)


def test_forced_signal_changes_only_rhs(enzyme_params):
    forced = enzyme_forced(enzyme_params, amplitude=0.5, frequency=1.0)
    reduced = enzyme_reduced(enzyme_params)
    point = np.array([1.0, 1.0])
    t = math.pi / 2
    assert forced.time_dependent
    assert forced.eval(point, t)[0] == pytest.approx(reduced.eval(point)[0] + 0.5)
    assert np.array_equal(forced.jacobian(point, t), reduced.jacobian(point))
    with pytest.raises(InvalidParameterError):
        enzyme_forced(enzyme_params, amplitude=1.5)


def test_box_domain():
    box = BoxDomain((0.0, 0.0), (math.inf, 2.0))
    assert not box.is_bounded
    assert box.contains(np.array([5.0, 2.0]))
    assert not box.contains(np.array([5.0, 2.1]))
    assert box.truncated(10.0).upper == (10.0, 2.0)
    assert box.tiled(2).dim == 4
    with pytest.raises(InputError):
        box.truncated(None)
    with pytest.raises(InputError):
        BoxDomain((1.0,), (0.0,))


def test_registry():
    assert set(MODEL_REGISTRY) == {"enzyme", "enzyme-full", "enzyme-forced", "linear", "counterexample"}
    assert build_model("enzyme", {"delta": 2.0}).params["delta"] == 2.0
    assert build_model("enzyme-forced", {"amplitude": 0.25}).params["amplitude"] == 0.25
    assert build_model("linear", {"matrix": [[-1.0, 0.0], [0.0, -2.0]]}).dim == 2
    assert np.array_equal(build_model("counterexample").jacobian([0.0, 0.0]),
                          counterexample_field().jacobian([0.0, 0.0]))

    with pytest.raises(UnknownModelError):
        build_model("brusselator")
    with pytest.raises(InvalidParameterError):
        build_model("enzyme", {"foo": 1.0})
    with pytest.raises(InvalidParameterError):
        build_model("linear", {})
    with pytest.raises(InvalidParameterError):
        build_model("counterexample", {"delta": 1.0})


def test_linear_field_broadcasts_jacobian():
    field_ = linear_field([[-1.0, 2.0], [0.0, -1.0]])
    jac = field_.jacobian(np.zeros((3, 5, 2)))
    assert jac.shape == (3, 5, 2, 2)
    assert field_.eval([1.0, 1.0]) == pytest.approx([1.0, -1.0])
