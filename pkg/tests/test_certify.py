# tests/test_certify.py
import math

import numpy as np
import pytest

from certify.certificate import issue_certificate
from certify.impossibility import impossibility_search, impossibility_sweep
from certify.weights import default_candidates, search_weights
from linalg.norms import WeightedNorm
from lognorm.lipschitz import GridSpec
from lognorm.measures import mu_weighted, weighted_similarity
from models.enzyme import enzyme_reduced
from models.linear import linear_field
from models.vector_field import BoxDomain, VectorField
from utils.errors import (
    CertificateRefusedError,
    InputError,
    InvalidNormError,
    InvalidParameterError,
    WitnessNotFoundError,
)

GRID = GridSpec(points_per_axis=65, cap=10.0)
OPTIMAL_Q = (2.0 + math.sqrt(12.0)) / 4.0


# ==================== СЕРТИФИКАТ ====================

def test_enzyme_certificate(enzyme_params):
    certificate = issue_certificate(enzyme_reduced(enzyme_params), WeightedNorm(1.0, (1.0, 1.25)), GRID)
    assert certificate.contractive
    assert certificate.rate_c == pytest.approx(-0.2, abs=1e-9)
    assert certificate.jacobian_source == "analytic"

    payload = certificate.to_dict()
    assert payload["verdict"] == "contractive"
    assert payload["norm"] == {"p": 1.0, "q": [1.0, 1.25]}
    assert payload["n_points"] == 65 * 65
    assert payload["argmax"][0] == 0.0
    assert {"grid", "timestamp", "diffusion_note", "caveat", "params"} <= set(payload)


def test_unweighted_enzyme_is_refused(enzyme_params):
    with pytest.raises(CertificateRefusedError) as excinfo:
        issue_certificate(enzyme_reduced(enzyme_params), WeightedNorm.unweighted(1.0, 2), GRID)
    assert excinfo.value.rate == pytest.approx(0.0, abs=1e-12)
    assert len(excinfo.value.argmax) == 2


def test_finite_difference_jacobian_is_accepted():
    scale = np.array([-1.0, -2.0])
    field_ = VectorField("fd-diag", 2, lambda x, t: x * scale, BoxDomain.unbounded(2), default_cap=1.0)
    certificate = issue_certificate(field_, WeightedNorm.unweighted(2.0, 2), GridSpec(points_per_axis=5))
    assert certificate.jacobian_source == "finite_difference"
    assert certificate.rate_c == pytest.approx(-1.0, abs=1e-6)
    assert certificate.to_dict()["jacobian_source"] == "finite_difference"


def test_weight_scaling_keeps_measure_and_verdict(rng, enzyme_params):
    # αQ и Q задают одну меру; при α = 2^k совпадение точное
    for _ in range(100):
        a = rng.normal(size=(3, 3))
        alpha = float(rng.uniform(0.01, 100.0))
        for p in (1.0, 2.0, math.inf):
            w = WeightedNorm(p, tuple(rng.uniform(0.1, 10.0, 3)))
            base = mu_weighted(a, w).value
            scale = float(np.max(np.abs(weighted_similarity(a, w.weights))))
            assert mu_weighted(a, w.scaled(alpha)).value == pytest.approx(base, rel=1e-12, abs=1e-12 * scale)
            for k in (-3, 1, 5):
                assert mu_weighted(a, w.scaled(2.0 ** k)).value == base

    field_ = enzyme_reduced(enzyme_params)
    base = issue_certificate(field_, WeightedNorm(1.0, (1.0, 1.25)), GRID)
    scaled = issue_certificate(field_, WeightedNorm(1.0, (1.0, 1.25)).scaled(3.7), GRID)
    assert scaled.contractive and base.contractive
    assert scaled.rate_c == pytest.approx(base.rate_c, rel=1e-12)
    assert scaled.rate_c < 0
    with pytest.raises(CertificateRefusedError):
        issue_certificate(field_, WeightedNorm.unweighted(1.0, 2).scaled(3.7), GRID)


# ==================== ПОИСК ВЕСОВ ====================

def test_default_candidates():
    candidates = default_candidates()
    assert candidates.size == 41
    assert 1.0 in candidates.tolist()
    assert candidates[0] == pytest.approx(1e-3)
    assert candidates[-1] == pytest.approx(1e3)


def test_search_keeps_unit_weight_for_diagonal_field():
    result = search_weights(linear_field(np.diag([-1.0, -2.0])), 2.0, GridSpec(points_per_axis=3))
    assert result.norm.q == (1.0, 1.0)
    assert result.rate == pytest.approx(-1.0)
    assert result.certificate is not None
    assert result.strategy == "exhaustive"


def test_search_finds_optimal_enzyme_weight(enzyme_params):
    result = search_weights(enzyme_reduced(enzyme_params), 1.0, GridSpec(points_per_axis=33, cap=10.0))
    q2 = result.norm.q[1]
    assert 1.0 < q2 < 1.5
    assert q2 == pytest.approx(OPTIMAL_Q, abs=1e-3)
    assert result.rate == pytest.approx(1.0 / OPTIMAL_Q - 1.0, abs=1e-4)
    assert result.rate == pytest.approx(-0.26795, abs=1e-4)
    assert result.certificate is not None
    assert result.certificate.rate_c == result.rate
    assert result.to_dict()["certified"]


def test_search_with_unit_candidate_only(enzyme_params):
    result = search_weights(enzyme_reduced(enzyme_params), 1.0, GRID, candidates=[1.0])
    assert result.rate == pytest.approx(0.0, abs=1e-12)
    assert result.certificate is None
    assert result.evaluations == 1


def test_coordinate_strategy_matches_exhaustive(enzyme_params):
    field_ = enzyme_reduced(enzyme_params)
    grid = GridSpec(points_per_axis=17, cap=10.0)
    exhaustive = search_weights(field_, 1.0, grid, strategy="exhaustive", refine=False)
    coordinate = search_weights(field_, 1.0, grid, strategy="coordinate", refine=False)
    assert coordinate.rate == exhaustive.rate
    assert coordinate.norm.q == exhaustive.norm.q


def test_search_rejects_bad_candidates(enzyme_params):
    field_ = enzyme_reduced(enzyme_params)
    with pytest.raises(InputError):
        search_weights(field_, 1.0, candidates=[])
    with pytest.raises(InputError):
        search_weights(field_, 1.0, candidates=[1.0, -2.0])
    with pytest.raises(InputError):
        search_weights(field_, 1.0, candidates=[1.0], strategy="random")


# ==================== ОТРИЦАТЕЛЬНЫЙ РЕЗУЛЬТАТ ====================

def test_witness_for_euclidean_norm(enzyme_params):
    witness = impossibility_search(enzyme_params, 2.0, 1.0)
    assert witness.branch == "saturated"
    assert witness.b == 8.0
    assert witness.witness_point == (7.0, 2.0)
    assert witness.lam == pytest.approx(0.5)
    assert witness.slope == pytest.approx(2.0)
    assert witness.lower_bound == pytest.approx(0.8)
    assert witness.mu_check >= witness.lower_bound - 1e-9


def test_witness_for_max_norm(enzyme_params):
    witness = impossibility_search(enzyme_params, "inf", 1.0)
    assert witness.branch == "max-norm"
    assert witness.witness_point == (1.0, 2.0)
    assert witness.lower_bound == pytest.approx(1.0)
    assert witness.to_dict()["p"] == "inf"


def test_witness_doubles_b_for_large_weight(enzyme_params):
    witness = impossibility_search(enzyme_params, 4.0, 100.0)
    assert witness.b == 1024.0
    assert witness.lower_bound > 0


def test_witness_falls_back_to_free_branch(enzyme_params):
    witness = impossibility_search(enzyme_params, 1.5, 100.0)
    assert witness.branch == "free"
    assert witness.witness_point == (0.0, 0.0)
    assert witness.slope > 0
    assert witness.mu_check >= -1e-9


def test_impossibility_sweep(enzyme_params):
    witnesses = impossibility_sweep(enzyme_params)
    assert len(witnesses) == 20
    for witness in witnesses:
        assert witness.mu_check >= -1e-9, witness.to_dict()
        assert witness.lower_bound > 0, witness.to_dict()
    branches = {(w.p, w.q): w.branch for w in witnesses}
    assert branches[(1.5, 100.0)] == "free"
    assert branches[(math.inf, 0.01)] == "max-norm"


def test_impossibility_errors(enzyme_params):
    with pytest.raises(InvalidNormError):
        impossibility_search(enzyme_params, 1.0, 1.0)
    with pytest.raises(InvalidParameterError):
        impossibility_search(enzyme_params, 2.0, 0.0)
    with pytest.raises(InvalidParameterError):
        impossibility_search(enzyme_params, 2.0, -1.0)
    with pytest.raises(WitnessNotFoundError):
        impossibility_search(enzyme_params, "inf", 10.0, b_cap=0.5)
