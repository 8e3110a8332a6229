# src/cli/pipeline.py
"""
Выполнение команд CLI: конфиг → вызов модулей → результат и артефакты.
"""

import logging
import math
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from certify.certificate import issue_certificate
from certify.impossibility import impossibility_sweep
from certify.weights import default_candidates, search_weights
from graphnet.laplacian import parse_graph
from graphnet.network import DiffusionMatrix, NetworkSystem, assemble_network
from graphnet.pde import SpatialGrid, discretize_pde
from linalg.dense import as_square, as_vector
from linalg.norms import WeightedNorm
from lognorm.lipschitz import GridSpec, lipschitz_constant
from lognorm.measures import mu_weighted
from models.enzyme import EnzymeParams, enzyme_l1_weight
from models.registry import build_model
from models.vector_field import VectorField
from schemas.results import RunResult, make_result
from schemas.run_config import RunConfig
from sim.contraction import verify_contraction
from sim.sync import verify_sync
from utils.config import DEFAULT_WEIGHT_RANGE, defaults_snapshot, get_output_dir
from utils.errors import CertificateRefusedError, ConfigError
from utils.io import validate_result, write_json, write_timeseries_csv

logger = logging.getLogger(__name__)


class CommandPipeline:
    """Диспетчер команд; каждая команда возвращает RunResult."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.out_dir = get_output_dir(config.out)
        self.handlers: dict[str, Callable[[], RunResult]] = {
            "measure": self.measure,
            "certify": self.certify,
            "search-weights": self.search_weights,
            "impossibility": self.impossibility,
            "simulate-network": self.simulate_network,
            "simulate-pde": self.simulate_pde,
            "sync": self.sync,
        }

    # ==================== ОБЩИЕ ЧАСТИ ====================

    def _result(self, status: str, result: dict, csv: Optional[Path] = None) -> RunResult:
        return make_result(self.config.command, status, self.config.to_dict(), defaults_snapshot(),
                           result, str(csv) if csv is not None else None)

    def _field(self) -> VectorField:
        return build_model(self.config.model, self.config.params)

    def _grid(self) -> GridSpec:
        return GridSpec(points_per_axis=self.config.points, cap=self.config.cap)

    def _norm(self, dim: int) -> WeightedNorm:
        """Норма из p и q; для модели фермента при p = 1 можно задать ζ."""
        config = self.config
        if config.zeta is not None:
            if config.model != "enzyme":
                raise ConfigError("zeta", "ζ задаёт вес только для модели enzyme")
            return enzyme_l1_weight(EnzymeParams.from_dict(config.params), config.zeta)
        if config.q is None:
            return WeightedNorm.unweighted(config.p, dim)
        if isinstance(config.q, list):
            q = config.q
        elif dim == 2:
            q = [1.0, config.q]
        else:
            raise ConfigError("q", f"для размерности {dim} веса задаются списком")
        if len(q) != dim:
            raise ConfigError("q", f"ожидалось {dim} весов, получено {len(q)}")
        return WeightedNorm(config.p, tuple(q))

    def _diffusion(self, dim: int) -> DiffusionMatrix:
        d = self.config.diffusion
        if isinstance(d, list):
            if len(d) != dim:
                raise ConfigError("diffusion", f"ожидалось {dim} коэффициентов, получено {len(d)}")
            return DiffusionMatrix(tuple(d))
        return DiffusionMatrix.uniform(d, dim)

    def _initial_pair(self, system: NetworkSystem) -> tuple[np.ndarray, np.ndarray]:
        config = self.config
        rng = np.random.default_rng(config.seed)
        cap = config.cap if config.cap is not None else system.cell_field.default_cap
        samples = [
            system.cell_field.domain.sample(rng, system.n_cells, cap=cap).ravel() for _ in range(2)
        ]
        u0 = as_vector(config.u0, "u0") if config.u0 is not None else samples[0]
        v0 = as_vector(config.v0, "v0") if config.v0 is not None else samples[1]
        return u0, v0

    def _rate(self, f: VectorField, w: WeightedNorm) -> float:
        if self.config.rate is not None:
            return self.config.rate
        return lipschitz_constant(f, w, self._grid(), seed=self.config.seed).value

    def _contraction_run(self, system: NetworkSystem, dt: float) -> RunResult:
        f = system.cell_field
        w = self._norm(f.dim)
        rate_c = self._rate(f, w)
        u0, v0 = self._initial_pair(system)
        logger.info(f"🧪 {system.name}: c = {rate_c:.12g}, t_end = {self.config.t_end:g}, dt = {dt:g}")
        report = verify_contraction(system, u0, v0, w, rate_c, self.config.t_end, dt, self.config.tolerance)
        csv = write_timeseries_csv(self.out_dir / f"{self.config.command}.csv", report.to_frame())
        status = "ok" if report.bound_ok else "violated"
        return self._result(status, report.to_dict(), csv)

    # ==================== КОМАНДЫ ====================

    def measure(self) -> RunResult:
        config = self.config
        if config.matrix is not None:
            a = as_square(config.matrix, "matrix")
            source = "matrix"
        else:
            if config.point is None:
                raise ConfigError("point", "для measure нужна matrix или model + point")
            f = self._field()
            a = f.jacobian(as_vector(config.point, "point"))
            source = f"jacobian:{f.name}"
        w = self._norm(a.shape[0])
        measure = mu_weighted(a, w, method=config.method, seed=config.seed)
        logger.info(f"📐 μ = {measure.value:.15g} ({measure.method})")
        return self._result("ok", {**measure.to_dict(), "norm": w.to_dict(), "source": source})

    def certify(self) -> RunResult:
        f = self._field()
        w = self._norm(f.dim)
        try:
            certificate = issue_certificate(f, w, self._grid(), seed=self.config.seed)
        except CertificateRefusedError as e:
            logger.warning(f"⛔ Сертификат не выдан: {e}")
            return self._result("refused", {"rate_c": e.rate, "argmax": e.argmax, "norm": w.to_dict(),
                                            "certificate": None, "reason": str(e)})
        return self._result("ok", {"rate_c": certificate.rate_c, "norm": w.to_dict(),
                                   "certificate": certificate.to_dict()})

    def search_weights(self) -> RunResult:
        f = self._field()
        candidates = default_candidates(self.config.candidates, DEFAULT_WEIGHT_RANGE)
        if self.config.q is not None:
            # одно число: единственный кандидат, а не q₂
            candidates = np.atleast_1d(np.asarray(self.config.q, dtype=np.float64))
        found = search_weights(f, self.config.p, self._grid(), candidates,
                               seed=self.config.seed, progress=self.config.progress)
        result = found.to_dict()
        result["certificate"] = found.certificate.to_dict() if found.certificate else None
        return self._result("ok" if found.certificate else "refused", result)

    def impossibility(self) -> RunResult:
        config = self.config
        params = EnzymeParams.from_dict(config.params)
        qs = config.q if isinstance(config.q, list) else [config.q if config.q is not None else 1.0]
        witnesses = impossibility_sweep(params, [config.p], qs, config.b_cap,
                                        seed=config.seed, progress=config.progress)
        for witness in witnesses:
            logger.info(f"🚫 p={witness.p:g}, q={witness.q:g}: точка {witness.witness_point}, μ ≥ {witness.lower_bound:.6g}")
        return self._result("ok", {"witnesses": [witness.to_dict() for witness in witnesses]})

    def simulate_network(self) -> RunResult:
        f = self._field()
        system = assemble_network(f, parse_graph(self.config.graph), self._diffusion(f.dim))
        return self._contraction_run(system, self.config.dt or system.default_dt())

    def simulate_pde(self) -> RunResult:
        f = self._field()
        grid = SpatialGrid(self.config.length, self.config.cells)
        system = discretize_pde(f, self._diffusion(f.dim), grid)
        return self._contraction_run(system, self.config.dt or system.default_dt())

    def sync(self) -> RunResult:
        config = self.config
        f = self._field()
        topology = parse_graph(config.graph)
        d = self._diffusion(f.dim)
        w = self._norm(f.dim)
        system = assemble_network(f, topology, d)
        u0, _ = self._initial_pair(system)
        dt = config.dt or system.default_dt()
        report = verify_sync(f, topology, d, w, u0, config.t_end, dt, config.tolerance,
                             grid=self._grid(), rate_c=config.rate, seed=config.seed)
        csv = write_timeseries_csv(self.out_dir / "sync.csv", report.to_frame())
        return self._result("ok" if report.bound_ok else "violated", report.to_dict(), csv)

    # ==================== ЗАПУСК ====================

    def run(self) -> RunResult:
        result = self.handlers[self.config.command]()
        validate_result(result)
        path = write_json(self.out_dir / f"{self.config.command}.json", result)
        logger.info(f"💾 Результат: {path}")
        return result


def format_summary(result: RunResult) -> str:
    """Короткая сводка для stdout."""
    body = result["result"]
    icon = {"ok": "✅", "violated": "❌", "refused": "⛔"}[result["status"]]
    lines = [f"{icon} {result['command']}: {result['status']}"]
    for key in ("value", "rate_c", "rate", "bound_ok", "worst_ratio", "lambda", "guarantee"):
        if key in body:
            value = body[key]
            lines.append(f"   {key}: {value:.15g}" if isinstance(value, float) and math.isfinite(value) else f"   {key}: {value}")
    if "witnesses" in body:
        lines.append(f"   свидетелей: {len(body['witnesses'])}")
    if result["command"] in ("certify", "search-weights") and result["status"] == "ok":
        lines.append("   ⚠️ сертификат основан на сеточной выборке: свидетельство, а не доказательство")
    return "\n".join(lines)
