# src/certify/certificate.py
"""
Сертификат сжатия: если sup_x μ_{p,Q}(J_F(x)) = c < 0 на выпуклой V,
то реакционная система сжимающая в ‖·‖_{p,Q} со скоростью c, и та же
c ограничивает уравнение реакции-диффузии с любой диагональной D
(условие Неймана) и любую диффузионную сеть с симметричным лапласианом.

Сертификат основан на сеточной выборке: это свидетельство, а не
доказательство (максимум внутри ячейки сетки может быть пропущен).
"""

import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from linalg.norms import WeightedNorm
from lognorm.lipschitz import GridSpec, LipschitzEstimate, lipschitz_constant
from models.vector_field import FD_STEP, VectorField, check_jacobian
from utils.config import DEFAULT_SEED
from utils.errors import CertificateRefusedError

logger = logging.getLogger(__name__)

# ==================== КОНФИГУРАЦИЯ ====================

FD_AGREEMENT_TOL = 1e-7
FD_AGREEMENT_POINTS = 200

DIFFUSION_NOTE = (
    "Та же скорость c ограничивает ‖u(t)−v(t)‖_{p,Q} ≤ e^{ct}‖u(0)−v(0)‖_{p,Q} для "
    "уравнения реакции-диффузии u_t = F(u) + DΔu с условием Неймана при любой "
    "диагональной D > 0 и для любой сети u̇ = F̃(u) − (L⊗D)u с симметричным лапласианом L."
)
SAMPLING_CAVEAT = (
    "Скорость: супремум по конечной сетке: свидетельство, а не доказательство."
)


@dataclass
class ContractionCertificate:
    model: str
    params: dict
    norm: WeightedNorm
    rate_c: float
    evidence: LipschitzEstimate
    jacobian_source: str = "analytic"
    issued_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    diffusion_note: str = DIFFUSION_NOTE

    @property
    def contractive(self) -> bool:
        return self.rate_c < 0

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "params": self.params,
            "norm": self.norm.to_dict(),
            "rate_c": self.rate_c,
            "verdict": "contractive" if self.contractive else "not-certified",
            "grid": self.evidence.grid_spec.to_dict(),
            "n_points": self.evidence.n_points,
            "argmax": self.evidence.argmax_point.tolist(),
            "argmax_time": self.evidence.argmax_time,
            "jacobian_source": self.jacobian_source,
            "timestamp": self.issued_at,
            "diffusion_note": self.diffusion_note,
            "caveat": SAMPLING_CAVEAT,
        }


def finite_difference_agreement(f: VectorField, *, seed: int = DEFAULT_SEED) -> float:
    """Согласие разностного якобиана при двух шагах (1e-6 и 1e-5)."""
    return check_jacobian(f, FD_AGREEMENT_POINTS, seed=seed, step=10.0 * FD_STEP)


def issue_certificate(f: VectorField, w: WeightedNorm, grid: Optional[GridSpec] = None, *,
                      seed: int = DEFAULT_SEED,
                      estimate: Optional[LipschitzEstimate] = None) -> ContractionCertificate:
    """
    Выдаёт сертификат, если сеточный sup μ_{p,Q}(J_F) < 0.

    Raises:
        CertificateRefusedError: скорость ≥ 0 (с точкой argmax), либо
            разностный якобиан не согласован до 1e-7
    """
    if f.jacobian_source == "finite_difference":
        agreement = finite_difference_agreement(f, seed=seed)
        if agreement > FD_AGREEMENT_TOL:
            raise CertificateRefusedError(
                f"{f.name}: разностный якобиан не согласован ({agreement:.3e} > {FD_AGREEMENT_TOL:g})",
                float("nan"),
            )
    estimate = estimate or lipschitz_constant(f, w, grid, seed=seed)
    if estimate.value >= 0:
        raise CertificateRefusedError(
            f"{f.name}: sup μ = {estimate.value:.12g} ≥ 0 в точке {estimate.argmax_point.tolist()}",
            estimate.value,
            estimate.argmax_point.tolist(),
        )
    certificate = ContractionCertificate(f.name, dict(f.params), w, estimate.value, estimate,
                                         f.jacobian_source)
    logger.info(f"✅ {f.name}: сжатие в норме p={w.p:g}, Q={list(w.q)} со скоростью {estimate.value:.12g}")
    return certificate
