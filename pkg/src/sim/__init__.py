"""
Интегрирование траекторий и эмпирическая проверка оценок сжатия и
синхронизации.
"""

from sim.contraction import ContractionReport, check_envelope, dini_margins, verify_contraction
from sim.integrator import Trajectory, integrate, rk4_step
from sim.sync import SyncReport, pairwise_distances, sync_rate, verify_sync

__all__ = [
    "ContractionReport", "SyncReport", "Trajectory", "check_envelope",
    "dini_margins", "integrate", "pairwise_distances", "rk4_step",
    "sync_rate", "verify_contraction", "verify_sync",
]
