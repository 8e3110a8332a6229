"""
Сертификация сжатия: поиск весов, выдача сертификата и отрицательный
результат для p > 1.
"""

from certify.certificate import ContractionCertificate, issue_certificate
from certify.impossibility import ImpossibilityWitness, impossibility_search, impossibility_sweep
from certify.weights import WeightSearchResult, default_candidates, search_weights

__all__ = [
    "ContractionCertificate", "ImpossibilityWitness", "WeightSearchResult",
    "default_candidates", "impossibility_search", "impossibility_sweep",
    "issue_certificate", "search_weights",
]
