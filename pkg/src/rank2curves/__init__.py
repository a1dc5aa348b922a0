"""Exact rank certificates for y^2 = x^3 - pq x and y^2 = x^3 + (pq)^2.

Prime pairs from 2b^2 = p + q and 2a^3 = 27p + q give explicit non-torsion
points; root numbers and isogeny descents pin the rank to {1, 2}, and parity
picks 2.
"""

from .curves import Curve, Point, torsion_subgroup
from .descent2 import rank_upper_2descent, selmer_group
from .descent3 import alpha_upper, rank_interval_3
from .family import (
    CertificateError,
    HypothesisError,
    RankCertificate,
    certify,
    certify_T2,
    certify_T3,
    search_certificates,
    search_prime_pairs,
    verify_certificate,
)
from .rootnum import root_number_Am, root_number_Em

__all__ = [
    "Curve",
    "Point",
    "torsion_subgroup",
    "selmer_group",
    "rank_upper_2descent",
    "alpha_upper",
    "rank_interval_3",
    "CertificateError",
    "HypothesisError",
    "RankCertificate",
    "certify",
    "certify_T2",
    "certify_T3",
    "search_certificates",
    "search_prime_pairs",
    "verify_certificate",
    "root_number_Em",
    "root_number_Am",
]

__version__ = "0.1.0"
