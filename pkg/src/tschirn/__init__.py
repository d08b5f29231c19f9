"""Splitting types of direct images for covers cut out on Hirzebruch surfaces.

Exact computations over Q: predictions from intersection theory
(:mod:`tschirn.geometry`), and independent verification from equations via
integral closures and Birkhoff factorization (:mod:`tschirn.verify`).
"""

from .birkhoff import SplittingType, factorize, splitting_type
from .geometry import predict_thm_a, predict_thm_b, predict_tschirnhausen
from .instances import CoxCurve, PlaneCurve, random_instance
from .verify import verify_instance, verify_plane

__all__ = [
    "SplittingType",
    "factorize",
    "splitting_type",
    "predict_thm_a",
    "predict_thm_b",
    "predict_tschirnhausen",
    "CoxCurve",
    "PlaneCurve",
    "random_instance",
    "verify_instance",
    "verify_plane",
]

__version__ = "0.1.0"
