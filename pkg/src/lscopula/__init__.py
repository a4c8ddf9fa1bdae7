"""Location-scale lifetimes, Archimedean copulas and majorization-to-order checks."""

from ._version import __version__
from .baselines import BaselineDistribution, LSDistribution
from .copulas import ArchimedeanGenerator
from .majorization import MajorizationRelation, OrderedCone, generate_pair, majorize
from .mc_oracle import ks_compare, simulate_system
from .orders import OrderRelation, order_chain_check, order_verdict
from .suite import run_suite
from .systems import SystemSpec, build
from .theorems import TheoremId, Tolerances, catalog, check_case, counterexample_search, make_case, random_case
from .verdict import CheckVerdict, Status

__all__ = [
    "__version__",
    "ArchimedeanGenerator",
    "BaselineDistribution",
    "CheckVerdict",
    "LSDistribution",
    "MajorizationRelation",
    "OrderRelation",
    "OrderedCone",
    "Status",
    "SystemSpec",
    "TheoremId",
    "Tolerances",
    "build",
    "catalog",
    "check_case",
    "counterexample_search",
    "generate_pair",
    "ks_compare",
    "make_case",
    "majorize",
    "order_chain_check",
    "order_verdict",
    "random_case",
    "run_suite",
    "simulate_system",
]
