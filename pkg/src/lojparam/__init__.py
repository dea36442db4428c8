"""Local invariants of complex polynomial zero sets and parametric Łojasiewicz checks.

The main entry points are re-exported here; see the submodules for details.
"""

__version__ = "0.1.0"

from .errors import LojError
from .family import (
    ConvergenceReport,
    TestingDisc,
    distance_continuity_check,
    fibre_cycle_convergence,
    kuratowski_check,
    local_degree_semicontinuity,
    order_profile,
    properness_persistence_check,
    tworzewski_check,
    uniform_exponent_verify,
)
from .local import (
    DistanceEstimate,
    SliceCycleReport,
    choose_weierstrass_frame,
    dist_to_zero_set,
    local_degree_cycle,
    local_degree_set,
    weierstrass_slice_degree,
)
from .loj import LojReport, estimate_exponent, verify_inequality, verify_slice_inequality
from .poly import (
    INFINITE,
    MultiPoly,
    ParamFamily,
    Region,
    evaluate,
    order_at,
    restrict_to_line,
    shift,
    specialize_parameter,
)
from .uni import (
    RootCluster,
    UniPoly,
    all_roots,
    cluster_roots,
    count_roots_in_disc,
    multiplicity_at,
)

__all__ = [
    "ConvergenceReport", "DistanceEstimate", "INFINITE", "LojError", "LojReport", "MultiPoly",
    "ParamFamily", "Region", "RootCluster", "SliceCycleReport", "TestingDisc", "UniPoly",
    "all_roots", "choose_weierstrass_frame", "cluster_roots", "count_roots_in_disc",
    "dist_to_zero_set", "distance_continuity_check", "estimate_exponent", "evaluate",
    "fibre_cycle_convergence", "kuratowski_check", "local_degree_cycle",
    "local_degree_semicontinuity", "local_degree_set", "multiplicity_at", "order_at",
    "order_profile", "properness_persistence_check", "restrict_to_line", "shift",
    "specialize_parameter", "tworzewski_check", "uniform_exponent_verify",
    "verify_inequality", "verify_slice_inequality", "weierstrass_slice_degree",
]
