"""Majorization lattice on ordered PMFs: meet/join, couplings, Rényi and Tsallis
entropies, and executable checks of their lattice inequalities."""

from .couplings import (
    Coupling,
    RefinementCoupling,
    aggregate_by_extremum,
    comonotone_coupling,
    comonotone_many,
    independent_coupling,
    marginal,
    sorted_mass_vector,
)
from .econ import check_metric_axioms, entropy_distance, renyi_theil, theil
from .entropy import (
    AlphaOrder,
    OrderKind,
    entropy,
    parse_alpha,
    power_sum,
    pseudo_additivity_check,
    renyi,
    shannon,
    tsallis,
)
from .exceptions import *  # noqa: F401,F403
from .inequalities import (
    EQ_TOL,
    CheckResult,
    SweepConfig,
    VerificationReport,
    check_corollary1,
    check_corollary2,
    check_equality_condition_subadd,
    check_subadditivity,
    check_supermodularity,
    delta_supermod,
    search_counterexamples,
    sweep_verify,
)
from .exact import lattice_grid_check, oracle_exact_check
from .lattice import LatticePair, beta_vector, concavify, join, join_many, lattice_pair, meet, meet_many
from .pmf import (
    CMP_TOL,
    NORM_TOL,
    SUPP_TOL,
    LorenzCurve,
    OrderedPmf,
    Partition,
    RawVector,
    aggregate,
    deterministic,
    is_majorized_by,
    lorenz_eval,
    make_pmf,
    prefix_sums,
    support_size,
    uniform,
)

__version__ = "0.1.0"
