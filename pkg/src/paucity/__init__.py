"""Exact counting and identity checks for incomplete Vinogradov systems."""

from .symfunc import (
    BoundedPoly,
    SigmaTable,
    Witness,
    divided_difference_reduce,
    elementary_symmetric,
    power_sums,
    sigma_from_power_sums,
    sigma_newton,
    tau_eval,
    verify_witness,
)
from .counting import (
    BudgetExceeded,
    CountReport,
    SystemSpec,
    count_T,
    count_fast,
    count_naive,
    nondiagonal_witnesses,
    v_split,
)
from .exponents import bound_report, gamma, gamma_refined, omega, theta
from .cascade import (
    DecompTable,
    ProductMatrix,
    cascade_extract,
    index_set_cardinalities,
    phi,
    phi_inv,
    reconstruct_verify,
    successor,
)
from .nrcount import NrInstance, nr_bound_exponent, nr_count

__version__ = "0.1.0"
