"""Exact periodic-point counting for compact product-group automorphisms.

Construct plans with a prescribed logarithmic growth rate of periodic points,
count those points exactly (factored big integers throughout), cross-check
against a brute-force enumeration oracle, relate period counts to
least-period counts by Moebius inversion, and analyze toral counterparts:
Lehmer sequences, Mahler measures, and truncated dynamical zeta functions.
"""

from .construction import (
    ComponentSpec,
    ConstructionPlan,
    build_plan,
    claimed_vs_exact_report,
    deficit_report,
    enumerate_oracle,
    fixed_count,
    least_count_claimed,
    least_count_exact,
    load_plan,
    save_plan,
)
from .numtheory import (
    BudgetError,
    FactoredNatural,
    PrimeInProgression,
    PrimitiveRootCert,
    divisors,
    element_of_order,
    is_prime,
    least_prime_congruent_one,
    mobius,
    primitive_root,
)
from .orbits import (
    CountSequence,
    GrowthDiagnostics,
    RealizabilityError,
    fixed_from_least,
    growth_diagnostics,
    least_from_fixed,
    lemma_sandwich_check,
    realizability_check,
)
from .targets import GrowthTarget
from .toral import (
    ConvergenceError,
    DegeneracyError,
    IntegerPolynomial,
    MahlerResult,
    degeneracy_check,
    delta_n,
    delta_n_resultant,
    lehmer_growth_check,
    mahler_measure,
    toral_fix_sequence,
)
from .zeta import ZetaSeries, orbit_product_form, rationality_probe, zeta_truncate

__version__ = "0.1.0"
