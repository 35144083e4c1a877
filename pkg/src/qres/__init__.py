"""Exact decisions and desk-scale experiments for q-th power residues.

The central question: does a finite set of integers contain a q-th power
modulo almost every prime?  `decide` answers it exactly with a
re-checkable witness; `estimate_density` cross-validates against a prime
sieve; `run_census` counts how many k-subsets of growing boxes qualify.
"""

from .arith import (
    MAX_MAGNITUDE,
    ExponentVector,
    FactoredInteger,
    PrimeBasis,
    exponent_vector,
    factor,
    iroot,
    is_perfect_power,
    is_prime,
    q_free_part,
)
from .census import (
    ADDITIVE,
    MULTIPLICATIVE,
    BoundConstants,
    BoxSpec,
    CensusRow,
    DecayReport,
    PowerSubsetCount,
    bound_constants,
    count_with_perfect_power,
    decay_table,
    enumerate_box,
    run_census,
)
from .criterion import (
    Covering,
    HyperplaneSet,
    NoOddSquareSubset,
    OddSquareSubset,
    PerfectPower,
    UncoveredPoint,
    Verdict,
    build_hyperplanes,
    covers,
    decide,
    odd_square_subset,
    verify_witness,
)
from .density import DensityEstimate, estimate_density, is_qth_residue, primes_up_to
from .errors import ContractError, GuardError, MagnitudeError, QresError, ZeroInputError

__version__ = "0.1.0"
