"""cycspec: exact verification of cyclic-group factorizations and spectra.

The library decides, in exact integer arithmetic, whether residue sets
factor Z/mZ, where their exponential sums vanish (via cyclotomic
divisibility), and whether candidate spectra satisfy the spectral-pair
and universal-spectrum difference criteria.  A complement search and a
quasiperiodicity search round out the toolkit, and the bundled
modulus-900 counterexample dataset can be re-verified end to end from
the command line (``cycspec reproduce``).
"""

from .groups import (
    Check,
    CyclicSet,
    DirectSumCollisionError,
    DuplicateResidueError,
    Verdict,
    coprime_witness,
    difference_residues,
    direct_sum,
    distinct_mod_lattice,
    is_factorization,
    make_cyclic_set,
    set_gcd,
)
from .cyclotomic import (
    GridSet,
    IntPolynomial,
    ZeroSet,
    cyclotomic_polynomial,
    eval_float,
    grid_is_zero,
    mask_polynomial,
    reduce_mod,
    vanishes_at_order,
    zero_set,
)
from .spectra import (
    NotAFactorizationError,
    OperationCancelled,
    SpectrumCandidate,
    TilingInstance,
    check_spectrum_pair,
    check_tijdeman_counterexample,
    check_universal_spectrum,
    verify_complementary_zeros,
    verify_zero_complement,
)
from .search import (
    ComplementStream,
    MalformedWitnessError,
    NecessityEntry,
    NecessityReport,
    QuasiperiodicSearch,
    QuasiperiodicWitness,
    enumerate_complements,
    necessity_witnesses,
    search_quasiperiodic,
    verify_quasiperiodic,
)

__version__ = "0.1.0"

__all__ = [
    "Check",
    "ComplementStream",
    "CyclicSet",
    "DirectSumCollisionError",
    "DuplicateResidueError",
    "GridSet",
    "IntPolynomial",
    "MalformedWitnessError",
    "NecessityEntry",
    "NecessityReport",
    "NotAFactorizationError",
    "OperationCancelled",
    "QuasiperiodicSearch",
    "QuasiperiodicWitness",
    "SpectrumCandidate",
    "TilingInstance",
    "Verdict",
    "ZeroSet",
    "check_spectrum_pair",
    "check_tijdeman_counterexample",
    "check_universal_spectrum",
    "coprime_witness",
    "cyclotomic_polynomial",
    "difference_residues",
    "direct_sum",
    "distinct_mod_lattice",
    "enumerate_complements",
    "eval_float",
    "grid_is_zero",
    "is_factorization",
    "make_cyclic_set",
    "mask_polynomial",
    "necessity_witnesses",
    "reduce_mod",
    "search_quasiperiodic",
    "set_gcd",
    "vanishes_at_order",
    "verify_complementary_zeros",
    "verify_quasiperiodic",
    "verify_zero_complement",
    "zero_set",
]
