"""Two-state discrimination with two replicas: one joint measurement versus
measuring the replicas one after the other with feed-forward."""

from .discrimination import (
    Hypotheses,
    QubitState,
    TwoOutcomeMeasurement,
    bayes_posterior,
    helstrom_error,
    helstrom_measurement,
    mean_error,
    outcome_probabilities,
)
from .entangled import (
    EntangledProblem,
    PairPureState,
    equality_conditions,
    gap_diagnostics,
    global_error_entangled,
    sequential_error_entangled_closed,
    sequential_error_entangled_protocol,
    validate_or_canonicalize,
)
from .errors import NumericConsistencyError, UndefinedConditionalError, ValidationError
from .oracle import SearchConfig, brute_force_min_error, simulate_sequential
from .qlin import eig_hermitian, partial_trace, tensor_product
from .replicas import (
    IndependentPairProblem,
    compare_independent,
    global_pair_error,
    global_pair_error_pipeline,
    sequential_pair_error_closed,
    sequential_pair_protocol,
)

__version__ = "0.1.0"
