"""
Optimal test between two qubit states
=====================================

Build two density matrices, find the measurement that guesses best, and
check it against a brute-force search over measurements.
"""

# %%
import numpy as np

from qdiscrim import Hypotheses, QubitState, helstrom_error, helstrom_measurement, outcome_probabilities
from qdiscrim import bayes_posterior, brute_force_min_error

# A pure state against the maximally mixed state.
h = Hypotheses(QubitState(1.0).operator(), QubitState(0.5).operator())
m = helstrom_measurement(h)
print("outcome-2 projector:\n", m.pi2.real)
print("minimum error:", helstrom_error(h))

# %%
# How often each outcome fires under each hypothesis, and what we believe
# afterwards.
d = outcome_probabilities(h, m)
print("p(s/k):\n", d.p_k_given_i)
print("posterior after outcome 2:", bayes_posterior(h, d, 2))

# %%
# No measurement on the sphere grid does better.
r = brute_force_min_error(h)
print(f"grid search: {r.best_error:.6f} over {r.evaluations} measurements")
