"""
Checking the numbers without the formulas
=========================================

A direct search over measurements and a Monte Carlo run of the sequential
protocol, each compared with the analytic values.
"""

# %%
import numpy as np

from qdiscrim import Hypotheses, IndependentPairProblem, PairPureState, EntangledProblem
from qdiscrim import SearchConfig, brute_force_min_error, helstrom_error, simulate_sequential

p = IndependentPairProblem(0.9, 0.3, 0.2)
h = Hypotheses(np.kron(p.rho1, p.rho1), np.kron(p.rho2, p.rho2))
r = brute_force_min_error(h, SearchConfig(random_trials=10_000, seed=1))
print(f"search {r.best_error:.9f}  Helstrom {helstrom_error(h):.9f}")

# %%
for problem, analytic in [(IndependentPairProblem(1.0, 0.5), 0.125),
                          (EntangledProblem(PairPureState(1, 0, 0), PairPureState(0.6, 0, 0.8)), 0.18)]:
    s = simulate_sequential(problem, 1_000_000, seed=42)
    print(f"{s.empirical_error:.5f} +- {s.std_error:.5f}  (analytic {analytic})")
