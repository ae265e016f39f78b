"""
Entangled copies
================

The two copies now share a symmetric pure state, so measuring copy A
collapses copy B.
"""

# %%
import math

from qdiscrim import PairPureState, equality_conditions, gap_diagnostics, validate_or_canonicalize
from qdiscrim import global_error_entangled, sequential_error_entangled_closed, sequential_error_entangled_protocol

e, basis = validate_or_canonicalize(PairPureState(1, 0, 0), PairPureState(0.6, 0, 0.8))
print("joint:", global_error_entangled(e))
print("sequential:", sequential_error_entangled_closed(e), sequential_error_entangled_protocol(e).total_error)
print(gap_diagnostics(e))

# %%
# A pair where both strategies tie.
b = math.sqrt(0.135)
e, _ = validate_or_canonicalize(PairPureState(0.8, b, 0.3), PairPureState(0.3, b, 0.8))
d = equality_conditions(e)
print(f"joint {d.p_global:.6f}  sequential {d.p_sequential:.6f}  conditions hold: {d.n21}  case {d.special_case}")

# %%
# Pairs in an arbitrary local basis are rotated first.
psi1 = PairPureState.normalized(0.8, 0.3j, 0.2)
psi2 = PairPureState.normalized(0.1, 0.5, -0.7)
e, basis = validate_or_canonicalize(psi1, psi2)
print("rotation:\n", basis.round(4))
print("joint", global_error_entangled(e), "sequential", sequential_error_entangled_closed(e))
