"""Witnesses: hand-built, solver-optimal, and one sign trap.

A weight witness W satisfies P(W) <= 0 and W <= I for the free projection
P; then Tr[rho W] lower-bounds the weight, with equality at the optimum.
"""

import numpy as np

from resweight import (asymmetry_weight, coherence_weight, dephase, gisin,
                       l1_coherence, maximally_coherent, negating_phases,
                       op_norm, rep_swap, witness_evaluate)

# --- the textbook construction -------------------------------------------
# W = (rho - Delta(rho)) / lambda_max(rho) is always feasible and already
# detects every coherent state, just not optimally.
rho = np.array([[0.5, 0.3], [0.3, 0.5]])
w_hand = (rho - dephase(rho)) / op_norm(rho)
value, feasible = witness_evaluate(rho, w_hand)
print(f"hand-built witness: value={value:.6f} feasible={feasible}")

# The report's witness is optimal: it recovers the weight itself.
rep = coherence_weight(rho)
value, feasible = witness_evaluate(rho, rep.witness)
print(f"optimal witness:    value={value:.6f} feasible={feasible} "
      f"(C_w={rep.value:.6f})")

# --- a sign trap under the swap symmetry ----------------------------------
# The negated swap operator looks like an asymmetry witness for the singlet:
# Tr[rho (-V)] = 1.  But the singlet only gains a global phase under
# exchange, so as a density matrix it is swap-INVARIANT, i.e. free, and its
# weight is zero.  A value-1 "witness" on a free state cannot be feasible,
# and indeed the twirl of -V is not <= 0.
rep2 = rep_swap(2)
singlet = gisin(1.0, np.pi / 4)
swap_v = rep2.elements[1]
value, feasible = witness_evaluate(singlet, -swap_v, free=rep2)
print(f"\nsinglet vs -V:        value={value:+.6f} feasible={feasible}")
aw = asymmetry_weight(singlet, rep2)
print(f"A_w(singlet) is actually {aw.value:.6f}")

# A genuinely asymmetric state gets a legitimate certificate: |01> swaps to
# |10>, its weight is 1, and the optimal witness attains it feasibly.
ket01 = np.zeros((4, 4))
ket01[1, 1] = 1.0
aw = asymmetry_weight(ket01, rep2, method="sdp")
value, feasible = witness_evaluate(ket01, aw.witness, free=rep2)
print(f"|01><01| vs optimal:  value={value:+.6f} feasible={feasible}")

# --- when is the l1 norm itself a weight lower bound? ----------------------
# Exactly when some diagonal phase rotation makes every off-diagonal entry
# nonpositive.  negating_phases finds such phases or reports None.
for label, state in [("qubit", rho),
                     ("gisin(0.7, pi/5)", gisin(0.7, np.pi / 5)),
                     ("max coherent d=3", maximally_coherent(3))]:
    phases = negating_phases(state)
    tag = "found" if phases is not None else "none exist"
    print(f"\n{label}: negating phases {tag}")
    if phases is not None:
        cw = coherence_weight(state).value
        print(f"  so C_l1={l1_coherence(state):.6f} <= C_w={cw:.6f} holds")
