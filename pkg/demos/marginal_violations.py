"""Hunt for states whose marginals carry more weight than the whole.

On pure two-qubit states the weight obeys C_w(rho) >= C_w(a) + C_w(b) -
C_w(a) C_w(b) and the robustness obeys C_R(rho) >= C_R(a) + C_R(b), so
the deltas below stay nonnegative.  Mixing breaks both: tracing a third
system out of a Haar-random pure state produces violations within a few
hundred draws.
"""

from resweight import run_violation_search

# Mixed inputs: two qubits entangled with a 4-dimensional environment.
res = run_violation_search(150, seed=42, denv=4)
print("mixed two-qubit states:", res.summary)
print("violating rows (sample, delta_cw, delta_cr):")
for row in res.rows:
    if row[4] < -1e-5 or row[8] < -1e-5:
        print(f"  {row[0]:4d}  {row[4]:+.6f}  {row[8]:+.6f}")

# Control: pure inputs (trivial environment) never violate.
pure = run_violation_search(60, seed=42, denv=1)
print("\npure control:", {k: pure.summary[k]
                          for k in ("negative_cw", "negative_cr",
                                    "min_delta_cw", "min_delta_cr")})
assert pure.summary["negative_cw"] == 0 and pure.summary["negative_cr"] == 0
