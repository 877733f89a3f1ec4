"""Check the solver against families whose measures are known exactly.

Werner states on d x d have C_w = C_R = C_l1 = alpha no matter the
dimension; Gisin states have C_w = lambda and C_R = C_l1 = lambda |sin 2
theta|; the maximally coherent state has C_R = d - 1.  None of these facts
enter the solver, so agreement is a real end-to-end test.
"""

import numpy as np

from resweight import (coherence_weight, gisin, l1_coherence,
                       maximally_coherent, robustness_coherence, werner)

worst = 0.0

print("Werner states, d in {2, 3, 4}:")
for d in (2, 3, 4):
    for alpha in np.linspace(0.1, 0.9, 5):
        rho = werner(d, alpha)
        err = max(abs(coherence_weight(rho).value - alpha),
                  abs(robustness_coherence(rho).value - alpha),
                  abs(l1_coherence(rho) - alpha))
        worst = max(worst, err)
    print(f"  d={d}: max deviation from alpha so far {worst:.2e}")

print("Gisin states:")
for lam in (0.3, 0.6, 0.9):
    for theta in (np.pi / 8, np.pi / 5, np.pi / 3):
        rho = gisin(lam, theta)
        target_r = lam * abs(np.sin(2 * theta))
        err = max(abs(coherence_weight(rho).value - lam),
                  abs(robustness_coherence(rho).value - target_r),
                  abs(l1_coherence(rho) - target_r))
        worst = max(worst, err)
        print(f"  lambda={lam:.1f} theta={theta:.3f}: "
              f"C_w={coherence_weight(rho).value:.6f} "
              f"C_R={robustness_coherence(rho).value:.6f} err={err:.2e}")

print("Maximally coherent states:")
for d in (2, 3, 4, 5):
    got = robustness_coherence(maximally_coherent(d)).value
    worst = max(worst, abs(got - (d - 1)))
    print(f"  d={d}: C_R={got:.8f} (exact {d - 1})")

print(f"\nworst deviation across everything: {worst:.2e}")
assert worst < 1e-6
