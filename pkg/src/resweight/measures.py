"""Resource quantifiers built on the SDP layer, plus solver-free oracles.

Weights answer "how large a resourceful part must any free/resourceful
mixture of rho contain"; robustness answers "how much of some state must be
mixed in before rho turns free".  Both come back as `MeasureReport` values
carrying optimal certificates.  The l1, relative-entropy, and Hilbert-Schmidt
quantities are closed-form.  The oracles at the bottom recompute selected
weights by bisection over explicit state families and never touch the SDP
machinery, so they make meaningful cross-checks.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (assert_density_matrix, assert_hermitian, eig_hermitian,
                     hermitianize, hs_norm_sq, matrix_to_json, op_norm,
                     von_neumann_entropy)
from .sdp import (SdpSolution, SolverError, SolverOptions,
                  encode_asymmetry_weight, encode_asymmetry_weight_dual,
                  encode_coherence_weight, encode_coherence_weight_dual,
                  encode_robustness, map_apply, solve)
from .states import UnitaryRep

# A state whose computed weight or robustness lands at or below this is
# reported as exactly free.
FREE_SNAP = 1e-7
# Purity above this triggers the exact pure-state answer for weights.
PURITY_ONE = 1.0 - 1e-10
# Frobenius distance to the free projection below which a state is treated
# as free without solving anything.
EXACT_FREE = 1e-12

WITNESS_FEAS_TOL = 1e-8


@dataclass
class MeasureReport:
    """One quantifier evaluation with its optimal certificates.

    For weight kinds the certificates satisfy rho = (1-value) free_state
    + value residual_state; for robustness kinds they satisfy rho =
    (1+value) free_state - value residual_state.  `witness` (weights only)
    is a feasible dual witness with Tr[rho W] equal to the value.
    """

    kind: str
    value: float
    gap: float
    witness: np.ndarray | None = None
    free_state: np.ndarray | None = None
    residual_state: np.ndarray | None = None

    def reconstruction(self) -> np.ndarray | None:
        """Rebuild rho from the stored decomposition, if complete."""
        if self.free_state is None:
            return None
        if self.residual_state is None:
            return self.free_state.copy()
        if self.kind.startswith("robustness"):
            return ((1.0 + self.value) * self.free_state
                    - self.value * self.residual_state)
        return ((1.0 - self.value) * self.free_state
                + self.value * self.residual_state)

    def to_json(self, include_matrices: bool = True) -> dict:
        out = {"measure": self.kind, "value": self.value, "gap": self.gap}
        if include_matrices:
            for name in ("witness", "free_state", "residual_state"):
                mat = getattr(self, name)
                if mat is not None:
                    out[name] = matrix_to_json(mat)
        return out


def _projection(rep, h):
    if rep is None:
        return map_apply("dephasing", None, h)
    return map_apply("group", rep, h)


def _free_distance(rho, rep) -> float:
    return float(np.sqrt(hs_norm_sq(rho - _projection(rep, rho))))


def _check_optimal(sol: SdpSolution) -> SdpSolution:
    if sol.status != "optimal":
        raise SolverError(sol.status, sol.problem.label)
    return sol


def _weight_from_sdp(rho, rep, kind, encodings, options, trace=None):
    d = rho.shape[0]
    eye = np.eye(d)
    if rep is None:
        enc_primal, enc_dual = encode_coherence_weight, encode_coherence_weight_dual
        enc_args = (rho,)
    else:
        enc_primal, enc_dual = encode_asymmetry_weight, encode_asymmetry_weight_dual
        enc_args = (rho, rep)

    sigma_tilde = witness = None
    gap = 0.0
    if encodings in ("primal", "both"):
        sp = _check_optimal(solve(enc_primal(*enc_args), options=options,
                                  trace=trace))
        value = 1.0 - sp.primal_value
        sigma_tilde = _projection(rep, sp.primal_matrix)
        witness = hermitianize(sp.dual_matrix + eye)
        gap = sp.gap
    if encodings in ("dual", "both"):
        sd = _check_optimal(solve(enc_dual(*enc_args), options=options,
                                  trace=trace))
        value = sd.primal_value
        witness = hermitianize(eye - sd.primal_matrix)
        if sigma_tilde is None:
            sigma_tilde = _projection(rep, -sd.dual_matrix)
        gap = max(gap, sd.gap)

    value = min(max(value, 0.0), 1.0)
    if value <= FREE_SNAP:
        value = 0.0
    free = (sigma_tilde / (1.0 - value) if 1.0 - value > 1e-9
            else _projection(rep, rho))
    residual = (hermitianize(rho - sigma_tilde) / value if value > 1e-9
                else None)
    return MeasureReport(kind=kind, value=value, gap=gap, witness=witness,
                         free_state=hermitianize(free), residual_state=residual)


def _weight(rho, rep, kind, method, encodings, options, trace=None):
    assert_density_matrix(rho)
    if rep is not None and rep.dim != rho.shape[0]:
        raise ValueError("state and representation dimensions differ")
    if encodings not in ("primal", "dual", "both"):
        raise ValueError(f"unknown encodings choice {encodings!r}")
    if method not in ("auto", "sdp"):
        raise ValueError(f"unknown method {method!r}")

    if method == "auto":
        if _free_distance(rho, rep) <= EXACT_FREE:
            return MeasureReport(kind=kind, value=0.0, gap=0.0,
                                 witness=np.zeros_like(rho),
                                 free_state=_projection(rep, rho))
        if float(hs_norm_sq(rho)) > PURITY_ONE:
            # A resourceful pure state admits no mixture with a free part,
            # so its weight is exactly one and rho itself is the residual.
            return MeasureReport(kind=kind, value=1.0, gap=0.0,
                                 free_state=_projection(rep, rho),
                                 residual_state=rho.copy())
    return _weight_from_sdp(rho, rep, kind, encodings, options, trace=trace)


def coherence_weight(rho: np.ndarray, method: str = "auto",
                     encodings: str = "both",
                     options: SolverOptions | None = None,
                     trace: list | None = None) -> MeasureReport:
    """Smallest s admitting rho = (1-s) * incoherent + s * anything."""
    return _weight(rho, None, "coherence-weight", method, encodings, options,
                   trace=trace)


def asymmetry_weight(rho: np.ndarray, rep: UnitaryRep, method: str = "auto",
                     encodings: str = "both",
                     options: SolverOptions | None = None,
                     trace: list | None = None) -> MeasureReport:
    """Smallest s admitting rho = (1-s) * symmetric + s * anything."""
    return _weight(rho, rep, "asymmetry-weight", method, encodings, options,
                   trace=trace)


def _robustness(rho, rep, kind, options, trace=None):
    assert_density_matrix(rho)
    if rep is not None and rep.dim != rho.shape[0]:
        raise ValueError("state and representation dimensions differ")
    if _free_distance(rho, rep) <= EXACT_FREE:
        return MeasureReport(kind=kind, value=0.0, gap=0.0,
                             free_state=_projection(rep, rho))
    sol = _check_optimal(solve(encode_robustness(rho, rep), options=options,
                               trace=trace))
    value = max(sol.primal_value, 0.0)
    if value <= FREE_SNAP:
        value = 0.0
    mapped = _projection(rep, sol.primal_matrix)
    free = hermitianize(mapped / (1.0 + value))
    residual = (hermitianize(mapped - rho) / value if value > 1e-9 else None)
    return MeasureReport(kind=kind, value=value, gap=sol.gap,
                         free_state=free, residual_state=residual)


def robustness_coherence(rho: np.ndarray,
                         options: SolverOptions | None = None,
                         trace: list | None = None) -> MeasureReport:
    """Least s with (rho + s*tau)/(1+s) incoherent for some state tau."""
    return _robustness(rho, None, "robustness-coherence", options, trace=trace)


def robustness_asymmetry(rho: np.ndarray, rep: UnitaryRep,
                         options: SolverOptions | None = None,
                         trace: list | None = None) -> MeasureReport:
    """Least s with (rho + s*tau)/(1+s) symmetric for some state tau."""
    return _robustness(rho, rep, "robustness-asymmetry", options, trace=trace)


def l1_coherence(rho: np.ndarray) -> float:
    """Sum of the absolute values of all off-diagonal entries."""
    assert_density_matrix(rho)
    return float(np.abs(rho).sum() - np.abs(np.diagonal(rho)).sum())


def rel_entropy_coherence(rho: np.ndarray) -> float:
    """Entropy gained by erasing the off-diagonal part, in nats."""
    assert_density_matrix(rho)
    value = (von_neumann_entropy(_projection(None, rho))
             - von_neumann_entropy(rho))
    return 0.0 if abs(value) < 1e-12 else value


def rel_entropy_asymmetry(rho: np.ndarray, rep: UnitaryRep) -> float:
    """Entropy gained under the group twirl, in nats."""
    assert_density_matrix(rho)
    value = (von_neumann_entropy(_projection(rep, rho))
             - von_neumann_entropy(rho))
    return 0.0 if abs(value) < 1e-12 else value


def hs_lower_bound(rho: np.ndarray,
                   free: UnitaryRep | None = None) -> tuple[float, float]:
    """Hilbert-Schmidt weight bounds (sharp, loose).

    The loose bound is ||rho - P(rho)||_2^2 for the free projection P; the
    sharp one divides by the operator norm of rho, so sharp >= loose and
    both sit below the corresponding weight.
    """
    assert_density_matrix(rho)
    loose = float(hs_norm_sq(rho - _projection(free, rho)))
    return loose / op_norm(rho), loose


def witness_evaluate(rho: np.ndarray, w: np.ndarray,
                     free: UnitaryRep | None = None) -> tuple[float, bool]:
    """Value Tr[rho W] and whether W is a feasible weight witness.

    Feasibility requires the free projection of W at most 0 and W at most
    the identity, each up to a 1e-8 spectral slack.  A feasible witness with
    positive value certifies that rho is resourceful.
    """
    assert_density_matrix(rho)
    assert_hermitian(w, tol=1e-9)
    if w.shape != rho.shape:
        raise ValueError("state and witness dimensions differ")
    value = float(np.trace(rho @ w).real)
    feasible = (op_max_eig(_projection(free, w)) <= WITNESS_FEAS_TOL
                and op_max_eig(w) <= 1.0 + WITNESS_FEAS_TOL)
    return value, feasible


def op_max_eig(h: np.ndarray) -> float:
    """Largest eigenvalue of a Hermitian matrix."""
    return float(eig_hermitian(h).values[-1])


def qubit_cw_oracle(rho: np.ndarray) -> float:
    """Coherence weight of a qubit by bisection, without the SDP.

    Tests rho - (1-s) diag(p, 1-p) >= 0 over a 1e-5 grid in p and bisects
    the smallest feasible s to 1e-6, so the result is trustworthy to about
    1e-5 and independent of the solver stack.
    """
    assert_density_matrix(rho)
    if rho.shape[0] != 2:
        raise ValueError("the grid oracle only handles qubits")
    p = np.arange(0.0, 1.0 + 1e-5, 1e-5)
    off = abs(rho[0, 1]) ** 2
    r00, r11 = rho[0, 0].real, rho[1, 1].real

    def feasible(s: float) -> bool:
        q = 1.0 - s
        m11 = r00 - q * p
        m22 = r11 - q * (1.0 - p)
        ok = (m11 >= 0.0) & (m22 >= 0.0) & (m11 * m22 - off >= 0.0)
        return bool(ok.any())

    if feasible(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _swap_block_form(rho: np.ndarray):
    """Extract (r0, r3, b1, b2, c) for the swap-oracle state family.

    The family consists of two-qubit states supported on the diagonal at
    |00> and |11> plus a real-coupled 2x2 block on span{|01>, |10>}.  Phase
    averaging with diag(1, e^{i phi}, e^{i phi}, e^{2i phi}) and complex
    conjugation leave these states fixed while preserving the swap-symmetric
    cone and the PSD order, so the optimization over symmetric states below
    may be restricted to the matching block form with equal middle diagonal
    and real coupling.
    """
    assert_density_matrix(rho)
    if rho.shape[0] != 4:
        raise ValueError("the swap oracle expects a two-qubit state")
    pattern = np.zeros((4, 4), dtype=bool)
    for i, j in ((0, 0), (3, 3), (1, 1), (2, 2), (1, 2), (2, 1)):
        pattern[i, j] = True
    if np.abs(rho[~pattern]).max() > 1e-12 or abs(rho[1, 2].imag) > 1e-12:
        raise ValueError("state outside the swap-oracle block family")
    return (rho[0, 0].real, rho[3, 3].real, rho[1, 1].real, rho[2, 2].real,
            rho[1, 2].real)


_ORACLE_M_GRID = np.arange(0.0, 0.5 + 1e-5, 1e-5)


def swap_aw_oracle(rho: np.ndarray) -> float:
    """Swap-asymmetry weight of a block-family two-qubit state by bisection.

    Symmetric candidates reduce to sigma = diag(u, M, v) with M = [[m, t],
    [t, m]], |t| <= m, u + v + 2m = 1; for each s and m the best real t is
    closed-form, leaving a 1D grid inside a bisection on s.
    """
    r0, r3, b1, b2, c = _swap_block_form(rho)
    m = _ORACLE_M_GRID

    def feasible(s: float) -> bool:
        q = 1.0 - s
        if q <= 1e-15:
            return True
        ok = m <= min(b1, b2) / q
        ok &= 1.0 - 2.0 * m <= (r0 + r3) / q + 1e-15
        t = np.clip(c / q, -m, m)
        ok &= (b1 - q * m) * (b2 - q * m) - (c - q * t) ** 2 >= -1e-15
        return bool(ok.any())

    if feasible(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def swap_ar_oracle(rho: np.ndarray) -> float:
    """Swap-asymmetry robustness of a block-family state by bisection.

    Same reduction as the weight oracle, but feasibility asks for a
    symmetric delta with (1+s) delta >= rho.
    """
    r0, r3, b1, b2, c = _swap_block_form(rho)
    m = _ORACLE_M_GRID

    def feasible(s: float) -> bool:
        q = 1.0 + s
        ok = q * m >= np.maximum(b1, b2)
        ok &= 1.0 - 2.0 * m >= (r0 + r3) / q - 1e-15
        t = np.clip(c / q, -m, m)
        ok &= (q * m - b1) * (q * m - b2) - (q * t - c) ** 2 >= -1e-15
        return bool(ok.any())

    if feasible(0.0):
        return 0.0
    hi = 1.0
    while not feasible(hi):
        hi *= 2.0
        if hi > 64.0:
            raise RuntimeError("robustness oracle failed to bracket")
    lo = 0.0
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def negating_phases(rho: np.ndarray) -> np.ndarray | None:
    """Phases of an incoherent unitary sending every off-diagonal entry of
    rho to minus its absolute value, or None when the heuristic fails.

    Phases propagate over a spanning forest of the graph of nonzero
    off-diagonals and every edge is then re-verified, so a None answer means
    "no consistent assignment found", not a proof that none exists.  When
    phases exist, the l1 coherence is also a lower bound on the weight.
    """
    assert_density_matrix(rho)
    d = rho.shape[0]
    phases = np.zeros(d)
    seen = np.zeros(d, dtype=bool)
    support = np.abs(rho) > 1e-12
    np.fill_diagonal(support, False)
    for root in range(d):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            j = queue.pop()
            for k in np.flatnonzero(support[j]):
                if seen[k]:
                    continue
                phases[k] = phases[j] - np.pi + np.angle(rho[j, k])
                seen[k] = True
                queue.append(k)
    rotated = np.exp(1j * phases)[:, None] * rho * np.exp(-1j * phases)[None, :]
    target = -np.abs(rho)
    mismatch = np.abs(rotated - target)[support]
    if mismatch.size and mismatch.max() > 1e-8 * max(1.0, float(np.abs(rho).max())):
        return None
    return phases
