"""Inequality-form SDP template, resource encodings, and the solve() entry point.

Every problem here is an instance of

    maximize  Tr[B X]   subject to  sign * Map(X) <= D,  X >= 0,

with Map one of dephasing, a finite-group twirl, or the identity. A slack
block converts the inequality to equality form for the interior-point core.
Encoders attach an affine interpretation (offset + scale * optimum) so the
reported optimum is the resource quantity itself:

  * weight, primal form:   max Tr[sig]  s.t. Map(sig) <= rho          -> 1 - weight
  * weight, witness form:  max Tr[rho W] s.t. Map(W) <= 0, W <= I     -> weight
    (solved over X = I - W >= 0, so the constraint reads Map(X) >= I)
  * robustness:            min Tr[sig]  s.t. Map-invariant sig >= rho -> value + 1

A strictly feasible dual point exists for every shipped encoding (X = a * I
with a large enough), so strong duality holds and the gap is a certificate.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass, field

import numpy as np

from ..linalg import assert_hermitian
from ..states import UnitaryRep, dephase, group_average
from .ipm import SolverOptions, StandardSdp, solve_standard, svec_space

_REP_PROJECTIONS: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


class SolverError(RuntimeError):
    """A computation required an optimal solve and got something else."""

    def __init__(self, status: str, label: str = ""):
        self.status = status
        self.label = label
        where = f" on {label}" if label else ""
        super().__init__(f"solver finished with status {status!r}{where}")


def map_apply(kind: str, rep: UnitaryRep | None, h: np.ndarray) -> np.ndarray:
    if kind == "dephasing":
        return dephase(h)
    if kind == "group":
        return group_average(h, rep)
    if kind == "identity":
        return np.asarray(h, dtype=complex)
    raise ValueError(f"unknown map kind {kind!r}")


def _projection_matrix(kind: str, rep: UnitaryRep | None, dim: int) -> np.ndarray:
    """svec-coordinate matrix of the free projection; must come out symmetric
    (the twirl is self-adjoint for any list closed under inverses, which we
    verify numerically rather than assume)."""
    sp = svec_space(dim)
    if kind == "dephasing":
        return np.diag(np.concatenate([np.ones(dim), np.zeros(sp.dim - dim)]))
    if kind == "identity":
        return np.eye(sp.dim)
    if kind == "group":
        if rep is None or rep.dim != dim:
            raise ValueError("group map needs a rep matching the matrix dimension")
        cached = _REP_PROJECTIONS.get(rep)
        if cached is None:
            cached = sum(sp.conjugation_matrix(u) for u in rep.elements) / len(rep.elements)
            if np.abs(cached - cached.T).max() > 1e-10:
                raise ValueError("group average is not self-adjoint; rep is not a group")
            _REP_PROJECTIONS[rep] = cached
        return cached
    raise ValueError(f"unknown map kind {kind!r}")


@dataclass(frozen=True, eq=False)
class SdpProblem:
    """One inequality-form instance plus the interpretation of its optimum."""

    objective: np.ndarray
    map_kind: str
    bound: np.ndarray
    rep: UnitaryRep | None = None
    map_sign: int = 1
    value_offset: float = 0.0
    value_scale: float = 1.0
    label: str = ""

    @property
    def dim(self) -> int:
        return self.objective.shape[0]

    def map(self, h: np.ndarray) -> np.ndarray:
        return map_apply(self.map_kind, self.rep, h)


@dataclass
class SdpSolution:
    """Certified solve result; values carry the problem's interpretation."""

    problem: SdpProblem
    status: str
    primal_value: float
    dual_value: float
    gap: float
    iterations: int
    primal_matrix: np.ndarray | None
    dual_matrix: np.ndarray | None
    primal_residual: float = np.nan
    dual_residual: float = np.nan
    trace: list = field(default_factory=list)


def _compile(problem: SdpProblem):
    d = problem.dim
    sp = svec_space(d)
    if problem.bound.shape != (d, d):
        raise ValueError("objective and bound dimensions differ")
    proj = _projection_matrix(problem.map_kind, problem.rep, d)
    sign = float(problem.map_sign)
    off_mass = np.abs(problem.bound - np.diag(np.diag(problem.bound))).max()
    diag_special = problem.map_kind == "dephasing" and off_mass <= 1e-13

    c_x = sp.svec(-np.asarray(problem.objective, dtype=complex))
    if diag_special:
        # off-diagonal rows are trivial here, keep the d diagonal constraints
        a_mat = np.zeros((d, sp.dim + d))
        a_mat[:, :sp.dim] = sign * proj[:d, :]
        a_mat[np.arange(d), sp.dim + np.arange(d)] = 1.0
        b = np.diag(problem.bound).real.astype(float)
        sizes = (d,) + (1,) * d
        c = np.concatenate([c_x, np.zeros(d)])
    else:
        a_mat = np.hstack([sign * proj, np.eye(sp.dim)])
        b = sp.svec(np.asarray(problem.bound, dtype=complex))
        sizes = (d, d)
        c = np.concatenate([c_x, np.zeros(sp.dim)])
    return StandardSdp(sizes=sizes, c=c, a_mat=a_mat, b=b), sp, diag_special


def solve(problem: SdpProblem, options: SolverOptions | None = None,
          trace: list | None = None) -> SdpSolution:
    """Solve an encoded problem and certify the result.

    Status is "optimal" only when the duality gap is <= 1e-7 and both
    feasibility residuals are <= 1e-8; "infeasible" flags structurally
    impossible instances, "max-iter" everything else.
    """
    d = problem.dim
    if problem.map_sign > 0:
        if np.linalg.eigvalsh(assert_hermitian(problem.bound, 1e-10))[0] < -1e-9:
            return SdpSolution(problem=problem, status="infeasible",
                               primal_value=np.nan, dual_value=np.nan, gap=np.nan,
                               iterations=0, primal_matrix=None, dual_matrix=None)
    sdp, sp, diag_special = _compile(problem)
    raw = solve_standard(sdp, options=options, trace=trace)

    x_star = raw.x_blocks[0]
    if diag_special:
        y_star = np.diag(raw.y).astype(complex)
    else:
        y_star = sp.unsvec(raw.y)
    off, sc = problem.value_offset, problem.value_scale
    primal = off + sc * (-raw.primal_objective)
    dual = off + sc * (-raw.dual_objective)
    status = {"optimal": "optimal", "infeasible": "infeasible"}.get(raw.status, "max-iter")
    return SdpSolution(
        problem=problem,
        status=status,
        primal_value=primal,
        dual_value=dual,
        gap=abs(primal - dual),
        iterations=raw.iterations,
        primal_matrix=x_star,
        dual_matrix=y_star,
        primal_residual=raw.primal_residual,
        dual_residual=raw.dual_residual,
        trace=raw.trace,
    )


# ---------------------------------------------------------------------------
# encodings
# ---------------------------------------------------------------------------

def _weight_primal(rho: np.ndarray, kind: str, rep: UnitaryRep | None, label: str) -> SdpProblem:
    rho = assert_hermitian(rho)
    d = rho.shape[0]
    return SdpProblem(objective=np.eye(d, dtype=complex), map_kind=kind, rep=rep,
                      map_sign=1, bound=rho, value_offset=0.0, value_scale=1.0,
                      label=label)


def _weight_dual(rho: np.ndarray, kind: str, rep: UnitaryRep | None, label: str) -> SdpProblem:
    rho = assert_hermitian(rho)
    d = rho.shape[0]
    return SdpProblem(objective=-rho, map_kind=kind, rep=rep, map_sign=-1,
                      bound=-np.eye(d, dtype=complex), value_offset=1.0,
                      value_scale=1.0, label=label)


def encode_coherence_weight(rho: np.ndarray) -> SdpProblem:
    """Primal form; the optimum equals 1 - C_w(rho)."""
    return _weight_primal(rho, "dephasing", None, "coherence_weight_primal")


def encode_coherence_weight_dual(rho: np.ndarray) -> SdpProblem:
    """Witness form over X = I - W; the reported optimum equals C_w(rho)."""
    return _weight_dual(rho, "dephasing", None, "coherence_weight_dual")


def encode_asymmetry_weight(rho: np.ndarray, rep: UnitaryRep) -> SdpProblem:
    """Primal form under a group twirl; the optimum equals 1 - A_w(rho)."""
    return _weight_primal(rho, "group", rep, "asymmetry_weight_primal")


def encode_asymmetry_weight_dual(rho: np.ndarray, rep: UnitaryRep) -> SdpProblem:
    """Witness form under a group twirl; the reported optimum equals A_w(rho)."""
    return _weight_dual(rho, "group", rep, "asymmetry_weight_dual")


def encode_robustness(rho: np.ndarray, rep: UnitaryRep | None = None) -> SdpProblem:
    """Robustness form min Tr[sig] - 1 over invariant sig >= rho.

    The variable is a PSD matrix whose projection plays sig, so the reported
    optimum equals the robustness (dephasing when rep is None).
    """
    rho = assert_hermitian(rho)
    d = rho.shape[0]
    kind = "dephasing" if rep is None else "group"
    return SdpProblem(objective=-np.eye(d, dtype=complex), map_kind=kind, rep=rep,
                      map_sign=-1, bound=-rho, value_offset=-1.0, value_scale=-1.0,
                      label="robustness_" + ("coherence" if rep is None else "asymmetry"))
