"""Primal-dual path-following interior-point core.

Solves the standard conic pair over products of complex Hermitian PSD blocks

    (P) min <C, X>   s.t.  <A_k, X> = b_k,  X >= 0
    (D) max b.y      s.t.  sum_k y_k A_k + S = C,  S >= 0

with Nesterov-Todd scaling and a Mehrotra predictor-corrector step. Matrices
live in an isometric real coordinate system ("svec"): diagonal entries, then
sqrt(2) * real and sqrt(2) * imag upper-triangle parts, so <A, B> = a . b.

Infeasible start; step length is a 0.98 fraction of the distance to the cone
boundary; at most 200 iterations. The solver has no shared mutable state, so
distinct problems may be solved concurrently.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..linalg import hermitianize


@dataclass(frozen=True)
class SolverOptions:
    gap_tol: float = 1e-9
    feas_tol: float = 1e-10
    accept_gap: float = 1e-7
    accept_feas: float = 1e-8
    max_iter: int = 200
    step_frac: float = 0.98


class SvecSpace:
    """Real coordinates for complex Hermitian matrices of one block size."""

    def __init__(self, n: int):
        self.n = n
        self.dim = n * n
        self.iu, self.ju = np.triu_indices(n, k=1)
        self.ntri = len(self.iu)
        # columns are the vectorized orthonormal Hermitian basis elements
        t = np.zeros((n * n, n * n), dtype=complex)
        for k in range(n):
            t[k * n + k, k] = 1.0
        inv_sqrt2 = 1.0 / np.sqrt(2.0)
        for p, (i, j) in enumerate(zip(self.iu, self.ju)):
            t[i * n + j, n + p] = inv_sqrt2
            t[j * n + i, n + p] = inv_sqrt2
            t[i * n + j, n + self.ntri + p] = 1j * inv_sqrt2
            t[j * n + i, n + self.ntri + p] = -1j * inv_sqrt2
        self.basis = t

    def svec(self, h: np.ndarray) -> np.ndarray:
        off = h[self.iu, self.ju]
        return np.concatenate([
            np.diagonal(h).real,
            np.sqrt(2.0) * off.real,
            np.sqrt(2.0) * off.imag,
        ])

    def unsvec(self, v: np.ndarray) -> np.ndarray:
        h = np.zeros((self.n, self.n), dtype=complex)
        np.fill_diagonal(h, v[: self.n])
        off = (v[self.n: self.n + self.ntri] + 1j * v[self.n + self.ntri:]) / np.sqrt(2.0)
        h[self.iu, self.ju] = off
        h[self.ju, self.iu] = off.conj()
        return h

    def congruence_matrix(self, w: np.ndarray) -> np.ndarray:
        """svec representation of H -> W H W for Hermitian W."""
        kw = np.kron(w, w.conj())
        return (self.basis.conj().T @ kw @ self.basis).real

    def conjugation_matrix(self, u: np.ndarray) -> np.ndarray:
        """svec representation of H -> U H U^dag for unitary U."""
        ku = np.kron(u, u.conj())
        return (self.basis.conj().T @ ku @ self.basis).real


@lru_cache(maxsize=None)
def svec_space(n: int) -> SvecSpace:
    return SvecSpace(n)


@dataclass
class StandardSdp:
    """Equality-form problem data over Hermitian blocks."""

    sizes: tuple
    c: np.ndarray
    a_mat: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.spaces = [svec_space(n) for n in self.sizes]
        offs = np.cumsum([0] + [n * n for n in self.sizes])
        self.slices = [slice(offs[i], offs[i + 1]) for i in range(len(self.sizes))]
        self.order = int(sum(self.sizes))


@dataclass
class RawSolution:
    status: str
    x_blocks: list
    s_blocks: list
    y: np.ndarray
    primal_objective: float
    dual_objective: float
    gap: float
    primal_residual: float
    dual_residual: float
    iterations: int
    trace: list = field(default_factory=list)


def _chol(a: np.ndarray):
    try:
        return np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        return None


def _step_length(chol_l: np.ndarray, delta: np.ndarray, frac: float) -> float:
    """Largest alpha <= 1 with X + alpha * Delta staying PSD (times frac)."""
    b = np.linalg.solve(chol_l, delta)
    m = np.linalg.solve(chol_l, b.conj().T)
    lam = np.linalg.eigvalsh(hermitianize(m))[0]
    if lam >= -1e-14:
        return 1.0
    return min(1.0, -frac / lam)


def _solve_linear(m: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    try:
        sol = np.linalg.solve(m, rhs)
        resid = rhs - m @ sol
        if np.linalg.norm(resid) > 1e-13 * max(1.0, np.linalg.norm(rhs)):
            sol += np.linalg.solve(m, resid)
        return sol
    except np.linalg.LinAlgError:
        return np.linalg.lstsq(m, rhs, rcond=None)[0]


def solve_standard(sdp: StandardSdp, options: SolverOptions | None = None,
                   trace: list | None = None) -> RawSolution:
    """Run the interior-point iteration on an equality-form problem."""
    opt = options or SolverOptions()
    a_mat, b, c = sdp.a_mat, sdp.b, sdp.c
    spaces, slices = sdp.spaces, sdp.slices
    order = sdp.order
    total = a_mat.shape[1]

    # Dense Hermitian blocks get the full scaled-space treatment; 1x1 blocks
    # (slack scalars) are batched into plain arrays where every formula is
    # elementwise, which keeps the per-iteration call count flat in d.
    mat_ids = [i for i, sp in enumerate(spaces) if sp.n > 1]
    sc_ids = [i for i, sp in enumerate(spaces) if sp.n == 1]
    m_spaces = [spaces[i] for i in mat_ids]
    m_slices = [slices[i] for i in mat_ids]
    sc_cols = np.array([slices[i].start for i in sc_ids], dtype=int)
    a_cols = [a_mat[:, sl] for sl in m_slices]
    a_sc = a_mat[:, sc_cols]

    # Residual tolerances are relative to 1 + data norm, the usual convention,
    # so problems stated at unit scale keep their nominal thresholds.
    norm_b = 1.0 + float(np.linalg.norm(b))
    norm_c = 1.0 + float(np.linalg.norm(c))
    eta_p = max(1.0, float(np.linalg.norm(b, np.inf)))
    eta_d = max(1.0, float(np.abs(c).max(initial=0.0)))

    x_mats = [eta_p * np.eye(sp.n, dtype=complex) for sp in m_spaces]
    s_mats = [eta_d * np.eye(sp.n, dtype=complex) for sp in m_spaces]
    xs = np.full(len(sc_ids), eta_p)
    ss = np.full(len(sc_ids), eta_d)
    y = np.zeros(len(b))

    def assemble(mats, scal):
        v = np.empty(total)
        for sp, sl, mb in zip(m_spaces, m_slices, mats):
            v[sl] = sp.svec(mb)
        v[sc_cols] = scal
        return v

    x_vec = assemble(x_mats, xs)
    s_vec = assemble(s_mats, ss)

    status = "max_iterations"
    it = 0
    pobj = dobj = gap = np.inf
    pres = dres = np.inf
    stall = 0
    best = None
    best_merit = np.inf
    best_boxed = None
    best_boxed_merit = np.inf

    for it in range(opt.max_iter + 1):
        rp = b - a_mat @ x_vec
        rd_vec = c - a_mat.T @ y - s_vec
        pobj = float(c @ x_vec)
        dobj = float(b @ y)
        gap = abs(pobj - dobj)
        pres = float(np.linalg.norm(rp))
        dres = float(np.linalg.norm(rd_vec))
        mu = float(x_vec @ s_vec) / order
        if trace is not None:
            trace.append({"iteration": it, "gap": gap, "primal_residual": pres,
                          "dual_residual": dres, "mu": mu})
        # Remember the most balanced iterate seen; late steps near the optimal
        # face can degrade, and the returned solution should not pay for that.
        merit = max(gap / (1.0 + abs(pobj) + abs(dobj)), pres / norm_b, dres / norm_c)
        if merit < best_merit:
            best_merit = merit
            best = (x_mats, s_mats, xs, ss, y, pobj, dobj, gap, pres, dres)
        if (gap <= opt.accept_gap and pres <= opt.accept_feas * norm_b
                and dres <= opt.accept_feas * norm_c and merit < best_boxed_merit):
            best_boxed_merit = merit
            best_boxed = (x_mats, s_mats, xs, ss, y, pobj, dobj, gap, pres, dres)
        if gap <= opt.gap_tol and pres <= opt.feas_tol * norm_b and dres <= opt.feas_tol * norm_c:
            status = "converged"
            break
        if it == opt.max_iter:
            break
        if np.linalg.norm(y, np.inf) > 1e12:
            status = "diverged"
            break

        # Nesterov-Todd scaling per block: W S W = X with W = G G^dag, and in
        # scaled coordinates both variables equal diag(sig) from the SVD below.
        ls, rs, gs, ginvs, ws, sinvs, sigs = [], [], [], [], [], [], []
        failed = not (np.all(xs > 0.0) and np.all(ss > 0.0))
        if not failed:
            for xb, sb in zip(x_mats, s_mats):
                l = _chol(xb)
                r = _chol(sb)
                if l is None or r is None:
                    failed = True
                    break
                u, sig, vh = np.linalg.svd(r.conj().T @ l)
                gv = l @ vh.conj().T
                g = gv / np.sqrt(sig)
                rinv = np.linalg.inv(r)
                linv = np.linalg.inv(l)
                ginv = (np.sqrt(sig)[:, None] * vh) @ linv
                ls.append(l)
                rs.append(r)
                gs.append(g)
                ginvs.append(ginv)
                ws.append(g @ g.conj().T)
                sinvs.append(rinv.conj().T @ rinv)
                sigs.append(sig)
        if failed:
            status = "numerical"
            break
        w2 = xs / ss

        m_schur = (a_sc * w2) @ a_sc.T
        for ab, sp, w in zip(a_cols, m_spaces, ws):
            m_schur += ab @ sp.congruence_matrix(w) @ ab.T
        m_schur = 0.5 * (m_schur + m_schur.T)

        rd_mats = [sp.unsvec(rd_vec[sl]) for sp, sl in zip(m_spaces, m_slices)]
        rd_s = rd_vec[sc_cols]

        def direction(rc_mats, rc_s):
            q_vec = assemble([rc - w @ rdb @ w
                              for rc, w, rdb in zip(rc_mats, ws, rd_mats)],
                             rc_s - w2 * rd_s)
            dy = _solve_linear(m_schur, rp - a_mat @ q_vec)
            ds_vec = rd_vec - a_mat.T @ dy
            ds_mats = [sp.unsvec(ds_vec[sl]) for sp, sl in zip(m_spaces, m_slices)]
            ds_s = ds_vec[sc_cols]
            dx_mats = [hermitianize(rc - w @ dsb @ w)
                       for rc, w, dsb in zip(rc_mats, ws, ds_mats)]
            dx_s = rc_s - w2 * ds_s
            return dy, dx_mats, ds_mats, dx_s, ds_s, assemble(dx_mats, dx_s), ds_vec

        def scalar_step(v, dv):
            neg = dv < 0.0
            if not neg.any():
                return 1.0
            return min(1.0, float(np.min(-opt.step_frac * v[neg] / dv[neg])))

        def lengths(dx_mats, ds_mats, dx_s, ds_s):
            ap = scalar_step(xs, dx_s)
            ad = scalar_step(ss, ds_s)
            for l, r, dxb, dsb in zip(ls, rs, dx_mats, ds_mats):
                ap = min(ap, _step_length(l, dxb, opt.step_frac))
                ad = min(ad, _step_length(r, dsb, opt.step_frac))
            return ap, ad

        # predictor (affine direction, sigma = 0)
        aff = direction([-xb for xb in x_mats], -xs)
        dy_a, dxm_a, dsm_a, dxs_a, dss_a, dxv_a, dsv_a = aff
        ap_a, ad_a = lengths(dxm_a, dsm_a, dxs_a, dss_a)
        mu_aff = float((x_vec + ap_a * dxv_a) @ (s_vec + ad_a * dsv_a)) / order
        sigma = min(0.999, max(1e-8, (max(mu_aff, 0.0) / mu) ** 3))

        # corrector with the second-order term, solved per block in scaled
        # coordinates where the Lyapunov operator is diagonal; for scalars the
        # whole expression collapses to (sigma mu - dx ds) / s - x
        rc_mats = []
        for xb, sinv, g, ginv, sig, dxb, dsb in zip(
                x_mats, sinvs, gs, ginvs, sigs, dxm_a, dsm_a):
            dxh = ginv @ dxb @ ginv.conj().T
            dsh = g.conj().T @ dsb @ g
            f = 0.5 * (dxh @ dsh + dsh @ dxh)
            lyap = 2.0 * f / np.add.outer(sig, sig)
            rc_mats.append(sigma * mu * sinv - xb - g @ lyap @ g.conj().T)
        rc_s = (sigma * mu - dxs_a * dss_a) / ss - xs
        cor = direction(rc_mats, rc_s)
        dy_c, dxm_c, dsm_c, dxs_c, dss_c, dxv_c, dsv_c = cor
        ap, ad = lengths(dxm_c, dsm_c, dxs_c, dss_c)

        if min(ap, ad) < 1e-7:
            stall += 1
            if stall >= 5:
                status = "stalled"
                break
        else:
            stall = 0

        x_mats = [hermitianize(xb + ap * dxb) for xb, dxb in zip(x_mats, dxm_c)]
        s_mats = [hermitianize(sb + ad * dsb) for sb, dsb in zip(s_mats, dsm_c)]
        xs = xs + ap * dxs_c
        ss = ss + ad * dss_c
        y = y + ad * dy_c
        x_vec = assemble(x_mats, xs)
        s_vec = assemble(s_mats, ss)

    # Prefer an iterate that met the acceptance box outright; otherwise fall
    # back to the most balanced one and let the box decide.
    if best_boxed is not None:
        x_mats, s_mats, xs, ss, y, pobj, dobj, gap, pres, dres = best_boxed
    elif best is not None:
        x_mats, s_mats, xs, ss, y, pobj, dobj, gap, pres, dres = best

    accepted = (gap <= opt.accept_gap and pres <= opt.accept_feas * norm_b
                and dres <= opt.accept_feas * norm_c)
    if accepted:
        status = "optimal"
    elif status in ("converged",):
        status = "optimal"
    elif status == "diverged":
        status = "infeasible"
    elif status not in ("numerical", "stalled", "infeasible"):
        status = "max_iterations"

    x_blocks, s_blocks = [], []
    mi = si = 0
    for sp in spaces:
        if sp.n > 1:
            x_blocks.append(x_mats[mi])
            s_blocks.append(s_mats[mi])
            mi += 1
        else:
            x_blocks.append(np.array([[xs[si]]], dtype=complex))
            s_blocks.append(np.array([[ss[si]]], dtype=complex))
            si += 1

    return RawSolution(
        status=status,
        x_blocks=x_blocks,
        s_blocks=s_blocks,
        y=y,
        primal_objective=pobj,
        dual_objective=dobj,
        gap=gap,
        primal_residual=pres,
        dual_residual=dres,
        iterations=it,
        trace=trace if trace is not None else [],
    )
