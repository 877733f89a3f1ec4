"""Experiment drivers: random-state sweeps, violation searches, closed-form
regressions, and the sampled property suite, all emitting versioned CSV.

Every experiment is deterministic given its (config, seed): each sample pulls
an independent counter-based stream derived from (seed, index), so results do
not depend on batching or evaluation order.  Exit-status conventions live in
the CLI; here every driver returns an ExperimentResult with a `passed` flag,
structured failures (including the offending state), and summary statistics
that downstream checks can assert on.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import hs_norm_sq, matrix_to_json, partial_trace
from .measures import (MeasureReport, WITNESS_FEAS_TOL, asymmetry_weight,
                       coherence_weight, hs_lower_bound, l1_coherence,
                       negating_phases, op_max_eig, rel_entropy_asymmetry,
                       rel_entropy_coherence, robustness_asymmetry,
                       robustness_coherence)
from .sdp import map_apply
from .states import (derived_stream, generalized_x, gisin, group_mixture_kraus,
                     haar_random_mixed, haar_random_pure,
                     random_incoherent_kraus, random_x_spec, rep_swap, werner)

log = logging.getLogger("resweight")

DEFAULT_TOL = 1e-6
CSV_FLOAT = "%.12g"

EXPERIMENT_NAMES = ("scatter", "violation", "closed-forms", "properties")


@dataclass
class ExperimentConfig:
    """Parsed experiment request; `dim` doubles as the environment dimension
    for the violation search (1 means pure inputs)."""

    name: str
    dim: int | None = None
    samples: int = 1000
    seed: int = 0
    out: str | None = None
    tol: float = DEFAULT_TOL

    def resolved_dim(self) -> int:
        if self.dim is not None:
            return self.dim
        return 4 if self.name == "violation" else 3

    def validate(self) -> None:
        if self.name not in EXPERIMENT_NAMES:
            raise ValueError(f"unknown experiment {self.name!r}; "
                             f"choose from {', '.join(EXPERIMENT_NAMES)}")
        if self.samples < 1:
            raise ValueError("sample count must be at least 1")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        if self.name == "scatter" and not 2 <= self.resolved_dim() <= 8:
            raise ValueError("scatter supports dimensions 2 through 8")
        if self.name == "violation" and self.resolved_dim() < 1:
            raise ValueError("violation needs an environment dimension >= 1")


@dataclass
class ExperimentResult:
    name: str
    passed: bool
    summary: dict
    rows: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    entries: list = field(default_factory=list)
    csv_path: str | None = None

    def table(self) -> str:
        """Human-readable pass/fail report."""
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for key in sorted(self.summary):
            lines.append(f"  {key} = {self.summary[key]}")
        for fail in self.failures[:10]:
            lines.append("  failure: " + ", ".join(
                f"{k}={v}" for k, v in fail.items() if k != "state"))
        if len(self.failures) > 10:
            lines.append(f"  ... {len(self.failures) - 10} more failures")
        return "\n".join(lines)


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return CSV_FLOAT % float(value)


def _write_csv(path: str, tag: str, columns: list, rows: list) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# resweight {tag} v1\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_cell(v) for v in row) + "\n")


def _witness_residual(rho: np.ndarray, report: MeasureReport,
                      rep=None) -> float:
    """How far a report's witness is from dual feasibility and value match."""
    w = report.witness
    if w is None:
        return 0.0
    projected = map_apply("dephasing", None, w) if rep is None else \
        map_apply("group", rep, w)
    return max(op_max_eig(projected), op_max_eig(w) - 1.0,
               abs(float(np.trace(rho @ w).real) - report.value))


def run_scatter(d: int, n: int, seed: int, out: str | None = None,
                tol: float = DEFAULT_TOL) -> ExperimentResult:
    """Weight, l1, robustness, relative-entropy, and HS-bound values for n
    induced-measure random states, with the full bound chain checked per row."""
    logd = math.log(d)
    rows, failures = [], []
    max_gap = max_wres = 0.0
    mins = {"cw_vs_cr": np.inf, "cw_vs_cl1": np.inf, "cw_vs_crel": np.inf,
            "cw_vs_hs": np.inf, "cr_vs_cl1": np.inf}
    for i in range(n):
        rho = haar_random_mixed(d, d, derived_stream(seed, i))
        cw_report = coherence_weight(rho, encodings="dual")
        cr_report = robustness_coherence(rho)
        cw, cr = cw_report.value, cr_report.value
        cl1 = l1_coherence(rho)
        crel = rel_entropy_coherence(rho)
        hs = hs_lower_bound(rho)[0]
        rows.append((i, cw, cl1, cr, crel, hs))
        max_gap = max(max_gap, cw_report.gap, cr_report.gap)
        max_wres = max(max_wres, _witness_residual(rho, cw_report))
        margins = {"cw_vs_cr": cw - cr / (d - 1), "cw_vs_cl1": cw - cl1 / (d - 1),
                   "cw_vs_crel": cw - crel / logd, "cw_vs_hs": cw - hs,
                   "cr_vs_cl1": cl1 - cr}
        for label, margin in margins.items():
            mins[label] = min(mins[label], margin)
            if margin < -tol:
                failures.append({"inequality": label, "sample": i,
                                 "margin": margin, "state": matrix_to_json(rho)})
        if (i + 1) % 1000 == 0:
            log.info("scatter d=%d: %d/%d states done", d, i + 1, n)
    summary = {"d": d, "n": n, "seed": seed, "violations": len(failures),
               "max_gap": max_gap, "max_witness_residual": max_wres}
    summary.update({f"min_margin_{k}": v for k, v in mins.items()})
    result = ExperimentResult("scatter", not failures, summary, rows, failures)
    if out:
        _write_csv(out, "scatter", ["sample", "cw", "cl1", "cr", "crel", "hsbound"], rows)
        result.csv_path = out
    return result


def run_violation_search(n: int, seed: int, out: str | None = None,
                         denv: int = 4) -> ExperimentResult:
    """Marginal-inequality deltas for two-qubit states traced from Haar pure
    states on a 4 x denv system (denv=1 gives pure two-qubit inputs).

    delta_cw = C_w(rho) + C_w(a)C_w(b) - C_w(a) - C_w(b) and
    delta_cr = C_R(rho) - C_R(a) - C_R(b); both can dip negative for mixed
    states but stay nonnegative on pure inputs.
    """
    rows = []
    max_gap = 0.0
    min_cw = min_cr = np.inf
    neg_cw = neg_cr = 0
    for i in range(n):
        rho = haar_random_mixed(4, denv, derived_stream(seed, i))
        ra = partial_trace(rho, (2, 2), keep=1)
        rb = partial_trace(rho, (2, 2), keep=2)
        rep_cw = coherence_weight(rho, encodings="dual")
        rep_cr = robustness_coherence(rho)
        cwa = coherence_weight(ra, encodings="dual")
        cwb = coherence_weight(rb, encodings="dual")
        cra = robustness_coherence(ra)
        crb = robustness_coherence(rb)
        delta_cw = rep_cw.value + cwa.value * cwb.value - cwa.value - cwb.value
        delta_cr = rep_cr.value - cra.value - crb.value
        rows.append((i, rep_cw.value, cwa.value, cwb.value, delta_cw,
                     rep_cr.value, cra.value, crb.value, delta_cr))
        max_gap = max(max_gap, rep_cw.gap, rep_cr.gap, cwa.gap, cwb.gap,
                      cra.gap, crb.gap)
        min_cw, min_cr = min(min_cw, delta_cw), min(min_cr, delta_cr)
        neg_cw += delta_cw < -1e-5
        neg_cr += delta_cr < -1e-5
        if (i + 1) % 1000 == 0:
            log.info("violation search: %d/%d states done", i + 1, n)
    summary = {"n": n, "seed": seed, "denv": denv,
               "negative_cw": int(neg_cw), "negative_cr": int(neg_cr),
               "min_delta_cw": float(min_cw), "min_delta_cr": float(min_cr),
               "max_gap": max_gap}
    columns = ["sample", "cw", "cw_a", "cw_b", "delta_cw",
               "cr", "cr_a", "cr_b", "delta_cr"]
    result = ExperimentResult("violation", True, summary, rows)
    if out:
        _write_csv(out, "violation", columns, rows)
        result.csv_path = out
    return result


WERNER_ALPHAS = (0.0, 0.25, 0.5, 0.75, 1.0)
GISIN_LAMBDAS = (0.2, 0.5, 0.8, 1.0)
GISIN_THETAS = (np.pi / 8, np.pi / 4, 3 * np.pi / 8)


def run_closed_forms(out: str | None = None,
                     tol: float = DEFAULT_TOL) -> ExperimentResult:
    """Werner and Gisin grids against their analytic values."""
    rows, failures = [], []
    max_gap = 0.0

    def check(family: str, params: str, measure: str, got, want, gap=0.0):
        nonlocal max_gap
        max_gap = max(max_gap, gap)
        err = abs(got - want)
        rows.append((family, params, measure, got, want, err))
        if err > tol:
            failures.append({"family": family, "params": params,
                             "measure": measure, "value": got,
                             "expected": want, "error": err})

    for d in (2, 3):
        for alpha in WERNER_ALPHAS:
            rho = werner(d, alpha)
            params = f"d={d},alpha={alpha}"
            cw = coherence_weight(rho, encodings="dual")
            cr = robustness_coherence(rho)
            check("werner", params, "cw", cw.value, alpha, cw.gap)
            check("werner", params, "cr", cr.value, alpha, cr.gap)
            check("werner", params, "cl1", l1_coherence(rho), alpha)
    for lam in GISIN_LAMBDAS:
        for theta in GISIN_THETAS:
            rho = gisin(lam, theta)
            params = f"lambda={lam},theta={theta:.6f}"
            target = lam * abs(math.sin(2 * theta))
            cw = coherence_weight(rho, encodings="dual")
            cr = robustness_coherence(rho)
            check("gisin", params, "cw", cw.value, lam, cw.gap)
            check("gisin", params, "cr", cr.value, target, cr.gap)
            check("gisin", params, "cl1", l1_coherence(rho), target)
    summary = {"checks": len(rows), "failed": len(failures), "max_gap": max_gap}
    result = ExperimentResult("closed-forms", not failures, summary, rows, failures)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write("# resweight closed-forms v1\n")
            fh.write("family,params,measure,value,expected,error\n")
            for family, params, measure, got, want, err in rows:
                fh.write(f"{family},{params},{measure},{CSV_FLOAT % got},"
                         f"{CSV_FLOAT % want},{CSV_FLOAT % err}\n")
        result.csv_path = out
    return result


PROPERTY_SIZES = {
    "convexity-cw": 500,
    "convexity-aw": 100,
    "monotonicity-cw": (100, 100),
    "monotonicity-aw": (20, 20),
    "bound-chain-coherence": 200,
    "bound-chain-asymmetry": 200,
    "tensor-inequalities": 200,
    "pure-marginals": 200,
    "x-state-equality": 200,
    "certificates": 100,
    "phase-negation": 100,
}


def run_property_suite(seed: int, out: str | None = None,
                       tol: float = DEFAULT_TOL,
                       sizes: dict | None = None) -> ExperimentResult:
    """Sampled convexity, monotonicity, bound-chain, tensor, marginal,
    X-state, certificate, and phase-negation properties at stated sizes."""
    sz = dict(PROPERTY_SIZES)
    if sizes:
        sz.update(sizes)
    entries, failures = [], []
    max_gap = max_wres = 0.0
    rep2 = rep_swap(2)

    def cw(rho):
        nonlocal max_gap
        report = coherence_weight(rho, encodings="dual")
        max_gap = max(max_gap, report.gap)
        return report.value

    def aw(rho):
        nonlocal max_gap
        report = asymmetry_weight(rho, rep2, encodings="dual")
        max_gap = max(max_gap, report.gap)
        return report.value

    def crob(rho):
        nonlocal max_gap
        report = robustness_coherence(rho)
        max_gap = max(max_gap, report.gap)
        return report.value

    def finish(label, samples, margins, extra=None):
        worst = float(min(margins)) if margins else 0.0
        bad = [m for m in margins if m < -tol]
        entries.append({"label": label, "samples": samples,
                        "worst_margin": worst, "failed": len(bad)})
        log.info("property %s: %d samples, worst margin %.3e, %d failures",
                 label, samples, worst, len(bad))
        if extra:
            failures.extend(extra)

    # Convexity of the coherence weight on random triples.
    n = sz["convexity-cw"]
    margins, bad = [], []
    for i in range(n):
        rng = derived_stream(seed, i)
        r1, r2 = haar_random_mixed(3, 3, rng), haar_random_mixed(3, 3, rng)
        p = float(rng.uniform())
        mix = p * r1 + (1.0 - p) * r2
        margin = p * cw(r1) + (1.0 - p) * cw(r2) - cw(mix)
        margins.append(margin)
        if margin < -tol:
            bad.append({"property": "convexity-cw", "sample": i, "margin": margin,
                        "state": matrix_to_json(mix)})
    finish("convexity-cw", n, margins, bad)

    # Convexity of the asymmetry weight under the two-qubit swap.
    n = sz["convexity-aw"]
    margins, bad = [], []
    for i in range(n):
        rng = derived_stream(seed, 10_000 + i)
        r1, r2 = haar_random_mixed(4, 4, rng), haar_random_mixed(4, 4, rng)
        p = float(rng.uniform())
        mix = p * r1 + (1.0 - p) * r2
        margin = p * aw(r1) + (1.0 - p) * aw(r2) - aw(mix)
        margins.append(margin)
        if margin < -tol:
            bad.append({"property": "convexity-aw", "sample": i, "margin": margin,
                        "state": matrix_to_json(mix)})
    finish("convexity-aw", n, margins, bad)

    # Monotonicity of C_w under random incoherent channels (selective form:
    # the outcome-averaged weight cannot exceed the input weight).
    n_chan, n_states = sz["monotonicity-cw"]
    states = [haar_random_mixed(3, 3, derived_stream(seed, 20_000 + i))
              for i in range(n_states)]
    base = [cw(rho) for rho in states]
    channels = [random_incoherent_kraus(3, 2 + i % 3, derived_stream(seed, 30_000 + i))
                for i in range(n_chan)]
    margins, bad = [], []
    for ci, channel in enumerate(channels):
        for si, rho in enumerate(states):
            averaged = sum(p * cw(post) for p, post in channel.outcomes(rho))
            margin = base[si] - averaged
            margins.append(margin)
            if margin < -tol:
                bad.append({"property": "monotonicity-cw", "channel": ci,
                            "sample": si, "margin": margin,
                            "state": matrix_to_json(rho)})
        log.info("monotonicity-cw: channel %d/%d done", ci + 1, n_chan)
    finish("monotonicity-cw", n_chan * n_states, margins, bad)

    # Monotonicity of A_w under covariant mixtures of group unitaries.
    n_chan, n_states = sz["monotonicity-aw"]
    margins, bad = [], []
    for ci in range(n_chan):
        rng = derived_stream(seed, 40_000 + ci)
        probs = rng.dirichlet(np.ones(len(rep2.elements)))
        channel = group_mixture_kraus(rep2, probs)
        for si in range(n_states):
            rho = haar_random_mixed(4, 4, derived_stream(seed, 50_000 + si))
            averaged = sum(p * aw(post) for p, post in channel.outcomes(rho))
            margin = aw(rho) - averaged
            margins.append(margin)
            if margin < -tol:
                bad.append({"property": "monotonicity-aw", "channel": ci,
                            "sample": si, "margin": margin,
                            "state": matrix_to_json(rho)})
    finish("monotonicity-aw", n_chan * n_states, margins, bad)

    # Coherence bound chain at d in {3, 4} including robustness vs l1.
    n = sz["bound-chain-coherence"]
    margins, bad = [], []
    for d in (3, 4):
        for i in range(n):
            rho = haar_random_mixed(d, d, derived_stream(seed, 60_000 + 1000 * d + i))
            w, rob = cw(rho), crob(rho)
            cl1, crel = l1_coherence(rho), rel_entropy_coherence(rho)
            hs = hs_lower_bound(rho)[0]
            local = {"cw_vs_cr": w - rob / (d - 1),
                     "cw_vs_cl1": w - cl1 / (d - 1),
                     "cw_vs_crel": w - crel / math.log(d),
                     "cw_vs_hs": w - hs,
                     "cr_vs_cl1": cl1 - rob}
            margins.extend(local.values())
            for lbl, margin in local.items():
                if margin < -tol:
                    bad.append({"property": f"bound-chain-{lbl}", "d": d,
                                "sample": i, "margin": margin,
                                "state": matrix_to_json(rho)})
    finish("bound-chain-coherence", 2 * n, margins, bad)

    # Asymmetry bound chain under the swap rep at d=4.
    n = sz["bound-chain-asymmetry"]
    margins, bad = [], []
    for i in range(n):
        rho = haar_random_mixed(4, 4, derived_stream(seed, 70_000 + i))
        w = aw(rho)
        report = robustness_asymmetry(rho, rep2)
        max_gap = max(max_gap, report.gap)
        arel = rel_entropy_asymmetry(rho, rep2)
        hs = hs_lower_bound(rho, free=rep2)[0]
        local = {"aw_vs_ar": w - report.value / 3.0,
                 "aw_vs_arel": w - arel / math.log(4.0),
                 "aw_vs_hs": w - hs}
        margins.extend(local.values())
        for lbl, margin in local.items():
            if margin < -tol:
                bad.append({"property": f"bound-chain-{lbl}", "sample": i,
                            "margin": margin, "state": matrix_to_json(rho)})
    finish("bound-chain-asymmetry", n, margins, bad)

    # Tensor-product weight and robustness inequalities on qubit pairs.
    n = sz["tensor-inequalities"]
    margins, bad = [], []
    for i in range(n):
        rng = derived_stream(seed, 80_000 + i)
        r1, r2 = haar_random_mixed(2, 2, rng), haar_random_mixed(2, 2, rng)
        joint = np.kron(r1, r2)
        w1, w2, wj = cw(r1), cw(r2), cw(joint)
        c1, c2, cj = crob(r1), crob(r2), crob(joint)
        local = {"tensor-cw": w1 + w2 - w1 * w2 - wj,
                 "tensor-cr": c1 + c2 + c1 * c2 - cj}
        margins.extend(local.values())
        for lbl, margin in local.items():
            if margin < -tol:
                bad.append({"property": lbl, "sample": i, "margin": margin,
                            "state": matrix_to_json(joint)})
    finish("tensor-inequalities", n, margins, bad)

    # Pure bipartite states: robustness superadditivity and the weight identity.
    n = sz["pure-marginals"]
    margins, bad = [], []
    for i in range(n):
        rho = haar_random_pure(4, derived_stream(seed, 90_000 + i))
        ra, rb = partial_trace(rho, (2, 2), keep=1), partial_trace(rho, (2, 2), keep=2)
        local = {"pure-cr-marginals": crob(rho) - crob(ra) - crob(rb),
                 "pure-cw-marginals": cw(rho) + cw(ra) * cw(rb) - cw(ra) - cw(rb)}
        margins.extend(local.values())
        for lbl, margin in local.items():
            if margin < -tol:
                bad.append({"property": lbl, "sample": i, "margin": margin,
                            "state": matrix_to_json(rho)})
    finish("pure-marginals", n, margins, bad)

    # Generalized X states: robustness equals the l1 norm.
    n = sz["x-state-equality"]
    margins, bad = [], []
    x_states = []
    for i in range(n):
        d = 2 if i % 2 == 0 else 4
        rho = generalized_x(random_x_spec(d, derived_stream(seed, 100_000 + i)))
        x_states.append(rho)
        margin = tol - abs(crob(rho) - l1_coherence(rho))
        margins.append(margin)
        if margin < 0.0:
            bad.append({"property": "x-state-equality", "sample": i,
                        "margin": margin, "state": matrix_to_json(rho)})
    finish("x-state-equality", n, margins, bad)

    # Full certificate audit on random states: decomposition, freeness,
    # positivity, witness feasibility, and the robustness mixing identity.
    n = sz["certificates"]
    margins, bad = [], []
    for i in range(n):
        rho = haar_random_mixed(3, 3, derived_stream(seed, 110_000 + i))
        report = coherence_weight(rho)
        rob = robustness_coherence(rho)
        max_gap = max(max_gap, report.gap, rob.gap)
        wres = _witness_residual(rho, report)
        max_wres = max(max_wres, wres)
        checks = {}
        for tag, rpt in (("weight", report), ("robustness", rob)):
            rec = rpt.reconstruction()
            checks[f"{tag}-reconstruction"] = tol - float(
                np.sqrt(hs_norm_sq(rec - rho)))
            sigma = rpt.free_state
            checks[f"{tag}-free-distance"] = tol - float(
                np.sqrt(hs_norm_sq(sigma - np.diag(np.diagonal(sigma)))))
            checks[f"{tag}-free-trace"] = tol - abs(float(np.trace(sigma).real) - 1.0)
            checks[f"{tag}-free-psd"] = float(np.linalg.eigvalsh(sigma)[0]) + tol
            if rpt.residual_state is not None:
                tau = rpt.residual_state
                checks[f"{tag}-residual-trace"] = tol - abs(float(np.trace(tau).real) - 1.0)
                checks[f"{tag}-residual-psd"] = float(np.linalg.eigvalsh(tau)[0]) + tol
        checks["witness-residual"] = WITNESS_FEAS_TOL - wres
        margins.extend(checks.values())
        for lbl, margin in checks.items():
            if margin < 0.0:
                bad.append({"property": f"certificates-{lbl}", "sample": i,
                            "margin": margin, "state": matrix_to_json(rho)})
    finish("certificates", n, margins, bad)

    # Phase negation: when an incoherent unitary can make every off-diagonal
    # entry negative, the l1 norm lower-bounds the weight.
    n = sz["phase-negation"]
    margins, bad = [], []
    applicable = 0
    pool = x_states[:n] + [haar_random_mixed(2, 2, derived_stream(seed, 120_000 + i))
                           for i in range(n)]
    for i, rho in enumerate(pool):
        if negating_phases(rho) is None:
            continue
        applicable += 1
        margin = cw(rho) - l1_coherence(rho)
        margins.append(margin)
        if margin < -tol:
            bad.append({"property": "phase-negation", "sample": i,
                        "margin": margin, "state": matrix_to_json(rho)})
    finish("phase-negation", applicable, margins, bad)

    passed = not failures
    summary = {"seed": seed, "subsuites": len(entries),
               "failed": len(failures), "max_gap": max_gap,
               "max_witness_residual": max_wres}
    rows = [(e["label"], e["samples"], e["worst_margin"], e["failed"])
            for e in entries]
    result = ExperimentResult("properties", passed, summary, rows, failures,
                              entries=entries)
    if out:
        _write_csv(out, "properties", ["property", "samples", "worst_margin", "failed"],
                   rows)
        result.csv_path = out
    return result


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Dispatch one named experiment from a validated config."""
    config.validate()
    if config.name == "scatter":
        return run_scatter(config.resolved_dim(), config.samples, config.seed,
                           out=config.out, tol=config.tol)
    if config.name == "violation":
        return run_violation_search(config.samples, config.seed,
                                    out=config.out, denv=config.resolved_dim())
    if config.name == "closed-forms":
        return run_closed_forms(out=config.out, tol=config.tol)
    return run_property_suite(config.seed, out=config.out, tol=config.tol)
