import numpy as np
import pytest

from resweight.linalg import hermitianize, is_psd
from resweight.sdp import (SdpProblem, SolverError, SolverOptions,
                           encode_asymmetry_weight,
                           encode_asymmetry_weight_dual,
                           encode_coherence_weight,
                           encode_coherence_weight_dual, encode_robustness,
                           map_apply, solve)
from resweight.sdp.ipm import svec_space
from resweight.states import (haar_random_mixed, maximally_coherent,
                              rep_cyclic, rep_swap, werner)


def random_hermitian(d, rng):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return hermitianize(a)


def test_svec_preserves_inner_products():
    rng = np.random.default_rng(0)
    space = svec_space(4)
    for _ in range(20):
        a, b = random_hermitian(4, rng), random_hermitian(4, rng)
        va, vb = space.svec(a), space.svec(b)
        assert np.allclose(space.unsvec(va), a, atol=1e-12)
        assert float(va @ vb) == pytest.approx(np.trace(a @ b).real, abs=1e-10)


def test_congruence_matrix_action():
    rng = np.random.default_rng(1)
    space = svec_space(3)
    w = random_hermitian(3, rng) + 4.0 * np.eye(3)
    h = random_hermitian(3, rng)
    out = space.unsvec(space.congruence_matrix(w) @ space.svec(h))
    assert np.allclose(out, w @ h @ w.conj().T, atol=1e-9)


def test_map_apply_matches_direct_formulas():
    rng = np.random.default_rng(2)
    h = random_hermitian(4, rng)
    assert np.allclose(map_apply("dephasing", None, h),
                       np.diag(np.diagonal(h)), atol=1e-12)
    assert np.allclose(map_apply("identity", None, h), h, atol=1e-12)
    rep = rep_swap(2)
    twirled = map_apply("group", rep, h)
    v = rep.elements[1]
    assert np.allclose(twirled, (h + v @ h @ v.conj().T) / 2, atol=1e-12)


def solved(problem, **kw):
    sol = solve(problem, **kw)
    assert sol.status == "optimal", sol.status
    return sol


def test_identity_map_problem_has_known_optimum():
    # max Tr X subject to X <= rho recovers Tr rho = 1 with X* = rho.
    rho = haar_random_mixed(3, 3, 5)
    problem = SdpProblem(objective=np.eye(3, dtype=complex), map_kind="identity",
                         bound=rho, label="containment")
    sol = solved(problem)
    assert sol.primal_value == pytest.approx(1.0, abs=1e-7)
    assert np.allclose(sol.primal_matrix, rho, atol=1e-5)


def test_weight_encodings_agree_and_certify():
    rng = np.random.default_rng(3)
    for i in range(25):
        rho = haar_random_mixed(3, 3, rng)
        sp = solved(encode_coherence_weight(rho))
        sd = solved(encode_coherence_weight_dual(rho))
        value_primal = 1.0 - sp.primal_value
        assert value_primal == pytest.approx(sd.primal_value, abs=1e-6)
        for sol in (sp, sd):
            assert sol.gap <= 1e-7
            assert sol.primal_value == pytest.approx(sol.dual_value, abs=1e-6)
            assert is_psd(sol.primal_matrix, tol=1e-7)


def test_primal_solution_yields_feasible_certificates():
    rho = haar_random_mixed(4, 4, 11)
    sol = solved(encode_coherence_weight(rho))
    x = sol.primal_matrix
    # Feasibility: X PSD and its dephasing below rho.
    assert is_psd(x, tol=1e-7)
    assert np.linalg.eigvalsh(rho - np.diag(np.diagonal(x)))[0] >= -1e-7
    # The shifted dual variable is a feasible witness: dephasing <= 0, W <= I.
    w = sol.dual_matrix + np.eye(4)
    assert np.diagonal(w).real.max() <= 1e-7
    assert np.linalg.eigvalsh(w)[-1] <= 1.0 + 1e-7
    # ... and it reproduces the weight on rho.
    assert np.trace(rho @ w).real == pytest.approx(1.0 - sol.primal_value, abs=1e-6)


def test_asymmetry_encodings_swap_rep():
    rep = rep_swap(2)
    rho = haar_random_mixed(4, 4, 7)
    sp = solved(encode_asymmetry_weight(rho, rep))
    sd = solved(encode_asymmetry_weight_dual(rho, rep))
    assert 1.0 - sp.primal_value == pytest.approx(sd.primal_value, abs=1e-6)
    # Symmetric states are fixed points, weight zero.
    sym = map_apply("group", rep, rho)
    sol = solved(encode_asymmetry_weight_dual(sym, rep))
    assert sol.primal_value == pytest.approx(0.0, abs=1e-7)


def test_cyclic_rep_weight_vanishes_iff_symmetric():
    rep = rep_cyclic(3, 3)
    rho = haar_random_mixed(3, 3, 13)
    sol = solved(encode_asymmetry_weight_dual(rho, rep))
    assert sol.primal_value > 0.1
    sol0 = solved(encode_asymmetry_weight_dual(map_apply("group", rep, rho), rep))
    assert sol0.primal_value == pytest.approx(0.0, abs=1e-7)


def test_robustness_encoding_known_values():
    # Maximally coherent state: robustness d - 1.
    for d in (2, 3, 4):
        sol = solved(encode_robustness(maximally_coherent(d)))
        assert sol.primal_value == pytest.approx(d - 1.0, abs=1e-6)
    # Werner family: robustness alpha under the swap twirl structure.
    sol = solved(encode_robustness(werner(2, 0.75)))
    assert sol.primal_value == pytest.approx(0.75, abs=1e-6)


def test_solver_trace_and_options():
    rho = haar_random_mixed(3, 3, 17)
    trace = []
    sol = solve(encode_coherence_weight_dual(rho), trace=trace)
    assert sol.status == "optimal"
    assert len(trace) >= sol.iterations
    assert {"iteration", "gap", "primal_residual", "dual_residual"} <= set(trace[0])
    assert min(t["gap"] for t in trace) <= 1e-6
    # A loose iteration cap is honored and reported honestly.
    capped = solve(encode_coherence_weight_dual(rho),
                   options=SolverOptions(max_iter=2))
    assert capped.status != "optimal"
    assert capped.iterations <= 2


def test_solver_error_carries_context():
    err = SolverError("max-iter", label="demo")
    assert err.status == "max-iter"
    assert "demo" in str(err)


def test_value_interpretation_fields():
    rho = haar_random_mixed(3, 3, 19)
    problem = encode_robustness(rho)
    sol = solved(problem)
    value = sol.primal_value
    # The robustness instance maximizes Tr[-X], so the raw optimum is
    # -(1 + value); the affine interpretation must map it back to the value.
    assert problem.value_offset + problem.value_scale * (
        -(1.0 + value)) == pytest.approx(value, abs=1e-9)
    assert problem.map_sign == -1


def test_batch_random_instances_all_certify():
    rng = np.random.default_rng(23)
    worst_gap = 0.0
    for i in range(40):
        d = 2 + i % 3
        rho = haar_random_mixed(d, d, rng)
        enc = (encode_coherence_weight, encode_coherence_weight_dual,
               encode_robustness)[i % 3]
        sol = solved(enc(rho))
        rel = sol.gap / (1.0 + abs(sol.primal_value))
        worst_gap = max(worst_gap, rel)
    assert worst_gap <= 1e-7
