import numpy as np
import pytest

from resweight.linalg import (hs_norm_sq, matrix_from_json,
                              von_neumann_entropy)
from resweight.measures import (asymmetry_weight, coherence_weight,
                                hs_lower_bound, l1_coherence, negating_phases,
                                qubit_cw_oracle, rel_entropy_asymmetry,
                                rel_entropy_coherence, robustness_asymmetry,
                                robustness_coherence, swap_ar_oracle,
                                swap_aw_oracle, witness_evaluate)
from resweight.states import (dephase, derived_stream, generalized_x, gisin,
                              group_average, haar_random_mixed,
                              haar_random_pure, maximally_coherent,
                              random_x_spec, rep_swap, werner)

REP2 = rep_swap(2)


def basis_state(d, i):
    rho = np.zeros((d, d), dtype=complex)
    rho[i, i] = 1.0
    return rho


def half_singlet():
    """Even mixture of the singlet with |01><01|."""
    psi = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / np.sqrt(2)
    return 0.5 * np.outer(psi, psi.conj()) + 0.5 * basis_state(4, 1)


def test_free_states_report_exact_zero():
    rho = dephase(haar_random_mixed(3, 3, 0))
    report = coherence_weight(rho)
    assert report.value == 0.0
    assert report.gap == 0.0
    assert np.allclose(report.witness, 0.0)
    sym = group_average(haar_random_mixed(4, 4, 1), REP2)
    assert asymmetry_weight(sym, REP2).value == 0.0
    assert robustness_coherence(dephase(haar_random_mixed(4, 4, 2))).value == 0.0


def test_pure_states_shortcut_and_sdp_agree():
    for rho in (maximally_coherent(3), gisin(1.0, np.pi / 3),
                haar_random_pure(4, 5)):
        fast = coherence_weight(rho)
        assert fast.value == 1.0
        slow = coherence_weight(rho, method="sdp")
        assert slow.value == pytest.approx(1.0, abs=1e-6)
    # Coherent pure states decompose as rho = 0 * free + 1 * rho.
    report = coherence_weight(maximally_coherent(3))
    assert np.allclose(report.residual_state, maximally_coherent(3))


def test_known_qubit_weight():
    rho = np.array([[0.5, 0.3], [0.3, 0.5]], dtype=complex)
    assert coherence_weight(rho).value == pytest.approx(0.6, abs=1e-6)
    assert coherence_weight(rho, encodings="primal").value == pytest.approx(0.6, abs=1e-6)
    assert coherence_weight(rho, encodings="dual").value == pytest.approx(0.6, abs=1e-6)
    assert qubit_cw_oracle(rho) == pytest.approx(0.6, abs=1e-4)


def test_werner_and_gisin_closed_forms_spot():
    rho = werner(2, 0.5)
    assert coherence_weight(rho).value == pytest.approx(0.5, abs=1e-6)
    assert robustness_coherence(rho).value == pytest.approx(0.5, abs=1e-6)
    assert l1_coherence(rho) == pytest.approx(0.5, abs=1e-12)
    rho = gisin(0.8, np.pi / 8)
    assert coherence_weight(rho).value == pytest.approx(0.8, abs=1e-6)
    target = 0.8 * abs(np.sin(np.pi / 4))
    assert robustness_coherence(rho).value == pytest.approx(target, abs=1e-6)
    assert l1_coherence(rho) == pytest.approx(target, abs=1e-12)


def test_qubit_oracle_tracks_sdp():
    for i in range(25):
        rho = haar_random_mixed(2, 2, derived_stream(99, i))
        sdp = coherence_weight(rho, method="sdp", encodings="dual").value
        assert abs(sdp - qubit_cw_oracle(rho)) <= 1e-4


def test_swap_weight_oracle():
    rho = half_singlet()
    assert swap_aw_oracle(rho) == pytest.approx(0.5, abs=1e-5)
    assert asymmetry_weight(rho, REP2).value == pytest.approx(0.5, abs=1e-6)
    # A swap-symmetric member of the oracle family has weight zero.
    sym = np.zeros((4, 4), dtype=complex)
    sym[0, 0], sym[3, 3] = 0.1, 0.1
    sym[1, 1] = sym[2, 2] = 0.4
    sym[1, 2] = sym[2, 1] = 0.3
    assert swap_aw_oracle(sym) == pytest.approx(0.0, abs=1e-5)
    assert asymmetry_weight(sym, REP2).value == 0.0


def test_swap_robustness_oracle():
    rho = basis_state(4, 1)  # |01><01|
    assert swap_ar_oracle(rho) == pytest.approx(1.0, abs=1e-5)
    assert robustness_asymmetry(rho, REP2).value == pytest.approx(1.0, abs=1e-6)
    assert asymmetry_weight(rho, REP2, method="sdp").value == pytest.approx(1.0, abs=1e-6)


def test_l1_and_relative_entropy_values():
    for d in (2, 3, 4):
        m = maximally_coherent(d)
        assert l1_coherence(m) == pytest.approx(d - 1.0, abs=1e-12)
        assert rel_entropy_coherence(m) == pytest.approx(np.log(d), abs=1e-9)
        assert robustness_coherence(m).value == pytest.approx(d - 1.0, abs=1e-6)
    assert rel_entropy_coherence(dephase(haar_random_mixed(3, 3, 6))) == 0.0
    rho = haar_random_mixed(4, 4, 7)
    direct = (von_neumann_entropy(group_average(rho, REP2))
              - von_neumann_entropy(rho))
    assert rel_entropy_asymmetry(rho, REP2) == pytest.approx(direct, abs=1e-10)
    assert rel_entropy_asymmetry(group_average(rho, REP2), REP2) == 0.0


def test_hs_lower_bound():
    sharp, loose = hs_lower_bound(maximally_coherent(2))
    assert (sharp, loose) == (pytest.approx(0.5, abs=1e-12),
                              pytest.approx(0.5, abs=1e-12))
    for i in range(10):
        rho = haar_random_mixed(3, 3, derived_stream(55, i))
        sharp, loose = hs_lower_bound(rho)
        assert sharp >= loose - 1e-12
        assert coherence_weight(rho, encodings="dual").value >= sharp - 1e-6
    # Asymmetry flavor under the swap rep.
    rho = haar_random_mixed(4, 4, 8)
    sharp, _ = hs_lower_bound(rho, free=REP2)
    assert asymmetry_weight(rho, REP2, encodings="dual").value >= sharp - 1e-6


def test_witness_evaluate_standard_construction():
    rng_states = [haar_random_mixed(3, 3, derived_stream(77, i)) for i in range(5)]
    for rho in rng_states:
        w = (rho - dephase(rho)) / np.linalg.eigvalsh(rho)[-1]
        value, feasible = witness_evaluate(rho, w)
        assert feasible
        assert value > 0.0
        assert value <= coherence_weight(rho, encodings="dual").value + 1e-6


def test_witness_evaluate_swap_sign_quirk():
    """The negated swap detects the singlet numerically, but it is not a
    feasible asymmetry witness: the twirl of -V keeps positive eigenvalues."""
    psi = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / np.sqrt(2)
    singlet = np.outer(psi, psi.conj())
    v = REP2.elements[1]
    value, feasible = witness_evaluate(singlet, -v, free=REP2)
    assert value == pytest.approx(1.0, abs=1e-12)
    assert not feasible


def test_optimal_witness_reproduces_value():
    rho = haar_random_mixed(3, 3, 21)
    report = coherence_weight(rho)
    value, feasible = witness_evaluate(rho, report.witness)
    assert feasible
    assert value == pytest.approx(report.value, abs=1e-6)


def test_negating_phases():
    # Any qubit admits negating phases.
    rho = haar_random_mixed(2, 2, 31)
    phases = negating_phases(rho)
    assert phases is not None
    u = np.diag(np.exp(1j * phases))
    rotated = u @ rho @ u.conj().T
    off = ~np.eye(2, dtype=bool)
    assert np.allclose(rotated[off], -np.abs(rho[off]), atol=1e-10)
    # X states: disjoint blocks, always consistent.
    for i in range(5):
        assert negating_phases(generalized_x(random_x_spec(4, i))) is not None
    # All-positive triangle: the three constraints cannot all hold.
    assert negating_phases(maximally_coherent(3)) is None


def test_phase_negation_implies_l1_lower_bound():
    for i in range(10):
        rho = haar_random_mixed(2, 2, derived_stream(88, i))
        if negating_phases(rho) is None:
            continue
        cw = coherence_weight(rho, encodings="dual").value
        assert cw >= l1_coherence(rho) - 1e-6


def test_weight_report_certificates():
    for i in range(10):
        rho = haar_random_mixed(3, 3, derived_stream(66, i))
        report = coherence_weight(rho)
        # Decomposition rebuilds the state.
        assert np.sqrt(hs_norm_sq(report.reconstruction() - rho)) <= 1e-6
        sigma, tau = report.free_state, report.residual_state
        assert np.allclose(sigma, dephase(sigma), atol=1e-8)
        assert np.trace(sigma).real == pytest.approx(1.0, abs=1e-7)
        assert np.linalg.eigvalsh(sigma)[0] >= -1e-7
        assert np.trace(tau).real == pytest.approx(1.0, abs=1e-7)
        assert np.linalg.eigvalsh(tau)[0] >= -1e-7


def test_robustness_report_certificates():
    rho = haar_random_mixed(3, 3, 41)
    report = robustness_coherence(rho)
    assert report.kind == "robustness-coherence"
    assert np.sqrt(hs_norm_sq(report.reconstruction() - rho)) <= 1e-6
    sigma, tau = report.free_state, report.residual_state
    assert np.allclose(sigma, dephase(sigma), atol=1e-8)
    for state in (sigma, tau):
        assert np.trace(state).real == pytest.approx(1.0, abs=1e-7)
        assert np.linalg.eigvalsh(state)[0] >= -1e-7


def test_report_json_schema():
    rho = haar_random_mixed(2, 2, 51)
    report = coherence_weight(rho)
    full = report.to_json()
    assert full["measure"] == "coherence-weight"
    assert 0.0 <= full["value"] <= 1.0
    assert full["gap"] >= 0.0
    assert np.allclose(matrix_from_json(full["witness"]), report.witness)
    slim = report.to_json(include_matrices=False)
    assert set(slim) == {"measure", "value", "gap"}


def test_tiny_coherence_snaps_to_zero():
    rho = np.array([[0.6, 1e-9], [1e-9, 0.4]], dtype=complex)
    assert coherence_weight(rho).value == 0.0
    assert robustness_coherence(rho).value == 0.0


def test_input_validation():
    rho = haar_random_mixed(3, 3, 61)
    with pytest.raises(ValueError):
        asymmetry_weight(rho, REP2)  # 3-dim state, 4-dim rep
    with pytest.raises(ValueError):
        coherence_weight(rho, method="guess")
    with pytest.raises(ValueError):
        coherence_weight(rho, encodings="neither")
    with pytest.raises(ValueError):
        coherence_weight(np.eye(3, dtype=complex))  # trace 3
    with pytest.raises(ValueError):
        qubit_cw_oracle(rho)
    with pytest.raises(ValueError):
        swap_aw_oracle(haar_random_mixed(4, 4, 62))  # no X pattern
