"""Truncated Fock space, the high-order Hamiltonian, evolution and moments."""
import numpy as np
import pytest
from scipy.stats import poisson

from src.algebra import parse_poly
from src.fock import (
    CLASSICAL,
    QUANTUM,
    EvolutionParams,
    FockCutoffs,
    HamiltonianSpec,
    StateVector,
    apply_hamiltonian,
    coherent_amplitudes,
    evolve,
    hamiltonian_matrix,
    initial_state,
    lower,
    moment,
    required_pump_cutoff,
    vacuum_state,
)
from src.utils.errors import AlgebraError, ConfigError, CutoffError


def _fock(cutoffs: FockCutoffs, occupation: tuple) -> StateVector:
    amps = np.zeros(cutoffs.dims, dtype=complex)
    amps[occupation] = 1.0
    return StateVector(cutoffs, amps)


def test_cutoffs_dims():
    cutoffs = FockCutoffs((("a", 3), ("b", 5)))
    assert cutoffs.dims == (4, 6)
    assert cutoffs.dim == 24
    assert cutoffs.axis("b") == 1
    assert cutoffs.scaled(2).as_dict() == {"a": 6, "b": 10}


def test_cutoffs_validation():
    with pytest.raises(ConfigError):
        FockCutoffs((("a", 3), ("a", 4)))
    with pytest.raises(ConfigError):
        FockCutoffs((("a", -1),))
    with pytest.raises(ConfigError):
        FockCutoffs.from_mapping({"a": 2}, ("a", "b"))
    with pytest.raises(CutoffError):
        FockCutoffs((("a", 2),)).of("b")


def test_budget_exceeded_reports_dimension():
    cutoffs = FockCutoffs((("a", 99), ("b", 99)))
    with pytest.raises(CutoffError) as info:
        cutoffs.check_budget(budget=1000)
    assert info.value.required == 10_000


def test_lower_fock_state():
    """a²|3⟩ = √6 |1⟩."""
    amps = np.zeros(5, dtype=complex)
    amps[3] = 1.0
    out = lower(amps, 0, 2)
    expected = np.zeros(5, dtype=complex)
    expected[1] = np.sqrt(6)
    np.testing.assert_allclose(out, expected)
    assert not np.any(lower(amps, 0, 5))


def test_moments_of_fock_state():
    cutoffs = FockCutoffs((("a", 4), ("b", 4)))
    psi = _fock(cutoffs, (2, 1))
    assert moment(psi, parse_poly("a'*a")) == pytest.approx(2.0)
    assert moment(psi, parse_poly("a'^2*a^2 + b'*b")) == pytest.approx(3.0)
    assert moment(psi, parse_poly("a")) == 0
    assert psi.photon_number("a") == pytest.approx(2.0)


def test_moment_of_unknown_mode():
    psi = vacuum_state(FockCutoffs((("a", 2),)))
    with pytest.raises(AlgebraError):
        moment(psi, parse_poly("c'*c"))


def test_coherent_state_moments():
    alpha = 0.5
    cutoffs = FockCutoffs((("p", 20),))
    psi = StateVector(cutoffs, coherent_amplitudes(alpha, 20))
    assert psi.norm() == pytest.approx(1.0)
    assert moment(psi, parse_poly("p")).real == pytest.approx(alpha, abs=1e-10)
    assert moment(psi, parse_poly("p'*p")).real == pytest.approx(alpha ** 2, abs=1e-10)


def test_required_pump_cutoff_is_minimal():
    n = required_pump_cutoff(5.0, 1e-10)
    assert poisson.sf(n, 25.0) <= 1e-10 < poisson.sf(n - 1, 25.0)
    assert required_pump_cutoff(0.0) == 0


def test_coherent_amplitudes_reject_short_cutoff():
    with pytest.raises(CutoffError) as info:
        coherent_amplitudes(5.0, 30)
    assert info.value.required == required_pump_cutoff(5.0)


def test_hamiltonian_is_hermitian():
    spec = HamiltonianSpec(k=1, l=2, alpha_p=1.0, pump=QUANTUM)
    h = hamiltonian_matrix(spec, spec.cutoffs({"a": 3, "b": 6, "p": 4})).toarray()
    np.testing.assert_allclose(h, h.conj().T, atol=0)
    assert np.abs(h).max() > 0


def test_hamiltonian_spec_validation():
    with pytest.raises(ConfigError):
        HamiltonianSpec(k=0, l=2)
    with pytest.raises(ConfigError):
        HamiltonianSpec(alpha_p=-1.0)
    with pytest.raises(ConfigError):
        HamiltonianSpec(pump="semi")
    assert HamiltonianSpec(pump=CLASSICAL).modes == ("a", "b")
    assert HamiltonianSpec(alpha_p=5.0).tau_for_xi(1.0) == pytest.approx(0.2)
    assert HamiltonianSpec(alpha_p=0.0).tau_for_xi(0.0) == 0.0
    with pytest.raises(ConfigError, match="unreachable"):
        HamiltonianSpec(alpha_p=0.0).tau_for_xi(0.5)


def test_initial_state_mode_mismatch():
    spec = HamiltonianSpec(pump=QUANTUM)
    with pytest.raises(CutoffError):
        initial_state(FockCutoffs((("a", 2), ("b", 2))), spec)


def test_evolution_conserves_manley_rowe():
    """2 n_a − n_b and n_a + n_p are constants of motion for k=1, l=2."""
    spec = HamiltonianSpec(k=1, l=2, alpha_p=1.0, pump=QUANTUM)
    cutoffs = spec.cutoffs({"a": 6, "b": 12, "p": 16})
    psi0 = initial_state(cutoffs, spec)
    psi = evolve(psi0, spec, 0.3)

    assert psi.photon_number("a") > 1e-3
    assert abs(2 * psi.photon_number("a") - psi.photon_number("b")) < 1e-9
    before = psi0.photon_number("a") + psi0.photon_number("p")
    after = psi.photon_number("a") + psi.photon_number("p")
    assert after == pytest.approx(before, abs=1e-9)
    assert psi.meta["norm_drift"] < 1e-9
    assert psi.meta["xi"] == pytest.approx(0.3)


def test_closed_cutoffs_leave_no_boundary_weight():
    """n_a ≤ k·N_p and n_b ≤ l·N_p bound the quantum-pump dynamics exactly."""
    spec = HamiltonianSpec(k=1, l=2, alpha_p=1.0, pump=QUANTUM)
    n_p = required_pump_cutoff(1.0)
    closed = spec.closed_cutoffs(n_p)
    assert closed == {"a": n_p, "b": 2 * n_p, "p": n_p}
    assert spec.closes(closed)
    assert not spec.closes({**closed, "b": closed["b"] - 1})
    assert not HamiltonianSpec(pump=CLASSICAL).closes(closed)

    psi = evolve(initial_state(spec.cutoffs(closed), spec), spec, 1.4)
    assert psi.meta["leakage"] < 1e-9
    assert not psi.meta["leakage_flag"]

    wider = spec.cutoffs({"a": n_p + 4, "b": 2 * n_p + 8, "p": n_p})
    psi_wide = evolve(initial_state(wider, spec), spec, 1.4)
    assert psi_wide.photon_number("a") == pytest.approx(psi.photon_number("a"), abs=1e-9)
    assert psi_wide.photon_number("b") == pytest.approx(psi.photon_number("b"), abs=1e-9)


def test_zero_time_is_identity():
    spec = HamiltonianSpec(k=1, l=1, alpha_p=1.0, pump=CLASSICAL)
    psi0 = initial_state(spec.cutoffs({"a": 4, "b": 4}), spec)
    psi = evolve(psi0, spec, 0.0)
    np.testing.assert_array_equal(psi.amplitudes, psi0.amplitudes)
    assert psi.meta["leakage_flag"] is False


def test_integrators_agree():
    spec = HamiltonianSpec(k=1, l=1, alpha_p=1.0, pump=CLASSICAL)
    psi0 = initial_state(spec.cutoffs({"a": 8, "b": 8}), spec)
    krylov = evolve(psi0, spec, EvolutionParams(tau=0.2, method="expm"))
    runge_kutta = evolve(psi0, spec, EvolutionParams(tau=0.2, method="rk"))
    np.testing.assert_allclose(krylov.flat, runge_kutta.flat, atol=1e-7)


def test_classical_pump_gives_two_mode_squeezing():
    """k = l = 1 with a classical pump: ⟨a†a⟩ = sinh²(ξ)."""
    spec = HamiltonianSpec(k=1, l=1, alpha_p=1.0, pump=CLASSICAL)
    psi0 = initial_state(spec.cutoffs({"a": 20, "b": 20}), spec)
    psi = evolve(psi0, spec, 0.3)
    assert psi.photon_number("a") == pytest.approx(np.sinh(0.3) ** 2, abs=1e-9)


def test_leakage_flag_on_small_cutoff():
    spec = HamiltonianSpec(k=1, l=1, alpha_p=1.0, pump=CLASSICAL)
    psi0 = initial_state(spec.cutoffs({"a": 2, "b": 2}), spec)
    psi = evolve(psi0, spec, 0.8)
    assert psi.meta["leakage_flag"] is True
    assert psi.max_leakage() > 1e-6


def test_evolution_params_validation():
    with pytest.raises(ConfigError):
        EvolutionParams(tau=-0.1)
    with pytest.raises(ConfigError):
        EvolutionParams(tau=0.1, method="euler")


def test_dump_and_load(tmp_path):
    cutoffs = FockCutoffs((("a", 2), ("b", 3)))
    amps = np.arange(12, dtype=float).reshape(3, 4) * (1 - 0.5j)
    psi = StateVector(cutoffs, amps)
    path = psi.dump(tmp_path / "state.fock")
    assert path.read_bytes().startswith(b"FOCK 2 3\n")
    loaded = StateVector.load(path, ("a", "b"))
    assert loaded.cutoffs == cutoffs
    np.testing.assert_array_equal(loaded.amplitudes, psi.amplitudes)
    with pytest.raises(ConfigError):
        StateVector.load(path, ("a",))


def test_extend_vacuum():
    psi = _fock(FockCutoffs((("a", 2),)), (1,))
    extended = psi.extend_vacuum({"v1": 2})
    assert extended.modes == ("a", "v1")
    assert extended.amplitudes[1, 0] == 1.0
    assert extended.norm() == pytest.approx(1.0)


def test_apply_hamiltonian_on_vacuum():
    """i α_p a†b†²|0,0⟩ = i α_p √2 |1,2⟩ for a classical pump."""
    ham = HamiltonianSpec(k=1, l=2, alpha_p=0.5, pump=CLASSICAL)
    cutoffs = ham.cutoffs({"a": 3, "b": 4})
    out = apply_hamiltonian(ham, cutoffs, vacuum_state(cutoffs))
    expected = np.zeros(cutoffs.dims, dtype=complex)
    expected[1, 2] = 0.5j * np.sqrt(2)
    np.testing.assert_allclose(out.amplitudes, expected, atol=1e-14)
    with pytest.raises(CutoffError):
        apply_hamiltonian(ham, cutoffs, vacuum_state(ham.cutoffs({"a": 3, "b": 5})))
