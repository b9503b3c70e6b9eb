"""Imaginary time evolution: dynamics, convergence traces, overlap readout."""

import math

import numpy as np
import pytest

from qdegen.hamiltonian import (
    HamiltonianSpec,
    PauliTerm,
    ResourceBudgetError,
    build_tfi,
    diagonal_spec,
)
from qdegen.ite import (
    ItePath,
    IteSample,
    convergence_curves,
    count_degeneracy_ite,
    default_dt,
    ite_evolve,
    qite_overlap_check,
)
from qdegen.lift import StateVector, lift, vacuum_state


def test_path_requires_increasing_tau():
    good = [IteSample(0.0, 1.0, 0.0, 1.0), IteSample(0.1, 0.5, 0.0, 1.0)]
    assert len(ItePath(good).taus()) == 2
    with pytest.raises(ValueError):
        ItePath(list(reversed(good)))


def test_step_bound_enforced():
    spec = build_tfi(3, 0.5)  # radius bound 1.25
    v0 = StateVector(3, 2, np.ones(8) / np.sqrt(8.0), normalized=True)
    with pytest.raises(ValueError):
        ite_evolve(spec, v0, dt=0.5)
    with pytest.raises(ValueError):
        ite_evolve(spec, v0, dt=-1e-3)
    assert default_dt(spec) * 1.25 < 0.5


def test_euler_selects_ground_component():
    # diag(0, 1) on one site: evolution must drain the excited amplitude
    spec = diagonal_spec(np.array([0.0, 1.0]))
    v0 = StateVector(1, 2, np.array([1.0, 1.0]) / np.sqrt(2.0), normalized=True)
    out = ite_evolve(spec, v0, dt=0.1, steps=400)
    assert abs(out.amps[0]) == pytest.approx(1.0, abs=1e-8)
    assert abs(out.amps[1]) < 1e-8


def test_euler_agrees_with_spectral_oracle():
    rng = np.random.default_rng(51)
    spec = build_tfi(3, 0.4, 0.1)
    v0 = rng.standard_normal(8)
    v0 = StateVector(3, 2, v0 / np.linalg.norm(v0), normalized=True)
    dt = 1e-3
    euler = ite_evolve(spec, v0, dt=dt, steps=2000, method="euler")
    exact = ite_evolve(spec, v0, dt=dt, steps=2000, method="spectral")
    fidelity = abs(np.vdot(euler.amps, exact.amps))
    assert fidelity > 1.0 - 1e-6


def test_evolve_validations():
    spec = build_tfi(2, 0.3)
    v0 = vacuum_state(2)
    with pytest.raises(ValueError):
        ite_evolve(spec, v0)  # 4-level state against a qubit Hamiltonian
    bad = HamiltonianSpec(2, [PauliTerm(1.0j, (3, 0))])
    with pytest.raises(ValueError):
        ite_evolve(bad, StateVector(2, 2, np.ones(4) / 2.0))
    with pytest.raises(ValueError):
        ite_evolve(spec, StateVector(2, 2, np.ones(4) / 2.0), method="verlet")


def test_count_degeneracy_ite_doublet():
    res = count_degeneracy_ite(build_tfi(4, 0.0))
    assert res.method == "ite"
    assert res.d_rounded == 2
    assert res.residual < 1e-3
    assert res.converged


def test_count_degeneracy_ite_unique_ground():
    res = count_degeneracy_ite(build_tfi(4, 0.8))
    assert res.d_rounded == 1
    assert res.residual < 1e-2


def test_count_degeneracy_ite_budget():
    with pytest.raises(ResourceBudgetError):
        count_degeneracy_ite(build_tfi(13, 0.2))


def test_convergence_curves_shapes_and_limits():
    qubit, lifted = convergence_curves(build_tfi(3, 0.0), tau_max=30.0, seed=2)
    assert math.isnan(qubit.d_raws()[0])
    assert not np.isnan(lifted.d_raws()).any()
    # both reach their ground energies; the lifted walk reads off D = 2
    assert qubit.energies()[-1] == pytest.approx(-0.5, abs=1e-6)
    assert lifted.energies()[-1] == pytest.approx(-0.5, abs=1e-6)
    assert lifted.d_raws()[-1] == pytest.approx(2.0, abs=1e-3)
    assert qubit.taus()[-1] == pytest.approx(30.0, rel=1e-2)


def test_qite_overlap_tfi_doublet():
    got = qite_overlap_check(build_tfi(4, 0.0), tau=25.0)
    assert got == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-3)


def test_qite_overlap_triple_degeneracy():
    # 8 states, three at the bottom: overlap must settle at 1/sqrt(3)
    energies = np.concatenate([np.zeros(3), np.linspace(1.0, 2.0, 5)])
    got = qite_overlap_check(diagonal_spec(energies), tau=30.0)
    assert got == pytest.approx(1.0 / math.sqrt(3.0), abs=1e-3)


def test_qite_overlap_rejects_complex_models():
    bad = HamiltonianSpec(2, [PauliTerm(0.5, (2, 0))])  # single Y: imaginary
    with pytest.raises(ValueError):
        qite_overlap_check(bad)
