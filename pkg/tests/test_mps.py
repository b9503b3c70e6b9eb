"""MPO construction, MPS evolution, and the chain degeneracy readout."""

import numpy as np
import pytest

from qdegen.dense import to_dense
from qdegen.hamiltonian import (
    HamiltonianSpec,
    PauliTerm,
    build_tfi,
    random_two_local,
    shift_constant,
)
from qdegen.lift import lift, vacuum_state
from qdegen.mps import (
    EvolutionFailure,
    PowerConfig,
    apply_and_truncate,
    count_degeneracy_mps,
    degeneracy_readout_mps,
    expectation,
    expectation_squared,
    identity_product_mps,
    mpo_from_spec,
    pinned_magnetization,
    power_iterate,
    product_mps,
    resolution_experiment,
    shifted_spec,
)


def _random_product(rng, n, d):
    vecs = [rng.normal(size=d) + 1j * rng.normal(size=d) for _ in range(n)]
    return product_mps(vecs)


def test_power_config_validation():
    with pytest.raises(ValueError):
        PowerConfig(chi_max=0)
    with pytest.raises(ValueError):
        PowerConfig(svd_cutoff=1.5)
    with pytest.raises(ValueError):
        PowerConfig(max_steps=0)


def test_mpo_matches_dense_qubit_and_lifted():
    for spec in (build_tfi(4, 0.3, 0.1), lift(build_tfi(4, 0.3, 0.1), "averaged")):
        op = mpo_from_spec(spec)
        assert np.abs(op.to_dense() - to_dense(spec)).max() < 1e-10


def test_mpo_matches_dense_random_complex():
    rng = np.random.default_rng(61)
    spec = random_two_local(4, rng)
    op = mpo_from_spec(spec)
    assert np.abs(op.to_dense() - to_dense(spec)).max() < 1e-10


def test_mpo_constant_term_on_identity_string():
    spec = shifted_spec(build_tfi(3, 0.4), 2.5)  # 2.5 I - H
    got = mpo_from_spec(spec).to_dense()
    want = 2.5 * np.eye(8) - to_dense(build_tfi(3, 0.4))
    assert np.abs(got - want).max() < 1e-12


def test_mpo_bond_dims_stay_small():
    ident = HamiltonianSpec(3, [PauliTerm(1.0, (0, 0, 0))])
    assert all(w.shape[1] == 1 for w in mpo_from_spec(ident).tensors[:-1])
    qubit = mpo_from_spec(build_tfi(6, 0.5))
    assert max(w.shape[1] for w in qubit.tensors) == 3
    lifted = mpo_from_spec(lift(build_tfi(6, 0.5), "averaged"))
    assert max(w.shape[1] for w in lifted.tensors) == 4


def test_mpo_bond_budget():
    # star couplings from site 0 need one channel per partner
    terms = [PauliTerm(1.0, tuple(3 if k in (0, j) else 0 for k in range(12))) for j in range(1, 12)]
    spec = HamiltonianSpec(12, terms)
    with pytest.raises(ValueError):
        mpo_from_spec(spec, bond_budget=8)


def test_product_state_norm_and_dense():
    rng = np.random.default_rng(62)
    vecs = [rng.normal(size=4) + 1j * rng.normal(size=4) for _ in range(3)]
    state = product_mps(vecs)
    want = 1.0
    for v in vecs:
        want *= np.linalg.norm(v)
    assert state.norm() == pytest.approx(want, rel=1e-12)
    dense = state.to_dense()
    ref = np.kron(np.kron(vecs[0], vecs[1]), vecs[2])
    assert np.allclose(dense, ref, atol=1e-12)


def test_identity_product_is_vacuum_direction():
    state = identity_product_mps(3).normalize()
    assert np.allclose(state.to_dense(), vacuum_state(3).amps, atol=1e-14)


def test_canonical_forms_are_isometries():
    rng = np.random.default_rng(63)
    state = _random_product(rng, 4, 4)
    left = state.canonicalize("left")
    for t in left.tensors:
        l, p, r = t.shape
        m = t.reshape(l * p, r)
        assert np.abs(m.conj().T @ m - np.eye(r)).max() < 1e-10 or t is left.tensors[-1]
    right = state.canonicalize("right")
    for t in right.tensors[1:]:
        l, p, r = t.shape
        m = t.transpose(1, 2, 0).reshape(p * r, l)
        assert np.abs(m.conj().T @ m - np.eye(l)).max() < 1e-10


def test_expectation_matches_dense():
    rng = np.random.default_rng(64)
    spec = random_two_local(4, rng)
    op = mpo_from_spec(spec)
    state = _random_product(rng, 4, 2).normalize()
    v = state.to_dense()
    mat = to_dense(spec)
    want = v.conj() @ mat @ v
    assert abs(expectation(state, op) - want) < 1e-10
    want2 = v.conj() @ mat @ mat @ v
    assert abs(expectation_squared(state, op) - want2) < 1e-9


def test_apply_is_exact_without_truncation():
    spec = lift(build_tfi(4, 0.3), "averaged")
    op = mpo_from_spec(shifted_spec(spec, shift_constant(spec)))
    state = identity_product_mps(4)
    out, discarded = apply_and_truncate(op, state, PowerConfig(chi_max=256, svd_cutoff=0.0))
    assert discarded == 0.0
    ref = op.to_dense() @ state.to_dense()
    ref /= np.linalg.norm(ref)
    fidelity = abs(np.vdot(out.to_dense(), ref))
    assert fidelity > 1.0 - 1e-12


def test_zero_operator_raises_evolution_failure():
    zero = HamiltonianSpec(3, [])  # qubit sites, so the state must match
    op = mpo_from_spec(zero)
    with pytest.raises(EvolutionFailure):
        apply_and_truncate(op, identity_product_mps(3, local_dim=2), PowerConfig())


def test_power_matches_dense_power_iteration():
    """Untruncated MPS power steps track the dense shifted iteration."""
    qubit = build_tfi(4, 0.3)
    e0 = shift_constant(qubit)
    lifted = lift(qubit, "averaged")
    cfg = PowerConfig(chi_max=256, svd_cutoff=0.0, e0=e0, max_steps=40, conv_tol=1e-30)
    run = power_iterate(lifted, cfg)
    assert run.steps == 40

    mat = e0 * np.eye(256) - to_dense(lifted)
    v = vacuum_state(4, dtype=np.float64).amps.copy()
    for _ in range(40):
        v = mat @ v
        v /= np.linalg.norm(v)
    fidelity = abs(np.vdot(run.state.to_dense(), v))
    assert fidelity > 1.0 - 1e-10


def test_readout_equals_dense_formula():
    rng = np.random.default_rng(65)
    state = _random_product(rng, 3, 4).normalize()
    dense = state.to_dense()
    want = 2.0**3 * abs(dense[0]) ** 2
    assert degeneracy_readout_mps(state) == pytest.approx(want, rel=1e-12)


def test_count_degeneracy_mps_toys():
    res = count_degeneracy_mps(build_tfi(6, 0.0))
    assert res.method == "power-mps"
    assert res.d_rounded == 2
    assert res.residual < 1e-3  # linear-rate bias at the default tolerance
    one = count_degeneracy_mps(build_tfi(6, 0.8))
    assert one.d_rounded == 1
    assert one.residual < 1e-3


def test_pinned_magnetization_follows_the_pin():
    spec = build_tfi(4, 0.1)
    up = pinned_magnetization(spec, -0.2)
    down = pinned_magnetization(spec, 0.2)
    assert up > 0.4
    assert down < -0.4


def test_resolution_experiment_brackets_the_splitting():
    cfg = PowerConfig(chi_max=8, conv_tol=1e-6, max_steps=1500)
    rows = resolution_experiment(6, [1e-7, 1e-1], cfg=cfg)
    assert rows[0].splitting == pytest.approx(6e-7)
    assert round(rows[0].d_raw) == 2  # splitting hides below delta_e
    assert round(rows[-1].d_raw) == 1  # splitting resolved
    assert rows[0].splitting_over_delta_e < 1.0 < rows[-1].splitting_over_delta_e
