"""Imaginary time evolution and the overlap-based degeneracy readout.

Evolution uses first-order Euler steps, v <- normalize((1 - dt H) v).  With
dt * spectral_radius < 0.5 every eigenmode is damped by a positive factor
that decreases monotonically with energy, so the walk converges to the
ground sector without sign flips.  A spectral-decomposition variant is kept
for oracle comparisons at dense-budget sizes.

The overlap readout avoids the exponentially small vacuum amplitude: evolve
a random state |phi> under H and the vacuum under the lifted Hamiltonian,
then map the lifted state back to a 2^n x 2^n matrix M.  For real
Hamiltonians <phi| M |phi> tends to 1/sqrt(D).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .dense import to_dense
from .hamiltonian import HamiltonianSpec, ResourceBudgetError, shift_constant
from .lanczos import make_applier
from .lift import (
    DegeneracyResult,
    StateVector,
    decode_state,
    degeneracy_from_overlap,
    lift,
    make_degeneracy_result,
    vacuum_state,
)

ITE_STATE_BUDGET = 2**24  # amplitudes per evolved state


class IteSample(NamedTuple):
    tau: float
    energy: float
    delta_e: float
    d_raw: float


@dataclass
class ItePath:
    """Evolution trace: (tau, energy, delta_e, d_raw) samples, tau increasing."""

    samples: list[IteSample]

    def __post_init__(self) -> None:
        taus = [s.tau for s in self.samples]
        if any(b <= a for a, b in zip(taus, taus[1:])):
            raise ValueError("tau samples must be strictly increasing")

    def taus(self) -> np.ndarray:
        return np.array([s.tau for s in self.samples])

    def energies(self) -> np.ndarray:
        return np.array([s.energy for s in self.samples])

    def delta_es(self) -> np.ndarray:
        return np.array([s.delta_e for s in self.samples])

    def d_raws(self) -> np.ndarray:
        return np.array([s.d_raw for s in self.samples])


def default_dt(spec: HamiltonianSpec) -> float:
    """Step size 1e-3 over the additive spectral-radius bound."""
    return 1e-3 / max(shift_constant(spec), 1e-30)


def _check_step(dt: float, radius: float) -> None:
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if dt * radius >= 0.5:
        raise ValueError(
            f"dt={dt:g} too large for spectral radius bound {radius:g}:"
            " need dt * radius < 0.5"
        )


def ite_evolve(
    spec: HamiltonianSpec,
    v0: StateVector,
    dt: float | None = None,
    steps: int = 1000,
    method: str = "euler",
) -> StateVector:
    """Approximate exp(-steps*dt*H) v0, normalized.

    method "euler" runs matrix-free first-order steps; "spectral" densely
    diagonalizes once and applies the exact propagator, for use as an
    oracle at small sizes.
    """
    if not spec.is_hermitian():
        raise ValueError("imaginary time evolution needs a Hermitian Hamiltonian")
    if spec.n_sites != v0.n_sites or spec.local_dim != v0.local_dim:
        raise ValueError("state shape does not match the Hamiltonian")
    radius = shift_constant(spec)
    if dt is None:
        dt = 1e-3 / max(radius, 1e-30)
    _check_step(dt, radius)
    if steps < 0:
        raise ValueError("steps must be non-negative")

    if method == "euler":
        v = v0.normalize().amps
        if spec.is_real_valued() and not np.iscomplexobj(v0.amps):
            v = v.astype(np.float64, copy=True)
        apply = make_applier(spec)
        for _ in range(steps):
            v = v - dt * apply(v)
            v /= np.linalg.norm(v)
        return StateVector(spec.n_sites, spec.local_dim, v, normalized=True)

    if method == "spectral":
        hmat = to_dense(spec)
        evals, evecs = np.linalg.eigh(hmat)
        coef = evecs.conj().T @ v0.normalize().amps
        # shift by the ground energy so the exponentials stay representable
        coef = coef * np.exp(-dt * steps * (evals - evals[0]))
        v = evecs @ coef
        v /= np.linalg.norm(v)
        return StateVector(spec.n_sites, spec.local_dim, v, normalized=True)

    raise ValueError(f"unknown evolution method {method!r}")


def _euler_path(
    apply,
    v: np.ndarray,
    dt: float,
    steps: int,
    sample_every: int,
    n_sites: int,
    read_d_raw: bool,
) -> ItePath:
    samples: list[IteSample] = []

    def record(step: int, hv: np.ndarray) -> None:
        e = float(np.vdot(v, hv).real)
        var = float(np.vdot(hv, hv).real) - e * e
        d = degeneracy_from_overlap(v[0], n_sites) if read_d_raw else math.nan
        samples.append(IteSample(step * dt, e, math.sqrt(max(var, 0.0)), d))

    hv = apply(v)
    record(0, hv)
    for step in range(1, steps + 1):
        v -= dt * hv
        v /= np.linalg.norm(v)
        hv = apply(v)
        if step % sample_every == 0 or step == steps:
            record(step, hv)
    return ItePath(samples)


def convergence_curves(
    spec: HamiltonianSpec,
    dt: float | None = None,
    tau_max: float = 10.0,
    variant: str = "averaged",
    seed: int = 0,
    sample_every: int = 10,
) -> tuple[ItePath, ItePath]:
    """Paired evolution traces for H and its lift.

    The first path evolves a seeded random real state under the plain
    Hamiltonian (d_raw is NaN there, the readout has no meaning); the
    second evolves the vacuum under the lifted Hamiltonian.  Both use the
    same dt so the curves are comparable; the lifted spectrum lies inside
    the qubit range, so one stability bound covers both.
    """
    if spec.local_dim != 2:
        raise ValueError("convergence_curves compares a qubit model to its lift")
    if not spec.is_hermitian():
        raise ValueError("imaginary time evolution needs a Hermitian Hamiltonian")
    n = spec.n_sites
    if 4**n > ITE_STATE_BUDGET:
        raise ResourceBudgetError(f"lifted state at n={n} exceeds the dense budget")
    radius = shift_constant(spec)
    if dt is None:
        dt = 1e-3 / max(radius, 1e-30)
    _check_step(dt, radius)
    steps = max(int(round(tau_max / dt)), 1)

    rng = np.random.default_rng(seed)
    phi = rng.standard_normal(2**n)
    phi /= np.linalg.norm(phi)
    if not spec.is_real_valued():
        phi = phi.astype(complex)
    qubit_path = _euler_path(
        make_applier(spec), phi, dt, steps, sample_every, n, read_d_raw=False
    )

    lifted = lift(spec, variant)
    dtype = np.float64 if lifted.is_real_valued() else complex
    psi = vacuum_state(n, dtype=dtype).amps
    lifted_path = _euler_path(
        make_applier(lifted), psi, dt, steps, sample_every, n, read_d_raw=True
    )
    return qubit_path, lifted_path


def count_degeneracy_ite(
    spec: HamiltonianSpec,
    dt: float | None = None,
    conv_tol: float = 1e-10,
    max_tau: float | None = None,
    variant: str = "averaged",
    sample_every: int = 10,
) -> DegeneracyResult:
    """Degeneracy via imaginary-time evolution of the vacuum under the lift.

    Stops once the relative energy change between samples stays below
    conv_tol for five consecutive samples, or at max_tau (default 100
    damping times of the spectral-radius bound).
    """
    if spec.local_dim != 2:
        raise ValueError("count_degeneracy_ite expects a qubit Hamiltonian")
    if not spec.is_hermitian():
        raise ValueError("imaginary time evolution needs a Hermitian Hamiltonian")
    n = spec.n_sites
    if 4**n > ITE_STATE_BUDGET:
        raise ResourceBudgetError(f"lifted state at n={n} exceeds the dense budget")
    radius = shift_constant(spec)
    if dt is None:
        dt = 1e-3 / max(radius, 1e-30)
    _check_step(dt, radius)
    if max_tau is None:
        max_tau = 100.0 / max(radius, 1e-30)

    lifted = lift(spec, variant)
    apply = make_applier(lifted)
    dtype = np.float64 if lifted.is_real_valued() else complex
    v = vacuum_state(n, dtype=dtype).amps
    steps = max(int(round(max_tau / dt)), 1)

    prev_e: float | None = None
    stable = 0
    converged = False
    energy = 0.0
    var = 0.0
    step = 0
    hv = apply(v)
    for step in range(1, steps + 1):
        v -= dt * hv
        v /= np.linalg.norm(v)
        hv = apply(v)
        if step % sample_every == 0 or step == steps:
            energy = float(np.vdot(v, hv).real)
            var = float(np.vdot(hv, hv).real) - energy * energy
            if prev_e is not None:
                rel = abs(energy - prev_e) / max(abs(prev_e), 1e-12)
                stable = stable + 1 if rel < conv_tol else 0
            prev_e = energy
            if stable >= 5:
                converged = True
                break
    overlap = abs(complex(v[0]))
    return make_degeneracy_result(
        method="ite",
        d_raw=degeneracy_from_overlap(overlap, n),
        energy=energy,
        delta_e=math.sqrt(max(var, 0.0)),
        tau=step * dt,
        converged=converged,
        overlap=overlap,
    )


def qite_overlap_check(
    spec: HamiltonianSpec,
    dt: float | None = None,
    tau: float = 10.0,
    variant: str = "averaged",
    seed: int = 0,
    method: str = "euler",
) -> float:
    """Doubled-register degeneracy readout, expected to approach 1/sqrt(D).

    Evolves |phi> from a seeded random real state under H and the vacuum
    under lift(H), decodes the lifted state back to a matrix M, and returns
    <phi| M |phi>.  Only real Hamiltonians are supported; the readout
    identity assumes real states.
    """
    if spec.local_dim != 2:
        raise ValueError("the overlap readout is defined for qubit Hamiltonians")
    if not spec.is_hermitian():
        raise ValueError("imaginary time evolution needs a Hermitian Hamiltonian")
    if not spec.is_real_valued():
        raise ValueError(
            "complex Hamiltonians are not supported: the overlap readout"
            " assumes real ground states"
        )
    n = spec.n_sites
    if 4**n > ITE_STATE_BUDGET:
        raise ResourceBudgetError(f"lifted state at n={n} exceeds the dense budget")
    radius = shift_constant(spec)
    if dt is None:
        dt = 1e-3 / max(radius, 1e-30)
    _check_step(dt, radius)
    steps = max(int(round(tau / dt)), 1)

    rng = np.random.default_rng(seed)
    phi0 = rng.standard_normal(2**n)
    phi0 /= np.linalg.norm(phi0)
    phi = ite_evolve(
        spec, StateVector(n, 2, phi0, normalized=True), dt, steps, method
    ).amps

    lifted = lift(spec, variant)
    psi0 = vacuum_state(n, dtype=np.float64 if lifted.is_real_valued() else complex)
    psi = ite_evolve(lifted, psi0, dt, steps, method)

    matrix = decode_state(psi)
    value = complex(phi.conj() @ matrix @ phi)
    return float(value.real)
