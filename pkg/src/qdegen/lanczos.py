"""Thick-restart Lanczos ground-state search and the degeneracy readout.

The solver keeps a bounded orthonormal basis (``ndim`` vectors).  Each
iteration applies H to the newest basis vector, completes the projected
matrix h = V^dag H V, orthogonalizes the image against the whole basis
(two Gram-Schmidt passes), and, once the basis is full, diagonalizes h,
rotates the basis onto the Ritz vectors, and replaces the highest one with
the fresh direction.  There are no random restarts: if the fresh direction
vanishes the Krylov space is exhausted (an invariant subspace), which for
this problem class is the normal exact-convergence exit at small n.

Used on a lifted Hamiltonian with the encoded identity as the start vector,
the Krylov space is spanned by encodings of polynomials of H, so the method
converges to encode(P_ground)/sqrt(D) and the first amplitude of the result
is the degeneracy readout 2^(-n/2) sqrt(D).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .hamiltonian import HamiltonianSpec, ResourceBudgetError, shift_constant
from .lift import DegeneracyResult, StateVector, lift, make_degeneracy_result, vacuum_state

BREAKDOWN_TOL = 1e-13
DEFAULT_MEMORY_BUDGET = 4 * 2**30  # bytes


@dataclass
class LanczosConfig:
    ndim: int = 20
    maxiter: int = 400
    conv_tol: float | None = None  # absolute; defaults to 1e-10 * energy scale
    conv_window: int = 3
    track_delta_e: bool = False

    def __post_init__(self) -> None:
        if self.ndim < 2:
            raise ValueError("ndim must be at least 2")
        if self.maxiter <= self.ndim:
            raise ValueError("maxiter must exceed ndim")


@dataclass
class LanczosResult:
    energy: float
    vector: np.ndarray
    delta_e: float
    iterations: int
    converged: bool
    invariant_subspace: bool
    energy_history: list[float] = field(default_factory=list)
    delta_e_history: list[float] = field(default_factory=list)


def make_applier(spec: HamiltonianSpec) -> Callable[[np.ndarray], np.ndarray]:
    """Matrix-free H application on flat state arrays.

    Terms sharing a support are merged into one small dense block, applied by
    tensor contraction over the support axes.
    """
    d, n = spec.local_dim, spec.n_sites
    groups: dict[tuple[int, ...], np.ndarray] = {}
    constant = 0.0 + 0.0j
    for t in spec.terms:
        sites = t.support()
        if not sites:
            constant += t.coeff
            continue
        block = np.array([[t.coeff]], dtype=complex)
        for k in sites:
            block = np.kron(block, spec.site_ops[t.codes[k]])
        key = sites
        groups[key] = groups.get(key, 0.0) + block
    compiled = []
    for sites, block in groups.items():
        k = len(sites)
        if np.abs(block.imag).max() < 1e-14:
            block = np.ascontiguousarray(block.real)
        compiled.append((sites, block.reshape((d,) * (2 * k))))

    def apply(v: np.ndarray) -> np.ndarray:
        tensor = v.reshape((d,) * n)
        out = constant * tensor if constant != 0.0 else np.zeros_like(tensor)
        if out.dtype != tensor.dtype and constant == 0.0:
            out = out.astype(tensor.dtype)
        for sites, block in compiled:
            k = len(sites)
            contracted = np.tensordot(block, tensor, axes=(tuple(range(k, 2 * k)), sites))
            out = out + np.moveaxis(contracted, tuple(range(k)), sites)
        return out.reshape(-1)

    return apply


def apply_hamiltonian(spec: HamiltonianSpec, state: StateVector | np.ndarray) -> StateVector | np.ndarray:
    """One-shot H|v>; builds a fresh applier, so prefer make_applier in loops."""
    apply = make_applier(spec)
    if isinstance(state, StateVector):
        if state.local_dim != spec.local_dim or state.n_sites != spec.n_sites:
            raise ValueError("state does not match the Hamiltonian's site structure")
        return StateVector(state.n_sites, state.local_dim, apply(state.amps))
    return apply(np.asarray(state))


def lanczos_ground(
    apply: Callable[[np.ndarray], np.ndarray],
    v0: np.ndarray,
    config: LanczosConfig | None = None,
) -> LanczosResult:
    """Run the restarted iteration from ``v0``; see the module docstring."""
    cfg = config or LanczosConfig()
    v = np.asarray(v0)
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        raise ValueError("start vector is zero")
    v = v / nrm
    probe = apply(v)
    dtype = np.result_type(v.dtype, probe.dtype)
    basis = np.empty((v.size, cfg.ndim), dtype=dtype)
    basis[:, 0] = v
    k = 1
    h = np.zeros((cfg.ndim, cfg.ndim), dtype=dtype)

    energy_hist: list[float] = []
    delta_hist: list[float] = []
    prev_e: float | None = None
    stable = 0
    pending: np.ndarray | None = probe  # H applied to the newest basis vector
    iterations = 0
    converged = False
    invariant = False
    ritz_vec = np.array(basis[:, 0])
    ritz_energy = float(np.vdot(basis[:, 0], probe).real)

    for iterations in range(1, cfg.maxiter + 1):
        w = pending if pending is not None else apply(basis[:, k - 1])
        pending = None
        active = basis[:, :k]
        # complete h for the newest column
        col = active.conj().T @ w
        h[:k, k - 1] = col
        h[k - 1, :k] = col.conj()

        # blocked Gram-Schmidt, two passes; the first reuses the h column
        w_perp = w - active @ col
        w_perp -= active @ (active.conj().T @ w_perp)
        w_norm = float(np.linalg.norm(w_perp))
        breakdown = w_norm < BREAKDOWN_TOL * max(1.0, float(np.linalg.norm(w)))

        if k == cfg.ndim or breakdown:
            eigs, rot = np.linalg.eigh(h[:k, :k])
            ritz = active @ rot
            ritz_energy = float(eigs[0])
            ritz_vec = np.ascontiguousarray(ritz[:, 0])
            energy_hist.append(ritz_energy)
            if cfg.track_delta_e:
                hv = apply(ritz_vec)
                var = float(np.vdot(hv, hv).real - ritz_energy**2)
                delta_hist.append(float(np.sqrt(max(var, 0.0))))
            tol = cfg.conv_tol if cfg.conv_tol is not None else 1e-10 * max(1.0, abs(ritz_energy))
            if prev_e is not None and abs(ritz_energy - prev_e) < tol:
                stable += 1
            else:
                stable = 0
            prev_e = ritz_energy
            if breakdown:
                invariant = True
                converged = True
                break
            if stable >= cfg.conv_window:
                converged = True
                break
            # thick restart: keep rotated Ritz vectors, swap the top one out
            basis[:, : k - 1] = ritz[:, : k - 1]
            basis[:, k - 1] = w_perp / w_norm
            h[:, :] = 0.0
            h[: k - 1, : k - 1] = np.diag(eigs[: k - 1]).astype(dtype)
        else:
            basis[:, k] = w_perp / w_norm
            k += 1

    delta_e = delta_hist[-1] if delta_hist else _variance_energy(apply, ritz_vec, ritz_energy)
    return LanczosResult(
        energy=ritz_energy,
        vector=ritz_vec,
        delta_e=delta_e,
        iterations=iterations,
        converged=converged,
        invariant_subspace=invariant,
        energy_history=energy_hist,
        delta_e_history=delta_hist,
    )


def _variance_energy(apply, vec: np.ndarray, energy: float) -> float:
    hv = apply(vec)
    var = float(np.vdot(hv, hv).real - energy**2)
    return float(np.sqrt(max(var, 0.0)))


def count_degeneracy_lanczos(
    spec: HamiltonianSpec,
    config: LanczosConfig | None = None,
    variant: str = "averaged",
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> DegeneracyResult:
    """Ground-state degeneracy of a qubit Hamiltonian via Lanczos on the lift."""
    cfg = config or LanczosConfig()
    lifted = lift(spec, variant)
    n = spec.n_sites
    dim = 4**n
    itemsize = 8 if lifted.is_real_valued() else 16
    needed = (2 * cfg.ndim + 4) * dim * itemsize
    if needed > memory_budget:
        raise ResourceBudgetError(
            f"lanczos at n={n} needs about {needed / 2**30:.1f} GiB for the basis,"
            f" over the budget of {memory_budget / 2**30:.1f} GiB"
        )
    if cfg.conv_tol is None:
        cfg = LanczosConfig(
            ndim=cfg.ndim,
            maxiter=cfg.maxiter,
            conv_tol=1e-10 * max(1.0, shift_constant(spec)),
            conv_window=cfg.conv_window,
            track_delta_e=cfg.track_delta_e,
        )
    dtype = np.float64 if lifted.is_real_valued() else complex
    v0 = vacuum_state(n, dtype=dtype).amps
    result = lanczos_ground(make_applier(lifted), v0, cfg)
    overlap = abs(complex(result.vector[0]))
    d_raw = 2**n * overlap**2
    return make_degeneracy_result(
        method="lanczos",
        d_raw=d_raw,
        energy=result.energy,
        delta_e=result.delta_e,
        tau=float(result.iterations),
        converged=result.converged,
        overlap=overlap,
        note="invariant subspace reached" if result.invariant_subspace else "",
    )
