"""Exact-diagonalization reference path.

Everything here is oracle machinery for small systems: dense matrices,
full spectra, ground projectors, and the correspondence checks between a
Hamiltonian and its operator-space lift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import HamiltonianSpec, ResourceBudgetError, shift_constant
from .lift import StateVector, encode_operator, lift, vacuum_state

DENSE_ENTRY_BUDGET = 2**24  # matrix entries, i.e. dimension <= 4096


def default_degeneracy_tol(spectral_radius: float) -> float:
    return max(1e-9, 1e-12 * spectral_radius)


@dataclass
class SpectrumReport:
    eigenvalues: np.ndarray
    ground_energy: float
    degeneracy: int
    tol: float


def to_dense(spec: HamiltonianSpec, budget_entries: int = DENSE_ENTRY_BUDGET) -> np.ndarray:
    """Materialize the full matrix; refuses when dim^2 exceeds the budget."""
    dim = spec.local_dim**spec.n_sites
    if dim * dim > budget_entries:
        raise ResourceBudgetError(
            f"dense matrix needs {dim}^2 entries, over the budget of {budget_entries};"
            " use the matrix-free or MPS paths instead"
        )
    out = np.zeros((dim, dim), dtype=complex)
    for t in spec.terms:
        acc = np.array([[t.coeff]], dtype=complex)
        for c in t.codes:
            acc = np.kron(acc, spec.site_ops[c])
        out += acc
    if spec.is_real_valued() and np.abs(out.imag).max() < 1e-14:
        return np.ascontiguousarray(out.real)
    return out


def _as_matrix(obj: HamiltonianSpec | np.ndarray) -> np.ndarray:
    return to_dense(obj) if isinstance(obj, HamiltonianSpec) else np.asarray(obj)


def full_spectrum(obj: HamiltonianSpec | np.ndarray, tol: float | None = None) -> SpectrumReport:
    """Eigenvalues plus the ground multiplicity.

    Degeneracy counts every eigenvalue within ``tol`` of the lowest, so a
    cluster straddling the tolerance boundary is counted whole; tol is an
    instrument parameter, not a claim about exact degeneracy.
    """
    eigs = np.linalg.eigvalsh(_as_matrix(obj))
    if tol is None:
        tol = default_degeneracy_tol(float(np.abs(eigs).max(initial=0.0)))
    degeneracy = int(np.sum(eigs <= eigs[0] + tol))
    return SpectrumReport(eigenvalues=eigs, ground_energy=float(eigs[0]), degeneracy=degeneracy, tol=tol)


def ground_projector(obj: HamiltonianSpec | np.ndarray, tol: float | None = None) -> tuple[np.ndarray, SpectrumReport]:
    """Projector onto the ground space, plus the spectrum report."""
    matrix = _as_matrix(obj)
    eigs, vecs = np.linalg.eigh(matrix)
    if tol is None:
        tol = default_degeneracy_tol(float(np.abs(eigs).max(initial=0.0)))
    d = int(np.sum(eigs <= eigs[0] + tol))
    ground = vecs[:, :d]
    proj = ground @ ground.conj().T
    report = SpectrumReport(eigenvalues=eigs, ground_energy=float(eigs[0]), degeneracy=d, tol=tol)
    return proj, report


def correspondence_check(spec: HamiltonianSpec, variant: str = "left", tol: float = 1e-8) -> dict:
    """Compare the lifted spectrum against the qubit spectrum.

    Left/right lifts reproduce the spectrum with every multiplicity scaled by
    2^n; the averaged lift's spectrum is the multiset of pairwise means.
    """
    base = np.linalg.eigvalsh(to_dense(spec))
    lifted = np.linalg.eigvalsh(to_dense(lift(spec, variant)))
    if variant in ("left", "right"):
        expected = np.sort(np.repeat(base, 2**spec.n_sites))
    else:
        expected = np.sort((base[:, None] + base[None, :]).ravel() / 2.0)
    worst = float(np.abs(np.sort(lifted) - expected).max())
    return {"variant": variant, "passed": bool(worst < tol), "max_deviation": worst}


def evolution_limit_check(spec: HamiltonianSpec, variant: str = "averaged", tol: float = 1e-9) -> dict:
    """Verify the evolution fixed point from the encoded identity.

    Projecting the vacuum (encoded identity) onto the ground eigenspace of
    the lifted Hamiltonian and normalizing must reproduce
    encode(P_ground)/sqrt(D) exactly.
    """
    proj, report = ground_projector(spec)
    reference = encode_operator(proj).amps / np.sqrt(report.degeneracy)

    lifted = to_dense(lift(spec, variant))
    eigs, vecs = np.linalg.eigh(lifted)
    sector_tol = default_degeneracy_tol(float(np.abs(eigs).max(initial=0.0)))
    sector = vecs[:, eigs <= eigs[0] + sector_tol]
    vac = vacuum_state(spec.n_sites).amps
    projected = sector @ (sector.conj().T @ vac)
    projected = projected / np.linalg.norm(projected)
    deviation = float(np.linalg.norm(projected - reference))
    return {"variant": variant, "passed": bool(deviation < tol), "deviation": deviation}


def count_degeneracy_dense(spec: HamiltonianSpec, tol: float | None = None):
    """Oracle degeneracy count, packaged like the solver results."""
    from .lift import make_degeneracy_result

    report = full_spectrum(spec, tol=tol)
    overlap = np.sqrt(report.degeneracy / 2.0**spec.n_sites)
    return make_degeneracy_result(
        method="dense",
        d_raw=float(report.degeneracy),
        energy=report.ground_energy,
        delta_e=0.0,
        tau=0.0,
        converged=True,
        overlap=float(overlap),
    )
