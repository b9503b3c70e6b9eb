"""Lift of qubit Hamiltonians to operator space, and the state encoding.

An operator A on n qubits expands as A = sum_alpha a_alpha O_alpha1 x ... x
O_alphan over the unit-normalized Pauli basis; ``encode_operator`` stores the
coefficients a_alpha as a 4^n state vector on n four-level sites, so
<encode(A)|encode(B)> = Tr(A^dag B).  Replacing every per-site Pauli of a
Hamiltonian by sqrt(2) times its structure matrix yields the lifted
Hamiltonian: the "left" variant satisfies H_lift |A> = |H A>, "right" gives
|A H>, and "averaged" (the production default) is the operator mean of the
two, whose spectrum is the pairwise means of the original one.

The right structure matrix is the elementwise conjugate of the left one, so
expanding the mean over each term's support turns it into a real operator:
with A = Re(sqrt(2) L) and B = Im(sqrt(2) L) per site,

    (x_k (A+iB) + x_k (A-iB)) / 2
        = sum over even-size subsets S of the support of
          (-1)^(|S|/2) * (B on S, A elsewhere).

The averaged lift stores an 8-matrix site table (codes 0-3 -> A, 4-7 -> B)
and the expanded real terms, which keeps every production solver in real
arithmetic.

Evolving the encoded identity to the ground sector leaves encode(P)/sqrt(D)
with P the ground projector, whose overlap with the encoded-identity unit
vector is 2^(-n/2) sqrt(D); degeneracy readout inverts that.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .basis import SQRT2, build_basis, structure_tensor
from .hamiltonian import HamiltonianSpec, PauliTerm

LiftVariant = str  # "left" | "right" | "averaged"


@dataclass
class StateVector:
    """Dense state on n_sites d-level sites, amplitudes in code order."""

    n_sites: int
    local_dim: int
    amps: np.ndarray
    normalized: bool = False

    def __post_init__(self) -> None:
        expected = self.local_dim**self.n_sites
        if self.amps.shape != (expected,):
            raise ValueError(f"amplitude array has shape {self.amps.shape}, expected ({expected},)")

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalize(self) -> "StateVector":
        nrm = self.norm()
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.n_sites, self.local_dim, self.amps / nrm, normalized=True)

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amps, other.amps))


@dataclass
class DegeneracyResult:
    """Outcome of one degeneracy measurement."""

    method: str
    d_raw: float
    d_rounded: int
    residual: float
    overlap: float
    energy: float
    delta_e: float
    tau: float
    converged: bool
    note: str = ""

    @property
    def ambiguous(self) -> bool:
        return self.residual > 0.25


def make_degeneracy_result(
    method: str,
    d_raw: float,
    energy: float,
    delta_e: float,
    tau: float,
    converged: bool,
    overlap: float = 0.0,
    note: str = "",
) -> DegeneracyResult:
    d_rounded = max(int(round(d_raw)), 0)
    return DegeneracyResult(
        method=method,
        d_raw=float(d_raw),
        d_rounded=d_rounded,
        residual=abs(d_raw - d_rounded),
        overlap=float(overlap),
        energy=float(energy),
        delta_e=float(delta_e),
        tau=float(tau),
        converged=converged,
        note=note,
    )


def lifted_site_ops(variant: LiftVariant = "averaged") -> np.ndarray:
    """Per-code 4x4 structure matrices, scaled so code 0 is the identity.

    For "averaged" this is the per-site mean (the A table of the module
    docstring); the full averaged lift also needs the B table, see ``lift``.
    """
    ops = SQRT2 * structure_tensor(variant)
    if variant == "averaged":
        ops = np.ascontiguousarray(ops.real).astype(complex)
    return ops


def lift(spec: HamiltonianSpec, variant: LiftVariant = "averaged") -> HamiltonianSpec:
    """Lift a qubit Hamiltonian to its operator-space image on 4-level sites."""
    if spec.local_dim != 2:
        raise ValueError("only qubit Hamiltonians can be lifted")
    if variant in ("left", "right"):
        return HamiltonianSpec(
            n_sites=spec.n_sites,
            terms=list(spec.terms),
            site_ops=lifted_site_ops(variant),
            geometry=spec.geometry,
        )
    if variant != "averaged":
        raise ValueError(f"unknown lift variant {variant!r}")
    left = SQRT2 * structure_tensor("left")
    site_ops = np.concatenate([left.real, left.imag]).astype(complex)
    terms: list[PauliTerm] = []
    for t in spec.terms:
        support = t.support()
        for size in range(0, len(support) + 1, 2):
            for subset in combinations(support, size):
                codes = tuple(c + 4 if k in subset else c for k, c in enumerate(t.codes))
                sign = (-1) ** (size // 2)
                terms.append(PauliTerm(sign * t.coeff, codes))
    return HamiltonianSpec(
        n_sites=spec.n_sites,
        terms=terms,
        site_ops=site_ops,
        geometry=spec.geometry,
    )


def _encode_site_map() -> np.ndarray:
    """U[alpha, 2p+q] = conj(O_alpha[p, q]); unitary by basis completeness."""
    basis = build_basis().matrices
    return basis.conj().reshape(4, 4)


def encode_operator(op: HamiltonianSpec | np.ndarray, n_sites: int | None = None) -> StateVector:
    """Encode an operator as a 4^n coefficient vector.

    Accepts either a qubit HamiltonianSpec (cheap, term by term) or a dense
    2^n x 2^n matrix.
    """
    if isinstance(op, HamiltonianSpec):
        if op.local_dim != 2:
            raise ValueError("only qubit operators can be encoded")
        n = op.n_sites
        amps = np.zeros(4**n, dtype=complex)
        # each plain Pauli factor contributes sqrt(2) against the unit basis
        weight = SQRT2**n
        for t in op.terms:
            flat = 0
            for c in t.codes:
                flat = flat * 4 + c
            amps[flat] += t.coeff * weight
        return StateVector(n, 4, amps)

    matrix = np.asarray(op, dtype=complex)
    if n_sites is None:
        n_sites = int(round(np.log2(matrix.shape[0])))
    if matrix.shape != (2**n_sites, 2**n_sites):
        raise ValueError(f"matrix shape {matrix.shape} does not match n_sites={n_sites}")
    n = n_sites
    # group row/col indices per site: (p1..pn, q1..qn) -> (p1 q1, p2 q2, ...)
    tensor = matrix.reshape((2,) * (2 * n))
    order = [k for pair in zip(range(n), range(n, 2 * n)) for k in pair]
    tensor = tensor.transpose(order).reshape((4,) * n)
    site_map = _encode_site_map()
    for axis in range(n):
        tensor = np.tensordot(site_map, tensor, axes=([1], [axis]))
        tensor = np.moveaxis(tensor, 0, axis)
    return StateVector(n, 4, tensor.reshape(-1))


def decode_state(state: StateVector) -> np.ndarray:
    """Reconstruct the dense 2^n x 2^n operator from an encoded state."""
    if state.local_dim != 4:
        raise ValueError("decode expects a 4-level encoded state")
    n = state.n_sites
    site_map = _encode_site_map().conj().T  # inverse of the encoding map
    tensor = state.amps.reshape((4,) * n)
    for axis in range(n):
        tensor = np.tensordot(site_map, tensor, axes=([1], [axis]))
        tensor = np.moveaxis(tensor, 0, axis)
    tensor = tensor.reshape((2, 2) * n)
    order = list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2))
    return tensor.transpose(order).reshape(2**n, 2**n)


def vacuum_state(n_sites: int, dtype=complex) -> StateVector:
    """Unit vector along the encoded identity, 2^(-n/2) |identity>."""
    amps = np.zeros(4**n_sites, dtype=dtype)
    amps[0] = 1.0
    return StateVector(n_sites, 4, amps, normalized=True)


def degeneracy_from_overlap(overlap: complex, n_sites: int) -> float:
    """D estimate from the vacuum overlap of a normalized evolved state."""
    return float(2**n_sites * abs(overlap) ** 2)
