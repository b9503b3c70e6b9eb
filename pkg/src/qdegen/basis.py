"""Orthonormal single-site operator basis and its structure tensor.

The basis consists of the four Pauli matrices scaled to unit Hilbert-Schmidt
norm, O_alpha = sigma_alpha / sqrt(2), so that Tr(O_a^dag O_b) = delta_ab.
Products of basis elements close under the structure tensor

    T[alpha, beta, gamma] = Tr(O_beta^dag O_alpha O_gamma)      ("left")

which doubles as the 4x4 matrix representation of left-multiplication by
O_alpha on operator space.  The "right" variant uses Tr(O_beta^dag O_gamma
O_alpha) and represents right-multiplication; "averaged" is their mean and
has purely real entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

SQRT2 = float(np.sqrt(2.0))

# plain Pauli matrices, code order: I, X, Y, Z
PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

CODE_CHARS = "IXYZ"

VARIANTS = ("left", "right", "averaged")


@dataclass(frozen=True)
class OperatorBasis:
    """Normalized operator basis on one site."""

    matrices: np.ndarray  # (size, local_dim, local_dim)

    @property
    def local_dim(self) -> int:
        return self.matrices.shape[-1]

    @property
    def size(self) -> int:
        return self.matrices.shape[0]


def build_basis(local_dim: int = 2) -> OperatorBasis:
    """Return the normalized Pauli basis; only qubit sites are supported."""
    if local_dim != 2:
        raise ValueError(f"unsupported local dimension {local_dim}; only 2 is implemented")
    return OperatorBasis(matrices=PAULI / SQRT2)


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"unknown structure-tensor variant {variant!r}; expected one of {VARIANTS}")


@lru_cache(maxsize=None)
def structure_tensor(variant: str = "left") -> np.ndarray:
    """Structure tensor T[alpha, beta, gamma] for the requested variant.

    Shape (4, 4, 4), complex.  T[alpha] is the matrix acting on expansion
    coefficients: left variant sends coefficients of A to those of O_alpha A,
    right variant to those of A O_alpha.
    """
    _check_variant(variant)
    basis = build_basis().matrices
    if variant == "averaged":
        return (structure_tensor("left") + structure_tensor("right")) / 2.0
    tensor = np.empty((4, 4, 4), dtype=complex)
    for alpha in range(4):
        for beta in range(4):
            for gamma in range(4):
                if variant == "left":
                    prod = basis[beta].conj().T @ basis[alpha] @ basis[gamma]
                else:
                    prod = basis[beta].conj().T @ basis[gamma] @ basis[alpha]
                tensor[alpha, beta, gamma] = np.trace(prod)
    tensor.setflags(write=False)
    return tensor


def structure_entry(variant: str, alpha: int, beta: int, gamma: int) -> complex:
    """Single entry Tr(O_beta^dag O_alpha O_gamma) (or the right/averaged analog)."""
    return complex(structure_tensor(variant)[alpha, beta, gamma])


def multiply_codes(alpha: int, gamma: int) -> list[tuple[int, complex]]:
    """Expansion of the product O_alpha O_gamma in the basis.

    Returns the nonzero (beta, coefficient) pairs; for the Pauli basis there
    is always exactly one.
    """
    column = structure_tensor("left")[alpha, :, gamma]
    return [(int(b), complex(column[b])) for b in np.nonzero(np.abs(column) > 1e-14)[0]]
