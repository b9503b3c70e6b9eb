"""k-local Hamiltonians as weighted Pauli strings, plus the benchmark models.

A Hamiltonian is a list of terms ``coeff * P_1 x P_2 x ... x P_n`` where each
P is a plain (unnormalized) Pauli matrix selected by a 2-bit code per site
(0=I, 1=X, 2=Y, 3=Z).  Coefficients are in energy units and multiply the
plain string, so they stay independent of chain length; conversions to the
unit-normalized basis happen inside the operator-space lift.

Text file format (one term per line, '#' starts a comment):

    coeff_re coeff_im code_string

e.g. ``-0.25 0.0 ZZI`` for -1/4 * sigma_z sigma_z on sites 0,1 of a 3-site
chain.  All code strings in a file must have equal length.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .basis import CODE_CHARS, PAULI

HERMITIAN_TOL = 1e-12


class HamiltonianFormatError(ValueError):
    """Malformed Hamiltonian file."""


class ResourceBudgetError(RuntimeError):
    """A requested computation exceeds its size or memory budget."""


@dataclass(frozen=True)
class PauliTerm:
    """One weighted Pauli string; ``codes`` has one entry per site."""

    coeff: complex
    codes: tuple[int, ...]

    def support(self) -> tuple[int, ...]:
        return tuple(k for k, c in enumerate(self.codes) if c != 0)


@dataclass
class HamiltonianSpec:
    """Sum of Pauli-string terms on ``n_sites`` sites.

    ``site_ops[c]`` is the matrix a code c selects on one site.  Qubit specs
    use the plain Paulis; lifted specs carry 4x4 structure matrices instead
    and are produced by :func:`qdegen.lift.lift`.
    """

    n_sites: int
    terms: list[PauliTerm]
    site_ops: np.ndarray = field(default_factory=lambda: PAULI.copy())
    geometry: list[tuple[int, int]] | None = None

    def __post_init__(self) -> None:
        if self.n_sites < 1:
            raise ValueError("n_sites must be >= 1")
        for t in self.terms:
            if len(t.codes) != self.n_sites:
                raise ValueError(f"term {t} has {len(t.codes)} codes, expected {self.n_sites}")
            if any(not 0 <= c < len(self.site_ops) for c in t.codes):
                raise ValueError(f"term {t} uses a code outside the operator table")

    @property
    def local_dim(self) -> int:
        return self.site_ops.shape[-1]

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        # every Hermitian-basis string is Hermitian, so only coefficients matter
        return all(abs(t.coeff.imag) <= tol for t in self.terms)

    def is_real_valued(self, tol: float = HERMITIAN_TOL) -> bool:
        """True when the full matrix is real (real coeffs, real site matrices)."""
        if not all(abs(t.coeff.imag) <= tol for t in self.terms):
            return False
        if np.abs(self.site_ops.imag).max() <= tol:
            return True
        # plain Paulis: sigma_y is imaginary, so each string is real iff it
        # holds an even number of Y factors
        if self.local_dim == 2:
            return all(sum(1 for c in t.codes if c == 2) % 2 == 0 for t in self.terms)
        return False


def pack_codes(codes: tuple[int, ...]) -> int:
    """Pack a code string into one integer key, 2 bits per site."""
    key = 0
    for k, c in enumerate(codes):
        key |= c << (2 * k)
    return key


def simplify(spec: HamiltonianSpec, tol: float = 1e-14) -> HamiltonianSpec:
    """Merge duplicate code strings and drop negligible terms."""
    acc: dict[int, tuple[tuple[int, ...], complex]] = {}
    for t in spec.terms:
        key = pack_codes(t.codes)
        prev = acc.get(key)
        acc[key] = (t.codes, t.coeff + (prev[1] if prev else 0.0))
    scale = max((abs(c) for _, c in acc.values()), default=0.0)
    terms = [PauliTerm(c, codes) for codes, c in acc.values() if abs(c) > tol * max(scale, 1.0)]
    return HamiltonianSpec(spec.n_sites, terms, site_ops=spec.site_ops, geometry=spec.geometry)


def shift_constant(spec: HamiltonianSpec) -> float:
    """Upper bound on the largest eigenvalue: sum of per-term operator norms.

    Each term contributes |coeff| times the spectral norm of its non-identity
    factor product (1 for plain Pauli strings).
    """
    total = 0.0
    for t in spec.terms:
        norm = 1.0
        for k in t.support():
            norm *= float(np.linalg.norm(spec.site_ops[t.codes[k]], 2))
        total += abs(t.coeff) * norm
    return total


def _string_term(n: int, coeff: float | complex, placed: dict[int, int]) -> PauliTerm:
    codes = [0] * n
    for site, code in placed.items():
        codes[site] = code
    return PauliTerm(complex(coeff), tuple(codes))


def build_tfi(n: int, bx: float, bz: float = 0.0) -> HamiltonianSpec:
    """Open transverse-field Ising chain, spin-1/2 convention S = sigma/2:

        H = -sum_i S^z_i S^z_{i+1} + bx sum_i S^x_i + bz sum_i S^z_i
    """
    if n < 2:
        raise ValueError("chain needs at least 2 sites")
    terms = [_string_term(n, -0.25, {i: 3, i + 1: 3}) for i in range(n - 1)]
    if bx != 0.0:
        terms += [_string_term(n, 0.5 * bx, {i: 1}) for i in range(n)]
    if bz != 0.0:
        terms += [_string_term(n, 0.5 * bz, {i: 3}) for i in range(n)]
    return HamiltonianSpec(n, terms, geometry=[(i, i + 1) for i in range(n - 1)])


def build_kitaev_hubbard(n: int, h: float, u: float) -> HamiltonianSpec:
    """Spin image of the interacting Kitaev chain (open boundary):

        H = sum_j X_j X_{j+1} - h sum_j Z_j + u sum_j Z_j Z_{j+1}

    obtained from the fermion chain -sum (c^dag_j - c_j)(c^dag_{j+1} + c_{j+1})
    - h sum (1 - 2 n_j) + u sum (1 - 2 n_j)(1 - 2 n_{j+1}) under the
    Jordan-Wigner map c_j = (prod_{k<j} Z_k) (X_j + i Y_j)/2 with the
    spin-up vacuum, so 1 - 2 n_j = Z_j.
    """
    if n < 2:
        raise ValueError("chain needs at least 2 sites")
    terms = [_string_term(n, 1.0, {j: 1, j + 1: 1}) for j in range(n - 1)]
    if h != 0.0:
        terms += [_string_term(n, -h, {j: 3}) for j in range(n)]
    if u != 0.0:
        terms += [_string_term(n, u, {j: 3, j + 1: 3}) for j in range(n - 1)]
    return HamiltonianSpec(n, terms, geometry=[(j, j + 1) for j in range(n - 1)])


def build_triangular_tfi(edges: list[tuple[int, int]], bx: float, n: int | None = None) -> HamiltonianSpec:
    """Antiferromagnet on an explicit edge list, with a transverse field:

        H = + sum_{<ij>} S^z_i S^z_j + bx sum_i S^x_i

    ``edges`` index sites from 0; ``n`` defaults to the largest index + 1.
    """
    if not edges:
        raise ValueError("empty edge list")
    n_sites = (max(max(e) for e in edges) + 1) if n is None else n
    seen = set()
    for i, j in edges:
        if i == j or not (0 <= i < n_sites and 0 <= j < n_sites):
            raise ValueError(f"bad edge ({i}, {j}) for {n_sites} sites")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise ValueError(f"duplicate edge ({i}, {j})")
        seen.add(key)
    terms = [_string_term(n_sites, 0.25, {i: 3, j: 3}) for i, j in edges]
    if bx != 0.0:
        terms += [_string_term(n_sites, 0.5 * bx, {i: 1}) for i in range(n_sites)]
    return HamiltonianSpec(n_sites, terms, geometry=[tuple(sorted(e)) for e in edges])


def diagonal_spec(energies: np.ndarray) -> HamiltonianSpec:
    """Diagonal Hamiltonian with the given energy per computational state.

    Expands diag(energies) over Z-strings via a Walsh-Hadamard transform;
    handy for synthesizing exactly degenerate test models.
    """
    energies = np.asarray(energies, dtype=float)
    dim = energies.size
    n = int(np.log2(dim))
    if 2**n != dim:
        raise ValueError("length must be a power of two")
    coeffs = energies.copy()
    for k in range(n):
        coeffs = coeffs.reshape(2**k, 2, dim // 2 ** (k + 1))
        coeffs = np.stack([coeffs[:, 0] + coeffs[:, 1], coeffs[:, 0] - coeffs[:, 1]], axis=1)
    coeffs = coeffs.reshape(dim) / dim
    terms = []
    for mask in range(dim):
        if abs(coeffs[mask]) < 1e-14:
            continue
        codes = tuple(3 if (mask >> (n - 1 - k)) & 1 else 0 for k in range(n))
        terms.append(PauliTerm(complex(coeffs[mask]), codes))
    return HamiltonianSpec(n, terms)


def random_two_local(n: int, rng: np.random.Generator, real_matrix: bool = False) -> HamiltonianSpec:
    """Random Hermitian 2-local Hamiltonian: a field per site plus n random bonds.

    With ``real_matrix`` every term carries an even number of Y factors, so
    the matrix is real symmetric.
    """
    terms = []
    for i in range(n):
        code = int(rng.integers(1, 4))
        if real_matrix and code == 2:
            code = rng.choice([1, 3])
        terms.append(_string_term(n, float(rng.normal()), {i: int(code)}))
    for _ in range(max(n, 1)):
        i, j = sorted(rng.choice(n, size=2, replace=False)) if n > 1 else (0, 0)
        if n == 1:
            continue
        while True:
            ci, cj = int(rng.integers(1, 4)), int(rng.integers(1, 4))
            if not real_matrix or ((ci == 2) + (cj == 2)) % 2 == 0:
                break
        terms.append(_string_term(n, float(rng.normal()), {int(i): ci, int(j): cj}))
    return simplify(HamiltonianSpec(n, terms))


def parse_hamiltonian(text: str) -> HamiltonianSpec:
    """Parse the term-per-line text format documented in the module docstring."""
    terms: list[PauliTerm] = []
    n_sites: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise HamiltonianFormatError(f"line {lineno}: expected 'coeff_re coeff_im codes', got {raw!r}")
        try:
            re_part, im_part = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise HamiltonianFormatError(f"line {lineno}: bad coefficient: {exc}") from None
        codes_str = parts[2].upper()
        if any(ch not in CODE_CHARS for ch in codes_str):
            raise HamiltonianFormatError(f"line {lineno}: code string may only contain I, X, Y, Z")
        if n_sites is None:
            n_sites = len(codes_str)
        elif len(codes_str) != n_sites:
            raise HamiltonianFormatError(
                f"line {lineno}: code string length {len(codes_str)} != {n_sites} from earlier lines"
            )
        terms.append(PauliTerm(complex(re_part, im_part), tuple(CODE_CHARS.index(ch) for ch in codes_str)))
    if n_sites is None:
        raise HamiltonianFormatError("no terms found")
    spec = HamiltonianSpec(n_sites, terms)
    if not spec.is_hermitian():
        warnings.warn("Hamiltonian has imaginary coefficients and is not Hermitian", stacklevel=2)
    return spec


def serialize_hamiltonian(spec: HamiltonianSpec) -> str:
    """Inverse of :func:`parse_hamiltonian`; round-trips bit-identically."""
    if spec.local_dim != 2:
        raise ValueError("only qubit specs have a text representation")
    lines = []
    for t in spec.terms:
        codes_str = "".join(CODE_CHARS[c] for c in t.codes)
        lines.append(f"{t.coeff.real!r} {t.coeff.imag!r} {codes_str}")
    return "\n".join(lines) + "\n"
