"""Model builders, the text format, and spec bookkeeping."""

import numpy as np
import pytest

from qdegen.dense import to_dense
from qdegen.hamiltonian import (
    HamiltonianFormatError,
    HamiltonianSpec,
    PauliTerm,
    build_kitaev_hubbard,
    build_tfi,
    build_triangular_tfi,
    diagonal_spec,
    parse_hamiltonian,
    random_two_local,
    serialize_hamiltonian,
    shift_constant,
    simplify,
)


def test_spec_rejects_wrong_code_length():
    with pytest.raises(ValueError):
        HamiltonianSpec(3, [PauliTerm(1.0, (3, 3))])


def test_spec_rejects_codes_outside_table():
    with pytest.raises(ValueError):
        HamiltonianSpec(2, [PauliTerm(1.0, (0, 5))])


def test_hermitian_and_real_flags():
    spec = build_tfi(3, 0.5)
    assert spec.is_hermitian()
    assert spec.is_real_valued()
    iy = HamiltonianSpec(2, [PauliTerm(1.0, (2, 0))])  # single Y: imaginary matrix
    assert iy.is_hermitian()
    assert not iy.is_real_valued()
    yy = HamiltonianSpec(2, [PauliTerm(1.0, (2, 2))])  # Y pair: real again
    assert yy.is_real_valued()
    assert not HamiltonianSpec(2, [PauliTerm(1.0j, (3, 0))]).is_hermitian()


def test_simplify_merges_and_drops():
    terms = [
        PauliTerm(0.5, (3, 3)),
        PauliTerm(0.25, (3, 3)),
        PauliTerm(1e-16, (1, 0)),
        PauliTerm(0.75, (0, 1)),
        PauliTerm(-0.75, (0, 1)),
    ]
    out = simplify(HamiltonianSpec(2, terms))
    assert len(out.terms) == 1
    assert out.terms[0].codes == (3, 3)
    assert out.terms[0].coeff == pytest.approx(0.75)


def test_shift_constant_is_coefficient_sum_for_paulis():
    # 2 bonds at 1/4 plus 3 fields at 1/4
    assert shift_constant(build_tfi(3, 0.5)) == pytest.approx(1.25)


def test_shift_constant_bounds_spectrum():
    rng = np.random.default_rng(5)
    for _ in range(10):
        spec = random_two_local(3, rng)
        eigs = np.linalg.eigvalsh(to_dense(spec))
        assert np.abs(eigs).max() <= shift_constant(spec) + 1e-10


def test_tfi_matrix_small_case():
    # n=2, bx only: H = -1/4 ZZ + bx/2 (X1 + X2)
    bx = 0.3
    got = to_dense(build_tfi(2, bx))
    z = np.diag([1.0, -1.0])
    x = np.array([[0.0, 1.0], [1.0, 0.0]])
    eye = np.eye(2)
    want = -0.25 * np.kron(z, z) + 0.5 * bx * (np.kron(x, eye) + np.kron(eye, x))
    assert np.allclose(got, want, atol=1e-14)


def test_tfi_zero_fields_skips_field_terms():
    spec = build_tfi(5, 0.0, 0.0)
    assert len(spec.terms) == 4
    assert all(t.coeff == -0.25 for t in spec.terms)


def test_tfi_needs_two_sites():
    with pytest.raises(ValueError):
        build_tfi(1, 0.5)


def _fermion_ops(n: int) -> list[np.ndarray]:
    """Annihilation operators on occupation bitstrings, site 0 leftmost."""
    dim = 2**n
    ops = []
    for j in range(n):
        c = np.zeros((dim, dim))
        for s in range(dim):
            occ = (s >> (n - 1 - j)) & 1
            if not occ:
                continue
            below = sum((s >> (n - 1 - k)) & 1 for k in range(j))
            c[s ^ (1 << (n - 1 - j)), s] = (-1.0) ** below
        ops.append(c)
    return ops


def test_kitaev_hubbard_matches_fermion_oracle():
    """Spin image spectrum equals the occupation-basis fermion spectrum."""
    n, h, u = 5, 0.7, 0.4
    cs = _fermion_ops(n)
    dim = 2**n
    ham = np.zeros((dim, dim))
    for j in range(n - 1):
        ham += -(cs[j].T - cs[j]) @ (cs[j + 1].T + cs[j + 1])
    for j in range(n):
        ham += -h * (np.eye(dim) - 2.0 * cs[j].T @ cs[j])
    for j in range(n - 1):
        ham += (
            u
            * (np.eye(dim) - 2.0 * cs[j].T @ cs[j])
            @ (np.eye(dim) - 2.0 * cs[j + 1].T @ cs[j + 1])
        )
    spin = to_dense(build_kitaev_hubbard(n, h, u))
    assert np.allclose(np.linalg.eigvalsh(spin), np.linalg.eigvalsh(ham), atol=1e-10)


def test_kitaev_hubbard_term_count():
    spec = build_kitaev_hubbard(4, 1.0, 0.5)
    assert len(spec.terms) == 3 + 4 + 3


def test_triangular_validates_edges():
    with pytest.raises(ValueError):
        build_triangular_tfi([], 0.0)
    with pytest.raises(ValueError):
        build_triangular_tfi([(0, 0)], 0.0)
    with pytest.raises(ValueError):
        build_triangular_tfi([(0, 1), (1, 0)], 0.0)


def test_triangular_afm_sign():
    # antiferromagnetic bonds: aligned pair costs energy
    spec = build_triangular_tfi([(0, 1)], 0.0)
    eigs = np.linalg.eigvalsh(to_dense(spec))
    assert eigs[0] == pytest.approx(-0.25)
    assert eigs[-1] == pytest.approx(0.25)


def test_diagonal_spec_reproduces_energies():
    rng = np.random.default_rng(7)
    energies = rng.normal(size=8)
    got = np.diag(to_dense(diagonal_spec(energies))).real
    assert np.allclose(got, energies, atol=1e-12)
    with pytest.raises(ValueError):
        diagonal_spec(np.arange(3.0))


def test_random_two_local_real_flag():
    rng = np.random.default_rng(9)
    for k in range(20):
        spec = random_two_local(2 + k % 3, rng, real_matrix=True)
        mat = to_dense(spec)
        assert np.abs(mat.imag).max() < 1e-14


def test_parse_round_trip():
    text = "-0.25 0.0 ZZI\n0.15 0.0 IXI\n# comment line\n\n-1.0 0.5 XYZ\n"
    spec = None
    with pytest.warns(UserWarning):
        spec = parse_hamiltonian(text)  # imaginary coefficient on the last term
    assert spec.n_sites == 3
    assert len(spec.terms) == 3
    assert spec.terms[0].codes == (3, 3, 0)
    again = parse_hamiltonian(serialize_hamiltonian(build_tfi(4, 0.3, 0.1)))
    assert again.terms == build_tfi(4, 0.3, 0.1).terms


def test_parse_errors():
    with pytest.raises(HamiltonianFormatError):
        parse_hamiltonian("1.0 ZZ\n")  # missing imaginary part
    with pytest.raises(HamiltonianFormatError):
        parse_hamiltonian("1.0 0.0 ZQ\n")
    with pytest.raises(HamiltonianFormatError):
        parse_hamiltonian("1.0 0.0 ZZ\n1.0 0.0 ZZZ\n")
    with pytest.raises(HamiltonianFormatError):
        parse_hamiltonian("x 0.0 ZZ\n")
    with pytest.raises(HamiltonianFormatError):
        parse_hamiltonian("# nothing\n")


def test_serialize_rejects_lifted_specs():
    from qdegen.lift import lift

    with pytest.raises(ValueError):
        serialize_hamiltonian(lift(build_tfi(2, 0.1)))
