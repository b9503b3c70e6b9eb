"""Self-check suite: algebraic identities, correspondences, solver battery.

Each check returns a CheckResult so callers can print a pass/fail report or
assert on the outcome.  The checks mirror the mathematical facts the whole
method rests on; if any of them fails the degeneracy readout cannot be
trusted.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .basis import multiply_codes, structure_tensor
from .dense import correspondence_check, count_degeneracy_dense, to_dense
from .hamiltonian import random_two_local
from .lanczos import count_degeneracy_lanczos
from .lift import encode_operator, lift


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def check_structure_identities(tol: float = 1e-12) -> CheckResult:
    """Representation identities of the structure matrices.

    Left matrices form a homomorphism of the operator product, right
    matrices an anti-homomorphism, and every left matrix commutes with
    every right matrix (associativity of operator multiplication).
    """
    t0 = time.time()
    left = structure_tensor("left")
    right = structure_tensor("right")
    worst = 0.0
    for alpha in range(4):
        for gamma in range(4):
            prod_l = left[alpha] @ left[gamma]
            prod_r = right[alpha] @ right[gamma]
            combo_l = np.zeros((4, 4), dtype=complex)
            combo_r = np.zeros((4, 4), dtype=complex)
            for beta, coeff in multiply_codes(alpha, gamma):
                combo_l += coeff * left[beta]
            # right matrices reverse the product order
            for beta, coeff in multiply_codes(gamma, alpha):
                combo_r += coeff * right[beta]
            worst = max(worst, float(np.max(np.abs(prod_l - combo_l))))
            worst = max(worst, float(np.max(np.abs(prod_r - combo_r))))
            comm = left[alpha] @ right[gamma] - right[gamma] @ left[alpha]
            worst = max(worst, float(np.max(np.abs(comm))))
    return CheckResult(
        "structure-tensor identities",
        worst <= tol,
        f"max deviation {worst:.2e} (tol {tol:.0e})",
        time.time() - t0,
    )


def check_encoding_identities(
    cases: int = 100, tol: float = 1e-10, seed: int = 0
) -> CheckResult:
    """Inner-product and multiplication identities of the encoding.

    For random operator pairs (A, B): Tr(A^dag B) equals the encoded
    vector inner product, and encode(A B) equals the left lift of A
    applied to encode(B) (mirrored for the right lift).
    """
    t0 = time.time()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in range(cases):
        n = 2 + (k % 2)
        a_spec = random_two_local(n, rng)
        b_spec = random_two_local(n, rng)
        a = to_dense(a_spec)
        b = to_dense(b_spec)
        ea = encode_operator(a)
        eb = encode_operator(b)
        hs = complex(np.trace(a.conj().T @ b))
        worst = max(worst, abs(complex(np.vdot(ea.amps, eb.amps)) - hs))
        prod = encode_operator(a @ b)
        lifted_left = to_dense(lift(a_spec, "left"))
        worst = max(worst, float(np.max(np.abs(lifted_left @ eb.amps - prod.amps))))
        prod_r = encode_operator(b @ a)
        lifted_right = to_dense(lift(a_spec, "right"))
        worst = max(worst, float(np.max(np.abs(lifted_right @ eb.amps - prod_r.amps))))
    return CheckResult(
        "encoding inner-product and multiplication identities",
        worst <= tol,
        f"{cases} random pairs, max deviation {worst:.2e} (tol {tol:.0e})",
        time.time() - t0,
    )


def check_spectrum_correspondence(
    cases: int = 50, tol: float = 1e-8, seed: int = 1
) -> CheckResult:
    """Lifted spectra match the qubit spectrum with 2^n multiplicity.

    The left and right lifts repeat each eigenvalue 2^n times; the
    averaged lift's spectrum is the set of pairwise means.
    """
    t0 = time.time()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in range(cases):
        n = 2 + (k % 2)
        spec = random_two_local(n, rng)
        for variant in ("left", "right", "averaged"):
            report = correspondence_check(spec, variant, tol=tol)
            worst = max(worst, report["max_deviation"])
            if not report["passed"]:
                return CheckResult(
                    "spectrum correspondence",
                    False,
                    f"case {k} variant {variant}: deviation {report['max_deviation']:.2e}",
                    time.time() - t0,
                )
    return CheckResult(
        "spectrum correspondence",
        True,
        f"{cases} random Hamiltonians x 3 variants, max deviation {worst:.2e}",
        time.time() - t0,
    )


def check_degeneracy_battery(
    cases: int = 100, seed: int = 2, max_n: int = 5
) -> CheckResult:
    """Lanczos-on-lift degeneracy equals the dense oracle on random models.

    Random real-valued 2-local Hamiltonians at n up to max_n, plus the
    deliberately degenerate toys: the zero Hamiltonian and scaled identity
    (D = 2^n) and the triangle antiferromagnet (D = 6).
    """
    from .geometry import triangle_edges
    from .hamiltonian import HamiltonianSpec, PauliTerm, build_triangular_tfi

    t0 = time.time()
    rng = np.random.default_rng(seed)
    failures: list[str] = []
    checked = 0

    def compare(spec, label: str) -> None:
        nonlocal checked
        checked += 1
        oracle = count_degeneracy_dense(spec)
        got = count_degeneracy_lanczos(spec)
        if got.d_rounded != oracle.d_rounded or got.residual >= 0.1:
            failures.append(
                f"{label}: lanczos D_raw={got.d_raw:.4f} vs dense D={oracle.d_rounded}"
            )

    for k in range(cases):
        n = 2 + (k % (max_n - 1))
        spec = random_two_local(n, rng, real_matrix=True)
        compare(spec, f"random n={n} case {k}")

    zero = HamiltonianSpec(3, (PauliTerm(0.0 + 0.0j, (0, 0, 0)),))
    compare(zero, "zero Hamiltonian n=3")
    ident = HamiltonianSpec(3, (PauliTerm(-1.5 + 0.0j, (0, 0, 0)),))
    compare(ident, "scaled identity n=3")
    compare(build_triangular_tfi(triangle_edges(), 0.0), "triangle AFM bx=0")

    detail = f"{checked} models compared"
    if failures:
        detail += "; failures: " + "; ".join(failures[:3])
    return CheckResult("degeneracy battery (lanczos vs dense)", not failures, detail, time.time() - t0)


def run_all(seed: int = 0, battery_cases: int = 100) -> list[CheckResult]:
    """Run every check; battery_cases trims the slowest stage if needed."""
    return [
        check_structure_identities(),
        check_encoding_identities(seed=seed),
        check_spectrum_correspondence(seed=seed + 1),
        check_degeneracy_battery(cases=battery_cases, seed=seed + 2),
    ]
