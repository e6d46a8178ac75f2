"""Brute-force many-body oracle on tiny instances (test support only).

Builds Jordan-Wigner operator matrices in the full 2^n Fock space of a single
spin channel, evolves density matrices exactly, and decomposes operators in
the quadratic monomial basis.  Capped at 6 single-particle levels.
"""

from functools import lru_cache

import numpy as np
from scipy.linalg import expm

MAX_LEVELS = 6

_SZ = np.diag([1.0, -1.0])
_A = np.array([[0.0, 1.0], [0.0, 0.0]])  # |0><1| with bit 1 = occupied


@lru_cache(maxsize=None)
def annihilation_operators(n_levels: int):
    """Jordan-Wigner a_i matrices; basis index bits follow site order."""
    if n_levels > MAX_LEVELS:
        raise ValueError(f"Fock-space oracle capped at {MAX_LEVELS} levels")
    ops = []
    for i in range(n_levels):
        factors = [_SZ] * i + [_A] + [np.eye(2)] * (n_levels - i - 1)
        full = factors[0]
        for f in factors[1:]:
            full = np.kron(full, f)
        ops.append(full)
    return tuple(ops)


def quadratic_hamiltonian(h: np.ndarray) -> np.ndarray:
    """Many-body matrix of sum_nm h_nm a_n^dag a_m."""
    ops = annihilation_operators(len(h))
    out = np.zeros((2 ** len(h), 2 ** len(h)), dtype=complex)
    for n in range(len(h)):
        for m in range(len(h)):
            if h[n, m] != 0:
                out += h[n, m] * ops[n].conj().T @ ops[m]
    return out


def product_density_matrix(occupation_probs) -> np.ndarray:
    """Uncorrelated state: rho = prod_i [p_i n_i + (1 - p_i)(1 - n_i)]."""
    p = np.asarray(occupation_probs, dtype=float)
    rho_diag = np.ones(1)
    for pi in p:
        rho_diag = np.kron(rho_diag, np.array([1.0 - pi, pi]))
    return np.diag(rho_diag).astype(complex)


def evolve_expectation(h_many: np.ndarray, rho0: np.ndarray, op: np.ndarray, t: float) -> complex:
    """<op>(t) = Tr(rho0 e^{iHt} op e^{-iHt})."""
    u = expm(-1j * h_many * t)
    return complex(np.trace(rho0 @ u.conj().T @ op @ u))


def correlation_matrix(h_many: np.ndarray, rho0: np.ndarray, n_levels: int, t: float) -> np.ndarray:
    """<a_n^dag a_m>(t) computed entirely in the many-body space."""
    ops = annihilation_operators(n_levels)
    u = expm(-1j * h_many * t)
    rho_t = u @ rho0 @ u.conj().T  # Schroedinger picture
    c = np.empty((n_levels, n_levels), dtype=complex)
    for n in range(n_levels):
        for m in range(n_levels):
            c[n, m] = np.trace(rho_t @ ops[n].conj().T @ ops[m])
    return c


def decompose_quadratic(op: np.ndarray, n_levels: int):
    """Coefficients of op in the basis {1, a_p^dag a_q, a_p^dag a_q^dag, a_p a_q}.

    Returns (const, alpha, beta, gamma) with alpha over all (p, q), beta and
    gamma over p < q.  Raises if op is not exactly quadratic.
    """
    ops = annihilation_operators(n_levels)
    basis = [np.eye(2**n_levels, dtype=complex)]
    labels = [("const", 0, 0)]
    for p in range(n_levels):
        for q in range(n_levels):
            basis.append(ops[p].conj().T @ ops[q])
            labels.append(("ca", p, q))
    for p in range(n_levels):
        for q in range(p + 1, n_levels):
            basis.append(ops[p].conj().T @ ops[q].conj().T)
            labels.append(("cc", p, q))
            basis.append(ops[p] @ ops[q])
            labels.append(("aa", p, q))

    a = np.stack([b.ravel() for b in basis], axis=1)
    coef, residual, *_ = np.linalg.lstsq(a, op.ravel(), rcond=None)
    if not np.allclose(a @ coef, op.ravel(), atol=1e-10):
        raise ValueError("operator is not a quadratic polynomial in a, a^dag")

    const = coef[0]
    alpha = np.zeros((n_levels, n_levels), dtype=complex)
    beta = np.zeros((n_levels, n_levels), dtype=complex)
    gamma = np.zeros((n_levels, n_levels), dtype=complex)
    for c, (kind, p, q) in zip(coef[1:], labels[1:]):
        if kind == "ca":
            alpha[p, q] = c
        elif kind == "cc":
            beta[p, q] = c
        else:
            gamma[p, q] = c
    return const, alpha, beta, gamma
