"""Exactly solvable noninteracting reference (per spin channel).

The one-body correlation matrix C(t)_{nm} = <a_n^dag a_m>(t) of a quadratic
Hamiltonian evolves as C(t) = e^{iht} C(0) e^{-iht}; populations, the left
current, and (through Wick's theorem) the current second moment follow from
it.  Serves both as the acceptance oracle and as the reference mean for the
control-variate estimator.
"""

import numpy as np

from .model import LeadDiscretization, ModelConfig, mode_fermi_factors, single_particle_matrix

HERMITICITY_TOL = 1e-10


def _check_hermitian(a: np.ndarray, name: str):
    if not np.allclose(a, a.conj().T, atol=HERMITICITY_TOL, rtol=0.0):
        raise ValueError(f"{name} is not Hermitian")


def initial_correlation_matrix(
    config: ModelConfig, leads: LeadDiscretization, spin: str
) -> np.ndarray:
    """Uncorrelated thermal C(0): diagonal dot occupation and Fermi factors."""
    diag = np.concatenate([[float(config.dot_init(spin))], mode_fermi_factors(leads, config)])
    return np.diag(diag).astype(complex)


def propagate_correlations(h: np.ndarray, c0: np.ndarray, t: float) -> np.ndarray:
    """One-shot propagation; use ExactReference for many output times."""
    return ExactReference(h, c0).correlation(t)


class ExactReference:
    """Eigendecompose once, then propagate the correlation matrix to any time."""

    def __init__(self, h: np.ndarray, c0: np.ndarray):
        _check_hermitian(h, "single-particle Hamiltonian")
        _check_hermitian(c0, "initial correlation matrix")
        evals = np.linalg.eigvalsh(c0)
        if evals.min() < -HERMITICITY_TOL or evals.max() > 1.0 + HERMITICITY_TOL:
            raise ValueError("correlation-matrix spectrum must lie in [0, 1]")
        self.energies, self.modes = np.linalg.eigh(h)
        # C(0) rotated to the eigenbasis of h
        self._c0_eig = self.modes.conj().T @ np.asarray(c0, dtype=complex) @ self.modes

    def correlation(self, t: float) -> np.ndarray:
        phase = np.exp(1j * self.energies * t)
        ct_eig = (phase[:, None] * self._c0_eig) * phase.conj()[None, :]
        return self.modes @ ct_eig @ self.modes.conj().T


def exact_population(c: np.ndarray) -> float:
    """Dot occupation for one spin channel (basis: dot first)."""
    return float(c[0, 0].real)


def exact_current(c: np.ndarray, leads: LeadDiscretization) -> float:
    """<I_L> = 2 sum_{k in L} t_k Im C_{dot,k} for one spin channel."""
    left = leads.modes_of("L")
    t = leads.couplings[left]
    return 2.0 * float(np.dot(t, np.imag(c[0, 1 + left])))


def exact_current_squared(c: np.ndarray, leads: LeadDiscretization) -> float:
    """<I_L^2> for one spin channel by Wick contraction of the quartic strings.

    With v_k = C_{dot,k}, M_{jk} = C_{jk} restricted to left modes, n_d the
    dot occupation and T2 = sum t_k^2:
       <I^2> = 2 |t.v|^2 + (1 - 2 n_d) t^T M t + n_d T2.
    """
    left = leads.modes_of("L")
    t = leads.couplings[left]
    v = c[0, 1 + left]
    m = c[np.ix_(1 + left, 1 + left)]
    n_d = c[0, 0].real
    tv = np.dot(t, v)
    tmt = float(np.real(t @ m @ t))
    return 2.0 * abs(tv) ** 2 + (1.0 - 2.0 * n_d) * tmt + n_d * float(np.dot(t, t))


OBSERVABLE_EVALUATORS = {
    "population": exact_population,
    "current_left": exact_current,
    "current_left_sq": exact_current_squared,
}


def reference_series(
    config: ModelConfig,
    leads: LeadDiscretization,
    times: np.ndarray,
    observable: str,
    spin: str = "up",
    u_shift: float = 0.0,
) -> np.ndarray:
    """Exact time series of one observable for one spin channel.

    `observable` is the per-spin base name (population, current_left,
    current_left_sq); spin 'both' sums the two independent channels for the
    linear observables.
    """
    evaluator = OBSERVABLE_EVALUATORS[observable]
    spins = ("up", "down") if spin == "both" else (spin,)
    if observable == "current_left_sq" and spin == "both":
        raise ValueError("current_left_sq is evaluated per spin channel")

    out = np.zeros(len(times))
    for s in spins:
        h = single_particle_matrix(config, leads, s, u_shift=u_shift)
        ref = ExactReference(h, initial_correlation_matrix(config, leads, s))
        for i, t in enumerate(times):
            c = ref.correlation(float(t))
            out[i] += evaluator(c) if observable == "population" else evaluator(c, leads)
    return out
