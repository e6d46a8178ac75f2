"""Discretized Anderson impurity model: lead grids, couplings, one-body matrix.

Units: hbar = k_B = e = 1 and energies are quoted in units of the total
dot-lead coupling Gamma = Gamma_L + Gamma_R (so time is in 1/Gamma).
"""

from dataclasses import dataclass, field

import numpy as np

LEADS = ("L", "R")
SPINS = ("up", "down")


@dataclass(frozen=True)
class ModelConfig:
    """All physical and discretization parameters of the impurity model.

    Attributes
    ----------
    gamma_L, gamma_R : float
        Coupling strengths of the two leads.
    eps_up, eps_down : float
        Dot level per spin.
    hubbard_U : float
        On-site repulsion.
    temp_L, temp_R : float
        Lead temperatures (k_B = 1), strictly positive.
    mu_L, mu_R : float
        Lead chemical potentials.
    band_A : float
        Cutoff sharpness of the lead spectral function (1/energy).
    band_B : float
        Band width of the lead spectral function.
    n_modes_per_lead : int
        Modes per lead, half for each spin; must be even and >= 4.
    eps_max : float
        Half width of the uniform discretization grid [-eps_max, eps_max].
    dot_init_up, dot_init_down : int
        Initial dot occupation per spin, 0 or 1.
    """

    gamma_L: float = 0.5
    gamma_R: float = 0.5
    eps_up: float = 0.0
    eps_down: float = 0.0
    hubbard_U: float = 0.0
    temp_L: float = 1.0
    temp_R: float = 1.0
    mu_L: float = 0.0
    mu_R: float = 0.0
    band_A: float = 5.0
    band_B: float = 20.0
    eps_max: float = 10.0
    n_modes_per_lead: int = 200
    dot_init_up: int = 0
    dot_init_down: int = 0

    def __post_init__(self):
        if self.n_modes_per_lead % 2 != 0 or self.n_modes_per_lead < 4:
            raise ValueError(
                f"n_modes_per_lead must be even and >= 4, got {self.n_modes_per_lead}"
            )
        if self.temp_L <= 0 or self.temp_R <= 0:
            raise ValueError("lead temperatures must be > 0")
        if self.gamma_L < 0 or self.gamma_R < 0:
            raise ValueError("lead couplings must be >= 0")
        if self.eps_max <= 0:
            raise ValueError("eps_max must be > 0")
        if self.dot_init_up not in (0, 1) or self.dot_init_down not in (0, 1):
            raise ValueError("initial dot occupations must be 0 or 1")

    @property
    def gamma_total(self) -> float:
        return self.gamma_L + self.gamma_R

    def gamma(self, lead: str) -> float:
        return {"L": self.gamma_L, "R": self.gamma_R}[lead]

    def temp(self, lead: str) -> float:
        return {"L": self.temp_L, "R": self.temp_R}[lead]

    def mu(self, lead: str) -> float:
        return {"L": self.mu_L, "R": self.mu_R}[lead]

    def eps_dot(self, spin: str) -> float:
        return {"up": self.eps_up, "down": self.eps_down}[spin]

    def dot_init(self, spin: str) -> int:
        return {"up": self.dot_init_up, "down": self.dot_init_down}[spin]

    @property
    def grid_spacing(self) -> float:
        """Spacing of the per-channel energy grid, 2*eps_max / (N/2 - 1)."""
        return 2.0 * self.eps_max / (self.n_modes_per_lead // 2 - 1)


def spectral_density(eps, lead: str, config: ModelConfig):
    """Lead spectral function: a flat band of width B with soft edges.

    J(eps) = Gamma_l / [(1 + e^{A(eps - B/2)}) (1 + e^{-A(eps + B/2)})]

    Accepts scalar or array `eps`; even in eps and bounded by Gamma_l.
    """
    a, b = config.band_A, config.band_B
    # expit-style guard: exp never overflows for the sign that matters
    upper = np.logaddexp(0.0, a * (np.asarray(eps, dtype=float) - b / 2.0))
    lower = np.logaddexp(0.0, -a * (np.asarray(eps, dtype=float) + b / 2.0))
    out = config.gamma(lead) * np.exp(-(upper + lower))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class LeadDiscretization:
    """Per-mode energies and couplings for one spin channel.

    Spin-up and spin-down channels are identical by construction, so a single
    copy of the arrays serves both.  Mode order is all left-lead modes by
    ascending energy, then all right-lead modes by ascending energy; this
    order is part of the trajectory layout contract.
    """

    energies: np.ndarray  # (n_modes,)
    couplings: np.ndarray  # (n_modes,)
    lead_of: np.ndarray  # (n_modes,) 0 = L, 1 = R
    grid_spacing: float = field(repr=False, default=0.0)

    @property
    def n_modes(self) -> int:
        return len(self.energies)

    def modes_of(self, lead: str) -> np.ndarray:
        """Indices of the modes belonging to one lead."""
        return np.flatnonzero(self.lead_of == LEADS.index(lead))


def build_leads(config: ModelConfig) -> LeadDiscretization:
    """Discretize both leads on a uniform grid with spectral-density couplings.

    Each (lead, spin) channel carries n_modes_per_lead/2 modes spanning
    [-eps_max, +eps_max]; couplings follow t_k = sqrt(J(eps_k) d_eps / 2 pi).
    """
    n_per_channel = config.n_modes_per_lead // 2
    if n_per_channel < 2:
        raise ValueError("need at least 2 modes per (lead, spin) channel")
    grid = np.linspace(-config.eps_max, config.eps_max, n_per_channel)
    d_eps = config.grid_spacing

    energies, couplings, lead_of = [], [], []
    for i, lead in enumerate(LEADS):
        energies.append(grid)
        couplings.append(np.sqrt(spectral_density(grid, lead, config) * d_eps / (2.0 * np.pi)))
        lead_of.append(np.full(n_per_channel, i, dtype=np.intp))

    return LeadDiscretization(
        energies=np.concatenate(energies),
        couplings=np.concatenate(couplings),
        lead_of=np.concatenate(lead_of),
        grid_spacing=d_eps,
    )


def fermi_dirac(eps, beta: float, mu: float):
    """Occupation (1 + e^{beta (eps - mu)})^-1, overflow safe."""
    return np.exp(-np.logaddexp(0.0, beta * (np.asarray(eps, dtype=float) - mu)))


def mode_fermi_factors(leads: LeadDiscretization, config: ModelConfig) -> np.ndarray:
    """Fermi-Dirac occupation of every mode at its own lead's (T, mu)."""
    beta = np.where(leads.lead_of == 0, 1.0 / config.temp_L, 1.0 / config.temp_R)
    mu = np.where(leads.lead_of == 0, config.mu_L, config.mu_R)
    return np.exp(-np.logaddexp(0.0, beta * (leads.energies - mu)))


def single_particle_matrix(
    config: ModelConfig,
    leads: LeadDiscretization,
    spin: str,
    u_shift: float = 0.0,
) -> np.ndarray:
    """One-body Hamiltonian for a single spin: dot first, then the modes.

    `u_shift` adds a constant to the dot level, for mean-field-shifted
    reference Hamiltonians.  The result is Hermitian (real symmetric here).
    """
    n = 1 + leads.n_modes
    h = np.zeros((n, n))
    h[0, 0] = config.eps_dot(spin) + u_shift
    idx = np.arange(1, n)
    h[idx, idx] = leads.energies
    h[0, idx] = leads.couplings
    h[idx, 0] = leads.couplings
    return h
