"""Quantized quasiclassical initial conditions.

Mode occupations are drawn 0/1 against the Fermi-Dirac distribution of the
mode's own lead; Cartesian coordinates sit on the unit circle with a uniform
random phase, so each site occupation is exactly the drawn integer.
"""

from dataclasses import dataclass

import numpy as np

from .mapping import PhaseLayout, PhaseState
from .model import LeadDiscretization, ModelConfig, mode_fermi_factors


@dataclass(frozen=True)
class SeedPlan:
    """Counter-based substream derivation: one Philox stream per trajectory.

    The stream of trajectory i is Philox keyed by (master_seed, i), so the
    sampled state depends only on (master_seed, i) and never on worker count
    or scheduling.  Draw order within a stream: one uniform per lead mode
    (site order), then one phase angle per site (site order).
    """

    master_seed: int

    def rng_for(self, trajectory_index: int) -> np.random.Generator:
        key = np.array([self.master_seed, trajectory_index], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


def sample_occupations(
    rng: np.random.Generator, leads: LeadDiscretization, config: ModelConfig
) -> np.ndarray:
    """Occupation of every site: dot levels from config, modes ~ Fermi-Dirac.

    Returns an integer vector in site-layout order (dot-up, dot-down,
    modes-up, modes-down).  A draw exactly at the Fermi factor occupies the
    mode (inclusive boundary).
    """
    f = mode_fermi_factors(leads, config)
    occ_up = (rng.uniform(size=leads.n_modes) <= f).astype(np.int64)
    occ_down = (rng.uniform(size=leads.n_modes) <= f).astype(np.int64)
    return np.concatenate(
        [[config.dot_init_up, config.dot_init_down], occ_up, occ_down]
    )


def sample_phase(
    rng: np.random.Generator, occupations: np.ndarray, time: float = 0.0
) -> PhaseState:
    """Place every site on the unit circle with its drawn occupation.

    x = cos(theta), y = sin(theta), p_x = -n sin(theta), p_y = n cos(theta),
    with theta uniform on [0, 2 pi); then x p_y - y p_x = n exactly.
    """
    n_sites = len(occupations)
    layout = PhaseLayout(n_modes=(n_sites - 2) // 2)
    if layout.n_sites != n_sites:
        raise ValueError(f"occupation vector length {n_sites} is not 2 + 2*n_modes")

    theta = rng.uniform(0.0, 2.0 * np.pi, size=n_sites)
    n = np.asarray(occupations, dtype=float)
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    data = np.concatenate([cos_t, sin_t, -n * sin_t, n * cos_t])
    return PhaseState(data=data, layout=layout, time=time)


def sample_trajectory(
    plan: SeedPlan,
    trajectory_index: int,
    leads: LeadDiscretization,
    config: ModelConfig,
) -> PhaseState:
    """Initial phase state of one trajectory, fully determined by (seed, index)."""
    rng = plan.rng_for(trajectory_index)
    occ = sample_occupations(rng, leads, config)
    return sample_phase(rng, occ)
