"""Classical phase space of the fermion map and the mapped observables.

Each single-particle site (the dot, per spin, and every lead mode) carries
four real variables (x, y, p_x, p_y).  Pairs of creation/annihilation
operators map to bilinear functions of these variables; the per-site
occupation is n = x p_y - y p_x.

Layout contract (bit-reproducibility depends on it): sites are ordered
[dot-up, dot-down, modes-up..., modes-down...], with modes in
`LeadDiscretization` order (left lead ascending energy, then right lead).
The flat state vector concatenates the four coordinate blocks:
[x(all sites), y(all sites), p_x(all sites), p_y(all sites)].
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .model import LeadDiscretization, SPINS

CREATE_ANNIHILATE = "create-annihilate"
CREATE_CREATE = "create-create"
ANNIHILATE_ANNIHILATE = "annihilate-annihilate"


class FermionicZeroWarning(UserWarning):
    """Raised as a diagnostic when a pair operator with equal indices is evaluated."""


@dataclass(frozen=True)
class PhaseLayout:
    """Index map from (site kind, spin, mode) to flat vector positions."""

    n_modes: int  # modes per spin channel (both leads)

    @property
    def n_sites(self) -> int:
        return 2 + 2 * self.n_modes

    @property
    def dim(self) -> int:
        return 4 * self.n_sites

    def dot(self, spin) -> int:
        return self._spin_index(spin)

    def mode(self, spin, k: int) -> int:
        return 2 + self._spin_index(spin) * self.n_modes + k

    def mode_slice(self, spin) -> slice:
        s = self._spin_index(spin)
        return slice(2 + s * self.n_modes, 2 + (s + 1) * self.n_modes)

    @staticmethod
    def _spin_index(spin) -> int:
        if spin in (0, 1):
            return spin
        return SPINS.index(spin)

    # block offsets inside the flat vector
    def x(self, site):
        return site

    def y(self, site):
        return self.n_sites + site

    def px(self, site):
        return 2 * self.n_sites + site

    def py(self, site):
        return 3 * self.n_sites + site


@dataclass
class PhaseState:
    """Full classical phase vector with its layout and a time stamp."""

    data: np.ndarray  # (4 * n_sites,)
    layout: PhaseLayout
    time: float = 0.0

    def __post_init__(self):
        if self.data.shape != (self.layout.dim,):
            raise ValueError(
                f"state vector has shape {self.data.shape}, expected ({self.layout.dim},)"
            )

    def coords(self, site: int):
        """(x, y, p_x, p_y) of one site."""
        lay = self.layout
        d = self.data
        return d[lay.x(site)], d[lay.y(site)], d[lay.px(site)], d[lay.py(site)]

    def blocks(self):
        """Views of the four coordinate blocks, each of length n_sites."""
        s = self.layout.n_sites
        d = self.data
        return d[:s], d[s : 2 * s], d[2 * s : 3 * s], d[3 * s : 4 * s]


def occupation(state: PhaseState, site: int) -> float:
    """Per-site occupation n = x p_y - y p_x."""
    x, y, px, py = state.coords(site)
    return x * py - y * px


def total_occupation(state: PhaseState) -> float:
    """Sum of x p_y - y p_x over every site (conserved along trajectories)."""
    x, y, px, py = state.blocks()
    return float(np.dot(x, py) - np.dot(y, px))


def bilinear(state: PhaseState, n: int, m: int, kind: str = CREATE_ANNIHILATE) -> complex:
    """Classical image of a pair of fermionic operators on sites n, m.

    kind selects a_n^dag a_m, a_n^dag a_m^dag, or a_n a_m.  Equal-index pair
    creation/annihilation is a fermionic zero: returns exactly 0 and emits a
    FermionicZeroWarning as the diagnostic.
    """
    xn, yn, pxn, pyn = state.coords(n)
    xm, ym, pxm, pym = state.coords(m)

    if kind == CREATE_ANNIHILATE:
        if n == m:
            return complex(xn * pyn - yn * pxn)
        return 0.5 * (
            1j * (xn * pxm - pxn * xm + yn * pym - pyn * ym)
            + (xn * pym - pxn * ym + xm * pyn - pxm * yn)
        )

    if n == m:
        warnings.warn(
            f"pair operator '{kind}' with equal indices n = m = {n} is identically zero",
            FermionicZeroWarning,
            stacklevel=2,
        )
        return 0j

    if kind == CREATE_CREATE:
        return 0.5 * (
            1j * (xn * pxm - pxn * xm - yn * pym + pyn * ym)
            - (xn * pym - pxn * ym - xm * pyn + pxm * yn)
        )
    if kind == ANNIHILATE_ANNIHILATE:
        return 0.5 * (
            1j * (xn * pxm - pxn * xm - yn * pym + pyn * ym)
            + (xn * pym - pxn * ym - xm * pyn + pxm * yn)
        )
    raise ValueError(f"unknown bilinear kind: {kind!r}")


@dataclass(frozen=True)
class QuarticCoefficients:
    """Weights of the four operator decompositions of a_n^dag a_m a_m^dag a_k."""

    c1: float = 1.0
    c2: float = -1.0
    c3: float = 1.0
    c4: float = 0.0


def quartic_expectation(
    state: PhaseState,
    indices: tuple,
    coeffs: QuarticCoefficients = QuarticCoefficients(),
) -> complex:
    """Classical image of a_n^dag a_m a_m^dag a_k for one phase point.

    Combines the four equivalent quantum decompositions with weights
    (c1, c2, c3, c4); the default (1, -1, 1, 0) makes the time evolution
    exact under quadratic Hamiltonians.
    """
    n, m1, m2, k = indices
    if m1 != m2:
        raise ValueError(f"middle indices must match the a_m a_m^dag pattern, got {indices}")
    m = m1

    ca = lambda a, b: bilinear(state, a, b, CREATE_ANNIHILATE)
    hole_m = 1.0 - occupation(state, m)  # image of a_m a_m^dag

    val = 0j
    if coeffs.c1:
        val += coeffs.c1 * ca(n, m) * ca(m, k)
    if coeffs.c2:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", FermionicZeroWarning)
            val += coeffs.c2 * (
                ca(n, k) - bilinear(state, n, m, CREATE_CREATE) * bilinear(state, m, k, ANNIHILATE_ANNIHILATE)
            )
    if coeffs.c3:
        val += coeffs.c3 * ca(n, k) * hole_m
    if coeffs.c4:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", FermionicZeroWarning)
            val += coeffs.c4 * (
                (1.0 if n == k else 0.0) * hole_m
                - bilinear(state, k, m, ANNIHILATE_ANNIHILATE) * bilinear(state, m, n, CREATE_CREATE)
            )
    return val


def _spins(spin):
    if spin == "both":
        return (0, 1)
    return (PhaseLayout._spin_index(spin),)


def left_current(state: PhaseState, leads: LeadDiscretization, spin="both") -> float:
    """Mapped current out of the left lead, optionally for a single spin."""
    states = state.data[np.newaxis, :]
    total = 0.0
    for s in _spins(spin):
        total += _current_series(states, state.layout, leads, s)[0]
    return float(total)


def left_current_squared(state: PhaseState, leads: LeadDiscretization, spin):
    """Mapped second moment of the left current for one spin channel.

    Returns (value, (term1, term2, term3)) with value = term1 - term2 + term3.
    """
    (s,) = _spins(spin)
    states = state.data[np.newaxis, :]
    t1, t2, t3 = _current_squared_terms_series(states, state.layout, leads, s)
    return float(t1[0] - t2[0] + t3[0]), (float(t1[0]), float(t2[0]), float(t3[0]))


# ---------------------------------------------------------------------------
# Vectorized evaluation over arrays of states (n_times, dim).  These are the
# production path of the ensemble runner; the scalar functions above are the
# readable single-point forms the tests compare against.
#
# In complex shorthand z = x + i y, w = p_x + i p_y the bilinears become
#   a_n^dag a_m      -> (i/2) (z_n conj(w_m) - conj(z_m) w_n)
#   a_n^dag a_m^dag  -> (i/2) (z_n w_m - z_m w_n)
#   a_n a_m          -> (i/2) conj(z_n w_m - z_m w_n)
# which lets lead sums like sum_k t_k (...) factorize into O(n_modes) work.
# ---------------------------------------------------------------------------


def _complex_blocks(states: np.ndarray, layout: PhaseLayout):
    s = layout.n_sites
    z = states[:, 0:s] + 1j * states[:, s : 2 * s]
    w = states[:, 2 * s : 3 * s] + 1j * states[:, 3 * s : 4 * s]
    return z, w


def population_series(states: np.ndarray, layout: PhaseLayout, spin) -> np.ndarray:
    """Dot occupation per time point; spin 'both' sums the two channels."""
    s = layout.n_sites
    out = 0.0
    for sp in _spins(spin):
        d = layout.dot(sp)
        out = out + (
            states[:, d] * states[:, 3 * s + d] - states[:, s + d] * states[:, 2 * s + d]
        )
    return out


def _left_weighted(states, layout, leads, s):
    """(z_dot, w_dot, Z, W, T2): dot coordinates and t_k-weighted left-mode sums."""
    z, w = _complex_blocks(states, layout)
    left = leads.modes_of("L")
    t = leads.couplings[left]
    sl = layout.mode_slice(s)
    zk = z[:, sl][:, left]
    wk = w[:, sl][:, left]
    return z[:, layout.dot(s)], w[:, layout.dot(s)], zk @ t, wk @ t, float(np.dot(t, t))


def _current_series(states, layout, leads, s) -> np.ndarray:
    zd, wd, zw, ww, _ = _left_weighted(states, layout, leads, s)
    return np.real(np.conj(zd) * ww) - np.real(np.conj(wd) * zw)


def current_series(states: np.ndarray, layout: PhaseLayout, leads, spin) -> np.ndarray:
    """Left-lead current per time point."""
    out = 0.0
    for s in _spins(spin):
        out = out + _current_series(states, layout, leads, s)
    return out


def _current_squared_terms_series(states, layout, leads, s):
    """The three lead-pair sums entering the current second moment.

    All double sums over left-lead modes factorize through the t_k-weighted
    coordinates Z, W; the equal-index corrections vanish identically because
    the off-diagonal bilinears reduce to the diagonal images at n = m.
    """
    zd, wd, zw, ww, t2 = _left_weighted(states, layout, leads, s)
    n_dot = np.imag(np.conj(zd) * wd)

    # sum_j t_j (c_j^dag d) and its conjugate partner
    a1 = 0.5j * (zw * np.conj(wd) - np.conj(zd) * ww)
    term1 = 2.0 * np.abs(a1) ** 2

    # sum_jk t_j t_k (c_j^dag c_k) collapses to the weighted diagonal image
    ca_ll = np.imag(np.conj(zw) * ww)
    b1 = 0.5j * (zw * wd - zd * ww)  # sum_j t_j (c_j^dag d^dag)
    term2 = ca_ll + t2 * n_dot - 2.0 * np.abs(b1) ** 2

    term3 = ca_ll * (1.0 - n_dot) + n_dot * (t2 - ca_ll)
    return term1, term2, term3


def current_squared_series(states: np.ndarray, layout: PhaseLayout, leads, spin):
    """(total, term1, term2, term3) of the current second moment per time point."""
    (s,) = _spins(spin)
    t1, t2, t3 = _current_squared_terms_series(states, layout, leads, s)
    return t1 - t2 + t3, t1, t2, t3


# ---------------------------------------------------------------------------
# Quadratic-form representation, used by the bracket-correspondence tests.
# A mapped bilinear is A(R) = R^T M R with M complex symmetric; its gradient
# 2 M R is exact, so Poisson brackets evaluate without finite differences.
# ---------------------------------------------------------------------------


def bilinear_form(kind: str, n: int, m: int, layout: PhaseLayout) -> np.ndarray:
    """Symmetric matrix M such that bilinear(state, n, m, kind) = R^T M R."""
    dim = layout.dim
    mat = np.zeros((dim, dim), dtype=complex)

    def add(coef, a, b):
        mat[a, b] += coef / 2.0
        mat[b, a] += coef / 2.0

    ix, iy, ipx, ipy = layout.x, layout.y, layout.px, layout.py
    if kind == CREATE_ANNIHILATE and n == m:
        add(1.0, ix(n), ipy(n))
        add(-1.0, iy(n), ipx(n))
        return mat
    if kind in (CREATE_CREATE, ANNIHILATE_ANNIHILATE) and n == m:
        return mat

    half = 0.5
    if kind == CREATE_ANNIHILATE:
        for coef, a, b in [
            (half * 1j, ix(n), ipx(m)),
            (-half * 1j, ipx(n), ix(m)),
            (half * 1j, iy(n), ipy(m)),
            (-half * 1j, ipy(n), iy(m)),
            (half, ix(n), ipy(m)),
            (-half, ipx(n), iy(m)),
            (half, ix(m), ipy(n)),
            (-half, ipx(m), iy(n)),
        ]:
            add(coef, a, b)
    elif kind == CREATE_CREATE:
        for coef, a, b in [
            (half * 1j, ix(n), ipx(m)),
            (-half * 1j, ipx(n), ix(m)),
            (-half * 1j, iy(n), ipy(m)),
            (half * 1j, ipy(n), iy(m)),
            (-half, ix(n), ipy(m)),
            (half, ipx(n), iy(m)),
            (half, ix(m), ipy(n)),
            (-half, ipx(m), iy(n)),
        ]:
            add(coef, a, b)
    elif kind == ANNIHILATE_ANNIHILATE:
        for coef, a, b in [
            (half * 1j, ix(n), ipx(m)),
            (-half * 1j, ipx(n), ix(m)),
            (-half * 1j, iy(n), ipy(m)),
            (half * 1j, ipy(n), iy(m)),
            (half, ix(n), ipy(m)),
            (-half, ipx(n), iy(m)),
            (-half, ix(m), ipy(n)),
            (half, ipx(m), iy(n)),
        ]:
            add(coef, a, b)
    else:
        raise ValueError(f"unknown bilinear kind: {kind!r}")
    return mat


def symplectic_matrix(layout: PhaseLayout) -> np.ndarray:
    """Poisson tensor J with {x, p_x} = {y, p_y} = 1 per site."""
    dim = layout.dim
    j = np.zeros((dim, dim))
    for site in range(layout.n_sites):
        for q, p in ((layout.x(site), layout.px(site)), (layout.y(site), layout.py(site))):
            j[q, p] = 1.0
            j[p, q] = -1.0
    return j


def poisson_bracket_forms(ma: np.ndarray, mb: np.ndarray, j: np.ndarray, r: np.ndarray):
    """{A, B} at phase point r for quadratic forms A = r^T ma r, B = r^T mb r."""
    return (2.0 * ma @ r) @ j @ (2.0 * mb @ r)
