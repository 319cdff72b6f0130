"""Beam-splitter interaction with the vacuum and the photon-loss channel.

A beam splitter of transmission T maps |n>|0> to a binomial superposition
sum_m sqrt(C(n,m) T^m (1-T)^(n-m)) |m>|n-m| of kept and lost quanta.  For a
pure input sum_n psi_n |n> the two-mode output is fully described by the
coefficient matrix M[m, k] = psi_{m+k} sqrt(C(m+k, m) T^m (1-T)^k), whose
singular values are the Schmidt coefficients of the kept/lost bipartition.

Tracing out the lost arm gives the photon-loss channel.  Its Kraus operators
on the truncated basis are K_n[j, j+n] = sqrt(C(j+n, n) T^j (1-T)^n), i.e.
"lose exactly n quanta".  For inputs supported below the cutoff the family is
exactly trace preserving, and the loss channel and the beam-splitter picture
agree: reduced_state(beam_splitter_output(psi, T)) == loss_apply(|psi><psi|, T)
up to roundoff.

All binomial weights are evaluated through log-gamma, so cutoffs far beyond
the factorial overflow point (n ~ 170) remain usable.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import CutoffError, DomainError, UndefinedStateError
from .fock import (
    NORM_TOL,
    SUPPORT_EPS,
    DensityMatrix,
    PureState,
    annihilation_matrix,
    as_density,
    number_matrix,
)


def validate_transmission(transmission: float, open_interval: bool = False) -> float:
    """Return transmission as a float in [0, 1], or (0, 1) when required."""
    t = float(transmission)
    if not np.isfinite(t) or not (0.0 <= t <= 1.0):
        raise DomainError(f"transmission {transmission!r} outside [0, 1]")
    if open_interval and (t == 0.0 or t == 1.0):
        raise DomainError(f"transmission {t} must lie strictly inside (0, 1)")
    return t


@dataclass(frozen=True)
class SchmidtMatrix:
    """Two-mode coefficient matrix of a beam-splitter output.

    entries[m, k] is the amplitude on |m>_kept |k>_lost.  Nonzero entries sit
    on anti-diagonals m + k = n <= max occupied level of the input, and the
    Frobenius norm is 1 (two-mode normalization).
    """

    entries: np.ndarray
    transmission: float

    def __post_init__(self):
        mat = np.asarray(self.entries, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] == 0:
            raise DomainError(f"Schmidt matrix must be square, got shape {mat.shape}")
        norm = np.linalg.norm(mat)
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"two-mode norm {norm!r} deviates from 1 by more than {NORM_TOL:.0e}")
        validate_transmission(self.transmission)
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "entries", mat)
        object.__setattr__(self, "transmission", float(self.transmission))

    @property
    def cutoff(self) -> int:
        return self.entries.shape[0]

    @property
    def max_total_occupation(self) -> int:
        """Largest m + k holding amplitude above the support threshold."""
        m, k = np.nonzero(np.abs(self.entries) > SUPPORT_EPS)
        if m.size == 0:
            return 0
        return int(np.max(m + k))


def _split_weights(n: int, transmission: float) -> np.ndarray:
    """sqrt(C(n, m) T^m (1-T)^(n-m)) for m = 0..n, with exact endpoints."""
    if n == 0:
        return np.ones(1)
    m = np.arange(n + 1)
    if transmission == 0.0 or transmission == 1.0:
        w = np.zeros(n + 1)
        w[n if transmission == 1.0 else 0] = 1.0
        return w
    log_binom = gammaln(n + 1) - gammaln(m + 1) - gammaln(n - m + 1)
    log_w = log_binom + m * np.log(transmission) + (n - m) * np.log1p(-transmission)
    return np.exp(0.5 * log_w)


def beam_splitter_output(state: PureState, transmission: float) -> SchmidtMatrix:
    """Two-mode coefficient matrix of psi hitting a beam splitter with vacuum."""
    t = validate_transmission(transmission)
    cutoff = state.cutoff
    mat = np.zeros((cutoff, cutoff), dtype=complex)
    for n in range(cutoff):
        amp = state.amplitudes[n]
        if amp == 0.0:
            continue
        m = np.arange(n + 1)
        mat[m, n - m] += amp * _split_weights(n, t)
    return SchmidtMatrix(mat, t)


def schmidt_values(schmidt: SchmidtMatrix) -> np.ndarray:
    """Schmidt coefficients (singular values of the coefficient matrix), descending."""
    return np.linalg.svd(schmidt.entries, compute_uv=False)


def reduced_state(schmidt: SchmidtMatrix) -> DensityMatrix:
    """State of the kept arm: M M^dagger."""
    mat = schmidt.entries
    return DensityMatrix(mat @ mat.conj().T)


def kraus_operator(n: int, transmission: float, cutoff: int) -> np.ndarray:
    """Loss-channel Kraus operator K_n ("lose exactly n quanta") on a D-level space."""
    t = validate_transmission(transmission)
    if not (0 <= n < cutoff):
        raise CutoffError(f"Kraus index {n} outside [0, {cutoff - 1}]")
    k = np.zeros((cutoff, cutoff), dtype=complex)
    j = np.arange(cutoff - n)
    if t == 0.0:
        if n == 0:
            k[0, 0] = 1.0
        else:
            k[0, n] = 1.0
        return k
    if t == 1.0:
        if n == 0:
            np.fill_diagonal(k, 1.0)
        return k
    log_binom = gammaln(j + n + 1) - gammaln(j + 1) - gammaln(n + 1)
    log_w = log_binom + j * np.log(t) + n * np.log1p(-t)
    k[j, j + n] = np.exp(0.5 * log_w)
    return k


@functools.lru_cache(maxsize=4096)
def _kraus_family(transmission: float, cutoff: int) -> tuple[np.ndarray, ...]:
    """All D Kraus operators for one (T, D), cached because sweeps reuse them heavily."""
    ops = []
    for n in range(cutoff):
        k = kraus_operator(n, transmission, cutoff)
        k.flags.writeable = False
        ops.append(k)
    return tuple(ops)


def loss_apply(state: DensityMatrix, transmission: float) -> DensityMatrix:
    """Photon-loss channel sum_n K_n rho K_n^dagger at the given transmission."""
    t = validate_transmission(transmission)
    rho = state.matrix
    out = np.zeros_like(rho)
    for k in _kraus_family(t, state.cutoff):
        out += k @ rho @ k.conj().T
    return DensityMatrix(out, budget=state.budget)


def _psd_sqrt(mat: np.ndarray) -> np.ndarray:
    """Hermitian square root with tiny negative eigenvalues clipped to zero."""
    vals, vecs = np.linalg.eigh(mat)
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def photon_subtracted_state(state: DensityMatrix) -> DensityMatrix:
    """Normalized a rho a^dagger.  Undefined when rho has no photons to remove."""
    rho = state.matrix
    a = annihilation_matrix(state.cutoff)
    raw = a @ rho @ a.conj().T
    weight = float(np.trace(raw).real)
    if weight <= SUPPORT_EPS:
        raise UndefinedStateError("photon subtraction from a state with no photons")
    return DensityMatrix(raw / weight)


def number_sandwiched_state(state: DensityMatrix) -> DensityMatrix:
    """Normalized sqrt(rho) n sqrt(rho), isospectral partner of photon subtraction."""
    rho = state.matrix
    root = _psd_sqrt(rho)
    raw = root @ number_matrix(state.cutoff) @ root
    weight = float(np.trace(raw).real)
    if weight <= SUPPORT_EPS:
        raise UndefinedStateError("number sandwich of a state with no photons")
    return DensityMatrix(raw / weight)


def check_schmidt_transpose(state: PureState, transmission: float) -> float:
    """Max-abs residual of M(1-T) against M(T) transposed (exchange symmetry)."""
    t = validate_transmission(transmission)
    m_t = beam_splitter_output(state, t).entries
    m_swap = beam_splitter_output(state, 1.0 - t).entries
    return float(np.max(np.abs(m_swap - m_t.T)))


def check_kraus_commutation(transmission: float, n: int, cutoff: int) -> float:
    """Max-abs residual of a K_n - sqrt(T) K_n a on the truncated space.

    The identity is exact even after truncation: both sides only connect basis
    states inside the cutoff, so the residual is pure floating-point noise.
    """
    t = validate_transmission(transmission)
    k = kraus_operator(n, t, cutoff)
    a = annihilation_matrix(cutoff)
    return float(np.max(np.abs(a @ k - np.sqrt(t) * (k @ a))))


def check_multiplicativity(state: DensityMatrix, t_first: float, t_second: float) -> float:
    """Max-abs residual of composing losses T1 then T2 against a single loss T1*T2."""
    one = loss_apply(loss_apply(state, t_first), t_second)
    both = loss_apply(state, validate_transmission(t_first) * validate_transmission(t_second))
    return float(np.max(np.abs(one.matrix - both.matrix)))


def lossy_state(state, transmission: float) -> DensityMatrix:
    """State after the loss channel, accepting pure or mixed input.

    Pure inputs go through the beam-splitter picture (reduced state of the
    coefficient matrix); mixed inputs through the Kraus sum.  The two routes
    agree to roundoff and are cross-checked in the test suite.
    """
    if isinstance(state, PureState):
        return reduced_state(beam_splitter_output(state, transmission))
    return loss_apply(as_density(state), transmission)
