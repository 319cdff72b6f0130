"""States and operators on a truncated single-mode Fock space.

A single bosonic mode is represented on the number basis |0>, ..., |D-1>,
where D is the cutoff.  Pure states are complex amplitude vectors of length D,
mixed states are D x D density matrices.  States that live exactly inside the
cutoff (Fock states, finite superpositions, random pure states) carry no
truncation budget; states obtained by chopping an infinite-dimensional family
(coherent, thermal) carry a :class:`TruncationBudget` recording the discarded
tail so downstream code can refuse operations that are only meaningful for
genuinely finite-dimensional inputs.

Conventions used throughout the package:

* amplitudes and matrices are numpy arrays with dtype complex128, frozen
  read-only after validation;
* normalization and hermiticity are enforced to 1e-12, positivity to -1e-10
  on the smallest eigenvalue;
* the tail weight of a truncated state must stay below 1e-12 for the
  truncation to be accepted at all, and auto-sized cutoffs aim much lower
  (1e-24) so that tail-induced errors stay clear of the tightest tolerances
  used by the verification suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats
from scipy.special import gammaln

from .errors import CutoffError, DegenerateInputError, DomainError, TruncationError

NORM_TOL = 1e-12
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10
SUPPORT_EPS = 1e-12

# Hard bound on tail mass for any accepted truncation.
TAIL_BOUND = 1e-12
# Target used when the constructor picks the cutoff itself.  Far below
# TAIL_BOUND so truncation error never competes with check tolerances.
AUTO_TAIL_TARGET = 1e-24
# Largest cutoff the auto-sizing loop will try before giving up.
MAX_AUTO_CUTOFF = 256


@dataclass(frozen=True)
class TruncationBudget:
    """Mass and energy discarded when an infinite family was cut at ``cutoff``.

    tail_weight is the total probability above the highest kept level and
    tail_energy the corresponding mean-photon-number contribution.  A budget
    with tail_weight == 0 is allowed and marks an exactly representable state.
    """

    tail_weight: float
    tail_energy: float

    def __post_init__(self):
        if not (0.0 <= self.tail_weight < 1.0):
            raise DomainError(f"tail weight {self.tail_weight} outside [0, 1)")
        if self.tail_energy < 0.0:
            raise DomainError(f"tail energy {self.tail_energy} is negative")
        if self.tail_weight > TAIL_BOUND:
            raise TruncationError(
                f"tail weight {self.tail_weight:.3e} exceeds the allowed bound {TAIL_BOUND:.0e}"
            )


@dataclass(frozen=True)
class PureState:
    """Normalized pure state on the truncated number basis."""

    amplitudes: np.ndarray
    budget: TruncationBudget | None = None

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.ndim != 1 or amp.size == 0:
            raise DomainError("amplitudes must form a nonempty vector")
        norm = np.linalg.norm(amp)
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"state norm {norm!r} deviates from 1 by more than {NORM_TOL:.0e}")
        amp = amp.copy()
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    @property
    def cutoff(self) -> int:
        return self.amplitudes.size

    @property
    def max_occupied(self) -> int:
        """Highest Fock level carrying amplitude above the support threshold."""
        occ = np.flatnonzero(np.abs(self.amplitudes) > SUPPORT_EPS)
        if occ.size == 0:
            # Normalization guarantees some weight; fall back to the raw maximum.
            return int(np.argmax(np.abs(self.amplitudes)))
        return int(occ[-1])

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def is_finite_support(self) -> bool:
        """True when the state is exact, i.e. not a truncated infinite family."""
        return self.budget is None or self.budget.tail_weight == 0.0


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix on the truncated basis."""

    matrix: np.ndarray
    budget: TruncationBudget | None = None

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] == 0:
            raise DomainError(f"density matrix must be square, got shape {mat.shape}")
        herm = np.max(np.abs(mat - mat.conj().T))
        if herm > HERMITICITY_TOL:
            raise DomainError(f"hermiticity defect {herm:.3e} exceeds {HERMITICITY_TOL:.0e}")
        trace = complex(np.trace(mat)).real
        if abs(trace - 1.0) > TRACE_TOL:
            raise DomainError(f"trace {trace!r} deviates from 1 by more than {TRACE_TOL:.0e}")
        lo = float(np.linalg.eigvalsh(mat)[0])
        if lo < EIGENVALUE_FLOOR:
            raise DomainError(f"smallest eigenvalue {lo:.3e} below the floor {EIGENVALUE_FLOOR:.0e}")
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)

    @property
    def cutoff(self) -> int:
        return self.matrix.shape[0]

    @property
    def populations(self) -> np.ndarray:
        return np.real(np.diag(self.matrix))

    def eigenvalues(self) -> np.ndarray:
        """Spectrum in ascending order (real, may carry -1e-10 level noise)."""
        return np.linalg.eigvalsh(self.matrix)


@dataclass(frozen=True)
class Ensemble:
    """Finite classical mixture of pure states with a common cutoff."""

    weights: np.ndarray
    members: tuple[PureState, ...]

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        members = tuple(self.members)
        if w.ndim != 1 or w.size != len(members) or w.size == 0:
            raise DomainError("weights and members must be nonempty and of equal length")
        if np.any(w < 0.0):
            raise DomainError("ensemble weights must be nonnegative")
        total = float(np.sum(w))
        if abs(total - 1.0) > NORM_TOL:
            raise DegenerateInputError(f"ensemble weights sum to {total!r}, not 1")
        cutoffs = {m.cutoff for m in members}
        if len(cutoffs) != 1:
            raise CutoffError(f"ensemble members disagree on cutoff: {sorted(cutoffs)}")
        w = w.copy()
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "members", members)

    @property
    def cutoff(self) -> int:
        return self.members[0].cutoff

    def average_state(self) -> DensityMatrix:
        """The barycenter sum_k w_k |psi_k><psi_k| as a density matrix."""
        rho = np.zeros((self.cutoff, self.cutoff), dtype=complex)
        for w, psi in zip(self.weights, self.members):
            rho += w * np.outer(psi.amplitudes, psi.amplitudes.conj())
        return DensityMatrix(rho)


def projector(state: PureState) -> DensityMatrix:
    """Rank-one density matrix |psi><psi| of a pure state."""
    amp = state.amplitudes
    return DensityMatrix(np.outer(amp, amp.conj()), budget=state.budget)


def as_density(state) -> DensityMatrix:
    """Coerce a PureState or DensityMatrix to a DensityMatrix."""
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, PureState):
        return projector(state)
    raise DomainError(f"expected PureState or DensityMatrix, got {type(state).__name__}")


def make_fock(n: int, cutoff: int | None = None) -> PureState:
    """Number state |n>.  Default cutoff is the smallest that holds it, n + 1."""
    if n < 0:
        raise DomainError(f"Fock level must be nonnegative, got {n}")
    if cutoff is None:
        cutoff = n + 1
    if cutoff < n + 1:
        raise CutoffError(f"Fock level {n} does not fit below cutoff {cutoff}")
    amp = np.zeros(cutoff, dtype=complex)
    amp[n] = 1.0
    return PureState(amp)


def make_superposition(terms, cutoff: int | None = None) -> PureState:
    """Normalized superposition from (coefficient, level) pairs.

    Coefficients may be any complex numbers with nonzero joint norm; repeated
    levels accumulate.  Default cutoff is max level + 1.
    """
    terms = list(terms)
    if not terms:
        raise DegenerateInputError("superposition needs at least one term")
    levels = [int(lvl) for _, lvl in terms]
    if min(levels) < 0:
        raise DomainError(f"negative Fock level in superposition: {min(levels)}")
    if cutoff is None:
        cutoff = max(levels) + 1
    if cutoff < max(levels) + 1:
        raise CutoffError(f"level {max(levels)} does not fit below cutoff {cutoff}")
    amp = np.zeros(cutoff, dtype=complex)
    for coeff, lvl in terms:
        amp[int(lvl)] += complex(coeff)
    norm = np.linalg.norm(amp)
    if norm <= SUPPORT_EPS:
        raise DegenerateInputError("superposition coefficients cancel to zero")
    return PureState(amp / norm)


def coherent_cutoff(alpha: complex, tail_target: float = AUTO_TAIL_TARGET) -> int:
    """Smallest cutoff D with Poisson tail mass P(n >= D) below tail_target."""
    mean = abs(alpha) ** 2
    if mean == 0.0:
        return 1
    for cut in range(1, MAX_AUTO_CUTOFF + 1):
        if stats.poisson.sf(cut - 1, mean) < tail_target:
            return cut
    raise TruncationError(
        f"coherent state |alpha|^2={mean:.3g} needs cutoff above {MAX_AUTO_CUTOFF} "
        f"for tail target {tail_target:.0e}"
    )


def make_coherent(alpha: complex, cutoff: int | None = None) -> PureState:
    """Truncated and renormalized coherent state |alpha>.

    With cutoff=None the cutoff is auto-sized so the discarded Poisson tail
    is below AUTO_TAIL_TARGET.  An explicit cutoff is accepted only when the
    tail stays below TAIL_BOUND; otherwise a TruncationError is raised.
    """
    alpha = complex(alpha)
    if cutoff is None:
        cutoff = coherent_cutoff(alpha)
    if cutoff < 1:
        raise CutoffError(f"cutoff must be at least 1, got {cutoff}")
    mean = abs(alpha) ** 2
    n = np.arange(cutoff)
    if mean == 0.0:
        amp = np.zeros(cutoff, dtype=complex)
        amp[0] = 1.0
        return PureState(amp, budget=TruncationBudget(0.0, 0.0))
    # amplitudes exp(-|a|^2/2) a^n / sqrt(n!), in log magnitude to stay stable
    log_mag = 0.5 * (n * np.log(mean) - gammaln(n + 1)) - mean / 2.0
    phase = np.angle(alpha) * n
    amp = np.exp(log_mag) * np.exp(1j * phase)
    tail_weight = float(stats.poisson.sf(cutoff - 1, mean))
    if tail_weight > TAIL_BOUND:
        raise TruncationError(
            f"coherent tail weight {tail_weight:.3e} at cutoff {cutoff} exceeds {TAIL_BOUND:.0e}"
        )
    # E[n ; n >= D] for Poisson: mean * P(n >= D - 1)
    tail_energy = float(mean * stats.poisson.sf(cutoff - 2, mean)) if cutoff >= 2 else mean
    amp = amp / np.linalg.norm(amp)
    return PureState(amp, budget=TruncationBudget(tail_weight, tail_energy))


def thermal_cutoff(mean_photons: float, tail_target: float = AUTO_TAIL_TARGET) -> int:
    """Smallest cutoff D with geometric tail mass q**D below tail_target."""
    if mean_photons == 0.0:
        return 1
    q = mean_photons / (1.0 + mean_photons)
    for cut in range(1, MAX_AUTO_CUTOFF + 1):
        if q**cut < tail_target:
            return cut
    raise TruncationError(
        f"thermal state nbar={mean_photons:.3g} needs cutoff above {MAX_AUTO_CUTOFF} "
        f"for tail target {tail_target:.0e}"
    )


def make_thermal(mean_photons: float, cutoff: int | None = None) -> DensityMatrix:
    """Truncated and renormalized thermal state with the given mean photon number.

    Populations follow the geometric law (1-q) q^n with q = nbar / (1 + nbar).
    Cutoff selection mirrors make_coherent: auto-sized against AUTO_TAIL_TARGET,
    explicit cutoffs validated against TAIL_BOUND.
    """
    if mean_photons < 0.0:
        raise DomainError(f"mean photon number must be nonnegative, got {mean_photons}")
    if cutoff is None:
        cutoff = thermal_cutoff(mean_photons)
    if cutoff < 1:
        raise CutoffError(f"cutoff must be at least 1, got {cutoff}")
    if mean_photons == 0.0:
        mat = np.zeros((cutoff, cutoff), dtype=complex)
        mat[0, 0] = 1.0
        return DensityMatrix(mat, budget=TruncationBudget(0.0, 0.0))
    q = mean_photons / (1.0 + mean_photons)
    n = np.arange(cutoff)
    pops = (1.0 - q) * q**n
    tail_weight = float(q**cutoff)
    if tail_weight > TAIL_BOUND:
        raise TruncationError(
            f"thermal tail weight {tail_weight:.3e} at cutoff {cutoff} exceeds {TAIL_BOUND:.0e}"
        )
    # sum_{n>=D} n (1-q) q^n = q^D (D + q/(1-q))
    tail_energy = tail_weight * (cutoff + q / (1.0 - q))
    pops = pops / pops.sum()
    return DensityMatrix(np.diag(pops).astype(complex), budget=TruncationBudget(tail_weight, tail_energy))


def make_random_pure(cutoff: int, seed: int) -> PureState:
    """Haar-like random pure state: normalized complex Gaussian amplitudes."""
    if cutoff < 1:
        raise CutoffError(f"cutoff must be at least 1, got {cutoff}")
    rng = np.random.default_rng(seed)
    amp = rng.standard_normal(cutoff) + 1j * rng.standard_normal(cutoff)
    norm = np.linalg.norm(amp)
    if norm <= SUPPORT_EPS:  # astronomically unlikely, but keep the contract total
        raise DegenerateInputError("random draw produced a zero vector")
    return PureState(amp / norm)


def make_random_mixed(cutoff: int, seed: int, rank: int | None = None) -> DensityMatrix:
    """Random density matrix G G^dagger / tr(...) from a complex Gaussian G.

    rank limits the number of Ginibre columns (default: full rank = cutoff).
    """
    if cutoff < 1:
        raise CutoffError(f"cutoff must be at least 1, got {cutoff}")
    if rank is None:
        rank = cutoff
    if not (1 <= rank <= cutoff):
        raise DomainError(f"rank must lie in [1, {cutoff}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((cutoff, rank)) + 1j * rng.standard_normal((cutoff, rank))
    mat = g @ g.conj().T
    return DensityMatrix(mat / np.trace(mat).real)


def annihilation_matrix(cutoff: int) -> np.ndarray:
    """Truncated annihilation operator: a|n> = sqrt(n)|n-1>, a|D-1> ends the ladder."""
    if cutoff < 1:
        raise CutoffError(f"cutoff must be at least 1, got {cutoff}")
    a = np.zeros((cutoff, cutoff), dtype=complex)
    n = np.arange(1, cutoff)
    a[n - 1, n] = np.sqrt(n)
    return a


def number_matrix(cutoff: int) -> np.ndarray:
    """Truncated photon-number operator diag(0, 1, ..., D-1)."""
    if cutoff < 1:
        raise CutoffError(f"cutoff must be at least 1, got {cutoff}")
    return np.diag(np.arange(cutoff, dtype=float)).astype(complex)


def mean_photon_number(state) -> float:
    """<n> of a pure or mixed state on the truncated basis."""
    if isinstance(state, PureState):
        pops = state.populations
    elif isinstance(state, DensityMatrix):
        pops = state.populations
    else:
        raise DomainError(f"expected PureState or DensityMatrix, got {type(state).__name__}")
    return float(np.dot(np.arange(pops.size), pops))
