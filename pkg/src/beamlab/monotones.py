"""Entanglement and mixedness monotones of lossy states.

All entropies use the natural logarithm; results are in nats.  Eigenvalues at
or below EIG_FLOOR (1e-14) are treated as exact zeros: channel outputs carry
eigenvalue noise at the 1e-15 level and log-weighting would otherwise turn it
into garbage.

The menu of monotones evaluated along a transmission sweep is described by
:class:`MonotoneKind`; :func:`evaluate_monotone` is the single dispatch point
used by the sweep engine and the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from .channels import (
    SchmidtMatrix,
    beam_splitter_output,
    loss_apply,
    lossy_state,
    number_sandwiched_state,
    photon_subtracted_state,
    reduced_state,
    schmidt_values,
    validate_transmission,
)
from .errors import CutoffError, DomainError, FiniteDimensionError, SupportError
from .fock import DensityMatrix, Ensemble, PureState, as_density, mean_photon_number

EIG_FLOOR = 1e-14
# Probability a state may place on the kernel of the reference before
# relative entropy is declared infinite.
SUPPORT_LEAK_TOL = 1e-10

KIND_NAMES = ("von_neumann", "renyi", "purity", "mixedness", "g_concurrence", "qcs_witness")
ENTANGLEMENT_KINDS = ("von_neumann", "renyi", "purity", "mixedness", "g_concurrence")


@dataclass(frozen=True)
class MonotoneKind:
    """A named monotone, with the order parameter for the Renyi family."""

    name: str
    alpha: float | None = None

    def __post_init__(self):
        if self.name not in KIND_NAMES:
            raise DomainError(f"unknown monotone kind {self.name!r}; expected one of {KIND_NAMES}")
        if self.name == "renyi":
            if self.alpha is None:
                raise DomainError("renyi kind needs an order alpha")
            if not (self.alpha > 0.0) or not np.isfinite(self.alpha):
                raise DomainError(f"renyi order must be positive and finite, got {self.alpha}")
        elif self.alpha is not None:
            raise DomainError(f"kind {self.name!r} takes no order parameter")

    @property
    def label(self) -> str:
        if self.name == "renyi":
            alpha = self.alpha
            text = f"{alpha:g}" if alpha != int(alpha) else f"{int(alpha)}"
            return f"renyi:{text}"
        return self.name

    @classmethod
    def from_label(cls, label: str) -> "MonotoneKind":
        name, sep, rest = label.strip().lower().partition(":")
        if name == "renyi":
            if not sep:
                raise DomainError("renyi kind needs an order, e.g. renyi:2")
            try:
                alpha = float(rest)
            except ValueError:
                raise DomainError(f"bad renyi order {rest!r}") from None
            return cls("renyi", alpha)
        if sep:
            raise DomainError(f"kind {name!r} takes no parameter, got {label!r}")
        return cls(name)


def _support_spectrum(state: DensityMatrix) -> np.ndarray:
    vals = state.eigenvalues()
    return vals[vals > EIG_FLOOR]


def von_neumann_entropy(state: DensityMatrix) -> float:
    """- sum lam ln lam over the spectrum, zeros dropped.  In nats."""
    lam = _support_spectrum(state)
    return float(-np.sum(lam * np.log(lam)))


def renyi_entropy(state: DensityMatrix, alpha: float) -> float:
    """Order-alpha Renyi entropy (1/(1-alpha)) ln sum lam^alpha, alpha=1 -> von Neumann."""
    if not (alpha > 0.0) or not np.isfinite(alpha):
        raise DomainError(f"Renyi order must be positive and finite, got {alpha}")
    if alpha == 1.0:
        return von_neumann_entropy(state)
    lam = _support_spectrum(state)
    # log-domain power sum; safe for large alpha where lam**alpha underflows
    return float(logsumexp(alpha * np.log(lam)) / (1.0 - alpha))


def purity(state: DensityMatrix) -> float:
    """tr rho^2, computed as the squared Frobenius norm."""
    return float(np.linalg.norm(state.matrix, "fro") ** 2)


def mixedness(state: DensityMatrix) -> float:
    """Linear entropy 1 - tr rho^2."""
    return 1.0 - purity(state)


def _resolve_block_size(schmidt: SchmidtMatrix, max_occupied: int | None) -> int:
    n = schmidt.max_total_occupation if max_occupied is None else int(max_occupied)
    if n < 0:
        raise DomainError(f"max occupied level must be nonnegative, got {n}")
    if n + 1 > schmidt.cutoff:
        raise CutoffError(f"block size {n + 1} exceeds cutoff {schmidt.cutoff}")
    return n


def g_concurrence(schmidt: SchmidtMatrix, max_occupied: int | None = None) -> float:
    """G-concurrence d * (prod of the top d Schmidt coefficients)^(2/d).

    d = max_occupied + 1 is fixed by the input state, not by the transmission,
    so the value decays to zero (rather than jumping between block sizes) as
    T approaches 0 or 1.  Computed in the log domain from LAPACK singular
    values, which retain full relative accuracy on these graded matrices.
    """
    n = _resolve_block_size(schmidt, max_occupied)
    d = n + 1
    s = schmidt_values(schmidt)[:d]
    if np.any(s <= 0.0):
        return 0.0
    return float(d * np.exp((2.0 / d) * np.sum(np.log(s))))


def g_concurrence_closed_form(state: PureState, transmission: float) -> float:
    """Independent route to the G-concurrence of a beam-splitter output.

    The coefficient matrix vanishes above the anti-diagonal m + k = N, so the
    determinant of its (N+1)-block is the anti-diagonal product, and
    G = (N+1) |psi_N|^2 N! (prod_{n<=N} n!)^(-2/(N+1)) (T(1-T))^(N/2) exactly.
    Used to cross-check the singular-value route.
    """
    t = validate_transmission(transmission)
    n = state.max_occupied
    if n == 0:
        return 1.0
    if t == 0.0 or t == 1.0:
        return 0.0
    amp = abs(state.amplitudes[n])
    d = n + 1
    log_g = (
        np.log(d)
        + 2.0 * np.log(amp)
        + gammaln(d)
        - (2.0 / d) * np.sum(gammaln(np.arange(1, d + 1)))
        + (n / 2.0) * (np.log(t) + np.log1p(-t))
    )
    return float(np.exp(log_g))


def log_block_determinant_svd(schmidt: SchmidtMatrix, max_occupied: int | None = None) -> float:
    """ln |det| of the (N+1)-block from the product of singular values."""
    n = _resolve_block_size(schmidt, max_occupied)
    s = schmidt_values(schmidt)[: n + 1]
    if np.any(s <= 0.0):
        raise DomainError("block is singular; log-determinant undefined")
    return float(np.sum(np.log(s)))


def log_block_determinant_antidiagonal(schmidt: SchmidtMatrix, max_occupied: int | None = None) -> float:
    """ln |det| of the (N+1)-block from its anti-diagonal product.

    Entries above the m + k = N anti-diagonal vanish, so the determinant
    reduces to a single signed product; only its magnitude is returned.
    """
    n = _resolve_block_size(schmidt, max_occupied)
    m = np.arange(n + 1)
    anti = np.abs(schmidt.entries[m, n - m])
    if np.any(anti <= 0.0):
        raise DomainError("anti-diagonal carries a zero; log-determinant undefined")
    return float(np.sum(np.log(anti)))


def relative_entropy(state: DensityMatrix, reference: DensityMatrix) -> float:
    """H(X || Y) = tr X ln X - tr X ln Y in nats.

    Eigenvalues of the reference at or below EIG_FLOOR count as its kernel;
    if the state places more than SUPPORT_LEAK_TOL of probability there the
    quantity is +infinity and a SupportError is raised.
    """
    if state.cutoff != reference.cutoff:
        raise CutoffError(f"cutoff mismatch: {state.cutoff} vs {reference.cutoff}")
    y_vals, y_vecs = np.linalg.eigh(reference.matrix)
    keep = y_vals > EIG_FLOOR
    if not np.all(keep):
        kernel = y_vecs[:, ~keep]
        leak = float(np.real(np.sum(kernel.conj() * (state.matrix @ kernel))))
        if leak > SUPPORT_LEAK_TOL:
            raise SupportError(
                f"state places {leak:.3e} probability outside the reference support"
            )
    x_vals = state.eigenvalues()
    x_vals = x_vals[x_vals > EIG_FLOOR]
    entropy_term = float(np.sum(x_vals * np.log(x_vals)))
    support = y_vecs[:, keep]
    diag = np.real(np.sum(support.conj() * (state.matrix @ support), axis=0))
    cross_term = float(np.dot(diag, np.log(y_vals[keep])))
    return entropy_term - cross_term


def _richardson_derivative(fun, t: float, step: float = 1e-4) -> float:
    """Central difference with one Richardson extrapolation, step clamped into (0, 1)."""
    h = min(step, t / 4.0, (1.0 - t) / 4.0)
    if h <= 0.0:
        raise DomainError(f"cannot differentiate at the boundary point {t}")

    def central(hh):
        return (fun(t + hh) - fun(t - hh)) / (2.0 * hh)

    return (4.0 * central(h / 2.0) - central(h)) / 3.0


def entropy_derivative_identity(state: PureState, transmission: float) -> tuple[float, float]:
    """Both sides of the entropy-flow identity at one transmission.

    lhs: numerical dS(rho_T)/dT.  rhs: <n>_psi times the relative-entropy gap
    between the number-sandwiched and photon-subtracted states against rho_T.
    Returns (lhs, rhs); agreement is limited by the finite-difference step,
    not by the identity.
    """
    t = validate_transmission(transmission, open_interval=True)
    lhs = _richardson_derivative(lambda x: von_neumann_entropy(lossy_state(state, x)), t)
    rho = lossy_state(state, t)
    gap = relative_entropy(number_sandwiched_state(rho), rho) - relative_entropy(
        photon_subtracted_state(rho), rho
    )
    rhs = mean_photon_number(state) * gap
    return lhs, rhs


def relative_entropy_mirror_residual(state: PureState, transmission: float) -> float:
    """|H(tau_T || rho_T) - H(sigma_{1-T} || rho_{1-T})| for a pure input.

    The number-sandwiched state at transmission T and the photon-subtracted
    state at 1 - T have equal relative entropy to their respective lossy
    states; the residual is pure numerical noise.
    """
    t = validate_transmission(transmission, open_interval=True)
    rho_t = lossy_state(state, t)
    rho_m = lossy_state(state, 1.0 - t)
    lhs = relative_entropy(number_sandwiched_state(rho_t), rho_t)
    rhs = relative_entropy(photon_subtracted_state(rho_m), rho_m)
    return abs(lhs - rhs)


def qcs_witness(state, transmission: float) -> float:
    """Witness 1 + T P'(T) / P(T) built from the purity of the lossy state.

    Values stay at or below 1 for T <= 1/2 on every state tested; classical
    coherent inputs pin the witness to 1 for all T.  P'(T) is a Richardson
    central difference, so T must lie strictly inside (0, 1).
    """
    t = validate_transmission(transmission, open_interval=True)
    value = purity(lossy_state(state, t))
    slope = _richardson_derivative(lambda x: purity(lossy_state(state, x)), t)
    return 1.0 + t * slope / value


def ensemble_entanglement(ensemble: Ensemble, kind: MonotoneKind, transmission: float) -> float:
    """Weighted average of a pure-state entanglement monotone over an ensemble."""
    if kind.name not in ENTANGLEMENT_KINDS:
        raise DomainError(f"{kind.label} is not an entanglement monotone")
    total = 0.0
    for weight, member in zip(ensemble.weights, ensemble.members):
        total += float(weight) * evaluate_monotone(member, kind, transmission)
    return total


def evaluate_monotone(state, kind: MonotoneKind, transmission: float) -> float:
    """Evaluate one monotone of the lossy version of a pure, mixed, or ensemble input."""
    if isinstance(state, Ensemble):
        return ensemble_entanglement(state, kind, transmission)
    if kind.name == "qcs_witness":
        return qcs_witness(state, transmission)
    if isinstance(state, PureState):
        if kind.name == "g_concurrence":
            if not state.is_finite_support():
                raise FiniteDimensionError(
                    "g-concurrence requires finite Fock support; this state is a "
                    "truncation of an infinite-dimensional family"
                )
            schmidt = beam_splitter_output(state, transmission)
            return g_concurrence(schmidt, state.max_occupied)
        rho = reduced_state(beam_splitter_output(state, transmission))
    else:
        if kind.name == "g_concurrence":
            raise DomainError("g-concurrence is defined for pure inputs only")
        rho = loss_apply(as_density(state), transmission)
    if kind.name == "von_neumann":
        return von_neumann_entropy(rho)
    if kind.name == "renyi":
        return renyi_entropy(rho, kind.alpha)
    if kind.name == "purity":
        return purity(rho)
    return mixedness(rho)
