"""Overlap of two lossy states as a polynomial in 1 - 2T.

For states rho and sigma pushed through the same loss channel, the overlap
tr[E_T(rho) E_T(sigma)] is a polynomial sum_m p_m (1-2T)^m whose coefficients

    p_m = tr[(rho x sigma) Pi_m]

are expectation values of projectors Pi_m onto m quanta in the difference
mode (a_1 - a_2)/sqrt(2) of the doubled system, hence nonnegative.  With the
self-overlap (sigma = rho of a pure state) this specializes to the purity of
the lossy state, and symmetry under T <-> 1-T forces the odd coefficients to
vanish.

The projectors are expanded exactly: a two-mode number state |j>_+ |m>_- of
the sum and difference modes is a finite combination of |n1, n2> with
n1 + n2 = j + m, and total photon number is conserved, so nothing leaks past
the truncation.  Integer combinatorics are done exactly and only the final
scaling is floating point.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .channels import loss_apply
from .errors import CutoffError, DomainError
from .fock import DensityMatrix, PureState, projector

COEFF_FLOOR_TOL = 1e-12
ODD_COEFF_TOL = 1e-12
SUM_TOL = 1e-8


@dataclass(frozen=True)
class OverlapPolynomial:
    """Coefficients p_0..p_{2(D-1)} of the overlap polynomial in 1 - 2T."""

    coefficients: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=float)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise DomainError("coefficients must form a nonempty vector")
        low = float(np.min(coeffs))
        if low < -COEFF_FLOOR_TOL:
            raise DomainError(f"coefficient {low:.3e} violates nonnegativity")
        total = float(np.sum(coeffs))
        if abs(total - 1.0) > SUM_TOL:
            raise DomainError(f"coefficients sum to {total!r}, expected 1")
        coeffs = coeffs.copy()
        coeffs.flags.writeable = False
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    def evaluate(self, transmission: float) -> float:
        lam = 1.0 - 2.0 * float(transmission)
        return float(np.polynomial.polynomial.polyval(lam, self.coefficients))


@functools.lru_cache(maxsize=None)
def difference_mode_amplitudes(plus_n: int, minus_n: int, cutoff: int):
    """Expansion of |plus_n>_+ |minus_n>_- over the physical basis |n1, n2>.

    Returns (n1_indices, amplitudes) with n2 = plus_n + minus_n - n1 implied;
    only n1 with both occupations below the cutoff appear.  The binomial sums
    are exact integers, so the amplitude signs are exact.
    """
    if plus_n < 0 or minus_n < 0:
        raise DomainError("mode occupations must be nonnegative")
    total = plus_n + minus_n
    if total > 2 * (cutoff - 1):
        raise CutoffError(f"total occupation {total} does not fit below cutoff {cutoff}")
    n1_lo = max(0, total - (cutoff - 1))
    n1_hi = min(total, cutoff - 1)
    indices = np.arange(n1_lo, n1_hi + 1)
    amps = np.zeros(indices.size)
    for pos, n1 in enumerate(indices):
        acc = 0
        for s in range(max(0, n1 - plus_n), min(minus_n, n1) + 1):
            acc += math.comb(plus_n, n1 - s) * math.comb(minus_n, s) * (-1) ** (minus_n - s)
        if acc == 0:
            continue
        log_pref = 0.5 * (
            gammaln(n1 + 1)
            + gammaln(total - n1 + 1)
            - total * math.log(2.0)
            - gammaln(plus_n + 1)
            - gammaln(minus_n + 1)
        )
        amps[pos] = math.copysign(math.exp(math.log(abs(acc)) + log_pref), acc)
    indices.flags.writeable = False
    amps.flags.writeable = False
    return indices, amps


def overlap_coefficients(state: DensityMatrix, other: DensityMatrix) -> OverlapPolynomial:
    """Difference-mode projector weights p_m of the pair (state, other)."""
    if state.cutoff != other.cutoff:
        raise CutoffError(f"cutoff mismatch: {state.cutoff} vs {other.cutoff}")
    cutoff = state.cutoff
    rho = state.matrix
    sigma = other.matrix
    top = 2 * (cutoff - 1)
    coeffs = np.zeros(top + 1)
    for m in range(top + 1):
        acc = 0.0
        for total in range(m, top + 1):
            indices, amps = difference_mode_amplitudes(total - m, m, cutoff)
            rho_sub = rho[np.ix_(indices, indices)]
            sigma_sub = sigma[np.ix_(total - indices, total - indices)]
            acc += float(np.real(amps @ ((rho_sub * sigma_sub) @ amps)))
        coeffs[m] = acc
    return OverlapPolynomial(coeffs)


def overlap_direct(state: DensityMatrix, other: DensityMatrix, transmission: float) -> float:
    """tr[E_T(rho) E_T(sigma)] via the loss channel, no polynomial involved."""
    if state.cutoff != other.cutoff:
        raise CutoffError(f"cutoff mismatch: {state.cutoff} vs {other.cutoff}")
    a = loss_apply(state, transmission).matrix
    b = loss_apply(other, transmission).matrix
    return float(np.real(np.sum(a * b.T)))


def overlap_reconstruct(poly: OverlapPolynomial, transmission: float) -> float:
    """Evaluate the polynomial at lambda = 1 - 2T."""
    return poly.evaluate(transmission)


def purity_polynomial(state: PureState) -> OverlapPolynomial:
    """Self-overlap polynomial of a pure input; its odd coefficients vanish.

    Purity of the lossy state is symmetric under T <-> 1-T for pure inputs,
    which kills every odd power of 1 - 2T.  A violation beyond ODD_COEFF_TOL
    means the machinery itself is broken, so it raises rather than returns.
    """
    rho = projector(state)
    poly = overlap_coefficients(rho, rho)
    odd = poly.coefficients[1::2]
    worst = float(np.max(np.abs(odd))) if odd.size else 0.0
    if worst > ODD_COEFF_TOL:
        raise DomainError(f"odd coefficient {worst:.3e} survives in a purity polynomial")
    return poly
