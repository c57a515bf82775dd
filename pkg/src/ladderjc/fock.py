"""Truncated single-mode Fock space: state vectors, coherent preparation, photon statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

#: Default tail mass allowed beyond the truncation bound for prepared states.
DEFAULT_TAIL_TOLERANCE = 1e-12

#: Default truncation used throughout for the alpha = 4 reference scenario.
DEFAULT_N_MAX = 64


@dataclass(frozen=True)
class TruncatedFockVector:
    """Complex amplitudes c_0..c_n_max of a pure single-mode field state.

    Amplitudes are stored (not probabilities) so that the phase of a coherent
    displacement survives into phase-space calculations downstream.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size == 0:
            raise ValueError("amplitudes must be a non-empty 1-d array")
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes must be finite")
        total = float(np.sum(np.abs(amps) ** 2))
        if total > 1.0 + 1e-12:
            raise ValueError(f"squared norm {total} exceeds 1")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_max(self) -> int:
        return self.amplitudes.size - 1

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def probabilities(self) -> "PhotonDistribution":
        return PhotonDistribution(np.abs(self.amplitudes) ** 2)


@dataclass(frozen=True)
class PhotonDistribution:
    """Photon-number probabilities P_0..P_n_max."""

    probabilities: np.ndarray
    sum_tolerance: float = field(default=1e-6, compare=False)

    def __post_init__(self):
        probs = np.asarray(self.probabilities, dtype=float)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("probabilities must be a non-empty 1-d array")
        if np.any(probs < 0.0):
            raise ValueError("probabilities must be non-negative")
        total = float(probs.sum())
        if abs(total - 1.0) > self.sum_tolerance:
            raise ValueError(f"probabilities sum to {total}, expected 1 within {self.sum_tolerance}")
        probs = probs.copy()
        probs.setflags(write=False)
        object.__setattr__(self, "probabilities", probs)

    @property
    def n_max(self) -> int:
        return self.probabilities.size - 1


def coherent_amplitudes(alpha: complex, n_max: int) -> TruncatedFockVector:
    """Coherent-state amplitudes c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!).

    Built by the ratio recurrence c_{n+1} = c_n * alpha / sqrt(n+1); factorials
    are never formed, so there is no overflow for |alpha| <= 20, n_max <= 400.
    """
    alpha = complex(alpha)
    if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
        raise ValueError("alpha must be finite")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    amps = np.empty(n_max + 1, dtype=complex)
    amps[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(n_max):
        amps[n + 1] = amps[n] * alpha / math.sqrt(n + 1)
    return TruncatedFockVector(amps)


def fock_amplitudes(n: int, n_max: int) -> TruncatedFockVector:
    """Number state |n> embedded in a truncation of size n_max + 1."""
    if not 0 <= n <= n_max:
        raise ValueError("need 0 <= n <= n_max")
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[n] = 1.0
    return TruncatedFockVector(amps)


def distribution_moments(dist: PhotonDistribution) -> tuple[float, float]:
    """First and second moments (sum n P_n, sum n^2 P_n) of a photon distribution."""
    n = np.arange(dist.probabilities.size, dtype=float)
    mean = float(np.dot(n, dist.probabilities))
    second = float(np.dot(n * n, dist.probabilities))
    return mean, second


def poisson_tail_mass(mean: float, n_max: int) -> float:
    """Probability mass of a Poisson(mean) distribution above n_max."""
    if mean == 0.0:
        return 0.0
    # Sum the pmf up in the stable ratio form, then take the complement.
    term = math.exp(-mean)
    total = term
    for n in range(1, n_max + 1):
        term *= mean / n
        total += term
    return max(0.0, 1.0 - total)


def suggest_truncation(alpha: complex, tail_tolerance: float = DEFAULT_TAIL_TOLERANCE) -> int:
    """Smallest truncation whose Poisson tail mass falls below tail_tolerance.

    The result is floored at |alpha|^2 + 6 sqrt(|alpha|^2 + 1) so downstream
    block structures always get a healthy margin above the mean photon number.
    """
    if not 0.0 < tail_tolerance < 1.0:
        raise ValueError("tail_tolerance must be in (0, 1)")
    mean = abs(complex(alpha)) ** 2
    floor = math.ceil(mean + 6.0 * math.sqrt(mean + 1.0))
    n = 0
    term = math.exp(-mean)
    total = term
    while 1.0 - total >= tail_tolerance and n < 100000:
        n += 1
        term *= mean / n
        total += term
    return max(n, floor)
