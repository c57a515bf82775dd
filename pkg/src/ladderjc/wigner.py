"""Wigner functions from the displaced-number-state series, with a parity cross-check.

W(beta) = (2/pi) sum_k (-1)^k <beta,k| rho |beta,k>, where |beta,k> = D(beta)|k>.
For a pure atom-field state the three atomic sectors add incoherently, so the
reduced function is a sum of sector terms |<beta,k|psi_l>|^2.

The overlaps <beta,k|n> = <k|D(-beta)|n> are evaluated diagonal by diagonal in
(k, n): along each diagonal the associated Laguerre polynomial obeys its
three-term recurrence in the degree, and the factorial/power prefactor is folded
into the recurrence step by step, keeping every intermediate bounded by one.
Factorials and bare Laguerre values are never materialized.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .ladder import TriLevelState

TWO_OVER_PI = 2.0 / math.pi

#: Relative size of the trailing series terms that triggers a truncation warning.
TAIL_WARN_RATIO = 1e-8


class EmptySectorError(ValueError):
    """Conditioning on an atomic level with negligible population."""


class SeriesTailWarning(UserWarning):
    """The alternating series was cut while its terms were still significant."""


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Rectangular lattice of phase-space points beta = x + i y."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    n_re: int
    n_im: int

    def __post_init__(self):
        bounds = (self.re_min, self.re_max, self.im_min, self.im_max)
        if not all(math.isfinite(b) for b in bounds):
            raise ValueError("grid bounds must be finite")
        if self.re_max <= self.re_min or self.im_max <= self.im_min:
            raise ValueError("grid bounds must satisfy max > min")
        if self.n_re < 2 or self.n_im < 2:
            raise ValueError("need at least 2 points per axis")

    def re_points(self) -> np.ndarray:
        return np.linspace(self.re_min, self.re_max, self.n_re)

    def im_points(self) -> np.ndarray:
        return np.linspace(self.im_min, self.im_max, self.n_im)

    def beta_points(self) -> np.ndarray:
        """Flattened lattice, real axis varying slowest (C order of values)."""
        return (self.re_points()[:, None] + 1j * self.im_points()[None, :]).ravel()

    def cell_area(self) -> float:
        dre = (self.re_max - self.re_min) / (self.n_re - 1)
        dim = (self.im_max - self.im_min) / (self.n_im - 1)
        return dre * dim


@dataclass(frozen=True)
class WignerField:
    """Sampled Wigner values on a grid, for the reduced or a level-conditioned state."""

    values: np.ndarray
    grid: PhaseSpaceGrid
    kind: str
    normalized: bool = False

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid.n_re, self.grid.n_im):
            raise ValueError("values shape must be (n_re, n_im)")
        if not np.all(np.isfinite(vals)):
            raise ValueError("Wigner values must be finite")
        peak = float(np.max(np.abs(vals)))
        if peak > TWO_OVER_PI + 1e-9:
            raise ValueError(
                f"|W| reaches {peak}, above the 2/pi bound; series truncation "
                "is likely too aggressive (raise k_max)"
            )
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def min_value(self) -> float:
        return float(self.values.min())

    def max_value(self) -> float:
        return float(self.values.max())

    def integral(self) -> float:
        """Plain lattice-sum quadrature of the field over its grid."""
        return float(self.values.sum() * self.grid.cell_area())


def _sector_matrix(source) -> np.ndarray:
    """Stack the field sectors of a state, or wrap a bare field vector."""
    if isinstance(source, TriLevelState):
        return np.stack([source.sector_field_vector(lvl) for lvl in (1, 2, 3)])
    vec = np.asarray(source, dtype=complex)
    if vec.ndim != 1:
        raise ValueError("expected a TriLevelState or a 1-d field amplitude array")
    return vec[None, :]


def _effective_support(sectors: np.ndarray, cutoff: float = 1e-30) -> int:
    """Largest photon index carrying more than `cutoff` weight in any sector."""
    weight = np.max(np.abs(sectors) ** 2, axis=0)
    nz = np.nonzero(weight > cutoff)[0]
    return int(nz[-1]) if nz.size else 0


def _required_terms(support: int, beta_abs_max: float) -> int:
    """Series depth needed so the cut terms are negligible at these points.

    The displaced-number distribution of a state supported below photon S,
    displaced by |beta|, lives below roughly (sqrt(S) + |beta|)^2; the margin
    covers its Poisson-like spread.
    """
    y = (math.sqrt(support + 1.0) + beta_abs_max) ** 2
    return int(math.ceil(y + 8.0 * math.sqrt(y + 1.0) + 40.0))


def _sector_series(sectors: np.ndarray, betas: np.ndarray, k_max: int):
    """Per-sector Wigner values at arbitrary points, plus a tail-size estimate.

    Returns (values, tail): values has shape (n_sectors, n_points), tail is the
    largest trailing pair of series terms seen anywhere (same 2/pi scaling).
    """
    support = _effective_support(sectors)
    nonzero = np.abs(sectors).max(axis=0) > 0.0

    values = np.empty((sectors.shape[0], betas.size))
    tail = 0.0
    # keep the per-chunk overlap table around 50 MB
    per_point = 16 * sectors.shape[0] * (k_max + 1)
    chunk = max(256, min(betas.size, (48 << 20) // per_point))
    for lo in range(0, betas.size, chunk):
        b = betas[lo : lo + chunk]
        x = b.real**2 + b.imag**2
        absb = np.sqrt(x)
        k_cap = min(k_max, _required_terms(support, float(absb.max(initial=0.0))))

        with np.errstate(invalid="ignore", divide="ignore"):
            unit_a = np.where(absb > 0.0, np.conj(b) / absb, 1.0 + 0.0j)
            unit_b = np.where(absb > 0.0, -b / absb, 1.0 + 0.0j)
        overlaps = np.zeros((k_cap + 1, sectors.shape[0], b.size), dtype=complex)

        m0 = np.exp(-0.5 * x)  # M_0^(0)
        ph_a = np.ones(b.size, dtype=complex)
        ph_b = np.ones(b.size, dtype=complex)
        for a in range(0, k_cap + 1):
            if a > 0:
                m0 = m0 * (absb / math.sqrt(a))
                ph_a = ph_a * unit_a
                ph_b = ph_b * unit_b
            p_a = min(support - a, k_cap)   # side n = p + a (n >= k)
            p_b = min(support, k_cap - a)   # side k = p + a (k > n)
            p_hi = max(p_a, p_b if a >= 1 else -1)
            if p_hi < 0:
                continue
            m_prev = None
            m = m0
            for p in range(0, p_hi + 1):
                if p <= p_a and nonzero[p + a]:
                    overlaps[p] += sectors[:, p + a, None] * (ph_a * m)
                if a >= 1 and p <= p_b and nonzero[p]:
                    overlaps[p + a] += sectors[:, p, None] * (ph_b * m)
                # advance the scaled Laguerre recurrence to degree p + 1
                if p == 0:
                    m_next = (math.sqrt(1.0 / (a + 1.0)) * ((a + 1.0) - x)) * m
                else:
                    r1 = math.sqrt((p + 1.0) / (p + 1.0 + a)) / (p + 1.0)
                    r2 = math.sqrt((p + 1.0) * p / ((p + 1.0 + a) * (p + a))) / (p + 1.0)
                    m_next = ((2.0 * p + a + 1.0 - x) * m) * r1 - ((p + a) * r2) * m_prev
                m_prev, m = m, m_next

        terms = np.abs(overlaps) ** 2  # (k_cap+1, n_sectors, chunk)
        n_pairs = (k_cap + 1) // 2
        paired = terms[0 : 2 * n_pairs : 2] - terms[1 : 2 * n_pairs : 2]
        w = paired.sum(axis=0)
        if (k_cap + 1) % 2:
            w = w + terms[k_cap]
        values[:, lo : lo + b.size] = TWO_OVER_PI * w
        if k_cap >= 1:
            tail_here = float(terms[k_cap - 1 :].sum(axis=(0, 1)).max())
            tail = max(tail, TWO_OVER_PI * tail_here)
    return values, tail


def _warn_on_tail(values: np.ndarray, tail: float) -> None:
    scale = max(float(np.max(np.abs(values))), 1e-300)
    if tail > TAIL_WARN_RATIO * scale:
        warnings.warn(
            f"series tail {tail:.3e} exceeds {TAIL_WARN_RATIO:.0e} of the largest "
            f"partial sum {scale:.3e}; raise k_max",
            SeriesTailWarning,
            stacklevel=3,
        )


def wigner_series_values(source, betas: np.ndarray, k_max: int | None = None) -> np.ndarray:
    """Wigner values at arbitrary points, summed over the sectors of `source`.

    `source` is a TriLevelState or a bare field amplitude array; k_max defaults
    to the photon capacity of the source.
    """
    sectors = _sector_matrix(source)
    betas = np.atleast_1d(np.asarray(betas, dtype=complex))
    if k_max is None:
        k_max = sectors.shape[1] - 1
    if k_max < _effective_support(sectors):
        raise ValueError("k_max must cover the photon support of the state")
    values, tail = _sector_series(sectors, betas, k_max)
    total = values.sum(axis=0)
    _warn_on_tail(total, tail)
    return total


def displaced_number_overlap(beta: complex, k: int, n: int) -> complex:
    """Overlap <beta,k|n> = <k|D(-beta)|n> via the scaled Laguerre recurrence.

    The magnitude never exceeds one; prefactors are accumulated ratio by ratio,
    so arbitrary k, n are safe from overflow.
    """
    if k < 0 or n < 0:
        raise ValueError("k and n must be >= 0")
    beta = complex(beta)
    absb = abs(beta)
    if absb == 0.0:
        return 1.0 + 0.0j if k == n else 0.0 + 0.0j
    x = absb * absb
    a = abs(n - k)
    p_stop = min(k, n)
    unit = np.conj(beta) / absb if n >= k else -beta / absb
    m = math.exp(-0.5 * x)
    for j in range(1, a + 1):
        m *= absb / math.sqrt(j)
    m_prev = None
    for p in range(0, p_stop):
        if p == 0:
            m_next = math.sqrt(1.0 / (a + 1.0)) * ((a + 1.0) - x) * m
        else:
            r1 = math.sqrt((p + 1.0) / (p + 1.0 + a)) / (p + 1.0)
            r2 = math.sqrt((p + 1.0) * p / ((p + 1.0 + a) * (p + a))) / (p + 1.0)
            m_next = (2.0 * p + a + 1.0 - x) * m * r1 - (p + a) * r2 * m_prev
        m_prev, m = m, m_next
    return complex(unit**a * m)


def wigner_reduced(state: TriLevelState, grid: PhaseSpaceGrid, k_max: int | None = None) -> WignerField:
    """Reduced-field Wigner function: the three atomic sectors add incoherently."""
    sectors = _sector_matrix(state)
    if k_max is None:
        k_max = sectors.shape[1] - 1
    if k_max < _effective_support(sectors):
        raise ValueError("k_max must cover the photon support of the state")
    values, tail = _sector_series(sectors, grid.beta_points(), k_max)
    total = values.sum(axis=0)
    _warn_on_tail(total, tail)
    return WignerField(
        values=total.reshape(grid.n_re, grid.n_im), grid=grid, kind="reduced"
    )


def wigner_conditioned(
    state: TriLevelState,
    level: int,
    normalize: bool,
    grid: PhaseSpaceGrid,
    k_max: int | None = None,
) -> WignerField:
    """Wigner function of one atomic sector, optionally normalized to unit weight."""
    if level not in (1, 2, 3):
        raise ValueError("level must be 1, 2 or 3")
    psi = state.sector_field_vector(level)
    weight = float(np.sum(np.abs(psi) ** 2))
    if normalize:
        if weight <= 1e-12:
            raise EmptySectorError(
                f"level {level} carries weight {weight:.3e}; nothing to condition on"
            )
        psi = psi / math.sqrt(weight)
    if k_max is None:
        k_max = psi.size - 1
    sectors = psi[None, :]
    if k_max < _effective_support(sectors):
        raise ValueError("k_max must cover the photon support of the state")
    values, tail = _sector_series(sectors, grid.beta_points(), k_max)
    _warn_on_tail(values[0], tail)
    return WignerField(
        values=values[0].reshape(grid.n_re, grid.n_im),
        grid=grid,
        kind=f"level{level}",
        normalized=normalize,
    )


def wigner_sector_fields(
    state: TriLevelState,
    grid: PhaseSpaceGrid,
    k_max: int | None = None,
    normalize: bool = False,
    betas: np.ndarray | None = None,
) -> dict:
    """One shared series pass yielding the reduced and all conditioned fields.

    Returns {"reduced": WignerField, "level1": ..., ...}; a level whose weight
    is negligible is mapped to an EmptySectorError instance when normalizing.
    `betas` overrides the evaluation points (for frame rotations) while the
    fields keep the grid labelling.
    """
    sectors = _sector_matrix(state)
    if k_max is None:
        k_max = sectors.shape[1] - 1
    if k_max < _effective_support(sectors):
        raise ValueError("k_max must cover the photon support of the state")
    if betas is None:
        betas = grid.beta_points()
    values, tail = _sector_series(sectors, betas, k_max)
    total = values.sum(axis=0)
    _warn_on_tail(total, tail)
    shape = (grid.n_re, grid.n_im)
    out = {"reduced": WignerField(values=total.reshape(shape), grid=grid, kind="reduced")}
    weights = np.sum(np.abs(sectors) ** 2, axis=1)
    for idx, level in enumerate((1, 2, 3)):
        vals = values[idx]
        if normalize:
            if weights[idx] <= 1e-12:
                out[f"level{level}"] = EmptySectorError(
                    f"level {level} carries weight {weights[idx]:.3e}"
                )
                continue
            vals = vals / weights[idx]
        out[f"level{level}"] = WignerField(
            values=vals.reshape(shape), grid=grid, kind=f"level{level}", normalized=normalize
        )
    return out


def wigner_parity_form(source, beta: complex) -> float:
    """Independent Wigner evaluation: displace with a dense matrix exponential,
    then take the parity expectation in the number basis.

    Slow but structurally unrelated to the series path, so it serves as the
    cross-check.  Accepts the same sources as the series functions.
    """
    sectors = _sector_matrix(source)
    beta = complex(beta)
    n_ph = sectors.shape[1] - 1
    y = (math.sqrt(n_ph + 1.0) + abs(beta)) ** 2
    dim = int(math.ceil(y + 8.0 * math.sqrt(y + 1.0) + 25.0))
    lower = np.sqrt(np.arange(1, dim, dtype=float))
    a_op = np.diag(lower, k=1).astype(complex)
    disp = scipy.linalg.expm(-beta * a_op.conj().T + np.conj(beta) * a_op)
    parity = (-1.0) ** np.arange(dim)
    total = 0.0
    for row in sectors:
        psi = np.zeros(dim, dtype=complex)
        psi[: row.size] = row
        phi = disp @ psi
        total += float(np.dot(parity, np.abs(phi) ** 2))
    return TWO_OVER_PI * total
