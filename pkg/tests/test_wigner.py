import math

import numpy as np
import pytest
import scipy.linalg

from ladderjc.fock import coherent_amplitudes, fock_amplitudes
from ladderjc.ladder import ModelParams, evolve, initial_state
from ladderjc.wigner import (
    EmptySectorError,
    PhaseSpaceGrid,
    SeriesTailWarning,
    displaced_number_overlap,
    wigner_conditioned,
    wigner_parity_form,
    wigner_reduced,
    wigner_sector_fields,
    wigner_series_values,
)

TWO_OVER_PI = 2.0 / math.pi
PARAMS = ModelParams(omega_c=0.3, omega_0=0.3, g=1.0)


def displacement_matrix(gamma, dim):
    a = np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)
    return scipy.linalg.expm(gamma * a.conj().T - np.conj(gamma) * a)


def test_overlap_vacuum_column():
    beta = 1.1 - 0.4j
    assert abs(displaced_number_overlap(beta, 0, 0) - np.exp(-0.5 * abs(beta) ** 2)) < 1e-15


def test_overlap_orthonormality_at_origin():
    assert displaced_number_overlap(0.0, 4, 4) == 1.0
    assert displaced_number_overlap(0.0, 4, 7) == 0.0


def test_overlap_matches_expm_oracle():
    # <beta,k|n> = <k|exp(gamma a' - gamma* a)|n> with gamma = -beta
    cases = [(3, 7, 0.8 + 0.3j), (7, 3, 0.8 + 0.3j), (5, 5, 2.0j), (0, 12, -1.3 + 0.2j), (20, 11, 1.7 - 0.9j)]
    for k, n, beta in cases:
        d = displacement_matrix(-beta, 60)
        assert abs(displaced_number_overlap(beta, k, n) - d[k, n]) < 1e-10


def test_overlap_bounded():
    rng = np.random.default_rng(3)
    for _ in range(50):
        k, n = rng.integers(0, 40, size=2)
        beta = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        assert abs(displaced_number_overlap(beta, int(k), int(n))) <= 1.0 + 1e-12


def test_vacuum_wigner_peak():
    st = initial_state(fock_amplitudes(0, 4), 3)
    assert abs(wigner_series_values(st, [0.0])[0] - TWO_OVER_PI) < 1e-12


def test_single_photon_negativity():
    st = initial_state(fock_amplitudes(1, 6), 3)
    assert abs(wigner_series_values(st, [0.0])[0] + TWO_OVER_PI) < 1e-12


def test_coherent_peak_displaced():
    st = initial_state(coherent_amplitudes(4.0, 64), 3)
    val = wigner_series_values(st, [4.0 + 0.0j], k_max=220)[0]
    assert abs(val - TWO_OVER_PI) < 1e-6
    # two units away it is essentially zero
    assert abs(wigner_series_values(st, [4.0 + 2.5j], k_max=220)[0]) < 1e-4


def test_grid_peak_location():
    st = initial_state(coherent_amplitudes(4.0, 64), 3)
    grid = PhaseSpaceGrid(-6.0, 6.0, -2.0, 2.0, 49, 17)
    field = wigner_reduced(st, grid, k_max=260)
    i, j = np.unravel_index(np.argmax(field.values), field.values.shape)
    assert abs(grid.re_points()[i] - 4.0) < 0.26
    assert abs(grid.im_points()[j]) < 0.26
    assert abs(field.max_value() - TWO_OVER_PI) < 1e-6


def test_conditioned_equals_reduced_single_sector():
    st = initial_state(coherent_amplitudes(2.0, 32), 3)
    grid = PhaseSpaceGrid(-4.0, 4.0, -4.0, 4.0, 21, 21)
    reduced = wigner_reduced(st, grid, k_max=120)
    cond = wigner_conditioned(st, 3, True, grid, k_max=120)
    assert np.max(np.abs(reduced.values - cond.values)) < 1e-12


def test_conditioning_on_empty_sector():
    st = initial_state(coherent_amplitudes(2.0, 32), 3)
    grid = PhaseSpaceGrid(-2.0, 2.0, -2.0, 2.0, 5, 5)
    with pytest.raises(EmptySectorError):
        wigner_conditioned(st, 1, True, grid, k_max=120)


def test_t45_level3_negativity():
    st = evolve(initial_state(coherent_amplitudes(4.0, 64), 3), PARAMS, 45.0)
    grid = PhaseSpaceGrid(-8.0, 8.0, -8.0, 8.0, 81, 81)
    field = wigner_conditioned(st, 3, True, grid, k_max=480)
    assert field.min_value() < -1e-3


def test_series_matches_parity_random_states():
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(4):
        vec = rng.normal(size=21) + 1j * rng.normal(size=21)
        vec /= np.linalg.norm(vec)
        betas = rng.uniform(-3.0, 3.0, size=(6, 2)) @ np.array([1.0, 1.0j])
        series = wigner_series_values(vec, betas, k_max=150)
        for beta, s in zip(betas, series):
            worst = max(worst, abs(s - wigner_parity_form(vec, beta)))
    assert worst <= 1e-8


def test_sector_additivity():
    st = evolve(initial_state(coherent_amplitudes(2.0, 32), (0.6, 0.0, 0.8)), PARAMS, 7.0)
    grid = PhaseSpaceGrid(-4.0, 4.0, -4.0, 4.0, 15, 15)
    reduced = wigner_reduced(st, grid, k_max=140)
    total = np.zeros_like(reduced.values)
    for lvl in (1, 2, 3):
        total = total + wigner_conditioned(st, lvl, False, grid, k_max=140).values
    assert np.max(np.abs(total - reduced.values)) <= 1e-12


def test_shared_pass_matches_individual_calls():
    st = evolve(initial_state(coherent_amplitudes(2.0, 32), 2), PARAMS, 5.0)
    grid = PhaseSpaceGrid(-4.0, 4.0, -4.0, 4.0, 11, 11)
    fields = wigner_sector_fields(st, grid, k_max=140, normalize=False)
    assert np.max(np.abs(fields["reduced"].values - wigner_reduced(st, grid, 140).values)) < 1e-14
    for lvl in (1, 2, 3):
        solo = wigner_conditioned(st, lvl, False, grid, k_max=140)
        assert np.max(np.abs(fields[f"level{lvl}"].values - solo.values)) < 1e-14


def test_boundedness_over_grid():
    st = evolve(initial_state(coherent_amplitudes(4.0, 64), 3), PARAMS, 18.0)
    grid = PhaseSpaceGrid(-7.0, 7.0, -7.0, 7.0, 41, 41)
    field = wigner_reduced(st, grid, k_max=440)
    assert np.max(np.abs(field.values)) <= TWO_OVER_PI + 1e-9


def test_normalization_small_scenario():
    st = initial_state(coherent_amplitudes(1.0, 24), 3)
    grid = PhaseSpaceGrid(-5.0, 5.0, -5.0, 5.0, 101, 101)
    field = wigner_reduced(st, grid, k_max=120)
    assert abs(field.integral() - 1.0) < 1e-3


def test_rotation_covariance_free_field():
    # with g = 0 the interaction-picture state is static; in the lab frame the
    # field picks up e^{-i w_c t n} phases, which must rotate W rigidly
    omega_c, t = 0.3, 9.0
    vec = coherent_amplitudes(1.5 + 0.4j, 24).amplitudes
    lab_vec = vec * np.exp(-1j * omega_c * t * np.arange(vec.size))
    betas = np.array([0.5 + 0.2j, 1.5, -1.0 + 1.0j, 0.3 - 1.2j])
    w_lab = wigner_series_values(lab_vec, betas, k_max=90)
    w_rotated = wigner_series_values(vec, betas * np.exp(1j * omega_c * t), k_max=90)
    assert np.max(np.abs(w_lab - w_rotated)) < 1e-6
    # the interaction-picture state itself does not move
    params = ModelParams(omega_c=omega_c, omega_0=omega_c, g=0.0)
    st0 = initial_state(coherent_amplitudes(1.5 + 0.4j, 24), 3)
    st = evolve(st0, params, t)
    assert np.max(np.abs(st.C3 - st0.C3)) < 1e-14


def test_tail_warning_fires_when_underresolved():
    st = initial_state(coherent_amplitudes(4.0, 64), 3)
    with pytest.warns(SeriesTailWarning):
        wigner_series_values(st, [-4.0 + 0.0j], k_max=66)


def test_grid_validation():
    with pytest.raises(ValueError):
        PhaseSpaceGrid(0.0, 0.0, -1.0, 1.0, 5, 5)
    with pytest.raises(ValueError):
        PhaseSpaceGrid(-1.0, 1.0, -1.0, 1.0, 1, 5)
