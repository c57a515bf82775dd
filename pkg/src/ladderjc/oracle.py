"""Brute-force evolution on the full truncated Fock x 3-level space.

This is the independent validation path: it builds the dense lab-frame
Hamiltonian, exponentiates it through one Hermitian eigendecomposition, and
never touches the block-diagonal machinery.  Basis ordering is flattened as
index = 3*n + (level - 1), level in {1, 2, 3}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fock import TruncatedFockVector
from .ladder import ModelParams

#: Atomic energy quantum numbers zeta(level) entering omega_0 * I_z.
_ZETA = np.array([-1.0, 0.0, 1.0])

#: Number of top Fock levels considered distorted by the truncation.
EDGE_LEVELS = 2


def basis_index(n: int, level: int) -> int:
    """Flattened index of |n, level>."""
    return 3 * n + (level - 1)


@dataclass
class HamiltonianMatrix:
    """Dense Hermitian lab-frame Hamiltonian with a cached eigendecomposition."""

    matrix: np.ndarray
    n_max: int
    _eig: tuple = field(default=None, repr=False, compare=False)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def eigensystem(self):
        if self._eig is None:
            evals, evecs = np.linalg.eigh(self.matrix)
            self._eig = (evals, evecs)
        return self._eig


def build_full_hamiltonian(params: ModelParams, n_max: int) -> HamiltonianMatrix:
    """Lab-frame H = omega_0 I_z + omega_c a'a + g(I_+ a + I_- a') on the truncated space.

    The raising term that would exceed n_max is dropped, which leaves the top
    two Fock levels with distorted dynamics (flagged via EDGE_LEVELS).
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    dim = 3 * (n_max + 1)
    h = np.zeros((dim, dim))
    ns = np.arange(n_max + 1, dtype=float)
    diag = (params.omega_c * ns[:, None] + params.omega_0 * _ZETA[None, :]).ravel()
    np.fill_diagonal(h, diag)
    # I_+ a couples |n+1, level> -> |n, level+1> with strength g*sqrt(n+1).
    for n in range(n_max):
        amp = params.g * np.sqrt(n + 1.0)
        for level in (1, 2):
            i = basis_index(n, level + 1)
            j = basis_index(n + 1, level)
            h[i, j] = amp
            h[j, i] = amp
    return HamiltonianMatrix(matrix=h, n_max=n_max)


def prepare_full_state(field_vec: TruncatedFockVector, atom, n_max: int) -> np.ndarray:
    """Embed a field (x) atom product state in the flattened basis.

    Independent of the block-basis preparation on purpose; `atom` is a level
    or a (w1, w2, w3) superposition.
    """
    if isinstance(atom, (int, np.integer)):
        weights = {1: (1.0, 0.0, 0.0), 2: (0.0, 1.0, 0.0), 3: (0.0, 0.0, 1.0)}[int(atom)]
    else:
        weights = tuple(complex(w) for w in atom)
    if field_vec.n_max > n_max:
        raise ValueError("field truncation exceeds the Hamiltonian truncation")
    psi = np.zeros(3 * (n_max + 1), dtype=complex)
    for level, w in zip((1, 2, 3), weights):
        if w != 0.0:
            psi[level - 1 :: 3][: field_vec.n_max + 1] += w * field_vec.amplitudes
    return psi


def evolve_lab_frame(psi0: np.ndarray, h: HamiltonianMatrix, t: float) -> np.ndarray:
    """psi(t) = exp(-i H t) psi0 using the cached eigendecomposition of H."""
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (h.dimension,):
        raise ValueError("state dimension does not match the Hamiltonian")
    evals, evecs = h.eigensystem()
    return evecs @ (np.exp(-1j * evals * t) * (evecs.conj().T @ psi0))


def to_interaction_picture(psi: np.ndarray, params: ModelParams, t: float) -> np.ndarray:
    """Apply exp[i omega_c t (n + I_z)]: a diagonal phase per |n, level>."""
    psi = np.asarray(psi, dtype=complex)
    n_states = psi.size // 3
    ns = np.arange(n_states, dtype=float)
    phases = np.exp(1j * params.omega_c * t * (ns[:, None] + _ZETA[None, :])).ravel()
    return phases * psi


def level_index_slices(psi: np.ndarray, level: int) -> np.ndarray:
    """All amplitudes of one atomic level, ordered by photon number."""
    return psi[level - 1 :: 3]


def block_components(psi: np.ndarray):
    """Split a flattened state into block arrays and boundary scalars.

    Returns (C3, C2, C1, b2, b1, s1) with the block convention of the ladder
    representation; the incomplete top blocks simply truncate the arrays.
    """
    psi = np.asarray(psi, dtype=complex)
    n_states = psi.size // 3
    lvl3 = psi[2::3]
    lvl2 = psi[1::3]
    lvl1 = psi[0::3]
    c3 = lvl3[: n_states]          # |n,3>, n = 0..n_max
    c2 = lvl2[1:]                  # |n+1,2>, n = 0..n_max-1
    c1 = lvl1[2:]                  # |n+2,1>, n = 0..n_max-2
    return c3, c2, c1, complex(lvl2[0]), complex(lvl1[1]), complex(lvl1[0])


def photon_numbers(dim: int) -> np.ndarray:
    """Photon number of each flattened basis index."""
    return np.repeat(np.arange(dim // 3), 3).astype(float)
