"""Block-diagonal time evolution of the ladder three-level atom + cavity mode.

The interaction-picture generator couples only states inside the invariant
three-dimensional blocks span{|n,3>, |n+1,2>, |n+2,1>}, indexed by n >= 0.
Each block evolves under a 3x3 unitary: the resonant closed form when the
detuning vanishes, a real-symmetric eigendecomposition otherwise.  The three
states outside the block family (|0,2>, |1,1>, |0,1>) form a 2x2 block plus a
phase and are evolved exactly as well, so the analytic path agrees with a
brute-force propagator to machine precision rather than to O(e^{-|alpha|^2}).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import TruncatedFockVector

#: Construction-time tolerance on squared norm of a TriLevelState.
NORM_TOLERANCE = 1e-8


@dataclass(frozen=True)
class ModelParams:
    """Cavity frequency, atomic transition frequency and coupling strength.

    The detuning is always derived from the two frequencies, never stored.
    """

    omega_c: float
    omega_0: float
    g: float

    def __post_init__(self):
        for name in ("omega_c", "omega_0", "g"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.g < 0:
            raise ValueError("coupling g must be >= 0")

    @property
    def delta(self) -> float:
        return self.omega_0 - self.omega_c


def rabi_frequency(n: int, g: float) -> float:
    """Generalized Rabi frequency g*sqrt(2n+3) of block n at resonance."""
    return g * np.sqrt(2.0 * n + 3.0)


@dataclass(frozen=True)
class BlockPropagator:
    """The 3x3 unitary of one block, ordered (C3, C2, C1)."""

    entries: np.ndarray
    block_index: int
    rabi: float

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != (3, 3):
            raise ValueError("entries must be a 3x3 matrix")
        defect = np.max(np.abs(entries.conj().T @ entries - np.eye(3)))
        if defect > 1e-12:
            raise ValueError(f"block propagator not unitary: defect {defect}")
        entries = entries.copy()
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)


@dataclass(frozen=True)
class TriLevelState:
    """Amplitudes of the joint atom-field state in the block basis.

    C3[n], C2[n], C1[n] are the amplitudes of |n,3>, |n+1,2>, |n+2,1> for
    block index n; b2, b1, s1 carry |0,2>, |1,1> and |0,1>.
    """

    C3: np.ndarray
    C2: np.ndarray
    C1: np.ndarray
    b2: complex = 0.0
    b1: complex = 0.0
    s1: complex = 0.0

    def __post_init__(self):
        arrays = {}
        size = None
        for name in ("C3", "C2", "C1"):
            arr = np.asarray(getattr(self, name), dtype=complex)
            if arr.ndim != 1 or arr.size == 0:
                raise ValueError(f"{name} must be a non-empty 1-d array")
            if size is None:
                size = arr.size
            elif arr.size != size:
                raise ValueError("C3, C2, C1 must have equal length")
            arr = arr.copy()
            arr.setflags(write=False)
            arrays[name] = arr
        for name, arr in arrays.items():
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "b2", complex(self.b2))
        object.__setattr__(self, "b1", complex(self.b1))
        object.__setattr__(self, "s1", complex(self.s1))
        total = self.norm_sq()
        if abs(total - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"state norm^2 is {total}, expected 1 within {NORM_TOLERANCE}")

    @property
    def n_blocks(self) -> int:
        return self.C3.size

    def norm_sq(self) -> float:
        total = float(
            np.sum(np.abs(self.C3) ** 2)
            + np.sum(np.abs(self.C2) ** 2)
            + np.sum(np.abs(self.C1) ** 2)
        )
        return total + abs(self.b2) ** 2 + abs(self.b1) ** 2 + abs(self.s1) ** 2

    def block_norms(self) -> np.ndarray:
        """Per-block squared norms |C3|^2 + |C2|^2 + |C1|^2 (conserved in time)."""
        return np.abs(self.C3) ** 2 + np.abs(self.C2) ** 2 + np.abs(self.C1) ** 2

    def sector_field_vector(self, level: int) -> np.ndarray:
        """Field amplitudes conditioned on atomic level, at true photon numbers.

        The returned array has length n_blocks + 2 so all three sectors share a
        common photon-number axis.
        """
        n_ph = self.n_blocks + 2
        psi = np.zeros(n_ph, dtype=complex)
        if level == 3:
            psi[: self.n_blocks] = self.C3
        elif level == 2:
            psi[0] = self.b2
            psi[1 : self.n_blocks + 1] = self.C2
        elif level == 1:
            psi[0] = self.s1
            psi[1] = self.b1
            psi[2 : self.n_blocks + 2] = self.C1
        else:
            raise ValueError("level must be 1, 2 or 3")
        return psi


def _resonant_entries(n: np.ndarray, g: float, t: float):
    """Closed-form block matrices at zero detuning, stacked over block indices n."""
    n = np.asarray(n, dtype=float)
    beta = g * np.sqrt(2.0 * n + 3.0)
    q = n + 1.0
    r = n + 2.0
    w = g**2 / beta**2  # = 1/(2n+3)
    c = np.cos(beta * t)
    s = np.sin(beta * t)
    m = np.zeros(n.shape + (3, 3), dtype=complex)
    m[..., 0, 0] = w * (q * c + r)
    m[..., 0, 1] = -1j * g * np.sqrt(q) / beta * s
    m[..., 0, 2] = w * np.sqrt(q * r) * (c - 1.0)
    m[..., 1, 0] = m[..., 0, 1]
    m[..., 1, 1] = c
    m[..., 1, 2] = -1j * g * np.sqrt(r) / beta * s
    m[..., 2, 0] = m[..., 0, 2]
    m[..., 2, 1] = m[..., 1, 2]
    m[..., 2, 2] = w * (r * c + q)
    return m, beta


def _block_hamiltonians(n: np.ndarray, delta: float, g: float) -> np.ndarray:
    """Real-symmetric generator of each block: diag(+delta, 0, -delta) plus couplings."""
    n = np.asarray(n, dtype=float)
    h = np.zeros(n.shape + (3, 3))
    h[..., 0, 0] = delta
    h[..., 2, 2] = -delta
    h[..., 0, 1] = h[..., 1, 0] = g * np.sqrt(n + 1.0)
    h[..., 1, 2] = h[..., 2, 1] = g * np.sqrt(n + 2.0)
    return h


def _detuned_entries(n: np.ndarray, params: ModelParams, t: float) -> np.ndarray:
    """exp(-i H_n t) for each block via batched eigendecomposition."""
    h = _block_hamiltonians(n, params.delta, params.g)
    evals, evecs = np.linalg.eigh(h)
    phases = np.exp(-1j * evals * t)
    return np.einsum("...ij,...j,...kj->...ik", evecs, phases, evecs)


def resonant_block_matrix(n: int, g: float, t: float) -> BlockPropagator:
    """Closed-form propagator of block n at zero detuning.

    Entries follow the known symmetric structure: M12 = M21, M13 = M31,
    M23 = M32, with oscillation frequency beta_n = g*sqrt(2n+3).
    """
    if n < 0:
        raise ValueError("block index must be >= 0")
    if g <= 0:
        raise ValueError("resonant closed form requires g > 0")
    entries, beta = _resonant_entries(np.array([n]), g, t)
    return BlockPropagator(entries[0], block_index=n, rabi=float(beta[0]))


def detuned_block_matrix(n: int, params: ModelParams, t: float) -> BlockPropagator:
    """Propagator of block n for arbitrary detuning, by 3x3 eigendecomposition."""
    if n < 0:
        raise ValueError("block index must be >= 0")
    entries = _detuned_entries(np.array([n]), params, t)
    return BlockPropagator(entries[0], block_index=n, rabi=rabi_frequency(n, params.g))


def boundary_block_matrices(params: ModelParams, t: float) -> tuple[np.ndarray, complex]:
    """Propagator of the states outside the block family.

    Returns the 2x2 unitary over {|0,2>, |1,1>} (generator [[0, g], [g, -delta]])
    and the phase accumulated by |0,1> (interaction-picture energy -delta).
    """
    g = params.g
    delta = params.delta
    if delta == 0.0:
        c, s = np.cos(g * t), np.sin(g * t)
        two = np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    else:
        h = np.array([[0.0, g], [g, -delta]])
        evals, evecs = np.linalg.eigh(h)
        two = (evecs * np.exp(-1j * evals * t)) @ evecs.T
    return two, complex(np.exp(1j * delta * t))


def initial_state(field: TruncatedFockVector, atom) -> TriLevelState:
    """Product state of a field vector with an atomic preparation.

    `atom` is a level (1, 2 or 3) or a normalized superposition (w1, w2, w3).
    A field with truncation n_max yields n_max + 1 blocks; the level-2 and
    level-1 components spill into the boundary amplitudes b2, b1, s1.
    """
    norm = field.norm_sq()
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise ValueError(f"field norm^2 is {norm}, expected 1 within {NORM_TOLERANCE}")
    if isinstance(atom, (int, np.integer)):
        if atom not in (1, 2, 3):
            raise ValueError("atomic level must be 1, 2 or 3")
        weights = {1: (1.0, 0.0, 0.0), 2: (0.0, 1.0, 0.0), 3: (0.0, 0.0, 1.0)}[int(atom)]
    else:
        weights = tuple(complex(w) for w in atom)
        if len(weights) != 3:
            raise ValueError("superposition weights must be (w1, w2, w3)")
        wnorm = sum(abs(w) ** 2 for w in weights)
        if abs(wnorm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"weights norm^2 is {wnorm}, expected 1 within {NORM_TOLERANCE}")
    w1, w2, w3 = weights
    c = field.amplitudes
    n_blocks = field.n_max + 1
    C3 = w3 * c.astype(complex)
    C2 = np.zeros(n_blocks, dtype=complex)
    C1 = np.zeros(n_blocks, dtype=complex)
    C2[: c[1:].size] = w2 * c[1:]
    C1[: c[2:].size] = w1 * c[2:]
    b2 = w2 * c[0]
    b1 = w1 * c[1] if n_blocks > 1 else 0.0
    s1 = w1 * c[0]
    return TriLevelState(C3=C3, C2=C2, C1=C1, b2=b2, b1=b1, s1=s1)


def evolve(state0: TriLevelState, params: ModelParams, t: float) -> TriLevelState:
    """Apply the interaction-picture propagator for time t to a state.

    Each block gets its own 3x3 unitary (closed form at resonance, otherwise
    eigendecomposition), the boundary pair gets the 2x2 unitary, and |0,1>
    its phase.  The generator is time independent, so evolving by t1 then t2
    equals evolving by t1 + t2.
    """
    n = np.arange(state0.n_blocks)
    if params.delta == 0.0 and params.g > 0.0:
        blocks, _ = _resonant_entries(n, params.g, t)
    else:
        blocks = _detuned_entries(n, params, t)
    vec = np.stack([state0.C3, state0.C2, state0.C1], axis=-1)
    out = np.einsum("nij,nj->ni", blocks, vec)
    two, phase = boundary_block_matrices(params, t)
    b2, b1 = two @ np.array([state0.b2, state0.b1])
    return TriLevelState(
        C3=out[:, 0],
        C2=out[:, 1],
        C1=out[:, 2],
        b2=b2,
        b1=b1,
        s1=phase * state0.s1,
    )
