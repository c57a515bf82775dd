"""Declarative scenario runner: JSON config in, CSV/JSON artifacts out."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import fock, oracle
from .ladder import ModelParams, TriLevelState, evolve, initial_state
from .observables import (
    level_populations,
    mean_photon_deviation_report,
    photon_statistics,
)
from .wigner import EmptySectorError, PhaseSpaceGrid, wigner_sector_fields

#: Verification thresholds, pinned once.
VERIFY_THRESHOLDS = {
    "max_amplitude_dev": 1e-8,
    "max_population_dev": 1e-8,
    "max_meanN_dev": 1e-6,
    "unitarity_max": 1e-12,
    "norm_drift": 1e-10,
}

#: Blocks closer than this to the truncation bound are excluded from comparisons.
EDGE_BLOCK_MARGIN = 3

OUTPUT_ENV_VAR = "LADDERJC_OUT"


class ConfigError(ValueError):
    """Configuration rejected; the message names the offending field."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_complex(value, where: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = value
        if isinstance(re, (int, float)) and isinstance(im, (int, float)):
            return complex(re, im)
    raise ConfigError(f"{where}: expected a number or [re, im] pair, got {value!r}")


def _dump_complex(z: complex):
    z = complex(z)
    if z.imag == 0.0:
        return z.real
    return [z.real, z.imag]


def _check_keys(section: dict, where: str, required: tuple, optional: tuple = ()):
    if not isinstance(section, dict):
        raise ConfigError(f"{where}: expected an object")
    unknown = set(section) - set(required) - set(optional)
    if unknown:
        raise ConfigError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = [k for k in required if k not in section]
    if missing:
        raise ConfigError(f"{where}: missing field(s) {missing}")


def _real(section: dict, key: str, where: str) -> float:
    value = section[key]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{where}.{key}: expected a number, got {value!r}")
    return float(value)


def _integer(section: dict, key: str, where: str) -> int:
    value = section[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"{where}.{key}: expected an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    alpha: complex | None = None
    n: int | None = None
    amplitudes: tuple | None = None


@dataclass(frozen=True)
class TimesSpec:
    t_start: float
    t_end: float
    samples: int

    def grid(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.samples)


@dataclass(frozen=True)
class TruncationSpec:
    n_max: int | None = None
    tail_tolerance: float | None = None


@dataclass(frozen=True)
class WignerSpec:
    times: tuple
    grid: PhaseSpaceGrid
    conditioning: tuple = ("reduced",)
    normalize: bool = False
    k_max: int | None = None
    frame: str = "interaction"


@dataclass(frozen=True)
class SweepSpec:
    alphas: tuple = ()
    levels: tuple = ()
    detunings: tuple = ()


@dataclass(frozen=True)
class ScenarioConfig:
    params: ModelParams
    field: FieldSpec
    atom: object
    times: TimesSpec
    truncation: TruncationSpec
    wigner: WignerSpec | None = None
    sweep: SweepSpec | None = None
    outputs: str | None = None


_WIGNER_KINDS = ("reduced", "level1", "level2", "level3")


def parse_config(data: dict) -> ScenarioConfig:
    """Validate a JSON object against the scenario schema; reject unknown fields."""
    _check_keys(
        data,
        "config",
        required=("params", "field", "atom", "times", "truncation"),
        optional=("wigner", "sweep", "outputs"),
    )

    p = data["params"]
    _check_keys(p, "params", required=("omega_c", "omega_0", "g"))
    try:
        params = ModelParams(
            omega_c=_real(p, "omega_c", "params"),
            omega_0=_real(p, "omega_0", "params"),
            g=_real(p, "g", "params"),
        )
    except ValueError as exc:
        raise ConfigError(f"params: {exc}") from exc

    f = data["field"]
    if not isinstance(f, dict) or "kind" not in f:
        raise ConfigError("field: expected an object with a 'kind'")
    kind = f["kind"]
    if kind == "coherent":
        _check_keys(f, "field", required=("kind", "alpha"))
        field_spec = FieldSpec(kind="coherent", alpha=_parse_complex(f["alpha"], "field.alpha"))
    elif kind == "fock":
        _check_keys(f, "field", required=("kind", "n"))
        n = _integer(f, "n", "field")
        if n < 0:
            raise ConfigError("field.n: must be >= 0")
        field_spec = FieldSpec(kind="fock", n=n)
    elif kind == "amplitudes":
        _check_keys(f, "field", required=("kind", "list"))
        if not isinstance(f["list"], list) or not f["list"]:
            raise ConfigError("field.list: expected a non-empty list")
        amps = tuple(_parse_complex(v, "field.list") for v in f["list"])
        field_spec = FieldSpec(kind="amplitudes", amplitudes=amps)
    else:
        raise ConfigError(f"field.kind: unknown kind {kind!r}")

    atom = data["atom"]
    if isinstance(atom, int) and not isinstance(atom, bool):
        if atom not in (1, 2, 3):
            raise ConfigError("atom: level must be 1, 2 or 3")
    elif isinstance(atom, list) and len(atom) == 3:
        atom = tuple(_parse_complex(w, "atom") for w in atom)
    else:
        raise ConfigError("atom: expected a level (1|2|3) or three superposition weights")

    t = data["times"]
    _check_keys(t, "times", required=("t_start", "t_end", "samples"))
    times = TimesSpec(
        t_start=_real(t, "t_start", "times"),
        t_end=_real(t, "t_end", "times"),
        samples=_integer(t, "samples", "times"),
    )
    if times.samples < 2:
        raise ConfigError("times.samples: must be >= 2")
    if not times.t_end > times.t_start >= 0.0:
        raise ConfigError("times: need t_end > t_start >= 0")

    tr = data["truncation"]
    _check_keys(tr, "truncation", required=(), optional=("n_max", "tail_tolerance"))
    if ("n_max" in tr) == ("tail_tolerance" in tr):
        raise ConfigError("truncation: give exactly one of n_max or tail_tolerance")
    if "n_max" in tr:
        n_max = _integer(tr, "n_max", "truncation")
        if n_max < 2:
            raise ConfigError("truncation.n_max: must be >= 2")
        trunc = TruncationSpec(n_max=n_max)
    else:
        tol = _real(tr, "tail_tolerance", "truncation")
        if not 0.0 < tol < 1.0:
            raise ConfigError("truncation.tail_tolerance: must be in (0, 1)")
        trunc = TruncationSpec(tail_tolerance=tol)

    wigner_spec = None
    if "wigner" in data:
        w = data["wigner"]
        _check_keys(
            w,
            "wigner",
            required=("times", "grid"),
            optional=("conditioning", "normalize", "k_max", "frame"),
        )
        if not isinstance(w["times"], list) or not w["times"]:
            raise ConfigError("wigner.times: expected a non-empty list")
        wtimes = tuple(float(v) for v in w["times"])
        g = w["grid"]
        _check_keys(g, "wigner.grid", required=("re_min", "re_max", "im_min", "im_max", "n_re", "n_im"))
        try:
            grid = PhaseSpaceGrid(
                re_min=_real(g, "re_min", "wigner.grid"),
                re_max=_real(g, "re_max", "wigner.grid"),
                im_min=_real(g, "im_min", "wigner.grid"),
                im_max=_real(g, "im_max", "wigner.grid"),
                n_re=_integer(g, "n_re", "wigner.grid"),
                n_im=_integer(g, "n_im", "wigner.grid"),
            )
        except ValueError as exc:
            raise ConfigError(f"wigner.grid: {exc}") from exc
        conditioning = tuple(w.get("conditioning", ["reduced"]))
        for c in conditioning:
            if c not in _WIGNER_KINDS:
                raise ConfigError(f"wigner.conditioning: unknown kind {c!r}")
        frame = w.get("frame", "interaction")
        if frame not in ("interaction", "lab"):
            raise ConfigError("wigner.frame: must be 'interaction' or 'lab'")
        k_max = None
        if "k_max" in w:
            k_max = _integer(w, "k_max", "wigner")
            if k_max < 1:
                raise ConfigError("wigner.k_max: must be >= 1")
        normalize = w.get("normalize", False)
        if not isinstance(normalize, bool):
            raise ConfigError("wigner.normalize: expected a boolean")
        wigner_spec = WignerSpec(
            times=wtimes,
            grid=grid,
            conditioning=conditioning,
            normalize=normalize,
            k_max=k_max,
            frame=frame,
        )

    sweep_spec = None
    if "sweep" in data:
        s = data["sweep"]
        _check_keys(s, "sweep", required=(), optional=("alphas", "levels", "detunings"))
        alphas = tuple(_parse_complex(v, "sweep.alphas") for v in s.get("alphas", []))
        levels = tuple(s.get("levels", []))
        for lvl in levels:
            if lvl not in (1, 2, 3):
                raise ConfigError("sweep.levels: levels must be 1, 2 or 3")
        detunings = tuple(float(v) for v in s.get("detunings", []))
        if not (alphas or levels or detunings):
            raise ConfigError("sweep: at least one of alphas/levels/detunings must be listed")
        sweep_spec = SweepSpec(alphas=alphas, levels=levels, detunings=detunings)

    outputs = data.get("outputs")
    if outputs is not None and not isinstance(outputs, str):
        raise ConfigError("outputs: expected a directory path string")

    return ScenarioConfig(
        params=params,
        field=field_spec,
        atom=atom,
        times=times,
        truncation=trunc,
        wigner=wigner_spec,
        sweep=sweep_spec,
        outputs=outputs,
    )


def load_config(path) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return parse_config(data)


def serialize_config(config: ScenarioConfig) -> dict:
    """Inverse of parse_config; parse(serialize(c)) == c."""
    data = {
        "params": {
            "omega_c": config.params.omega_c,
            "omega_0": config.params.omega_0,
            "g": config.params.g,
        }
    }
    f = config.field
    if f.kind == "coherent":
        data["field"] = {"kind": "coherent", "alpha": _dump_complex(f.alpha)}
    elif f.kind == "fock":
        data["field"] = {"kind": "fock", "n": f.n}
    else:
        data["field"] = {"kind": "amplitudes", "list": [_dump_complex(a) for a in f.amplitudes]}
    if isinstance(config.atom, tuple):
        data["atom"] = [_dump_complex(w) for w in config.atom]
    else:
        data["atom"] = config.atom
    data["times"] = {
        "t_start": config.times.t_start,
        "t_end": config.times.t_end,
        "samples": config.times.samples,
    }
    if config.truncation.n_max is not None:
        data["truncation"] = {"n_max": config.truncation.n_max}
    else:
        data["truncation"] = {"tail_tolerance": config.truncation.tail_tolerance}
    if config.wigner is not None:
        w = config.wigner
        data["wigner"] = {
            "times": list(w.times),
            "grid": {
                "re_min": w.grid.re_min,
                "re_max": w.grid.re_max,
                "im_min": w.grid.im_min,
                "im_max": w.grid.im_max,
                "n_re": w.grid.n_re,
                "n_im": w.grid.n_im,
            },
            "conditioning": list(w.conditioning),
            "normalize": w.normalize,
            "frame": w.frame,
        }
        if w.k_max is not None:
            data["wigner"]["k_max"] = w.k_max
    if config.sweep is not None:
        s = config.sweep
        section = {}
        if s.alphas:
            section["alphas"] = [_dump_complex(a) for a in s.alphas]
        if s.levels:
            section["levels"] = list(s.levels)
        if s.detunings:
            section["detunings"] = list(s.detunings)
        data["sweep"] = section
    if config.outputs is not None:
        data["outputs"] = config.outputs
    return data


def resolve_n_max(config: ScenarioConfig) -> int:
    if config.truncation.n_max is not None:
        return config.truncation.n_max
    tol = config.truncation.tail_tolerance
    if config.field.kind == "coherent":
        return fock.suggest_truncation(config.field.alpha, tol)
    if config.field.kind == "fock":
        return max(config.field.n, 2)
    return max(len(config.field.amplitudes) - 1, 2)


def truncation_tail(config: ScenarioConfig, n_max: int) -> float:
    """Field probability mass that the chosen truncation cannot represent."""
    if config.field.kind == "coherent":
        return fock.poisson_tail_mass(abs(config.field.alpha) ** 2, n_max)
    if config.field.kind == "amplitudes" and len(config.field.amplitudes) - 1 > n_max:
        extra = np.asarray(config.field.amplitudes[n_max + 1 :])
        return float(np.sum(np.abs(extra) ** 2))
    return 0.0


def build_field(config: ScenarioConfig, n_max: int) -> fock.TruncatedFockVector:
    f = config.field
    if f.kind == "coherent":
        vec = fock.coherent_amplitudes(f.alpha, n_max)
        # renormalize the truncated vector so undersized truncations still run
        # (the discarded tail is reported separately as a truncation warning)
        return fock.TruncatedFockVector(vec.amplitudes / np.sqrt(vec.norm_sq()))
    if f.kind == "fock":
        if f.n > n_max:
            raise ConfigError("field.n exceeds the truncation bound")
        return fock.fock_amplitudes(f.n, n_max)
    amps = np.zeros(n_max + 1, dtype=complex)
    given = np.asarray(f.amplitudes, dtype=complex)
    if given.size > n_max + 1:
        raise ConfigError("field.list is longer than the truncation bound allows")
    amps[: given.size] = given
    return fock.TruncatedFockVector(amps)


def build_initial_state(config: ScenarioConfig, n_max: int) -> TriLevelState:
    field = build_field(config, n_max)
    try:
        return initial_state(field, config.atom)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _write_text(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _map_over_times(times: np.ndarray, worker, threads: int) -> list:
    if threads <= 1:
        return [worker(t) for t in times]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, times))


def run_evolve(config: ScenarioConfig, out_dir, strict: bool = False, threads: int = 1):
    """Evolve and write populations.csv / photon_stats.csv; returns warning strings."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    n_max = resolve_n_max(config)
    warnings_list = _tail_warnings(config, n_max)
    state0 = build_initial_state(config, n_max)
    times = config.times.grid()

    def worker(t: float):
        state = evolve(state0, config.params, t)
        p1, p2, p3 = level_populations(state)
        stats = photon_statistics(state, t)
        return (t, p1, p2, p3, stats.mean_n, stats.variance, stats.mandel_q)

    rows = _map_over_times(times, worker, threads)

    pop_lines = ["t,P1,P2,P3"]
    stat_lines = ["t,mean_n,variance,mandel_q"]
    for t, p1, p2, p3, mean, var, q in rows:
        pop_lines.append(",".join(_fmt(v) for v in (t, p1, p2, p3)))
        q_str = _fmt(q) if q is not None else "nan"
        stat_lines.append(",".join((_fmt(t), _fmt(mean), _fmt(var), q_str)))
    _write_text(out / "populations.csv", "\n".join(pop_lines) + "\n")
    _write_text(out / "photon_stats.csv", "\n".join(stat_lines) + "\n")
    return warnings_list


def _tail_warnings(config: ScenarioConfig, n_max: int) -> list[str]:
    tol = config.truncation.tail_tolerance or fock.DEFAULT_TAIL_TOLERANCE
    tail = truncation_tail(config, n_max)
    if tail > tol:
        return [f"truncation tail mass {tail:.3e} exceeds tolerance {tol:.3e} at n_max={n_max}"]
    return []


def run_wigner(config: ScenarioConfig, out_dir, strict: bool = False, threads: int = 1):
    """Write one CSV + JSON sidecar per requested (time, kind); returns warnings."""
    if config.wigner is None:
        raise ConfigError("wigner: section required for the wigner command")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    spec = config.wigner
    n_max = resolve_n_max(config)
    warnings_list = _tail_warnings(config, n_max)
    state0 = build_initial_state(config, n_max)
    grid = spec.grid
    re_pts = grid.re_points()
    im_pts = grid.im_points()

    for t in spec.times:
        state = evolve(state0, config.params, t)
        betas = None
        if spec.frame == "lab":
            # the lab-frame function is the interaction-picture one on rotated points
            betas = grid.beta_points() * np.exp(1j * config.params.omega_c * t)
        fields = wigner_sector_fields(
            state, grid, k_max=spec.k_max, normalize=spec.normalize, betas=betas
        )
        for kind in spec.conditioning:
            result = fields[kind]
            if isinstance(result, EmptySectorError):
                warnings_list.append(f"t={t:g} {kind}: empty sector, skipped ({result})")
                continue
            stem = f"wigner_t{t:g}_{kind}"
            lines = ["re_beta,im_beta,w_value"]
            vals = result.values
            for i, re in enumerate(re_pts):
                for j, im in enumerate(im_pts):
                    lines.append(f"{_fmt(re)},{_fmt(im)},{_fmt(vals[i, j])}")
            _write_text(out / f"{stem}.csv", "\n".join(lines) + "\n")
            sidecar = {
                "t": t,
                "kind": kind,
                "frame": spec.frame,
                "normalized": result.normalized,
                "grid": {
                    "re_min": grid.re_min,
                    "re_max": grid.re_max,
                    "im_min": grid.im_min,
                    "im_max": grid.im_max,
                    "n_re": grid.n_re,
                    "n_im": grid.n_im,
                },
                "min_value": result.min_value(),
                "max_value": result.max_value(),
            }
            _write_text(out / f"{stem}.json", json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    return warnings_list


def _unitarity_defect(state0: TriLevelState, params: ModelParams, times: np.ndarray) -> float:
    from .ladder import _detuned_entries, _resonant_entries, boundary_block_matrices

    n = np.arange(state0.n_blocks)
    worst = 0.0
    eye = np.eye(3)
    for t in times:
        if params.delta == 0.0 and params.g > 0.0:
            blocks, _ = _resonant_entries(n, params.g, t)
        else:
            blocks = _detuned_entries(n, params, t)
        defect = np.einsum("nji,njk->nik", blocks.conj(), blocks) - eye
        worst = max(worst, float(np.max(np.abs(defect))))
        two, phase = boundary_block_matrices(params, t)
        worst = max(worst, float(np.max(np.abs(two.conj().T @ two - np.eye(2)))))
        worst = max(worst, abs(abs(phase) - 1.0))
    return worst


def run_verify(config: ScenarioConfig, out_dir, threads: int = 1, oracle_n_max: int | None = None):
    """Analytic vs brute-force comparison; returns (report, ok).

    `oracle_n_max` deliberately mismatches the truncations for self-testing.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    n_max = resolve_n_max(config)
    o_n_max = n_max if oracle_n_max is None else oracle_n_max
    state0 = build_initial_state(config, n_max)
    field = build_field(config, min(n_max, o_n_max))
    h = oracle.build_full_hamiltonian(config.params, o_n_max)
    psi0 = oracle.prepare_full_state(field, config.atom, o_n_max)
    times = config.times.grid()

    # the exclusion margin follows the intended truncation; a mismatched oracle
    # simply contributes zeros where its space ends, which the comparison sees
    compare_blocks = max(min(state0.n_blocks, n_max - EDGE_BLOCK_MARGIN + 1), 0)

    def pad(arr: np.ndarray) -> np.ndarray:
        if arr.size >= compare_blocks:
            return arr[:compare_blocks]
        return np.concatenate([arr, np.zeros(compare_blocks - arr.size, dtype=complex)])

    def worker(t: float):
        state = evolve(state0, config.params, t)
        psi = oracle.evolve_lab_frame(psi0, h, t)
        psi_i = oracle.to_interaction_picture(psi, config.params, t)
        c3, c2, c1, b2, b1, s1 = oracle.block_components(psi_i)
        m = compare_blocks
        amp_dev = max(
            float(np.max(np.abs(state.C3[:m] - pad(c3)), initial=0.0)),
            float(np.max(np.abs(state.C2[:m] - pad(c2)), initial=0.0)),
            float(np.max(np.abs(state.C1[:m] - pad(c1)), initial=0.0)),
            abs(state.b2 - b2),
            abs(state.b1 - b1),
            abs(state.s1 - s1),
        )
        p_analytic = level_populations(state)
        pops_oracle = [float(np.sum(np.abs(oracle.level_index_slices(psi, lvl)) ** 2)) for lvl in (1, 2, 3)]
        pop_dev = max(abs(a - b) for a, b in zip(p_analytic, pops_oracle))
        stats = photon_statistics(state, t)
        mean_oracle = float(np.dot(oracle.photon_numbers(psi.size), np.abs(psi) ** 2))
        mean_dev = abs(stats.mean_n - mean_oracle)
        norm_dev = max(abs(state.norm_sq() - 1.0), abs(float(np.sum(np.abs(psi) ** 2)) - 1.0))
        return amp_dev, pop_dev, mean_dev, norm_dev, stats.mean_n, sum(p_analytic)

    results = _map_over_times(times, worker, threads)
    amp_devs, pop_devs, mean_devs, norm_devs, means, pop_sums = map(np.array, zip(*results))

    report = {
        "max_amplitude_dev": float(amp_devs.max()),
        "max_population_dev": float(pop_devs.max()),
        "max_meanN_dev": float(mean_devs.max()),
        "unitarity_max": _unitarity_defect(state0, config.params, times[:: max(1, times.size // 50)]),
        "norm_drift": float(norm_devs.max()),
    }
    failing = [k for k, v in report.items() if v > VERIFY_THRESHOLDS[k]]
    report["max_population_sum_dev"] = float(np.max(np.abs(pop_sums - 1.0)))
    if report["max_population_sum_dev"] > 1e-10:
        failing.append("max_population_sum_dev")
    report["thresholds"] = dict(VERIFY_THRESHOLDS)
    report["passed"] = not failing
    report["failing_metrics"] = failing
    _write_text(out / "verification_report.json", json.dumps(report, indent=2, sort_keys=True) + "\n")

    if config.params.delta == 0.0:
        dist = build_field(config, n_max).probabilities()
        per_level_means = {}
        for lvl in (1, 2, 3):
            lvl_state0 = initial_state(build_field(config, n_max), lvl)
            per_level_means[lvl] = [
                photon_statistics(evolve(lvl_state0, config.params, t), t).mean_n for t in times
            ]
        closed_report = mean_photon_deviation_report(dist, config.params.g, times, per_level_means)
        _write_text(
            out / "mean_photon_report.json",
            json.dumps(closed_report, indent=2, sort_keys=True) + "\n",
        )

    return report, not failing


def _combo_dir_name(alpha: complex | None, level, delta: float) -> str:
    parts = []
    if alpha is not None:
        alpha = complex(alpha)
        a_str = f"{alpha.real:g}" if alpha.imag == 0.0 else f"{alpha.real:g}{alpha.imag:+g}j"
        parts.append(f"alpha{a_str}")
    parts.append(f"level{level}")
    parts.append(f"delta{delta:g}")
    return "_".join(parts)


def run_sweep(config: ScenarioConfig, out_dir, strict: bool = False, threads: int = 1):
    """Cartesian product over sweep.alphas/levels/detunings; one evolve run each."""
    if config.sweep is None:
        raise ConfigError("sweep: section required for the sweep command")
    if config.sweep.alphas and config.field.kind != "coherent":
        raise ConfigError("sweep.alphas: requires a coherent base field")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    base_alpha = config.field.alpha if config.field.kind == "coherent" else None
    alphas = config.sweep.alphas or (base_alpha,)
    levels = config.sweep.levels or (config.atom if isinstance(config.atom, int) else 3,)
    detunings = config.sweep.detunings or (config.params.delta,)

    manifest = []
    all_warnings = []
    for alpha in alphas:
        for level in levels:
            for delta in detunings:
                sub = _combo_dir_name(alpha, level, delta)
                field = config.field if alpha is None else FieldSpec(kind="coherent", alpha=alpha)
                combo = ScenarioConfig(
                    params=ModelParams(
                        omega_c=config.params.omega_c,
                        omega_0=config.params.omega_c + delta,
                        g=config.params.g,
                    ),
                    field=field,
                    atom=level,
                    times=config.times,
                    truncation=config.truncation,
                )
                warns = run_evolve(combo, out / sub, strict=strict, threads=threads)
                all_warnings.extend(f"{sub}: {w}" for w in warns)
                entry = {"level": level, "delta": delta, "dir": sub}
                if alpha is not None:
                    entry["alpha"] = _dump_complex(alpha)
                manifest.append(entry)
    _write_text(out / "sweep_manifest.json", json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return all_warnings


def resolve_output_dir(cli_out: str | None, config: ScenarioConfig) -> str:
    if cli_out:
        return cli_out
    if config.outputs:
        return config.outputs
    env = os.environ.get(OUTPUT_ENV_VAR)
    if env:
        return env
    raise ConfigError("outputs: no output directory (use --out, config.outputs or LADDERJC_OUT)")
