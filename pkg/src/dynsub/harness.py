"""Seeded Monte Carlo experiment driver.

One channel realization is shared by every architecture within a drop, so
comparisons are paired. Each drop derives its own random substream from
(seed, drop index), which makes results bit-identical across reruns and
independent of the worker count.
"""

import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace

import numpy as np

from .channel import (ChannelRealization, compute_combiner, realize_channels,
                      restrict_channel)
from .codebook import Codebook, build_codebook
from .config import SystemConfig
from .linalg import SingularChannelError
from .metrics import (ExperimentResult, PowerModel, energy_efficiency,
                      ps_count, rf_adder_count, user_rates)
from .partition import (ExhaustiveCapError, exhaustive_partition,
                        fixed_adjacent, fixed_interlaced, greedy_partition,
                        partition_count)
from .precoding import fully_connected_precoder, hybrid_precoder_for_partition
from .selection import (BeamAssignment, SelectedSet, assign_beams,
                        select_users)

ARCHITECTURES = ("dynamic", "fixed_adjacent", "fixed_interlaced",
                 "fully_connected", "exhaustive")
MODES = ("zf", "mf")
SWEEP_AXES = ("snr_db", "n_tx", "n_rf")
DEFAULT_EXHAUSTIVE_CAP = 1_000_000

AGGREGATE_COLUMNS = ("sweep_name", "sweep_value", "architecture", "mode",
                     "n_drops_used", "n_drops_skipped", "mean_sum_rate_bpshz",
                     "stderr_sum_rate", "mean_ee_bpshz_per_watt", "ps_count",
                     "rf_adder_count")
PER_DROP_COLUMNS = ("sweep_name", "sweep_value", "architecture", "mode",
                    "drop_index", "skipped", "sum_rate_bpshz",
                    "ee_bpshz_per_watt")


class SpecError(ValueError):
    """Experiment specification is malformed."""


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything needed to reproduce one experiment."""

    base: SystemConfig
    sweep_name: str
    sweep_values: tuple
    architectures: tuple
    mode: str = "zf"
    n_drops: int = 500
    seed: int = 0
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP
    power: PowerModel = PowerModel()
    out_path: str | None = None
    out_format: str = "csv"
    per_drop_path: str | None = None
    workers: int = 1

    def __post_init__(self):
        if self.sweep_name not in SWEEP_AXES:
            raise SpecError(f"sweep axis must be one of {SWEEP_AXES}")
        if not self.sweep_values:
            raise SpecError("sweep values must be non-empty")
        if not self.architectures:
            raise SpecError("at least one architecture is required")
        unknown = [a for a in self.architectures if a not in ARCHITECTURES]
        if unknown:
            raise SpecError(f"unknown architectures {unknown}")
        if len(set(self.architectures)) != len(self.architectures):
            raise SpecError("duplicate architectures")
        if self.mode not in MODES:
            raise SpecError(f"mode must be one of {MODES}")
        if self.n_drops < 1:
            raise SpecError("n_drops must be >= 1")
        if self.seed < 0:
            raise SpecError("seed must be non-negative")
        if self.exhaustive_cap < 1:
            raise SpecError("exhaustive_cap must be >= 1")
        if self.out_format not in ("csv", "json"):
            raise SpecError("format must be csv or json")
        if self.workers < 1:
            raise SpecError("workers must be >= 1")


@dataclass(frozen=True)
class AggregateRow:
    """Mean performance of one architecture at one sweep point."""

    sweep_name: str
    sweep_value: float
    architecture: str
    mode: str
    n_drops_used: int
    n_drops_skipped: int
    mean_sum_rate: float
    stderr_sum_rate: float
    mean_ee: float
    ps_count: int
    rf_adder_count: int


@dataclass(frozen=True)
class DropContext:
    """Shared state of one drop: channels, initial beams, scheduled users."""

    cfg: SystemConfig
    drop_index: int
    cb: Codebook
    realization: ChannelRealization
    h_effs: tuple
    beams: BeamAssignment
    selected: SelectedSet


def drop_rng(seed: int, drop_index: int) -> np.random.Generator:
    """Independent substream for one drop, reproducible from (seed, index)."""
    return np.random.default_rng(np.random.SeedSequence((seed, drop_index)))


def realize_drop(cfg: SystemConfig, drop_index: int) -> DropContext:
    """Sample channels, pick initial beams, and schedule users for one drop."""
    rng = drop_rng(cfg.seed, drop_index)
    realization = realize_channels(cfg, rng)
    cb = build_codebook(cfg.codebook_size, cfg.n_tx,
                        cfg.antenna_spacing_wavelengths)
    h_effs = tuple(w @ h for w, h in
                   zip(realization.combiner_full, realization.h_full))
    beams = assign_beams(h_effs, cb)
    selected = select_users(range(cfg.n_candidates), beams, h_effs,
                            cfg.n_users, cb, cfg.noise_var)
    return DropContext(cfg=cfg, drop_index=drop_index, cb=cb,
                       realization=realization, h_effs=h_effs, beams=beams,
                       selected=selected)


def _partition_for(arch, ctx, beam_qs, sel_h_effs, cap):
    cfg = ctx.cfg
    if arch == "dynamic":
        return greedy_partition(beam_qs, sel_h_effs, ctx.cb, cfg.noise_var,
                                cfg.n_tx)
    if arch == "fixed_adjacent":
        return fixed_adjacent(cfg.n_tx, cfg.n_users)
    if arch == "fixed_interlaced":
        return fixed_interlaced(cfg.n_tx, cfg.n_users)
    if arch == "exhaustive":
        # The brute-force baseline jointly searches subsets and codewords for
        # maximal analog effective-channel gain.
        return exhaustive_partition(beam_qs, sel_h_effs, ctx.cb, cfg.noise_var,
                                    cfg.n_tx, objective="gain", cap=cap)
    raise SpecError(f"unknown architecture {arch!r}")


def evaluate_architecture(ctx: DropContext, arch: str, mode: str = "zf",
                          exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
                          power: PowerModel | None = None) -> ExperimentResult:
    """Run one architecture on an already-realized drop.

    A digital stage that hits a singular effective channel marks the drop
    as skipped for this architecture instead of aborting the run.
    """
    power = power if power is not None else PowerModel()
    cfg = ctx.cfg
    users = ctx.selected.users
    sel_h_effs = [ctx.h_effs[u] for u in users]
    beam_qs = [ctx.beams.best_q[u] for u in users]
    try:
        if arch == "fully_connected":
            final_h_effs = sel_h_effs
            prec = fully_connected_precoder(final_h_effs, ctx.cb, mode=mode,
                                            n_s=cfg.n_streams)
        else:
            part = _partition_for(arch, ctx, beam_qs, sel_h_effs,
                                  exhaustive_cap)
            # Receivers re-derive their combiners from the subarray channel
            # once the partition is known.
            final_h_effs = []
            for k, u in enumerate(users):
                h = ctx.realization.h_full[u]
                w = compute_combiner(restrict_channel(h, part.subsets[k]),
                                     cfg.n_streams)
                final_h_effs.append(w @ h)
            prec = hybrid_precoder_for_partition(part, final_h_effs, ctx.cb,
                                                 mode=mode, n_s=cfg.n_streams)
        rates = user_rates(prec, final_h_effs, cfg.noise_var)
        sum_rate = float(sum(rates))
        n_ps = ps_count(arch, cfg.n_tx, cfg.n_rf)
        ee = energy_efficiency(sum_rate, power, cfg.n_rf, n_ps)
        return ExperimentResult(ctx.drop_index, arch, tuple(rates), sum_rate,
                                ee, skipped=False)
    except SingularChannelError:
        return ExperimentResult(ctx.drop_index, arch, (), 0.0, 0.0,
                                skipped=True)


def run_drop(cfg: SystemConfig, drop_index: int, architectures,
             mode: str = "zf", exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
             power: PowerModel | None = None) -> list:
    """Evaluate every requested architecture on one shared realization."""
    ctx = realize_drop(cfg, drop_index)
    return [evaluate_architecture(ctx, arch, mode, exhaustive_cap, power)
            for arch in architectures]


def _drop_task(args):
    cfg, drop_index, architectures, mode, cap, power = args
    return run_drop(cfg, drop_index, architectures, mode=mode,
                    exhaustive_cap=cap, power=power)


def _run_drops(cfg: SystemConfig, spec: ExperimentSpec) -> list:
    tasks = [(cfg, i, spec.architectures, spec.mode, spec.exhaustive_cap,
              spec.power) for i in range(spec.n_drops)]
    if spec.workers <= 1:
        return [_drop_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=spec.workers) as pool:
        return list(pool.map(_drop_task, tasks))


def apply_sweep(cfg: SystemConfig, name: str, value) -> SystemConfig:
    if name == "snr_db":
        return replace(cfg, snr_db=float(value))
    if name == "n_tx":
        return replace(cfg, n_tx=int(value))
    if name == "n_rf":
        return replace(cfg, n_rf=int(value), n_users=int(value))
    raise SpecError(f"unknown sweep axis {name!r}")


def _aggregate(spec, value, arch, results, cfg) -> AggregateRow:
    used = [r for r in results if not r.skipped]
    skipped = len(results) - len(used)
    if used:
        srs = np.array([r.sum_rate for r in used])
        ees = np.array([r.energy_efficiency for r in used])
        mean_sr = float(np.mean(srs))
        mean_ee = float(np.mean(ees))
        stderr = (float(np.std(srs, ddof=1) / math.sqrt(len(used)))
                  if len(used) > 1 else 0.0)
    else:
        mean_sr = mean_ee = stderr = 0.0
    return AggregateRow(
        sweep_name=spec.sweep_name, sweep_value=value, architecture=arch,
        mode=spec.mode, n_drops_used=len(used), n_drops_skipped=skipped,
        mean_sum_rate=mean_sr, stderr_sum_rate=stderr, mean_ee=mean_ee,
        ps_count=ps_count(arch, cfg.n_tx, cfg.n_rf),
        rf_adder_count=rf_adder_count(arch, cfg.n_tx, cfg.n_rf))


def run_experiment(spec: ExperimentSpec):
    """Run the full sweep.

    Returns (aggregate rows, per-drop entries); per-drop entries are
    (sweep_value, ExperimentResult) pairs in drop order. The fold over
    drops is sequential and ordered, so results do not depend on the
    worker count.
    """
    base = replace(spec.base, seed=spec.seed)
    sweep_cfgs = [apply_sweep(base, spec.sweep_name, v)
                  for v in spec.sweep_values]
    if "exhaustive" in spec.architectures:
        for cfg in sweep_cfgs:
            n = partition_count(cfg.n_tx, cfg.n_users)
            if n > spec.exhaustive_cap:
                raise ExhaustiveCapError(
                    f"{n} partitions at n_tx={cfg.n_tx}, K={cfg.n_users} "
                    f"exceed the cap {spec.exhaustive_cap}")

    rows, per_drop = [], []
    for value, cfg in zip(spec.sweep_values, sweep_cfgs):
        drop_results = _run_drops(cfg, spec)
        for results in drop_results:
            per_drop.extend((value, r) for r in results)
        for arch in spec.architectures:
            arch_results = [r for results in drop_results for r in results
                            if r.architecture == arch]
            rows.append(_aggregate(spec, value, arch, arch_results, cfg))
    return rows, per_drop


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _aggregate_record(row: AggregateRow) -> dict:
    return {
        "sweep_name": row.sweep_name,
        "sweep_value": row.sweep_value,
        "architecture": row.architecture,
        "mode": row.mode,
        "n_drops_used": row.n_drops_used,
        "n_drops_skipped": row.n_drops_skipped,
        "mean_sum_rate_bpshz": row.mean_sum_rate,
        "stderr_sum_rate": row.stderr_sum_rate,
        "mean_ee_bpshz_per_watt": row.mean_ee,
        "ps_count": row.ps_count,
        "rf_adder_count": row.rf_adder_count,
    }


def aggregates_to_csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=AGGREGATE_COLUMNS,
                            lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(_aggregate_record(row))
    return buf.getvalue()


def aggregates_to_json_text(rows, spec: ExperimentSpec) -> str:
    payload = {"spec": asdict(spec), "rows": [_aggregate_record(r) for r in rows]}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def per_drop_to_csv_text(entries, spec: ExperimentSpec) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=PER_DROP_COLUMNS,
                            lineterminator="\n")
    writer.writeheader()
    for value, r in entries:
        writer.writerow({
            "sweep_name": spec.sweep_name,
            "sweep_value": value,
            "architecture": r.architecture,
            "mode": spec.mode,
            "drop_index": r.drop_index,
            "skipped": r.skipped,
            "sum_rate_bpshz": r.sum_rate,
            "ee_bpshz_per_watt": r.energy_efficiency,
        })
    return buf.getvalue()


def write_output(rows, spec: ExperimentSpec) -> None:
    """Emit aggregates to spec.out_path (stdout when unset)."""
    if spec.out_format == "json":
        text = aggregates_to_json_text(rows, spec)
    else:
        text = aggregates_to_csv_text(rows)
    if spec.out_path is None:
        sys.stdout.write(text)
    else:
        with open(spec.out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def write_per_drop(entries, spec: ExperimentSpec) -> None:
    if spec.per_drop_path is None:
        return
    with open(spec.per_drop_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(per_drop_to_csv_text(entries, spec))


# ---------------------------------------------------------------------------
# spec files and presets
# ---------------------------------------------------------------------------

def spec_from_dict(raw: dict) -> ExperimentSpec:
    """Build a spec from the JSON file layout (see README for the schema)."""
    if not isinstance(raw, dict):
        raise SpecError("spec file must contain a JSON object")
    known = {"config", "sweep", "architectures", "mode", "n_drops", "seed",
             "exhaustive_cap", "power", "out", "format", "per_drop",
             "workers"}
    unknown = set(raw) - known
    if unknown:
        raise SpecError(f"unknown spec keys {sorted(unknown)}")
    try:
        cfg = SystemConfig(**raw.get("config", {}))
        power = PowerModel(**raw.get("power", {}))
        sweep = raw["sweep"]
        return ExperimentSpec(
            base=cfg,
            sweep_name=sweep["name"],
            sweep_values=tuple(sweep["values"]),
            architectures=tuple(raw["architectures"]),
            mode=raw.get("mode", "zf"),
            n_drops=int(raw.get("n_drops", 500)),
            seed=int(raw.get("seed", cfg.seed)),
            exhaustive_cap=int(raw.get("exhaustive_cap",
                                       DEFAULT_EXHAUSTIVE_CAP)),
            power=power,
            out_path=raw.get("out"),
            out_format=raw.get("format", "csv"),
            per_drop_path=raw.get("per_drop"),
            workers=int(raw.get("workers", 1)),
        )
    except SpecError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"invalid experiment spec: {exc}") from exc


def load_spec_file(path: str) -> ExperimentSpec:
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError(f"spec file is not valid JSON: {exc}") from exc
    return spec_from_dict(raw)


_SNR_GRID = (-20.0, -15.0, -10.0, -5.0, 0.0, 5.0, 10.0)
_NTX_GRID = (16, 32, 64, 128, 256)
_COMPARED = ("dynamic", "fixed_adjacent", "fixed_interlaced",
             "fully_connected")


def _presets() -> dict:
    fig4 = ExperimentSpec(
        base=SystemConfig(n_tx=64, n_rf=2, n_users=2, n_candidates=4),
        sweep_name="snr_db", sweep_values=_SNR_GRID,
        architectures=_COMPARED)
    fig5 = ExperimentSpec(
        base=SystemConfig(n_tx=128, n_rf=4, n_users=4, n_candidates=8),
        sweep_name="snr_db", sweep_values=_SNR_GRID,
        architectures=("dynamic", "fixed_interlaced", "fully_connected"))
    fig6 = ExperimentSpec(
        base=SystemConfig(n_tx=64, n_rf=4, n_users=4, n_candidates=8,
                          snr_db=0.0),
        sweep_name="n_tx", sweep_values=_NTX_GRID,
        architectures=("dynamic", "fixed_interlaced", "fully_connected"))
    fig7 = ExperimentSpec(
        base=SystemConfig(n_tx=64, n_rf=2, n_users=2, n_candidates=16,
                          snr_db=-10.0),
        sweep_name="n_rf", sweep_values=(2, 4, 8),
        architectures=_COMPARED)
    fig8 = ExperimentSpec(
        base=SystemConfig(n_tx=64, n_rf=4, n_users=4, n_candidates=8,
                          snr_db=-10.0),
        sweep_name="n_tx", sweep_values=_NTX_GRID,
        architectures=_COMPARED)
    return {"fig4": fig4, "fig5": fig5, "fig6": fig6, "fig7": fig7,
            "fig8": fig8}


PRESETS = _presets()


def preset_spec(name: str) -> ExperimentSpec:
    try:
        return PRESETS[name]
    except KeyError:
        raise SpecError(f"unknown preset {name!r}; choose from "
                        f"{sorted(PRESETS)}") from None
