import csv
import json
from dataclasses import replace

import numpy as np
import pytest

from dynsub.config import SystemConfig
from dynsub.harness import (ExperimentSpec, SpecError,
                            aggregates_to_csv_text, aggregates_to_json_text,
                            apply_sweep, evaluate_architecture, load_spec_file,
                            per_drop_to_csv_text, preset_spec, realize_drop,
                            run_drop, run_experiment, spec_from_dict,
                            write_output, write_per_drop, PRESETS)
from dynsub.partition import (ExhaustiveCapError, exhaustive_partition,
                              greedy_partition, partition_objective)

TINY = SystemConfig(n_tx=6, n_rf=2, n_users=2, n_candidates=4,
                    codebook_size=8, snr_db=0.0, seed=1)
ALL_ARCHS = ("dynamic", "fixed_adjacent", "fixed_interlaced",
             "fully_connected", "exhaustive")


def test_run_drop_deterministic():
    a = run_drop(TINY, 3, ALL_ARCHS)
    b = run_drop(TINY, 3, ALL_ARCHS)
    assert a == b


def test_single_user_architectures_coincide():
    cfg = SystemConfig(n_tx=8, n_rf=1, n_users=1, n_candidates=2,
                       codebook_size=8, seed=5)
    results = run_drop(cfg, 0, ALL_ARCHS)
    rates = [r.sum_rate for r in results]
    assert not any(r.skipped for r in results)
    assert max(rates) - min(rates) < 1e-12 * max(rates)


def test_architectures_evaluate_independently():
    # running one architecture alone gives the same numbers as running it
    # alongside the others on the shared realization
    alone = run_drop(TINY, 7, ("dynamic",))
    joint = run_drop(TINY, 7, ALL_ARCHS)
    assert alone[0] == [r for r in joint if r.architecture == "dynamic"][0]


def test_shared_context_across_architectures():
    ctx = realize_drop(TINY, 2)
    res_a = evaluate_architecture(ctx, "dynamic")
    res_b = evaluate_architecture(ctx, "fully_connected")
    again = evaluate_architecture(ctx, "dynamic")
    assert res_a == again
    assert res_a.architecture != res_b.architecture


def test_sum_rate_consistent_with_per_user_rates():
    for r in run_drop(TINY, 11, ALL_ARCHS):
        if not r.skipped:
            assert r.sum_rate == pytest.approx(sum(r.rates), abs=1e-12)
            assert all(x >= 0 for x in r.rates)


def test_exhaustive_dominates_greedy_objective_per_drop():
    for i in range(20):
        ctx = realize_drop(TINY, i)
        users = ctx.selected.users
        h_effs = [ctx.h_effs[u] for u in users]
        qs = [ctx.beams.best_q[u] for u in users]
        greedy = greedy_partition(qs, h_effs, ctx.cb, TINY.noise_var, TINY.n_tx)
        exhaust = exhaustive_partition(qs, h_effs, ctx.cb, TINY.noise_var,
                                       TINY.n_tx, mode="beams_fixed")
        og = partition_objective(greedy.subsets, qs, h_effs, ctx.cb,
                                 TINY.noise_var)
        oe = partition_objective(exhaust.subsets, qs, h_effs, ctx.cb,
                                 TINY.noise_var)
        assert oe >= og


def _tiny_spec(**kw):
    defaults = dict(base=TINY, sweep_name="snr_db", sweep_values=(0.0,),
                    architectures=("dynamic", "fully_connected"),
                    n_drops=4, seed=2)
    defaults.update(kw)
    return ExperimentSpec(**defaults)


def test_single_drop_aggregate_equals_drop():
    spec = _tiny_spec(n_drops=1)
    rows, per_drop = run_experiment(spec)
    results = {r.architecture: r for _, r in per_drop}
    for row in rows:
        r = results[row.architecture]
        assert row.mean_sum_rate == r.sum_rate
        assert row.mean_ee == r.energy_efficiency
        assert row.stderr_sum_rate == 0.0
        assert row.n_drops_used == 1


def test_drop_accounting():
    spec = _tiny_spec(n_drops=6)
    rows, _ = run_experiment(spec)
    for row in rows:
        assert row.n_drops_used + row.n_drops_skipped == 6


def test_worker_count_does_not_change_results():
    spec = _tiny_spec(n_drops=5)
    rows1, per1 = run_experiment(spec)
    rows2, per2 = run_experiment(replace(spec, workers=2))
    assert rows1 == rows2
    assert per1 == per2


def test_output_files_byte_identical(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    pd1, pd2 = tmp_path / "a_drops.csv", tmp_path / "b_drops.csv"
    for out, pd in ((out1, pd1), (out2, pd2)):
        spec = _tiny_spec(out_path=str(out), per_drop_path=str(pd))
        rows, per_drop = run_experiment(spec)
        write_output(rows, spec)
        write_per_drop(per_drop, spec)
    assert out1.read_bytes() == out2.read_bytes()
    assert pd1.read_bytes() == pd2.read_bytes()


def test_per_drop_csv_mean_matches_aggregate(tmp_path):
    pd_path = tmp_path / "drops.csv"
    spec = _tiny_spec(n_drops=8, per_drop_path=str(pd_path))
    rows, per_drop = run_experiment(spec)
    write_per_drop(per_drop, spec)

    with open(pd_path) as fh:
        records = list(csv.DictReader(fh))
    for row in rows:
        vals = [float(r["sum_rate_bpshz"]) for r in records
                if r["architecture"] == row.architecture
                and float(r["sweep_value"]) == row.sweep_value
                and r["skipped"] == "False"]
        assert len(vals) == row.n_drops_used
        assert abs(np.mean(vals) - row.mean_sum_rate) < 1e-12


def test_csv_header_and_json_echo():
    spec = _tiny_spec(n_drops=1)
    rows, _ = run_experiment(spec)
    text = aggregates_to_csv_text(rows)
    header = text.splitlines()[0]
    assert header == ("sweep_name,sweep_value,architecture,mode,n_drops_used,"
                      "n_drops_skipped,mean_sum_rate_bpshz,stderr_sum_rate,"
                      "mean_ee_bpshz_per_watt,ps_count,rf_adder_count")
    payload = json.loads(aggregates_to_json_text(rows, spec))
    assert payload["spec"]["seed"] == 2
    assert payload["spec"]["base"]["n_tx"] == 6
    assert len(payload["rows"]) == len(rows)


def test_per_drop_text_has_expected_columns():
    spec = _tiny_spec(n_drops=2)
    _, per_drop = run_experiment(spec)
    header = per_drop_to_csv_text(per_drop, spec).splitlines()[0]
    assert header == ("sweep_name,sweep_value,architecture,mode,drop_index,"
                      "skipped,sum_rate_bpshz,ee_bpshz_per_watt")


def test_sweep_axes():
    cfg = apply_sweep(TINY, "snr_db", -5)
    assert cfg.snr_db == -5.0
    cfg = apply_sweep(TINY, "n_tx", 8)
    assert cfg.n_tx == 8
    cfg = apply_sweep(replace(TINY, n_candidates=6), "n_rf", 3)
    assert cfg.n_rf == 3 and cfg.n_users == 3


def test_sweep_rejects_inconsistent_values():
    with pytest.raises(ValueError):
        apply_sweep(TINY, "n_rf", 5)  # exceeds the candidate pool


def test_spec_validation():
    with pytest.raises(SpecError):
        _tiny_spec(architectures=())
    with pytest.raises(SpecError):
        _tiny_spec(architectures=("dynamic", "bogus"))
    with pytest.raises(SpecError):
        _tiny_spec(mode="mmse")
    with pytest.raises(SpecError):
        _tiny_spec(n_drops=0)
    with pytest.raises(SpecError):
        _tiny_spec(sweep_name="n_paths")
    with pytest.raises(SpecError):
        _tiny_spec(sweep_values=())


def test_exhaustive_cap_raises_before_running():
    spec = _tiny_spec(base=replace(TINY, n_tx=64),
                      architectures=("exhaustive",))
    with pytest.raises(ExhaustiveCapError):
        run_experiment(spec)


def test_spec_file_round_trip(tmp_path):
    raw = {
        "config": {"n_tx": 6, "n_rf": 2, "n_users": 2, "n_candidates": 4,
                   "codebook_size": 8},
        "sweep": {"name": "snr_db", "values": [0.0, 5.0]},
        "architectures": ["dynamic", "fully_connected"],
        "mode": "mf",
        "n_drops": 3,
        "seed": 9,
        "workers": 2,
    }
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(raw))
    spec = load_spec_file(str(path))
    assert spec.mode == "mf"
    assert spec.sweep_values == (0.0, 5.0)
    assert spec.n_drops == 3
    assert spec.seed == 9
    assert spec.base.codebook_size == 8


def test_spec_dict_rejects_unknown_keys():
    with pytest.raises(SpecError):
        spec_from_dict({"sweep": {"name": "snr_db", "values": [0]},
                        "architectures": ["dynamic"], "bogus": 1})


def test_presets_are_valid_and_runnable():
    assert set(PRESETS) == {"fig4", "fig5", "fig6", "fig7", "fig8"}
    for name in PRESETS:
        spec = preset_spec(name)
        assert spec.n_drops == 500
        # shrink heavily so the smoke run stays fast
        small = replace(spec, n_drops=1,
                        sweep_values=(spec.sweep_values[0],))
        rows, _ = run_experiment(small)
        assert rows


def test_mf_mode_runs_without_skips():
    spec = _tiny_spec(mode="mf", n_drops=4)
    rows, _ = run_experiment(spec)
    for row in rows:
        assert row.n_drops_skipped == 0
