import csv
import os
from pathlib import Path

import numpy as np
import pytest

from wsaic.core import ConfigurationError, UnsupportedMetricError
from wsaic.harness import (
    ExperimentConfig,
    compare,
    config_from_mapping,
    load_config,
    read_runs,
    read_summary,
    run_batch,
    summary_from_runs,
)
from wsaic.harness import batch as batch_mod


def small(out, **kw):
    base = dict(function="F6", budget=3000, population=20, runs=3, base_seed=7, epsilon_f=1e-3,
                output=str(out))
    base.update(kw)
    return ExperimentConfig(**base)


def bundle_bytes(path):
    path = Path(path)
    return {p.relative_to(path).as_posix(): p.read_bytes()
            for p in sorted(path.rglob("*.csv"))}


class TestConfig:
    def test_seed_derivation(self):
        assert ExperimentConfig("F6", runs=2, base_seed=7).seeds() == [7, 8]

    def test_full_defaults_for_f6(self):
        cfg = ExperimentConfig("F6")
        assert cfg.resolved_epsilon == 1e-8
        assert cfg.resolved_population == 50
        assert cfg.resolved_budget == 30_000_000
        assert cfg.resolved_runs == 51

    def test_desk_preset(self):
        cfg = ExperimentConfig("F2", preset="desk")
        assert cfg.resolved_budget == 18_000_000
        assert cfg.resolved_runs == 25
        assert cfg.resolved_epsilon == 1e-8
        assert ExperimentConfig("F6", preset="desk").resolved_epsilon == 1e-6

    def test_explicit_values_win(self):
        cfg = ExperimentConfig("F6", preset="desk", budget=10, runs=4, epsilon_f=0.5)
        assert (cfg.resolved_budget, cfg.resolved_runs, cfg.resolved_epsilon) == (10, 4, 0.5)

    def test_wsa_eta_from_suite(self):
        assert ExperimentConfig("F16", algorithm="wsa").build_params().eta == 0.005

    def test_parse_toml(self, tmp_path):
        p = tmp_path / "c.toml"
        p.write_text(
            'function = "F6"\npreset = "desk"\noutput = "out/f6"\nbase_seed = 3\n'
            '[algorithm]\nname = "wsa-ic"\n[algorithm.params]\nstability_threshold = 50\n'
            '[transform]\nsource = "seed"\nseed = 4\n')
        cfg = load_config(p)
        assert cfg.output == str(tmp_path / "out/f6")
        assert cfg.algorithm_params == {"stability_threshold": 50}
        assert cfg.transform.source == "seed" and cfg.transform.seed == 4
        cfg.validate()

    @pytest.mark.parametrize("data", [
        {"function": "F6", "budgett": 3},
        {"preset": "desk"},
        {"function": "F6", "algorithm": {"name": "wsa-ic", "extra": 1}},
        {"function": "F6", "transform": {"kind": "seed"}},
        {"function": "F6", "bounds": [5, 1]},
    ])
    def test_parse_errors(self, data):
        with pytest.raises(ConfigurationError):
            config_from_mapping(data)

    def test_malformed_file(self, tmp_path):
        p = tmp_path / "bad.toml"
        p.write_text("function = \n")
        with pytest.raises(ConfigurationError):
            load_config(p)

    @pytest.mark.parametrize("change", [
        {"function": "F42"},
        {"algorithm": "annealing"},
        {"preset": "laptop"},
        {"runs": 0},
        {"algorithm_params": {"stability_threshold": -1}},
    ])
    def test_preflight(self, tmp_path, change):
        with pytest.raises(ConfigurationError):
            small(tmp_path, **change).validate()

    @pytest.mark.skipif(os.geteuid() == 0, reason="root ignores directory permissions")
    def test_unwritable_output(self, tmp_path):
        ro = tmp_path / "ro"
        ro.mkdir()
        ro.chmod(0o500)
        with pytest.raises(ConfigurationError):
            small(ro / "x").validate()

    def test_output_under_a_file(self, tmp_path):
        f = tmp_path / "file"
        f.write_text("")
        with pytest.raises(ConfigurationError):
            small(f / "x").validate()


class TestBatch:
    def test_files_and_schema(self, tmp_path):
        s = run_batch(small(tmp_path / "b"))
        out = tmp_path / "b"
        runs = read_runs(out)
        assert [r["seed"] for r in runs] == [7, 8, 9]
        assert all(r["evaluations_used"] <= 3000 for r in runs)
        assert (out / "traces" / "run_002.csv").is_file()
        assert (out / "solutions" / "run_000.csv").is_file()
        with (out / "runs.csv").open() as fh:
            header = next(csv.reader(fh))
        assert header[:5] == ["run", "seed", "matched_optima", "best_fitness", "evaluations_used"]
        assert s.runs == 3 and s.known_optima == 16

    def test_floats_have_17_digits(self, tmp_path):
        run_batch(small(tmp_path / "b", runs=1))
        row = (tmp_path / "b" / "runs.csv").read_text().splitlines()[1].split(",")
        assert float(row[3]) == float("%.17g" % float(row[3]))
        assert batch_mod.fmt(0.1) == "0.10000000000000001"

    def test_byte_identical_reruns(self, tmp_path):
        run_batch(small(tmp_path / "a"))
        run_batch(small(tmp_path / "b"))
        run_batch(small(tmp_path / "c", workers=2))
        a = bundle_bytes(tmp_path / "a")
        assert a == bundle_bytes(tmp_path / "b") == bundle_bytes(tmp_path / "c")
        assert len(a) == 8

    def test_summary_roundtrip(self, tmp_path):
        run_batch(small(tmp_path / "b", runs=4))
        stored, recomputed = read_summary(tmp_path / "b"), summary_from_runs(tmp_path / "b")
        for key, value in recomputed.items():
            assert stored[key] == pytest.approx(value, abs=1e-12, nan_ok=True), key

    def test_aborted_batch_leaves_no_summary(self, tmp_path, monkeypatch):
        out = tmp_path / "b"
        run_batch(small(out, runs=1))
        assert (out / "summary.csv").exists()
        real = batch_mod._one_run
        calls = []

        def flaky(config, seed):
            calls.append(seed)
            if len(calls) == 2:
                raise KeyboardInterrupt
            return real(config, seed)

        monkeypatch.setattr(batch_mod, "_one_run", flaky)
        with pytest.raises(KeyboardInterrupt):
            run_batch(small(out))
        assert not (out / "summary.csv").exists()
        assert not (out / "runs.csv").exists()
        assert not any(p.name.startswith(".") for p in out.rglob("*"))


@pytest.fixture(scope="module")
def thirty(tmp_path_factory):
    root = tmp_path_factory.mktemp("cmp")
    cfg = dict(budget=600, population=10, runs=30, epsilon_f=1e-2)
    for fid in ("F6", "F7"):
        for algo in ("wsa-ic", "wsa"):
            run_batch(ExperimentConfig(fid, algorithm=algo, output=str(root / algo / fid), **cfg))
    return root


class TestCompare:
    def test_identical_sets(self, thirty):
        table = compare(thirty / "wsa-ic", thirty / "wsa-ic")
        assert [r.verdict.symbol for r in table.rows] == ["=", "="]
        assert table.tally == {"+": 0, "=": 2, "-": 0}

    def test_tally_partitions(self, thirty):
        table = compare(thirty / "wsa-ic", thirty / "wsa", metric="best_fitness")
        assert sum(table.tally.values()) == len(table.rows) == 2
        assert "+/=/-" in table.to_text()

    def test_single_bundle(self, thirty):
        table = compare(thirty / "wsa-ic" / "F6", thirty / "wsa" / "F6")
        assert [r.function for r in table.rows] == ["F6"]

    def test_mismatched_counts(self, thirty, tmp_path):
        run_batch(ExperimentConfig("F6", budget=600, population=10, runs=31, epsilon_f=1e-2,
                                   output=str(tmp_path / "F6")))
        with pytest.raises(ConfigurationError):
            compare(thirty / "wsa-ic" / "F6", tmp_path / "F6")

    def test_too_few_runs(self, tmp_path):
        for side in ("a", "b"):
            run_batch(ExperimentConfig("F6", budget=300, population=10, runs=5,
                                       output=str(tmp_path / side)))
        with pytest.raises(ConfigurationError):
            compare(tmp_path / "a", tmp_path / "b")

    def test_unknown_metric(self, thirty):
        with pytest.raises(UnsupportedMetricError):
            compare(thirty / "wsa", thirty / "wsa", metric="peak_ratio")

    def test_missing_bundle(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            compare(tmp_path, tmp_path)
