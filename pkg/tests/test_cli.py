import subprocess
import sys

from wsaic.cli import main


def test_list_functions(capsys):
    assert main(["list-functions"]) == 0
    out = capsys.readouterr().out
    assert "F6" in out and "F20" in out


def test_moments(capsys):
    assert main(["moments", "--samples", "100000"]) == 0
    assert "mean_ab" in capsys.readouterr().out


def test_moments_tolerance_exit_code(capsys):
    assert main(["moments", "--samples", "10", "--tolerance", "1e-9"]) == 1


def test_run_and_compare(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text('function = "F7"\nbudget = 400\npopulation = 10\nruns = 30\n'
                   'epsilon_f = 0.01\noutput = "ic"\n')
    assert main(["run", "--config", str(cfg), "--quiet"]) == 0
    assert main(["run", "--config", str(cfg), "--quiet", "--algorithm", "wsa",
                 "--out", str(tmp_path / "wsa")]) == 0
    assert (tmp_path / "ic" / "summary.csv").is_file()
    capsys.readouterr()
    assert main(["compare", str(tmp_path / "ic"), str(tmp_path / "wsa"),
                 "--metric", "best_fitness"]) == 0
    assert "+/=/-" in capsys.readouterr().out


def test_run_without_config_uses_function(tmp_path):
    assert main(["run", "--function", "F6", "--budget", "200", "--runs", "1", "--quiet",
                 "--out", str(tmp_path / "o")]) == 0


def test_errors_exit_2(tmp_path, capsys):
    assert main(["run", "--function", "F99", "--out", str(tmp_path)]) == 2
    assert main(["run", "--config", str(tmp_path / "missing.toml")]) == 2
    assert main(["compare", str(tmp_path), str(tmp_path)]) == 2
    assert "error:" in capsys.readouterr().err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "wsaic", "list-functions"],
                         capture_output=True, text=True, timeout=120)
    assert res.returncode == 0 and "F1" in res.stdout
