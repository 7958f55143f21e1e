"""
Tests for the lattice-povm command line
"""
import pytest

from lattice_povm import __version__, cli
from lattice_povm.experiments import CheckResult, VerificationLevel, VerificationReport
from lattice_povm.utils import read_table_csv

SMALL = "M = 4\nN = 6\nV2 = 3.5\nU = 1\nv2_list = 0, 1, 2\nmethod = insertion\ngrid_points = 256\n"


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "small.cfg"
    path.write_text(SMALL)
    return path


def test_version(capsys):
    with pytest.raises(SystemExit) as exc_info:
        cli.main(["--version"])
    assert exc_info.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_command_required():
    with pytest.raises(SystemExit) as exc_info:
        cli.main([])
    assert exc_info.value.code == 2


def test_ground_state(small_config, tmp_path, capsys):
    out = tmp_path / "gs"
    assert cli.main(["ground-state", "--config", str(small_config), "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "occupations = " in stdout
    assert "method = insertion" in stdout
    assert {p.name for p in out.iterdir()} == {"ground_state.txt", "manifest.txt", "metrics.prom"}
    manifest = (out / "manifest.txt").read_text()
    assert "command = ground-state" in manifest
    assert "param.M = 4" in manifest
    assert "artifact.ground_state = ground_state.txt" in manifest


def test_correlate_given_occupations(small_config, tmp_path, capsys):
    out = tmp_path / "corr"
    code = cli.main(["correlate", "--config", str(small_config), "--occupations", "2,1,0,3", "--out", str(out)])
    assert code == 0
    assert "trace.main_peaks = " in capsys.readouterr().out
    meta, columns = read_table_csv(out / "correlate_povm.csv")
    assert meta["normalization"] == "measure"
    assert columns["u"].size == 256
    assert (out / "correlate_peaks.txt").exists()


@pytest.mark.parametrize("occupations", ["2,x,0,3", "1,1,1"])
def test_correlate_bad_occupations(small_config, occupations, capsys):
    code = cli.main(["correlate", "--config", str(small_config), "--occupations", occupations])
    assert code == 2
    assert capsys.readouterr().err.strip().splitlines()[-1].startswith("error:")


def test_unknown_config_key(tmp_path, capsys):
    path = tmp_path / "bad.cfg"
    path.write_text("colour = blue\n")
    assert cli.main(["ground-state", "--config", str(path)]) == 2
    assert "unknown configuration key" in capsys.readouterr().err


def test_sweep(small_config, tmp_path, capsys):
    out = tmp_path / "sweep"
    assert cli.main(["sweep", "--config", str(small_config), "--seed", "4", "--out", str(out)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "V2,secondary_trace,secondary_povm,energy,seed,status"
    assert len(lines) == 4
    assert all(line.endswith(",ok") for line in lines[1:])
    meta, columns = read_table_csv(out / "sweep.csv")
    assert meta["base_seed"] == "4"
    assert list(columns["V2"]) == [0.0, 1.0, 2.0]


def test_verify_failure_exit_code(small_config, tmp_path, monkeypatch, capsys):
    report = VerificationReport(
        level=VerificationLevel.FAST,
        checks=[CheckResult(name="completeness", passed=False, deviation=1.0, tolerance=1e-12)],
    )
    monkeypatch.setattr(cli, "verify", lambda level, seed=0, **kwargs: report)
    out = tmp_path / "verify"
    assert cli.main(["verify", "--config", str(small_config), "--out", str(out)]) == 1
    assert "FAIL completeness" in capsys.readouterr().out
    assert (out / "manifest.txt").exists()


def test_verify_passes_expansion_settings(tmp_path, monkeypatch):
    config = tmp_path / "verify.cfg"
    config.write_text("mc_samples = 20000\nmass = 2.5\nt = 3\nsigma_factor = 10\nenvelope = site_centered\n")
    seen = {}

    def fake_verify(level, seed=0, **kwargs):
        seen.update(kwargs)
        return VerificationReport(level=VerificationLevel(level))

    monkeypatch.setattr(cli, "verify", fake_verify)
    assert cli.main(["verify", "--config", str(config)]) == 0
    assert seen["samples"] == 20_000
    assert seen["sigma_factor"] == 10.0
    template = seen["template"]
    assert (template.mass, template.t, template.envelope) == (2.5, 3.0, "site_centered")


def test_parse_occupations():
    assert cli.parse_occupations("2, 1,0") == [2, 1, 0]
