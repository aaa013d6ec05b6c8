"""Command-line scripts: figure regeneration and error handling."""

import shutil
import subprocess
import sys
from pathlib import Path

import pytest

pytest.importorskip("plotkit.scripts")

from plotkit import scripts

SAMPLES = Path(__file__).resolve().parents[1] / "samples"
PNG_MAGIC = b"\x89PNG\r\n\x1a\n"

# one regeneration command per script, all over committed sample tables
COMMANDS = {
    "heatmap": (scripts.main_heatmap,
                ["--in", str(SAMPLES / "swt_quench.csv"),
                 "--overlay-vmax", "0.659"]),
    "dispersion": (scripts.main_dispersion,
                   ["--in", str(SAMPLES / "dispersion_a3.csv"),
                    str(SAMPLES / "dispersion_a15.csv")]),
    "scaling": (scripts.main_scaling,
                ["--in", str(SAMPLES / "regimes.csv")]),
    "entropy-growth": (scripts.main_entropy_growth,
                       ["--in", str(SAMPLES / "ed_quench_entropy.csv")]),
    "spectrum": (scripts.main_spectrum,
                 ["--in", str(SAMPLES / "ed_quench_entropy.csv"),
                  "--cut", "4"]),
}


@pytest.mark.parametrize("kind", sorted(COMMANDS))
def test_each_script_regenerates_its_figure_byte_identically(kind,
                                                             tmp_path):
    main, flags = COMMANDS[kind]
    first = tmp_path / "first.png"
    second = tmp_path / "second.png"
    assert main(flags + ["--out", str(first)]) == 0
    assert main(flags + ["--out", str(second)]) == 0
    data = first.read_bytes()
    assert data.startswith(PNG_MAGIC)
    assert data == second.read_bytes()


def test_empty_table_fails_cleanly_without_output(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    out = tmp_path / "never.png"
    code = scripts.main_heatmap(["--in", str(empty), "--out", str(out)])
    assert code == 1
    assert "empty" in capsys.readouterr().err
    assert not out.exists()


def test_schema_mismatch_fails_cleanly_without_output(tmp_path, capsys):
    out = tmp_path / "never.png"
    code = scripts.main_scaling(["--in",
                                 str(SAMPLES / "ed_quench_entropy.csv"),
                                 "--out", str(out)])
    assert code == 1
    err = capsys.readouterr().err
    assert "missing required column" in err
    assert "v_max" in err
    assert not out.exists()


def test_multiple_tables_rejected_outside_dispersion(tmp_path, capsys):
    out = tmp_path / "never.png"
    code = scripts.main_heatmap(["--in", str(SAMPLES / "swt_quench.csv"),
                                 str(SAMPLES / "swt_quench.csv"),
                                 "--out", str(out)])
    assert code == 1
    assert "exactly one" in capsys.readouterr().err
    assert not out.exists()


def test_missing_output_flag_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        scripts.main_heatmap(["--in", str(SAMPLES / "swt_quench.csv")])
    assert info.value.code == 1


def test_bad_scale_choice_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        scripts.main_dispersion(["--in",
                                 str(SAMPLES / "dispersion_a3.csv"),
                                 "--out", "x.png", "--xscale", "cubic"])
    assert info.value.code == 1


def test_unreadable_input_reports_and_skips_output(tmp_path, capsys):
    out = tmp_path / "never.png"
    code = scripts.main_spectrum(["--in", str(tmp_path / "missing.csv"),
                                  "--out", str(out)])
    assert code == 1
    assert "cannot read" in capsys.readouterr().err
    assert not out.exists()


@pytest.mark.skipif(shutil.which("plot-heatmap") is None,
                    reason="console script not on PATH")
def test_installed_script_is_deterministic_across_processes(tmp_path):
    outs = [tmp_path / "a.png", tmp_path / "b.png"]
    for out in outs:
        proc = subprocess.run(
            ["plot-heatmap", "--in", str(SAMPLES / "swt_quench.csv"),
             "--out", str(out), "--overlay-vmax", "0.659"],
            capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
    assert outs[0].read_bytes() == outs[1].read_bytes()


def test_module_mains_match_console_entry_points():
    # pyproject wires one console script per kind to these callables
    mains = {"heatmap": scripts.main_heatmap,
             "dispersion": scripts.main_dispersion,
             "scaling": scripts.main_scaling,
             "entropy-growth": scripts.main_entropy_growth,
             "spectrum": scripts.main_spectrum}
    for kind, main in mains.items():
        parser = scripts.build_parser(kind)
        assert parser.prog == f"plot-{kind}"
        assert callable(main)
