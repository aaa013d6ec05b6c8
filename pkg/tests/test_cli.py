"""Command-line interface: outputs, conventions, exit codes."""

import json
import math

import pytest

from lrquench.cli import main


def read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def test_dispersion_writes_table_and_sidecar(tmp_path):
    out = tmp_path / "disp"
    code = main(["dispersion", "--length", "32", "--out", str(out)])
    assert code == 0
    header, rows = read_csv(tmp_path / "disp.csv")
    assert header == ["k", "gamma_tilde", "a_k", "b_k", "omega", "v_g"]
    assert len(rows) == 32
    assert float(rows[0][0]) == 0.0
    assert float(rows[1][0]) == pytest.approx(2 * math.pi / 32, abs=1e-12)
    meta = json.loads((tmp_path / "disp.meta.json").read_text())
    assert meta["config"]["command"] == "dispersion"
    assert meta["config"]["length"] == 32
    assert meta["regime"] == "short-range-like"
    assert meta["gamma"] == 0.0
    assert meta["v_max"] > 0
    assert meta["files"] == ["disp.csv"]


def test_dispersion_reruns_are_byte_identical(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    for out in (a, b):
        assert main(["dispersion", "--length", "24", "--alpha", "1.5",
                     "--out", str(out)]) == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    meta_a = json.loads((tmp_path / "a.meta.json").read_text())
    meta_b = json.loads((tmp_path / "b.meta.json").read_text())
    meta_a["files"] = meta_b["files"] = None
    assert meta_a == meta_b


def test_dispersion_json_format(tmp_path):
    out = tmp_path / "disp"
    assert main(["dispersion", "--length", "16", "--format", "json",
                 "--out", str(out)]) == 0
    records = json.loads((tmp_path / "disp.json").read_text())
    assert len(records) == 16
    assert set(records[0]) == {"k", "gamma_tilde", "a_k", "b_k", "omega",
                               "v_g"}


def test_quench_swt_sites_are_one_indexed(tmp_path):
    out = tmp_path / "swt"
    code = main(["quench-swt", "--length", "8", "--tmax", "0.3",
                 "--sample-dt", "0.1", "--out", str(out)])
    assert code == 0
    header, rows = read_csv(tmp_path / "swt.csv")
    assert header == ["t", "site", "delta_m", "s1_entropy"]
    sites = {int(r[1]) for r in rows}
    assert sites == set(range(1, 9))
    times = sorted({float(r[0]) for r in rows})
    assert times == pytest.approx([0.0, 0.1, 0.2, 0.3])
    meta = json.loads((tmp_path / "swt.meta.json").read_text())
    # default target is the left-of-center site, reported one-indexed
    assert meta["quench_site_used"] == 4
    assert meta["energy_drift"] < 1e-8
    assert meta["beyond_lswt"] is True
    assert meta["classical_angle"] == 0.0


def test_quench_swt_entropy_base_toggle(tmp_path):
    nats = tmp_path / "nats"
    bits = tmp_path / "bits"
    common = ["quench-swt", "--length", "6", "--tmax", "0.1",
              "--sample-dt", "0.1"]
    assert main(common + ["--out", str(nats)]) == 0
    assert main(common + ["--entropy-base", "bits", "--out", str(bits)]) == 0
    _, rows_n = read_csv(tmp_path / "nats.csv")
    _, rows_b = read_csv(tmp_path / "bits.csv")
    for rn, rb in zip(rows_n, rows_b):
        assert float(rb[3]) == pytest.approx(float(rn[3]) / math.log(2),
                                             abs=1e-12)


def test_quench_swt_explicit_site_is_one_indexed(tmp_path):
    out = tmp_path / "swt"
    assert main(["quench-swt", "--length", "8", "--tmax", "0.1",
                 "--quench-site", "2", "--out", str(out)]) == 0
    meta = json.loads((tmp_path / "swt.meta.json").read_text())
    assert meta["quench_site_used"] == 2
    header, rows = read_csv(tmp_path / "swt.csv")
    at_t0 = {int(r[1]): float(r[2]) for r in rows if float(r[0]) == 0.0}
    peak = max(at_t0, key=at_t0.get)
    assert peak == 2


def test_quench_ed_outputs(tmp_path):
    out = tmp_path / "ed"
    code = main(["quench-ed", "--length", "4", "--tmax", "0.4",
                 "--sample-dt", "0.2", "--out", str(out)])
    assert code == 0
    header_e, rows_e = read_csv(tmp_path / "ed_entropy.csv")
    assert header_e == ["t", "cut", "entropy", "delta_entropy", "lambda1",
                        "lambda2", "lambda_rest_sum"]
    cuts = {int(r[1]) for r in rows_e}
    assert cuts == {1, 2, 3}
    for r in rows_e:
        lam_total = float(r[4]) + float(r[5]) + float(r[6])
        assert lam_total == pytest.approx(1.0, abs=1e-9)
    header_s, rows_s = read_csv(tmp_path / "ed_sites.csv")
    assert header_s == ["t", "site", "delta_m"]
    assert {int(r[1]) for r in rows_s} == {1, 2, 3, 4}
    meta = json.loads((tmp_path / "ed.meta.json").read_text())
    assert meta["norm_drift"] < 1e-10
    assert meta["energy_drift"] < 1e-8
    assert meta["plateau_window"] == [0.2, 0.4]
    assert "plateau_delta_entropy_half_cut" in meta
    assert set(meta["files"]) == {"ed_entropy.csv", "ed_sites.csv"}


def test_regimes_table(tmp_path):
    out = tmp_path / "reg"
    code = main(["regimes", "--alpha", "0.5", "3.0",
                 "--length", "16", "32", "64", "128",
                 "--out", str(out)])
    assert code == 0
    header, rows = read_csv(tmp_path / "reg.csv")
    assert header == ["alpha", "length", "v_max", "t_b", "fast_mode_count"]
    assert len(rows) == 8
    meta = json.loads((tmp_path / "reg.meta.json").read_text())
    assert meta["alphas"]["0.5"]["regime"] == "non-local"
    assert meta["alphas"]["3"]["regime"] == "short-range-like"
    # boundary time moves in opposite directions in the two regimes
    tb = {(r[0], int(r[1])): float(r[3]) for r in rows}
    assert tb[("0.5", 128)] < tb[("0.5", 16)]
    assert tb[("3", 128)] > tb[("3", 16)]


def test_reproducing_table(tmp_path):
    out = tmp_path / "rep"
    code = main(["reproducing", "--alpha", "0.5", "1.5",
                 "--length", "100", "200", "400", "--out", str(out)])
    assert code == 0
    header, rows = read_csv(tmp_path / "rep.csv")
    assert header == ["alpha", "length", "pair_kind", "p_value",
                      "lower_bound"]
    kinds = {r[2] for r in rows}
    assert "endpoint" in kinds and "adjacent-center" in kinds
    meta = json.loads((tmp_path / "rep.meta.json").read_text())
    assert meta["alphas"]["0.5"]["verdict"] == "non-reproducing"
    assert meta["alphas"]["1.5"]["verdict"] == "reproducing-consistent"


def test_missing_subcommand_fails(capsys):
    assert main([]) == 1
    assert "subcommand" in capsys.readouterr().err


def test_invalid_parameters_exit_one(tmp_path):
    out = tmp_path / "x"
    code = main(["quench-swt", "--theta-pi", "0.9", "--length", "8",
                 "--tmax", "0.1", "--out", str(out)])
    assert code == 1


def test_engine_errors_exit_two(tmp_path):
    out = tmp_path / "x"
    code = main(["quench-ed", "--length", "16", "--tmax", "0.1",
                 "--out", str(out)])
    assert code == 2


def test_unknown_option_raises_usage_exit(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["dispersion", "--out", str(tmp_path / "d"), "--frobnicate"])
    assert info.value.code == 1


def test_missing_required_output_raises_usage_exit():
    with pytest.raises(SystemExit) as info:
        main(["dispersion"])
    assert info.value.code == 1
