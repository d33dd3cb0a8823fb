import json

import numpy as np
import pytest

from fourierpos import cli
from fourierpos.cli import RunConfig, ValidationError, main


def read_lines(path):
    return path.read_text().splitlines()


def test_runconfig_coercion():
    cfg = RunConfig(command="analyze", coeffs=[1, 0, 2], b=["0.5", 2], orders=["3", 5])
    assert cfg.coeffs == (1.0, 0.0, 2.0)
    assert cfg.b == (0.5, 2.0)
    assert cfg.orders == (3, 5)
    assert isinstance(cfg.coeffs[0], float) and isinstance(cfg.orders[0], int)


@pytest.mark.parametrize(
    "kw",
    [
        {"command": "plot"},
        {"command": "analyze", "dim": 3, "coeffs": (1.0,)},
        {"command": "analyze", "coeffs": ()},
        {"command": "analyze", "coeffs": (1.0,) * 6},
        {"command": "analyze", "coeffs": (0.0, 0.0)},
        {"command": "analyze", "coeffs": (1.0,), "criteria": ("I0",)},
        {"command": "analyze", "coeffs": (1.0,), "b": ()},
        {"command": "analyze", "coeffs": (1.0,), "b": (-1.0,)},
        {"command": "analyze", "coeffs": (1.0,), "orders": (0,)},
        {"command": "analyze", "coeffs": (1.0,), "qmax": 5},
        {"command": "random1d", "n": -1},
        {"command": "random2d", "cmp_n": -2},
        {"command": "grid3", "n_alpha": 0},
        {"command": "analyze", "coeffs": (1.0,), "rmax": 0.0},
        {"command": "analyze", "coeffs": (1.0,), "rstep": 4.0},
        {"command": "analyze", "coeffs": (1.0,), "im_rstep": 0.0},
        {"command": "analyze", "coeffs": (1.0,), "w": 0.7, "wprime": 0.7},
    ],
)
def test_validation_rejects(kw):
    with pytest.raises(ValidationError):
        RunConfig(**kw).validate()


def test_validation_accepts_defaults():
    RunConfig(command="grid3").validate()
    RunConfig(command="fig1").validate()
    RunConfig(command="analyze", coeffs=(1.0, -0.5)).validate()


def test_fmt_cell():
    assert cli._fmt_cell(None) == ""
    assert cli._fmt_cell(True) == "1"
    assert cli._fmt_cell(False) == "0"
    assert cli._fmt_cell(np.bool_(True)) == "1"
    assert cli._fmt_cell(0.1) == repr(0.1)
    assert cli._fmt_cell(np.float64(0.1)) == repr(0.1)
    assert cli._fmt_cell(7) == "7"
    assert cli._fmt_cell("psi_b:cosh@r=1") == "psi_b:cosh@r=1"


def test_jsonable():
    out = cli._jsonable(
        {"a": (np.int64(1), np.float64(0.5)), "b": {"c": np.bool_(False)}}
    )
    assert out == {"a": [1, 0.5], "b": {"c": False}}
    assert isinstance(out["a"][0], int) and isinstance(out["a"][1], float)


def test_mc_weights():
    assert cli._mc_weights(RunConfig(command="analyze", b=(1.0,), w=0.3)) == (0.3,)
    assert cli._mc_weights(
        RunConfig(command="analyze", b=(1.0, 2.0), w=0.3, wprime=0.4)
    ) == (0.3, 0.4)
    w3 = cli._mc_weights(RunConfig(command="analyze", b=(1.0, 2.0, 3.0)))
    assert w3 == (0.25, 0.25, 0.25)


def test_census_csv_empty(tmp_path):
    cli._census_csv(tmp_path / "census.csv", [])
    assert read_lines(tmp_path / "census.csv") == ["index"]


def test_analyze_clean_function(tmp_path):
    out = tmp_path / "run"
    code = main(["analyze", "--coeffs", "1", "--out", str(out)])
    assert code == 0
    summary = json.loads((out / "summary.json").read_text())
    assert set(summary) == {"config", "stats", "per_criterion", "timings"}
    assert summary["stats"]["transform_nonnegative"] is True
    assert summary["stats"]["detected_any"] is False
    assert not any(v["detected"] for v in summary["per_criterion"].values())
    assert (out / "curves" / "toeplitz_n3.csv").exists()
    assert (out / "curves" / "toeplitz_n5.csv").exists()
    assert (out / "curves" / "cosh_margin.csv").exists()


def test_analyze_negative_function(tmp_path):
    out = tmp_path / "run"
    code = main(
        ["analyze", "--coeffs", "0.661713,-0.620937,-0.032473,0.270186,-0.320185",
         "--out", str(out)]
    )
    assert code == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["stats"]["transform_nonnegative"] is False
    assert summary["stats"]["transform_negativity_witness_r"] is not None
    assert summary["stats"]["detected_any"] is True
    hit = [k for k, v in summary["per_criterion"].items() if v["detected"]]
    assert hit
    w = summary["per_criterion"][hit[0]]["witness"]
    assert set(w) == {"tag", "r", "margin"}


def test_analyze_criteria_subset(tmp_path):
    out = tmp_path / "run"
    code = main(
        ["analyze", "--coeffs", "1,-0.2", "--criteria", "maximality,cosh",
         "--orders", "4", "--out", str(out)]
    )
    assert code == 0
    summary = json.loads((out / "summary.json").read_text())
    assert set(summary["per_criterion"]) == {"maximality", "cosh"}


def test_analyze_curve_schema(tmp_path):
    out = tmp_path / "run"
    main(["analyze", "--coeffs", "1", "--rmax", "1.0", "--rstep", "0.1",
          "--im-rmax", "2.0", "--im-rstep", "0.5", "--out", str(out)])
    t3 = read_lines(out / "curves" / "toeplitz_n3.csv")
    assert t3[0] == "r,min_eig"
    assert len(t3) == 11  # header + 10 grid points
    cm = read_lines(out / "curves" / "cosh_margin.csv")
    assert cm[0] == "r,margin"
    assert len(cm) == 6  # header + r in {0, .5, 1, 1.5, 2}


def test_analyze_rejects_bad_input():
    assert main(["analyze", "--coeffs", "1,2,3,4,5,6"]) == 2
    assert main(["analyze", "--coeffs", "0,0"]) == 2
    assert main(["analyze", "--coeffs", "1", "--criteria", "I0"]) == 2


def test_exit_code_3_on_internal_failure(tmp_path, monkeypatch):
    def boom():
        raise RuntimeError("eigensolver went sideways")

    monkeypatch.setattr(cli, "figure1_case", boom)
    assert main(["fig1", "--out", str(tmp_path / "f")]) == 3


def test_fig1_outputs(tmp_path):
    out = tmp_path / "fig1"
    assert main(["fig1", "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["stats"]["phi0"] == pytest.approx(0.97805, abs=1e-5)
    assert summary["stats"]["mean_s"] == pytest.approx(0.836263, abs=1e-4)
    assert summary["per_criterion"]["cosh"]["detected"] is True
    assert summary["per_criterion"]["toeplitz3"]["detected"] is False
    assert summary["per_criterion"]["toeplitz4"]["detected"] is True
    for name in ("cosh_margin.csv", "toeplitz_n3.csv", "toeplitz_n4.csv"):
        assert (out / "curves" / name).exists()


def test_grid3_campaign(tmp_path):
    out = tmp_path / "g"
    assert main(["grid3", "--n-alpha", "6", "--n-beta", "8", "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    stats = summary["stats"]
    assert stats["population"] <= 48
    assert stats["phi_negative"] == stats["population"] - stats["both_positive"]
    assert summary["per_criterion"]["positives_detected"] == 0
    census = read_lines(out / "census.csv")
    assert len(census) == stats["population"] + 1
    assert census[0].startswith("index,alpha,beta,c0,c2,c4,ground_truth_positive")


def test_random1d_campaign_deterministic_csv(tmp_path):
    args = ["random1d", "--n", "1500", "--seed", "11"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    a = (tmp_path / "a" / "census.csv").read_bytes()
    b = (tmp_path / "b" / "census.csv").read_bytes()
    assert a == b
    sa = json.loads((tmp_path / "a" / "summary.json").read_text())
    sb = json.loads((tmp_path / "b" / "summary.json").read_text())
    assert sa["stats"] == sb["stats"]
    assert sa["per_criterion"] == sb["per_criterion"]


def test_random1d_replay_from_summary(tmp_path):
    assert main(["random1d", "--n", "1200", "--seed", "4", "--out", str(tmp_path / "x")]) == 0
    summary = json.loads((tmp_path / "x" / "summary.json").read_text())
    cfg = dict(summary["config"])
    cfg["out"] = str(tmp_path / "y")
    assert cli.run(RunConfig(**cfg)) == 0
    replay = json.loads((tmp_path / "y" / "summary.json").read_text())
    assert replay["stats"] == summary["stats"]
    assert replay["per_criterion"] == summary["per_criterion"]
    assert (tmp_path / "x" / "census.csv").read_bytes() == (
        tmp_path / "y" / "census.csv"
    ).read_bytes()


def test_random2d_campaign(tmp_path):
    out = tmp_path / "r2"
    code = main(
        ["random2d", "--n", "4000", "--cmp-n", "2000", "--seed", "5",
         "--orders", "5,8", "--out", str(out)]
    )
    assert code == 0
    summary = json.loads((out / "summary.json").read_text())
    det = summary["per_criterion"]
    assert det["positives_detected"] == 0
    assert det["cmp1d_positives_detected"] == 0
    assert "t8_or_i0" in det and "cmp1d_t8_or_cosh" in det
    assert summary["stats"]["meta"]["orders"] == [5, 8]
    assert summary["stats"]["meta"]["cmp_samples"] == 2000


def test_random2d_cmp_scales_with_n(tmp_path):
    out = tmp_path / "r2b"
    assert main(["random2d", "--n", "3000", "--seed", "5", "--orders", "5",
                 "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["stats"]["meta"]["cmp_samples"] == 1500


def test_parser_roundtrip():
    args = cli.build_parser().parse_args(
        ["analyze", "--coeffs", "1,0,-0.5", "--b", "0.5,2", "--qmax", "2"]
    )
    cfg = cli.config_from_args(args)
    assert cfg.command == "analyze"
    assert cfg.coeffs == (1.0, 0.0, -0.5)
    assert cfg.b == (0.5, 2.0)
    assert cfg.qmax == 2
    cfg.validate()


def test_parser_bad_list_is_error(capsys):
    with pytest.raises(SystemExit):
        cli.build_parser().parse_args(["analyze", "--coeffs", "1,zap"])
    assert "bad list" in capsys.readouterr().err
