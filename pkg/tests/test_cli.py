"""CLI contract: exit codes, determinism, config handling, output formats."""

import io
import json

from greenwell import cli


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, stream=out)
    return code, out.getvalue()


# ----------------------------------------------------------------------
# levels
# ----------------------------------------------------------------------


def test_levels_ho_rows():
    code, out = run(["levels", "--family", "HO", "--window", "0:6"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "index,parity,eps,residual,bracket_lo,bracket_hi"
    eps = [float(l.split(",")[2]) for l in lines[1:]]
    assert eps == [0.5, 1.5, 2.5, 3.5, 4.5, 5.5]


def test_levels_parity_column():
    code, out = run(["levels", "--family", "LINEAR_ABS", "--window", "0:5"])
    assert code == 0
    parities = [l.split(",")[1] for l in out.strip().split("\n")[1:]]
    assert parities[:4] == ["even", "odd", "even", "odd"]


def test_levels_deterministic_bytes():
    args = ["levels", "--family", "HALF_HO_HALF_LINEAR", "--window", "0:5.5"]
    _, a = run(args)
    _, b = run(args)
    assert a == b


def test_invalid_family_exits_one_naming_field():
    code, out = run(["levels", "--family", "NOT_A_WELL"])
    assert code == 1


def test_family_json_inline():
    fam = {"tag": "HO", "scales": {"hbar": 1.0, "mass": 1.0, "omega1": 2.0}}
    code, out = run(["levels", "--family", json.dumps(fam), "--window", "0:3"])
    assert code == 0
    eps = [float(l.split(",")[2]) for l in out.strip().split("\n")[1:]]
    # dimensionless eps is still n + 1/2 regardless of omega
    assert eps == [0.5, 1.5, 2.5]


# ----------------------------------------------------------------------
# sweep
# ----------------------------------------------------------------------


def test_sweep_rows_and_ordering():
    code, out = run(["sweep", "--family", "HO_ASYM", "--param", "lam",
                     "--range", "0.8:1.2:0.2", "--window", "0:3", "--step", "0.01"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "param_value,root_index,eps"
    rows = [l.split(",") for l in lines[1:]]
    keys = [(float(r[0]), int(r[1])) for r in rows]
    assert keys == sorted(keys)


def test_sweep_break_exit_two_without_flag():
    args = ["sweep", "--family", "HO_ASYM", "--param", "lam",
            "--range", "0.4:0.8:0.2", "--window", "0:4", "--step", "0.01"]
    code, out = run(args)
    assert code == 2
    assert "break" in out
    code2, out2 = run(args + ["--allow-breaks"])
    assert code2 == 0


def test_sweep_requires_param():
    code, _ = run(["sweep", "--family", "HO_ASYM", "--range", "0.5:1:0.5"])
    assert code == 1


# ----------------------------------------------------------------------
# green-grid
# ----------------------------------------------------------------------


def test_green_grid_symmetric_output():
    code, out = run(["green-grid", "--family", "HO", "--energy", "2",
                     "--grid=-1:1:3"])
    assert code == 0
    vals = {}
    for line in out.strip().split("\n")[1:]:
        x, xp, v = line.split(",")
        vals[(x, xp)] = v
    assert vals[("-1", "0")] == vals[("0", "-1")]
    assert vals[("-1", "1")] == vals[("1", "-1")]


def test_green_grid_pole_exits_two():
    code, _ = run(["green-grid", "--family", "HO", "--energy", "2.5",
                   "--grid=-1:1:5"])
    assert code == 2


def test_green_grid_fixed_xp():
    code, out = run(["green-grid", "--family", "LINEAR_ABS", "--energy", "1.7",
                     "--grid=-2:2:5", "--xp", "0.3"])
    assert code == 0
    lines = out.strip().split("\n")[1:]
    assert len(lines) == 5
    assert all(l.split(",")[1] == "0.3" for l in lines)


# ----------------------------------------------------------------------
# table1 / verify
# ----------------------------------------------------------------------


def test_table1_passes():
    code, out = run(["table1"])
    assert code == 0
    assert "PASS" in out
    assert out.count("\n") == 12  # header + 10 rows + verdict


def test_verify_single_family_small_grid():
    code, out = run(["verify", "--family", "HO", "--n-oracle", "1000", "--k", "3"])
    assert code == 0
    assert "HO: max level error" in out and "ok" in out


def test_verify_delta_family_small_grid():
    code, out = run(["verify", "--family", "DELTA_DECORATED(HO)",
                     "--n-oracle", "2000", "--k", "3"])
    assert code == 0


# ----------------------------------------------------------------------
# config plumbing
# ----------------------------------------------------------------------


def test_dump_config_round_trip(tmp_path):
    args = ["levels", "--family", "LINEAR_ABS", "--window", "0:5",
            "--step", "0.01", "--format", "json", "--dump-config"]
    code, out = run(args)
    assert code == 0
    cfg = cli.RunConfig.from_dict(json.loads(out))
    assert cfg.command == "levels"
    assert cfg.window == (0.0, 5.0)
    assert cfg.step == 0.01
    assert cfg.format == "json"
    # the echoed config reproduces the same output when fed back
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(out)
    _, direct = run(args[:-1])
    _, via_config = run(["levels", "--config", str(cfg_path)])
    assert direct == via_config


def test_set_overrides():
    code, out = run(["levels", "--family", "HO", "--window", "0:2",
                     "--set", "family.scales.omega1=2.0", "--dump-config"])
    assert code == 0
    cfg = json.loads(out)
    assert cfg["family"]["scales"]["omega1"] == 2.0


def test_config_file_errors_exit_one(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _ = run(["levels", "--config", str(p)])
    assert code == 1
    code, _ = run(["levels", "--config", str(tmp_path / "absent.json")])
    assert code == 1


def test_out_file_written(tmp_path):
    path = tmp_path / "rows.csv"
    code, out = run(["levels", "--family", "HO", "--window", "0:2",
                     "--out", str(path)])
    assert code == 0
    assert out == ""
    text = path.read_text()
    assert text.startswith("index,parity,eps")
    assert text.endswith("\n")
    assert "\r" not in text


def test_json_format():
    code, out = run(["levels", "--family", "HO", "--window", "0:2",
                     "--format", "json"])
    assert code == 0
    rows = json.loads(out)
    assert [float(r["eps"]) for r in rows] == [0.5, 1.5]


def test_usage_error_paths():
    assert run(["levels", "--window", "5"])[0] == 1
    assert run(["levels", "--step", "-1"])[0] == 1
    assert run(["sweep", "--family", "HO_ASYM", "--param", "lam",
                "--range", "1:0.5:0.1"])[0] == 1
    assert run(["green-grid", "--grid", "0:1:1"])[0] == 1
