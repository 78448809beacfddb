import json
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest

from parallelo import cli
from parallelo.experiments import ProfileRecord, ScanReport


def run_cli(capsys, argv):
    rc = cli.main(argv)
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


@pytest.fixture(scope="module")
def envelope_schema():
    text = (resources.files("parallelo") / "schemas" / "envelope.json").read_text()
    return json.loads(text)


def validate_envelope(out, schema):
    env = json.loads(out)
    jsonschema.validate(env, schema)
    return env


# --- count ---

def test_count_csv_exact_bytes(capsys):
    rc, out, err = run_cli(capsys, ["count", "--a", "3", "--n", "7"])
    assert rc == 0
    assert out == (
        "a,n,V,ratio_num,ratio_den,ratio_float,method\n"
        "3,7,4,4,7,0.571428571429,closed_form\n"
    )


def test_count_forced_method(capsys):
    rc, out, _ = run_cli(capsys, ["count", "--a", "3", "--n", "7",
                                  "--method", "direct"])
    assert rc == 0
    assert ",direct\n" in out


def test_count_invalid_pair_exits_2(capsys):
    rc, out, err = run_cli(capsys, ["count", "--a", "4", "--n", "8"])
    assert rc == 2
    assert out == ""
    assert "gcd" in err


def test_count_json_envelope(capsys, envelope_schema):
    rc, out, _ = run_cli(capsys, ["count", "--a", "3", "--n", "7",
                                  "--format", "json", "--verify"])
    assert rc == 0
    env = validate_envelope(out, envelope_schema)
    assert env["schema_version"] == "1"
    assert env["command"] == "count"
    rec = env["records"][0]
    assert rec["V"] == 4
    assert rec["ratio"] == {"num": 4, "den": 7, "decimal": 4 / 7}
    names = {c["name"] for c in env["checks"]}
    assert {"routes_agree", "ratio_identity"} <= names
    assert all(c["passed"] for c in env["checks"])


# --- profile ---

def test_profile_csv_exact_bytes(capsys):
    rc, out, _ = run_cli(capsys, ["profile", "--n", "5"])
    assert rc == 0
    assert out == (
        "n,a,V,ratio_num,ratio_den,ratio_float\n"
        "5,1,4,4,5,0.8\n"
        "5,2,3,3,5,0.6\n"
        "5,3,3,3,5,0.6\n"
        "5,4,1,1,5,0.2\n"
    )


def test_profile_rejects_n_below_2(capsys):
    rc, _, err = run_cli(capsys, ["profile", "--n", "1"])
    assert rc == 2
    assert "error:" in err


def test_profile_json_envelope(capsys, envelope_schema):
    rc, out, _ = run_cli(capsys, ["profile", "--n", "12", "--format", "json"])
    assert rc == 0
    env = validate_envelope(out, envelope_schema)
    assert env["command"] == "profile"
    assert [r["a"] for r in env["records"]] == [1, 5, 7, 11]
    assert any(c["name"] == "extreme_slopes" and c["passed"]
               for c in env["checks"])


def test_profile_threads_do_not_change_bytes(capsys):
    rc1, out1, _ = run_cli(capsys, ["profile", "--n", "101", "--threads", "1"])
    rc2, out2, _ = run_cli(capsys, ["profile", "--n", "101", "--threads", "2"])
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_profile_threads_env_fallback(capsys, monkeypatch):
    rc1, out1, _ = run_cli(capsys, ["profile", "--n", "61"])
    monkeypatch.setenv("PARALLELO_THREADS", "2")
    rc2, out2, _ = run_cli(capsys, ["profile", "--n", "61"])
    assert rc1 == rc2 == 0
    assert out1 == out2
    monkeypatch.setenv("PARALLELO_THREADS", "zebra")
    rc3, _, err = run_cli(capsys, ["profile", "--n", "61"])
    assert rc3 == 2
    assert "PARALLELO_THREADS" in err


# --- scan ---

def test_scan_summary_row(capsys):
    rc, out, err = run_cli(capsys, ["scan", "--n-min", "5", "--n-max", "12",
                                    "--quiet"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == ("n_min,n_max,pairs_checked,violations,"
                        "min_ratio_num,min_ratio_den,min_ratio_float,min_a,min_n,"
                        "max_ratio_num,max_ratio_den,max_ratio_float,max_a,max_n")
    assert lines[1] == ("5,12,24,0,6,11,0.545454545455,5,11,"
                        "2,3,0.666666666667,2,9")


def test_scan_empty_range_has_blank_extremes(capsys):
    rc, out, _ = run_cli(capsys, ["scan", "--n-min", "3", "--n-max", "4",
                                  "--quiet"])
    assert rc == 0
    assert out.splitlines()[1] == "3,4,0,0,,,,,,,,,,"


def test_scan_per_n_table(capsys):
    rc, out, _ = run_cli(capsys, ["scan", "--n-min", "5", "--n-max", "9",
                                  "--per-n", "--quiet"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == ("n,pairs,min_a,min_ratio_num,min_ratio_den,"
                        "min_ratio_float,max_a,max_ratio_num,max_ratio_den,"
                        "max_ratio_float")
    # n = 6 has no admissible slopes and therefore no row
    assert [int(l.split(",")[0]) for l in lines[1:]] == [5, 7, 8, 9]


def test_scan_progress_lines(capsys):
    rc, _, err = run_cli(capsys, ["scan", "--n-min", "5", "--n-max", "60"])
    assert rc == 0
    assert "scan: n =" in err


def test_scan_resume_from_matches_full_tail(capsys):
    rc1, out1, _ = run_cli(capsys, ["scan", "--n-min", "40", "--n-max", "60",
                                    "--quiet"])
    rc2, out2, _ = run_cli(capsys, ["scan", "--n-min", "5", "--n-max", "60",
                                    "--resume-from", "40", "--quiet"])
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_scan_resume_past_end_exits_2(capsys):
    rc, _, err = run_cli(capsys, ["scan", "--n-min", "5", "--n-max", "10",
                                  "--resume-from", "11", "--quiet"])
    assert rc == 2
    assert "resume" in err


def test_scan_json_envelope(capsys, envelope_schema):
    rc, out, _ = run_cli(capsys, ["scan", "--n-min", "5", "--n-max", "30",
                                  "--per-n", "--quiet", "--format", "json"])
    assert rc == 0
    env = validate_envelope(out, envelope_schema)
    kinds = {r["kind"] for r in env["records"]}
    assert kinds == {"summary", "per_n"}
    assert any(c["name"] == "conjecture_bounds_hold" and c["passed"]
               for c in env["checks"])


def test_scan_violation_exits_1(capsys, monkeypatch):
    bad = ProfileRecord(n=11, a=4, v=2, ratio=Fraction(2, 11))

    def fake_scan(n_min, n_max, workers=1, method="auto", keep_per_n=False,
                  progress=None):
        return ScanReport(
            n_min=n_min, n_max=n_max,
            excluded="a in {1, n-1} and gcd(a, n) > 1",
            pairs_checked=1, min_ratio=bad.ratio, min_witness=(4, 11),
            max_ratio=bad.ratio, max_witness=(4, 11),
            violations=[bad], per_n=None)

    monkeypatch.setattr(cli, "conjecture_scan", fake_scan)
    rc, out, err = run_cli(capsys, ["scan", "--n-min", "5", "--n-max", "12",
                                    "--quiet"])
    assert rc == 1
    assert "violation: n=11 a=4" in err
    assert out.splitlines()[1].split(",")[3] == "1"  # violations column


def test_scan_violation_json_records(capsys, monkeypatch, envelope_schema):
    bad = ProfileRecord(n=11, a=4, v=2, ratio=Fraction(2, 11))

    def fake_scan(n_min, n_max, workers=1, method="auto", keep_per_n=False,
                  progress=None):
        return ScanReport(
            n_min=n_min, n_max=n_max, excluded="",
            pairs_checked=1, min_ratio=bad.ratio, min_witness=(4, 11),
            max_ratio=bad.ratio, max_witness=(4, 11),
            violations=[bad], per_n=None)

    monkeypatch.setattr(cli, "conjecture_scan", fake_scan)
    rc, out, _ = run_cli(capsys, ["scan", "--n-min", "5", "--n-max", "12",
                                  "--quiet", "--format", "json"])
    assert rc == 1
    env = validate_envelope(out, envelope_schema)
    assert any(r["kind"] == "violation" and r["n"] == 11 and r["a"] == 4
               for r in env["records"])
    assert any(c["name"] == "conjecture_bounds_hold" and not c["passed"]
               for c in env["checks"])


# --- reduce ---

def test_reduce_csv(capsys):
    rc, out, _ = run_cli(capsys, ["reduce", "--u", "1,2", "--v", "3,1"])
    assert rc == 0
    assert out == (
        "ux,uy,vx,vy,a,n,m11,m12,m21,m22,swapped,V\n"
        "1,2,3,1,2,5,0,1,-1,3,true,3\n"
    )


def test_reduce_identity_case(capsys):
    rc, out, _ = run_cli(capsys, ["reduce", "--u", "1,0", "--v", "7,10"])
    assert rc == 0
    row = out.splitlines()[1].split(",")
    assert row[4:6] == ["7", "10"]
    assert row[10] == "false"


def test_reduce_json_envelope(capsys, envelope_schema):
    rc, out, _ = run_cli(capsys, ["reduce", "--u", "1,2", "--v", "3,1",
                                  "--format", "json"])
    assert rc == 0
    env = validate_envelope(out, envelope_schema)
    assert any(c["name"] == "map_sends_basis_to_canonical" and c["passed"]
               for c in env["checks"])


def test_reduce_error_cases(capsys):
    rc, _, err = run_cli(capsys, ["reduce", "--u", "2,4", "--v", "1,1"])
    assert rc == 2
    assert "primitive" in err
    rc, _, err = run_cli(capsys, ["reduce", "--u", "1,0", "--v", "2,1"])
    assert rc == 2
    rc, _, err = run_cli(capsys, ["reduce", "--u", "1;0", "--v", "2,1"])
    assert rc == 2


# --- rho ---

def test_rho_golden_table(capsys):
    rc, out, err = run_cli(capsys, ["rho", "--name", "golden",
                                    "--n-min", "10", "--n-max", "13"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == ("n,a,skipped,reason,V,ratio_num,ratio_den,"
                        "ratio_float,deviation")
    assert lines[1].startswith("10,7,false,")
    assert lines[3] == '12,8,true,"gcd(8, 12) = 4",,,,,'
    assert "median" in err


def test_rho_nearest_policy(capsys):
    rc, out, _ = run_cli(capsys, ["rho", "--name", "golden",
                                  "--n-min", "12", "--n-max", "12",
                                  "--policy", "nearest"])
    assert rc == 0
    row = out.splitlines()[1]
    assert row.split(",")[0:3] == ["12", "7", "false"]
    assert "adjusted" in row


def test_rho_rational_proxy_warning(capsys):
    rc, out, err = run_cli(capsys, ["rho", "--value", "1/2",
                                    "--n-min", "5", "--n-max", "9"])
    assert rc == 0
    assert "proxy" in err
    assert out.splitlines()[1].startswith("5,3,")


def test_rho_primes_only(capsys):
    rc, out, _ = run_cli(capsys, ["rho", "--name", "golden",
                                  "--n-min", "5", "--n-max", "30", "--primes"])
    assert rc == 0
    ns = [int(line.split(",")[0]) for line in out.splitlines()[1:]]
    assert ns == [5, 7, 11, 13, 17, 19, 23, 29]


def test_rho_invalid_value_exits_2(capsys):
    rc, _, err = run_cli(capsys, ["rho", "--value", "1.5", "--n-max", "10"])
    assert rc == 2
    assert "rho" in err


def test_rho_step(capsys):
    rc, out, _ = run_cli(capsys, ["rho", "--name", "golden", "--n-min", "10",
                                  "--n-max", "30", "--step", "10"])
    assert rc == 0
    ns = [int(line.split(",")[0]) for line in out.splitlines()[1:]]
    assert ns == [10, 20, 30]


def test_rho_json_envelope(capsys, envelope_schema):
    rc, out, _ = run_cli(capsys, ["rho", "--name", "golden", "--n-min", "10",
                                  "--n-max", "20", "--format", "json"])
    assert rc == 0
    env = validate_envelope(out, envelope_schema)
    assert env["command"] == "rho"
    skipped = [r for r in env["records"] if r["skipped"]]
    assert all("reason" in r for r in skipped)


# --- phimean / density / discrepancy ---

def test_phimean_row(capsys):
    rc, out, _ = run_cli(capsys, ["phimean", "--a", "3"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "a,mean_num,mean_den,mean_float,deviation"
    assert lines[1].startswith("3,13,18,")


def test_density_row(capsys):
    rc, out, _ = run_cli(capsys, ["density", "--r", "2"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "r,visible,total,ratio,deviation"
    assert lines[1].startswith("2,16,25,0.64,")


def test_discrepancy_row(capsys):
    rc, out, _ = run_cli(capsys, ["discrepancy", "--a", "5", "--n", "7"])
    assert rc == 0
    assert out == "a,n,q,discrepancy\n5,7,5,0.2\n"
    rc, out, _ = run_cli(capsys, ["discrepancy", "--a", "5", "--n", "7",
                                  "--q", "1"])
    assert rc == 0
    assert out.splitlines()[1] == "5,7,1,0.6"
    rc, _, err = run_cli(capsys, ["discrepancy", "--a", "5", "--n", "7",
                                  "--q", "9"])
    assert rc == 2


# --- output / plotting / config ---

def test_out_writes_file(capsys, tmp_path):
    dest = tmp_path / "rows.csv"
    rc, out, err = run_cli(capsys, ["profile", "--n", "5", "--out", str(dest)])
    assert rc == 0
    assert out == ""
    assert f"wrote {dest}" in err
    text = dest.read_text()
    assert text.startswith("n,a,V,")
    assert text.count("\n") == 5


def test_plot_files_created(capsys, tmp_path):
    jobs = [
        (["profile", "--n", "40"], "profile.png"),
        (["scan", "--n-min", "5", "--n-max", "40", "--quiet"], "scan.png"),
        (["rho", "--name", "golden", "--n-min", "5", "--n-max", "40"], "rho.png"),
    ]
    for argv, name in jobs:
        png = tmp_path / name
        rc, _, _ = run_cli(capsys, argv + ["--plot", str(png)])
        assert rc == 0
        assert png.stat().st_size > 0
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_config_file_precedence(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "parallelo.cfg"
    cfg.write_text("# settings\nthreads = 2\nmethod = direct\n")
    rc, out1, _ = run_cli(capsys, ["count", "--a", "3", "--n", "11",
                                   "--config", str(cfg)])
    assert rc == 0
    assert ",direct\n" in out1
    # flag beats config
    rc, out2, _ = run_cli(capsys, ["count", "--a", "3", "--n", "11",
                                   "--config", str(cfg), "--method", "formula"])
    assert rc == 0
    assert ",formula\n" in out2
    # env beats config for threads but output bytes stay identical anyway
    monkeypatch.setenv("PARALLELO_THREADS", "1")
    rc, out3, _ = run_cli(capsys, ["profile", "--n", "31", "--config", str(cfg)])
    rc2, out4, _ = run_cli(capsys, ["profile", "--n", "31"])
    assert rc == rc2 == 0
    assert out3 == out4


def test_config_unknown_key_exits_2(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("workers = 3\n")
    rc, _, err = run_cli(capsys, ["count", "--a", "1", "--n", "2",
                                  "--config", str(cfg)])
    assert rc == 2
    assert "unknown config key" in err


def test_config_missing_file_exits_2(capsys, tmp_path):
    rc, _, err = run_cli(capsys, ["count", "--a", "1", "--n", "2",
                                  "--config", str(tmp_path / "nope.cfg")])
    assert rc == 2
    assert "config" in err


# --- selftest / parser plumbing ---

def test_selftest_quick(capsys):
    rc, out, err = run_cli(capsys, ["selftest", "--quick"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "check,passed,detail"
    assert len(lines) > 20
    assert all(",true," in line or line.endswith(",true") or "true" in line
               for line in lines[1:])


def test_help_exits_0(capsys):
    rc, out, _ = run_cli(capsys, ["--help"])
    assert rc == 0
    assert "count" in out and "scan" in out


def test_unknown_subcommand_exits_2(capsys):
    rc, _, _ = run_cli(capsys, ["frobnicate"])
    assert rc == 2


def test_no_subcommand_exits_2(capsys):
    rc, _, _ = run_cli(capsys, [])
    assert rc == 2


def test_negative_threads_exit_2(capsys):
    rc, _, err = run_cli(capsys, ["profile", "--n", "5", "--threads", "-1"])
    assert rc == 2
    assert "threads" in err
