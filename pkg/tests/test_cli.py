import csv

import pytest

from dpcmaxima.cli import main
from dpcmaxima.core import PointSet
from dpcmaxima.fileio import (
    REPORT_COLUMNS,
    InstanceFormatError,
    format_instance,
    parse_instance,
)
from dpcmaxima.lab import gen_cascade


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_format_is_bit_exact():
    S = PointSet([(1, 0.1), (2.5, 1e-300)])
    assert format_instance(S) == "EMX1 2 2\n1.0 0.1\n2.5 1e-300\n"


def test_round_trip_preserves_coordinates():
    inst = gen_cascade(200, 14, 3, seed=11)
    back = parse_instance(format_instance(inst.points))
    assert back.coords.tobytes() == inst.points.coords.tobytes()


@pytest.mark.parametrize("text", [
    "",
    "EMX2 2 1\n1 2\n",
    "EMX1 2 2\n1 2\n",
    "EMX1 2 1\n1 2 3\n",
    "EMX1 2 1\n1 nan\n",
    "EMX1 2 1\n1 x\n",
    "EMX1 1 1\n1\n",
])
def test_malformed_instances(text):
    with pytest.raises(InstanceFormatError):
        parse_instance(text)


def test_gen_header_and_determinism(tmp_path):
    a, b = tmp_path / "a.emx", tmp_path / "b.emx"
    assert main(["gen", "--family", "cascade", "--n", "100", "--h", "10", "--d", "4",
                 "--seed", "7", "--out", str(a)]) == 0
    assert a.read_text().splitlines()[0] == "EMX1 4 100"
    for p in (a, b):
        assert main(["gen", "--family", "balanced", "--n", "8", "--h", "4", "--d", "2",
                     "--seed", "1", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.emx.json").read_bytes() == (tmp_path / "b.emx.json").read_bytes()


def test_gen_rejects_bad_parameters(tmp_path, capsys):
    assert main(["gen", "--family", "balanced", "--n", "10", "--h", "4", "--d", "2",
                 "--seed", "1", "--out", str(tmp_path / "x.emx")]) == 2
    assert "divide" in capsys.readouterr().err


def test_run_algorithms_agree(tmp_path):
    inst = tmp_path / "c.emx"
    report = tmp_path / "r.csv"
    main(["gen", "--family", "cascade", "--n", "300", "--h", "12", "--d", "3", "--seed", "2", "--out", str(inst)])
    assert main(["run", "--algo", "dpc", "--in", str(inst), "--report", str(report)]) == 0
    assert main(["run", "--algo", "naive", "--in", str(inst), "--report", str(report)]) == 0
    rows = read_csv(report)
    assert rows[0] == REPORT_COLUMNS
    assert len(rows) == 3
    h = REPORT_COLUMNS.index("h")
    assert rows[1][h] == rows[2][h] == "12"
    assert main(["run", "--algo", "sweep2d", "--in", str(inst), "--report", str(report)]) == 2


def test_run_singleton(tmp_path):
    inst = tmp_path / "one.emx"
    inst.write_text("EMX1 3 1\n1.0 2.0 3.0\n")
    report = tmp_path / "r.csv"
    assert main(["run", "--algo", "dpc", "--in", str(inst), "--report", str(report)]) == 0
    row = dict(zip(REPORT_COLUMNS, read_csv(report)[1]))
    assert row["h"] == "1" and int(row["iterations"]) <= 1
    assert row["family"] == "unknown" and row["entropy_known"] == ""


def test_verify_exit_codes(tmp_path, capsys):
    chain = tmp_path / "chain.emx"
    chain.write_text("EMX1 2 2\n1.0 1.0\n2.0 2.0\n")
    assert main(["verify", "--in", str(chain)]) == 0
    assert "h=1 match" in capsys.readouterr().out
    bad = tmp_path / "bad.emx"
    bad.write_text("EMX9 2 2\n1.0 1.0\n2.0 2.0\n")
    assert main(["verify", "--in", str(bad)]) == 2
    assert main(["verify", "--in", str(tmp_path / "missing.emx")]) == 2


def test_verify_reports_mismatch(tmp_path, monkeypatch, capsys):
    import dpcmaxima.cli as cli

    inst = tmp_path / "u.emx"
    main(["gen", "--family", "uniform", "--n", "50", "--d", "2", "--seed", "0", "--out", str(inst)])
    capsys.readouterr()
    real = cli.compute_maxima
    monkeypatch.setattr(cli, "compute_maxima", lambda S: (real(S)[0].take([0]), None))
    assert main(["verify", "--in", str(inst)]) == 1
    out = capsys.readouterr().out
    assert "mismatch" in out and "first differing point" in out


def test_bench_row_contract(tmp_path):
    report = tmp_path / "bench.csv"
    assert main(["bench", "--family", "cascade", "--d", "4", "--h-rule", "sqrt",
                 "--n-list", "256,512,1024", "--seeds", "3", "--report", str(report)]) == 0
    rows = [dict(zip(REPORT_COLUMNS, r)) for r in read_csv(report)[1:]]
    assert sum(r["algorithm"] == "dpc" for r in rows) == 9
    assert sum(r["algorithm"] == "naive" for r in rows) == 9
    keys = [(r["family"], int(r["n"]), int(r["seed"]), r["algorithm"]) for r in rows]
    assert keys == sorted(keys)
    by_instance = {}
    for r in rows:
        by_instance.setdefault(r["instance_id"], set()).add(r["h"])
    assert all(len(v) == 1 for v in by_instance.values())


def test_bench_counters_repeatable(tmp_path):
    cols = [REPORT_COLUMNS.index(c) for c in ("dominance_queries", "iterations", "points_pruned_total", "h")]
    out = []
    for name in ("a.csv", "b.csv"):
        report = tmp_path / name
        main(["bench", "--family", "balanced", "--d", "2", "--h-rule", "sqrt", "--n-list", "64,128",
              "--seeds", "2", "--report", str(report)])
        out.append([[r[c] for c in cols] for r in read_csv(report)[1:]])
    assert out[0] == out[1]
    assert len(out[0]) == 2 * 2 * 3  # dpc, naive, sweep2d


def test_bench_parallel_matches_serial(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["bench", "--family", "uniform", "--d", "3", "--n-list", "100,200", "--seeds", "2", "--algos", "dpc"]
    main(args + ["--report", str(a)])
    main(args + ["--jobs", "2", "--report", str(b)])
    q = REPORT_COLUMNS.index("dominance_queries")
    assert [r[q] for r in read_csv(a)] == [r[q] for r in read_csv(b)]


def test_report_summaries(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text(",".join(REPORT_COLUMNS) + "\n")
    assert main(["report", "--report", str(empty)]) == 0
    assert capsys.readouterr().out.strip() == "no rows"

    one = tmp_path / "one.csv"
    inst = tmp_path / "c.emx"
    main(["gen", "--family", "cascade", "--n", "64", "--h", "8", "--d", "3", "--seed", "1", "--out", str(inst)])
    main(["run", "--algo", "dpc", "--in", str(inst), "--report", str(one)])
    capsys.readouterr()
    assert main(["report", "--report", str(one)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert sum(line.strip().startswith("dpc") for line in lines) == 1

    mixed = tmp_path / "mixed.csv"
    for fam in ("cascade", "uniform"):
        main(["bench", "--family", fam, "--d", "2", "--n-list", "64", "--seeds", "1", "--report", str(mixed)])
    capsys.readouterr()
    assert main(["report", "--report", str(mixed)]) == 0
    out = capsys.readouterr().out
    assert out.count("family ") == 2


def test_report_errors(tmp_path):
    assert main(["report", "--report", str(tmp_path / "nope.csv")]) == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    assert main(["report", "--report", str(bad)]) == 2
