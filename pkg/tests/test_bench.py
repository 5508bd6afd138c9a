import csv
import io
from fractions import Fraction

import pytest

from gspkit.cli.bench import COLUMNS, bench_instance, run_bench, summarize, to_csv
from gspkit.core.errors import ParameterError
from gspkit.core.generators import random_partition
from gspkit.main import main
from gspkit.storage.formats import save_instance

EPS = Fraction(1, 4)


@pytest.fixture
def partition_corpus(tmp_path):
    for seed in range(4):
        instance, _ = random_partition(5, 6, seed)
        save_instance(tmp_path / f"part{seed}.inst", instance)
    return tmp_path


def test_empty_corpus_gives_a_header_only(tmp_path):
    rows = run_bench(str(tmp_path), ["nfdh"], EPS)
    assert rows == []
    assert to_csv(rows) == ",".join(COLUMNS) + "\n"


def test_partition_corpus_with_oracle(partition_corpus):
    rows = run_bench(str(partition_corpus), ["nfdh"], EPS, with_oracle=True)
    assert [row["instance"] for row in rows] == [f"part{seed}.inst" for seed in range(4)]
    for row in rows:
        assert row["status"] == "ok"
        optimum = int(row["oracle"])
        assert optimum == 2 or optimum >= 3
        assert float(row["ratio_lb"]) <= 3
        assert float(row["ratio_oracle"]) >= 1


def test_rows_keep_algorithm_order(partition_corpus):
    rows = run_bench(str(partition_corpus), ["oracle", "nfdh"], EPS)
    assert [row["algorithm"] for row in rows[:2]] == ["oracle", "nfdh"]
    assert rows[0]["oracle"] == ""
    assert summarize(rows)[0].startswith("oracle: 4 solved")


def test_unknown_algorithm(tmp_path):
    with pytest.raises(ParameterError, match="unknown algorithms: greedy"):
        run_bench(str(tmp_path), ["nfdh", "greedy"], EPS)


def test_unreadable_instance_becomes_an_error_row(tmp_path):
    bad = tmp_path / "bad.inst"
    bad.write_text("strip x\n")
    (row,) = bench_instance(str(bad), ["nfdh"], EPS, False)
    assert row["instance"] == "bad.inst"
    assert row["status"].startswith("error:")


def test_bench_command_writes_csv(partition_corpus, tmp_path, capsys):
    report = tmp_path / "report.csv"
    assert main(["bench", str(partition_corpus), "--alg", "nfdh,oracle", "-o", str(report)]) == 0
    rows = list(csv.DictReader(io.StringIO(report.read_text())))
    assert len(rows) == 8
    assert {row["algorithm"] for row in rows} == {"nfdh", "oracle"}


def test_bench_command_prints_to_stdout(partition_corpus, capsys):
    assert main(["bench", str(partition_corpus), "--alg", "nfdh"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == ",".join(COLUMNS)
    assert len(out.splitlines()) == 5
