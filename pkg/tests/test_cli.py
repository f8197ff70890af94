import json

import pytest

from mintest.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestAnalyze:
    def test_fixture_text_output(self, capsys):
        code, out, _ = run(capsys, "analyze", "--input", "q25x10")
        assert code == 0
        assert "mandatory columns: 5 8 10" in out
        assert "candidate pairs (popcount diff 1): 94" in out
        assert "Q2 [001] rows: 2 7 19 20 21" in out
        assert "singletons dropped: 22" in out

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "analyze", "--input", "q25x10", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["mandatory"] == [5, 8, 10]
        assert doc["candidate_pairs"] == 94
        assert doc["undistinguished_pairs"] == [150, 164, 164, 146, 146, 156, 144, 150, 144, 150]
        assert doc["estimate"]["t0"] == 7

    def test_seeds_table(self, capsys):
        code, out, _ = run(capsys, "analyze", "--input", "q25x10", "--seeds")
        assert code == 0
        assert "(4,6) -> Q2: (7,19,20)" in out
        assert "(1,2) -> Q6: (10,14,25)" in out

    def test_class_set_input(self, capsys):
        code, out, _ = run(capsys, "analyze", "--input", "m8_local")
        assert code == 0
        assert "M1 [101101] rows: 33 55" in out
        assert "pairs left inside classes: 8" in out

    def test_missing_file_exit_1(self, capsys):
        code, _, err = run(capsys, "analyze", "--input", "/nope/missing.txt")
        assert code == 1
        assert "error:" in err


class TestEnumerate:
    def test_fixture(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--input", "q25x10")
        assert code == 0
        assert "minimal test length: 7" in out
        assert "minimal tests: 9" in out
        assert "1,2,4,5,6,8,10 (dead-end)" in out

    def test_report_csv(self, capsys, tmp_path):
        path = tmp_path / "tests.csv"
        code, _, _ = run(
            capsys, "enumerate", "--input", "q25x10", "--report", str(path)
        )
        assert code == 0
        lines = path.read_text().splitlines()
        assert len(lines) == 9
        assert lines[0] == "1,2,4,5,6,8,10"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--input", "q25x10", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["minimal_length"] == 7
        assert len(doc["minimal_tests"]) == 9

    def test_toggles(self, capsys):
        code, out, _ = run(
            capsys,
            "enumerate",
            "--input",
            "q25x10",
            "--no-heuristic",
            "--no-theorem2",
            "--no-bijective-prune",
        )
        assert code == 0
        assert "minimal tests: 9" in out

    def test_first_only(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--input", "q25x10", "--first")
        assert code == 0
        assert "minimal tests: 1" in out

    def test_class_set_input(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--input", "m8_local")
        assert code == 0
        assert "integral length: 6 + 2 = 8" in out
        assert "integral test: 1,2,3,4,5,6,7,10" in out


class TestVerify:
    def test_minimal(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--input", "q25x10", "--test", "1,2,4,5,6,8,10"
        )
        assert code == 0
        assert "test: yes" in out
        assert "dead-end: yes" in out
        assert "minimal: yes" in out

    def test_non_test(self, capsys):
        code, out, _ = run(capsys, "verify", "--input", "q25x10", "--test", "5,8,10")
        assert code == 0
        assert "test: no" in out

    def test_bad_columns_exit_1(self, capsys):
        code, _, err = run(capsys, "verify", "--input", "q25x10", "--test", "1,x")
        assert code == 1


class TestOracle:
    def test_fixture(self, capsys):
        code, out, _ = run(capsys, "oracle", "--input", "q25x10")
        assert code == 0
        assert "minimal test length: 7" in out
        assert "minimal tests: 9" in out

    def test_report_matches_enumerate(self, capsys, tmp_path):
        p1 = tmp_path / "a.csv"
        p2 = tmp_path / "b.csv"
        run(capsys, "enumerate", "--input", "q25x10", "--report", str(p1))
        run(capsys, "oracle", "--input", "q25x10", "--report", str(p2))
        assert p1.read_text() == p2.read_text()

    def test_ceiling_exit_3(self, capsys):
        code, _, err = run(
            capsys, "oracle", "--input", "q25x10", "--ceiling", "9"
        )
        assert code == 3

    def test_deadend_listing(self, capsys, tiny3x2_file):
        code, out, _ = run(capsys, "oracle", "--input", tiny3x2_file, "--deadend")
        assert code == 0
        assert "dead-end tests: 1" in out


class TestGenAndBench:
    def test_gen_roundtrip(self, capsys, tmp_path):
        path = tmp_path / "m.txt"
        code, _, _ = run(
            capsys,
            "gen",
            "--rows",
            "10",
            "--cols",
            "8",
            "--seed",
            "3",
            "--output",
            str(path),
        )
        assert code == 0
        code, out, _ = run(capsys, "analyze", "--input", str(path))
        assert code == 0
        assert "matrix: 10 rows x 8 columns" in out

    def test_gen_pigeonhole_exit_1(self, capsys):
        code, _, err = run(capsys, "gen", "--rows", "3", "--cols", "1")
        assert code == 1

    def test_bench_deterministic_identical(self, capsys, tmp_path):
        args = [
            "bench",
            "--count",
            "4",
            "--rows",
            "8",
            "--cols",
            "6",
            "--seed",
            "11",
            "--deterministic",
        ]
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--output", str(p1)]) == 0
        assert main(args + ["--output", str(p2)]) == 0
        assert p1.read_bytes() == p2.read_bytes()

    def test_bench_fixture_replay(self, capsys):
        code, out, _ = run(
            capsys, "bench", "--fixture", "q25x10", "--deterministic"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("seed,m,n,density")
        fields = lines[1].split(",")
        header = lines[0].split(",")
        row = dict(zip(header, fields))
        assert row["m"] == "25"
        assert row["heuristic_t0"] == "7"
        assert row["exact_t0"] == "7"
        assert row["n_minimal_tests"] == "9"

    def test_bench_json_summary(self, capsys):
        code, out, err = run(
            capsys,
            "bench",
            "--count",
            "3",
            "--rows",
            "7",
            "--cols",
            "5",
            "--seed",
            "2",
            "--deterministic",
            "--json",
        )
        assert code == 0
        summary = json.loads(err)
        assert summary["mismatches"] == 0


@pytest.fixture
def tiny3x2_file(tmp_path):
    path = tmp_path / "tiny.txt"
    path.write_text("00\n01\n10\n")
    return str(path)
