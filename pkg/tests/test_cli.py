import io
import sys

import pytest

from prodlabel.cli import main

K3 = "0 1\n0 2\n1 2\n"
K2 = "0 1\n"
P3 = "0 1\n1 2\n"
K3_DIMACS = "c triangle\np edge 3 3\ne 1 2\ne 1 3\ne 2 3\n"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write(tmp_path, name, content):
    path = tmp_path / name
    path.write_text(content)
    return str(path)


class TestLabelCommand:
    def test_k3(self, tmp_path, capsys):
        path = write(tmp_path, "k3.edges", K3)
        code, out, _ = run_cli(capsys, "label", path)
        assert code == 0
        labelling, products = out.split("\n\n")
        assert labelling.splitlines() == ["0 1 1", "0 2 3", "1 2 2"]
        assert products.splitlines() == ["0 0 1", "1 1 0", "2 1 1"]

    def test_not_nice_exit_2(self, tmp_path, capsys):
        path = write(tmp_path, "k2.edges", K2)
        code, _, err = run_cli(capsys, "label", path)
        assert code == 2
        assert "not nice" in err

    def test_missing_file_exit_1(self, capsys):
        code, _, err = run_cli(capsys, "label", "no_such_file.edges")
        assert code == 1

    def test_parse_error_exit_1(self, tmp_path, capsys):
        path = write(tmp_path, "bad.edges", "0 zero\n")
        code, _, err = run_cli(capsys, "label", path)
        assert code == 1
        assert "line 1" in err

    def test_dimacs_input(self, tmp_path, capsys):
        path = write(tmp_path, "k3.col", K3_DIMACS)
        code, out, _ = run_cli(capsys, "label", path)
        assert code == 0
        assert out.splitlines()[0] == "0 1 1"

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO(K3))
        code, out, _ = run_cli(capsys, "label", "-")
        assert code == 0 and out.startswith("0 1 1")

    def test_out_file(self, tmp_path, capsys):
        path = write(tmp_path, "k3.edges", K3)
        target = tmp_path / "out.txt"
        code, out, _ = run_cli(capsys, "label", path, "--out", str(target))
        assert code == 0 and out == ""
        assert target.read_text().startswith("0 1 1")

    def test_trace_goes_to_stderr(self, tmp_path, capsys):
        path = write(tmp_path, "k3.edges", K3)
        code, out, err = run_cli(capsys, "label", path, "--trace")
        assert code == 0
        assert "part=" in err and "part=" not in out

    def test_byte_identical_reruns(self, tmp_path, capsys):
        path = write(tmp_path, "k3.edges", K3)
        _, out1, _ = run_cli(capsys, "label", path)
        _, out2, _ = run_cli(capsys, "label", path)
        assert out1 == out2


class TestVerifyCommand:
    def test_good_labelling(self, tmp_path, capsys):
        g = write(tmp_path, "k3.edges", K3)
        l = write(tmp_path, "k3.labels", "0 1 1\n0 2 3\n1 2 2\n")
        code, out, _ = run_cli(capsys, "verify", g, l)
        assert code == 0 and out == "ok\n"

    def test_conflicts_exit_3(self, tmp_path, capsys):
        g = write(tmp_path, "p3.edges", P3)
        l = write(tmp_path, "p3.labels", "0 1 1\n1 2 1\n")
        code, out, _ = run_cli(capsys, "verify", g, l)
        assert code == 3
        assert out.count("conflict") == 2

    def test_missing_edge_exit_1(self, tmp_path, capsys):
        g = write(tmp_path, "p3.edges", P3)
        l = write(tmp_path, "p3.labels", "0 1 2\n")
        code, _, err = run_cli(capsys, "verify", g, l)
        assert code == 1
        assert "no label" in err

    def test_bad_label_exit_1(self, tmp_path, capsys):
        g = write(tmp_path, "p3.edges", P3)
        l = write(tmp_path, "p3.labels", "0 1 5\n1 2 1\n")
        code, _, err = run_cli(capsys, "verify", g, l)
        assert code == 1

    def test_label_output_verifies(self, tmp_path, capsys):
        g = write(tmp_path, "k3.edges", K3)
        out_file = str(tmp_path / "labels.txt")
        run_cli(capsys, "label", g, "--out", out_file)
        labels_only = "".join(
            line + "\n" for line in open(out_file).read().split("\n\n")[0].splitlines())
        l = write(tmp_path, "roundtrip.labels", labels_only)
        code, _, _ = run_cli(capsys, "verify", g, l)
        assert code == 0


class TestOracleCommand:
    def test_k3(self, tmp_path, capsys):
        path = write(tmp_path, "k3.edges", K3)
        code, out, _ = run_cli(capsys, "oracle", path)
        assert code == 0 and out == "chi_P = 3\n"

    def test_p3(self, tmp_path, capsys):
        path = write(tmp_path, "p3.edges", P3)
        code, out, _ = run_cli(capsys, "oracle", path)
        assert code == 0 and out == "chi_P = 2\n"

    def test_k2_exceeds_kmax(self, tmp_path, capsys):
        path = write(tmp_path, "k2.edges", K2)
        code, out, _ = run_cli(capsys, "oracle", path)
        assert code == 0 and out == "chi_P > 3\n"

    def test_bound_exit_1(self, tmp_path, capsys):
        edges = "".join(f"{i} {i + 1}\n" for i in range(17))
        path = write(tmp_path, "long.edges", edges)
        code, _, err = run_cli(capsys, "oracle", path)
        assert code == 1 and "bound" in err


class TestFuzzCommand:
    def test_small_run(self, capsys, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        code, out, _ = run_cli(capsys, "fuzz", "--trials", "25", "--n", "12",
                               "--p", "0.3", "--seed", "5")
        assert code == 0
        assert "25/25 ok" in out

    def test_single_vertex(self, capsys):
        code, out, _ = run_cli(capsys, "fuzz", "--trials", "1", "--n", "1")
        assert code == 0 and "1/1 ok" in out

    def test_deterministic_summary(self, capsys, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        args = ("fuzz", "--trials", "30", "--n", "14", "--p", "0.4", "--seed", "9")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_zero_trials_exit_1(self, capsys):
        code, _, err = run_cli(capsys, "fuzz", "--trials", "0")
        assert code == 1
