import json
import subprocess
import sys

import pytest

from sandwich import cli, regular


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(text):
    return dict(line.split("=", 1) for line in text.splitlines())


class TestAnalyze:
    def test_values(self, capsys):
        code, out, _ = run(capsys, "analyze", "--a", "[1,2,3,3]")
        assert code == 0
        rep = report(out)
        assert rep["reg_size"] == "100"
        assert rep["idempotents"] == "30"
        assert rep["rank_reg"] == "4"
        assert rep["rank_exa"] == "6"
        assert rep["min_idem_gensets"] == "384"
        assert rep["rank_variant"] == "24"
        assert rep["maximal_above_top"] == "12"
        assert rep["reg_size_enumerated"] == "100"

    def test_brackets_optional(self, capsys):
        _, a, _ = run(capsys, "analyze", "--a", "[1,2,3,3]")
        _, b, _ = run(capsys, "analyze", "--a", "1,2,3,3")
        assert a == b

    def test_json(self, capsys):
        code, out, _ = run(capsys, "analyze", "--a", "[1,1,1,4]", "--format", "json")
        d = json.loads(out)
        assert d["reg_size"] == 28 and d["min_idem_gensets"] == 108 and d["rank_reg"] == 5

    def test_normalizes(self, capsys):
        code, out, _ = run(capsys, "analyze", "--a", "[2,2,1]")
        rep = report(out)
        assert code == 0 and rep["a"] == "[1,1,3]" and rep["permutation"] == "[3,1,2]"

    def test_rank_one(self, capsys):
        code, out, _ = run(capsys, "analyze", "--a", "[1,1,1]")
        assert code == 0
        assert report(out)["reg_size"] == "3"

    def test_large_n_skips_enumeration(self, capsys):
        code, out, _ = run(capsys, "analyze", "--a", "[1,2,3,4,5,6,7,7]")
        rep = report(out)
        assert code == 0 and "census" not in rep and rep["rank_reg"] == str(7**1 + 1)


class TestExitCodes:
    def test_bad_literal(self, capsys):
        code, _, err = run(capsys, "analyze", "--a", "[1,2,")
        assert code == 2 and "error" in err

    def test_out_of_range_literal(self, capsys):
        code, _, _ = run(capsys, "analyze", "--a", "[1,5,3]")
        assert code == 2

    def test_argparse_usage(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["tournaments"])
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            cli.main(["nonsense"])
        assert exc.value.code == 2

    def test_size_guard(self, capsys):
        code, _, err = run(capsys, "verify", "--a", "[1,2,3,4,5,6,6]")
        assert code == 2 and "SANDWICH_MAX_N" in err or code == 2

    def test_verify_needs_target(self, capsys):
        assert run(capsys, "verify")[0] == 2
        assert run(capsys, "verify", "--all-sandwiches")[0] == 2

    def test_tournament_range(self, capsys):
        assert run(capsys, "tournaments", "--r", "1")[0] == 2

    def test_gensets_range(self, capsys):
        assert run(capsys, "gensets", "--a", "[1,1,1]")[0] == 2
        assert run(capsys, "gensets", "--a", "[1,2,3,3]", "--target", "reg", "--enumerate")[0] == 2

    def test_eggbox_usage(self, capsys):
        assert run(capsys, "eggbox", "--semigroup", "tn")[0] == 2
        assert run(capsys, "eggbox", "--semigroup", "reg")[0] == 2
        assert run(capsys, "eggbox", "--a", "[1,2,3,3]", "--semigroup", "bogus")[0] == 2
        assert run(capsys, "eggbox", "--a", "[1,2,3,3]", "--semigroup", "ideal:x")[0] == 2

    def test_verify_mismatch_exits_one(self, capsys, monkeypatch):
        monkeypatch.setattr(regular, "size_reg_formula", lambda s: 99)
        code, out, _ = run(capsys, "verify", "--a", "[1,2,3,3]", "--only", "reg-size")
        assert code == 1
        assert "FAIL reg-size: formula 99 != oracle 100" in out
        assert out.rstrip().endswith("0/1 checks passed")


class TestVerify:
    def test_single(self, capsys):
        code, out, _ = run(capsys, "verify", "--a", "[1,2,3,3]")
        assert code == 0
        assert "FAIL" not in out
        assert "PASS min-idem-gensets: 384" in out
        assert "PASS reg-size: 100" in out

    def test_all_sandwiches_n3(self, capsys):
        code, out, _ = run(capsys, "verify", "--n", "3", "--all-sandwiches")
        assert code == 0
        assert out.count("# a=") == 1

    def test_all_sandwiches_n4(self, capsys):
        code, out, _ = run(capsys, "verify", "--n", "4", "--all-sandwiches")
        assert code == 0 and "FAIL" not in out
        assert out.count("# a=") == 3

    def test_no_dedup_n3(self, capsys):
        code, out, _ = run(capsys, "verify", "--n", "3", "--all-sandwiches", "--no-dedup")
        assert code == 0 and out.count("# a=") == 6


class TestOtherCommands:
    def test_tournaments(self, capsys):
        code, out, _ = run(capsys, "tournaments", "--r", "3", "--count-only")
        assert code == 0 and out == "2\n"
        code, out, _ = run(capsys, "tournaments", "--r", "4", "--count-only")
        assert out == "24\n"
        code, out, _ = run(capsys, "tournaments", "--r", "2")
        assert "convention" in out and out.endswith("count=1\n")

    def test_gensets_enumerate(self, capsys):
        code, out, _ = run(capsys, "gensets", "--a", "[1,2,3,3]", "--target", "exa", "--enumerate")
        assert code == 0
        rep = report(out)
        assert rep["enumerated"] == "384" and rep["rank_exa"] == "6"
        assert len(rep["constructed"].split()) == 6

    def test_gensets_list(self, capsys):
        code, out, _ = run(capsys, "gensets", "--a", "[1,1,1,4]", "--enumerate", "--list")
        lines = out.splitlines()
        assert code == 0 and lines[-1] == "enumerated=108"
        assert len(lines) == 4 + 108

    def test_gensets_time_budget(self, capsys):
        code, _, err = run(capsys, "gensets", "--a", "[1,2,3,3]", "--enumerate", "--time-budget", "0")
        assert code == 1 and "aborted" in err

    def test_gensets_ideal(self, capsys):
        code, out, _ = run(capsys, "gensets", "--a", "[1,2,3,3,3]", "--target", "ideal:2")
        assert code == 0 and report(out)["rank_ideal_m2"] == "12"

    def test_normalize(self, capsys):
        code, out, _ = run(capsys, "normalize", "--b", "[2,2,1]")
        assert out == "a=[1,1,3]\np=[3,1,2]\nr=2 lambdas=[2,1]\n"

    @pytest.mark.parametrize("sg", ["variant", "reg", "exa", "ideal:2"])
    def test_eggbox(self, capsys, sg):
        code, out, _ = run(capsys, "eggbox", "--a", "[1,2,3,3]", "--semigroup", sg, "--format", "json")
        assert code == 0
        d = json.loads(out)
        assert d["semigroup"] == sg and d["sandwich"] == [1, 2, 3, 3]
        total = sum(c["rows"] * c["cols"] * c["hsize"] if isinstance(c["hsize"], int)
                    else sum(map(sum, c["hsize"])) for c in d["dclasses"])
        assert total == {"variant": 256, "reg": 100, "exa": 70, "ideal:2": 64}[sg]

    def test_eggbox_dot(self, capsys):
        code, out, _ = run(capsys, "eggbox", "--a", "[1,2,3,3]", "--semigroup", "reg", "--format", "dot")
        assert code == 0 and out.startswith("digraph eggbox {")

    def test_max_n_flag(self, capsys):
        code, _, _ = run(capsys, "--max-n", "3", "eggbox", "--n", "4", "--semigroup", "tn")
        assert code == 2


def test_byte_identical_output():
    argv = [sys.executable, "-m", "sandwich", "eggbox", "--a", "[1,2,3,3]", "--format", "dot"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a


def test_console_script_exit_code():
    proc = subprocess.run([sys.executable, "-m", "sandwich", "analyze", "--a", "[1,2,"], capture_output=True)
    assert proc.returncode == 2
