import json
import pathlib
import subprocess
import sys

from quditmbqc.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


class TestDemo:
    def test_nand(self, capsys):
        assert main(["demo", "nand"]) == 0
        out = capsys.readouterr().out
        assert "output table: 1,1,1,0" in out
        assert "degree witness: strongly-nonlocal" in out
        assert "assignment search: strongly-nonlocal (searched 64 assignments)" in out

    def test_exponential(self, capsys):
        assert main(["demo", "exponential", "--d", "5", "--u", "2"]) == 0
        out = capsys.readouterr().out
        assert "output table: 1,3,4,2,1" in out
        assert "assignment search: ncva-found" in out

    def test_quadratic_d3(self, capsys):
        assert main(["demo", "quadratic", "--d", "3"]) == 0
        out = capsys.readouterr().out
        assert "output table: 0,0,1" in out

    def test_bad_params_exit_2(self, capsys):
        assert main(["demo", "quadratic", "--d", "4"]) == 2

    def test_json_mode(self, capsys):
        assert main(["demo", "nand", "--json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["table"] == [1, 1, 1, 0]
        assert obj["degree_witness"] == "strongly-nonlocal"
        assert obj["verified"] is True

    def test_deterministic_output(self, capsys):
        main(["demo", "nand", "--seed", "7"])
        first = capsys.readouterr().out
        main(["demo", "nand", "--seed", "7"])
        assert capsys.readouterr().out == first


class TestCompile:
    def test_p3_delta(self, tmp_path, capsys):
        out_file = tmp_path / "plan.json"
        assert main(["compile", "--d", "3", "--table", "1,0,0", "--out", str(out_file)]) == 0
        out = capsys.readouterr().out
        assert "qudits: 12" in out
        assert "verified: true" in out
        assert out_file.exists()

    def test_p5_delta_80_qudits(self, capsys):
        assert main(["compile", "--d", "5", "--table", "1,0,0,0,0"]) == 0
        assert "qudits: 80" in capsys.readouterr().out

    def test_d9_odd_ring(self, tmp_path, capsys):
        out_file = tmp_path / "plan9.json"
        argv = ["compile", "--d", "9", "--table", "0,1,2,3,4,5,6,7,8",
                "--odd-ring", "--out", str(out_file)]
        assert main(argv) == 0
        assert "qudits: 18" in capsys.readouterr().out

    def test_wrong_length_exit_2(self, capsys):
        assert main(["compile", "--d", "3", "--table", "1,0"]) == 2

    def test_composite_without_flag_exit_2(self, capsys):
        assert main(["compile", "--d", "9", "--table", ",".join("0" * 9)]) == 2

    def test_even_d_odd_ring_exit_2(self, capsys):
        assert main(["compile", "--d", "4", "--table", "0,1,0,1", "--odd-ring"]) == 2


class TestAnalyze:
    def test_round_trip(self, tmp_path, capsys):
        plan_file = tmp_path / "plan.json"
        main(["compile", "--d", "3", "--table", "2,0,1", "--out", str(plan_file)])
        capsys.readouterr()
        assert main(["analyze", "--plan", str(plan_file)]) == 0
        out = capsys.readouterr().out
        assert "output table: 2,0,1" in out
        assert "temporal bound: 2" in out

    def test_nand_plan_analysis(self, tmp_path, capsys):
        from planlib import nand_plan

        plan_file = tmp_path / "nand.json"
        nand_plan().save(plan_file)
        assert main(["analyze", "--plan", str(plan_file)]) == 0
        out = capsys.readouterr().out
        assert "combined degree: 2" in out
        assert "temporal bound: 1" in out
        assert "degree witness: strongly-nonlocal" in out

    def test_missing_file_exit_4(self, capsys):
        assert main(["analyze", "--plan", "/nonexistent/plan.json"]) == 4

    def test_malformed_file_exit_4(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        assert main(["analyze", "--plan", str(bad)]) == 4
        assert "line" in capsys.readouterr().err

    def test_missing_field_exit_4(self, tmp_path, capsys):
        bad = tmp_path / "bad2.json"
        bad.write_text('{"d": 2, "n": 1}')
        assert main(["analyze", "--plan", str(bad)]) == 4

    def test_exponential_plan(self, tmp_path, capsys):
        from planlib import exponential_plan

        plan_file = tmp_path / "exp.json"
        exponential_plan(5, 2).save(plan_file)
        assert main(["analyze", "--plan", str(plan_file)]) == 0
        out = capsys.readouterr().out
        assert "combined degree: 4" in out
        assert "temporal bound: 4" in out
        assert "assignment search: ncva-found" in out

    def test_chained_plan_bound(self, tmp_path, capsys):
        from quditmbqc.engine import MbqcPlan
        from quditmbqc.states import basis_state
        from quditmbqc.weyl import WeylLabel, named_clifford

        d = 3
        fid = WeylLabel(d, (1, 0))
        ident = named_clifford(d, "weyl-displacement", x=(0, 0))
        plan = MbqcPlan(d=d, n=1, N=2, resource=basis_state(d, (0, 0)),
                        parties=[(fid, ident)] * 2, Q=[[0]] * 2,
                        T=[[0, 0], [1, 0]], z=[1, 1], s0=0)
        plan_file = tmp_path / "chain.json"
        plan.save(plan_file)
        assert main(["analyze", "--plan", str(plan_file)]) == 0
        out = capsys.readouterr().out
        assert "temporal bound: 4" in out
        assert "temporally flat: no" in out

    def test_json_mode(self, tmp_path, capsys):
        plan_file = tmp_path / "plan.json"
        main(["compile", "--d", "3", "--table", "1,0,0", "--out", str(plan_file)])
        capsys.readouterr()
        assert main(["analyze", "--plan", str(plan_file), "--json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["table"] == [1, 0, 0]
        assert obj["deterministic"] is True


class TestTable:
    def test_p5_byte_exact(self):
        proc = subprocess.run(
            [sys.executable, "-m", "quditmbqc", "table", "--appendix-b", "--p", "5"],
            capture_output=True, check=True,
        )
        golden = (GOLDEN / "appendix_b_p5.txt").read_bytes()
        assert proc.stdout == golden

    def test_p3(self, capsys):
        assert main(["table", "--appendix-b", "--p", "3"]) == 0
        out = capsys.readouterr().out
        assert "u^1x" in out and "1 2 1" in out
        assert "sigma_3 : 1 0 1" in out

    def test_last_row_all_ones(self, capsys):
        for p in (3, 5, 7, 11, 13):
            main(["table", "--appendix-b", "--p", str(p)])
            rows = capsys.readouterr().out.strip().splitlines()
            last_exponent_row = rows[-2]
            assert set(last_exponent_row.split(":")[1].split()) == {"1"}

    def test_bad_p(self, capsys):
        assert main(["table", "--appendix-b", "--p", "4"]) == 2
        assert main(["table", "--appendix-b", "--p", "17"]) == 2


class TestVerifyAll:
    def test_all_pass(self, capsys):
        assert main(["verify-all"]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 8
        assert "FAIL" not in out
