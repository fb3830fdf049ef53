import json

import pytest

import nicheck as nc
from nicheck.cli import linear_fit_max_ratio, main, run_scaling_bench


def write_fixture(tmp_path, name):
    path = tmp_path / f"{name}.ni"
    path.write_text(nc.serialize_system(nc.fixture(name)), encoding="utf-8")
    return str(path)


class TestCheck:
    def test_secure_exits_zero(self, tmp_path, capsys):
        assert main(["check", "--notion", "ip", write_fixture(tmp_path, "fig6")]) == 0
        assert "secure" in capsys.readouterr().out

    def test_insecure_exits_one_with_witness_json(self, tmp_path, capsys):
        path = write_fixture(tmp_path, "fig6")
        assert main(["check", "--notion", "ta", path]) == 1
        witness = json.loads(capsys.readouterr().out)
        assert witness["notion"] == "ta"
        assert witness["obs_alpha"] != witness["obs_beta"]
        system = nc.parse_system(open(path, encoding="utf-8").read())
        assert nc.check_witness_pair(
            system, "ta", witness["domain"],
            tuple(witness["alpha"]), tuple(witness["beta"]),
        )

    def test_missing_file_exits_three(self, capsys):
        assert main(["check", "--notion", "p", "/nonexistent.ni"]) == 3
        assert capsys.readouterr().err

    def test_undecidable_notion_rejected_as_usage_error(self, tmp_path):
        assert main(["check", "--notion", "to", write_fixture(tmp_path, "fig5")]) == 3


class TestBounded:
    def test_violation_exits_one(self, tmp_path, capsys):
        assert main(
            ["bounded", "--notion", "to", "--depth", "5", write_fixture(tmp_path, "fig7")]
        ) == 1
        witness = json.loads(capsys.readouterr().out)
        assert witness["notion"] == "to"

    def test_no_violation_exits_two(self, tmp_path, capsys):
        assert main(
            ["bounded", "--notion", "to", "--depth", "5", write_fixture(tmp_path, "fig5")]
        ) == 2
        assert json.loads(capsys.readouterr().out)["no_violation_up_to"] == 5

    def test_budget_exceeded_exits_three(self, tmp_path, capsys):
        code = main(
            ["bounded", "--notion", "p", "--depth", "12", write_fixture(tmp_path, "fig6")]
        )
        assert code == 3 and capsys.readouterr().err


class TestGenerators:
    def test_fixture_output_parses_back(self, capsys):
        assert main(["fixture", "fig8"]) == 0
        text = capsys.readouterr().out
        assert nc.parse_system(text) == nc.fixture("fig8")

    def test_gen_is_deterministic(self, capsys):
        argv = ["gen", "--states", "5", "--actions", "3", "--domains", "2", "--seed", "11"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        assert capsys.readouterr().out == first

    def test_reduce_pcp_writes_the_demo_machine(self, tmp_path):
        out = tmp_path / "pcp.ni"
        assert main([
            "reduce-pcp", "--sigma", "ab", "--u", "a,ab,bba", "--w", "baa,aa,bb",
            "--out", str(out),
        ]) == 0
        assert nc.parse_system(out.read_text(encoding="utf-8")) == nc.fixture("pcp_demo")

    def test_reduce_pcp_bad_alphabet(self, capsys):
        assert main(["reduce-pcp", "--sigma", "a", "--u", "a", "--w", "aa"]) == 3
        assert capsys.readouterr().err

    def test_augment_final_round_trips(self, tmp_path, capsys):
        assert main(["augment-final", write_fixture(tmp_path, "fig8")]) == 0
        text = capsys.readouterr().out
        assert nc.parse_system(text) == nc.augment_final(nc.fixture("fig8"))

    def test_usage_error_exits_three(self):
        assert main(["frobnicate"]) == 3
        assert main([]) == 3


class TestBench:
    def test_small_bench_runs_and_fits(self, capsys):
        assert main(["bench", "--notion", "p", "--sizes", "50,100", "--seed", "3"]) == 0
        out = capsys.readouterr().out
        assert "states=50" in out and "linear fit" in out

    def test_fit_ratio_of_perfectly_linear_data(self):
        data = [{"states": n, "seconds": 2e-6 * n} for n in (10, 100, 1000)]
        assert linear_fit_max_ratio(data) == pytest.approx(1.0)

    def test_bench_systems_are_secure_so_the_closure_runs_fully(self):
        results = run_scaling_bench("p", sizes=(200,), seed=5)
        assert results[0]["secure"]
