import json
import subprocess
import sys

from edgeideals.cli import main


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "edgeideals.cli", *args],
        capture_output=True,
        text=True,
    )


class TestSubcommands:
    def test_betti_dump(self):
        out = run_cli("betti", "Bw")
        assert out.returncode == 0
        assert "i=1 deg=x1*y2 dim=1" in out.stdout
        assert "# reg=2 pd=2 depth=4 field=32003" in out.stdout

    def test_paths_listing(self):
        out = run_cli("paths", "Bw")
        assert out.returncode == 0
        assert out.stdout.splitlines() == ["1->2", "1->3", "2->3", "1->3->2", "2->1->3"]

    def test_paths_with_monomials(self):
        out = run_cli("paths", "Bw", "--monomials")
        assert "1->3->2 x1*x3*y2" in out.stdout.splitlines()

    def test_bounds_small_csv(self):
        out = run_cli("bounds", "--n", "3", "--field", "2")
        assert out.returncode == 0
        lines = out.stdout.splitlines()
        assert lines[0].startswith("graph6,n,edges,ell,reg_init")
        assert len(lines) == 4  # header + three graphs with edges

    def test_conjecture_json(self):
        out = run_cli("conjecture", "--n", "3")
        assert out.returncode == 0
        data = json.loads(out.stdout)
        assert data["conjecture_ok"] is True and data["n"] == 3

    def test_crosscheck(self):
        out = run_cli("crosscheck", "--n", "3", "--field", "2")
        assert out.returncode == 0
        assert json.loads(out.stdout)["passed"] is True


class TestExitCodes:
    def test_usage_error_without_corpus(self):
        out = run_cli("bounds")
        assert out.returncode == 2

    def test_bad_graph6_is_usage_error(self):
        out = run_cli("betti", ">bad<")
        assert out.returncode == 2
        assert "edgeideals:" in out.stderr

    def test_guard_error_is_usage_error(self):
        out = run_cli("conjecture", "--n", "9")
        assert out.returncode == 2

    def test_main_returns_codes_in_process(self):
        assert main(["bounds", "--n", "3", "--field", "2", "--out", "/dev/null"]) == 0
        assert main(["bounds"]) == 2


class TestDeterminismAcrossJobs:
    def test_bounds_jobs_1_vs_2(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        assert main(["bounds", "--n", "3", "--jobs", "1", "--out", str(a)]) == 0
        assert main(["bounds", "--n", "3", "--jobs", "2", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
