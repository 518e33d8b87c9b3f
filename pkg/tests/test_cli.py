"""
End-to-end tests for the command-line surface (main.py): one JSON document on
stdout per run, error documents and exit codes.
"""
from __future__ import annotations

import json

from main import run


def invoke(capsys, *argv: str) -> tuple[int, dict]:
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestAlgebraCommands:
    def test_k2s_check(self, capsys):
        code, doc = invoke(capsys, "k2s-check", "--a=-2", "--b=13")
        assert code == 0
        assert doc["member"] is True
        assert doc["symbols"] == [-1, 1, 1]
        assert doc["division"] == "CertifiedDivision"
        assert doc["elliptic_obstruction"] is False

    def test_k2s_check_outside_class(self, capsys):
        code, doc = invoke(capsys, "k2s-check", "--a=-1", "--b=13", "--allow-non-k2s")
        assert code == 0
        assert doc["member"] is False
        assert doc["reasons"]

    def test_gate_rejects_settings(self, capsys):
        code, doc = invoke(capsys, "algebra-info", "--a=-1", "--b=13")
        assert code == 1
        assert doc["error"]["code"] == "domain"

    def test_enumerate(self, capsys):
        code, doc = invoke(capsys, "enumerate", "--norm=3", "--eta-norm-bound=0")
        assert code == 0
        assert doc["count"] == 4


class TestConstructCommands:
    def test_pell(self, capsys):
        code, doc = invoke(capsys, "pell", "--d=58")
        assert code == 0
        assert (doc["x"], doc["y"]) == (19603, 2574)

    def test_rational_pell(self, capsys):
        code, doc = invoke(capsys, "pell", "--d=3580/81")
        assert code == 0
        assert (doc["x"], doc["y"], doc["d"]) == (359, 54, "3580/81")

    def test_square_pell(self, capsys):
        code, doc = invoke(capsys, "pell", "--d=4")
        assert code == 1
        assert doc["error"]["code"] == "domain"

    def test_halfplane(self, capsys):
        code, doc = invoke(capsys, "construct-halfplane", "--t=0", "--u=1")
        assert code == 0
        assert doc["gamma"] == {"xi": "10 + 3*sqrt(-2)", "eta": "3", "norm": "1"}

    def test_sphere(self, capsys):
        code, doc = invoke(capsys, "construct-sphere", "--center=2/3 + sqrt(-2)", "--radius-sq=3")
        assert code == 0
        assert doc["gamma"]["xi"] == "359 + 168*sqrt(-2)"
        assert doc["epsilon"] == -1
        assert doc["notes"][-1] == "ε = -1 from the self-map criterion"

    def test_greedy_set(self, capsys):
        code, doc = invoke(capsys, "greedy-set", "--t-max=500")
        assert code == 0
        assert doc["excluded"] == [2, 11, 12, 70, 109, 225, 408]


class TestSeparationCommand:
    def test_halfplane(self, capsys):
        code, doc = invoke(capsys, "separation", "--halfplane", "0,1", "--prime-search-bound=5000")
        assert code == 0
        assert doc["witness"] == 23
        assert doc["kind"] == "HalfPlanes"
        assert doc["corroboration"] is None

    def test_corroborated_point(self, capsys):
        code, doc = invoke(
            capsys, "separation", "--point", "sqrt(-2) ; 1", "--corroborate", "--eta-norm-bound=10"
        )
        assert code == 0
        assert doc["witness"] == 23
        assert doc["corroboration"]["status"] == "Pass"

    def test_s0_unsupported(self, capsys):
        code, doc = invoke(capsys, "separation", "--s0")
        assert code == 1
        assert doc["error"]["code"] == "unsupported"

    def test_mixed_configuration(self, capsys):
        code, doc = invoke(
            capsys, "separation", "--point", "sqrt(-2) ; 1", "--halfplane", "0,1",
            "--corroborate", "--eta-norm-bound=10",
        )
        assert code == 0
        assert doc["kind"] == "HalfPlanes"
        assert doc["witness"] == 23
        assert doc["corroboration"]["status"] == "Pass"

    def test_bad_pair(self, capsys):
        code, doc = invoke(capsys, "separation", "--halfplane", "0;1")
        assert code == 2
        assert doc["error"]["code"] == "usage"


class TestSurface:
    def test_unknown_subcommand(self, capsys):
        code, doc = invoke(capsys, "frobnicate")
        assert code == 2
        assert doc["error"]["code"] == "usage"

    def test_missing_subcommand(self, capsys):
        code, doc = invoke(capsys)
        assert code == 2
        assert doc["error"]["code"] == "usage"

    def test_missing_config_file(self, capsys, tmp_path):
        code, doc = invoke(capsys, "k2s-check", f"--config={tmp_path / 'none.cfg'}")
        assert code == 2
        assert doc["error"]["code"] == "usage"

    def test_output_is_deterministic(self, capsys):
        run(["construct-halfplane", "--t=2", "--u=3"])
        first = capsys.readouterr().out
        run(["construct-halfplane", "--t=2", "--u=3"])
        assert capsys.readouterr().out == first

    def test_classify(self, capsys):
        code, doc = invoke(capsys, "classify", "--element=10 + 3*sqrt(-2) ; 3")
        assert code == 0
        assert doc["class"] == "Hyperbolic"

    def test_fixed_points_of_omega(self, capsys):
        code, doc = invoke(capsys, "fixed-points", "--element=0 ; 1")
        assert code == 0
        assert doc["class"] == "Elliptic"
        assert doc["fixed"] == {"semicircle": {"center": "0", "radius_sq": "1/13", "direction": "1"}}


class TestPaperExamples:
    def test_all_pass(self, capsys):
        code, doc = invoke(capsys, "verify-paper-examples", "--eta-norm-bound=20")
        assert code == 0
        assert doc["ok"] is True
        assert doc["failed"] == 0

    def test_full_greedy_list(self, capsys):
        _, doc = invoke(capsys, "verify-paper-examples", "--eta-norm-bound=0")
        statuses = {r["name"]: r["status"] for r in doc["examples"]}
        assert statuses["greedy set t ≤ 500"] == "PASS"
        assert statuses["greedy set t ≤ 24000"] == "PASS"
