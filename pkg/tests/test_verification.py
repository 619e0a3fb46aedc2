import json

import pytest

from balloonlab.schemas import CheckResult
from balloonlab.services.verification import Outcome, VerificationBattery, VerificationReport, run_battery

FAST_CHECKS = [
    "graph6_round_trip",
    "canonical_relabel_invariance",
    "formula_construction_sweep",
    "q_values",
    "positive_controls",
    "friendship_triangle_regime",
]


def _check(name, verdict):
    return CheckResult(name=name, provenance="TRIVIAL", verdict=verdict)


class TestReport:
    @pytest.mark.parametrize("verdicts,status", [
        (["pass", "pass"], "pass"),
        (["pass", "indeterminate"], "indeterminate"),
        (["indeterminate", "fail"], "fail"),
        ([], "pass"),
    ])
    def test_status(self, verdicts, status):
        report = VerificationReport([_check(f"c{i}", v) for i, v in enumerate(verdicts)], quick=True)
        assert report.status == status

    def test_exit_codes(self):
        passing = VerificationReport([_check("a", "pass")], quick=True)
        unsure = VerificationReport([_check("a", "indeterminate")], quick=True)
        failing = VerificationReport([_check("a", "fail")], quick=True)
        assert passing.exit_code() == 0
        assert unsure.exit_code() == 0
        assert unsure.exit_code(strict=True) == 1
        assert failing.exit_code() == 1

    def test_text_marks_each_check(self):
        report = VerificationReport([_check("a", "pass"), _check("b", "fail")], quick=True)
        text = report.to_text()
        assert "✅ a" in text
        assert "❌ b" in text
        assert "expected=None" in text
        assert text.endswith("overall: fail\n")

    def test_payload_schema(self):
        payload = VerificationReport([_check("a", "pass")], quick=False).to_payload()
        data = json.loads(payload.model_dump_json())
        assert data["schema_version"] == "1.0"
        assert data["status"] == "pass"
        assert data["checks"][0]["name"] == "a"


class TestBattery:
    def test_unique_check_names(self):
        names = [name for name, _, _ in VerificationBattery().checks()]
        assert len(names) == len(set(names)) == 12

    @pytest.mark.parametrize("name", FAST_CHECKS)
    def test_quick_check_passes(self, name):
        report = run_battery(quick=True, only=[name])
        assert [check.name for check in report.checks] == [name]
        assert report.checks[0].verdict == "pass", report.to_text()

    def test_raising_check_fails(self, mocker):
        mocker.patch.object(VerificationBattery, "check_graph6_round_trip", side_effect=RuntimeError("boom"))
        report = run_battery(quick=True, only=["graph6_round_trip"])
        assert report.status == "fail"
        assert report.checks[0].note == "RuntimeError: boom"

    def test_indeterminate_outcome_is_reported(self, mocker):
        mocker.patch.object(VerificationBattery, "check_q_values", return_value=Outcome("indeterminate", note="budget"))
        report = run_battery(quick=True, only=["q_values"])
        assert report.status == "indeterminate"
        assert report.exit_code() == 0

    def test_seed_changes_random_inputs_only(self):
        first = VerificationBattery(quick=True, seed=1).run(["graph6_round_trip"])
        second = VerificationBattery(quick=True, seed=2).run(["graph6_round_trip"])
        assert first.status == second.status == "pass"

    @pytest.mark.slow
    def test_quick_battery(self):
        report = run_battery(quick=True)
        assert report.status == "pass", report.to_text()

    @pytest.mark.slow
    def test_full_battery(self):
        report = run_battery(quick=False)
        verdicts = {check.name: check.verdict for check in report.checks}
        assert verdicts["turan_oracle"] == "pass"
        assert verdicts["chvatal_hanson_grid"] == "pass"
        assert report.status == "pass", report.to_text()
