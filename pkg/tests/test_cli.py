import json

import pytest
from click.testing import CliRunner

from balloonlab import create_app, run_cli
from balloonlab.schemas import SearchResultPayload
from balloonlab.services import graph6
from balloonlab.services.graph import make_named


@pytest.fixture
def app():
    return create_app()


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def _diagnostic(result):
    return json.loads(result.stderr.strip().splitlines()[-1])


class TestGen:
    def test_turan(self, runner, app):
        result = runner.invoke(app, ["gen", "turan", "7", "3"])
        assert result.exit_code == 0
        assert graph6.decode(result.stdout.strip()).edge_count == 16

    def test_wheel_and_its_fbullet(self, runner, app):
        wheel = runner.invoke(app, ["gen", "wheel", "2"])
        rim = runner.invoke(app, ["gen", "wheel", "2", "--fbullet"])
        assert graph6.decode(wheel.stdout.strip()).edge_count == 8
        assert graph6.decode(rim.stdout.strip()) == make_named("cycle", 4)

    def test_dot(self, runner, app):
        result = runner.invoke(app, ["gen", "complete", "3", "--dot"])
        assert result.stdout.startswith("Bw\n")
        assert "graph complete {" in result.stdout

    def test_invalid_parameter(self, runner, app):
        result = runner.invoke(app, ["gen", "cycle", "2"])
        assert result.exit_code == 2
        assert _diagnostic(result)["code"] == "INVALID_PARAMETER"

    def test_fbullet_on_plain_kind(self, runner, app):
        result = runner.invoke(app, ["gen", "cycle", "5", "--fbullet"])
        assert result.exit_code == 2

    def test_unexpected_error(self, runner, app, mocker):
        mocker.patch("balloonlab.commands.graphs.make_named", side_effect=RuntimeError("boom"))
        result = runner.invoke(app, ["gen", "cycle", "5"])
        assert result.exit_code == 1
        diagnostic = _diagnostic(result)
        assert diagnostic["code"] == "INTERNAL_ERROR"
        assert diagnostic["type"] == "RuntimeError"


class TestBalloon:
    def test_uniform_length(self, runner, app):
        result = runner.invoke(app, ["balloon", "--skeleton", "Bw", "--length", "5"])
        assert result.exit_code == 0
        G = graph6.decode(result.stdout.strip())
        assert (G.n, G.edge_count) == (12, 15)

    def test_even_length(self, runner, app):
        result = runner.invoke(app, ["balloon", "--skeleton", "Bw", "--length", "4"])
        assert result.exit_code == 2

    def test_json(self, runner, app):
        result = runner.invoke(app, ["balloon", "--family", "friendship", "--k", "2", "--length", "5", "--json"])
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["long_cycle_regime"] is True
        assert len(payload["cycles"]) == 6

    def test_spec_file(self, runner, app, tmp_path):
        spec = tmp_path / "spec.txt"
        spec.write_text("Bw ; edge 0,1 = 3 ; all = 5", encoding="utf-8")
        result = runner.invoke(app, ["balloon", "--spec", str(spec)])
        assert result.exit_code == 0
        assert graph6.decode(result.stdout.strip()).n == 10
        assert "length 3" in result.stderr

    def test_spec_excludes_length(self, runner, app, tmp_path):
        spec = tmp_path / "spec.txt"
        spec.write_text("Bw ; all = 5", encoding="utf-8")
        result = runner.invoke(app, ["balloon", "--spec", str(spec), "--length", "5"])
        assert result.exit_code == 2

    def test_missing_length(self, runner, app):
        result = runner.invoke(app, ["balloon", "--skeleton", "Bw"])
        assert result.exit_code == 2


class TestFamilies:
    def test_crack(self, runner, app):
        result = runner.invoke(app, ["crack", "--graph", "Bw", "--U", "0"])
        assert result.exit_code == 0
        assert len(result.stdout.splitlines()) == 3

    def test_crack_json_report(self, runner, app):
        result = runner.invoke(app, ["crack", "--graph", "Bw", "--U", "0", "--json"])
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["cracked"] == [0]
        assert sorted((m["vertices"], m["edges"], m["q"]) for m in payload["members"]) == [
            (4, 3, 2), (5, 3, 2), (6, 3, 3)]
        assert payload["q"] == 2

    def test_crack_all_json_report_gives_q(self, runner, app):
        result = runner.invoke(app, ["crack-all", "--family", "wheel", "--k", "2", "--json"])
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["cracked"] is None
        assert payload["q"] == 4
        assert all(len(m["canonical_form"]) > 0 for m in payload["members"])

    def test_crack_dependent_set(self, runner, app):
        result = runner.invoke(app, ["crack", "--graph", "Bw", "--U", "0,1"])
        assert result.exit_code == 2

    def test_crack_needs_one_source(self, runner, app):
        result = runner.invoke(app, ["crack", "--U", "0"])
        assert result.exit_code == 2
        assert _diagnostic(result)["code"] == "INVALID_PARAMETER"

    def test_crack_all(self, runner, app):
        result = runner.invoke(app, ["crack-all", "--graph", "Bw"])
        assert result.exit_code == 0
        assert len(result.stdout.splitlines()) == 4

    def test_decompose_edge(self, runner, app):
        result = runner.invoke(app, ["decompose", "--graph", "A_", "--t-max", "4", "--size-cap", "4"])
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["status"] == "complete"
        assert [m["graph6"] for m in payload["members"]] == ["A_"]
        assert list(payload["minimal_t"].values()) == [2]


class TestPredict:
    def test_balloon_mode(self, runner, app):
        fbullet = graph6.encode(make_named("cycle", 4))
        result = runner.invoke(app, ["predict", "--fbullet", fbullet, "--n", "20"])
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["case_tag"] == "AllEvenCycles"
        assert payload["edge_count"] == 124
        assert payload["conjectural"] is True

    def test_large_n_from_environment(self, runner, app, monkeypatch):
        monkeypatch.setenv("BALLOONLAB_LARGE_N", "20")
        result = runner.invoke(app, ["predict", "--family", "friendship", "--k", "2", "--n", "30",
                                     "--mode", "decomposition"])
        payload = json.loads(result.stdout)
        assert payload["edge_count"] == 57
        assert payload["conjectural"] is False

    def test_chi4_warns_on_small_chromatic_number(self, runner, app):
        result = runner.invoke(app, ["predict", "--mode", "chi4", "--skeleton", "Bw", "--n", "10"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["symbolic"] == "EX(n,F°) = EX(n,F)"
        assert "χ(F) = 3" in result.stderr

    def test_skeleton_outside_chi4(self, runner, app):
        result = runner.invoke(app, ["predict", "--skeleton", "Bw", "--n", "10"])
        assert result.exit_code == 2


class TestCheckFree:
    def test_free_by_parity(self, runner, app, graph_file):
        host = graph6.encode(make_named("turan", 6, 2))
        result = runner.invoke(app, ["check-free", "--host", host, "--family", graph_file("Bw")])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["verdict"] == "free"

    def test_contains_with_dot(self, runner, app, graph_file):
        host = graph6.encode(make_named("complete", 4))
        result = runner.invoke(app, ["check-free", "--host", host, "--family", graph_file("Bw"), "--dot"])
        payload, end = json.JSONDecoder().raw_decode(result.stdout)
        assert payload["verdict"] == "contains"
        assert "graph host {" in result.stdout[end:]


class TestSearch:
    def test_search_ex_with_witnesses(self, runner, app, graph_file):
        result = runner.invoke(app, ["search-ex", "--n", "5", "--forbid", graph_file("Bw"), "--witnesses"])
        assert result.exit_code == 0
        payload, end = json.JSONDecoder().raw_decode(result.stdout)
        assert payload["optimum"] == 6
        assert payload["exhaustive"] is True
        lines = result.stdout[end:].split()
        assert [graph6.decode(line) for line in lines] == [graph6.decode(lines[0])]
        assert graph6.decode(lines[0]).edge_count == 6

    def test_search_ex_non_ascii_family(self, runner, app, tmp_path):
        path = tmp_path / "family.g6"
        path.write_bytes("B\u00e9\n".encode("utf-8"))
        result = runner.invoke(app, ["search-ex", "--n", "5", "--forbid", str(path)])
        assert result.exit_code == 2
        assert _diagnostic(result)["code"] == "MALFORMED_GRAPH6"

    def test_search_ex_guardrail(self, runner, app, graph_file):
        result = runner.invoke(app, ["search-ex", "--n", "11", "--forbid", graph_file("Bw")])
        assert result.exit_code == 2
        assert _diagnostic(result)["code"] == "GUARDRAIL_VIOLATION"

    def test_f_oracle(self, runner, app):
        result = runner.invoke(app, ["f-oracle", "--n", "7", "--nu", "2", "--delta", "3"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["optimum"] == 7

    def test_f_oracle_rejects_zero_bounds(self, runner, app):
        result = runner.invoke(app, ["f-oracle", "--n", "7", "--nu", "0", "--delta", "3"])
        assert result.exit_code == 2

    def test_threads_reach_the_search(self, runner, app, mocker):
        search = mocker.patch("balloonlab.commands.search.f_oracle")
        search.return_value.to_payload.return_value = SearchResultPayload(
            n=5, optimum=3, exhaustive=True, nodes_explored=1, level_optima=[0, 0, 1, 3, 3, 3])
        result = runner.invoke(app, ["--threads", "3", "f-oracle", "--n", "5", "--nu", "1", "--delta", "2"])
        assert result.exit_code == 0
        assert search.call_args.kwargs["threads"] == 3


class TestVerify:
    def test_quick_single_check(self, runner, app, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(app, ["verify", "--quick", "--only", "graph6_round_trip", "--json-out", str(out)])
        assert result.exit_code == 0
        assert "overall: pass" in result.stdout
        assert json.loads(out.read_text(encoding="utf-8"))["schema_version"] == "1.0"

    def test_unknown_check(self, runner, app):
        result = runner.invoke(app, ["verify", "--only", "no_such_check"])
        assert result.exit_code == 2

    def test_exit_code_follows_report(self, runner, app, mocker):
        battery = mocker.patch("balloonlab.commands.verify.VerificationBattery").return_value
        battery.checks.return_value = [("q_values", "PAPER", None)]
        battery.run.return_value.to_text.return_value = "overall: indeterminate\n"
        battery.run.return_value.exit_code.return_value = 1
        result = runner.invoke(app, ["verify", "--strict"])
        assert result.exit_code == 1
        battery.run.return_value.exit_code.assert_called_once_with(True)


class TestApp:
    def test_unknown_log_level(self, runner, app):
        result = runner.invoke(app, ["--log-level", "chatty", "gen", "complete", "2"])
        assert result.exit_code == 2

    def test_invalid_environment_value_falls_back(self, runner, monkeypatch, caplog):
        import run

        monkeypatch.setenv("BALLOONLAB_BUDGET", "-1")
        result = runner.invoke(run.app, ["gen", "complete", "2"])
        assert result.exit_code == 0
        assert result.stdout == "A_\n"
        assert "Ignoring BALLOONLAB_BUDGET='-1'" in caplog.text

    def test_run_cli(self, capsys):
        assert run_cli(["gen", "complete", "2"]) == 0
        assert capsys.readouterr().out == "A_\n"

    def test_run_cli_usage_error(self, capsys):
        assert run_cli(["gen", "no-such-kind"]) == 2
