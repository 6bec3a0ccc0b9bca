import json

import pytest
from fastapi.testclient import TestClient

from pfw.cli import main as cli_main
from pfw.service import create_app


C3_DOC = {"kind": "poset", "points": ["p", "q"], "le": [["p", "q"]]}
SIERP_DOC = {"universe": ["x", "y"], "lattice": [[], ["x"], ["x", "y"]]}
FRITH_C3 = {"frame": C3_DOC, "s": ["{}", "{p}", "{p,q}"]}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestEndpoints:
    def test_health(self, client):
        assert client.get("/health").json() == {"status": "ok"}

    def test_caps(self, client):
        caps = client.get("/caps").json()
        assert caps["max_ji"] == 16

    def test_validate_ok(self, client):
        out = client.post("/validate", json={"document": C3_DOC}).json()
        assert out == {"valid": True, "kind": "frame", "name": "anonymous"}

    def test_validate_schema_error(self, client):
        response = client.post("/validate", json={"document": {"kind": "poset"}})
        assert response.status_code == 422
        detail = response.json()["error"]
        assert detail["type"] == "SchemaError"
        assert "path" in detail

    def test_construct_pseudocomplement(self, client):
        response = client.post(
            "/construct",
            json={"op": "pseudocomplement", "args": {"frame": C3_DOC, "element": "{p}"}},
        )
        assert response.json()["result"] == {"element": "{}"}

    def test_construct_points(self, client):
        response = client.post("/construct", json={"op": "points", "args": {"frame": C3_DOC}})
        assert len(response.json()["result"]["points"]) == 2

    def test_construct_fsym(self, client):
        response = client.post("/construct", json={"op": "fsym", "args": {"frith": FRITH_C3}})
        result = response.json()["result"]
        assert len(result["object"]["payload"]["frame"]["elements"]) == 4

    def test_construct_adjunction(self, client):
        response = client.post(
            "/construct",
            json={"op": "adjunction-report", "args": {"pervin": SIERP_DOC, "frith": FRITH_C3}},
        )
        result = response.json()["result"]
        assert result["bijection"] and result["is_spatial"] and result["is_sober"]

    def test_construct_unknown_op(self, client):
        assert client.post("/construct", json={"op": "mystery", "args": {}}).status_code == 422

    def test_gen_deterministic(self, client):
        payload = {"kind": "frame", "seed": 4, "count": 2, "params": {}}
        first = client.post("/gen", json=payload).json()
        second = client.post("/gen", json=payload).json()
        assert first == second

    def test_render(self, client):
        out = client.post("/render", json={"document": C3_DOC}).json()
        assert out["dot"].startswith("digraph hasse")

    def test_render_unsupported(self, client):
        assert client.post("/render", json={"document": SIERP_DOC}).status_code == 422

    def test_check_stream(self, client):
        payload = {"filter": "lattice.pseudocomplement", "samples": 4}
        with client.stream("POST", "/check", json=payload) as response:
            lines = [json.loads(line) for line in response.iter_lines() if line]
        assert lines[-1]["summary"]["failed"] == 0
        assert all(r.get("verdict") == "pass" for r in lines[:-1])

    def test_check_empty_filter(self, client):
        with client.stream("POST", "/check", json={"filter": "nonexistent"}) as response:
            lines = [json.loads(line) for line in response.iter_lines() if line]
        assert lines == [{"summary": {"total": 0, "failed": 0, "skipped": 0}}]

    def test_check_streams_are_deterministic(self, client):
        payload = {"filter": "congruence.open", "seed": 3, "samples": 4}
        def run():
            with client.stream("POST", "/check", json=payload) as response:
                return [line for line in response.iter_lines() if line]
        assert run() == run()


class TestCli:
    def test_validate(self, tmp_path, capsys):
        path = tmp_path / "c3.json"
        path.write_text(json.dumps(C3_DOC))
        assert cli_main(["validate", str(path)]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["valid"]

    def test_validate_schema_error_exit_2(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"mystery": 1}))
        assert cli_main(["validate", str(path)]) == 2

    def test_missing_file_exit_2(self):
        assert cli_main(["validate", "/nonexistent.json"]) == 2

    def test_construct(self, tmp_path, capsys):
        path = tmp_path / "c3.json"
        path.write_text(json.dumps(C3_DOC))
        code = cli_main(["construct", "pseudocomplement", f"frame=@{path}", "element={p}"])
        assert code == 0
        assert json.loads(capsys.readouterr().out) == {"element": "{}"}

    def test_construct_bad_args_exit_2(self, capsys):
        assert cli_main(["construct", "pseudocomplement", "oops"]) == 2

    def test_check_pass_exit_0(self, capsys):
        code = cli_main(["check", "--filter", "lattice.pseudocomplement", "--samples", "4"])
        captured = capsys.readouterr().out.strip().splitlines()
        assert code == 0
        assert json.loads(captured[-1])["summary"]["failed"] == 0

    def test_check_empty_filter_exit_0(self, capsys):
        assert cli_main(["check", "--filter", "nonexistent"]) == 0

    def test_check_failure_exit_1(self, capsys, monkeypatch):
        from pfw.checks import CheckReport
        import pfw.service.app as app_module

        def failing_suite(filter_str, config):
            yield CheckReport("stub.failing", "instance", "fail", {"why": "stub"})

        monkeypatch.setattr(app_module, "run_suite", failing_suite)
        assert cli_main(["check"]) == 1
        lines = capsys.readouterr().out.strip().splitlines()
        assert json.loads(lines[-1])["summary"]["failed"] == 1

    def test_caps_env_override(self, monkeypatch):
        monkeypatch.setenv("PFW_CAPS", json.dumps({"max_ji": 7}))
        fresh = TestClient(create_app())
        assert fresh.get("/caps").json()["max_ji"] == 7

    def test_gen_deterministic(self, capsys):
        assert cli_main(["gen", "frame", "--seed", "2", "--count", "2"]) == 0
        first = capsys.readouterr().out
        assert cli_main(["gen", "frame", "--seed", "2", "--count", "2"]) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_render(self, tmp_path, capsys):
        path = tmp_path / "c3.json"
        path.write_text(json.dumps(C3_DOC))
        assert cli_main(["render", "--dot", str(path)]) == 0
        assert capsys.readouterr().out.startswith("digraph hasse")
