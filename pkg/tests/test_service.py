"""HTTP service: session lifecycle, error mapping, journals, expiry."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from nadeum.service import create_app


@pytest.fixture()
def client() -> TestClient:
    return TestClient(create_app(session_ttl=3600))


def _create(client: TestClient, formula: str) -> tuple[str, dict]:
    response = client.post("/sessions", json={"formula": formula})
    assert response.status_code == 200, response.text
    body = response.json()
    return body["id"], body["view"]


def test_create_and_complete_test1(client: TestClient):
    sid, view = _create(client, "False -> False")
    assert view["goals"] == [{"assumptions": [], "conclusion": "False -> False"}]
    assert view["step"] == 1
    assert "Imp_I" in view["applicable_rules"]

    r = client.post(f"/sessions/{sid}/apply", json={"rule": "Imp_I"})
    assert r.json()["goals"] == [{"assumptions": ["False"], "conclusion": "False"}]
    r = client.post(f"/sessions/{sid}/apply", json={"rule": "Assume"})
    assert r.json()["completed"] is True
    assert r.json()["goals"] == []
    assert r.json()["applicable_rules"] == []


def test_view_is_event_sourced(client: TestClient):
    sid, _ = _create(client, "A -> A")
    client.post(f"/sessions/{sid}/apply", json={"rule": "Imp_I"})
    client.post(f"/sessions/{sid}/undo")
    client.post(f"/sessions/{sid}/apply", json={"rule": "Boole"})
    view = client.get(f"/sessions/{sid}").json()
    assert view["step"] == 2
    assert view["goals"][0]["conclusion"] == "False"
    assert view["goals"][0]["assumptions"] == ["(A -> A) -> False"]


def test_views_never_show_de_bruijn_indices(client: TestClient):
    sid, view = _create(client, "uni x. uni y. A(x, y) -> uni x. A(x, x)")
    text = json.dumps(view)
    client.post(f"/sessions/{sid}/apply", json={"rule": "Imp_I"})
    r = client.post(
        f"/sessions/{sid}/apply", json={"rule": "Uni_I", "params": {"fresh": "c"}}
    )
    text += json.dumps(r.json())
    assert "Var" not in text and "var" not in text.replace("variable", "")


def test_apply_rejection_is_409_with_kernel_payload(client: TestClient):
    sid, _ = _create(client, "A")
    r = client.post(f"/sessions/{sid}/apply", json={"rule": "Assume"})
    assert r.status_code == 409
    assert r.json()["error"] == "NotApplicable"
    r = client.post(
        f"/sessions/{sid}/apply",
        json={"rule": "Uni_E", "params": {"body": {"pre": ["B", []]}, "witness": {"fun": ["c", []]}}},
    )
    assert r.status_code == 409
    assert r.json()["error"] == "ShapeMismatch"


def test_bad_application_is_400(client: TestClient):
    sid, _ = _create(client, "A")
    r = client.post(f"/sessions/{sid}/apply", json={"rule": "Frobnicate"})
    assert r.status_code == 400
    r = client.post(f"/sessions/{sid}/apply", json={"rule": "Imp_E", "params": {}})
    assert r.status_code == 400


def test_undo_roundtrip_and_conflict(client: TestClient):
    sid, _ = _create(client, "A -> A")
    client.post(f"/sessions/{sid}/apply", json={"rule": "Imp_I"})
    r = client.post(f"/sessions/{sid}/undo")
    assert r.status_code == 200
    assert r.json()["step"] == 1
    r = client.post(f"/sessions/{sid}/undo")
    assert r.status_code == 409
    assert r.json()["error"] == "NothingToUndo"


def test_parse_and_arity_errors(client: TestClient):
    r = client.post("/sessions", json={"formula": "A -> "})
    assert r.status_code == 400
    assert r.json()["error"] == "parse"
    assert r.json()["offset"] == 5
    r = client.post("/sessions", json={"formula": "A(c) /\\ A(c, c)"})
    assert r.status_code == 400
    assert r.json()["error"] == "arity"


def test_unknown_session_404(client: TestClient):
    assert client.get("/sessions/nope").status_code == 404
    assert client.post("/sessions/nope/undo").status_code == 404


def test_hint_on_drinker(client: TestClient):
    r = client.post("/sessions", json={"exercise": "test-9"})
    sid = r.json()["id"]
    feedback = client.get(f"/sessions/{sid}/hint").json()["feedback"]
    assert feedback[0]["status"] == "provable"


def test_hint_refutes_falsity(client: TestClient):
    sid, _ = _create(client, "False")
    feedback = client.get(f"/sessions/{sid}/hint").json()["feedback"]
    assert feedback[0]["status"] == "refuted"


def test_trim_endpoint(client: TestClient):
    sid, _ = _create(client, "A -> A")
    client.post(f"/sessions/{sid}/apply", json={"rule": "Boole"})
    client.post(f"/sessions/{sid}/undo")
    client.post(f"/sessions/{sid}/apply", json={"rule": "Imp_I"})
    client.post(f"/sessions/{sid}/apply", json={"rule": "Assume"})
    script = client.post(f"/sessions/{sid}/trim").json()
    assert [s["rule"] for s in script["steps"]] == ["Imp_I", "Assume"]


def test_certificate_endpoint(client: TestClient):
    sid, _ = _create(client, "False -> False")
    r = client.get(f"/sessions/{sid}/certificate")
    assert r.status_code == 409
    client.post(f"/sessions/{sid}/apply", json={"rule": "Imp_I"})
    client.post(f"/sessions/{sid}/apply", json={"rule": "Assume"})
    r = client.get(f"/sessions/{sid}/certificate")
    assert r.status_code == 200
    assert "OK (Imp Falsity Falsity) []" in r.text


def test_exercise_endpoints(client: TestClient):
    listing = client.get("/exercises").json()["exercises"]
    assert len(listing) == 25
    one = client.get("/exercises/test-9").json()
    assert one["formula"] == "exi x. (A(x) -> uni x. A(x))"
    assert client.get("/exercises/none").status_code == 404

    r = client.get("/exercises/test-1/reveal", params={"steps": 1})
    assert r.status_code == 200
    assert [s["rule"] for s in r.json()["steps"]] == ["Imp_I"]
    assert client.get("/exercises/assign-4/reveal", params={"steps": 1}).status_code == 403
    assert client.get("/exercises/hint-9/reveal", params={"steps": 1}).status_code == 403
    assert client.get("/exercises/test-1/reveal", params={"steps": 99}).status_code == 400


def test_create_from_exercise_links_id(client: TestClient):
    r = client.post("/sessions", json={"exercise": "test-1"})
    view = r.json()["view"]
    assert view["exercise"] == "test-1"
    assert view["goals"][0]["conclusion"] == "False -> False"
    assert client.post("/sessions", json={"exercise": "none"}).status_code == 404


def test_journal_recovery(tmp_path: Path):
    journal = tmp_path / "journal"
    app = create_app(journal_dir=journal, session_ttl=3600)
    with TestClient(app) as client:
        sid, _ = _create(client, "A -> A")
        client.post(f"/sessions/{sid}/apply", json={"rule": "Imp_I"})
        client.post(f"/sessions/{sid}/undo")
        client.post(f"/sessions/{sid}/apply", json={"rule": "Imp_I"})

    recovered = create_app(journal_dir=journal, session_ttl=3600)
    with TestClient(recovered) as client:
        view = client.get(f"/sessions/{sid}").json()
        assert view["step"] == 2
        assert view["goals"] == [{"assumptions": ["A"], "conclusion": "A"}]


def test_session_expiry_with_fake_clock():
    now = [1000.0]
    app = create_app(session_ttl=10, clock=lambda: now[0])
    with TestClient(app) as client:
        sid, _ = _create(client, "A -> A")
        assert client.get(f"/sessions/{sid}").status_code == 200
        now[0] += 11
        assert client.get(f"/sessions/{sid}").status_code == 404
