"""Service endpoints: reports, error envelopes, config plumbing."""

import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from verlinde_kit.config import Config
from verlinde_kit.service import create_app

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(Config()))


def _fixture(name):
    with open(FIXTURES / name) as fh:
        return json.load(fh)


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    body = resp.json()
    assert body["schema"] == "verlinde-kit/1"
    assert body["status"] == "ok"
    assert body["name"] == "verlinde-kit"


def test_lie_a2(client):
    resp = client.post("/lie", json={"family": "A", "rank": 2})
    assert resp.status_code == 200
    body = resp.json()
    assert body["schema"] == "verlinde-kit/1"
    assert body["cartan"] == [[2, -1], [-1, 2]]
    assert body["dual_coxeter"] == 3
    assert len(body["positive_roots"]) == 3
    assert body["classical_exponents"] == [1, 2]
    assert body["weyl_order"] == 6
    assert body["center"] == {"order": 3, "cyclic_orders": [3]}
    assert body["simply_laced"] is True


def test_lie_g2(client):
    body = client.post("/lie", json={"family": "G", "rank": 2}).json()
    assert body["dual_coxeter"] == 4
    assert body["coxeter_number"] == 6
    assert body["classical_exponents"] == [1, 5]
    assert body["weyl_order"] == 12
    assert body["simply_laced"] is False
    assert body["center"]["order"] == 1


def test_lie_big_rank_skips_enumeration(client):
    # the Weyl order comes from the exponent product, not enumeration
    body = client.post("/lie", json={"family": "E", "rank": 8}).json()
    assert body["weyl_order"] == 696729600
    assert body["classical_exponents"] == [1, 7, 11, 13, 17, 19, 23, 29]


def test_lie_invalid_type(client):
    resp = client.post("/lie", json={"family": "E", "rank": 9})
    assert resp.status_code == 422
    err = resp.json()["error"]
    assert err["type"] == "InvalidType"
    assert err["exit_code"] == 2


def test_unknown_request_field(client):
    resp = client.post("/lie", json={"family": "A", "rank": 2, "bogus": 1})
    assert resp.status_code == 400
    err = resp.json()["error"]
    assert err["type"] == "SchemaError"
    assert err["exit_code"] == 4


def test_fusion_ising_verified(client):
    resp = client.post(
        "/fusion",
        json={"family": "A", "rank": 1, "level": 2, "verify": True},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["verified"] is True
    assert body["quantum_coxeter"] == 4
    assert body["basis"] == [[1], [2], [3]]
    assert body["unit"] == [1]
    table = {
        (tuple(e["k"]), tuple(e["j"]), tuple(e["s"])): e["n"]
        for e in body["entries"]
    }
    assert len(table) == 10
    assert table[(2,), (2,), (1,)] == 1
    assert table[(2,), (2,), (3,)] == 1
    assert ((2,), (2,), (2,)) not in table


def test_fusion_single_row(client):
    body = client.post(
        "/fusion",
        json={"family": "A", "rank": 1, "level": 2, "k": [2], "j": [2]},
    ).json()
    assert body["verified"] is None
    assert sorted(tuple(e["s"]) for e in body["entries"]) == [(1,), (3,)]


def test_fusion_z3(client):
    body = client.post(
        "/fusion", json={"family": "A", "rank": 2, "level": 1}
    ).json()
    # group ring of Z_3: every product is a single basis label
    assert len(body["basis"]) == 3
    assert len(body["entries"]) == 9
    assert all(e["n"] == 1 for e in body["entries"])


def test_fusion_trivial_level_zero(client):
    body = client.post(
        "/fusion", json={"family": "A", "rank": 1, "level": 0}
    ).json()
    assert body["basis"] == [[1]]
    assert body["entries"] == [{"k": [1], "j": [1], "s": [1], "n": 1}]


def test_fusion_bad_label(client):
    resp = client.post(
        "/fusion",
        json={"family": "A", "rank": 1, "level": 2, "k": [9], "j": [1]},
    )
    assert resp.status_code == 422
    assert resp.json()["error"]["exit_code"] == 2


def test_fusion_one_sided_row(client):
    resp = client.post(
        "/fusion", json={"family": "A", "rank": 1, "level": 2, "k": [2]}
    )
    assert resp.status_code == 400
    assert resp.json()["error"]["exit_code"] == 4


def test_fusion_tight_tolerance(client):
    # the character-sum oracle must refuse to round at 1e-18
    resp = client.post(
        "/fusion",
        json={
            "family": "A",
            "rank": 2,
            "level": 2,
            "verify": True,
            "config": {"tolerance": 1e-18},
        },
    )
    assert resp.status_code == 422
    assert resp.json()["error"]["type"] == "RoundingFailure"


def test_torus_cap(client):
    resp = client.post(
        "/fusion",
        json={
            "family": "A",
            "rank": 1,
            "level": 8,
            "config": {"torus_cap": 5},
        },
    )
    assert resp.status_code == 413
    err = resp.json()["error"]
    assert err["type"] == "TorusTooLarge"
    assert err["exit_code"] == 3


def test_rep_validate_ok(client):
    resp = client.post("/rep/validate", json={"quiver": _fixture("a3.json")})
    assert resp.status_code == 200
    body = resp.json()
    assert body["ok"] is True
    axioms = {c["axiom"] for c in body["checks"]}
    assert {"integrality", "unit", "star", "homomorphism", "grading"} <= axioms


def test_rep_validate_wrong_level(client):
    body = client.post(
        "/rep/validate", json={"quiver": _fixture("a3_wronglevel.json")}
    ).json()
    assert body["ok"] is False
    bad = [c["axiom"] for c in body["checks"] if not c["ok"]]
    assert "homomorphism" in bad


def test_rep_level_override(client):
    # a correct quiver pushed to the wrong level fails the same way
    body = client.post(
        "/rep/validate", json={"quiver": _fixture("a3.json"), "level": 4}
    ).json()
    assert body["ok"] is False


def test_rep_spectrum_e6(client):
    body = client.post(
        "/rep/spectrum", json={"quiver": _fixture("e6.json")}
    ).json()
    assert body["dimension"] == 6
    assert body["total"] == 6
    assert len(body["points"]) == 11
    ones = [
        p["point"] for p in body["points"] if p["multiplicity"] == 1
    ]
    assert ones == [["1/24"], ["1/6"], ["5/24"], ["7/24"], ["1/3"], ["11/24"]]


def test_rep_exponents_a3(client):
    body = client.post(
        "/rep/exponents", json={"quiver": _fixture("a3.json")}
    ).json()
    assert body["matches_spectrum"] is True
    assert body["quantum_coxeter"] == 4
    assert body["orbit"] == [[-2], [2]]
    for entry in body["entries"]:
        assert entry["m_phi0"] == entry["m_pi"] == 1
        assert entry["m_phi"] == 2


def test_rep_roots_a3(client):
    body = client.post("/rep/roots", json={"quiver": _fixture("a3.json")}).json()
    assert body["count"] == 12
    assert body["distinct"] == 12
    assert all(r["norm2"] == 2 for r in body["roots"])
    assert {r["vertex"] for r in body["roots"]} == {"v0", "v1", "v2"}


def test_rep_malformed_quiver(client):
    resp = client.post("/rep/validate", json={"quiver": {"vertices": []}})
    assert resp.status_code == 400
    assert resp.json()["error"]["exit_code"] == 4


def test_dynkin_check_pass(client):
    body = client.post("/dynkin/check", json={"quiver": _fixture("e6.json")}).json()
    assert body["ok"] is True
    assert body["natural"] is True
    assert body["simple"] is True
    assert body["graded"] is True
    assert body["reason"] is None
    assert body["report"]["ok"] is True


def test_dynkin_check_off_level(client):
    for shift in (-1, 1):
        body = client.post(
            "/dynkin/check",
            json={"quiver": _fixture("a3.json"), "level": 2 + shift},
        ).json()
        assert body["ok"] is False
        assert body["reason"]


def test_dynkin_missing_fields(client):
    resp = client.post("/dynkin/check", json={"quiver": {"foo": 1}})
    assert resp.status_code == 400
    assert resp.json()["error"]["type"] == "SchemaError"


def test_deterministic_output(client):
    payload = {"family": "A", "rank": 1, "level": 4}
    first = client.post("/fusion", json=payload).text
    second = client.post("/fusion", json=payload).text
    assert first == second
