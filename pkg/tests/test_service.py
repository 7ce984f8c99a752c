import json

from fastapi.testclient import TestClient

from hullkit.algebra import algebra_to_dict, make_set, make_sym_group
from hullkit.errors import TheoremViolationError
from hullkit.semirings import boolean_semiring, build_matrix_semiring, semiring_to_dict
from hullkit.service.app import _hullkit_error, app

client = TestClient(app)
SET3 = algebra_to_dict(make_set(3))
S3 = algebra_to_dict(make_sym_group(3))
M2B = semiring_to_dict(build_matrix_semiring(boolean_semiring(), 2))


def test_health():
    body = client.get("/health").json()
    assert body["status"] == "ok" and body["version"]


# --- /end ---------------------------------------------------------------

def test_end_full_transformation_monoid():
    r = client.post("/end", json={"algebra": SET3})
    assert r.status_code == 200
    assert r.json() == {
        "order": 27,
        "units": 6,
        "idempotents": 10,
        "d_class_sizes": [18, 6, 3],
    }


def test_end_with_generators_and_dot():
    r = client.post("/end", json={"algebra": S3, "gens": [2, 3], "dot": True})
    body = r.json()
    assert body["order"] == 10 and body["d_class_sizes"] == [6, 3, 1]
    assert body["dot"].startswith("digraph eggbox")


def test_end_bad_generators():
    assert client.post("/end", json={"algebra": S3, "gens": [2]}).status_code == 400
    assert client.post("/end", json={"algebra": S3, "gens": [99]}).status_code == 400


# --- /hull ----------------------------------------------------------------

def test_hull_of_rank_ideal():
    r = client.post("/hull", json={"algebra": SET3, "ideal": "rank:2"})
    body = r.json()
    assert body["ideal_order"] == 3
    assert body["counts"]["hull"] == 27 and body["counts"]["left"] == 1
    assert body["realized"]["maps"]["iso"] and body["realized"]["endos"]["iso"]
    assert not body["morphisms"]["pi_left_injective"]
    assert body["skipped"] == []


def test_hull_of_explicit_elements():
    consts = [[0, 0, 0], [1, 1, 1], [2, 2, 2]]
    r = client.post("/hull", json={"algebra": SET3, "ideal_elements": consts})
    assert r.json()["counts"]["hull"] == 27
    r = client.post(
        "/hull", json={"algebra": SET3, "ideal": "rank:2", "ideal_elements": consts}
    )
    assert r.status_code == 400  # spec and elements conflict


# --- /quotient and /check ---------------------------------------------------

def test_quotient_collapses_the_even_half():
    r = client.post("/quotient", json={"algebra": S3, "ideal": "non-units"})
    body = r.json()
    assert body["a_mod_size"] == 2 and body["i_mod_order"] == 2
    assert body["k_of_i"] == 1 and body["chain"]["stabilized"]
    assert sorted(set(body["quotient"]["proj"])) == [0, 1]


def test_check_runs_only_requested_properties():
    r = client.post(
        "/check", json={"algebra": SET3, "ideal": "rank:2", "properties": ["rep", "sep"]}
    )
    body = r.json()
    assert body["rep"] is True and body["sep"] is False
    assert "reductive" not in body and "balanced" not in body


def test_check_defaults_to_all_properties():
    r = client.post("/check", json={"algebra": S3, "ideal": "non-units"})
    body = r.json()
    assert body["rep"] and not body["sep"]
    assert body["reductive"] == {"left": True, "right": False, "weak": True}
    assert body["balanced"] == {"all_left": True, "all_right": True}


def test_check_unknown_property():
    r = client.post(
        "/check", json={"algebra": SET3, "ideal": "rank:2", "properties": ["shiny"]}
    )
    assert r.status_code == 400 and "shiny" in r.json()["error"]


# --- /sn and /semiring -------------------------------------------------------

def test_sn_summary_with_analysis():
    r = client.post("/sn", json={"n": 3, "which": "non_aut"})
    body = r.json()
    assert body["order"] == 10 and body["units"] == 6 and body["exact"]
    assert all(body["rules"].values()) and len(body["rules"]) == 5
    assert body["analysis"]["omega_order"] == 28


def test_sn_refuses_six():
    r = client.post("/sn", json={"n": 6})
    assert r.status_code == 400 and r.json()["kind"] == "PreconditionError"


def test_semiring_ideal_from_generators():
    r = client.post("/semiring", json={"semiring": M2B, "ideal_gens": [8]})
    assert r.json() == {
        "hypothesis": True,
        "decomposition": [1, 8],
        "omega_order": 16,
        "bijective": True,
    }


def test_semiring_orthogonal_idempotent_variant():
    r = client.post(
        "/semiring", json={"semiring": M2B, "ideal_gens": [8], "idems": [8, 1]}
    )
    body = r.json()
    assert body["cond1"] and body["cond2"] and body["cond3"]
    assert body["hypothesis"] and body["omega_order"] == 16


def test_semiring_needs_exactly_one_ideal_argument():
    assert client.post("/semiring", json={"semiring": M2B}).status_code == 400
    r = client.post(
        "/semiring", json={"semiring": M2B, "ideal": [0, 8], "ideal_gens": [8]}
    )
    assert r.status_code == 400


# --- error mapping -----------------------------------------------------------

def test_bad_algebra_payload_is_400():
    broken = {"size": 3, "ops": [{"name": "f", "arity": 1, "table": [0]}]}
    r = client.post("/end", json={"algebra": broken})
    assert r.status_code == 400 and r.json()["kind"] == "ParseError"


def test_size_refusal_is_413():
    r = client.post(
        "/check",
        json={
            "algebra": SET3,
            "ideal": "rank:3",
            "properties": ["balanced"],
            "config": {"enumeration_bound": 2},
        },
    )
    assert r.status_code == 413 and r.json()["kind"] == "SizeRefusalError"


def test_request_model_violations_are_422():
    assert client.post("/sn", json={"n": "five"}).status_code == 422


def test_theorem_violation_maps_to_500():
    resp = _hullkit_error(None, TheoremViolationError("boom"))
    assert resp.status_code == 500
    assert json.loads(resp.body) == {"kind": "TheoremViolationError", "error": "boom"}


def test_identical_requests_give_identical_bytes():
    payload = {"algebra": SET3, "ideal": "rank:2"}
    assert client.post("/hull", json=payload).content == client.post(
        "/hull", json=payload
    ).content
