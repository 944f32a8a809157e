"""HTTP endpoints: records, error mapping, determinism."""
import pytest
from fastapi.testclient import TestClient

from cncut.fileio import format_bin_packing, format_multicolored, parse_instance
from cncut.service.app import app

P5 = "p cnc 5 4\ne 1 2\ne 2 3\ne 3 4\ne 4 5\n"
K4 = "p cnc 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n"
PATH3_EXPR = "j(2,3,u(j(1,2,u(v(1),v(2))),v(3)))"


@pytest.fixture()
def client():
    return TestClient(app)


def test_healthz(client):
    body = client.get("/healthz").json()
    assert body["status"] == "ok"


def test_solve_oracle_on_path(client):
    r = client.post("/solve", json={"algo": "oracle", "graph": P5, "k": 1})
    assert r.status_code == 200
    body = r.json()
    assert body["pairs"] == 2
    assert body["witness"] == [3]
    assert body["optimal"] is True
    assert "decision" not in body  # no bound supplied


def test_solve_decision_against_bound(client):
    r = client.post("/solve", json={"algo": "maxleaf", "graph": P5, "k": 1, "x": 2})
    assert r.json()["decision"] is True
    r = client.post("/solve", json={"algo": "maxleaf", "graph": P5, "k": 1, "x": 1})
    assert r.json()["decision"] is False


def test_solve_budget_from_file_b_line(client):
    text = "p cnc 5 4\nb 1 2\ne 1 2\ne 2 3\ne 3 4\ne 4 5\n"
    body = client.post("/solve", json={"algo": "vi", "graph": text}).json()
    assert body["budget"] == 1 and body["decision"] is True


def test_solve_apx_reports_eps_and_estimate_flag(client):
    r = client.post(
        "/solve", json={"algo": "tw-apx", "graph": P5, "k": 1, "eps": 0.5}
    )
    body = r.json()
    assert body["optimal"] is False
    assert body["eps"] == 0.5
    assert body["pairs"] <= 3  # floor(1.5 * opt) with opt = 2


def test_solve_cw_uses_expression(client):
    r = client.post("/solve", json={"algo": "cw", "expr": PATH3_EXPR, "k": 1})
    assert r.json()["pairs"] == 0


def test_solve_cw_cross_checks_supplied_graph(client):
    p3 = "p cnc 3 2\ne 1 2\ne 2 3\n"
    r = client.post("/solve", json={"algo": "cw", "expr": PATH3_EXPR, "graph": p3, "k": 0})
    assert r.status_code == 200
    triangle = "p cnc 3 3\ne 1 2\ne 1 3\ne 2 3\n"
    r = client.post(
        "/solve", json={"algo": "cw", "expr": PATH3_EXPR, "graph": triangle, "k": 0}
    )
    assert r.status_code == 400


def test_error_mapping(client):
    assert client.post("/solve", json={"algo": "cw", "k": 1}).status_code == 400
    assert client.post("/solve", json={"algo": "oracle", "graph": "junk", "k": 0}).status_code == 400
    assert client.post("/solve", json={"algo": "nope", "graph": P5}).status_code == 422
    r = client.post("/solve", json={"algo": "oracle", "graph": P5, "k": 1, "caps": {"enum": 1}})
    assert r.status_code == 409
    body = r.json()
    assert body["cap"] == 1 and body["value"] == 6
    # unknown cap names are input errors, not refusals
    r = client.post("/solve", json={"algo": "oracle", "graph": P5, "k": 1, "caps": {"zzz": 5}})
    assert r.status_code == 400


def test_missing_budget_is_an_input_error(client):
    assert client.post("/solve", json={"algo": "oracle", "graph": P5}).status_code == 400


def test_count_rows(client):
    body = client.post("/count", json={"expr": PATH3_EXPR}).json()
    assert body["width"] == 3 and body["n"] == 3
    rows = [(row["k"], row["min"], row["count"]) for row in body["rows"]]
    assert rows == [(0, 3, 1), (1, 0, 1), (2, 0, 3), (3, 0, 1)]
    assert body["rows"][1]["witness"] == [2]


def test_count_single_budget(client):
    body = client.post("/count", json={"expr": PATH3_EXPR, "k": 1}).json()
    assert [row["k"] for row in body["rows"]] == [1]


def test_params_reports_cycle_rank(client):
    body = client.post("/params", json={"graph": K4}).json()
    assert body["fes"] == 3
    assert body["max_degree"] == 3
    assert body["components"] == 1


def test_generate_is_deterministic(client):
    a = client.post("/generate", json={"n": 8, "p": 0.5, "seed": 7}).json()
    b = client.post("/generate", json={"n": 8, "p": 0.5, "seed": 7}).json()
    assert a == b
    assert a["graph"].startswith("p cnc 8 ")
    assert client.post("/generate", json={"n": 4, "p": 1.5, "seed": 0}).status_code == 400


def test_verify_witness(client):
    r = client.post("/verify-witness", json={"graph": P5, "deleted": [3], "k": 1, "x": 2})
    body = r.json()
    assert body["pairs"] == 2
    assert body["pass"] is True and body["size_ok"] is True and body["pairs_ok"] is True
    r = client.post("/verify-witness", json={"graph": P5, "deleted": [1], "x": 2})
    assert r.json()["pass"] is False
    r = client.post("/verify-witness", json={"graph": P5, "deleted": [9], "x": 2})
    assert r.status_code == 400
    r = client.post("/verify-witness", json={"graph": P5, "deleted": [3]})
    assert r.status_code == 400  # nothing to check against


def test_reduce_rubp_round_trips(client):
    source = format_bin_packing(2, [(1, (1, 2)), (1, (1, 2))])
    body = client.post("/reduce/rubp", json={"source": source}).json()
    assert body["constants"]["pair_bound"] == 3_008_492
    assert body["expanded_n"] == 3476
    assert body["weighted_n"] == len(body["roles"]) == 56
    inst = parse_instance(body["instance"])
    assert inst.graph.n == 3476 and inst.budget == 2


def test_reduce_mc_and_cap(client):
    source = format_multicolored(2, 2, [(1, 1, 2, 1)])
    body = client.post("/reduce/mc", json={"source": source}).json()
    assert body["expanded_n"] == 16
    assert body["constants"]["budget"] == 2
    r = client.post("/reduce/mc", json={"source": source, "caps": {"vertex": 10}})
    assert r.status_code == 409
