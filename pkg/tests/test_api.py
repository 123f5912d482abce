import math

from fastapi.testclient import TestClient
from pytest import approx, fixture

from src.api.main import app
from src.gaussian.states import local_entropy


@fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_root(client):
    body = client.get("/").json()
    assert body["features"] == ["state", "criteria", "measures", "channel"]


def test_state(client):
    response = client.get("/state/", params={"r": 1, "p": 0.5})
    assert response.status_code == 200
    assert response.json()["nu"] == approx(3.296299, abs=1e-6)


def test_state_rejects_out_of_range_p(client):
    assert client.get("/state/", params={"r": 1, "p": 1.5}).status_code == 422
    assert client.get("/state/", params={"r": -1, "p": 0.5}).status_code == 422


def test_criteria_handles_infinite_threshold(client):
    body = client.get("/criteria/", params={"r": 0, "p": 0.3}).json()
    assert body["ccnr_threshold"] is None
    assert body["realigned_norm"] == approx(0.5, abs=1e-12)


def test_measures_in_bits(client):
    body = client.get("/measures/", params={"r": 1, "p": 1, "bits": True}).json()
    assert body["units"] == "bits"
    assert body["eof"] == approx(local_entropy(1.0) / math.log(2.0), rel=1e-12)


def test_channel(client):
    body = client.get("/channel/", params={"r": 0.1, "p": 1, "input": "thermal", "nbar": 2}).json()
    assert body["verdict"] == "less noisy"
    assert client.get("/channel/", params={"r": 1, "p": 0.5, "input": "thermal"}).status_code == 422
    assert client.get("/channel/", params={"r": 1, "p": 0.5, "input": "laser"}).status_code == 422
