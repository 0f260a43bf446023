"""HTTP service behavior over a live socket, plus the pure request handler."""

import concurrent.futures
import json

import httpx
import pytest

from croissant_rai import builtin
from croissant_rai.service import MAX_BODY_BYTES, handle_request

from conftest import CORPUS, FIXTURES


def read_fixture(name: str) -> bytes:
    return (FIXTURES / f"{name}.json").read_bytes()


# ---------------------------------------------------------------------------
# routes, status codes, content types
# ---------------------------------------------------------------------------


def test_health(service_url):
    response = httpx.get(f"{service_url}/v1/health")
    assert response.status_code == 200
    assert response.headers["content-type"].startswith("application/json")
    assert response.json() == {"status": "ok", "version": "1.0"}
    assert response.content.endswith(b"\n")


def test_vocabulary_matches_golden(service_url):
    response = httpx.get(f"{service_url}/v1/vocabulary")
    assert response.status_code == 200
    assert response.content == (FIXTURES / "vocabulary.json").read_bytes()


def test_validate_bare_document(service_url):
    response = httpx.post(
        f"{service_url}/v1/validate", content=read_fixture("dices-350")
    )
    assert response.status_code == 200
    payload = response.json()
    assert payload["conformant"] is True
    assert payload["mode"] == "lenient"


def test_validate_envelope_with_mode(service_url):
    envelope = {
        "document": json.loads(read_fixture("bigscience-roots")),
        "mode": "strict",
    }
    response = httpx.post(f"{service_url}/v1/validate", json=envelope)
    payload = response.json()
    assert payload["mode"] == "strict"
    assert payload["conformant"] is False
    codes = {d["code"] for d in payload["diagnostics"]}
    assert "RAI003" in codes


def test_validate_envelope_default_mode_is_lenient(service_url):
    envelope = {"document": json.loads(read_fixture("bigscience-roots"))}
    response = httpx.post(f"{service_url}/v1/validate", json=envelope)
    payload = response.json()
    assert payload["mode"] == "lenient"
    assert payload["conformant"] is True


def test_validate_invalid_mode_is_rejected(service_url):
    envelope = {"document": {}, "mode": "pedantic"}
    response = httpx.post(f"{service_url}/v1/validate", json=envelope)
    assert response.status_code == 400
    assert "error" in response.json()


def test_coverage_route(service_url):
    response = httpx.post(
        f"{service_url}/v1/coverage", content=read_fixture("dices-350")
    )
    assert response.status_code == 200
    payload = response.json()
    assert payload["documentedTotal"] == 4
    labeling = [u for u in payload["useCases"] if u["useCase"] == "data-labeling"][0]
    assert labeling["ratio"] == 0.6667


def test_malformed_body_is_400(service_url):
    for body in (b"{broken", b"[1,2]", b"null", b'"text"', b""):
        response = httpx.post(f"{service_url}/v1/validate", content=body)
        assert response.status_code == 400, body
        error = response.json()
        assert set(error) == {"error"}


def test_duplicate_key_body_is_400(service_url):
    response = httpx.post(
        f"{service_url}/v1/validate", content=b'{"name": "a", "name": "b"}'
    )
    assert response.status_code == 400


def test_envelope_document_must_be_object(service_url):
    response = httpx.post(
        f"{service_url}/v1/validate", content=b'{"document": [1, 2]}'
    )
    assert response.status_code == 400


def test_unknown_path_is_404(service_url):
    assert httpx.get(f"{service_url}/v1/nonsense").status_code == 404
    assert httpx.get(f"{service_url}/").status_code == 404


def test_wrong_method_is_405(service_url):
    assert httpx.get(f"{service_url}/v1/validate").status_code == 405
    assert httpx.post(f"{service_url}/v1/health", content=b"{}").status_code == 405
    assert httpx.post(f"{service_url}/v1/vocabulary", content=b"{}").status_code == 405


def test_oversized_body_is_413(service_url):
    # Declare an oversized payload; the server must refuse before reading it.
    import http.client
    from urllib.parse import urlparse

    parsed = urlparse(service_url)
    conn = http.client.HTTPConnection(parsed.hostname, parsed.port, timeout=10)
    try:
        conn.putrequest("POST", "/v1/validate", skip_accept_encoding=True)
        conn.putheader("Host", parsed.netloc)
        conn.putheader("Content-Length", str(MAX_BODY_BYTES + 1))
        conn.endheaders()
        response = conn.getresponse()
        assert response.status == 413
    finally:
        conn.close()


def test_missing_content_length_is_400(service_url):
    import http.client
    from urllib.parse import urlparse

    parsed = urlparse(service_url)
    conn = http.client.HTTPConnection(parsed.hostname, parsed.port, timeout=10)
    try:
        conn.putrequest("POST", "/v1/validate", skip_accept_encoding=True)
        conn.putheader("Host", parsed.netloc)
        conn.endheaders()
        response = conn.getresponse()
        assert response.status == 400
    finally:
        conn.close()


def test_options_preflight(service_url):
    response = httpx.options(f"{service_url}/v1/validate")
    assert response.status_code == 204
    assert response.headers["access-control-allow-origin"] == "*"
    assert "POST" in response.headers["access-control-allow-methods"]


def test_cors_headers_on_every_response(service_url):
    for get in (
        httpx.get(f"{service_url}/v1/health"),
        httpx.get(f"{service_url}/v1/nonsense"),
        httpx.post(f"{service_url}/v1/validate", content=b"{}"),
        httpx.post(f"{service_url}/v1/validate", content=b"broken"),
    ):
        assert get.headers["access-control-allow-origin"] == "*"


def test_query_string_is_ignored_for_routing(service_url):
    response = httpx.get(f"{service_url}/v1/health?probe=1")
    assert response.status_code == 200


# ---------------------------------------------------------------------------
# parity with the command line
# ---------------------------------------------------------------------------


def test_validate_bytes_match_cli(service_url, cli):
    for fixture in CORPUS:
        body = read_fixture(fixture)
        response = httpx.post(f"{service_url}/v1/validate", content=body)
        expected = cli("validate", str(FIXTURES / f"{fixture}.json"), "--format", "json")
        assert response.content == expected.stdout_bytes, fixture


def test_coverage_bytes_match_cli(service_url, cli):
    for fixture in CORPUS:
        body = read_fixture(fixture)
        response = httpx.post(f"{service_url}/v1/coverage", content=body)
        expected = cli("coverage", str(FIXTURES / f"{fixture}.json"), "--format", "json")
        assert response.content == expected.stdout_bytes, fixture


def test_strict_envelope_matches_cli_strict(service_url, cli):
    envelope = {
        "document": json.loads(read_fixture("bigscience-roots")),
        "mode": "strict",
    }
    response = httpx.post(f"{service_url}/v1/validate", json=envelope)
    expected = cli(
        "validate",
        str(FIXTURES / "bigscience-roots.json"),
        "--format",
        "json",
        "--strict",
    )
    assert response.content == expected.stdout_bytes


def test_vocabulary_matches_cli_vocab_json(service_url, cli):
    response = httpx.get(f"{service_url}/v1/vocabulary")
    expected = cli("vocab", "--format", "json")
    assert response.content == expected.stdout_bytes


# ---------------------------------------------------------------------------
# statelessness and concurrency
# ---------------------------------------------------------------------------


def test_statelessness_across_requests(service_url):
    bad = read_fixture("hls-burn-scars")
    good = read_fixture("dices-350")
    first = httpx.post(f"{service_url}/v1/validate", content=good).content
    httpx.post(f"{service_url}/v1/validate", content=bad)
    httpx.post(f"{service_url}/v1/coverage", content=bad)
    again = httpx.post(f"{service_url}/v1/validate", content=good).content
    assert first == again


def test_concurrent_identical_requests_identical_bodies(service_url):
    body = read_fixture("bigscience-roots")

    def post(_):
        return httpx.post(f"{service_url}/v1/validate", content=body).content

    with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(post, range(32)))
    assert len(set(results)) == 1


def test_mixed_concurrent_routes(service_url):
    bodies = {name: read_fixture(name) for name in CORPUS}

    def call(i):
        name = CORPUS[i % len(CORPUS)]
        if i % 2:
            return name, "validate", httpx.post(
                f"{service_url}/v1/validate", content=bodies[name]
            ).content
        return name, "coverage", httpx.post(
            f"{service_url}/v1/coverage", content=bodies[name]
        ).content

    with concurrent.futures.ThreadPoolExecutor(max_workers=6) as pool:
        results = list(pool.map(call, range(24)))

    reference = {}
    for name, route, content in results:
        key = (name, route)
        reference.setdefault(key, content)
        assert reference[key] == content


# ---------------------------------------------------------------------------
# pure handler (no socket)
# ---------------------------------------------------------------------------


def test_handle_request_is_pure_and_reusable(registry):
    body = read_fixture("dices-350")
    first = handle_request("POST", "/v1/validate", body, registry)
    second = handle_request("POST", "/v1/validate", body, registry)
    assert first.status == 200
    assert first.body == second.body


def test_handle_request_404_and_405(registry):
    assert handle_request("GET", "/v2/validate", b"", registry).status == 404
    assert handle_request("DELETE", "/v1/validate", b"", registry).status == 405
    assert handle_request("POST", "/v1/health", b"", registry).status == 405


def test_handle_request_options(registry):
    response = handle_request("OPTIONS", "/v1/anything", b"", registry)
    assert response.status == 204
    assert response.body == b""


def test_error_bodies_are_json_with_trailing_newline(registry):
    response = handle_request("POST", "/v1/validate", b"oops", registry)
    assert response.status == 400
    assert response.body.endswith(b"\n")
    assert "error" in json.loads(response.body)
