"""Stateless JSON service exposing validation, coverage, and the registry.

Request handling is split in two layers: handle_request is a pure
function from (method, path, body, registry) to a response, and the
socket layer delegates to it. Response bodies for /v1/validate and
/v1/coverage are produced by the same renderers as the CLI's JSON
output, so the two are byte-identical by construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .coverage import compute_coverage
from .document import MetadataDocument, ParseError, from_value, load_json
from .reporting import RenderOptions, ReportFormat, render_coverage, render_validation
from .validator import ValidationMode, validate
from .vocabulary import VocabularyRegistry, builtin, registry_to_json

#: Largest accepted request body; larger requests are refused with 413.
MAX_BODY_BYTES = 10 * 1024 * 1024

_JSON_OPTS = RenderOptions(format=ReportFormat.JSON)


@dataclass(frozen=True)
class ServiceResponse:
    status: int
    body: bytes
    content_type: str = "application/json; charset=utf-8"


class _BadRequest(ValueError):
    pass


def _error(status: int, message: str) -> ServiceResponse:
    body = json.dumps({"error": message}, ensure_ascii=False) + "\n"
    return ServiceResponse(status, body.encode("utf-8"))


def vocabulary_json(registry: VocabularyRegistry) -> bytes:
    """Registry dump bytes, shared by the CLI and GET /v1/vocabulary."""
    text = json.dumps(registry_to_json(registry), indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def health_json(registry: VocabularyRegistry) -> bytes:
    payload = {"status": "ok", "version": registry.version}
    return (json.dumps(payload) + "\n").encode("utf-8")


def _document_request(body: bytes) -> tuple[MetadataDocument, ValidationMode]:
    """Decode a request body: either a bare document object or an
    envelope {"document": <object>, "mode": "strict"|"lenient"}."""
    value = load_json(body)
    if not isinstance(value, dict):
        raise _BadRequest("request body must be a JSON object")
    mode = ValidationMode.LENIENT
    if "document" in value:
        raw = value["document"]
        if not isinstance(raw, dict):
            raise _BadRequest("document must be a JSON object")
        token = value.get("mode", ValidationMode.LENIENT.value)
        if token not in (ValidationMode.STRICT.value, ValidationMode.LENIENT.value):
            raise _BadRequest(f"unknown mode {token!r}")
        mode = ValidationMode(token)
        value = raw
    return from_value(value), mode


def handle_request(
    method: str,
    path: str,
    body: bytes,
    registry: VocabularyRegistry,
) -> ServiceResponse:
    """Route one request; never raises for any byte sequence in *body*."""
    if method == "OPTIONS":
        return ServiceResponse(204, b"")
    if path == "/v1/health":
        if method != "GET":
            return _error(405, "method not allowed")
        return ServiceResponse(200, health_json(registry))
    if path == "/v1/vocabulary":
        if method != "GET":
            return _error(405, "method not allowed")
        return ServiceResponse(200, vocabulary_json(registry))
    if path in ("/v1/validate", "/v1/coverage"):
        if method != "POST":
            return _error(405, "method not allowed")
        try:
            doc, mode = _document_request(body)
        except (_BadRequest, ParseError) as exc:
            return _error(400, str(exc))
        if path == "/v1/validate":
            report = validate(doc, registry, mode)
            return ServiceResponse(
                200, render_validation(report, _JSON_OPTS).encode("utf-8")
            )
        coverage = compute_coverage(doc, registry)
        return ServiceResponse(
            200, render_coverage(coverage, _JSON_OPTS).encode("utf-8")
        )
    return _error(404, "not found")


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server: "ValidationServer"

    def log_message(self, format: str, *args) -> None:
        pass

    def _respond(self, response: ServiceResponse) -> None:
        self.send_response(response.status)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        if response.status != 204:
            self.send_header("Content-Type", response.content_type)
            self.send_header("Content-Length", str(len(response.body)))
        self.end_headers()
        if response.status != 204 and response.body:
            self.wfile.write(response.body)

    def _handle(self) -> None:
        path = self.path.split("?", 1)[0]
        body = b""
        if self.command == "POST":
            header = self.headers.get("Content-Length")
            if header is None:
                self._respond(_error(400, "Content-Length required"))
                return
            try:
                length = int(header)
            except ValueError:
                self._respond(_error(400, "invalid Content-Length"))
                return
            if length > MAX_BODY_BYTES:
                self.close_connection = True
                self._respond(_error(413, "request body exceeds 10 MiB"))
                return
            body = self.rfile.read(max(length, 0))
        self._respond(handle_request(self.command, path, body, self.server.registry))

    do_GET = _handle
    do_POST = _handle
    do_OPTIONS = _handle


class ValidationServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], registry: VocabularyRegistry):
        self.registry = registry
        super().__init__(address, _Handler)


def create_server(
    bind: str,
    port: int,
    registry: VocabularyRegistry | None = None,
) -> ValidationServer:
    """Bound but not yet serving; call serve_forever() to run.
    Raises OSError when the address cannot be bound."""
    if registry is None:
        registry = builtin()
    return ValidationServer((bind, port), registry)
