"""HTTP surface of the gateway.

Every mutating route composes session check -> endorse -> submit-and-wait;
GET routes execute read-only contract functions against the anchor. Bodies
are canonical JSON. Error classes map onto statuses (authorization 403,
invalid credentials/sessions 401, missing 404, validation 422, timeouts
504, conflicts 409).
"""

from __future__ import annotations

import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, unquote, urlparse

from .. import canonical
from .. import errors as E
from .service import GatewayService, TxInvalidated

STATUS_BY_ERROR = [
    (E.AuthorizationError, 403),
    (E.ConsentRequired, 403),
    (E.ConsentExpired, 403),
    (E.InvalidIdentity, 401),
    (E.InvalidPassword, 401),
    (E.InvalidSignature, 401),
    (E.SessionExpired, 401),
    (E.NotFound, 404),
    (E.UnknownNode, 404),
    (E.ValidationError, 422),
    (E.UnknownDoctor, 422),
    (E.UnknownMedicine, 422),
    (E.PolicyUnsatisfied, 422),
    (E.Duplicate, 409),
    (E.DuplicateIdentity, 409),
    (E.SlotTaken, 409),
    (E.NotPending, 409),
    (E.UnauthorizedMedicine, 409),
    (TxInvalidated, 409),
    (E.AlreadyBootstrapped, 409),
    (E.OversizeError, 413),
    (E.SizeLimit, 413),
    (E.TimeoutError, 504),
    (E.NotLeader, 503),
]


def status_for(exc: Exception) -> int:
    for klass, status in STATUS_BY_ERROR:
        if isinstance(exc, klass):
            return status
    return 500


class _Route:
    def __init__(self, method: str, pattern: str, handler, needs_session: bool = True, raw: bool = False):
        self.method = method
        self.regex = re.compile(f"^{pattern}$")
        self.handler = handler
        self.needs_session = needs_session
        self.raw = raw


def _invoke_response(result, receipt) -> tuple[int, dict]:
    body = {"result": result, "receipt": receipt.to_dict()}
    if not receipt.valid:
        return 409, {"error": "TxInvalidated", "message": "transaction lost a commit-time conflict", **body}
    return 200, body


def build_routes(service: GatewayService) -> list[_Route]:
    def login(token, params, body, query):
        return 200, service.login(body["identity_id"], body["password"])

    def admin_users(token, params, body, query):
        return 200, service.register_user(
            token,
            {
                "identity_id": body["identity_id"],
                "display_name": body.get("display_name", ""),
                "attrs": body.get("attrs", {}),
            },
            body.get("role", "user"),
            body["password"],
        )

    def invoke(fn, args_of):
        def handler(token, params, body, query):
            return _invoke_response(*service.invoke(token, fn, args_of(params, body)))

        return handler

    def query_fn(fn, args_of):
        def handler(token, params, body, query):
            return 200, {"result": service.query(token, fn, args_of(params, query))}

        return handler

    def register_doctor(token, params, body, query):
        card = service.sessions.resolve(token)
        profile = {
            "doctor_id": body.get("doctor_id", card.identity_id),
            "name": body.get("name", ""),
            "specialty": body.get("specialty", ""),
        }
        return _invoke_response(*service.invoke(token, "health.register_doctor", [profile]))

    def put_document(token, params, body, query):
        media_type = query.get("_content_type", ["application/octet-stream"])[0]
        digest = service.put_document(token, body, media_type)
        return 200, {"digest": digest.hex(), "size_bytes": len(body)}

    def get_document(token, params, body, query):
        doc = service.get_document(token, bytes.fromhex(params["digest"]))
        return 200, {"_raw": doc.content, "_media_type": doc.media_type}

    def health(token, params, body, query):
        return 200, service.health()

    return [
        _Route("POST", "/auth/login", login, needs_session=False),
        _Route("POST", "/admin/users", admin_users),
        _Route("POST", "/doctors", register_doctor),
        _Route(
            "POST",
            "/doctors/(?P<id>[^/]+)/approve",
            invoke("health.approve_doctor", lambda p, b: [p["id"], b["decision"]]),
        ),
        _Route(
            "POST",
            "/doctors/(?P<id>[^/]+)/credentials",
            invoke("health.submit_credential_update", lambda p, b: [b]),
        ),
        _Route(
            "POST",
            "/credentials/(?P<id>[^/]+)/approve",
            invoke("health.approve_credential", lambda p, b: [p["id"]]),
        ),
        _Route("GET", "/doctors", query_fn("health.list_doctors", lambda p, q: [q.get("status", [None])[0]])),
        _Route("GET", "/doctors/(?P<id>[^/]+)", query_fn("health.get_doctor", lambda p, q: [p["id"]])),
        _Route("GET", "/medicines", query_fn("health.get_medicines", lambda p, q: [])),
        _Route("POST", "/medicines", invoke("health.add_medicine", lambda p, b: [b])),
        _Route(
            "POST",
            "/medicines/(?P<id>[^/]+)/authorize",
            invoke("health.set_medicine_authorized", lambda p, b: [p["id"], b["authorized"]]),
        ),
        _Route(
            "POST",
            "/prescriptions",
            invoke("health.create_prescription", lambda p, b: [b["patient_id"], b["items"]]),
        ),
        _Route(
            "GET",
            "/patients/(?P<id>[^/]+)/history",
            query_fn("health.get_medical_history", lambda p, q: [p["id"]]),
        ),
        _Route(
            "POST",
            "/appointments",
            invoke("health.request_appointment", lambda p, b: [b["doctor_id"], b["slot"]]),
        ),
        _Route(
            "POST",
            "/appointments/(?P<id>[^/]+)/confirm",
            invoke("health.confirm_appointment", lambda p, b: [p["id"]]),
        ),
        _Route(
            "POST",
            "/appointments/(?P<id>[^/]+)/cancel",
            invoke("health.cancel_appointment", lambda p, b: [p["id"]]),
        ),
        _Route(
            "POST",
            "/complaints",
            invoke(
                "health.file_complaint",
                lambda p, b: [b.get("subject", ""), b.get("body", ""), b["severity"]],
            ),
        ),
        _Route("GET", "/complaints", query_fn("health.list_complaints", lambda p, q: [])),
        _Route(
            "GET",
            "/complaints/(?P<id>[^/]+)",
            query_fn("health.get_complaint_status", lambda p, q: [p["id"]]),
        ),
        _Route(
            "POST",
            "/complaints/(?P<id>[^/]+)/review",
            invoke("health.review_complaint", lambda p, b: [p["id"], b["action"]]),
        ),
        _Route(
            "POST",
            "/consents",
            invoke("health.grant_consent", lambda p, b: [b["doctor_id"], b.get("ttl_ms")]),
        ),
        _Route(
            "GET",
            "/specialists",
            query_fn("health.find_specialist", lambda p, q: [q.get("specialty", [""])[0]]),
        ),
        _Route("POST", "/distributions", invoke("health.record_distribution", lambda p, b: [b])),
        _Route(
            "GET",
            "/analytics/tendency/(?P<id>[^/]+)",
            query_fn("health.prescribing_tendency", lambda p, q: [p["id"]]),
        ),
        _Route(
            "GET",
            "/analytics/stats",
            query_fn("health.anonymized_stats", lambda p, q: [q.get("group_by", ["specialty"])[0]]),
        ),
        _Route("POST", "/news", invoke("health.post_news", lambda p, b: [b.get("title", ""), b.get("body", "")])),
        _Route("GET", "/news", query_fn("health.get_news", lambda p, q: [])),
        _Route("PUT", "/documents", put_document, raw=True),
        _Route("GET", "/documents/(?P<digest>[0-9a-f]{64})", get_document),
        _Route("GET", "/health", health, needs_session=False),
    ]


class GatewayHTTPServer:
    """Threaded HTTP server wrapping a GatewayService."""

    def __init__(self, service: GatewayService, host: str = "127.0.0.1", port: int = 0):
        self.service = service
        routes = build_routes(service)

        class Handler(BaseHTTPRequestHandler):
            protocol_version = "HTTP/1.1"

            def log_message(self, fmt, *args):
                pass

            def _dispatch(self, method: str):
                parsed = urlparse(self.path)
                path = unquote(parsed.path)
                query = parse_qs(parsed.query)
                query["_content_type"] = [self.headers.get("Content-Type", "application/octet-stream")]
                length = int(self.headers.get("Content-Length") or 0)
                raw_body = self.rfile.read(length) if length else b""
                token = None
                auth = self.headers.get("Authorization", "")
                if auth.startswith("Bearer "):
                    token = auth[len("Bearer "):]
                for route in routes:
                    if route.method != method:
                        continue
                    match = route.regex.match(path)
                    if not match:
                        continue
                    try:
                        if route.needs_session:
                            service.sessions.resolve(token)
                        body = raw_body if route.raw else (
                            canonical.decode(raw_body) if raw_body else {}
                        )
                        status, payload = route.handler(token, match.groupdict(), body, query)
                    except Exception as exc:  # error classes map onto statuses
                        status = status_for(exc)
                        payload = {"error": type(exc).__name__, "message": str(exc)}
                    self._respond(status, payload)
                    return
                self._respond(404, {"error": "NotFound", "message": path})

            def _respond(self, status: int, payload):
                if isinstance(payload, dict) and "_raw" in payload:
                    data = payload["_raw"]
                    content_type = payload.get("_media_type", "application/octet-stream")
                else:
                    data = canonical.encode(payload)
                    content_type = "application/json"
                self.send_response(status)
                self.send_header("Content-Type", content_type)
                self.send_header("Content-Length", str(len(data)))
                self._cors()
                self.end_headers()
                self.wfile.write(data)

            def _cors(self):
                # the web portal is served from its own origin
                self.send_header("Access-Control-Allow-Origin", "*")
                self.send_header("Access-Control-Allow-Headers", "Authorization, Content-Type")
                self.send_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS")

            def do_GET(self):
                self._dispatch("GET")

            def do_POST(self):
                self._dispatch("POST")

            def do_PUT(self):
                self._dispatch("PUT")

            def do_OPTIONS(self):
                self.send_response(204)
                self._cors()
                self.send_header("Content-Length", "0")
                self.end_headers()

        try:
            self._server = ThreadingHTTPServer((host, port), Handler)
        except OSError as exc:
            raise E.BindError(f"cannot bind {host}:{port}: {exc}") from exc
        self._server.daemon_threads = True
        self.host = host
        self.port = self._server.server_address[1]
        self._thread = threading.Thread(
            target=self._server.serve_forever, daemon=True, name="healthdlt-gateway"
        )

    @property
    def base_url(self) -> str:
        return f"http://{self.host}:{self.port}"

    def start(self) -> "GatewayHTTPServer":
        self._thread.start()
        return self

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()


def serve_api(service: GatewayService, host: str = "127.0.0.1", port: int = 0) -> GatewayHTTPServer:
    """Start the HTTP service; raises BindError if the port is taken."""
    return GatewayHTTPServer(service, host, port).start()
