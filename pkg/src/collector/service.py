"""HTTP ingestion service: register, login/logout, collect, export.

All routes are GET with query parameters, matching the capture client's
transport (data rides in the URL). The session cookie is named ``uname``
but carries an opaque random token mapped server-side; responses are
plain text error codes except for /export bodies.
"""

from __future__ import annotations

import hashlib
import hmac
import logging
import re
import secrets
import threading
import urllib.parse
from dataclasses import dataclass
from http import cookies as http_cookies
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import formats
from .errors import (
    BadCredentials,
    BadRange,
    CollectorError,
    DuplicateUser,
    Forbidden,
    InvalidUsername,
    NotAuthenticated,
    SchemaViolation,
    WeakPassword,
)
from .events import KINDS, decode_envelope
from .store import EventStore, UserAccount, now_ms

log = logging.getLogger(__name__)

USERNAME_RE = re.compile(r"[A-Za-z0-9_]{3,32}")
MIN_PASSWORD_LEN = 8
PBKDF2_ITERATIONS = 100_000
MAX_WIRE_BYTES = 4096
COOKIE_NAME = "uname"


def hash_password(password: str, salt: bytes | None = None) -> str:
    if salt is None:
        salt = secrets.token_bytes(16)
    digest = hashlib.pbkdf2_hmac("sha256", password.encode(), salt, PBKDF2_ITERATIONS)
    return f"pbkdf2_sha256${PBKDF2_ITERATIONS}${salt.hex()}${digest.hex()}"


def verify_password(password: str, stored: str) -> bool:
    try:
        _, iterations, salt_hex, digest_hex = stored.split("$")
        digest = hashlib.pbkdf2_hmac("sha256", password.encode(),
                                     bytes.fromhex(salt_hex), int(iterations))
        return hmac.compare_digest(digest.hex(), digest_hex)
    except (ValueError, TypeError):
        return False


@dataclass(frozen=True)
class SessionToken:
    token: str
    username: str
    issued_ms: int


class SessionTable:
    """In-memory token table; tokens die with the process (clients re-login)."""

    def __init__(self):
        self._lock = threading.Lock()
        self._sessions: dict[str, SessionToken] = {}

    def issue(self, username: str) -> SessionToken:
        session = SessionToken(secrets.token_urlsafe(32), username, now_ms())
        with self._lock:
            self._sessions[session.token] = session
        return session

    def lookup(self, token: str) -> SessionToken | None:
        with self._lock:
            return self._sessions.get(token)

    def revoke(self, token: str) -> None:
        with self._lock:
            self._sessions.pop(token, None)


class CollectorService:
    """Transport-independent core; the HTTP handler is a thin shell."""

    def __init__(self, store: EventStore, admin_user: str | None = None):
        self.store = store
        self.sessions = SessionTable()
        self.admin_user = admin_user

    def register(self, username: str, password: str) -> None:
        if not USERNAME_RE.fullmatch(username):
            raise InvalidUsername(username if username.isprintable() else repr(username))
        if len(password) < MIN_PASSWORD_LEN:
            raise WeakPassword(f"minimum {MIN_PASSWORD_LEN} characters")
        if self.store.get_user(username) is not None:
            raise DuplicateUser(username)
        self.store.put_user(UserAccount(username, hash_password(password), now_ms()))

    def login(self, username: str, password: str) -> SessionToken:
        account = self.store.get_user(username)
        # Unknown user and wrong password are indistinguishable to the caller.
        if account is None or not verify_password(password, account.password_digest):
            raise BadCredentials()
        return self.sessions.issue(username)

    def logout(self, token: str) -> None:
        self.sessions.revoke(token)

    def _authenticate(self, token: str | None) -> SessionToken:
        if not token:
            raise NotAuthenticated("missing session cookie")
        session = self.sessions.lookup(token)
        if session is None:
            raise NotAuthenticated("unknown or expired session")
        return session

    def ingest(self, token: str | None, kind: str, wire: str) -> int:
        session = self._authenticate(token)
        if kind not in KINDS:
            raise SchemaViolation("type", f"unknown kind {kind!r}")
        if len(wire.encode("utf-8", "surrogatepass")) > MAX_WIRE_BYTES:
            raise SchemaViolation("data", f"over {MAX_WIRE_BYTES} bytes")
        envelope = decode_envelope(kind, wire)
        return self.store.append(session.username, envelope)

    def export(self, token: str | None, user: str, kind: str,
               from_ms: int, to_ms: int, fmt: str) -> str:
        session = self._authenticate(token)
        if kind not in KINDS:
            raise SchemaViolation("kind", f"unknown kind {kind!r}")
        if fmt not in formats.FORMATS:
            raise SchemaViolation("format", f"unknown format {fmt!r}")
        if session.username != user and session.username != self.admin_user:
            raise Forbidden("not your stream")
        if from_ms >= to_ms:
            raise BadRange(f"from {from_ms} >= to {to_ms}")
        events = self.store.scan(user, kind, from_ms, to_ms)
        return formats.render_export([ev.envelope for ev in events], kind, fmt)


_STATUS = {
    "MalformedWire": 400,
    "SchemaViolation": 400,
    "InvariantViolation": 400,
    "InvalidUsername": 400,
    "WeakPassword": 400,
    "DuplicateUser": 400,
    "BadRange": 400,
    "UnknownUser": 400,
    "BadCredentials": 401,
    "NotAuthenticated": 401,
    "Forbidden": 403,
    "StorageFailure": 500,
}


class CollectorRequestHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server: "CollectorServer"

    # -- plumbing ----------------------------------------------------------

    def log_message(self, fmt, *args):
        pass  # access logging below, with query strings stripped

    def _respond(self, status: int, body: str, content_type: str = "text/plain",
                 extra_headers: list[tuple[str, str]] | None = None) -> None:
        payload = body.encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", f"{content_type}; charset=utf-8")
        self.send_header("Content-Length", str(len(payload)))
        for name, value in extra_headers or ():
            self.send_header(name, value)
        self.end_headers()
        self.wfile.write(payload)

    def _query_params(self) -> dict[str, str]:
        """Query parameters with one level of percent-decoding, except
        ``data``, which is kept raw: the wire string is itself
        percent-encoded and must be decoded exactly once, by the codec."""
        query = urllib.parse.urlsplit(self.path).query
        params: dict[str, str] = {}
        for part in query.split("&"):
            if not part:
                continue
            name, _, value = part.partition("=")
            name = urllib.parse.unquote(name)
            params[name] = value if name == "data" else urllib.parse.unquote_plus(value)
        return params

    def _session_token(self) -> str | None:
        header = self.headers.get("Cookie")
        if not header:
            return None
        jar = http_cookies.SimpleCookie()
        try:
            jar.load(header)
        except http_cookies.CookieError:
            return None
        morsel = jar.get(COOKIE_NAME)
        return morsel.value if morsel else None

    def _require(self, params: dict[str, str], name: str) -> str:
        if name not in params:
            raise SchemaViolation(name, "missing parameter")
        return params[name]

    # -- routes ------------------------------------------------------------

    def do_GET(self):
        route = urllib.parse.urlsplit(self.path).path
        service = self.server.service
        try:
            params = self._query_params()
            if route == "/register":
                service.register(self._require(params, "uname"), self._require(params, "pwd"))
                self._respond(200, "ok")
            elif route == "/login":
                session = service.login(self._require(params, "uname"),
                                        self._require(params, "pwd"))
                self._respond(200, "ok", extra_headers=[
                    ("Set-Cookie", f"{COOKIE_NAME}={session.token}; HttpOnly; Path=/"),
                ])
            elif route == "/logout":
                token = self._session_token()
                if token:
                    service.logout(token)
                self._respond(200, "ok", extra_headers=[
                    ("Set-Cookie", f"{COOKIE_NAME}=; Max-Age=0; HttpOnly; Path=/"),
                ])
            elif route == "/collect":
                service.ingest(self._session_token(),
                               self._require(params, "type"),
                               self._require(params, "data"))
                self._respond(200, "ok")
            elif route == "/export":
                body = service.export(
                    self._session_token(),
                    self._require(params, "user"),
                    self._require(params, "kind"),
                    self._parse_ms(params, "from"),
                    self._parse_ms(params, "to"),
                    self._require(params, "format"),
                )
                ctype = "text/csv" if params.get("format") == "csv" else "application/x-ndjson"
                self._respond(200, body, content_type=ctype)
            else:
                self._respond(404, "NotFound")
        except CollectorError as exc:
            status = _STATUS.get(exc.code, 400)
            log.warning("%s %s -> %s", route, exc.code, exc)
            self._respond(status, str(exc))
        except Exception:
            log.exception("unhandled error on %s", route)
            self._respond(500, "InternalError")

    def _parse_ms(self, params: dict[str, str], name: str) -> int:
        raw = self._require(params, name)
        try:
            return int(raw)
        except ValueError:
            raise SchemaViolation(name, f"not an integer: {raw!r}") from None


class CollectorServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], service: CollectorService):
        super().__init__(address, CollectorRequestHandler)
        self.service = service


def ensure_admin(service: CollectorService, admin_user: str | None,
                 admin_pass: str | None) -> None:
    """Register the configured admin account if it does not exist yet."""
    if not admin_user or not admin_pass:
        return
    try:
        service.register(admin_user, admin_pass)
    except DuplicateUser:
        pass


def start_server(addr: str, store: EventStore, admin_user: str | None = None,
                 admin_pass: str | None = None) -> CollectorServer:
    host, _, port = addr.rpartition(":")
    service = CollectorService(store, admin_user=admin_user)
    ensure_admin(service, admin_user, admin_pass)
    return CollectorServer((host or "127.0.0.1", int(port)), service)
