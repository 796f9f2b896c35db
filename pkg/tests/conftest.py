import http.client
import threading
import urllib.parse
from http.cookies import SimpleCookie
from types import SimpleNamespace

import pytest

from collector.service import start_server
from collector.store import EventStore

ADMIN_USER = "admin"
ADMIN_PASS = "adminsecret1"


class HttpClient:
    """Minimal GET client that keeps the session cookie and never re-encodes
    the URL (the wire string must reach the server byte-for-byte)."""

    def __init__(self, host, port):
        self.host = host
        self.port = port
        self.cookie = None

    def get(self, path):
        conn = http.client.HTTPConnection(self.host, self.port, timeout=30)
        headers = {"Cookie": f"uname={self.cookie}"} if self.cookie else {}
        try:
            conn.request("GET", path, headers=headers)
            resp = conn.getresponse()
            body = resp.read().decode()
            set_cookie = resp.getheader("Set-Cookie")
        finally:
            conn.close()
        if set_cookie:
            jar = SimpleCookie()
            jar.load(set_cookie)
            if "uname" in jar:
                self.cookie = jar["uname"].value or None
        return SimpleNamespace(status=resp.status, body=body, set_cookie=set_cookie)

    def register(self, username, password):
        q = urllib.parse.urlencode({"uname": username, "pwd": password})
        return self.get(f"/register?{q}")

    def login(self, username, password):
        q = urllib.parse.urlencode({"uname": username, "pwd": password})
        return self.get(f"/login?{q}")

    def logout(self):
        return self.get("/logout")

    def collect(self, kind, wire):
        return self.get(f"/collect?type={kind}&data={wire}")

    def export(self, user, kind, from_ms, to_ms, fmt):
        return self.get(f"/export?user={user}&kind={kind}&from={from_ms}&to={to_ms}&format={fmt}")


@pytest.fixture
def live_server(tmp_path):
    store = EventStore(tmp_path / "store.log")
    server = start_server("127.0.0.1:0", store, admin_user=ADMIN_USER, admin_pass=ADMIN_PASS)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    handle = SimpleNamespace(
        server=server,
        service=server.service,
        store=store,
        host="127.0.0.1",
        port=server.server_address[1],
        client=lambda: HttpClient("127.0.0.1", server.server_address[1]),
    )
    yield handle
    server.shutdown()
    server.server_close()
    store.close()
