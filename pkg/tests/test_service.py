import threading

from collector.events import (
    KeystrokeRecord,
    MouseRecord,
    encode_envelope,
    keystroke_envelope,
    mouse_envelope,
)
from collector.formats import parse_export_text

USER = "alice_01"
PASS = "hunter2hunter2"


def ks_wire(down=1000, up=1080, key="d", code="KeyD"):
    return encode_envelope(keystroke_envelope(KeystrokeRecord(code, key, down, up)))


def mouse_wire(t=0, x=0, y=0, action="move"):
    return encode_envelope(mouse_envelope(MouseRecord(action, x, y, t)))


def signup(server, user=USER, password=PASS):
    c = server.client()
    assert c.register(user, password).body == "ok"
    assert c.login(user, password).status == 200
    return c


class TestRegister:
    def test_happy_path(self, live_server):
        r = live_server.client().register(USER, PASS)
        assert (r.status, r.body) == (200, "ok")

    def test_short_username(self, live_server):
        r = live_server.client().register("ab", PASS)
        assert r.status == 400
        assert r.body.startswith("InvalidUsername")

    def test_injection_string_rejected(self, live_server):
        r = live_server.client().register("alice'; DROP TABLE--", PASS)
        assert r.status == 400
        assert r.body.startswith("InvalidUsername")
        assert live_server.store.get_user("alice'; DROP TABLE--") is None

    def test_weak_password(self, live_server):
        r = live_server.client().register(USER, "short")
        assert r.status == 400
        assert r.body.startswith("WeakPassword")

    def test_duplicate(self, live_server):
        c = live_server.client()
        c.register(USER, PASS)
        r = c.register(USER, "otherpassword")
        assert r.status == 400
        assert r.body.startswith("DuplicateUser")

    def test_missing_param(self, live_server):
        r = live_server.client().get("/register?uname=alice_01")
        assert r.status == 400
        assert r.body == "SchemaViolation: pwd"


class TestLogin:
    def test_sets_cookie(self, live_server):
        c = live_server.client()
        c.register(USER, PASS)
        r = c.login(USER, PASS)
        assert r.status == 200
        assert "uname=" in r.set_cookie and "HttpOnly" in r.set_cookie
        assert c.cookie  # opaque token, not the username
        assert c.cookie != USER

    def test_wrong_password_and_unknown_user_look_alike(self, live_server):
        c = live_server.client()
        c.register(USER, PASS)
        bad_pw = c.login(USER, "wrongwrong1")
        nobody = c.login("nobody_here", "wrongwrong1")
        assert (bad_pw.status, bad_pw.body) == (401, "BadCredentials")
        assert (nobody.status, nobody.body) == (401, "BadCredentials")

    def test_two_logins_distinct_tokens(self, live_server):
        a, b = signup(live_server), live_server.client()
        b.login(USER, PASS)
        assert a.cookie != b.cookie


class TestLogout:
    def test_invalidates_token(self, live_server):
        c = signup(live_server)
        token = c.cookie
        assert c.logout().body == "ok"
        assert c.cookie is None  # cookie cleared
        c.cookie = token  # resurrect the old token by hand
        r = c.collect("keystroke", ks_wire())
        assert (r.status, r.body.split(":")[0]) == (401, "NotAuthenticated")

    def test_idempotent(self, live_server):
        c = signup(live_server)
        assert c.logout().body == "ok"
        assert c.logout().body == "ok"
        c.cookie = "never-issued-token"
        assert c.logout().body == "ok"


class TestCollect:
    def test_happy_path_increments_stream(self, live_server):
        c = signup(live_server)
        assert c.collect("keystroke", ks_wire()).body == "ok"
        assert live_server.store.count(USER, "keystroke") == 1
        assert c.collect("mouse", mouse_wire()).body == "ok"
        assert live_server.store.count(USER, "mouse") == 1

    def test_no_cookie_rejected_not_stored(self, live_server):
        signup(live_server)
        fresh = live_server.client()
        r = fresh.collect("keystroke", ks_wire())
        assert r.status == 401
        assert live_server.store.count(USER, "keystroke") == 0

    def test_unknown_action_rejected_not_stored(self, live_server):
        c = signup(live_server)
        bad = mouse_wire().replace("move", "double_click")
        r = c.collect("mouse", bad)
        assert (r.status, r.body) == (400, "InvariantViolation: action")
        assert live_server.store.count(USER, "mouse") == 0

    def test_bad_kind(self, live_server):
        c = signup(live_server)
        r = c.collect("touch", mouse_wire())
        assert (r.status, r.body) == (400, "SchemaViolation: type")

    def test_oversized_data_rejected(self, live_server):
        c = signup(live_server)
        r = c.collect("keystroke", "A" * 5000)
        assert (r.status, r.body) == (400, "SchemaViolation: data")
        assert live_server.store.count(USER, "keystroke") == 0


class TestExport:
    def test_roundtrip_order_jsonl(self, live_server):
        c = signup(live_server)
        wires = [ks_wire(down=1000 + i, up=1100 + i, key=k) for i, k in enumerate("hello")]
        for w in wires:
            assert c.collect("keystroke", w).body == "ok"
        r = c.export(USER, "keystroke", 0, 10**14, "jsonl")
        assert r.status == 200
        back = parse_export_text(r.body, "keystroke")
        assert [e.payload.key for e in back] == list("hello")
        assert [encode_envelope(e) for e in back] == wires

    def test_roundtrip_csv(self, live_server):
        c = signup(live_server)
        c.collect("mouse", mouse_wire(t=5, x=1, y=2))
        c.collect("mouse", mouse_wire(t=9, x=3, y=4, action="left_down"))
        r = c.export(USER, "mouse", 0, 10**14, "csv")
        lines = r.body.splitlines()
        assert lines[0] == "action,x,y,t"
        assert lines[1] == "move,1,2,5"
        assert lines[2] == "left_down,3,4,9"
        back = parse_export_text(r.body, "mouse")
        assert len(back) == 2

    def test_window_filters(self, live_server):
        c = signup(live_server)
        for t in (100, 200, 300):
            c.collect("mouse", mouse_wire(t=t))
        r = c.export(USER, "mouse", 100, 300, "jsonl")
        assert len(r.body.splitlines()) == 2

    def test_empty_range_empty_stream(self, live_server):
        c = signup(live_server)
        c.collect("mouse", mouse_wire(t=100))
        r = c.export(USER, "mouse", 50000, 60000, "jsonl")
        assert (r.status, r.body) == (200, "")
        rcsv = c.export(USER, "mouse", 50000, 60000, "csv")
        assert rcsv.body == "action,x,y,t\n"

    def test_other_user_forbidden(self, live_server):
        signup(live_server)
        other = live_server.client()
        other.register("bob_02", PASS)
        other.login("bob_02", PASS)
        r = other.export(USER, "keystroke", 0, 10, "jsonl")
        assert (r.status, r.body.split(":")[0]) == (403, "Forbidden")

    def test_admin_may_export_anyone(self, live_server):
        c = signup(live_server)
        c.collect("keystroke", ks_wire())
        admin = live_server.client()
        admin.login("admin", "adminsecret1")
        r = admin.export(USER, "keystroke", 0, 10**14, "jsonl")
        assert r.status == 200
        assert len(r.body.splitlines()) == 1

    def test_bad_range(self, live_server):
        c = signup(live_server)
        r = c.export(USER, "keystroke", 10, 10, "jsonl")
        assert (r.status, r.body.split(":")[0]) == (400, "BadRange")

    def test_requires_auth(self, live_server):
        r = live_server.client().export(USER, "keystroke", 0, 10, "jsonl")
        assert r.status == 401


def test_unknown_route_404(live_server):
    assert live_server.client().get("/nope").status == 404


def test_concurrent_sessions_preserve_per_user_order(live_server):
    signup(live_server)

    def ingest(offset):
        c = live_server.client()
        c.login(USER, PASS)
        for i in range(40):
            c.collect("mouse", mouse_wire(t=offset + i))

    threads = [threading.Thread(target=ingest, args=(n * 1000,)) for n in range(3)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    events = live_server.store.scan(USER, "mouse", 0, 10**9)
    assert [ev.seq for ev in events] == list(range(1, 121))
