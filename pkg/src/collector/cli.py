"""Command-line entry point: serve, simulate, export, features."""

from __future__ import annotations

import argparse
import logging
import os
import signal
import sys
import threading
from pathlib import Path

from .errors import CollectorError, ParseError
from .store import EventStore

log = logging.getLogger("collector")

MAX_MS = 2**62  # effectively "no upper bound" for window flags


def _serve(args) -> int:
    from .service import start_server

    try:
        store = EventStore(args.store)
    except CollectorError as exc:
        print(f"collector: {exc}", file=sys.stderr)
        return 1
    try:
        server = start_server(args.addr, store, args.admin_user, args.admin_pass)
    except OSError as exc:
        print(f"collector: cannot listen on {args.addr}: {exc}", file=sys.stderr)
        store.close()
        return 1

    stop = threading.Event()

    def request_stop(signum, frame):
        stop.set()

    signal.signal(signal.SIGINT, request_stop)
    signal.signal(signal.SIGTERM, request_stop)

    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    host, port = server.server_address[:2]
    print(f"collector: listening on http://{host}:{port} (store: {args.store})", flush=True)
    stop.wait()
    server.shutdown()
    thread.join()
    server.server_close()
    store.close()
    print("collector: shut down, store flushed", flush=True)
    return 0


def _simulate(args) -> int:
    from .simulate import SimulationError, load_profile, run_simulation

    try:
        profile = load_profile(args.profile)
    except (OSError, ValueError) as exc:
        print(f"collector: bad profile: {exc}", file=sys.stderr)
        return 2
    try:
        accepted = run_simulation(profile, args.target, args.user, args.password)
    except SimulationError as exc:
        print(f"collector: {exc}", file=sys.stderr)
        return 1
    print(f"accepted {accepted} events")
    return 0


def _export(args) -> int:
    from .simulate import ServiceClient, SimulationError
    import urllib.parse

    target_user = args.export_user or args.user
    try:
        client = ServiceClient(args.target)
        creds = urllib.parse.urlencode({"uname": args.user, "pwd": args.password})
        status, body = client.get(f"/login?{creds}")
        if status != 200:
            print(f"collector: login failed: {status} {body}", file=sys.stderr)
            return 1
        query = (f"user={target_user}&kind={args.kind}"
                 f"&from={args.from_ms}&to={args.to_ms}&format={args.format}")
        status, body = client.get(f"/export?{query}")
        client.get("/logout")
        client.close()
    except (SimulationError, OSError) as exc:
        print(f"collector: {exc}", file=sys.stderr)
        return 1
    if status != 200:
        print(f"collector: export failed: {status} {body}", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
        print(f"wrote {len(body.splitlines())} lines to {args.out}")
    else:
        sys.stdout.write(body)
    return 0


def _features(args) -> int:
    from .events import KIND_KEYSTROKE, KIND_MOUSE
    from .features import (
        mouse_speeds,
        render_bigraph_report,
        render_mouse_speed_report,
    )
    from .formats import parse_export_text

    kind = KIND_KEYSTROKE if args.mode == "bigraph" else KIND_MOUSE
    try:
        if args.input:
            text = Path(args.input).read_text(encoding="utf-8")
            records = [e.payload for e in parse_export_text(text, kind)]
        else:
            with EventStore(args.store) as store:
                events = store.scan(args.user, kind, args.from_ms, args.to_ms)
            records = [ev.envelope.payload for ev in events]
    except ParseError as exc:
        print(f"collector: {args.input}: {exc}", file=sys.stderr)
        return 1
    except (OSError, CollectorError) as exc:
        print(f"collector: {exc}", file=sys.stderr)
        return 1

    if args.mode == "bigraph":
        body = render_bigraph_report(args.user, records, args.format)
    else:
        extraction = mouse_speeds(records)
        if extraction.skipped_pairs:
            log.warning("skipped %d zero-elapsed pairs", extraction.skipped_pairs)
        body = render_mouse_speed_report(args.user, records, args.format)

    rows = len(body.splitlines()) - (1 if args.format == "csv" else 0)
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
        print(f"wrote {rows} feature rows to {args.out}")
    else:
        sys.stdout.write(body)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collector",
        description="Keyboard/mouse telemetry collection and feature extraction.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the ingestion service")
    p.add_argument("--addr", default=os.environ.get("COLLECTOR_ADDR", "127.0.0.1:8077"),
                   help="host:port to listen on")
    p.add_argument("--store", default=os.environ.get("COLLECTOR_STORE", "collector-store.log"),
                   help="path of the event store file")
    p.add_argument("--admin-user", default=os.environ.get("COLLECTOR_ADMIN_USER"))
    p.add_argument("--admin-pass", default=os.environ.get("COLLECTOR_ADMIN_PASS"))
    p.set_defaults(func=_serve)

    p = sub.add_parser("simulate", help="replay a synthetic session against a service")
    p.add_argument("--profile", required=True, help="JSON simulation profile")
    p.add_argument("--target", required=True, help="service base URL, e.g. http://127.0.0.1:8077")
    p.add_argument("--user", required=True)
    p.add_argument("--pass", dest="password", required=True)
    p.set_defaults(func=_simulate)

    p = sub.add_parser("export", help="download one user's stored events")
    p.add_argument("--target", required=True)
    p.add_argument("--user", required=True, help="login username")
    p.add_argument("--pass", dest="password", required=True)
    p.add_argument("--export-user", help="stream owner if different (admin only)")
    p.add_argument("--kind", choices=["keystroke", "mouse"], required=True)
    p.add_argument("--from", dest="from_ms", type=int, default=0)
    p.add_argument("--to", dest="to_ms", type=int, default=MAX_MS)
    p.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    p.add_argument("--out", help="output path (stdout if omitted)")
    p.set_defaults(func=_export)

    p = sub.add_parser("features", help="extract biometric features")
    p.add_argument("--in", dest="input", help="exported event file (csv or jsonl)")
    p.add_argument("--store", help="read events from this store file instead of --in")
    p.add_argument("--user", default="", help="stream owner (store mode) / row label")
    p.add_argument("--mode", choices=["bigraph", "mouse-speed"], required=True)
    p.add_argument("--from", dest="from_ms", type=int, default=0)
    p.add_argument("--to", dest="to_ms", type=int, default=MAX_MS)
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.add_argument("--out", help="output path (stdout if omitted)")
    p.set_defaults(func=_features)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    if args.command == "features" and not (args.input or args.store):
        print("collector: features needs --in or --store", file=sys.stderr)
        return 2
    if args.command == "features" and args.store and not args.user:
        print("collector: --store mode needs --user", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
