"""HTTP/JSON design service.

Sessions are held in memory (optionally snapshotted to JSON); each session
serializes its edits behind a lock while diagnostics reads are cheap
recomputations.  Monte Carlo runs happen on a small worker pool and are
polled via /jobs/<id>.

Endpoints:
    POST /sessions                      {"bit": code, "phase": code} -> {"id": ...}
    GET  /sessions/<id>                 graph + tags + diagnostics
    POST /sessions/<id>/edges           {"kind": ..., "endpoints": [...]} -> diagnostics
    POST /sessions/<id>/undo            -> diagnostics
    GET  /sessions/<id>/export?format=dot|bundle
    POST /sessions/<id>/search          {"target_d": 3} -> suggested pairs
    POST /sessions/<id>/montecarlo      {"p": ..., "shots": ..., "seed": ...} -> {"job": ...}
    GET  /jobs/<id>                     {"status": ..., "result": ...}

A code value is either {"builtin": "<name>"} or full code JSON
{"name", "k", "checks"}.  Unknown sessions give 404; illegal edges 422.
"""

from __future__ import annotations

import json
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from . import builder, bundle, opgraph, translation
from .analysis import (
    build_lookup_decoder,
    distance,
    monte_carlo,
    signature_profile,
    syndrome_table,
)
from .classical import ClassicalCode, builtin
from .stabilizer import extract_adjacency, quantum_parity_matrix

DIAGNOSTIC_MAX_WEIGHT = 3


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def _parse_code(obj) -> ClassicalCode:
    if not isinstance(obj, dict):
        raise ApiError(400, "code must be an object")
    try:
        if "builtin" in obj:
            return builtin(obj["builtin"])
        return ClassicalCode.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise ApiError(400, f"bad code: {exc}")


def diagnostics(session: builder.DesignSession) -> dict:
    """Fresh full recomputation of everything the designer UI displays."""
    g = session.graph
    q = quantum_parity_matrix(extract_adjacency(g))
    table = syndrome_table(q)
    cfg = translation.translate(g)
    d = distance(q, DIAGNOSTIC_MAX_WEIGHT) if q.m else None
    profile = signature_profile(table, g.k, g.parity_qubits, session.tags)
    return {
        "n": g.n,
        "k": g.k,
        "m": g.m,
        "distance": d,
        "distance_bound": None if d is not None else f">= {DIAGNOSTIC_MAX_WEIGHT + 1}",
        "syndrome_uniqueness": table.uniqueness,
        "unconnected_variables": [[q_, c] for q_, c in translation.unconnected_variables(cfg)],
        "signature_profile": {
            f"{etype},{cls}": [list(pair) for pair in pairs]
            for (etype, cls), pairs in sorted(profile.items())
        },
        "edits": len(session.history),
    }


class SessionStore:
    def __init__(self, snapshot: str | None = None, default_seed: int = 0):
        self.sessions: dict[str, builder.DesignSession] = {}
        self.locks: dict[str, threading.Lock] = {}
        self.jobs: dict[str, dict] = {}
        self.snapshot = snapshot
        self.default_seed = default_seed
        self.pool = ThreadPoolExecutor(max_workers=2)
        self.store_lock = threading.Lock()

    def create(self, session: builder.DesignSession) -> str:
        sid = uuid.uuid4().hex[:12]
        with self.store_lock:
            self.sessions[sid] = session
            self.locks[sid] = threading.Lock()
        self.persist()
        return sid

    def get(self, sid: str) -> builder.DesignSession:
        try:
            return self.sessions[sid]
        except KeyError:
            raise ApiError(404, f"unknown session {sid}")

    def lock(self, sid: str) -> threading.Lock:
        self.get(sid)
        return self.locks[sid]

    def persist(self) -> None:
        if not self.snapshot:
            return
        with self.store_lock:
            payload = {sid: s.to_json() for sid, s in self.sessions.items()}
        with open(self.snapshot, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)

    def restore(self) -> None:
        if not self.snapshot:
            return
        try:
            with open(self.snapshot, encoding="utf-8") as fh:
                payload = json.load(fh)
        except FileNotFoundError:
            return
        for sid, obj in payload.items():
            self.sessions[sid] = builder.DesignSession.from_json(obj)
            self.locks[sid] = threading.Lock()

    def submit_monte_carlo(self, sid: str, p: float, shots: int, seed: int) -> str:
        session = self.get(sid)
        q = quantum_parity_matrix(extract_adjacency(session.graph))
        jid = uuid.uuid4().hex[:12]
        self.jobs[jid] = {"status": "running", "result": None}

        def run():
            try:
                decoder = build_lookup_decoder(q)
                r = monte_carlo(q, decoder, p, shots, seed)
                self.jobs[jid] = {"status": "done", "result": r.to_json()}
            except Exception as exc:  # surfaced via polling
                self.jobs[jid] = {"status": "error", "result": str(exc)}

        self.pool.submit(run)
        return jid


def handle_request(store: SessionStore, method: str, path: str, body: dict) -> tuple[int, dict | str]:
    """Route one request; returns (status, payload). Strings are raw text."""
    url = urlparse(path)
    parts = [p for p in url.path.split("/") if p]

    if method == "POST" and parts == ["sessions"]:
        bit = _parse_code(body.get("bit", {}))
        phase = _parse_code(body.get("phase", {}))
        try:
            session = builder.combine(bit, phase)
        except builder.IncompatibleCodesError as exc:
            raise ApiError(422, str(exc))
        sid = store.create(session)
        return 201, {"id": sid, "diagnostics": diagnostics(session)}

    if len(parts) >= 2 and parts[0] == "sessions":
        sid = parts[1]
        session = store.get(sid)
        rest = parts[2:]

        if method == "GET" and not rest:
            return 200, {
                "id": sid,
                "graph": opgraph.to_json(session.graph),
                "tags": session.tags.to_json(),
                "diagnostics": diagnostics(session),
            }

        if method == "POST" and rest == ["edges"]:
            kind = body.get("kind")
            endpoints = tuple(body.get("endpoints", ()))
            with store.lock(sid):
                try:
                    builder.toggle_edge(session, kind, endpoints)
                except (opgraph.EdgeRoleError, opgraph.GraphStateError, TypeError, ValueError) as exc:
                    raise ApiError(422, str(exc))
                payload = {
                    "graph": opgraph.to_json(session.graph),
                    "diagnostics": diagnostics(session),
                }
            store.persist()
            return 200, payload

        if method == "POST" and rest == ["undo"]:
            with store.lock(sid):
                builder.undo(session)
                payload = {
                    "graph": opgraph.to_json(session.graph),
                    "diagnostics": diagnostics(session),
                }
            store.persist()
            return 200, payload

        if method == "GET" and rest == ["export"]:
            fmt = parse_qs(url.query).get("format", ["bundle"])[0]
            if fmt == "dot":
                return 200, opgraph.to_dot(session.graph)
            if fmt == "bundle":
                b = bundle.build_bundle(session.graph, f"session-{sid}", session.tags)
                return 200, bundle.to_json(b)
            raise ApiError(400, f"unknown export format {fmt!r}")

        if method == "POST" and rest == ["search"]:
            target = int(body.get("target_d", 2))
            with store.lock(sid):
                try:
                    res = builder.search_cross_checks(session, target)
                except ValueError as exc:
                    raise ApiError(422, str(exc))
            return 200, {
                "success": res.success,
                "pairs": [list(p) for p in res.pairs],
                "distance": res.distance,
                "examined": res.examined,
                "message": res.message,
            }

        if method == "POST" and rest == ["montecarlo"]:
            p = float(body.get("p", 0.0))
            if not 0.0 <= p <= 1.0:
                raise ApiError(422, f"p={p} outside [0, 1]")
            shots = int(body.get("shots", 100_000))
            seed = int(body.get("seed", store.default_seed))
            jid = store.submit_monte_carlo(sid, p, shots, seed)
            return 202, {"job": jid}

    if method == "GET" and len(parts) == 2 and parts[0] == "jobs":
        job = store.jobs.get(parts[1])
        if job is None:
            raise ApiError(404, f"unknown job {parts[1]}")
        return 200, job

    raise ApiError(404, f"no route for {method} {url.path}")


def make_handler(store: SessionStore):
    class Handler(BaseHTTPRequestHandler):
        def _respond(self, status: int, payload: dict | str) -> None:
            raw = payload.encode() if isinstance(payload, str) else json.dumps(payload).encode()
            ctype = "text/plain" if isinstance(payload, str) else "application/json"
            self.send_response(status)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(raw)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()
            self.wfile.write(raw)

        def _handle(self, method: str) -> None:
            body = {}
            length = int(self.headers.get("Content-Length") or 0)
            if length:
                try:
                    body = json.loads(self.rfile.read(length))
                except json.JSONDecodeError as exc:
                    self._respond(400, {"error": f"malformed JSON: {exc.msg} at line {exc.lineno}"})
                    return
            try:
                status, payload = handle_request(store, method, self.path, body)
            except ApiError as exc:
                self._respond(exc.status, {"error": str(exc)})
                return
            self._respond(status, payload)

        def do_GET(self):
            self._handle("GET")

        def do_POST(self):
            self._handle("POST")

        def do_OPTIONS(self):
            self._respond(204, "")

        def log_message(self, fmt, *args):
            pass  # quiet by default

    return Handler


def make_server(
    port: int = 0, snapshot: str | None = None, seed: int = 0
) -> tuple[ThreadingHTTPServer, SessionStore]:
    store = SessionStore(snapshot, default_seed=seed)
    store.restore()
    server = ThreadingHTTPServer(("127.0.0.1", port), make_handler(store))
    return server, store


def serve(port: int, snapshot: str | None = None, seed: int = 0) -> None:
    server, _ = make_server(port, snapshot, seed)
    host, actual_port = server.server_address[:2]
    print(f"cpcgraph service listening on http://{host}:{actual_port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
