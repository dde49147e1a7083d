"""Session API for interactive elicitation.

The elicitation engine is deterministic, so a session's entire state is its
answer log: every request replays the log through a SessionOracle to find
either the single outstanding question or the finished profile. The log is
appended to a JSONL file per session, which doubles as the crash-restart
snapshot.
"""

from __future__ import annotations

import json
import math
import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .elicit import DomainViolationError, elicit_sequential
from .io import profile_to_json, tree_to_json
from .oracle import CountingMemoOracle, PendingQuery, SessionOracle
from .prefs import Preference, VoterSequence
from .recognize import recognize_weakly_sc


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


@dataclass
class SessionState:
    """Snapshot derived by replaying a session's answers."""

    status: str  # awaiting-answer | all-complete
    pending: Optional[PendingQuery]
    elicited: list[tuple[int, Preference]]
    query_count: int
    result: Optional[dict] = None


@dataclass
class Session:
    id: str
    candidates: list[str]
    expected_voters: int
    answers: list[bool] = field(default_factory=list)
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def token(self) -> str:
        # one single-use token per log position: stale replays never match
        return f"t{len(self.answers)}"

    def replay(self) -> SessionState:
        oracle = CountingMemoOracle(SessionOracle(list(self.answers)))
        m = len(self.candidates)
        arrival = VoterSequence(tuple(range(self.expected_voters)))
        progress: list[tuple[int, Preference]] = []
        try:
            result = elicit_sequential(oracle, m, arrival, progress=progress)
        except PendingQuery as q:
            return SessionState(
                "awaiting-answer", q, progress, oracle.query_count
            )
        outcome = recognize_weakly_sc(result.profile)
        names = self.candidates
        payload = {
            "profile": profile_to_json(result.profile, names),
            "closure": profile_to_json(outcome.closure, names)
            if outcome.closure
            else None,
            "tree": tree_to_json(outcome.tree, names) if outcome.tree else None,
            "query_count": result.total_queries,
            "fallback_count": result.fallback_count,
        }
        return SessionState(
            "all-complete", None, progress, result.total_queries, payload
        )


def naive_baseline(m: int, n: int) -> int:
    return n * m * math.ceil(math.log2(m)) if m > 1 else 0


class SessionStore:
    def __init__(self, state_dir: str | Path | None = None):
        self._sessions: dict[str, Session] = {}
        self._dir = Path(state_dir) if state_dir else None
        self._lock = threading.Lock()
        if self._dir:
            self._dir.mkdir(parents=True, exist_ok=True)
            for log in self._dir.glob("*.jsonl"):
                session = self._load_log(log)
                if session:
                    self._sessions[session.id] = session

    @staticmethod
    def _load_log(path: Path) -> Optional[Session]:
        session = None
        for line in path.read_text().splitlines():
            event = json.loads(line)
            if event["type"] == "created":
                session = Session(
                    id=event["id"],
                    candidates=event["candidates"],
                    expected_voters=event["voters"],
                )
            elif event["type"] == "answer" and session:
                session.answers.append(bool(event["value"]))
        return session

    def _append(self, session: Session, event: dict) -> None:
        if self._dir:
            with open(self._dir / f"{session.id}.jsonl", "a") as f:
                f.write(json.dumps(event) + "\n")

    def create(self, candidates: list[str], expected_voters: int) -> Session:
        m = len(candidates)
        if not (2 <= m <= 64):
            raise ServiceError(422, "invalid-candidates", "need 2 to 64 candidates")
        if len(set(candidates)) != m or any(not c for c in candidates):
            raise ServiceError(
                422, "invalid-candidates", "candidate names must be nonempty and distinct"
            )
        if expected_voters < 1:
            raise ServiceError(422, "invalid-voters", "need at least one voter")
        session = Session(secrets.token_hex(8), list(candidates), expected_voters)
        with self._lock:
            self._sessions[session.id] = session
        self._append(
            session,
            {
                "type": "created",
                "id": session.id,
                "candidates": session.candidates,
                "voters": expected_voters,
            },
        )
        return session

    def get(self, session_id: str) -> Session:
        session = self._sessions.get(session_id)
        if session is None:
            raise ServiceError(404, "not-found", f"no session {session_id}")
        return session

    def record_answer(self, session: Session, token: str, prefers_x: bool) -> None:
        if token != session.token:
            raise ServiceError(409, "stale-token", "token does not match the pending question")
        session.answers.append(prefers_x)
        session.updated = time.time()
        self._append(session, {"type": "answer", "value": prefers_x})


def _question_payload(session: Session, state: SessionState) -> dict:
    names = session.candidates
    base = {
        "session": session.id,
        "status": state.status,
        "query_count": state.query_count,
        "naive_baseline": naive_baseline(len(names), session.expected_voters),
        "completed": [
            {"voter": v, "order": [names[c] for c in p.order]}
            for v, p in state.elicited
        ],
        "expected_voters": session.expected_voters,
    }
    if state.status == "awaiting-answer":
        q = state.pending
        assert q is not None
        base["question"] = {
            "voter": q.voter,
            "x": names[q.x],
            "y": names[q.y],
            "token": session.token,
        }
    else:
        base["result"] = state.result
    return base


def create_app(state_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="sctrees elicitation service")
    store = SessionStore(state_dir)
    app.state.store = store

    @app.exception_handler(ServiceError)
    async def _service_error(_: Request, exc: ServiceError):
        return JSONResponse(
            status_code=exc.status, content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(DomainViolationError)
    async def _domain_error(_: Request, exc: DomainViolationError):
        return JSONResponse(
            status_code=500, content={"code": "domain-violation", "message": str(exc)}
        )

    @app.post("/sessions")
    async def create_session(body: dict):
        candidates = body.get("candidates")
        voters = body.get("voters")
        if not isinstance(candidates, list) or not isinstance(voters, int):
            raise ServiceError(422, "invalid-body", "need candidates list and voters int")
        session = store.create([str(c) for c in candidates], voters)
        return {"id": session.id, "candidates": session.candidates, "voters": voters}

    @app.get("/sessions/{session_id}/question")
    async def next_question(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return _question_payload(session, session.replay())

    @app.post("/sessions/{session_id}/answer")
    async def submit_answer(session_id: str, body: dict):
        session = store.get(session_id)
        token = body.get("token")
        prefers_x = body.get("prefers_x")
        if not isinstance(token, str) or not isinstance(prefers_x, bool):
            raise ServiceError(422, "invalid-body", "need token str and prefers_x bool")
        with session.lock:
            before = session.replay()
            if before.status != "awaiting-answer":
                raise ServiceError(409, "complete", "session is already complete")
            store.record_answer(session, token, prefers_x)
            after = session.replay()
            voter_done = len(after.elicited) > len(before.elicited)
            payload = {
                "accepted": True,
                "status": after.status,
                "query_count": after.query_count,
            }
            if voter_done and after.elicited:
                v, p = after.elicited[-1]
                payload["voter_complete"] = {
                    "voter": v,
                    "order": [session.candidates[c] for c in p.order],
                }
            return payload

    @app.get("/sessions/{session_id}/result")
    async def result(session_id: str):
        session = store.get(session_id)
        with session.lock:
            state = session.replay()
        if state.status != "all-complete":
            raise ServiceError(409, "incomplete", "session has unanswered questions")
        return _question_payload(session, state)

    return app
