"""HTTP API around live game sessions.

Endpoints (bodies JSON):
    POST /sessions {participant_id, mode, seed?}         -> {session_id}
    GET  /sessions/{id}/word                             -> {task_id, scramble, position, ...}
    POST /sessions/{id}/guess {text}                     -> {correct, guesses_so_far, state}
    POST /sessions/{id}/skip                             -> {}
    POST /sessions/{id}/rating {urd?: 1..10}             -> {iwd_crisp, iwd_category}
    GET  /sessions/{id}/summary                          -> full record list

Requesting the word of a completed session answers 410, a wrong-state
action 409, bad input 400, an unknown session 404. The client never
computes difficulty; whatever it shows comes from the rating response or
the summary.
"""

from __future__ import annotations

import os
import threading
import uuid
from pathlib import Path
from typing import Sequence

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .errors import InputError, SessionStateError
from .model import DifficultyModel
from .session import GameSession, JsonlLog, SessionState, select_tasks
from .words import WordTask, default_tasks

DATA_DIR_ENV = "SCRAMBLEFIT_DATA_DIR"
MODEL_ENV = "SCRAMBLEFIT_MODEL"
DEFAULT_DATA_DIR = "scramblefit-data"
LOG_FILENAME = "sessions.jsonl"


class CreateSessionBody(BaseModel):
    participant_id: str
    mode: str = "full"
    seed: int | None = None


class GuessBody(BaseModel):
    text: str


class RatingBody(BaseModel):
    urd: int | None = None


class SessionRegistry:
    def __init__(self, model: DifficultyModel, tasks: Sequence[WordTask], log: JsonlLog):
        self.model = model
        self.tasks = list(tasks)
        self.log = log
        self._sessions: dict[str, tuple[GameSession, threading.Lock]] = {}
        self._lock = threading.Lock()

    def create(self, participant_id: str, mode: str, seed: int | None) -> GameSession:
        selected = select_tasks(self.tasks, mode, seed)
        session = GameSession(
            session_id=uuid.uuid4().hex,
            participant_id=participant_id,
            tasks=selected,
            model=self.model,
            sink=self.log.append,
            mode=mode,
        )
        with self._lock:
            self._sessions[session.session_id] = (session, threading.Lock())
        return session

    def get(self, session_id: str) -> tuple[GameSession, threading.Lock]:
        with self._lock:
            entry = self._sessions.get(session_id)
        if entry is None:
            raise HTTPException(status_code=404, detail=f"no session {session_id!r}")
        return entry


def create_app(
    model: DifficultyModel,
    tasks: Sequence[WordTask],
    log_path: str | Path,
) -> FastAPI:
    app = FastAPI(title="scramblefit session service")
    # the browser client is served from a different origin (file:// or a
    # static dev server), so cross-origin requests must be allowed
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    registry = SessionRegistry(model, tasks, JsonlLog(log_path))
    app.state.registry = registry

    @app.exception_handler(InputError)
    async def _input_error(request, exc):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(SessionStateError)
    async def _state_error(request, exc):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        session = registry.create(body.participant_id, body.mode, body.seed)
        return {"session_id": session.session_id}

    @app.get("/sessions/{session_id}/word")
    def current_word(session_id: str):
        session, lock = registry.get(session_id)
        with lock:
            if session.state is SessionState.COMPLETE:
                raise HTTPException(status_code=410, detail="session complete")
            task = session.current_task()
            return {
                "task_id": task.task_id,
                "scramble": task.scramble,
                "position": session.position,
                "state": session.state.value,
                "guesses_so_far": session.guesses_so_far,
            }

    @app.post("/sessions/{session_id}/guess")
    def submit_guess(session_id: str, body: GuessBody):
        session, lock = registry.get(session_id)
        with lock:
            correct = session.submit_guess(body.text)
            return {
                "correct": correct,
                "guesses_so_far": session.guesses_so_far,
                "state": session.state.value,
            }

    @app.post("/sessions/{session_id}/skip")
    def submit_skip(session_id: str):
        session, lock = registry.get(session_id)
        with lock:
            session.submit_skip()
            return {}

    @app.post("/sessions/{session_id}/rating")
    def submit_rating(session_id: str, body: RatingBody):
        session, lock = registry.get(session_id)
        with lock:
            line = session.submit_rating(body.urd)
            return {"iwd_crisp": line["iwd_crisp"], "iwd_category": line["iwd_category"]}

    @app.get("/sessions/{session_id}/summary")
    def summary(session_id: str):
        session, lock = registry.get(session_id)
        with lock:
            return session.summary()

    return app


def data_dir_from_env() -> Path:
    return Path(os.environ.get(DATA_DIR_ENV, DEFAULT_DATA_DIR))


def create_default_app() -> FastAPI:
    """App wired from the environment: data dir and optional model path."""
    model_path = os.environ.get(MODEL_ENV)
    model = DifficultyModel.load(model_path) if model_path else DifficultyModel.default()
    return create_app(model, default_tasks(), data_dir_from_env() / LOG_FILENAME)
