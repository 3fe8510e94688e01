"""In-memory HTTP play service.

Sessions live for the process lifetime (with idle eviction) and every state
change goes through the rules engine; the service never edits boards by
hand.  Concurrent moves on one session are rejected with 409 rather than
queued, so at most one request mutates a game at a time.
"""

from __future__ import annotations

import random
import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .board import ONGOING, outcome
from .policies import select
from .rules import GameContext, RULE_DESCRIPTIONS, SAFE, MODES, candidates

IDLE_EVICTION_SECONDS = 3600

BOT_MARK = "X"
HUMAN_MARK = "O"


class NewGameRequest(BaseModel):
    first_player: str
    mode: str = SAFE
    seed: int | None = None


class MoveRequest(BaseModel):
    cell: int


@dataclass
class Session:
    id: str
    ctx: GameContext
    mode: str
    rng: random.Random
    first_player: str
    move_log: list[dict] = field(default_factory=list)
    last_bot_move: dict | None = None
    last_access: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def status(self) -> str:
        return outcome(self.ctx.board)

    def view(self) -> dict:
        return {
            "game_id": self.id,
            "board": self.ctx.board.to_string(),
            "status": self.status,
            "mode": self.mode,
            "first_player": self.first_player,
            "move_log": self.move_log,
            "bot_move": self.last_bot_move,
        }


def create_app() -> FastAPI:
    app = FastAPI(title="tic-tac-toe play service")
    # the browser client is served from a separate static origin
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    def evict_idle() -> None:
        cutoff = time.monotonic() - IDLE_EVICTION_SECONDS
        stale = [sid for sid, s in sessions.items() if s.last_access < cutoff]
        for sid in stale:
            sessions.pop(sid, None)

    def bot_reply(session: Session) -> None:
        ctx = session.ctx
        dec = candidates(ctx, session.mode)
        cell = select(dec, session.rng)
        ply = len(ctx.history) + 1
        session.ctx = ctx.after(cell)
        entry = {"ply": ply, "mark": BOT_MARK, "cell": cell, "rule": dec.rule,
                 "description": RULE_DESCRIPTIONS.get(dec.rule, dec.rule)}
        session.move_log.append(entry)
        session.last_bot_move = {"cell": cell, "rule": dec.rule}

    def get_session(game_id: str) -> Session:
        session = sessions.get(game_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown game")
        session.last_access = time.monotonic()
        return session

    @app.post("/api/games", status_code=201)
    def create_game(req: NewGameRequest):
        if req.first_player not in ("bot", "human"):
            raise HTTPException(status_code=422, detail="first_player must be bot or human")
        if req.mode not in MODES:
            raise HTTPException(status_code=422, detail=f"mode must be one of {MODES}")
        with registry_lock:
            evict_idle()
            sid = uuid.uuid4().hex
            bot_starts = req.first_player == "bot"
            session = Session(
                id=sid,
                ctx=GameContext.initial(bot_mark=BOT_MARK, bot_started=bot_starts),
                mode=req.mode,
                rng=random.Random(req.seed),
                first_player=req.first_player,
            )
            if bot_starts:
                bot_reply(session)
            sessions[sid] = session
        return {
            "game_id": session.id,
            "board": session.ctx.board.to_string(),
            "status": session.status,
            "bot_move": session.last_bot_move,
        }

    @app.post("/api/games/{game_id}/moves")
    def play_move(game_id: str, req: MoveRequest):
        session = get_session(game_id)
        if not session.lock.acquire(blocking=False):
            raise HTTPException(status_code=409, detail="move in progress")
        try:
            if session.status != ONGOING:
                raise HTTPException(status_code=409, detail="game finished")
            board = session.ctx.board
            if board.to_move != HUMAN_MARK:
                raise HTTPException(status_code=409, detail="not your turn")
            if not 0 <= req.cell <= 8 or board.cells[req.cell] != ".":
                raise HTTPException(status_code=409, detail="illegal move")
            ply = len(session.ctx.history) + 1
            session.ctx = session.ctx.after(req.cell)
            session.move_log.append(
                {"ply": ply, "mark": HUMAN_MARK, "cell": req.cell, "rule": None,
                 "description": None})
            bot_move = None
            if session.status == ONGOING:
                bot_reply(session)
                bot_move = session.last_bot_move
            return {
                "board": session.ctx.board.to_string(),
                "status": session.status,
                "bot_move": bot_move,
            }
        finally:
            session.lock.release()

    @app.get("/api/games/{game_id}")
    def get_game(game_id: str):
        return get_session(game_id).view()

    return app
