"""Policy objects sharing one contract: a deterministic candidate set per turn.

Every policy exposes ``decide(ctx) -> Decision``; sampling happens outside,
so the verifier can branch over the full candidate set while the game loop
draws a single cell.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .board import Board, ONGOING, opponent, outcome
from .rules import (
    Decision,
    GameContext,
    PolicyError,
    RANDOM_FILL,
    SAFE,
    candidates,
)
from .search import MOVE_FUNCTIONS


class IllegalMoveError(RuntimeError):
    """A policy returned an occupied or out-of-range cell."""

    def __init__(self, message: str, transcript: str):
        super().__init__(f"{message}\n{transcript}")
        self.transcript = transcript


class RuleTreePolicy:
    """The randomized rule-tree bot."""

    def __init__(self, mode: str = SAFE):
        self.mode = mode
        self.name = "t3dt"

    def decide(self, ctx: GameContext) -> Decision:
        return candidates(ctx, self.mode)


class SearchPolicy:
    """Deterministic minimax baseline; the decision is always a singleton."""

    def __init__(self, kind: str):
        if kind not in MOVE_FUNCTIONS:
            raise ValueError(f"unknown search policy: {kind}")
        self.kind = kind
        self.name = kind

    def decide(self, ctx: GameContext) -> Decision:
        cell, _value, _stats = MOVE_FUNCTIONS[self.kind](ctx.board, ctx.bot_mark)
        return Decision(candidates=(cell,), weights={cell: 1.0},
                        rule=self.kind.upper())


class UniformRandomPolicy:
    """Plays any empty cell uniformly; the weakest legal opponent."""

    name = "random"

    def decide(self, ctx: GameContext) -> Decision:
        empties = ctx.board.empties()
        w = 1.0 / len(empties)
        return Decision(candidates=empties, weights={c: w for c in empties},
                        rule=RANDOM_FILL)


POLICY_NAMES = ("t3dt", "mm", "abp", "aba", "random")


def make_policy(name: str, mode: str = SAFE):
    if name == "t3dt":
        return RuleTreePolicy(mode)
    if name in MOVE_FUNCTIONS:
        return SearchPolicy(name)
    if name == "random":
        return UniformRandomPolicy()
    raise ValueError(f"unknown policy: {name}")


def select(decision: Decision, rng: random.Random) -> int:
    if len(decision.candidates) == 1:
        return decision.candidates[0]
    cells = decision.candidates
    weights = [decision.weights[c] for c in cells]
    return rng.choices(cells, weights=weights, k=1)[0]


@dataclass(frozen=True)
class GameRecord:
    """Full transcript of one game: per-ply moves with rule labels."""

    moves: tuple[tuple[int, str, int, str], ...]  # (ply, mark, cell, rule)
    outcome: str
    board: Board

    def to_transcript(self) -> str:
        lines = [f"{ply} {mark} {cell} {rule}" for ply, mark, cell, rule in self.moves]
        lines.append(f"RESULT {self.outcome}")
        return "\n".join(lines)


def replay_transcript(text: str, first_mover: str) -> GameRecord:
    """Parse a transcript back into a record, re-deriving the final board."""
    board = Board.empty(first_mover=first_mover)
    moves = []
    result = None
    for line in text.strip().splitlines():
        parts = line.split()
        if parts[0] == "RESULT":
            result = parts[1]
            break
        ply, mark, cell, rule = int(parts[0]), parts[1], int(parts[2]), parts[3]
        if board.to_move != mark:
            raise PolicyError(f"transcript out of order at ply {ply}")
        board = board.move(cell)
        moves.append((ply, mark, cell, rule))
    final = outcome(board)
    if result is not None and result != final:
        raise PolicyError(f"transcript claims {result} but replays to {final}")
    return GameRecord(moves=tuple(moves), outcome=final, board=board)


def play_game(bot_policy, opponent_policy, bot_starts: bool = True,
              rng: random.Random | None = None,
              bot_mark: str = "X") -> GameRecord:
    """Alternate the two policies from an empty board until the game ends.

    The bot plays ``bot_mark``; the opponent plays the other mark.  Each
    policy sees a context where *it* is the bot, so a rule-tree policy can
    serve on either side.
    """
    rng = rng or random.Random()
    opp_mark = opponent(bot_mark)
    bot_ctx = GameContext.initial(bot_mark=bot_mark, bot_started=bot_starts)
    opp_ctx = GameContext.initial(bot_mark=opp_mark, bot_started=not bot_starts)
    moves: list[tuple[int, str, int, str]] = []
    ply = 0
    while True:
        board = bot_ctx.board
        state = outcome(board)
        if state != ONGOING:
            return GameRecord(moves=tuple(moves), outcome=state, board=board)
        ply += 1
        if board.to_move == bot_mark:
            decision = bot_policy.decide(bot_ctx)
        else:
            decision = opponent_policy.decide(opp_ctx)
        cell = select(decision, rng)
        if not 0 <= cell <= 8 or board.cells[cell] != ".":
            partial = GameRecord(moves=tuple(moves), outcome=ONGOING, board=board)
            raise IllegalMoveError(
                f"illegal cell {cell} from rule {decision.rule} at ply {ply}",
                partial.to_transcript())
        moves.append((ply, board.to_move, cell, decision.rule))
        bot_ctx = bot_ctx.after(cell)
        opp_ctx = opp_ctx.after(cell)
