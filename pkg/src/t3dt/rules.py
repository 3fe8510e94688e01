"""Rule-tree move engine: the randomized no-loss bot.

A decision is a *set* of candidate cells with sampling weights and the name
of the rule that produced it.  Priority at every turn:

1. WIN        -- complete an own triplet
2. BLOCK      -- occupy the opponent's completing cell
3. tree rule  -- the opening-book branch keyed on the first few moves
4. FORK-MAKE / FORK-BLOCK (safe mode only)
5. RANDOM-FILL

A tree rule whose target set is empty, or whose precondition no longer holds
because the opponent deviated, falls through to steps 4/5.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random

from .board import (
    Board,
    BoardError,
    CENTRE,
    CENTRE_CELL,
    CORNER,
    CORNERS,
    EDGE,
    EDGES,
    ONGOING,
    classify,
    corners_adjacent_to,
    diag_opposite,
    min_distance_corners,
    nearer_edges,
    opponent,
    outcome,
    shared_corner,
    winning_cells_masks,
)

STRICT = "strict"
SAFE = "safe"
MODES = (STRICT, SAFE)

FIRST_RANDOM = "FIRST_RANDOM"
C_EDGE = "C-EDGE"
C_CORNER = "C-CORNER"
C_CENTRE = "C-CENTRE"
E_CORNER = "E-CORNER"
E_NEAR_EDGE = "E-NEAR-EDGE"
E_OPP_EDGE = "E-OPP-EDGE"
E_CENTRE = "E-CENTRE"
M_EDGE = "M-EDGE"
M_CORNER = "M-CORNER"
O_CORNER = "O-CORNER"
O_CORNER_CORNER = "O-CORNER-CORNER"
O_CORNER_EDGE = "O-CORNER-EDGE"
O_EDGE = "O-EDGE"
O_CENTRE = "O-CENTRE"
WIN = "WIN"
BLOCK = "BLOCK"
FORK_MAKE = "FORK-MAKE"
FORK_BLOCK = "FORK-BLOCK"
RANDOM_FILL = "RANDOM-FILL"

TREE_RULES = frozenset({
    FIRST_RANDOM, C_EDGE, C_CORNER, C_CENTRE, E_CORNER, E_NEAR_EDGE,
    E_OPP_EDGE, E_CENTRE, M_EDGE, M_CORNER, O_CORNER, O_CORNER_CORNER,
    O_CORNER_EDGE, O_EDGE, O_CENTRE,
})

ALL_RULES = TREE_RULES | {WIN, BLOCK, FORK_MAKE, FORK_BLOCK, RANDOM_FILL}

RULE_DESCRIPTIONS = {
    FIRST_RANDOM: "random opening: centre/corner/edge",
    C_EDGE: "took centre after opening a corner against your edge reply",
    C_CORNER: "building the corner fork after corner-vs-corner opening",
    C_CENTRE: "took the diagonally opposite corner against your centre",
    E_CORNER: "took centre, then a free edge, after opening on an edge",
    E_NEAR_EDGE: "took the corner between our edge and yours (L fork)",
    E_OPP_EDGE: "took a corner by my edge, then the corner closest to yours",
    E_CENTRE: "took a corner next to my edge against your centre",
    M_EDGE: "from centre, building the open-V corner fork past your edge",
    M_CORNER: "from centre, took the corner diagonally opposite yours",
    O_CORNER: "took centre against your corner opening",
    O_CORNER_CORNER: "took a free edge after your two opposite corners",
    O_CORNER_EDGE: "took the corner closest to both your marks",
    O_EDGE: "flanked your edge opening, then the centre",
    O_CENTRE: "took corners against your centre opening",
    WIN: "completed a winning triplet",
    BLOCK: "blocked your two-in-a-row",
    FORK_MAKE: "created a double threat",
    FORK_BLOCK: "neutralized your double-threat setup",
    RANDOM_FILL: "no decisive line left: random fill",
}


class PolicyError(ValueError):
    """Raised when a decision is requested out of turn or on a finished game."""


@dataclass(frozen=True)
class Decision:
    candidates: tuple[int, ...]
    weights: dict[int, float]
    rule: str

    def __post_init__(self):
        if not self.candidates:
            raise PolicyError(f"empty decision for rule {self.rule}")


@dataclass(frozen=True)
class GameContext:
    """One player's view of a game: board, own mark, and full move history."""

    board: Board
    bot_mark: str
    history: tuple[tuple[int, str], ...] = ()
    bot_started: bool = True

    @classmethod
    def initial(cls, bot_mark: str = "X", bot_started: bool = True) -> "GameContext":
        first = bot_mark if bot_started else opponent(bot_mark)
        return cls(board=Board.empty(first_mover=first), bot_mark=bot_mark,
                   history=(), bot_started=bot_started)

    def after(self, cell: int) -> "GameContext":
        mark = self.board.to_move
        return GameContext(board=self.board.move(cell), bot_mark=self.bot_mark,
                           history=self.history + ((cell, mark),),
                           bot_started=self.bot_started)

    def validate(self) -> None:
        board = Board.empty(first_mover=self.board.first_mover)
        for cell, mark in self.history:
            if board.to_move != mark:
                raise PolicyError("history marks out of order")
            board = board.move(cell)
        if board.cells != self.board.cells:
            raise PolicyError("history does not replay to the board")
        if self.history:
            first_mark = self.history[0][1]
            if (first_mark == self.bot_mark) != self.bot_started:
                raise PolicyError("bot_started inconsistent with history")


def _uniform(cells, rule: str) -> Decision:
    cells = tuple(sorted(cells))
    w = 1.0 / len(cells)
    return Decision(candidates=cells, weights={c: w for c in cells}, rule=rule)


def _first_move_decision() -> Decision:
    # Corner, edge, or centre each with probability 1/3, uniform within class.
    weights = {c: 1 / 12 for c in CORNERS}
    weights.update({e: 1 / 12 for e in EDGES})
    weights[CENTRE_CELL] = 1 / 3
    return Decision(candidates=tuple(range(9)), weights=weights,
                    rule=FIRST_RANDOM)


def _free(board: Board, cells) -> tuple[int, ...]:
    return tuple(c for c in cells if board.cells[c] == ".")


def _tree_rule(ctx: GameContext) -> Decision | None:
    board = ctx.board
    bot_moves = sum(1 for _, m in ctx.history if m == ctx.bot_mark)
    k = bot_moves + 1  # bot move number about to be played

    if ctx.bot_started:
        if k == 1:
            return _first_move_decision()
        if k > 3 or len(ctx.history) < 2:
            return None
        x1 = ctx.history[0][0]
        o1 = ctx.history[1][0]
        cx1, co1 = classify(x1), classify(o1)
        if k == 2:
            if cx1 == CORNER:
                if co1 == EDGE:
                    return _uniform((CENTRE_CELL,), C_EDGE)
                if co1 == CORNER:
                    free = _free(board, CORNERS)
                    return _uniform(free, C_CORNER) if free else None
                target = diag_opposite(x1)
                if board.cells[target] == ".":
                    return _uniform((target,), C_CENTRE)
                return None
            if cx1 == EDGE:
                if co1 == CORNER:
                    return _uniform((CENTRE_CELL,), E_CORNER)
                if co1 == EDGE:
                    if o1 in nearer_edges(x1):
                        c = shared_corner(x1, o1)
                        return _uniform((c,), E_NEAR_EDGE) if board.cells[c] == "." else None
                    free = _free(board, corners_adjacent_to(x1))
                    return _uniform(free, E_OPP_EDGE) if free else None
                free = _free(board, corners_adjacent_to(x1))
                return _uniform(free, E_CENTRE) if free else None
            # centre start; the opponent cannot also hold the centre
            if co1 == EDGE:
                free = _free(board, CORNERS)
                return _uniform(free, M_EDGE) if free else None
            if co1 == CORNER:
                target = diag_opposite(o1)
                if board.cells[target] == ".":
                    return _uniform((target,), M_CORNER)
            return None
        # k == 3
        if len(ctx.history) < 4:
            return None
        o2 = ctx.history[3][0]
        if cx1 == CORNER:
            if co1 == EDGE:
                forks = _fork_cells(board, ctx.bot_mark) & set(CORNERS)
                return _uniform(forks, C_EDGE) if forks else None
            if co1 == CORNER:
                free = _free(board, CORNERS)
                return _uniform(free, C_CORNER) if free else None
            return None
        if cx1 == EDGE:
            if co1 == CORNER:
                free = _free(board, EDGES)
                return _uniform(free, E_CORNER) if free else None
            if co1 == EDGE:
                if o1 in nearer_edges(x1):
                    if board.cells[CENTRE_CELL] == ".":
                        return _uniform((CENTRE_CELL,), E_NEAR_EDGE)
                    return None
                free = _free(board, CORNERS)
                if not free:
                    return None
                best = min_distance_corners({o1, o2}, free)
                return _uniform(best, E_OPP_EDGE)
            return None
        # centre start
        if co1 == EDGE:
            forks = _fork_cells(board, ctx.bot_mark) & set(CORNERS)
            return _uniform(forks, M_EDGE) if forks else None
        if co1 == CORNER and classify(o2) != CORNER:
            forks = _fork_cells(board, ctx.bot_mark) & set(CORNERS)
            return _uniform(forks, M_CORNER) if forks else None
        return None

    # opponent started
    if not ctx.history:
        return None
    o1 = ctx.history[0][0]
    co1 = classify(o1)
    if k == 1:
        if co1 == CORNER:
            return _uniform((CENTRE_CELL,), O_CORNER)
        if co1 == EDGE:
            return _uniform(corners_adjacent_to(o1), O_EDGE)
        return _uniform(CORNERS, O_CENTRE)
    if k == 2:
        if len(ctx.history) < 3:
            return None
        o2 = ctx.history[2][0]
        if co1 == CORNER:
            if classify(o2) == CORNER:
                free = _free(board, EDGES)
                return _uniform(free, O_CORNER_CORNER) if free else None
            if classify(o2) == EDGE:
                free = _free(board, CORNERS)
                if not free:
                    return None
                best = min_distance_corners({o1, o2}, free)
                return _uniform(best, O_CORNER_EDGE)
            return None
        if co1 == EDGE:
            if board.cells[CENTRE_CELL] == ".":
                return _uniform((CENTRE_CELL,), O_EDGE)
            return None
        free = _free(board, CORNERS)
        return _uniform(free, O_CENTRE) if free else None
    return None


def _fork_cells(board: Board, mark: str) -> set[int]:
    own = board.mask(mark)
    other = board.mask(opponent(mark))
    out = set()
    for c in board.empties():
        if len(winning_cells_masks(own | (1 << c), other)) >= 2:
            out.add(c)
    return out


def _fork_block_cells(board: Board, bot: str) -> tuple[int, ...]:
    """Moves that survive the opponent's fork threat two plies out.

    A move is kept when, for every opponent reply, the bot either has an
    immediate win or the opponent holds at most one completing cell.  Moves
    that additionally create an own threat are preferred: a forced block
    spends the opponent's tempo.
    """
    opp = opponent(bot)
    own0 = board.mask(bot)
    other0 = board.mask(opp)
    safe = []
    threats = []
    for c in board.empties():
        own1 = own0 | (1 << c)
        ok = True
        for r in board.empties():
            if r == c:
                continue
            other1 = other0 | (1 << r)
            if (len(winning_cells_masks(other1, own1)) >= 2
                    and not winning_cells_masks(own1, other1)):
                ok = False
                break
        if ok:
            safe.append(c)
            if winning_cells_masks(own1, other0):
                threats.append(c)
    return tuple(threats or safe)


def candidates(ctx: GameContext, mode: str = SAFE) -> Decision:
    """The full candidate set and weights for the bot's next move."""
    if mode not in MODES:
        raise PolicyError(f"unknown mode: {mode}")
    board = ctx.board
    if outcome(board) != ONGOING:
        raise PolicyError("game is over")
    if board.to_move != ctx.bot_mark:
        raise PolicyError("not the bot's turn")

    bot = ctx.bot_mark
    opp = opponent(bot)
    own = board.mask(bot)
    other = board.mask(opp)

    wins = winning_cells_masks(own, other)
    if wins:
        return _uniform(wins, WIN)
    blocks = winning_cells_masks(other, own)
    if blocks:
        return _uniform(blocks, BLOCK)

    dec = _tree_rule(ctx)
    if dec is not None:
        return dec

    if mode == SAFE:
        forks = _fork_cells(board, bot)
        if forks:
            return _uniform(forks, FORK_MAKE)
        if _fork_cells(board, opp):
            neutral = _fork_block_cells(board, bot)
            if neutral:
                return _uniform(neutral, FORK_BLOCK)

    return _uniform(board.empties(), RANDOM_FILL)


def choose(ctx: GameContext, mode: str, rng: Random) -> tuple[int, str]:
    """Sample one cell from the decision's weights. Deterministic per seed."""
    dec = candidates(ctx, mode)
    if len(dec.candidates) == 1:
        return dec.candidates[0], dec.rule
    cells = dec.candidates
    weights = [dec.weights[c] for c in cells]
    return rng.choices(cells, weights=weights, k=1)[0], dec.rule
