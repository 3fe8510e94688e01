import random

import pytest

from t3dt.board import ONGOING, outcome
from t3dt.rules import GameContext


def random_playout_context(seed: int, bot_started: bool = True,
                           max_plies: int | None = None) -> GameContext:
    """A reachable mid-game context produced by a seeded uniform playout.

    The returned context is always ongoing and it is always X's turn
    (the bot's), so a decision can be requested from it.
    """
    rng = random.Random(seed)
    ctx = GameContext.initial(bot_mark="X", bot_started=bot_started)
    if max_plies is None:
        max_plies = rng.randrange(0, 8)
    states = [ctx]
    for _ in range(max_plies):
        if outcome(ctx.board) != ONGOING:
            break
        ctx = ctx.after(rng.choice(ctx.board.empties()))
        states.append(ctx)
    candidates = [s for s in states
                  if outcome(s.board) == ONGOING and s.board.to_move == "X"]
    return candidates[-1] if candidates else states[0]


@pytest.fixture
def rng():
    return random.Random(0)


# one line per acceptance criterion, echoed after the normal pytest summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
