"""Exhaustive enumeration and no-loss proof engine.

``verify_no_loss`` walks an AND/OR graph: at the policy's turns it branches
over *every* candidate in the decision's support, at the opponent's turns
over every legal move.  A single losing leaf refutes the no-loss claim, so
the result is a certainty statement, not a statistic.

States are memoized.  The rule-tree policy's choices can depend on the first
four plies of history, so shallow states carry that prefix in their key;
from six plies on, every decision is a pure function of the board.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .board import (
    Board,
    DRAW,
    FULL_MASK,
    ONGOING,
    OWIN,
    WIN_TABLE,
    XWIN,
    opponent,
    outcome,
)
from .policies import GameRecord, make_policy
from .rules import GameContext

MAX_LOSS_TRANSCRIPTS = 200


@dataclass(frozen=True)
class EnumerationCensus:
    total_games: int
    x_wins: int
    o_wins: int
    draws: int
    games_by_length: dict[int, int]


def enumerate_games() -> EnumerationCensus:
    """Count every legal move sequence from the empty board, X moving first.

    Sequences are distinct games; board symmetry is not quotiented.
    """
    counts = {XWIN: 0, OWIN: 0, DRAW: 0}
    by_length = {n: 0 for n in range(5, 10)}

    def rec(own: int, other: int, depth: int, x_to_move: bool,
            _w=WIN_TABLE) -> None:
        # own = side to move, other just moved
        if _w[other]:
            counts[OWIN if x_to_move else XWIN] += 1
            by_length[depth] += 1
            return
        occ = own | other
        if occ == FULL_MASK:
            counts[DRAW] += 1
            by_length[depth] += 1
            return
        avail = FULL_MASK ^ occ
        while avail:
            bit = avail & -avail
            avail ^= bit
            rec(other, own | bit, depth + 1, not x_to_move)

    rec(0, 0, 0, True)
    total = sum(counts.values())
    return EnumerationCensus(total_games=total, x_wins=counts[XWIN],
                             o_wins=counts[OWIN], draws=counts[DRAW],
                             games_by_length=by_length)


@dataclass
class VerificationReport:
    policy: str
    role: str
    mode: str | None
    losses: list[str] = field(default_factory=list)
    wins: int = 0
    draws: int = 0
    loss_states: int = 0
    branch_nodes: int = 0

    @property
    def no_loss(self) -> bool:
        return self.loss_states == 0

    def to_dict(self) -> dict:
        return {
            "policy": self.policy,
            "role": self.role,
            "mode": self.mode,
            "no_loss": self.no_loss,
            "wins": self.wins,
            "draws": self.draws,
            "loss_states": self.loss_states,
            "branch_nodes": self.branch_nodes,
            "losses": self.losses,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _state_key(ctx: GameContext) -> tuple:
    board = ctx.board
    if len(ctx.history) >= 6:
        return (board.mask("X"), board.mask("O"), board.to_move)
    return (board.mask("X"), board.mask("O"), board.to_move, ctx.history[:4])


def _verify_role(policy, bot_starts: bool) -> VerificationReport:
    bot_mark = "X"
    opp_mark = "O"
    report = VerificationReport(
        policy=policy.name, role="first" if bot_starts else "second",
        mode=getattr(policy, "mode", None))
    memo: dict[tuple, bool] = {}

    def explore(ctx: GameContext) -> bool:
        """Return True if some leaf below is a bot loss."""
        key = _state_key(ctx)
        cached = memo.get(key)
        if cached is not None:
            return cached
        board = ctx.board
        state = outcome(board)
        if state != ONGOING:
            if state == DRAW:
                report.draws += 1
                lost = False
            elif (state == XWIN) == (bot_mark == "X"):
                report.wins += 1
                lost = False
            else:
                report.loss_states += 1
                lost = True
                if len(report.losses) < MAX_LOSS_TRANSCRIPTS:
                    record = GameRecord(
                        moves=tuple((i + 1, m, c, "-")
                                    for i, (c, m) in enumerate(ctx.history)),
                        outcome=state, board=board)
                    report.losses.append(record.to_transcript())
            memo[key] = lost
            return lost
        if board.to_move == bot_mark:
            moves = policy.decide(ctx).candidates
            for c in moves:
                if board.cells[c] != ".":
                    raise RuntimeError(
                        f"policy {policy.name} proposed occupied cell {c} on "
                        f"{board.to_string()}")
        else:
            moves = board.empties()
        report.branch_nodes += len(moves)
        lost = False
        for c in moves:
            if explore(ctx.after(c)):
                lost = True
        memo[key] = lost
        return lost

    ctx = GameContext.initial(bot_mark=bot_mark, bot_started=bot_starts)
    # The policy object sees itself as the bot; the opponent side is the
    # unconstrained branch over all legal moves.
    explore(ctx)
    return report


def verify_no_loss(policy, role: str = "both") -> VerificationReport:
    """Prove or refute no-loss for a policy over the full branch product."""
    if role not in ("first", "second", "both"):
        raise ValueError(f"bad role: {role}")
    if role in ("first", "second"):
        return _verify_role(policy, bot_starts=(role == "first"))
    first = _verify_role(policy, bot_starts=True)
    second = _verify_role(policy, bot_starts=False)
    merged = VerificationReport(policy=first.policy, role="both",
                                mode=first.mode)
    merged.losses = first.losses + second.losses
    merged.wins = first.wins + second.wins
    merged.draws = first.draws + second.draws
    merged.loss_states = first.loss_states + second.loss_states
    merged.branch_nodes = first.branch_nodes + second.branch_nodes
    return merged


def verify_branch(x1_class_cells, o1_cells_for, mode: str = "safe") -> VerificationReport:
    """Exhaustively verify one bot-starts opening branch wins every leaf.

    ``x1_class_cells`` are the bot's candidate first cells; ``o1_cells_for``
    maps each first cell to the opponent replies that select the branch.
    """
    policy = make_policy("t3dt", mode)
    report = VerificationReport(policy="t3dt", role="first", mode=mode)
    memo: dict[tuple, bool] = {}

    def explore(ctx: GameContext) -> bool:
        key = _state_key(ctx)
        cached = memo.get(key)
        if cached is not None:
            return cached
        board = ctx.board
        state = outcome(board)
        if state != ONGOING:
            if state == XWIN:
                report.wins += 1
                bad = False
            else:
                # any non-win refutes a guaranteed-win branch
                bad = True
                if state == DRAW:
                    report.draws += 1
                else:
                    report.loss_states += 1
                if len(report.losses) < MAX_LOSS_TRANSCRIPTS:
                    record = GameRecord(
                        moves=tuple((i + 1, m, c, "-")
                                    for i, (c, m) in enumerate(ctx.history)),
                        outcome=state, board=board)
                    report.losses.append(record.to_transcript())
            memo[key] = bad
            return bad
        if board.to_move == "X":
            moves = policy.decide(ctx).candidates
        else:
            moves = board.empties()
        report.branch_nodes += len(moves)
        bad = False
        for c in moves:
            if explore(ctx.after(c)):
                bad = True
        memo[key] = bad
        return bad

    root = GameContext.initial(bot_mark="X", bot_started=True)
    for x1 in x1_class_cells:
        after_x1 = root.after(x1)
        for o1 in o1_cells_for(x1):
            explore(after_x1.after(o1))
    return report


@dataclass(frozen=True)
class OptimalityEntry:
    board: str
    mover: str
    mm_cell: int
    aba_cell: int
    plies_to_win_mm: int
    plies_to_win_aba: int


def _solved_tables():
    """Memoized game values over every reachable (X-mask, O-mask, mover)."""
    plain: dict[tuple, int] = {}
    depth_aware: dict[tuple, int] = {}
    base = 10

    def solve(own: int, other: int) -> tuple[int, int]:
        # own to move; returns (plain value, depth-aware value) for the mover
        key = (own, other)
        if key in plain:
            return plain[key], depth_aware[key]
        if WIN_TABLE[other]:
            plain[key], depth_aware[key] = -1, -base
            return -1, -base
        occ = own | other
        if occ == FULL_MASK:
            plain[key], depth_aware[key] = 0, 0
            return 0, 0
        best_p, best_d = -2, -base - 1
        avail = FULL_MASK ^ occ
        while avail:
            bit = avail & -avail
            avail ^= bit
            cp, cd = solve(other, own | bit)
            vp = -cp
            vd = -cd - 1 if cd < 0 else (-cd + 1 if cd > 0 else 0)
            if vp > best_p:
                best_p = vp
            if vd > best_d:
                best_d = vd
        plain[key], depth_aware[key] = best_p, best_d
        return best_p, best_d

    solve(0, 0)
    return plain, depth_aware, solve


def optimality_scan() -> list[OptimalityEntry]:
    """Positions where plain minimax wins strictly later than the
    depth-aware variant, under each algorithm's own self-play."""
    plain, depth_aware, solve = _solved_tables()

    def choice(own: int, other: int, table_is_plain: bool) -> int:
        best_v = None
        best_c = -1
        avail = FULL_MASK ^ (own | other)
        while avail:
            bit = avail & -avail
            avail ^= bit
            cp, cd = solve(other, own | bit)
            if table_is_plain:
                v = -cp
            else:
                cd_ = cd
                v = -cd_ - 1 if cd_ < 0 else (-cd_ + 1 if cd_ > 0 else 0)
            if best_v is None or v > best_v:
                best_v = v
                best_c = bit.bit_length() - 1
        return best_c

    def plies_to_end(own: int, other: int, first_cell: int,
                     table_is_plain: bool) -> int:
        n = 1
        own = own | (1 << first_cell)
        cur_own, cur_other = other, own  # next mover's view
        while True:
            if WIN_TABLE[cur_other] or (cur_own | cur_other) == FULL_MASK:
                return n
            c = choice(cur_own, cur_other, table_is_plain)
            cur_own, cur_other = cur_other, cur_own | (1 << c)
            n += 1

    # Reachable states, under either first mover, where the mover is forced
    # to win.  (own, other) is always (mover, waiter).
    seen: set[tuple[int, int, str]] = set()
    entries: list[OptimalityEntry] = []

    def visit(own: int, other: int, mover: str) -> None:
        key = (own, other, mover)
        if key in seen:
            return
        seen.add(key)
        if WIN_TABLE[other] or (own | other) == FULL_MASK:
            return
        if plain[(own, other)] == 1:
            mm_c = choice(own, other, True)
            aba_c = choice(own, other, False)
            if mm_c != aba_c:
                p_mm = plies_to_end(own, other, mm_c, True)
                p_aba = plies_to_end(own, other, aba_c, False)
                if p_mm > p_aba:
                    x_mask = own if mover == "X" else other
                    o_mask = other if mover == "X" else own
                    text = "".join(
                        "X" if x_mask >> i & 1 else
                        "O" if o_mask >> i & 1 else "."
                        for i in range(9))
                    entries.append(OptimalityEntry(
                        board=text, mover=mover, mm_cell=mm_c, aba_cell=aba_c,
                        plies_to_win_mm=p_mm, plies_to_win_aba=p_aba))
        avail = FULL_MASK ^ (own | other)
        while avail:
            bit = avail & -avail
            avail ^= bit
            visit(other, own | bit, opponent(mover))

    visit(0, 0, "X")
    visit(0, 0, "O")
    return entries
