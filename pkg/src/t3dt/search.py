"""Minimax baselines over the 3x3 board.

Three variants share one bitboard representation:

* ``mm_move``  -- full-tree minimax, win/loss/draw values in {+1, 0, -1}
* ``abp_move`` -- the same values with alpha-beta cutoffs; identical choice
* ``aba_move`` -- alpha-beta over depth-adjusted scores, preferring the
  fastest win and the slowest loss

All variants expand moves in ascending cell order and break ties toward the
lowest cell index, so their choices are deterministic.  No transposition
tables or move ordering are used; the plain variants are what the timing
harness compares.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import (
    Board,
    BoardError,
    FULL_MASK,
    ONGOING,
    WIN_TABLE,
    opponent,
    outcome,
)

# Depth-adjusted score base: a win d plies ahead scores SCORE_BASE - d.
# Any value above the 9-ply game length works.
SCORE_BASE = 10


@dataclass(frozen=True)
class SearchStats:
    nodes_visited: int
    max_depth: int


def _masks(board: Board, mark: str) -> tuple[int, int]:
    if outcome(board) != ONGOING:
        raise BoardError("search requires an ongoing board")
    if board.to_move != mark:
        raise BoardError(f"{mark} is not to move")
    return board.mask(mark), board.mask(opponent(mark))


def mm_move(board: Board, mark: str) -> tuple[int, int, SearchStats]:
    """Full minimax; returns (cell, value in {-1,0,1}, stats)."""
    own, opp = _masks(board, mark)
    nodes = 0
    maxd = 0

    def rec(own: int, opp: int, depth: int, _w=WIN_TABLE) -> int:
        nonlocal nodes, maxd
        nodes += 1
        if depth > maxd:
            maxd = depth
        if _w[opp]:
            return -1
        occ = own | opp
        if occ == FULL_MASK:
            return 0
        best = -2
        avail = FULL_MASK ^ occ
        while avail:
            bit = avail & -avail
            avail ^= bit
            v = -rec(opp, own | bit, depth + 1)
            if v > best:
                best = v
        return best

    best = -2
    best_cell = -1
    avail = FULL_MASK ^ (own | opp)
    while avail:
        bit = avail & -avail
        avail ^= bit
        v = -rec(opp, own | bit, 1)
        if v > best:
            best = v
            best_cell = bit.bit_length() - 1
    return best_cell, best, SearchStats(nodes_visited=nodes, max_depth=maxd)


def abp_move(board: Board, mark: str) -> tuple[int, int, SearchStats]:
    """Alpha-beta over the same {-1,0,1} values; same choice as ``mm_move``."""
    own, opp = _masks(board, mark)
    nodes = 0
    maxd = 0

    def rec(own: int, opp: int, alpha: int, beta: int, depth: int,
            _w=WIN_TABLE) -> int:
        nonlocal nodes, maxd
        nodes += 1
        if depth > maxd:
            maxd = depth
        if _w[opp]:
            return -1
        occ = own | opp
        if occ == FULL_MASK:
            return 0
        best = -2
        avail = FULL_MASK ^ occ
        while avail:
            bit = avail & -avail
            avail ^= bit
            v = -rec(opp, own | bit, -beta, -alpha, depth + 1)
            if v > best:
                best = v
                if v > alpha:
                    alpha = v
                    if alpha >= beta:
                        break
        return best

    best = -2
    best_cell = -1
    avail = FULL_MASK ^ (own | opp)
    while avail:
        bit = avail & -avail
        avail ^= bit
        v = -rec(opp, own | bit, -2, -best, 1)
        if v > best:
            best = v
            best_cell = bit.bit_length() - 1
    return best_cell, best, SearchStats(nodes_visited=nodes, max_depth=maxd)


def aba_move(board: Board, mark: str) -> tuple[int, int, SearchStats]:
    """Depth-aware alpha-beta; an immediate win scores SCORE_BASE - 1 = 9."""
    own, opp = _masks(board, mark)
    nodes = 0
    maxd = 0
    base = SCORE_BASE

    def rec(own: int, opp: int, alpha: int, beta: int, depth: int,
            _w=WIN_TABLE) -> int:
        nonlocal nodes, maxd
        nodes += 1
        if depth > maxd:
            maxd = depth
        if _w[opp]:
            return depth - base
        occ = own | opp
        if occ == FULL_MASK:
            return 0
        best = -base - 1
        avail = FULL_MASK ^ occ
        while avail:
            bit = avail & -avail
            avail ^= bit
            v = -rec(opp, own | bit, -beta, -alpha, depth + 1)
            if v > best:
                best = v
                if v > alpha:
                    alpha = v
                    if alpha >= beta:
                        break
        return best

    best = -base - 1
    best_cell = -1
    avail = FULL_MASK ^ (own | opp)
    while avail:
        bit = avail & -avail
        avail ^= bit
        v = -rec(opp, own | bit, -base - 1, -best, 1)
        if v > best:
            best = v
            best_cell = bit.bit_length() - 1
    return best_cell, best, SearchStats(nodes_visited=nodes, max_depth=maxd)


MOVE_FUNCTIONS = {
    "mm": mm_move,
    "abp": abp_move,
    "aba": aba_move,
}
