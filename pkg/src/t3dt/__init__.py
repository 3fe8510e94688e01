"""Tic-tac-toe policy workbench: rule-tree bot, minimax baselines,
exhaustive no-loss verification, and move-timing benchmarks."""

from .board import Board, outcome, winning_moves, fork_moves
from .rules import Decision, GameContext, candidates, choose
from .policies import make_policy, play_game
from .search import mm_move, abp_move, aba_move
from .verify import enumerate_games, verify_no_loss, optimality_scan

__all__ = [
    "Board", "outcome", "winning_moves", "fork_moves",
    "Decision", "GameContext", "candidates", "choose",
    "make_policy", "play_game",
    "mm_move", "abp_move", "aba_move",
    "enumerate_games", "verify_no_loss", "optimality_scan",
]
