import pytest

from t3dt.board import CORNERS, EDGES, LINES
from t3dt.policies import make_policy, replay_transcript
from t3dt.verify import (
    enumerate_games,
    optimality_scan,
    verify_branch,
    verify_no_loss,
)

FIG_BOARD = "OOX.X..O."


def count_five_move_wins():
    """Independent oracle: ordered games where X's three cells are a line.

    A 5-move game is X,O,X,O,X with X's cells exactly one of the 8 lines
    (in any of 3! orders) and O's two cells any ordered pair of the other
    six cells.  X cannot have won earlier with only the final line complete.
    """
    import itertools

    total = 0
    for line in LINES:
        rest = [c for c in range(9) if c not in line]
        x_orders = len(list(itertools.permutations(line)))       # 3! = 6
        o_orders = len(list(itertools.permutations(rest, 2)))    # 6*5 = 30
        total += x_orders * o_orders
    return total


class TestCensus:
    @pytest.fixture(scope="class")
    def census(self):
        return enumerate_games()

    def test_totals_consistent(self, census):
        assert census.total_games == (census.x_wins + census.o_wins
                                      + census.draws)
        assert sum(census.games_by_length.values()) == census.total_games

    def test_five_move_wins_against_oracle(self, census):
        assert census.games_by_length[5] == count_five_move_wins()

    def test_deterministic(self, census):
        assert enumerate_games() == census


class TestNoLoss:
    def test_aba_never_loses(self):
        report = verify_no_loss(make_policy("aba"), role="both")
        assert report.no_loss and report.losses == []

    def test_t3dt_safe_never_loses_single_role(self):
        report = verify_no_loss(make_policy("t3dt", "safe"), role="first")
        assert report.no_loss
        assert report.branch_nodes > 0

    def test_random_second_player_loses(self):
        report = verify_no_loss(make_policy("random"), role="second")
        assert not report.no_loss
        assert report.losses

    def test_loss_transcripts_replay_to_opponent_wins(self):
        report = verify_no_loss(make_policy("random"), role="second")
        for transcript in report.losses[:20]:
            # the bot plays X and moved second, so O started and O won
            record = replay_transcript(transcript, first_mover="O")
            assert record.outcome == "OWin"

    def test_policy_illegal_candidate_faults(self):
        class Bad:
            name = "bad"
            def decide(self, ctx):
                from t3dt.rules import Decision
                return Decision(candidates=(0,), weights={0: 1.0}, rule="BAD")

        with pytest.raises(RuntimeError):
            verify_no_loss(Bad(), role="first")

    def test_role_validation(self):
        with pytest.raises(ValueError):
            verify_no_loss(make_policy("aba"), role="sideways")

    def test_report_serializes(self):
        report = verify_no_loss(make_policy("aba"), role="first")
        data = report.to_dict()
        assert data["no_loss"] is True
        assert data["policy"] == "aba"


class TestGuaranteedBranches:
    def test_corner_vs_corner_always_wins(self):
        report = verify_branch(CORNERS,
                               lambda x1: [c for c in CORNERS if c != x1])
        assert report.draws == 0 and report.loss_states == 0
        assert report.wins > 0


class TestOptimalityScan:
    @pytest.fixture(scope="class")
    def entries(self):
        return optimality_scan()

    def test_fig_position_listed(self, entries):
        match = [e for e in entries
                 if e.board == FIG_BOARD and e.mover == "X"]
        assert len(match) == 1
        entry = match[0]
        assert entry.aba_cell == 6
        assert entry.plies_to_win_aba == 1
        assert entry.plies_to_win_mm > 1

    def test_entries_strictly_slower_and_distinct(self, entries):
        assert entries
        for e in entries:
            assert e.plies_to_win_mm > e.plies_to_win_aba
            assert e.mm_cell != e.aba_cell
