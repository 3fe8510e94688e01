import numpy as np
import pytest

from t3dt.bench import (
    BenchConfig,
    TimingMatrix,
    build_report,
    export,
    import_matrix_csv,
    run_selfplay,
    speedup,
    tpg,
    tpm,
    tpm_vector,
)


def matrix(rows, algorithm="test"):
    return TimingMatrix(entries=np.array(rows, dtype=np.int64),
                        algorithm=algorithm)


class TestMetrics:
    def test_tpm_constant_matrix(self):
        m = matrix([[7] * 9, [7] * 9])
        for j in range(1, 10):
            assert tpm(m, j) == 7

    def test_tpm_zero_filled_short_games(self):
        m = matrix([[10, 20] + [0] * 7, [30, 40] + [0] * 7])
        assert tpm(m, 1) == 20
        assert tpm(m, 2) == 30
        assert tpm(m, 3) == 0

    def test_tpm_index_range(self):
        m = matrix([[1] * 9])
        with pytest.raises(ValueError):
            tpm(m, 0)
        with pytest.raises(ValueError):
            tpm(m, 10)

    def test_tpg_single_row_mean(self):
        m = matrix([[100] + [0] * 8, [100] + [0] * 8])
        mean, std, per_game = tpg(m)
        assert mean == 100 and std == 0
        assert list(per_game) == [100, 100]

    def test_tpg_hand_arithmetic(self):
        m = matrix([[100] + [0] * 8, [200] + [0] * 8])
        mean, std, _ = tpg(m)
        assert mean == 150
        assert std == pytest.approx(70.71, abs=0.01)

    def test_tpg_needs_two_games_for_std(self):
        with pytest.raises(ValueError):
            tpg(matrix([[1] * 9]))

    def test_tpm_sum_equals_tpg_mean(self):
        rng = np.random.default_rng(0)
        m = matrix(rng.integers(0, 10_000, size=(50, 9)))
        mean, _, _ = tpg(m)
        assert sum(tpm_vector(m)) == pytest.approx(mean, rel=1e-12)

    def test_speedup_reference_values(self):
        assert speedup(6.96e9, 3.55e5) == pytest.approx(1.96e4, rel=5e-3)
        assert speedup(8.78e6, 1.19e5) == pytest.approx(73.8, rel=5e-3)
        assert speedup(123.0, 123.0) == 1.0
        with pytest.raises(ValueError):
            speedup(1.0, 0.0)


class TestSelfPlay:
    @pytest.fixture(scope="class")
    def small_run(self):
        cfg = BenchConfig(games=4, warmup_games=1,
                          algorithms=("aba", "t3dt"), seed=7)
        return cfg, run_selfplay(cfg, capture_transcripts=True)

    def test_shapes_and_zero_padding(self, small_run):
        cfg, matrices = small_run
        for name, m in matrices.items():
            assert m.entries.shape == (cfg.games, 9)
            transcripts = m.meta["transcripts"]
            for i, t in enumerate(transcripts):
                plies = len(t.split(","))
                assert (m.entries[i, :plies] > 0).all()
                assert (m.entries[i, plies:] == 0).all()

    def test_deterministic_policies_repeat_transcripts(self, small_run):
        _, matrices = small_run
        assert len(set(matrices["aba"].meta["transcripts"])) == 1

    def test_config_validation(self):
        with pytest.raises(ValueError):
            BenchConfig(games=0)
        with pytest.raises(ValueError):
            BenchConfig(games=1, algorithms=("nope",))

    def test_refuses_to_run_alongside_serve(self, monkeypatch):
        import t3dt.bench as bench

        monkeypatch.setattr(bench, "SERVE_ACTIVE", True)
        with pytest.raises(RuntimeError):
            run_selfplay(BenchConfig(games=1, warmup_games=0,
                                     algorithms=("t3dt",)))

    def test_report_contains_speedups(self, small_run):
        cfg, matrices = small_run
        report = build_report(cfg, matrices)
        assert "aba/t3dt" in report.speedups
        assert report.speedups["aba/t3dt"] > 0
        for stats in report.per_algorithm.values():
            assert sum(stats["tpm"]) == pytest.approx(stats["tpg_mean"],
                                                      rel=1e-12)


class TestExport:
    def test_round_trip_bit_exact(self, tmp_path):
        cfg = BenchConfig(games=3, warmup_games=0, algorithms=("t3dt",),
                          seed=1)
        matrices = run_selfplay(cfg)
        written = export(cfg, matrices, tmp_path)
        names = {p.name for p in written}
        assert {"t3dt_matrix.csv", "metrics.json", "tables.txt"} <= names
        back = import_matrix_csv(tmp_path / "t3dt_matrix.csv")
        assert (back.entries == matrices["t3dt"].entries).all()
        assert tpm_vector(back) == tpm_vector(matrices["t3dt"])

    def test_csv_omits_unplayed_moves(self, tmp_path):
        cfg = BenchConfig(games=2, warmup_games=0, algorithms=("t3dt",))
        matrices = run_selfplay(cfg)
        export(cfg, matrices, tmp_path)
        lines = (tmp_path / "t3dt_matrix.csv").read_text().strip().splitlines()
        assert len(lines) - 1 == int((matrices["t3dt"].entries > 0).sum())
        for line in lines[1:]:
            assert int(line.split(",")[2]) > 0

    def test_tables_have_move_columns(self, tmp_path):
        cfg = BenchConfig(games=2, warmup_games=0, algorithms=("t3dt",))
        matrices = run_selfplay(cfg)
        export(cfg, matrices, tmp_path)
        text = (tmp_path / "tables.txt").read_text()
        header_line = next(l for l in text.splitlines()
                           if l.strip().startswith("algorithm"))
        for j in range(1, 10):
            assert str(j) in header_line
