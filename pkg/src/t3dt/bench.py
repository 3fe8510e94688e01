"""Self-play move-timing harness.

For each algorithm, a matrix of nanoseconds with one row per recorded game
and one column per move index 1..9 is collected; games shorter than nine
plies leave trailing zeros.  Per-move means (TPM), per-game totals (TPG),
and TPG ratios against the rule-tree bot are derived from the raw matrix.

The timer wraps move selection only: the context update, bookkeeping, and
matrix writes happen outside the measured window.
"""

from __future__ import annotations

import json
import platform
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .board import ONGOING, outcome
from .policies import make_policy, select
from .rules import GameContext

DEFAULT_WARMUP = 50
DEFAULT_GAMES = 10_000
ALGORITHMS = ("mm", "abp", "aba", "t3dt")

# set by the serve command; timing while handling requests would be noise
SERVE_ACTIVE = False


@dataclass
class BenchConfig:
    games: int = DEFAULT_GAMES
    warmup_games: int = DEFAULT_WARMUP
    algorithms: tuple[str, ...] = ALGORITHMS
    seed: int = 0

    def __post_init__(self):
        if self.games < 1:
            raise ValueError("games must be >= 1")
        if self.warmup_games < 0:
            raise ValueError("warmup_games must be >= 0")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad:
            raise ValueError(f"unknown algorithms: {bad}")


@dataclass
class TimingMatrix:
    entries: np.ndarray  # (games, 9) int64 nanoseconds
    algorithm: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=np.int64)
        if self.entries.ndim != 2 or self.entries.shape[1] != 9:
            raise ValueError("timing matrix must be Ng x 9")
        if (self.entries < 0).any():
            raise ValueError("negative timings")

    @property
    def games(self) -> int:
        return self.entries.shape[0]


def environment_metadata() -> dict:
    return {
        "host": platform.node(),
        "platform": platform.platform(),
        "python": sys.version.split()[0],
        "build_profile": "cpython-" + ("opt" if sys.flags.optimize else "default"),
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }


def run_selfplay(cfg: BenchConfig,
                 capture_transcripts: bool = False) -> dict[str, TimingMatrix]:
    """Warm up, then record Ng timed self-play games per algorithm."""
    if SERVE_ACTIVE:
        raise RuntimeError("refusing to bench while the play service "
                           "runs in this process")
    out: dict[str, TimingMatrix] = {}
    env = environment_metadata()
    clock = time.perf_counter_ns
    for name in cfg.algorithms:
        policy = make_policy(name)
        rng = random.Random(cfg.seed)
        rows = np.zeros((cfg.games, 9), dtype=np.int64)
        transcripts: list[str] = []
        for g in range(cfg.warmup_games + cfg.games):
            ctx_x = GameContext.initial(bot_mark="X", bot_started=True)
            ctx_o = GameContext.initial(bot_mark="O", bot_started=False)
            recorded = g >= cfg.warmup_games
            cells: list[int] = []
            ply = 0
            while outcome(ctx_x.board) == ONGOING:
                ctx = ctx_x if ctx_x.board.to_move == "X" else ctx_o
                t0 = clock()
                decision = policy.decide(ctx)
                cell = select(decision, rng)
                dt = clock() - t0
                if recorded:
                    rows[g - cfg.warmup_games, ply] = max(dt, 1)
                ctx_x = ctx_x.after(cell)
                ctx_o = ctx_o.after(cell)
                cells.append(cell)
                ply += 1
            if recorded and capture_transcripts:
                transcripts.append(",".join(map(str, cells)))
        meta = dict(env, seed=cfg.seed, warmup_games=cfg.warmup_games)
        if capture_transcripts:
            meta["transcripts"] = transcripts
        out[name] = TimingMatrix(entries=rows, algorithm=name, meta=meta)
    return out


def tpm(matrix: TimingMatrix, j: int) -> float:
    """Mean over games of the j-th move's time, j in 1..9.

    Short games contribute zero for unplayed moves but stay in the
    denominator, which is always the number of recorded games.
    """
    if not 1 <= j <= 9:
        raise ValueError(f"move index out of range: {j}")
    return float(matrix.entries[:, j - 1].sum()) / matrix.games


def tpm_vector(matrix: TimingMatrix) -> list[float]:
    return [tpm(matrix, j) for j in range(1, 10)]


def tpg(matrix: TimingMatrix) -> tuple[float, float, np.ndarray]:
    """(mean, sample std, per-game totals) of row sums."""
    per_game = matrix.entries.sum(axis=1)
    if matrix.games < 2:
        raise ValueError("std needs at least 2 games")
    mean = float(per_game.mean())
    std = float(per_game.std(ddof=1))
    return mean, std, per_game


def tpg_mean(matrix: TimingMatrix) -> float:
    return float(matrix.entries.sum(axis=1).mean())


def speedup(reference_tpg: float, subject_tpg: float) -> float:
    """How many times faster the subject is: TPG(reference) / TPG(subject)."""
    if subject_tpg <= 0:
        raise ValueError("subject TPG must be positive")
    return reference_tpg / subject_tpg


@dataclass
class MetricsReport:
    config: dict
    environment: dict
    per_algorithm: dict[str, dict]
    speedups: dict[str, float]  # "a/b" -> TPG(a)/TPG(b)

    def to_json(self, indent: int = 2) -> str:
        return json.dumps({
            "config": self.config,
            "environment": self.environment,
            "per_algorithm": self.per_algorithm,
            "speedups": self.speedups,
        }, indent=indent)


def build_report(cfg: BenchConfig,
                 matrices: dict[str, TimingMatrix]) -> MetricsReport:
    per_algo = {}
    means = {}
    for name, m in matrices.items():
        mean, std, _per_game = tpg(m)
        means[name] = mean
        per_algo[name] = {
            "tpm": tpm_vector(m),
            "tpg_mean": mean,
            "tpg_std": std,
            "participation": [int((m.entries[:, j] > 0).sum()) for j in range(9)],
        }
    speedups = {
        f"{a}/{b}": speedup(means[a], means[b])
        for a in matrices for b in matrices if a != b
    }
    env = next(iter(matrices.values())).meta if matrices else {}
    env = {k: v for k, v in env.items() if k != "transcripts"}
    return MetricsReport(
        config={"games": cfg.games, "warmup_games": cfg.warmup_games,
                "algorithms": list(cfg.algorithms), "seed": cfg.seed},
        environment=env, per_algorithm=per_algo, speedups=speedups)


def export(cfg: BenchConfig, matrices: dict[str, TimingMatrix],
           out_dir: str | Path) -> list[Path]:
    """Write raw CSV matrices, the JSON metrics report, and a text table."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, m in matrices.items():
        path = out_dir / f"{name}_matrix.csv"
        with path.open("w") as fh:
            fh.write("game_index,move_index,ns\n")
            for i in range(m.games):
                row = m.entries[i]
                for j in range(9):
                    if row[j]:
                        fh.write(f"{i},{j + 1},{row[j]}\n")
        written.append(path)
    report = build_report(cfg, matrices)
    report_path = out_dir / "metrics.json"
    report_path.write_text(report.to_json())
    written.append(report_path)
    table_path = out_dir / "tables.txt"
    table_path.write_text(_render_tables(report))
    written.append(table_path)
    return written


def import_matrix_csv(path: str | Path, algorithm: str = "") -> TimingMatrix:
    path = Path(path)
    cells: dict[tuple[int, int], int] = {}
    games = 0
    with path.open() as fh:
        header = fh.readline().strip()
        if header != "game_index,move_index,ns":
            raise ValueError(f"unexpected CSV header: {header!r}")
        for line in fh:
            g, j, ns = line.strip().split(",")
            g, j, ns = int(g), int(j), int(ns)
            cells[(g, j - 1)] = ns
            games = max(games, g + 1)
    entries = np.zeros((games, 9), dtype=np.int64)
    for (g, j), ns in cells.items():
        entries[g, j] = ns
    return TimingMatrix(entries=entries, algorithm=algorithm or path.stem)


def _render_tables(report: MetricsReport) -> str:
    lines = []
    lines.append("TPM (ns) per move index")
    header = f"{'algorithm':<10}" + "".join(f"{j:>12}" for j in range(1, 10))
    lines.append(header)
    for name, stats in report.per_algorithm.items():
        row = f"{name:<10}" + "".join(f"{v:>12.3g}" for v in stats["tpm"])
        lines.append(row)
    lines.append("")
    lines.append("TPG (ns)")
    lines.append(f"{'algorithm':<10}{'mean':>14}{'std':>14}")
    for name, stats in report.per_algorithm.items():
        lines.append(f"{name:<10}{stats['tpg_mean']:>14.4g}{stats['tpg_std']:>14.4g}")
    lines.append("")
    lines.append("Speedup (TPG ratio)")
    for pair, ratio in sorted(report.speedups.items()):
        lines.append(f"{pair:<12}{ratio:>12.3g}")
    lines.append("")
    return "\n".join(lines)
