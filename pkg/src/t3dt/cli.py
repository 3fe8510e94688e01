"""Command-line entry point: play, verify, enumerate, bench, serve."""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

import click

from .bench import BenchConfig, export, run_selfplay
from .board import ONGOING, cell_label, outcome
from .policies import POLICY_NAMES, make_policy, select
from .rules import GameContext, RULE_DESCRIPTIONS, SAFE, MODES, candidates
from .verify import enumerate_games, verify_no_loss


@click.group()
def main():
    """Tic-tac-toe policy workbench."""


@main.command()
@click.option("--first", type=click.Choice(["bot", "human"]), default="human",
              show_default=True, help="Who makes the first move.")
@click.option("--seed", type=int, default=None, help="RNG seed for the bot.")
@click.option("--mode", type=click.Choice(list(MODES)), default=SAFE,
              show_default=True)
def play(first, seed, mode):
    """Play against the bot in the terminal. You are O; the bot is X.

    Enter moves as 1-based "row col", e.g. "1 3" for the top-right cell.
    """
    rng = random.Random(seed)
    ctx = GameContext.initial(bot_mark="X", bot_started=(first == "bot"))
    click.echo(f"You are O, the bot is X. Mode: {mode}.")
    while outcome(ctx.board) == ONGOING:
        if ctx.board.to_move == "X":
            dec = candidates(ctx, mode)
            cell = select(dec, rng)
            ctx = ctx.after(cell)
            click.echo(f"\nBot plays {cell_label(cell)}  [{dec.rule}: "
                       f"{RULE_DESCRIPTIONS.get(dec.rule, dec.rule)}]")
            click.echo(ctx.board.render())
        else:
            click.echo("\n" + ctx.board.render())
            cell = _prompt_cell(ctx.board)
            ctx = ctx.after(cell)
    click.echo("\n" + ctx.board.render())
    result = outcome(ctx.board)
    if result == "XWin":
        click.echo("Bot wins.")
    elif result == "OWin":
        click.echo("You win.")
    else:
        click.echo("Draw.")


def _prompt_cell(board):
    while True:
        raw = click.prompt("Your move (row col)", type=str)
        parts = raw.replace(",", " ").split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            click.echo("Please enter two numbers 1-3, e.g. '2 3'.")
            continue
        r, c = int(parts[0]), int(parts[1])
        if not (1 <= r <= 3 and 1 <= c <= 3):
            click.echo("Row and column must be between 1 and 3.")
            continue
        cell = (r - 1) * 3 + (c - 1)
        if board.cells[cell] != ".":
            click.echo(f"Cell {cell_label(cell)} is occupied; try again.")
            continue
        return cell


@main.command()
@click.option("--policy", type=click.Choice(list(POLICY_NAMES)), required=True)
@click.option("--role", type=click.Choice(["first", "second", "both"]),
              default="both", show_default=True)
@click.option("--mode", type=click.Choice(list(MODES)), default=SAFE,
              show_default=True, help="Rule-tree mode (t3dt only).")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path),
              default=None, help="Report file (default verification_<policy>.json).")
def verify(policy, role, mode, out):
    """Exhaustively prove or refute no-loss; exit 0 only on a clean proof."""
    pol = make_policy(policy, mode)
    report = verify_no_loss(pol, role=role)
    out = out or Path(f"verification_{policy}.json")
    out.write_text(report.to_json())
    click.echo(f"policy={policy} role={role} mode={report.mode} "
               f"wins={report.wins} draws={report.draws} "
               f"loss_states={report.loss_states} "
               f"branch_nodes={report.branch_nodes}")
    click.echo(f"report written to {out}")
    if report.loss_states:
        click.echo(f"NO-LOSS REFUTED: {len(report.losses)} loss transcript(s) recorded")
        sys.exit(1)
    click.echo("NO-LOSS PROVED")


@main.command()
def enumerate():
    """Count every distinct game from the empty board."""
    census = enumerate_games()
    click.echo(f"total_games: {census.total_games}")
    click.echo(f"x_wins: {census.x_wins}")
    click.echo(f"o_wins: {census.o_wins}")
    click.echo(f"draws: {census.draws}")
    click.echo(f"x_wins/o_wins: {census.x_wins / census.o_wins:.2f}")
    for length in sorted(census.games_by_length):
        click.echo(f"games of length {length}: {census.games_by_length[length]}")


@main.command()
@click.option("--games", type=int, required=True)
@click.option("--warmup", type=int, default=50, show_default=True)
@click.option("--algos", default="mm,abp,aba,t3dt", show_default=True,
              help="Comma-separated subset of mm,abp,aba,t3dt.")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path),
              default=Path("bench_out"), show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def bench(games, warmup, algos, out, seed):
    """Time self-play games and export matrices and metrics."""
    algorithms = tuple(a.strip() for a in algos.split(",") if a.strip())
    cfg = BenchConfig(games=games, warmup_games=warmup,
                      algorithms=algorithms, seed=seed)
    matrices = run_selfplay(cfg)
    written = export(cfg, matrices, out)
    for path in written:
        click.echo(f"wrote {path}")


@main.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, host):
    """Run the HTTP play service."""
    import uvicorn

    from . import bench as bench_module
    from .server import create_app

    bench_module.SERVE_ACTIVE = True
    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
