import { describe, expect, it } from 'vitest';

import { GameApi } from '../src/api.js';
import { render, renderBoard } from '../src/render.js';
import { RULE_IDS } from '../src/rules.js';
import { GameClient, inputEnabled } from '../src/state.js';

interface Scripted {
  status: number;
  body: unknown;
}

/** FetchLike that replays a scripted exchange and records every request. */
function scriptedFetch(script: Scripted[]) {
  const calls: Array<{ url: string; body: unknown }> = [];
  const fetchImpl = async (url: string, init?: RequestInit): Promise<Response> => {
    const next = script.shift();
    if (!next) throw new Error(`unexpected request: ${url}`);
    calls.push({ url, body: init?.body ? JSON.parse(init.body as string) : null });
    return new Response(JSON.stringify(next.body), { status: next.status });
  };
  return { fetchImpl, calls };
}

// a human-first game the human loses: O 0, X 4; O 3, X 2; O 5, X 6 (win),
// with one server-rejected click in the middle
const LOSS_SCRIPT: Scripted[] = [
  { status: 201, body: { game_id: 'g1', board: '.........', status: 'Ongoing', bot_move: null } },
  { status: 200, body: { board: 'O...X....', status: 'Ongoing', bot_move: { cell: 4, rule: 'O-CORNER' } } },
  { status: 409, body: { detail: 'illegal move' } },
  { status: 200, body: { board: 'O.XOX....', status: 'Ongoing', bot_move: { cell: 2, rule: 'FORK-MAKE' } } },
  { status: 200, body: { board: 'O.XOXOX..', status: 'XWin', bot_move: { cell: 6, rule: 'WIN' } } },
];

describe('scripted human-loss game', () => {
  it('renders every bot move with a known rule and locks at the end', async () => {
    const { fetchImpl, calls } = scriptedFetch([...LOSS_SCRIPT]);
    const client = new GameClient(new GameApi('', fetchImpl));

    await client.newGame('human');
    expect(client.state.board).toBe('.........');
    expect(inputEnabled(client.state)).toBe(true);

    await client.playCell(0);
    expect(client.state.board).toBe('O...X....');

    // server rejects this one; the client must not corrupt its state
    const before = client.state;
    await client.playCell(1);
    expect(client.state.board).toBe(before.board);
    expect(client.state.move_log).toEqual(before.move_log);
    expect(client.state.error).toContain('illegal move');
    expect(client.state.pending).toBe(false);

    await client.playCell(3);
    await client.playCell(5);
    expect(client.state.status).toBe('XWin');
    expect(inputEnabled(client.state)).toBe(false);

    const botMoves = client.state.move_log.filter((m) => m.mark === 'X');
    expect(botMoves.length).toBe(3);
    for (const m of botMoves) {
      expect(m.rule).not.toBeNull();
      expect(RULE_IDS.has(m.rule!)).toBe(true);
    }

    // board is the last server response, never a local computation
    expect(client.state.board).toBe('O.XOXOX..');
    expect(calls.length).toBe(5);
  });

  it('sends no request for a visibly occupied cell', async () => {
    const { fetchImpl, calls } = scriptedFetch([...LOSS_SCRIPT]);
    const client = new GameClient(new GameApi('', fetchImpl));
    await client.newGame('human');
    await client.playCell(0);
    const sent = calls.length;
    await client.playCell(0); // own mark
    await client.playCell(4); // bot's mark
    expect(calls.length).toBe(sent);
  });

  it('locked terminal board renders every cell disabled', async () => {
    const { fetchImpl } = scriptedFetch([...LOSS_SCRIPT]);
    const client = new GameClient(new GameApi('', fetchImpl));
    await client.newGame('human');
    for (const cell of [0, 1, 3, 5]) await client.playCell(cell);

    const html = renderBoard(client.state);
    expect(html).toContain('board locked');
    expect(html.match(/<button class="cell"/g)?.length).toBe(9);
    expect(html.match(/ disabled/g)?.length).toBe(9);

    const page = render(client.state);
    expect(page).toContain('Bot wins.');
    expect(page).toContain('data-rule="WIN"');
  });
});

describe('bot-first game', () => {
  it('shows the opening move and its rule immediately', async () => {
    const { fetchImpl } = scriptedFetch([
      { status: 201, body: { game_id: 'g2', board: '....X....', status: 'Ongoing', bot_move: { cell: 4, rule: 'FIRST_RANDOM' } } },
    ]);
    const client = new GameClient(new GameApi('', fetchImpl));
    await client.newGame('bot');
    expect(client.state.board).toBe('....X....');
    expect(client.state.move_log).toEqual([
      { ply: 1, mark: 'X', cell: 4, rule: 'FIRST_RANDOM' },
    ]);
    expect(render(client.state)).toContain('random opening');
  });

  it('only one request is ever in flight', async () => {
    let inFlight = 0;
    let maxInFlight = 0;
    const fetchImpl = async (url: string): Promise<Response> => {
      inFlight += 1;
      maxInFlight = Math.max(maxInFlight, inFlight);
      await new Promise((r) => setTimeout(r, 5));
      inFlight -= 1;
      const body = url.endsWith('/api/games')
        ? { game_id: 'g3', board: '.........', status: 'Ongoing', bot_move: null }
        : { board: 'O...X....', status: 'Ongoing', bot_move: { cell: 4, rule: 'O-CORNER' } };
      return new Response(JSON.stringify(body), { status: url.endsWith('/api/games') ? 201 : 200 });
    };
    const client = new GameClient(new GameApi('', fetchImpl));
    await client.newGame('human');
    await Promise.all([client.playCell(0), client.playCell(1), client.playCell(2)]);
    expect(maxInFlight).toBe(1);
  });
});
