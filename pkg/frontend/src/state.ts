import { FirstPlayer, GameApi, LogEntry, Mode, Status } from './api.js';

export interface ClientGameState {
  game_id: string | null;
  board: string;
  status: Status;
  move_log: LogEntry[];
  pending: boolean;
  error: string | null;
}

const EMPTY_BOARD = '.'.repeat(9);

export function initialState(): ClientGameState {
  return {
    game_id: null,
    board: EMPTY_BOARD,
    status: 'Ongoing',
    move_log: [],
    pending: false,
    error: null,
  };
}

export function inputEnabled(s: ClientGameState): boolean {
  return s.game_id !== null && !s.pending && s.status === 'Ongoing';
}

/** Client-side game driver.
 *
 *  Never computes game logic: the board is always the last server response
 *  and at most one request is in flight at any time.  Subscribers are
 *  notified on every transition so rendering stays a pure function of state.
 */
export class GameClient {
  state: ClientGameState = initialState();
  private listeners: Array<(s: ClientGameState) => void> = [];
  private humanPly = 0;

  constructor(private api: GameApi) {}

  subscribe(fn: (s: ClientGameState) => void): void {
    this.listeners.push(fn);
  }

  private set(patch: Partial<ClientGameState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  async newGame(firstPlayer: FirstPlayer, mode: Mode = 'safe', seed?: number): Promise<void> {
    if (this.state.pending) return;
    this.set({ ...initialState(), pending: true });
    try {
      const resp = await this.api.createGame(firstPlayer, mode, seed);
      const log: LogEntry[] = [];
      this.humanPly = firstPlayer === 'bot' ? 2 : 1;
      if (resp.bot_move) {
        log.push({ ply: 1, mark: 'X', cell: resp.bot_move.cell, rule: resp.bot_move.rule });
      }
      this.set({
        game_id: resp.game_id,
        board: resp.board,
        status: resp.status,
        move_log: log,
        pending: false,
      });
    } catch (err) {
      this.set({ ...initialState(), error: errorText(err) });
    }
  }

  async playCell(cell: number): Promise<void> {
    // "visibly empty" is the only client-side check; the server decides
    if (!inputEnabled(this.state) || this.state.board[cell] !== '.') return;
    const gameId = this.state.game_id!;
    this.set({ pending: true, error: null });
    try {
      const resp = await this.api.playMove(gameId, cell);
      const log = [...this.state.move_log,
        { ply: this.humanPly, mark: 'O' as const, cell, rule: null }];
      if (resp.bot_move) {
        log.push({ ply: this.humanPly + 1, mark: 'X', cell: resp.bot_move.cell, rule: resp.bot_move.rule });
      }
      this.humanPly += 2;
      this.set({ board: resp.board, status: resp.status, move_log: log, pending: false });
    } catch (err) {
      // server truth unchanged; just surface the rejection
      this.set({ pending: false, error: errorText(err) });
    }
  }
}

function errorText(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}
