export type Mark = 'X' | 'O';
export type Status = 'Ongoing' | 'XWin' | 'OWin' | 'Draw';
export type FirstPlayer = 'bot' | 'human';
export type Mode = 'safe' | 'strict';

export interface BotMove {
  cell: number;
  rule: string;
}

export interface CreateGameResponse {
  game_id: string;
  board: string;
  status: Status;
  bot_move: BotMove | null;
}

export interface MoveResponse {
  board: string;
  status: Status;
  bot_move: BotMove | null;
}

export interface LogEntry {
  ply: number;
  mark: Mark;
  cell: number;
  rule: string | null;
  description?: string | null;
}

export interface GameView extends CreateGameResponse {
  mode: Mode;
  first_player: FirstPlayer;
  move_log: LogEntry[];
}

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`${status}: ${detail}`);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin typed wrapper over the play service; holds no game state. */
export class GameApi {
  constructor(
    private baseUrl = '',
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path, {
      headers: { 'Content-Type': 'application/json' },
      ...init,
    });
    const body = await resp.json().catch(() => ({}));
    if (!resp.ok) {
      throw new ApiError(resp.status, (body as { detail?: string }).detail ?? resp.statusText);
    }
    return body as T;
  }

  createGame(firstPlayer: FirstPlayer, mode: Mode = 'safe', seed?: number): Promise<CreateGameResponse> {
    return this.request('/api/games', {
      method: 'POST',
      body: JSON.stringify({ first_player: firstPlayer, mode, seed }),
    });
  }

  playMove(gameId: string, cell: number): Promise<MoveResponse> {
    return this.request(`/api/games/${gameId}/moves`, {
      method: 'POST',
      body: JSON.stringify({ cell }),
    });
  }

  getGame(gameId: string): Promise<GameView> {
    return this.request(`/api/games/${gameId}`);
  }
}
