import { FirstPlayer, GameApi, Mode } from './api.js';
import { render } from './render.js';
import { GameClient } from './state.js';

// same-origin by default; a static dev server can override window.API_BASE
const apiBase =
  (window as { API_BASE?: string }).API_BASE ?? `http://${location.hostname || '127.0.0.1'}:8000`;

const root = document.getElementById('app')!;
const client = new GameClient(new GameApi(apiBase));

client.subscribe((state) => {
  root.innerHTML = render(state);
});

function chosen(name: string, fallback: string): string {
  const el = document.querySelector<HTMLSelectElement>(`#${name}`);
  return el ? el.value : fallback;
}

document.getElementById('new-game')!.addEventListener('click', () => {
  void client.newGame(
    chosen('first-player', 'human') as FirstPlayer,
    chosen('mode', 'safe') as Mode,
  );
});

root.addEventListener('click', (ev) => {
  const target = ev.target as HTMLElement;
  if (target.id === 'rematch') {
    void client.newGame(chosen('first-player', 'human') as FirstPlayer, chosen('mode', 'safe') as Mode);
    return;
  }
  const cell = target.dataset?.cell;
  if (cell !== undefined) void client.playCell(Number(cell));
});

root.innerHTML = render(client.state);
