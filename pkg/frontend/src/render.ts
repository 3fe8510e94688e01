import { describeRule } from './rules.js';
import { ClientGameState, inputEnabled } from './state.js';

/** Pure state-to-HTML rendering; the DOM wiring lives in main.ts. */

export function renderBoard(s: ClientGameState): string {
  const enabled = inputEnabled(s);
  const cells = [...s.board].map((mark, i) => {
    const clickable = enabled && mark === '.';
    const label = mark === '.' ? '' : mark;
    return `<button class="cell" data-cell="${i}"${clickable ? '' : ' disabled'}>${label}</button>`;
  });
  return `<div class="board${enabled ? '' : ' locked'}">${cells.join('')}</div>`;
}

export function renderStatus(s: ClientGameState): string {
  if (s.error) return `<p class="banner error">${s.error}</p>`;
  if (s.pending) return '<p class="banner">thinking...</p>';
  switch (s.status) {
    case 'XWin': return '<p class="banner result">Bot wins. <button id="rematch">Rematch</button></p>';
    case 'OWin': return '<p class="banner result">You win. <button id="rematch">Rematch</button></p>';
    case 'Draw': return '<p class="banner result">Draw. <button id="rematch">Rematch</button></p>';
    default: return s.game_id ? '<p class="banner">Your move.</p>' : '<p class="banner">Start a game.</p>';
  }
}

export function renderLog(s: ClientGameState): string {
  const items = s.move_log.map((m) => {
    const row = Math.floor(m.cell / 3) + 1;
    const col = (m.cell % 3) + 1;
    const who = m.mark === 'X' ? 'bot' : 'you';
    const why = m.rule === null ? '' : ` <span class="rule" data-rule="${m.rule}">[${m.rule}: ${describeRule(m.rule)}]</span>`;
    return `<li>ply ${m.ply}: ${who} (${row},${col})${why}</li>`;
  });
  return `<ol class="log">${items.join('')}</ol>`;
}

export function render(s: ClientGameState): string {
  return renderStatus(s) + renderBoard(s) + renderLog(s);
}
