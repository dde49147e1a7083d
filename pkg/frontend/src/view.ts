// DOM rendering for a session snapshot. Pure function of the snapshot plus
// two callbacks; re-rendered wholesale on every state change.

import { SessionSnapshot } from './session.js';

export type ViewHandlers = {
  onAnswer: (prefersX: boolean) => void;
  onRetry: () => void;
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderCounter(root: HTMLElement, queryCount: number, baseline: number): void {
  const counter = el('p', 'counter');
  counter.append(
    el('span', 'query-count', String(queryCount)),
    ` questions asked (naive baseline: ${baseline})`,
  );
  root.append(counter);
}

function renderProgress(
  root: HTMLElement,
  completed: { voter: number; order: string[] }[],
  expected: number,
): void {
  root.append(el('p', 'progress', `${completed.length} of ${expected} voters complete`));
  if (completed.length > 0) {
    const list = el('ul', 'completed');
    for (const { voter, order } of completed) {
      list.append(el('li', undefined, `voter ${voter}: ${order.join(' ≻ ')}`));
    }
    root.append(list);
  }
}

export function render(root: HTMLElement, snap: SessionSnapshot, handlers: ViewHandlers): void {
  root.replaceChildren();

  if (snap.phase === 'loading') {
    root.append(el('p', 'status', 'Loading…'));
    return;
  }

  if (snap.phase === 'error') {
    root.append(el('p', 'status error', snap.error ?? 'Something went wrong'));
    const retry = el('button', 'retry', 'Retry');
    retry.addEventListener('click', handlers.onRetry);
    root.append(retry);
    return;
  }

  const view = snap.view;
  if (!view) return;

  renderCounter(root, view.query_count, view.naive_baseline);
  renderProgress(root, view.completed, view.expected_voters);

  if (snap.phase === 'complete' && view.result) {
    root.append(el('h2', undefined, 'All voters complete'));
    const rankings = el('ul', 'final-rankings');
    for (const v of view.result.profile.voters) {
      rankings.append(el('li', undefined, `voter ${v.id}: ${v.order.join(' ≻ ')}`));
    }
    root.append(rankings);
    return;
  }

  const q = view.question;
  if (!q) return;
  root.append(el('h2', undefined, `Voter ${q.voter}, which do you prefer?`));
  const busy = snap.phase === 'submitting';
  for (const [label, prefersX] of [
    [q.x, true],
    [q.y, false],
  ] as const) {
    const button = el('button', 'choice', label);
    button.disabled = busy;
    button.addEventListener('click', () => handlers.onAnswer(prefersX));
    root.append(button);
  }
}
