// Entry point: the session id lives in the URL (?session=...), so a reload
// resumes at the server's pending question with no local state.

import { ElicitationApi } from './api.js';
import { SessionController } from './session.js';
import { render } from './view.js';

const params = new URLSearchParams(window.location.search);
const sessionId = params.get('session');
const baseUrl = params.get('api') ?? '';
const root = document.getElementById('app');

if (!root) {
  throw new Error('missing #app container');
}

if (!sessionId) {
  root.textContent = 'Open with ?session=<id> (create one via POST /sessions).';
} else {
  const controller = new SessionController(new ElicitationApi(baseUrl), sessionId);
  const handlers = {
    onAnswer: (prefersX: boolean) => void controller.answer(prefersX),
    onRetry: () => void controller.refresh(),
  };
  controller.onChange((snap) => render(root, snap, handlers));
  void controller.refresh();
}
