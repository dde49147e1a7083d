// The question loop as a DOM-free state machine: poll the pending question,
// accept one answer at a time, and expose a render-ready snapshot. All
// preference logic stays on the server; this only sequences requests.

import { AnswerAck, ApiError, QuestionView } from './api.js';

/** The slice of the HTTP client the question loop needs. */
export type QuestionApi = {
  getQuestion(sessionId: string): Promise<QuestionView>;
  submitAnswer(sessionId: string, token: string, prefersX: boolean): Promise<AnswerAck>;
};

export type Phase = 'loading' | 'question' | 'submitting' | 'complete' | 'error';

export type SessionSnapshot = {
  phase: Phase;
  view: QuestionView | null;
  error: string | null;
  lastCompletedVoter: { voter: number; order: string[] } | null;
};

export class SessionController {
  private phase: Phase = 'loading';
  private view: QuestionView | null = null;
  private error: string | null = null;
  private lastCompletedVoter: { voter: number; order: string[] } | null = null;
  private inFlight = false;
  private listeners: ((s: SessionSnapshot) => void)[] = [];

  constructor(
    private readonly api: QuestionApi,
    readonly sessionId: string,
  ) {}

  onChange(fn: (s: SessionSnapshot) => void): void {
    this.listeners.push(fn);
  }

  snapshot(): SessionSnapshot {
    return {
      phase: this.phase,
      view: this.view,
      error: this.error,
      lastCompletedVoter: this.lastCompletedVoter,
    };
  }

  /** True while a request is outstanding; answer buttons must be disabled. */
  get busy(): boolean {
    return this.inFlight;
  }

  private emit(): void {
    const snap = this.snapshot();
    for (const fn of this.listeners) fn(snap);
  }

  async refresh(): Promise<void> {
    if (this.inFlight) return;
    this.inFlight = true;
    this.phase = this.view ? this.phase : 'loading';
    try {
      const view = await this.api.getQuestion(this.sessionId);
      this.view = view;
      this.error = null;
      this.phase = view.status === 'all-complete' ? 'complete' : 'question';
    } catch (e) {
      this.error = e instanceof Error ? e.message : String(e);
      this.phase = 'error';
    } finally {
      this.inFlight = false;
      this.emit();
    }
  }

  /**
   * Submit one answer for the pending question. Repeat calls while a request
   * is in flight are ignored, and the token is refreshed before the next
   * submit, so a double-click advances the session exactly once.
   */
  async answer(prefersX: boolean): Promise<void> {
    if (this.inFlight || this.phase !== 'question') return;
    const question = this.view?.question;
    if (!question) return;
    this.inFlight = true;
    this.phase = 'submitting';
    this.emit();
    try {
      const ack = await this.api.submitAnswer(this.sessionId, question.token, prefersX);
      if (ack.voter_complete) this.lastCompletedVoter = ack.voter_complete;
    } catch (e) {
      if (e instanceof ApiError && e.status === 409) {
        // stale token or finished session: the follow-up refresh resyncs us
      } else {
        this.error = e instanceof Error ? e.message : String(e);
        this.phase = 'error';
        this.inFlight = false;
        this.emit();
        return;
      }
    }
    this.inFlight = false;
    await this.refresh();
  }

  /** Drive the session with a scripted responder until it completes. */
  async runScripted(
    decide: (voter: number, x: string, y: string) => boolean,
    maxSteps = 100_000,
  ): Promise<QuestionView> {
    await this.refresh();
    for (let step = 0; step < maxSteps; step++) {
      if (this.phase === 'complete') return this.view!;
      if (this.phase === 'error') throw new Error(this.error ?? 'session failed');
      const q = this.view?.question;
      if (!q) throw new Error('awaiting a question but none is pending');
      await this.answer(decide(q.voter, q.x, q.y));
    }
    throw new Error('session did not complete within the step budget');
  }
}
