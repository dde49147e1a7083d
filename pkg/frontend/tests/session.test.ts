import { describe, expect, it } from 'vitest';

import { AnswerAck, ApiError, QuestionView } from '../src/api.js';
import { QuestionApi, SessionController } from '../src/session.js';

/**
 * In-memory stand-in for the service: a fixed question script where each
 * answer advances a cursor, with positional single-use tokens like the real
 * server's.
 */
class FakeApi implements QuestionApi {
  answers: boolean[] = [];
  failNextSubmit: Error | null = null;

  constructor(
    private readonly questions: { voter: number; x: string; y: string }[],
    private readonly baseline = 99,
  ) {}

  private view(): QuestionView {
    const done = this.answers.length >= this.questions.length;
    const base: QuestionView = {
      session: 's1',
      status: done ? 'all-complete' : 'awaiting-answer',
      query_count: this.answers.length,
      naive_baseline: this.baseline,
      completed: [],
      expected_voters: 1,
    };
    if (done) {
      base.result = {
        profile: { candidates: ['a', 'b'], voters: [{ id: 0, order: ['a', 'b'] }] },
        closure: null,
        tree: null,
        query_count: this.answers.length,
        fallback_count: 1,
      };
    } else {
      base.question = {
        ...this.questions[this.answers.length]!,
        token: `t${this.answers.length}`,
      };
    }
    return base;
  }

  async getQuestion(): Promise<QuestionView> {
    return this.view();
  }

  async submitAnswer(_sid: string, token: string, prefersX: boolean): Promise<AnswerAck> {
    if (this.failNextSubmit) {
      const e = this.failNextSubmit;
      this.failNextSubmit = null;
      throw e;
    }
    if (token !== `t${this.answers.length}`) {
      throw new ApiError(409, 'stale-token', 'token does not match');
    }
    this.answers.push(prefersX);
    return { accepted: true, status: this.view().status, query_count: this.answers.length };
  }
}

const twoQuestions = () =>
  new FakeApi([
    { voter: 0, x: 'a', y: 'b' },
    { voter: 0, x: 'b', y: 'c' },
  ]);

describe('SessionController', () => {
  it('walks questions to completion', async () => {
    const api = twoQuestions();
    const c = new SessionController(api, 's1');
    await c.refresh();
    expect(c.snapshot().phase).toBe('question');
    expect(c.snapshot().view?.question?.x).toBe('a');
    await c.answer(true);
    await c.answer(false);
    expect(c.snapshot().phase).toBe('complete');
    expect(api.answers).toEqual([true, false]);
    expect(c.snapshot().view?.query_count).toBe(2);
  });

  it('ignores a second answer for the same token', async () => {
    const api = twoQuestions();
    const c = new SessionController(api, 's1');
    await c.refresh();
    // simulate a double-click: two submissions without an interleaved render
    const first = c.answer(true);
    const second = c.answer(true);
    await Promise.all([first, second]);
    expect(api.answers).toEqual([true]);
  });

  it('recovers silently from a stale token conflict', async () => {
    const api = twoQuestions();
    const c = new SessionController(api, 's1');
    await c.refresh();
    api.failNextSubmit = new ApiError(409, 'stale-token', 'token does not match');
    await c.answer(true);
    expect(c.snapshot().phase).toBe('question'); // resynced, not an error
    expect(c.snapshot().error).toBeNull();
    await c.answer(true);
    await c.answer(false);
    expect(c.snapshot().phase).toBe('complete');
  });

  it('surfaces network failures with a retriable error state', async () => {
    const api = twoQuestions();
    const c = new SessionController(api, 's1');
    await c.refresh();
    api.failNextSubmit = new Error('connection refused');
    await c.answer(true);
    expect(c.snapshot().phase).toBe('error');
    expect(c.snapshot().error).toContain('connection refused');
    await c.refresh(); // the retry affordance
    expect(c.snapshot().phase).toBe('question');
  });

  it('notifies listeners on every state change', async () => {
    const api = twoQuestions();
    const c = new SessionController(api, 's1');
    const phases: string[] = [];
    c.onChange((s) => phases.push(s.phase));
    await c.refresh();
    await c.answer(true);
    expect(phases[0]).toBe('question');
    expect(phases).toContain('submitting');
  });

  it('runs a scripted responder to completion', async () => {
    const api = twoQuestions();
    const c = new SessionController(api, 's1');
    const final = await c.runScripted((_voter, x) => x === 'a');
    expect(final.status).toBe('all-complete');
    expect(api.answers).toEqual([true, false]);
  });
});
