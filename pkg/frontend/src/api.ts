// Typed client for the elicitation service. Every shape here mirrors a
// server payload verbatim; no preference logic lives on this side.

export type Question = {
  voter: number;
  x: string;
  y: string;
  token: string;
};

export type CompletedVoter = {
  voter: number;
  order: string[];
};

export type SessionResult = {
  profile: { candidates: string[]; voters: { id: number; order: string[] }[] };
  closure: { candidates: string[]; voters: { id: number; order: string[] }[] } | null;
  tree: { nodes: { voter: number; order: string[] }[]; edges: [number, number][] } | null;
  query_count: number;
  fallback_count: number;
};

export type QuestionView = {
  session: string;
  status: 'awaiting-answer' | 'all-complete';
  query_count: number;
  naive_baseline: number;
  completed: CompletedVoter[];
  expected_voters: number;
  question?: Question;
  result?: SessionResult;
};

export type AnswerAck = {
  accepted: boolean;
  status: 'awaiting-answer' | 'all-complete';
  query_count: number;
  voter_complete?: CompletedVoter;
};

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const res = await fetch(url, init);
  if (!res.ok) {
    let code = 'http-error';
    let message = `request failed with status ${res.status}`;
    try {
      const body = await res.json();
      if (typeof body.code === 'string') code = body.code;
      if (typeof body.message === 'string') message = body.message;
    } catch {
      // non-JSON error body; keep the generic message
    }
    throw new ApiError(res.status, code, message);
  }
  return res.json() as Promise<T>;
}

export class ElicitationApi {
  constructor(readonly baseUrl: string) {}

  createSession(candidates: string[], voters: number): Promise<{ id: string }> {
    return request(`${this.baseUrl}/sessions`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ candidates, voters }),
    });
  }

  getQuestion(sessionId: string): Promise<QuestionView> {
    return request(`${this.baseUrl}/sessions/${sessionId}/question`);
  }

  submitAnswer(sessionId: string, token: string, prefersX: boolean): Promise<AnswerAck> {
    return request(`${this.baseUrl}/sessions/${sessionId}/answer`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ token, prefers_x: prefersX }),
    });
  }

  getResult(sessionId: string): Promise<QuestionView> {
    return request(`${this.baseUrl}/sessions/${sessionId}/result`);
  }
}
