/** Typed client for the scramblefit session service.
 *
 * This is the only place the game talks to the network. Every difficulty
 * number the UI shows comes out of these responses; the client never
 * computes difficulty on its own.
 */

export interface WordInfo {
  task_id: string;
  scramble: string;
  position: number;
  state: string;
  guesses_so_far: number;
}

export interface GuessResult {
  correct: boolean;
  guesses_so_far: number;
  state: string;
}

export interface RatingResult {
  iwd_crisp: number;
  iwd_category: string;
}

export interface SessionRecord {
  participant_id: string;
  word: string;
  scramble: string;
  time_taken: number;
  num_guesses: number;
  was_skipped: boolean;
  urd: number | null;
  presentation_index: number;
  session_id: string;
  task_id: string;
  iwd_crisp: number;
  iwd_category: string;
  model_version: string;
}

export interface SessionSummary {
  session_id: string;
  participant_id: string;
  mode: string;
  state: string;
  task_count: number;
  records: SessionRecord[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Structural surface of the client, so tests can substitute a fake. */
export interface SessionApiLike {
  createSession(participantId: string, mode: string, seed?: number): Promise<string>;
  getWord(sessionId: string): Promise<WordInfo>;
  submitGuess(sessionId: string, text: string): Promise<GuessResult>;
  submitSkip(sessionId: string): Promise<void>;
  submitRating(sessionId: string, urd: number | null): Promise<RatingResult>;
  getSummary(sessionId: string): Promise<SessionSummary>;
}

export class SessionApi implements SessionApiLike {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, "");
    // wrap the global so it is not called with the api object as `this`
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  async createSession(participantId: string, mode: string, seed?: number): Promise<string> {
    const body: Record<string, unknown> = { participant_id: participantId, mode };
    if (seed !== undefined) {
      body.seed = seed;
    }
    const data = await this.request<{ session_id: string }>("POST", "/sessions", body);
    return data.session_id;
  }

  getWord(sessionId: string): Promise<WordInfo> {
    return this.request("GET", `/sessions/${sessionId}/word`);
  }

  submitGuess(sessionId: string, text: string): Promise<GuessResult> {
    return this.request("POST", `/sessions/${sessionId}/guess`, { text });
  }

  async submitSkip(sessionId: string): Promise<void> {
    await this.request("POST", `/sessions/${sessionId}/skip`, {});
  }

  submitRating(sessionId: string, urd: number | null): Promise<RatingResult> {
    // a dismissed rating popup sends no urd at all
    const body = urd === null ? {} : { urd };
    return this.request("POST", `/sessions/${sessionId}/rating`, body);
  }

  getSummary(sessionId: string): Promise<SessionSummary> {
    return this.request("GET", `/sessions/${sessionId}/summary`);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchFn(this.base + path, init);
    if (!resp.ok) {
      throw new ApiError(resp.status, await readDetail(resp));
    }
    return (await resp.json()) as T;
  }
}

async function readDetail(resp: Response): Promise<string> {
  try {
    const data: unknown = await resp.json();
    if (data && typeof data === "object" && "detail" in data) {
      const detail = (data as { detail: unknown }).detail;
      return typeof detail === "string" ? detail : JSON.stringify(detail);
    }
    return JSON.stringify(data);
  } catch {
    return resp.statusText || `HTTP ${resp.status}`;
  }
}
