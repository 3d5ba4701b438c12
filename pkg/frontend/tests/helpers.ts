/** Shared test utilities: an in-memory stand-in for the session service
 * plus small async helpers for driving the DOM.
 */

import {
  ApiError,
  GuessResult,
  RatingResult,
  SessionApiLike,
  SessionRecord,
  SessionSummary,
  WordInfo,
} from "../src/api.js";

export interface FakeTask {
  taskId: string;
  word: string;
  scramble: string;
}

export const FAKE_TASKS: FakeTask[] = [
  { taskId: "w1", word: "water", scramble: "tarew" },
  { taskId: "w2", word: "plant", scramble: "nalpt" },
  { taskId: "w3", word: "sunny", scramble: "nysun" },
  { taskId: "w4", word: "chair", scramble: "raich" },
];

// one difficulty per task index, spanning all three categories
const FAKE_CRISP = [3.0, 4.2, 5.4, 6.6];

function fakeCategory(crisp: number): string {
  if (crisp < 4.5) {
    return "easy";
  }
  return crisp <= 5.5 ? "medium" : "hard";
}

interface Failure {
  method: string;
  times: number;
  error: Error;
}

/** Mimics the server's session state machine for a single session. */
export class FakeApi implements SessionApiLike {
  readonly calls: string[] = [];
  records: SessionRecord[] = [];
  failOn: Failure | null = null;
  /** Apply the next guess server-side but fail its response. */
  loseNextGuessResponse = false;

  private participantId = "";
  private mode = "";
  private index = 0;
  private guesses = 0;
  private wasSkipped = false;
  private state: "guessing" | "rating" | "complete" = "guessing";

  constructor(readonly tasks: FakeTask[] = FAKE_TASKS) {}

  async createSession(participantId: string, mode: string, _seed?: number): Promise<string> {
    this.maybeFail("createSession");
    this.participantId = participantId;
    this.mode = mode;
    return "fake-session-1";
  }

  async getWord(_sessionId: string): Promise<WordInfo> {
    this.maybeFail("getWord");
    if (this.state === "complete") {
      throw new ApiError(410, "session complete");
    }
    const task = this.tasks[this.index];
    return {
      task_id: task.taskId,
      scramble: task.scramble,
      position: this.index + 1,
      state: this.state === "rating" ? "awaiting_rating" : "awaiting_guess",
      guesses_so_far: this.guesses,
    };
  }

  async submitGuess(_sessionId: string, text: string): Promise<GuessResult> {
    this.maybeFail("submitGuess");
    if (this.state !== "guessing") {
      throw new ApiError(409, "session is not awaiting a guess");
    }
    const cleaned = text.trim().toLowerCase();
    if (!cleaned) {
      throw new ApiError(400, "guess must not be empty");
    }
    this.guesses += 1;
    const correct = cleaned === this.tasks[this.index].word;
    if (correct) {
      this.state = "rating";
    }
    if (this.loseNextGuessResponse) {
      this.loseNextGuessResponse = false;
      throw new TypeError("network dropped");
    }
    return {
      correct,
      guesses_so_far: this.guesses,
      state: this.state === "rating" ? "awaiting_rating" : "awaiting_guess",
    };
  }

  async submitSkip(_sessionId: string): Promise<void> {
    this.maybeFail("submitSkip");
    if (this.state !== "guessing") {
      throw new ApiError(409, "session is not awaiting a guess");
    }
    this.wasSkipped = true;
    this.state = "rating";
  }

  async submitRating(_sessionId: string, urd: number | null): Promise<RatingResult> {
    this.maybeFail("submitRating");
    if (this.state !== "rating") {
      throw new ApiError(409, "session is not awaiting a rating");
    }
    if (urd !== null && (!Number.isInteger(urd) || urd < 1 || urd > 10)) {
      throw new ApiError(400, "urd must be an integer in [1, 10]");
    }
    const task = this.tasks[this.index];
    const crisp = FAKE_CRISP[this.index % FAKE_CRISP.length];
    this.records.push({
      participant_id: this.participantId,
      word: task.word,
      scramble: task.scramble,
      time_taken: 3.5,
      num_guesses: this.guesses,
      was_skipped: this.wasSkipped,
      urd,
      presentation_index: this.index + 1,
      session_id: "fake-session-1",
      task_id: task.taskId,
      iwd_crisp: crisp,
      iwd_category: fakeCategory(crisp),
      model_version: "fake-1",
    });
    this.index += 1;
    this.guesses = 0;
    this.wasSkipped = false;
    this.state = this.index < this.tasks.length ? "guessing" : "complete";
    return { iwd_crisp: crisp, iwd_category: fakeCategory(crisp) };
  }

  async getSummary(_sessionId: string): Promise<SessionSummary> {
    this.maybeFail("getSummary");
    return {
      session_id: "fake-session-1",
      participant_id: this.participantId,
      mode: this.mode,
      state:
        this.state === "complete"
          ? "complete"
          : this.state === "rating"
            ? "awaiting_rating"
            : "awaiting_guess",
      task_count: this.tasks.length,
      records: [...this.records],
    };
  }

  private maybeFail(method: string): void {
    this.calls.push(method);
    const f = this.failOn;
    if (f && f.times > 0 && (f.method === method || f.method === "*")) {
      f.times -= 1;
      throw f.error;
    }
  }
}

/** Poll until cond() holds; the controller settles asynchronously.
 * A throwing cond counts as "not yet" so callers can probe elements
 * that do not exist mid-transition.
 */
export async function until(cond: () => boolean, ms = 5000): Promise<void> {
  const deadline = Date.now() + ms;
  for (;;) {
    let lastErr: unknown = null;
    try {
      if (cond()) {
        return;
      }
    } catch (err) {
      lastErr = err;
    }
    if (Date.now() > deadline) {
      if (lastErr instanceof Error) {
        throw lastErr;
      }
      throw new Error("condition not met in time");
    }
    await new Promise((resolve) => setTimeout(resolve, 5));
  }
}
