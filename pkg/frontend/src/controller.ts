/** Game flow state machine, kept free of DOM concerns.
 *
 * The controller mirrors the server's session states (guessing, rating,
 * complete) and treats the server as the source of truth: after any
 * conflict it resyncs from the word endpoint rather than guessing what
 * happened. Failed requests park the game in an error phase with the
 * failed action retained for retry.
 */

import {
  ApiError,
  SessionApiLike,
  SessionSummary,
  WordInfo,
} from "./api.js";

export type Phase = "idle" | "guessing" | "rating" | "finished" | "error";

export interface RoundOutcome {
  position: number;
  scramble: string;
  solved: boolean;
  guesses: number;
  urd: number | null;
  iwdCrisp: number;
  iwdCategory: string;
}

export interface GameState {
  phase: Phase;
  word: WordInfo | null;
  taskCount: number | null;
  guessesSoFar: number;
  lastGuessWrong: boolean;
  skippedCurrent: boolean;
  outcomes: RoundOutcome[];
  summary: SessionSummary | null;
  /** Inline validation message (bad rating value etc.), not a failure. */
  notice: string | null;
  errorMessage: string | null;
}

function initialState(): GameState {
  return {
    phase: "idle",
    word: null,
    taskCount: null,
    guessesSoFar: 0,
    lastGuessWrong: false,
    skippedCurrent: false,
    outcomes: [],
    summary: null,
    notice: null,
    errorMessage: null,
  };
}

export class GameController {
  private state: GameState = initialState();
  private sessionId: string | null = null;
  private retryAction: (() => Promise<void>) | null = null;

  constructor(
    private readonly api: SessionApiLike,
    private readonly onChange: (state: GameState) => void = () => {},
  ) {}

  /** Current state. A fresh object on every change; safe to snapshot. */
  getState(): GameState {
    return this.state;
  }

  async start(participantId: string, mode = "daily", seed?: number): Promise<void> {
    await this.guarded(async () => {
      this.sessionId = await this.api.createSession(participantId, mode, seed);
      const summary = await this.api.getSummary(this.sessionId);
      this.set({ taskCount: summary.task_count });
      await this.loadWord();
    });
  }

  async guess(text: string): Promise<void> {
    await this.guarded(async () => {
      const result = await this.api.submitGuess(this.requireSession(), text);
      if (result.correct) {
        this.set({
          phase: "rating",
          guessesSoFar: result.guesses_so_far,
          lastGuessWrong: false,
        });
      } else {
        this.set({ guessesSoFar: result.guesses_so_far, lastGuessWrong: true });
      }
    });
  }

  async skip(): Promise<void> {
    await this.guarded(async () => {
      await this.api.submitSkip(this.requireSession());
      this.set({ phase: "rating", skippedCurrent: true, lastGuessWrong: false });
    });
  }

  async rate(urd: number | null): Promise<void> {
    await this.guarded(async () => {
      const word = this.state.word;
      const result = await this.api.submitRating(this.requireSession(), urd);
      const outcome: RoundOutcome = {
        position: word ? word.position : this.state.outcomes.length + 1,
        scramble: word ? word.scramble : "",
        solved: !this.state.skippedCurrent,
        guesses: this.state.guessesSoFar,
        urd,
        iwdCrisp: result.iwd_crisp,
        iwdCategory: result.iwd_category,
      };
      this.set({ outcomes: [...this.state.outcomes, outcome] });
      await this.loadWord();
    });
  }

  /** Re-run the action that failed, or just resync if nothing is pending. */
  async retry(): Promise<void> {
    const action = this.retryAction ?? (() => this.loadWord());
    this.retryAction = null;
    await this.guarded(action);
  }

  private set(patch: Partial<GameState>): void {
    this.state = { ...this.state, ...patch };
    this.onChange(this.state);
  }

  private requireSession(): string {
    if (!this.sessionId) {
      throw new Error("session not started");
    }
    return this.sessionId;
  }

  /** Pull the authoritative state for the current word, or finish. */
  private async loadWord(): Promise<void> {
    try {
      const word = await this.api.getWord(this.requireSession());
      this.set({
        phase: word.state === "awaiting_rating" ? "rating" : "guessing",
        word,
        guessesSoFar: word.guesses_so_far,
        lastGuessWrong: false,
        skippedCurrent: false,
      });
    } catch (err) {
      if (err instanceof ApiError && err.status === 410) {
        const summary = await this.api.getSummary(this.requireSession());
        this.set({ phase: "finished", word: null, summary });
        return;
      }
      throw err;
    }
  }

  private async guarded(action: () => Promise<void>): Promise<void> {
    if (this.state.notice) {
      this.set({ notice: null });
    }
    try {
      await action();
      this.retryAction = null;
    } catch (err) {
      if (err instanceof ApiError && err.status === 400) {
        // rejected input: surface inline and stay where we are
        this.set({ notice: err.detail });
        return;
      }
      if (err instanceof ApiError && err.status === 409 && this.sessionId) {
        // the server is ahead of us (e.g. a retried request had already
        // landed); its word endpoint says where we really are. A mid-round
        // outcome entry may be skipped here; the final summary is always
        // rebuilt from the server, so nothing shown at the end is lost.
        try {
          await this.loadWord();
          this.retryAction = null;
          return;
        } catch (inner) {
          err = inner;
        }
      }
      this.retryAction = action;
      this.set({ phase: "error", errorMessage: messageOf(err) });
    }
  }
}

function messageOf(err: unknown): string {
  if (err instanceof Error) {
    return err.message || "request failed";
  }
  return String(err);
}
