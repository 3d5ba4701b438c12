/** DOM rendering and event wiring. No framework: the whole view is
 * re-rendered from the controller state on every change, and events are
 * delegated from the mount root via data-action attributes.
 */

import { SessionApiLike } from "./api.js";
import { GameController, GameState, RoundOutcome } from "./controller.js";

export class GameView {
  constructor(
    private readonly root: HTMLElement,
    private readonly controller: GameController,
  ) {
    root.addEventListener("click", (ev) => this.onClick(ev));
    root.addEventListener("submit", (ev) => this.onSubmit(ev));
  }

  render(state: GameState): void {
    this.root.innerHTML = [
      this.header(state),
      state.errorMessage && state.phase === "error" ? errorBanner(state.errorMessage) : "",
      state.phase === "error" ? "" : this.body(state),
    ].join("");
    if (state.phase === "guessing") {
      const input = this.root.querySelector<HTMLInputElement>("#guess-input");
      input?.focus();
    }
  }

  private header(state: GameState): string {
    const progress =
      state.word && state.taskCount
        ? `word ${state.word.position} of ${state.taskCount}`
        : state.phase === "finished"
          ? "session complete"
          : "";
    return `<header class="bar">
      <h1>Unscramble</h1>
      <span class="progress">${esc(progress)}</span>
    </header>`;
  }

  private body(state: GameState): string {
    switch (state.phase) {
      case "idle":
        return `<p class="status">Starting session...</p>`;
      case "guessing":
        return this.playArea(state) + noticeLine(state.notice);
      case "rating":
        return this.playArea(state) + ratingModal(state) + noticeLine(state.notice);
      case "finished":
        return summaryView(state);
      default:
        return "";
    }
  }

  private playArea(state: GameState): string {
    const word = state.word;
    if (!word) {
      return "";
    }
    const tiles = word.scramble
      .toUpperCase()
      .split("")
      .map((ch) => `<span class="tile">${esc(ch)}</span>`)
      .join("");
    const feedback = state.lastGuessWrong
      ? `<p class="feedback">Not it, try again. ${state.guessesSoFar} ${plural(
          state.guessesSoFar,
          "guess",
          "guesses",
        )} so far.</p>`
      : "";
    return `${outcomeBanner(state.outcomes)}
      <section class="play">
        <div class="scramble-tiles">${tiles}</div>
        ${feedback}
        <form data-form="guess" autocomplete="off">
          <input id="guess-input" name="guess" placeholder="your word"
                 autofocus ${state.phase === "rating" ? "disabled" : ""}>
          <button type="submit" data-action="guess"
                  ${state.phase === "rating" ? "disabled" : ""}>Guess</button>
          <button type="button" data-action="skip"
                  ${state.phase === "rating" ? "disabled" : ""}>Skip word</button>
        </form>
      </section>`;
  }

  private onClick(ev: Event): void {
    const el = (ev.target as HTMLElement).closest("[data-action]");
    if (!el) {
      return;
    }
    switch (el.getAttribute("data-action")) {
      case "skip":
        void this.controller.skip();
        break;
      case "rate":
        void this.controller.rate(Number(el.getAttribute("data-urd")));
        break;
      case "dismiss":
        void this.controller.rate(null);
        break;
      case "retry":
        void this.controller.retry();
        break;
      default:
        break;
    }
  }

  private onSubmit(ev: Event): void {
    ev.preventDefault();
    const input = this.root.querySelector<HTMLInputElement>("#guess-input");
    const text = input ? input.value.trim() : "";
    if (!text) {
      return;
    }
    if (input) {
      input.value = "";
    }
    void this.controller.guess(text);
  }
}

export function mountGame(root: HTMLElement, api: SessionApiLike): GameController {
  let view: GameView | null = null;
  const controller = new GameController(api, (state) => view?.render(state));
  view = new GameView(root, controller);
  view.render(controller.getState());
  return controller;
}

function ratingModal(state: GameState): string {
  const buttons = Array.from({ length: 10 }, (_, i) => i + 1)
    .map((n) => `<button type="button" data-action="rate" data-urd="${n}">${n}</button>`)
    .join("");
  const solvedLine = state.skippedCurrent
    ? "Word skipped."
    : `Solved in ${state.guessesSoFar} ${plural(state.guessesSoFar, "guess", "guesses")}.`;
  return `<div class="rating-modal" role="dialog" aria-label="rate difficulty">
    <div class="rating-card">
      <p>${esc(solvedLine)}</p>
      <p>How difficult was that word? 1 = very easy, 10 = very hard.</p>
      <div class="rating-scale">${buttons}</div>
      <button type="button" class="dismiss" data-action="dismiss">No rating</button>
    </div>
  </div>`;
}

function outcomeBanner(outcomes: RoundOutcome[]): string {
  const last = outcomes[outcomes.length - 1];
  if (!last) {
    return "";
  }
  const how = last.solved
    ? `solved in ${last.guesses} ${plural(last.guesses, "guess", "guesses")}`
    : "skipped";
  return `<p class="outcome-banner">Previous word ${how}: difficulty
    <strong>${esc(last.iwdCategory)}</strong> (${last.iwdCrisp.toFixed(2)})</p>`;
}

function summaryView(state: GameState): string {
  const summary = state.summary;
  if (!summary) {
    return `<p class="status">Loading summary...</p>`;
  }
  const rows = summary.records
    .map(
      (r) => `<tr>
        <td>${r.presentation_index}</td>
        <td>${esc(r.scramble)}</td>
        <td>${esc(r.word)}</td>
        <td>${r.num_guesses}</td>
        <td>${r.was_skipped ? "yes" : "no"}</td>
        <td>${r.urd === null ? "not rated" : r.urd}</td>
        <td class="difficulty">${esc(r.iwd_category)} (${r.iwd_crisp.toFixed(2)})</td>
      </tr>`,
    )
    .join("");
  return `<section class="summary">
    <h2>Session complete</h2>
    <p>Player ${esc(summary.participant_id)}, ${esc(summary.mode)} mode,
       ${summary.records.length} of ${summary.task_count} words played.</p>
    <table class="summary-table">
      <thead>
        <tr><th>#</th><th>Scramble</th><th>Word</th><th>Guesses</th>
            <th>Skipped</th><th>Your rating</th><th>Difficulty</th></tr>
      </thead>
      <tbody>${rows}</tbody>
    </table>
  </section>`;
}

function errorBanner(message: string): string {
  return `<div class="error-banner">
    <p>Something went wrong: ${esc(message)}</p>
    <button type="button" data-action="retry">Retry</button>
  </div>`;
}

function noticeLine(notice: string | null): string {
  return notice ? `<p class="notice">${esc(notice)}</p>` : "";
}

function plural(n: number, one: string, many: string): string {
  return n === 1 ? one : many;
}

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
