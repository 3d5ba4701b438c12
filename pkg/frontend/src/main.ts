/** Browser entry point. Query parameters:
 *    ?api=http://host:port   service base URL (default http://127.0.0.1:8000)
 *    ?participant=name       player id (default a random web-xxxxxx id)
 *    ?mode=daily|full        task selection mode (default daily)
 *    ?seed=42                fixes the daily word sample
 */

import { SessionApi } from "./api.js";
import { mountGame } from "./ui.js";

const params = new URLSearchParams(window.location.search);
const apiBase = params.get("api") ?? "http://127.0.0.1:8000";
const participant =
  params.get("participant") ?? `web-${Math.random().toString(36).slice(2, 8)}`;
const mode = params.get("mode") ?? "daily";
const seedParam = params.get("seed");
const seed = seedParam === null ? undefined : Number(seedParam);

const root = document.getElementById("app");
if (!root) {
  throw new Error("page is missing the #app element");
}
const controller = mountGame(root, new SessionApi(apiBase));
void controller.start(participant, mode, seed);
