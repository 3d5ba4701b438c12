"""Play a scripted daily session against the HTTP service.

Starts the service in a background thread on a free port, then drives one
daily session (4 words) over plain HTTP: a wrong guess, correct guesses, a
skip, and one dismissed rating popup. Finally it re-reads the session log
and re-scores it offline to show the log replays cleanly.

Run: python3 demos/play_over_http.py
"""

import json
import socket
import tempfile
import threading
import time
import urllib.request
from pathlib import Path

import uvicorn

from scramblefit.model import DifficultyModel
from scramblefit.service import create_app
from scramblefit.session import rescore_log
from scramblefit.words import default_tasks


def call(method: str, url: str, body: dict | None = None) -> dict:
    data = None if body is None else json.dumps(body).encode()
    req = urllib.request.Request(url, data=data, method=method,
                                 headers={"Content-Type": "application/json"})
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


with socket.socket() as s:
    s.bind(("127.0.0.1", 0))
    port = s.getsockname()[1]

data_dir = Path(tempfile.mkdtemp(prefix="scramblefit-demo-"))
log_path = data_dir / "sessions.jsonl"
model = DifficultyModel.default()
tasks = default_tasks()
app = create_app(model, tasks, log_path)

server = uvicorn.Server(uvicorn.Config(app, host="127.0.0.1", port=port, log_level="error"))
thread = threading.Thread(target=server.run, daemon=True)
thread.start()
while not server.started:
    time.sleep(0.05)

base = f"http://127.0.0.1:{port}"
answers = {t.task_id: t.word for t in tasks}

sid = call("POST", f"{base}/sessions",
           {"participant_id": "demo", "mode": "daily", "seed": 20260814})["session_id"]
print(f"session {sid[:8]}... started (daily mode, 4 words)\n")

for i in range(4):
    word = call("GET", f"{base}/sessions/{sid}/word")
    print(f"word {word['position']}: scramble {word['scramble']!r}")
    if i == 0:
        wrong = call("POST", f"{base}/sessions/{sid}/guess", {"text": "notaword"})
        print(f"  guessed 'notaword' -> correct={wrong['correct']}")
    if i == 2:
        call("POST", f"{base}/sessions/{sid}/skip")
        print("  skipped")
    else:
        right = call("POST", f"{base}/sessions/{sid}/guess", {"text": answers[word["task_id"]]})
        print(f"  guessed the answer -> correct={right['correct']}")
    rating_body = {} if i == 3 else {"urd": 3 + 2 * i}
    rating = call("POST", f"{base}/sessions/{sid}/rating", rating_body)
    given = rating_body.get("urd", "dismissed")
    print(f"  rating popup: {given} -> iwd {rating['iwd_crisp']:.3f} ({rating['iwd_category']})\n")

summary = call("GET", f"{base}/sessions/{sid}/summary")
print(f"summary: state={summary['state']}, {len(summary['records'])} records persisted")

mismatches = rescore_log(log_path, model)
print(f"offline re-score of {log_path.name}: "
      f"{'clean replay' if not mismatches else f'{len(mismatches)} MISMATCHES'}")

server.should_exit = True
thread.join(timeout=5)
