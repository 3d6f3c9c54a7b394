"""A local stand-in for a chat-completions endpoint.

It answers every prompt in the Score/Reason format with a score derived from
the summary's Flesch-Kincaid grade, so runs are deterministic. Failures can
be injected per document by putting marker strings in the summary text.

    with MockEndpoint(always_fail={"[fail]"}) as mock:
        cfg = LmEndpointConfig(base_url=mock.base_url, model_id="mock")
"""
import json
import threading
from collections import Counter
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .errors import ReadEvalError
from .metrics import MetricId, score_all


def heuristic_score(summary: str) -> float:
    """Map FKGL to the 1-5 scale: grade 6 or below is 5, grade 18 or above is 1."""
    try:
        fkgl = next(s.value for s in score_all(summary, metrics=[MetricId.FKGL]))
    except ReadEvalError:
        return 3.0
    raw = 5 - (fkgl - 6) / 3
    return min(5.0, max(1.0, round(raw * 2) / 2))


def summary_from_prompt(prompt: str) -> str:
    marker = prompt.rfind("Text: ")
    return prompt[marker + 6:] if marker >= 0 else prompt


class MockEndpoint:
    """Threaded HTTP server answering ``POST /chat/completions``.

    ``always_fail``: summaries containing any of these strings get HTTP 500.
    ``flaky``: the first request for such a summary gets HTTP 500, later ones succeed.
    ``malformed``: answered with text that has no Score line.
    ``rate_limited``: the first request gets HTTP 429.
    """

    def __init__(self, host="127.0.0.1", port=0, always_fail=(), flaky=(), malformed=(), rate_limited=(), scorer=heuristic_score):
        self.always_fail = set(always_fail)
        self.flaky = set(flaky)
        self.malformed = set(malformed)
        self.rate_limited = set(rate_limited)
        self.scorer = scorer
        self.requests = Counter()
        self.payloads = []
        self._lock = threading.Lock()
        self._server = ThreadingHTTPServer((host, port), self._handler())
        self._server.daemon_threads = True
        self._thread = None

    @property
    def base_url(self) -> str:
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}"

    def start(self):
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self):
        self._server.shutdown()
        self._server.server_close()

    def __enter__(self):
        return self.start()

    def __exit__(self, *exc):
        self.stop()

    def serve_forever(self):
        self._server.serve_forever()

    def respond(self, payload: dict):
        """Return ``(status, body)`` for one request payload."""
        prompt = payload["messages"][-1]["content"]
        summary = summary_from_prompt(prompt)
        with self._lock:
            self.requests[summary] += 1
            seen = self.requests[summary]
            self.payloads.append(payload)
        if any(m in summary for m in self.always_fail):
            return 500, {"error": "injected failure"}
        if seen == 1 and any(m in summary for m in self.flaky):
            return 500, {"error": "injected transient failure"}
        if seen == 1 and any(m in summary for m in self.rate_limited):
            return 429, {"error": "slow down"}
        if any(m in summary for m in self.malformed):
            text = "I think this text is fairly readable overall."
        else:
            score = self.scorer(summary)
            words = len(summary.split())
            text = f"Score: {score:g}\nReason: The {words}-word text was rated by sentence length and word difficulty."
        body = {
            "id": "mock",
            "object": "chat.completion",
            "model": payload.get("model", "mock"),
            "choices": [{"index": 0, "message": {"role": "assistant", "content": text}, "finish_reason": "stop"}],
        }
        return 200, body

    def _handler(self):
        endpoint = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self):
                if not self.path.rstrip("/").endswith("/chat/completions"):
                    self._send(404, {"error": "not found"})
                    return
                length = int(self.headers.get("Content-Length", 0))
                try:
                    payload = json.loads(self.rfile.read(length))
                    status, body = endpoint.respond(payload)
                except (ValueError, KeyError, IndexError, TypeError):
                    status, body = 400, {"error": "bad request"}
                self._send(status, body)

            def _send(self, status, body):
                data = json.dumps(body).encode("utf-8")
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

            def log_message(self, *args):
                pass

        return Handler
