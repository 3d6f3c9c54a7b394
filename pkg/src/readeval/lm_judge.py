"""LM readability judging: prompt templates, response parsing, a small
chat-completions client, and resumable batch runs with a JSON-lines journal."""
import concurrent.futures
import hashlib
import json
import logging
import math
import os
import re
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Optional

import httpx

from .errors import CorpusParseError, EmptySummary, EndpointError, JudgeConfigError, JudgeTimeout, ParseFailure

log = logging.getLogger(__name__)

PLACEHOLDER = "{SUMMARY}"

_QUESTION = (
    "On a scale of  1 to 5, what is the reading ease of the following text? "
    "1 indicates the text requires expert background knowledge and 5 indicates "
    "the text is readable to the general population."
)
_OWN_JUDGMENT = (
    "Assume the reader is an adult. Do not use Flesch-Kincaid or other readability "
    "formulas. Use your own judgment to rate the text."
)

TEMPLATE_BODIES = {
    "simple": (
        _QUESTION + " Assume the reader is an adult.\n"
        "\n"
        "Format the output as follows:\n"
        "Score: <score>\n"
        "Reason: <reasoning>\n"
        "Text: {SUMMARY}"
    ),
    "ascb": (
        _QUESTION + " Characteristics of a highly readable text include:\n"
        "- Know your audience, and focus and organize your information for that particular audience.\n"
        "- Focus on the big picture. What larger problem is your work a part of? What major ideas "
        "or issues does your work address? How will your work help global understanding of some issue?\n"
        "- Avoid jargon. If you must use a technical term, make sure to explain it, but simplify the language.\n"
        "- Try to use metaphors or analogies to everyday experiences that people can relate to.\n"
        "- Underscore the importance of public support for exploratory research and scientific "
        "information, and the role of this information in providing the context for effective policy making.\n"
        "\n"
        + _OWN_JUDGMENT + "\n"
        "\n"
        "Format the output as follows:\n"
        "Score: <score>\n"
        "Reason: <reasoning>\n"
        "\n"
        "Text: {SUMMARY}"
    ),
    "own_reasoning": (
        _QUESTION + "\n"
        + _OWN_JUDGMENT + "\n"
        "\n"
        "Format the output as follows:\n"
        "Score: <score>\n"
        "Reason: <reasoning>\n"
        "\n"
        "Text: {SUMMARY}"
    ),
}

DEFAULT_TEMPLATE = "own_reasoning"

REINSTRUCTION = (
    "\n\nYour previous answer did not follow the required format. "
    "Answer again using exactly two lines:\nScore: <score>\nReason: <reasoning>"
)


@dataclass(frozen=True)
class PromptTemplate:
    id: str
    body: str

    def __post_init__(self):
        if self.body.count(PLACEHOLDER) != 1:
            raise ValueError(f"template {self.id!r} must contain exactly one {PLACEHOLDER}")

    @property
    def sha256(self) -> str:
        return hashlib.sha256(self.body.encode("utf-8")).hexdigest()


TEMPLATES = {tid: PromptTemplate(tid, body) for tid, body in TEMPLATE_BODIES.items()}


def get_template(template) -> PromptTemplate:
    if isinstance(template, PromptTemplate):
        return template
    try:
        return TEMPLATES[template]
    except KeyError:
        raise JudgeConfigError(f"unknown template {template!r}; choose from {sorted(TEMPLATES)}") from None


def build_prompt(template, summary: str) -> str:
    if not summary or not summary.strip():
        raise EmptySummary("summary is empty")
    return get_template(template).body.replace(PLACEHOLDER, summary)


# ---------------------------------------------------------------------------
# parsing

_SCORE_LINE = re.compile(r"^[\s*_#>`-]*score[\s*_`]*[:=][\s*_`]*(-?\d+(?:\.\d+)?)", re.IGNORECASE | re.MULTILINE)
_REASON = re.compile(r"^[\s*_#>`-]*reason(?:ing)?[\s*_`]*[:=][\s*_`]*", re.IGNORECASE | re.MULTILINE)


def parse_response(raw: str):
    """Extract ``(score, reason)`` from an LM answer.

    The score is the first number after the first ``Score:`` line (so
    ``4/5`` and ``4 out of 5`` read as 4). Values within 0.01 of a half step
    snap to it; anything else, or anything outside [1, 5], is rejected.
    """
    m = _SCORE_LINE.search(raw or "")
    if m is None:
        raise ParseFailure("no 'Score:' line in response", raw)
    value = float(m.group(1))
    snapped = round(value * 2) / 2
    if abs(value - snapped) > 0.01:
        raise ParseFailure(f"score {value} is not on a half-point step", raw)
    if not 1.0 <= snapped <= 5.0:
        raise ParseFailure(f"score {value} outside [1, 5]", raw)

    r = _REASON.search(raw)
    if r is None:
        raise ParseFailure("no 'Reason:' line in response", raw)
    reason = raw[r.end():]
    later_score = _SCORE_LINE.search(reason)
    if later_score is not None:
        reason = reason[: later_score.start()]
    reason = reason.strip().strip("*_`").strip()
    if not reason:
        raise ParseFailure("empty reason", raw)
    return snapped, reason


def format_response(score: float, reason: str) -> str:
    return f"Score: {score:g}\nReason: {reason}"


# ---------------------------------------------------------------------------
# endpoint


@dataclass
class LmEndpointConfig:
    base_url: str
    model_id: str
    temperature: float = 0.0
    max_parallel: int = 4
    max_retries: int = 2
    timeout: float = 60.0
    seed: Optional[int] = 0
    api_key_env: str = "OPENAI_API_KEY"
    backoff_base: float = 1.0
    backoff_max: float = 30.0

    def validate(self):
        if not self.base_url:
            raise JudgeConfigError("base_url is required")
        if not self.model_id:
            raise JudgeConfigError("model_id is required")
        if self.max_parallel < 1:
            raise JudgeConfigError("max_parallel must be >= 1")
        if self.max_retries < 0:
            raise JudgeConfigError("max_retries must be >= 0")
        if self.temperature < 0:
            raise JudgeConfigError("temperature must be >= 0")
        if self.timeout <= 0:
            raise JudgeConfigError("timeout must be positive")
        return self

    def public_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class JudgeScore:
    score: float
    reason: str
    model_id: str
    prompt_id: str
    raw_response: str
    retry_count: int = 0


class ChatClient:
    """Minimal client for an OpenAI-style ``/chat/completions`` endpoint.

    Retries HTTP 429, 5xx, timeouts and connection errors with exponential
    backoff; other 4xx responses fail immediately.
    """

    def __init__(self, cfg: LmEndpointConfig, http: Optional[httpx.Client] = None, sleep=time.sleep):
        self.cfg = cfg.validate()
        headers = {}
        key = os.environ.get(cfg.api_key_env) if cfg.api_key_env else None
        if key:
            headers["Authorization"] = f"Bearer {key}"
        self._http = http or httpx.Client(timeout=cfg.timeout, headers=headers)
        self._sleep = sleep
        self.url = cfg.base_url.rstrip("/") + "/chat/completions"

    def close(self):
        self._http.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def _payload(self, prompt):
        body = {
            "model": self.cfg.model_id,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.cfg.temperature,
        }
        if self.cfg.seed is not None:
            body["seed"] = self.cfg.seed
        return body

    def complete(self, prompt: str):
        """Return ``(text, retries_used)``."""
        retries = 0
        while True:
            try:
                resp = self._http.post(self.url, json=self._payload(prompt))
            except httpx.TimeoutException as e:
                err = JudgeTimeout(f"request timed out after {self.cfg.timeout}s: {e}")
            except httpx.TransportError as e:
                err = EndpointError(f"transport error: {e}")
            else:
                if resp.status_code == 200:
                    try:
                        return resp.json()["choices"][0]["message"]["content"], retries
                    except (ValueError, KeyError, IndexError, TypeError) as e:
                        raise EndpointError(f"malformed completion payload: {e}", resp.status_code) from None
                if resp.status_code in (401, 403):
                    raise JudgeConfigError(f"endpoint rejected credentials (HTTP {resp.status_code})")
                err = EndpointError(f"HTTP {resp.status_code}: {resp.text[:200]}", resp.status_code)
                if resp.status_code != 429 and resp.status_code < 500:
                    raise err
            if retries >= self.cfg.max_retries:
                raise err
            delay = min(self.cfg.backoff_max, self.cfg.backoff_base * 2 ** retries)
            log.debug("retrying after %s (%.2fs)", err, delay)
            self._sleep(delay)
            retries += 1


def judge(summary: str, template, cfg: LmEndpointConfig, client: Optional[ChatClient] = None) -> JudgeScore:
    """Rate one summary. Unparseable answers are re-requested up to ``max_retries`` times."""
    template = get_template(template)
    prompt = build_prompt(template, summary)
    own_client = client is None
    client = client or ChatClient(cfg)
    try:
        retries = 0
        attempt_prompt = prompt
        while True:
            raw, transport_retries = client.complete(attempt_prompt)
            retries += transport_retries
            try:
                score, reason = parse_response(raw)
            except ParseFailure:
                if retries >= cfg.max_retries:
                    raise
                retries += 1
                attempt_prompt = prompt + REINSTRUCTION
                continue
            return JudgeScore(score, reason, cfg.model_id, template.id, raw, retries)
    finally:
        if own_client:
            client.close()


# ---------------------------------------------------------------------------
# batches and journal


@dataclass
class JournalEntry:
    id: str
    score: Optional[float]
    reason: Optional[str]
    model_id: str
    prompt_id: str
    raw_response: Optional[str]
    retry_count: int = 0
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_json(self) -> str:
        d = asdict(self)
        if d["error"] is None:
            del d["error"]
        return json.dumps(d, ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "JournalEntry":
        return cls(
            id=str(d["id"]),
            score=d.get("score"),
            reason=d.get("reason"),
            model_id=d.get("model_id", ""),
            prompt_id=d.get("prompt_id", ""),
            raw_response=d.get("raw_response"),
            retry_count=int(d.get("retry_count", 0)),
            error=d.get("error"),
        )

    @classmethod
    def from_score(cls, doc_id, js: JudgeScore) -> "JournalEntry":
        return cls(doc_id, js.score, js.reason, js.model_id, js.prompt_id, js.raw_response, js.retry_count)


def read_journal(path) -> list:
    """Entries of a journal file. A torn final line (crash mid-write) is ignored."""
    path = Path(path)
    if not path.exists():
        return []
    entries = []
    lines = path.read_text(encoding="utf-8").splitlines()
    for i, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            entries.append(JournalEntry.from_dict(json.loads(line)))
        except (ValueError, KeyError) as e:
            if i == len(lines):
                log.warning("%s: ignoring incomplete last line", path)
                break
            raise CorpusParseError(f"{path}: bad journal line: {e}", i) from None
    return entries


def _rewrite_journal(path: Path, entries):
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8") as f:
        for e in entries:
            f.write(e.to_json() + "\n")
    os.replace(tmp, path)


def _doc_pairs(corpus) -> list:
    pairs = []
    for doc in corpus:
        if isinstance(doc, dict):
            pairs.append((str(doc["id"]), doc["text"]))
        elif hasattr(doc, "id") and hasattr(doc, "text"):
            pairs.append((str(doc.id), doc.text))
        else:
            doc_id, text = doc
            pairs.append((str(doc_id), text))
    return pairs


def _failure(doc_id, cfg, template, exc, retries=None):
    raw = getattr(exc, "raw", None)
    return JournalEntry(
        doc_id, None, None, cfg.model_id, template.id, raw,
        cfg.max_retries if retries is None else retries,
        f"{type(exc).__name__}: {exc}",
    )


def batch_judge(
    corpus: Iterable,
    template,
    cfg: LmEndpointConfig,
    journal: Optional[os.PathLike] = None,
    client: Optional[ChatClient] = None,
    retry_failed: bool = False,
    progress=None,
) -> list:
    """Judge every document, returning one JournalEntry per input, in input order.

    ``corpus`` holds ``(id, text)`` pairs, dicts or records with ``id`` and
    ``text``. Failed items become entries with ``error`` set. With a
    ``journal`` path, finished items are appended as they complete and items
    already present are not re-requested (failures too, unless
    ``retry_failed``). Only configuration problems abort the run.
    """
    cfg.validate()
    template = get_template(template)
    docs = _doc_pairs(corpus)
    ids = [d for d, _ in docs]
    if len(set(ids)) != len(ids):
        raise JudgeConfigError("duplicate document ids in batch")

    done = {}
    journal_path = Path(journal) if journal is not None else None
    if journal_path is not None:
        previous = read_journal(journal_path)
        for e in previous:
            if e.model_id != cfg.model_id or e.prompt_id != template.id:
                raise JudgeConfigError(
                    f"journal {journal_path} holds results for model {e.model_id!r} / prompt "
                    f"{e.prompt_id!r}, not {cfg.model_id!r} / {template.id!r}"
                )
        kept = [e for e in previous if e.ok or not retry_failed]
        if len(kept) != len(previous) or (journal_path.exists() and not _ends_cleanly(journal_path)):
            _rewrite_journal(journal_path, kept)
        done = {e.id: e for e in kept}

    todo = [(i, d, t) for i, (d, t) in enumerate(docs) if d not in done]
    results = [done.get(d) for d in ids]

    own_client = client is None
    client = client or ChatClient(cfg)
    sink = open(journal_path, "a", encoding="utf-8") if journal_path is not None else None

    def work(doc_id, text):
        try:
            return JournalEntry.from_score(doc_id, judge(text, template, cfg, client))
        except JudgeConfigError:
            raise
        except (EndpointError, ParseFailure, EmptySummary) as e:
            return _failure(doc_id, cfg, template, e)

    pool = concurrent.futures.ThreadPoolExecutor(max_workers=cfg.max_parallel)
    try:
        futures = {pool.submit(work, d, t): i for i, d, t in todo}
        for fut in concurrent.futures.as_completed(futures):
            entry = fut.result()
            results[futures[fut]] = entry
            if sink is not None:
                sink.write(entry.to_json() + "\n")
                sink.flush()
            if progress is not None:
                progress(entry)
    except BaseException:
        pool.shutdown(wait=True, cancel_futures=True)
        raise
    finally:
        pool.shutdown(wait=True)
        if sink is not None:
            sink.close()
        if own_client:
            client.close()
    return results


def _ends_cleanly(path: Path) -> bool:
    with open(path, "rb") as f:
        f.seek(0, os.SEEK_END)
        if f.tell() == 0:
            return True
        f.seek(-1, os.SEEK_END)
        return f.read(1) == b"\n"


def template_hashes() -> dict:
    return {tid: t.sha256 for tid, t in sorted(TEMPLATES.items())}


def half_step_bins():
    return [1.0 + 0.5 * i for i in range(9)]


def is_half_step(value: float) -> bool:
    return 1.0 <= value <= 5.0 and math.isclose(value * 2, round(value * 2), abs_tol=1e-9)
