"""Command-line entry point: ``readeval <command> ...``.

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 endpoint error. Errors are also written to stderr as one JSON object.
"""
import argparse
import configparser
import csv
import hashlib
import io
import json
import logging
import math
import os
import sys
from dataclasses import asdict, dataclass, field, fields, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from . import __version__
from .corpus import (
    agreement_analysis, analyze_datasets, load_corpus, load_ratings, rank_datasets,
)
from .errors import (
    AlignmentError, EmptyText, EndpointError, JudgeConfigError, MissingInput, ReadEvalError,
)
from .keywords import KeywordConfig, rationales_from_journal, stratify_keywords
from .lm_judge import (
    DEFAULT_TEMPLATE, TEMPLATES, LmEndpointConfig, batch_judge, half_step_bins, read_journal, template_hashes,
)
from .metrics import ALL_METRICS, VARIANTS, MetricId, orient_value, score_all
from .stats import average_annotator_scores, correlation_report, pearson, williams_test
from .textproc import SHIPPED_LISTS, asset_path

log = logging.getLogger("readeval")

LM = "LM"
FORMATS = ("csv", "md", "jsonl")


class UsageError(ReadEvalError):
    exit_code = 1


# ---------------------------------------------------------------------------
# configuration


@dataclass
class RunConfig:
    corpus: Optional[str] = None
    scores: Optional[str] = None
    judgments: Optional[str] = None
    ratings: Optional[str] = None
    means: Optional[str] = None
    output_dir: Optional[str] = None
    metrics: tuple = tuple(m.value for m in ALL_METRICS)
    judge: bool = True
    variant: str = "reference"
    sample_variance: bool = False
    tail: str = "one"
    fmt: str = "csv"
    template: str = DEFAULT_TEMPLATE
    endpoint: LmEndpointConfig = field(default_factory=lambda: LmEndpointConfig(base_url="", model_id=""))
    keywords: KeywordConfig = field(default_factory=KeywordConfig)

    def validate(self):
        if not self.metrics and not self.judge:
            raise UsageError("select at least one scorer")
        for m in self.metrics:
            if m not in MetricId.__members__:
                raise UsageError(f"unknown metric {m!r}")
        if self.variant not in VARIANTS:
            raise UsageError(f"unknown coefficient variant {self.variant!r}")
        if self.tail not in ("one", "two"):
            raise UsageError("tail must be 'one' or 'two'")
        if self.fmt not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")
        if self.template not in TEMPLATES:
            raise UsageError(f"unknown template {self.template!r}")
        try:
            self.keywords.validate()
        except ValueError as e:
            raise UsageError(str(e)) from None
        if self.output_dir is not None:
            out = Path(self.output_dir)
            out.mkdir(parents=True, exist_ok=True)
            if not os.access(out, os.W_OK):
                raise UsageError(f"output directory {out} is not writable")
        return self

    def digest(self) -> str:
        """Hash of every setting that can change results (paths and endpoint address excluded)."""
        d = asdict(self)
        for key in ("corpus", "scores", "judgments", "ratings", "means", "output_dir"):
            d.pop(key)
        d["endpoint"] = {k: v for k, v in d["endpoint"].items() if k not in ("base_url", "api_key_env")}
        blob = json.dumps(d, sort_keys=True, default=list).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()


def _bool(value: str) -> bool:
    v = value.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {value!r}")


def _typed(dc_type, section, where):
    types = {f.name: f.type for f in fields(dc_type)}
    out = {}
    for key, raw in section.items():
        if key not in types:
            raise UsageError(f"{where}: unknown key {key!r}")
        t = types[key]
        try:
            if t in (int, "int"):
                out[key] = int(raw)
            elif t in (float, "float"):
                out[key] = float(raw)
            elif t in (bool, "bool"):
                out[key] = _bool(raw)
            elif key == "seed":
                out[key] = None if raw.lower() == "none" else int(raw)
            elif key == "metrics":
                out[key] = tuple(m.strip().upper() for m in raw.split(",") if m.strip())
            else:
                out[key] = raw
        except ValueError:
            raise UsageError(f"{where}: bad value for {key!r}: {raw!r}") from None
    return out


def load_run_config(path) -> RunConfig:
    """Read an INI file with optional ``[run]``, ``[endpoint]`` and ``[keywords]`` sections."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as f:
            parser.read_file(f)
    except FileNotFoundError:
        raise MissingInput(f"config file {path} not found") from None
    except configparser.Error as e:
        raise UsageError(f"{path}: {e}") from None
    unknown = set(parser.sections()) - {"run", "endpoint", "keywords"}
    if unknown:
        raise UsageError(f"{path}: unknown sections {sorted(unknown)}")
    run = {}
    if parser.has_section("run"):
        section = dict(parser["run"])
        if "format" in section:
            section["fmt"] = section.pop("format")
        run = _typed(RunConfig, section, f"{path} [run]")
    endpoint = LmEndpointConfig(base_url="", model_id="")
    if parser.has_section("endpoint"):
        endpoint = replace(endpoint, **_typed(LmEndpointConfig, parser["endpoint"], f"{path} [endpoint]"))
    keywords = KeywordConfig()
    if parser.has_section("keywords"):
        keywords = replace(keywords, **_typed(KeywordConfig, parser["keywords"], f"{path} [keywords]"))
    return RunConfig(**run, endpoint=endpoint, keywords=keywords)


# ---------------------------------------------------------------------------
# table output


def _cell(v):
    if isinstance(v, float):
        return "" if math.isnan(v) else repr(v)
    return "" if v is None else str(v)


def _md_cell(v):
    if isinstance(v, float):
        return "" if math.isnan(v) else f"{v:.2f}"
    return "" if v is None else str(v).replace("|", "\\|")


def render_table(rows, columns, fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in columns])
    elif fmt == "jsonl":
        for r in rows:
            d = {c: (None if isinstance(r.get(c), float) and math.isnan(r[c]) else r.get(c)) for c in columns}
            buf.write(json.dumps(d, ensure_ascii=False) + "\n")
    else:
        buf.write("| " + " | ".join(columns) + " |\n")
        buf.write("|" + "|".join("---" for _ in columns) + "|\n")
        for r in rows:
            buf.write("| " + " | ".join(_md_cell(r.get(c)) for c in columns) + " |\n")
    return buf.getvalue()


def _emit(text: str, cfg: RunConfig, name: str):
    if cfg.output_dir is None:
        sys.stdout.write(text)
        return None
    ext = {"csv": "csv", "md": "md", "jsonl": "jsonl"}[cfg.fmt]
    path = Path(cfg.output_dir) / f"{name}.{ext}"
    path.write_text(text, encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# inputs


def _need(path: Optional[str], what: str) -> Path:
    if not path:
        raise MissingInput(f"no {what} given")
    p = Path(path)
    if not p.exists():
        raise MissingInput(f"{what} {p} does not exist")
    return p


def read_scores(path) -> dict:
    """Read a ``score`` CSV into {metric: {id: oriented value}} plus raw values under ``raw``."""
    p = _need(path, "scores file")
    oriented, raw, datasets = {}, {}, {}
    with open(p, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        metrics = [c for c in (reader.fieldnames or []) if c in MetricId.__members__]
        if "id" not in (reader.fieldnames or []) or not metrics:
            raise MissingInput(f"{p} is not a scores file (needs id and metric columns)")
        for row in reader:
            datasets[row["id"]] = row.get("dataset", "")
            for m in metrics:
                if row[m] == "":
                    continue
                v = float(row[m])
                raw.setdefault(m, {})[row["id"]] = v
                oriented.setdefault(m, {})[row["id"]] = orient_value(m, v)
    return {"oriented": oriented, "raw": raw, "datasets": datasets, "metrics": metrics}


def read_judgments(path) -> list:
    p = _need(path, "judgment journal")
    return read_journal(p)


def human_scores(cfg: RunConfig) -> dict:
    if cfg.ratings:
        ratings = load_ratings(_need(cfg.ratings, "ratings file"))
        ids = sorted(ratings)
        return dict(zip(ids, average_annotator_scores([ratings[i] for i in ids])))
    records = load_corpus(_need(cfg.corpus, "corpus"))
    scores = {r.id: r.human_score for r in records if r.human_score is not None}
    if not scores:
        raise MissingInput("no human scores: pass --ratings or a corpus with human_score")
    return scores


def scorer_values(cfg: RunConfig) -> dict:
    """{scorer: {id: oriented score}} for the selected metrics and, if enabled, the LM judge."""
    out = {}
    if cfg.metrics and cfg.scores:
        table = read_scores(cfg.scores)
        for m in cfg.metrics:
            if m in table["oriented"]:
                out[m] = table["oriented"][m]
    if cfg.judge and cfg.judgments:
        out[LM] = {e.id: e.score for e in read_judgments(cfg.judgments) if e.ok}
    if not out:
        raise MissingInput("no scorer outputs: pass --scores and/or --judgments")
    return out


def _aligned(human: dict, scorers: dict):
    ids = set(human)
    for values in scorers.values():
        ids &= set(values)
    if len(ids) < 4:
        raise AlignmentError(f"only {len(ids)} documents have a human score and every scorer's output")
    return sorted(ids)


def _input_provenance(cfg: RunConfig) -> list:
    rows = []
    for key in ("corpus", "scores", "judgments", "ratings", "means"):
        path = getattr(cfg, key)
        if not path:
            continue
        p = Path(path)
        stamp = datetime.fromtimestamp(p.stat().st_mtime, tz=timezone.utc).isoformat(timespec="seconds")
        rows.append({"input": key, "file": p.name, "sha256": _sha256(p.read_bytes()), "modified": stamp})
    return rows


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def wordlist_hashes() -> dict:
    return {name: _sha256(asset_path(f"{name}.txt").read_bytes()) for name in SHIPPED_LISTS}


# ---------------------------------------------------------------------------
# analyses shared by commands and the report


def score_rows(records, cfg: RunConfig) -> list:
    variant = VARIANTS[cfg.variant]
    metrics = [MetricId[m] for m in cfg.metrics]
    rows = []
    for r in records:
        try:
            scores = score_all(r.text, variant=variant, metrics=metrics)
        except EmptyText:
            raise EmptyText(f"record {r.id!r} has no scorable words") from None
        row = {"id": r.id, "dataset": r.dataset}
        for s in scores:
            row[s.metric.value] = s.value
        for s in scores:
            row[f"oriented_{s.metric.value}"] = orient_value(s.metric, s.value)
        for s in scores:
            row[f"band_{s.metric.value}"] = s.grade_band
        rows.append(row)
    return rows


def correlation_rows(human: dict, scorers: dict) -> list:
    ids = _aligned(human, scorers)
    h = [human[i] for i in ids]
    rows = []
    for name in scorers:
        rep = correlation_report(name, [scorers[name][i] for i in ids], h)
        rows.append({"scorer": name, "pearson": rep.pearson, "kendall_tau": rep.kendall_tau, "n": rep.n})
    return rows


def significance_rows(human: dict, scorers: dict, tail: str = "one") -> list:
    """Williams p-values: row scorer a, column scorer b, H1 that a tracks humans better than b."""
    ids = _aligned(human, scorers)
    h = [human[i] for i in ids]
    vec = {name: [scorers[name][i] for i in ids] for name in scorers}
    r_h = {name: pearson(vec[name], h) for name in scorers}
    rows = []
    for a in scorers:
        row = {"scorer": a}
        for b in scorers:
            if a == b:
                row[b] = None
                continue
            try:
                res = williams_test(r_h[a], r_h[b], pearson(vec[a], vec[b]), len(ids), a, b)
                p = res.p_value if tail == "one" else min(1.0, 2 * min(res.p_value, 1 - res.p_value))
            except ReadEvalError:
                p = float("nan")
            row[b] = p
        rows.append(row)
    return rows


def read_means(path) -> tuple:
    """A means CSV with columns ``dataset``, ``lm`` and ``fkgl``."""
    p = _need(path, "means file")
    lm, fkgl = {}, {}
    with open(p, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if not {"dataset", "lm", "fkgl"} <= set(reader.fieldnames or []):
            raise MissingInput(f"{p} needs columns dataset, lm, fkgl")
        for row in reader:
            lm[row["dataset"]] = float(row["lm"])
            fkgl[row["dataset"]] = float(row["fkgl"])
    return lm, fkgl


def dataset_means(cfg: RunConfig) -> tuple:
    if cfg.means:
        return read_means(cfg.means)
    table = read_scores(cfg.scores)
    if "FKGL" not in table["raw"]:
        raise MissingInput("scores file has no FKGL column")
    entries = [e for e in read_judgments(cfg.judgments) if e.ok]
    labels = table["datasets"]
    if cfg.corpus:
        labels = {r.id: r.dataset for r in load_corpus(cfg.corpus)}
    lm_groups, fkgl_groups = {}, {}
    for e in entries:
        lm_groups.setdefault(labels.get(e.id, ""), []).append(e.score)
    for doc_id, v in table["raw"]["FKGL"].items():
        fkgl_groups.setdefault(labels.get(doc_id, ""), []).append(v)
    shared = sorted(set(lm_groups) & set(fkgl_groups))
    return (
        {d: sum(lm_groups[d]) / len(lm_groups[d]) for d in shared},
        {d: sum(fkgl_groups[d]) / len(fkgl_groups[d]) for d in shared},
    )


def rank_rows(lm_means: dict, fkgl_means: dict) -> list:
    entries = rank_datasets(lm_means, fkgl_means)
    return [
        {"dataset": e.dataset, "lm_mean": e.score_a, "lm_rank": e.rank_a,
         "fkgl_mean": e.score_b, "fkgl_rank": e.rank_b, "delta_rank": e.delta_rank}
        for e in entries
    ]


def keyword_rows(strata: dict) -> list:
    return [
        {"stratum": key, "rank": i, "phrase": kw.phrase, "score": kw.score, "tf": kw.tf}
        for key, kws in strata.items()
        for i, kw in enumerate(kws, 1)
    ]


# ---------------------------------------------------------------------------
# commands


def cmd_score(cfg: RunConfig, args) -> int:
    records = load_corpus(_need(cfg.corpus, "corpus"))
    rows = score_rows(records, cfg)
    columns = ["id", "dataset"] + list(cfg.metrics)
    columns += [f"oriented_{m}" for m in cfg.metrics] + [f"band_{m}" for m in cfg.metrics]
    _emit(render_table(rows, columns, cfg.fmt), cfg, "scores")
    return 0


def cmd_judge(cfg: RunConfig, args) -> int:
    records = load_corpus(_need(cfg.corpus, "corpus"))
    journal = args.journal or str(Path(cfg.output_dir or ".") / "judgments.jsonl")
    entries = batch_judge(records, cfg.template, cfg.endpoint, journal=journal, retry_failed=args.retry_failed)
    ok = sum(e.ok for e in entries)
    failed = len(entries) - ok
    print(json.dumps({"journal": journal, "ok": ok, "failed": failed}), file=sys.stderr)
    if entries and ok == 0:
        raise EndpointError(f"all {failed} documents failed; see {journal}")
    return 0


def cmd_correlate(cfg: RunConfig, args) -> int:
    rows = correlation_rows(human_scores(cfg), scorer_values(cfg))
    _emit(render_table(rows, ["scorer", "pearson", "kendall_tau", "n"], cfg.fmt), cfg, "correlations")
    return 0


def cmd_significance(cfg: RunConfig, args) -> int:
    scorers = scorer_values(cfg)
    rows = significance_rows(human_scores(cfg), scorers, cfg.tail)
    _emit(render_table(rows, ["scorer"] + list(scorers), cfg.fmt), cfg, "significance")
    return 0


def cmd_rank(cfg: RunConfig, args) -> int:
    lm, fkgl = dataset_means(cfg)
    rows = rank_rows(lm, fkgl)
    cols = ["dataset", "lm_mean", "lm_rank", "fkgl_mean", "fkgl_rank", "delta_rank"]
    _emit(render_table(rows, cols, cfg.fmt), cfg, "ranks")
    return 0


def cmd_keywords(cfg: RunConfig, args) -> int:
    entries = read_judgments(cfg.judgments)
    labels = {r.id: r.dataset for r in load_corpus(cfg.corpus)} if cfg.corpus else {}
    k = cfg.keywords
    strata = stratify_keywords(
        rationales_from_journal(entries, labels), by=args.by, top_k=k.top_k,
        max_ngram=k.max_ngram, dedup_threshold=k.dedup_threshold, window=k.window,
    )
    rows = keyword_rows(strata)
    _emit(render_table(rows, ["stratum", "rank", "phrase", "score", "tf"], cfg.fmt), cfg, f"keywords_{args.by}")
    return 0


def cmd_report(cfg: RunConfig, args) -> int:
    if cfg.output_dir is None:
        raise UsageError("report needs --output")
    if not any((cfg.scores, cfg.judgments, cfg.means)):
        raise MissingInput("report needs at least one of --scores, --judgments, --means")
    for key in ("corpus", "scores", "judgments", "ratings", "means"):
        if getattr(cfg, key):
            _need(getattr(cfg, key), key)
    out = Path(cfg.output_dir)
    write = lambda name, rows, cols: (out / f"{name}.csv").write_text(render_table(rows, cols, "csv"), encoding="utf-8")
    md = ["# Readability evaluation report", ""]

    md += ["## Provenance", "", f"- readeval version: {__version__}", f"- config sha256: `{cfg.digest()}`"]
    md += [f"- template `{t}` sha256: `{h}`" for t, h in template_hashes().items()]
    md += [f"- word list `{n}` sha256: `{h}`" for n, h in wordlist_hashes().items()]
    md += [f"- input {r['input']}: `{r['file']}` sha256 `{r['sha256']}`, modified {r['modified']}" for r in _input_provenance(cfg)]
    md.append("")

    have_human = bool(cfg.ratings) or (cfg.corpus and any(r.human_score is not None for r in load_corpus(cfg.corpus)))
    if have_human and (cfg.scores or cfg.judgments):
        human = human_scores(cfg)
        scorers = scorer_values(cfg)
        corr = correlation_rows(human, scorers)
        write("correlations", corr, ["scorer", "pearson", "kendall_tau", "n"])
        md += ["## Correlation with human judgments", "", "Scores oriented so that higher means more readable.", ""]
        md.append(render_table(corr, ["scorer", "pearson", "kendall_tau", "n"], "md"))
        sig = significance_rows(human, scorers, cfg.tail)
        write("significance", sig, ["scorer"] + list(scorers))
        md += [f"## Williams test p-values ({cfg.tail}-tailed)", "",
               "Row scorer vs column scorer; small values mean the row scorer correlates better with humans.", ""]
        md.append(render_table(sig, ["scorer"] + list(scorers), "md"))

    entries = [e for e in read_judgments(cfg.judgments) if e.ok] if cfg.judgments else []
    labels = {}
    if cfg.corpus:
        labels = {r.id: r.dataset for r in load_corpus(cfg.corpus)}
    elif cfg.scores:
        labels = read_scores(cfg.scores)["datasets"]
    if entries:
        grouped = {}
        for e in entries:
            grouped.setdefault(labels.get(e.id, ""), []).append(e.score)
        summaries = analyze_datasets(dict(sorted(grouped.items())), cfg.sample_variance)
        cols = ["dataset", "n", "mean", "median", "variance"]
        rows = [{c: getattr(s, c) for c in cols} for s in summaries]
        write("datasets", rows, cols)
        mode = "sample" if cfg.sample_variance else "population"
        md += ["## LM readability scores per dataset", "", f"Variance: {mode}.", ""]
        md.append(render_table(rows, cols, "md"))
        for s in summaries:
            hist = [{"bin": b, "count": s.histogram[b]} for b in half_step_bins()]
            write(f"histogram_{_slug(s.dataset)}", hist, ["bin", "count"])
        md += [f"Histogram data: `histogram_<dataset>.csv` ({len(summaries)} files).", ""]

    if cfg.means or (cfg.scores and cfg.judgments):
        lm, fkgl = dataset_means(cfg)
        md += ["## Dataset ranking", ""]
        if len(lm) < 2:
            md += ["Only one dataset is present, so the rank table is omitted.", ""]
        else:
            rows = rank_rows(lm, fkgl)
            cols = ["dataset", "lm_mean", "lm_rank", "fkgl_mean", "fkgl_rank", "delta_rank"]
            write("ranks", rows, cols)
            md += ["Rank 1 is most readable (highest LM mean, lowest FKGL mean). "
                   "delta_rank = lm_rank - fkgl_rank.", ""]
            md.append(render_table(rows, cols, "md"))

    if entries and cfg.scores:
        fkgl = read_scores(cfg.scores)["raw"].get("FKGL", {})
        judged = {e.id: e.score for e in entries if e.id in fkgl}
        if judged:
            try:
                kappa = f"{agreement_analysis({i: fkgl[i] for i in judged}, judged):.2f}"
            except ReadEvalError as e:
                kappa = f"undefined ({e})"
            md += ["## Binary agreement", "",
                   f"Cohen's kappa between FKGL (< 12 is high) and the LM judge (>= 3 is high) over {len(judged)} documents: {kappa}.", ""]

    if entries:
        k = cfg.keywords
        rationales = rationales_from_journal(entries, labels)
        for by in ("score", "dataset"):
            strata = stratify_keywords(rationales, by=by, top_k=k.top_k, max_ngram=k.max_ngram,
                                       dedup_threshold=k.dedup_threshold, window=k.window)
            rows = keyword_rows(strata)
            write(f"keywords_{by}", rows, ["stratum", "rank", "phrase", "score", "tf"])
            md += [f"## Keywords by {by}", ""]
            top = [{"stratum": s, "keywords": ", ".join(kw.phrase for kw in kws[:5])} for s, kws in strata.items()]
            md.append(render_table(top, ["stratum", "keywords"], "md"))

    (out / "report.md").write_text("\n".join(md).rstrip() + "\n", encoding="utf-8")
    return 0


def _slug(name: str) -> str:
    s = "".join(c if c.isalnum() or c in "-_" else "_" for c in name)
    return s or "unlabelled"


def cmd_mock_endpoint(cfg: RunConfig, args) -> int:
    from .mock_endpoint import MockEndpoint

    server = MockEndpoint(host=args.host, port=args.port)
    print(json.dumps({"base_url": server.base_url}), flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI file with [run], [endpoint], [keywords] sections")
    common.add_argument("--output", help="directory for output files (default: stdout)")
    common.add_argument("--format", choices=FORMATS, help="table format")

    p = _Parser(prog="readeval", description="Readability metrics and LM-judge evaluation.", parents=[common])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    def scorer_flags(sp):
        sp.add_argument("--metrics", help="comma-separated subset of " + ",".join(m.value for m in ALL_METRICS))
        sp.add_argument("--no-judge", action="store_true", help="leave the LM judge out")

    sp = add("score", cmd_score, "compute the 8 readability metrics per document")
    sp.add_argument("corpus")
    sp.add_argument("--metrics")
    sp.add_argument("--variant", choices=sorted(VARIANTS))

    sp = add("judge", cmd_judge, "rate documents with an LM endpoint, resumably")
    sp.add_argument("corpus")
    sp.add_argument("--journal", help="JSONL journal (default: <output>/judgments.jsonl)")
    sp.add_argument("--template", choices=sorted(TEMPLATES))
    sp.add_argument("--base-url")
    sp.add_argument("--model")
    sp.add_argument("--max-parallel", type=int)
    sp.add_argument("--retry-failed", action="store_true")

    for name, fn, text in (
        ("correlate", cmd_correlate, "Pearson and Kendall correlation with human scores"),
        ("significance", cmd_significance, "Williams test p-values between scorers"),
    ):
        sp = add(name, fn, text)
        sp.add_argument("--corpus")
        sp.add_argument("--ratings")
        sp.add_argument("--scores")
        sp.add_argument("--judgments")
        scorer_flags(sp)
        if name == "significance":
            sp.add_argument("--tail", choices=("one", "two"))

    sp = add("rank", cmd_rank, "rank datasets by LM judge and FKGL means")
    sp.add_argument("--means", help="CSV with dataset, lm, fkgl columns")
    sp.add_argument("--scores")
    sp.add_argument("--judgments")
    sp.add_argument("--corpus")

    sp = add("keywords", cmd_keywords, "keywords of judge rationales per stratum")
    sp.add_argument("judgments")
    sp.add_argument("--corpus", help="supplies dataset labels")
    sp.add_argument("--by", choices=("score", "dataset"), default="score")
    sp.add_argument("--top-k", type=int)

    sp = add("report", cmd_report, "write a markdown report with CSV tables")
    for flag in ("--corpus", "--ratings", "--scores", "--judgments", "--means"):
        sp.add_argument(flag)
    scorer_flags(sp)
    sp.add_argument("--tail", choices=("one", "two"))
    sp.add_argument("--sample-variance", action="store_true")

    sp = add("mock-endpoint", cmd_mock_endpoint, "serve the bundled mock chat endpoint")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8765)
    return p


def config_from_args(args) -> RunConfig:
    cfg = load_run_config(args.config) if args.config else RunConfig()
    over = {}
    for key in ("corpus", "scores", "judgments", "ratings", "means", "variant", "tail", "template"):
        v = getattr(args, key, None)
        if v is not None:
            over[key] = v
    if args.output is not None:
        over["output_dir"] = args.output
    if args.format is not None:
        over["fmt"] = args.format
    if getattr(args, "metrics", None):
        over["metrics"] = tuple(m.strip().upper() for m in args.metrics.split(",") if m.strip())
    if getattr(args, "no_judge", False):
        over["judge"] = False
    if getattr(args, "sample_variance", False):
        over["sample_variance"] = True
    endpoint = cfg.endpoint
    for flag, key in (("base_url", "base_url"), ("model", "model_id"), ("max_parallel", "max_parallel")):
        v = getattr(args, flag, None)
        if v is not None:
            endpoint = replace(endpoint, **{key: v})
    keywords = cfg.keywords
    if getattr(args, "top_k", None) is not None:
        keywords = replace(keywords, top_k=args.top_k)
    return replace(cfg, **over, endpoint=endpoint, keywords=keywords).validate()


def _fail(exc: Exception, code: int) -> int:
    payload = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    line = getattr(exc, "line", None)
    if line is not None:
        payload["line"] = line
    print(json.dumps(payload), file=sys.stderr)
    return code


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        cfg = config_from_args(args)
        return args.func(cfg, args)
    except ReadEvalError as e:
        code = e.exit_code
        if isinstance(e, JudgeConfigError):
            code = 1
        return _fail(e, code)
    except FileNotFoundError as e:
        return _fail(MissingInput(str(e)), 2)
    except (ValueError, OSError) as e:
        return _fail(e, 2)


if __name__ == "__main__":
    sys.exit(main())
