"""Command-line pipeline: build-dataset, train, predict, eval, and the
entity/chunk baselines. Every paper-ambiguous knob (connector set, merge
mode, bin mode, smoothing) is a config key so ablations need no code
changes; command-line flags override the config file.
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import annotation, candidates, evaluation, features, model as nb
from .corpus import SquadCorpus, dev_passages, load_squad

logger = logging.getLogger(__name__)

__all__ = ["RunConfig", "main"]

BASELINES = ("NER", "NCH", "NER_NCH")


class CliError(ValueError):
    pass


@dataclass
class RunConfig:
    squad: str | None = None
    annotations: str | None = None
    embeddings: str | None = None
    dataset: str | None = None
    model: str | None = None
    answers: str | None = None
    out: str | None = None
    top_n: int = 10
    alpha: float = 1.0
    connectors: str = "and of or ,"
    merge_mode: str = "subruns"  # subruns | maximal
    bin_mode: str = "quantile"  # quantile | width
    title_sim_mode: str = "pairwise"  # pairwise | centroid
    skip_bad_answers: bool = False
    baseline: str | None = None

    def connector_set(self) -> frozenset[str]:
        return frozenset(self.connectors.split())

    def validate(self, required_inputs: tuple[str, ...], required_outputs: tuple[str, ...]):
        """Check all paths a command will touch before any work starts."""
        if self.top_n < 1:
            raise CliError("top-n must be >= 1")
        if self.merge_mode not in ("subruns", "maximal"):
            raise CliError(f"unknown merge mode {self.merge_mode!r}")
        if self.bin_mode not in ("quantile", "width"):
            raise CliError(f"unknown bin mode {self.bin_mode!r}")
        if self.title_sim_mode not in ("pairwise", "centroid"):
            raise CliError(f"unknown title similarity mode {self.title_sim_mode!r}")
        for name in required_inputs:
            value = getattr(self, name)
            if not value:
                raise CliError(f"missing required input path: --{name.replace('_', '-')}")
            if not Path(value).is_file():
                raise CliError(f"{name} file not found: {value}")
        for name in required_outputs:
            if not getattr(self, name):
                raise CliError(f"missing required output path: --{name.replace('_', '-')}")


def load_config_file(path: str) -> dict:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise CliError(f"config file not found: {path}")
    if not parser.has_section("answergen"):
        raise CliError(f"{path}: missing [answergen] section")
    return dict(parser.items("answergen"))


def build_run_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    valid = {f.name: f.type for f in fields(RunConfig)}
    if getattr(args, "config", None):
        for key, value in load_config_file(args.config).items():
            key = key.replace("-", "_")
            if key not in valid:
                raise CliError(f"unknown config key {key!r}")
            current = getattr(cfg, key)
            if isinstance(current, bool):
                value = value.lower() in ("1", "true", "yes", "on")
            elif isinstance(current, int):
                value = int(value)
            elif isinstance(current, float):
                value = float(value)
            setattr(cfg, key, value)
    for key in valid:
        arg_value = getattr(args, key, None)
        if arg_value is not None and arg_value is not False:
            setattr(cfg, key, arg_value)
    return cfg


# --- pipeline helpers -------------------------------------------------------


def _load_inputs(cfg: RunConfig):
    corpus = load_squad(cfg.squad, skip_bad_answers=cfg.skip_bad_answers)
    annotations = annotation.load_annotations(cfg.annotations, corpus)
    return corpus, annotations


def _universe(cfg: RunConfig, ann: annotation.AnnotatedPassage) -> list[candidates.Candidate]:
    return candidates.candidate_universe(
        ann,
        connectors=cfg.connector_set(),
        subruns=(cfg.merge_mode == "subruns"),
    )


def _candidate_to_row(cand: candidates.Candidate) -> dict:
    return {
        "paragraph_id": cand.paragraph_id,
        "first_tok": cand.first_tok,
        "last_tok": cand.last_tok,
        "char_start": cand.char_start,
        "char_end": cand.char_end,
        "text": cand.text,
        "source": cand.source,
        "label": cand.label,
    }


def _row_to_candidate(row: dict) -> candidates.Candidate:
    return candidates.Candidate(
        paragraph_id=row["paragraph_id"],
        first_tok=row["first_tok"],
        last_tok=row["last_tok"],
        char_start=row["char_start"],
        char_end=row["char_end"],
        text=row["text"],
        source=row["source"],
        label=row["label"],
    )


def _write_jsonl(path: str, rows) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")


def _read_jsonl(path: str):
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if line:
                try:
                    yield json.loads(line)
                except json.JSONDecodeError as exc:
                    raise CliError(f"{path}:{lineno}: malformed JSON line") from exc


def _featurize_dataset(cfg: RunConfig, corpus, annotations, rows):
    """Raw features for every dataset row, in row order."""
    emb = annotation.load_embeddings(cfg.embeddings)
    contexts = features.build_contexts(corpus, annotations, emb, cfg.title_sim_mode)
    raws = []
    for cand in rows:
        ctx = contexts.get(cand.paragraph_id)
        if ctx is None:
            raise CliError(
                f"dataset row for {cand.paragraph_id!r} has no annotated paragraph"
            )
        raws.append(features.raw_features(cand, ctx))
    return raws, contexts


def _gold_by_representative(corpus: SquadCorpus) -> tuple[dict[str, evaluation.PassageGold], dict[str, str]]:
    """Gold answers grouped over passages with identical context.

    Returns (gold by representative paragraph_id, paragraph_id -> representative).
    """
    representative: dict[str, str] = {}
    by_context: dict[str, str] = {}
    answers: dict[str, list[str]] = {}
    for p in corpus.paragraphs():
        rep = by_context.setdefault(p.context, p.paragraph_id)
        representative[p.paragraph_id] = rep
        bucket = answers.setdefault(rep, [])
        for qa in p.qas:
            bucket.extend(a.text for a in qa.answers)
    gold = {
        rep: evaluation.PassageGold(paragraph_id=rep, gold_answers=tuple(texts))
        for rep, texts in answers.items()
        if texts
    }
    return gold, representative


# --- commands ---------------------------------------------------------------


def cmd_build_dataset(cfg: RunConfig) -> int:
    cfg.validate(("squad", "annotations"), ("out",))
    corpus, annotations = _load_inputs(cfg)
    paragraph_map = corpus.paragraph_map()
    rows: list[candidates.Candidate] = []
    n_annotated = 0
    for para in corpus.paragraphs():
        ann = annotations.get(para.paragraph_id)
        if ann is None:
            continue
        n_annotated += 1
        pool = _universe(cfg, ann)
        rows.extend(candidates.label_candidates(para, ann, pool))
    if not rows:
        raise CliError("no candidates produced; is the annotation file empty?")
    dataset = candidates.CandidateDataset(rows=rows)
    _write_jsonl(cfg.out, (_candidate_to_row(c) for c in rows))
    stats = dataset.stats()
    n_total = sum(1 for _ in corpus.paragraphs())
    print(f"dataset: {cfg.out}")
    print(f"paragraphs: {n_annotated} annotated of {n_total} ({n_total - n_annotated} excluded)")
    print(f"rows: {len(rows)} total")
    for key in sorted(stats):
        print(f"  {key}: {stats[key]}")
    print(f"one-word positives: {dataset.one_word_positive_fraction():.1%}")
    return 0


def cmd_train(cfg: RunConfig) -> int:
    cfg.validate(("squad", "annotations", "embeddings", "dataset"), ("model",))
    corpus, annotations = _load_inputs(cfg)
    rows = [_row_to_candidate(r) for r in _read_jsonl(cfg.dataset)]
    if not rows:
        raise CliError(f"dataset {cfg.dataset} is empty")
    raws, _ = _featurize_dataset(cfg, corpus, annotations, rows)
    space = features.fit_feature_space(raws, bin_mode=cfg.bin_mode)
    vectors = [features.binarize(raw, space) for raw in raws]
    labeled = [(vec, cand.label) for vec, cand in zip(vectors, rows)]
    trained = nb.train(labeled, space, alpha=cfg.alpha)
    nb.save_model(trained, cfg.model)
    print(f"model: {cfg.model}")
    print(f"features: {len(space)} binary ids, alpha={cfg.alpha}, bins={cfg.bin_mode}")
    return 0


def _ranked_answer_row(answer: nb.RankedAnswer) -> dict:
    return {
        "rank": answer.rank,
        "text": answer.candidate.text,
        "char_start": answer.candidate.char_start,
        "char_end": answer.candidate.char_end,
        "confidence": answer.confidence,
        "source": answer.candidate.source,
    }


def cmd_predict(cfg: RunConfig) -> int:
    cfg.validate(("squad", "annotations", "embeddings", "model"), ("out",))
    corpus, annotations = _load_inputs(cfg)
    trained = nb.load_model(cfg.model)
    emb = annotation.load_embeddings(cfg.embeddings)
    contexts = features.build_contexts(corpus, annotations, emb, cfg.title_sim_mode)
    passages = dev_passages(corpus)
    lines = []
    n_skipped = 0
    for para in passages:
        ann = annotations.get(para.paragraph_id)
        if ann is None:
            n_skipped += 1
            continue
        ctx = contexts[para.paragraph_id]
        pool = _universe(cfg, ann)
        scored = [
            (cand, features.binarize(features.raw_features(cand, ctx), trained.space))
            for cand in pool
        ]
        ranked = nb.rank_candidates(trained, scored, cfg.top_n)
        lines.append(
            {
                "paragraph_id": para.paragraph_id,
                "answers": [_ranked_answer_row(a) for a in ranked],
            }
        )
    _write_jsonl(cfg.out, lines)
    print(f"answers: {cfg.out}")
    print(f"passages: {len(lines)} predicted, {n_skipped} skipped (no annotation)")
    return 0


def _composition_counts(
    answers: list[dict], ann: annotation.AnnotatedPassage | None
) -> tuple[int, int]:
    if ann is None:
        return 0, 0
    entity_spans = {ann.span_char_range(s) for s in ann.entities}
    chunk_spans = {ann.span_char_range(s) for s in ann.noun_chunks}
    top10 = answers[:10]
    n_ent = sum(1 for a in top10 if (a["char_start"], a["char_end"]) in entity_spans)
    n_chunk = sum(1 for a in top10 if (a["char_start"], a["char_end"]) in chunk_spans)
    return n_ent, n_chunk


def _evaluate_answer_lines(
    cfg: RunConfig,
    corpus: SquadCorpus,
    answer_lines: list[dict],
    annotations: dict[str, annotation.AnnotatedPassage] | None,
    notes: list[str] | None = None,
) -> evaluation.EvalReport:
    gold_map, representative = _gold_by_representative(corpus)
    results = []
    seen = set()
    for line in answer_lines:
        pid = line.get("paragraph_id")
        if pid not in representative:
            raise CliError(f"answers file references unknown paragraph_id {pid!r}")
        rep = representative[pid]
        gold = gold_map.get(rep)
        if gold is None:
            logger.warning("passage %s has no gold answers; skipped", pid)
            continue
        seen.add(rep)
        texts = [a["text"] for a in line["answers"]]
        pred_scores = [evaluation.best_against_gold(t, gold) for t in texts]
        ann = annotations.get(pid) if annotations else None
        n_ent, n_chunk = _composition_counts(line["answers"], ann)
        results.append(
            evaluation.PassageResult(
                paragraph_id=pid,
                pred_scores=pred_scores,
                n_entities_top10=n_ent,
                n_chunks_top10=n_chunk,
            )
        )
    if not results:
        raise CliError("answers file contains no evaluable passages")
    n_skipped = len(gold_map) - len(seen)
    return evaluation.aggregate(
        results,
        top_n=cfg.top_n,
        n_skipped=n_skipped,
        with_full=True,
        with_composition=annotations is not None,
        notes=notes,
    )


def _write_report(report: evaluation.EvalReport, out: str) -> None:
    out_path = Path(out)
    out_path.write_text(
        json.dumps(report.to_dict(), indent=1, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    table = report.to_table()
    txt_path = (
        out_path.with_suffix(".txt") if out_path.suffix == ".json" else Path(str(out_path) + ".txt")
    )
    txt_path.write_text(table + "\n", encoding="utf-8")
    print(table)
    print(f"report: {out_path} and {txt_path}")


def cmd_eval(cfg: RunConfig) -> int:
    cfg.validate(("squad", "answers"), ("out",))
    corpus = load_squad(cfg.squad, skip_bad_answers=cfg.skip_bad_answers)
    annotations = (
        annotation.load_annotations(cfg.annotations, corpus) if cfg.annotations else None
    )
    answer_lines = list(_read_jsonl(cfg.answers))
    report = _evaluate_answer_lines(cfg, corpus, answer_lines, annotations)
    _write_report(report, cfg.out)
    return 0


def _baseline_pool(
    cfg: RunConfig, kind: str, ann: annotation.AnnotatedPassage
) -> list[candidates.Candidate]:
    if kind == "NER":
        return candidates.extract_entities(ann)
    if kind == "NCH":
        return candidates.extract_chunks(ann)
    if kind == "NER_NCH":
        return candidates.dedup(
            candidates.extract_entities(ann) + candidates.extract_chunks(ann)
        )
    raise CliError(f"unknown baseline {kind!r} (choose from {', '.join(BASELINES)})")


def cmd_baseline(cfg: RunConfig) -> int:
    cfg.validate(("squad", "annotations"), ("out",))
    if not cfg.baseline:
        raise CliError("baseline command needs --baseline NER|NCH|NER_NCH")
    kind = cfg.baseline.upper()
    corpus, annotations = _load_inputs(cfg)
    passages = dev_passages(corpus)
    lines = []
    n_skipped = 0
    for para in passages:
        ann = annotations.get(para.paragraph_id)
        if ann is None:
            n_skipped += 1
            continue
        pool = _baseline_pool(cfg, kind, ann)  # document order
        lines.append(
            {
                "paragraph_id": para.paragraph_id,
                "answers": [
                    {
                        "rank": i + 1,
                        "text": c.text,
                        "char_start": c.char_start,
                        "char_end": c.char_end,
                        "confidence": None,
                        "source": c.source,
                    }
                    for i, c in enumerate(pool)
                ],
            }
        )
    _write_jsonl(cfg.out, lines)
    avg = sum(len(line["answers"]) for line in lines) / max(1, len(lines))
    print(f"baseline {kind}: {cfg.out}")
    print(f"passages: {len(lines)} ({n_skipped} skipped); avg candidates/passage: {avg:.2f}")
    report = _evaluate_answer_lines(
        cfg,
        corpus,
        lines,
        annotations,
        notes=[
            "baseline candidates are in document order; rows truncated at n depend "
            "on that order, the full-list row does not"
        ],
    )
    report_out = str(Path(cfg.out).with_suffix("")) + ".report.json"
    _write_report(report, report_out)
    return 0


# --- argument parsing -------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="INI config file with an [answergen] section")
    parser.add_argument("--squad", help="SQuAD v1.1 JSON file")
    parser.add_argument("--annotations", help="annotation JSON-Lines file")
    parser.add_argument("--embeddings", help="word2vec-style text embeddings")
    parser.add_argument("--model", help="model JSON file")
    parser.add_argument("--dataset", help="candidate dataset JSON-Lines file")
    parser.add_argument("--answers", help="ranked answers JSON-Lines file")
    parser.add_argument("--out", help="output path")
    parser.add_argument("--top-n", dest="top_n", type=int, help="answers per passage (default 10)")
    parser.add_argument("--alpha", type=float, help="NB smoothing constant (default 1.0)")
    parser.add_argument("--connectors", help="whitespace-separated connector tokens")
    parser.add_argument("--merge-mode", dest="merge_mode", choices=("subruns", "maximal"))
    parser.add_argument("--bin-mode", dest="bin_mode", choices=("quantile", "width"))
    parser.add_argument(
        "--title-sim-mode", dest="title_sim_mode", choices=("pairwise", "centroid")
    )
    parser.add_argument(
        "--skip-bad-answers",
        dest="skip_bad_answers",
        action="store_true",
        default=None,
        help="warn and drop answers that cannot be located instead of failing",
    )
    parser.add_argument("--baseline", choices=BASELINES, help="baseline candidate source")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="answergen",
        description="Generate and evaluate ranked answer candidates for question authoring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "build-dataset": cmd_build_dataset,
        "train": cmd_train,
        "predict": cmd_predict,
        "eval": cmd_eval,
        "baseline": cmd_baseline,
    }
    for name, func in specs.items():
        p = sub.add_parser(name)
        _add_common(p)
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = make_parser().parse_args(argv)
    try:
        cfg = build_run_config(args)
        return args.func(cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
