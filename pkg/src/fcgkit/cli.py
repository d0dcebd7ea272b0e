"""Command-line pipeline driver.

Subcommands cover the whole pipeline: corpus validation, pair
preprocessing, span-driven clipping, augmentation (live endpoint, stub,
or offline export/import), lexicon building, bracket repair, training
stage emission, and evaluation reports.  Every command writes its
outputs under --out-dir, including a run_meta.json describing the run,
and the report commands render a PNG figure next to the delimited
output.

Exit codes: 0 success, 1 configuration or data validation failure,
2 I/O or generation-endpoint failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, figures, trainprep
from .augment import (
    AugmentOutcome,
    augment_from_continuations,
    augment_with_generator,
    derive_seed,
    plan_clips,
    select_for_augmentation,
)
from .config import ConfigError, RunConfig, load_config, require_paths, write_run_meta
from .corpus import (
    CorpusFormatError,
    Sample,
    SpanError,
    resolve_span,
    scan_corpus,
    tokenize,
    write_corpus,
    write_line,
)
from .evaluation import (
    NO_COMMENT,
    VALID_LABELS,
    corpus_bleu,
    paired_span_report,
    prf_scores,
    validate_label_consistency,
)
from .genclient import (
    GenerationClient,
    GenerationError,
    GenerationRequest,
    StubGenerator,
    export_prompts,
    import_continuations,
)
from .preprocess import make_pair
from .repair import TermLexicon, build_lexicon, repair_comment
from .syntax import ConlluFormatError, parse_conllu
from .trainprep import ManifestError


def _sample_id(line_no: int) -> str:
    return f"line-{line_no:05d}"


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _read_text_lines(path: Path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [line.rstrip("\n").rstrip("\r") for line in fh]


def _load_clean_corpus(path: Path) -> list[tuple[str, Sample]]:
    """Parse a corpus that must have no malformed lines.

    Augmentation and staging need line positions to match the parse
    file, so a dirty corpus is a configuration error here; run the
    validate command to locate the bad lines.
    """
    samples, rejects = scan_corpus(path)
    if rejects:
        first = rejects[0]
        raise ConfigError(
            f"{path}: {len(rejects)} malformed line(s); first is line "
            f"{first.line_no} ({first.reason}); run the validate command"
        )
    return [(_sample_id(line_no), sample) for line_no, sample in samples]


def _plan_augmentation(cfg: RunConfig, corpus_path: Path, parses_path: Path):
    """Shared front half of the augment commands.

    Returns (selection, planned, plan_skips, n_samples).
    """
    samples = _load_clean_corpus(corpus_path)
    graphs = parse_conllu(parses_path)
    by_id = dict(samples)
    missing_comment = [sid for sid, s in samples if s.comment is None]
    if missing_comment:
        raise ConfigError(
            f"{corpus_path}: {len(missing_comment)} line(s) lack a comment; "
            "augmentation needs the annotated corpus"
        )
    selection = select_for_augmentation(by_id, cfg.group_skip_threshold)
    planned, plan_skips = plan_clips(samples, graphs, selection.augment_ids)
    return selection, planned, plan_skips, len(samples)


def _selection_payload(selection) -> dict:
    return {
        "augment_ids": list(selection.augment_ids),
        "skip_ids": list(selection.skip_ids),
        "group_size_histogram": {str(k): v for k, v in sorted(selection.histogram.items())},
    }


def _finish_augment(
    out: Path, outcome: AugmentOutcome, plan_skips, selection, n_samples: int
) -> None:
    write_corpus([a.sample for a in outcome.augmented], out / "augmented.tsv")
    with open(out / "augmented_meta.jsonl", "w", encoding="utf-8") as fh:
        for item in outcome.augmented:
            fh.write(
                json.dumps(
                    {"base_id": item.base_id, "continuation": item.continuation},
                    ensure_ascii=False,
                )
                + "\n"
            )
    report = {
        "corpus_lines": n_samples,
        "selected_for_augmentation": len(selection.augment_ids),
        "skipped_large_groups": len(selection.skip_ids),
        "plan_skips": [{"id": s.sample_id, "reason": s.reason} for s in plan_skips],
        "augmented_count": outcome.count,
        "underfilled": dict(sorted(outcome.underfilled.items())),
    }
    _write_json(out / "augment_report.json", report)
    print(f"wrote {outcome.count} augmented samples to {out / 'augmented.tsv'}")
    if outcome.underfilled:
        print(f"{len(outcome.underfilled)} sample(s) underfilled; see augment_report.json")


# ---------------------------------------------------------------- commands


def cmd_validate(args, cfg: RunConfig, out: Path) -> int:
    paths = require_paths(cfg, "train_corpus")
    corpus_path = paths["train_corpus"]
    write_run_meta(out, "validate", cfg, {"corpus": corpus_path})
    samples, rejects = scan_corpus(corpus_path)
    span_rejects = []
    resolved = 0
    with_comments = 0
    for line_no, sample in samples:
        if sample.comment is not None:
            with_comments += 1
        try:
            resolve_span(sample.text, sample.raw_span)
            resolved += 1
        except SpanError as exc:
            span_rejects.append((line_no, f"span: {exc}"))
    all_rejects = [(r.line_no, r.reason) for r in rejects] + span_rejects
    all_rejects.sort()
    with open(out / "rejects.tsv", "w", encoding="utf-8") as fh:
        for line_no, reason in all_rejects:
            fh.write(f"{line_no}\t{reason}\n")
    report = {
        "lines": len(samples) + len(rejects),
        "parsed": len(samples),
        "span_resolved": resolved,
        "with_comments": with_comments,
        "rejects": len(all_rejects),
    }
    _write_json(out / "validation_report.json", report)
    print(
        f"{report['lines']} lines: {report['parsed']} parsed, "
        f"{report['span_resolved']} spans resolved, {report['rejects']} rejected"
    )
    return 1 if all_rejects else 0


def cmd_preprocess(args, cfg: RunConfig, out: Path) -> int:
    paths = require_paths(cfg, "train_corpus")
    corpus_path = paths["train_corpus"]
    write_run_meta(out, "preprocess", cfg, {"corpus": corpus_path})
    samples, rejects = scan_corpus(corpus_path)
    skipped = [{"line": r.line_no, "reason": r.reason} for r in rejects]
    count = 0
    with open(out / "pairs.jsonl", "w", encoding="utf-8") as fh:
        for line_no, sample in samples:
            if sample.comment is None:
                skipped.append({"line": line_no, "reason": "no comment"})
                continue
            try:
                resolved = resolve_span(sample.text, sample.raw_span)
            except SpanError as exc:
                skipped.append({"line": line_no, "reason": f"span: {exc}"})
                continue
            pair = make_pair(sample, resolved)
            fh.write(json.dumps(pair, sort_keys=True, ensure_ascii=False) + "\n")
            count += 1
    _write_json(out / "preprocess_report.json", {"pairs": count, "skipped": skipped})
    print(f"wrote {count} pairs, skipped {len(skipped)}")
    return 0


def cmd_clip(args, cfg: RunConfig, out: Path) -> int:
    paths = require_paths(cfg, "train_corpus", "train_parses")
    write_run_meta(out, "clip", cfg, {"corpus": paths["train_corpus"], "parses": paths["train_parses"]})
    samples = _load_clean_corpus(paths["train_corpus"])
    graphs = parse_conllu(paths["train_parses"])
    planned, skips = plan_clips(samples, graphs, [sid for sid, _ in samples])
    reasons: dict[str, int] = {}
    with open(out / "clips.tsv", "w", encoding="utf-8") as fh:
        for item in planned:
            r = item.clip_result
            reasons[r.reason] = reasons.get(r.reason, 0) + 1
            fh.write(f"{item.sample_id}\t{r.cut_index}\t{r.reason}\t{r.prefix}\n")
    _write_json(
        out / "clip_report.json",
        {
            "clipped": len(planned),
            "reasons": reasons,
            "skipped": [{"id": s.sample_id, "reason": s.reason} for s in skips],
        },
    )
    figures.clip_reasons(reasons, out)
    print(f"clipped {len(planned)} sentences ({len(skips)} skipped)")
    return 0


def cmd_augment_plan(args, cfg: RunConfig, out: Path) -> int:
    paths = require_paths(cfg, "train_corpus", "train_parses")
    write_run_meta(
        out, "augment-plan", cfg, {"corpus": paths["train_corpus"], "parses": paths["train_parses"]}
    )
    selection, planned, plan_skips, n_samples = _plan_augmentation(
        cfg, paths["train_corpus"], paths["train_parses"]
    )
    plans = [
        (
            item.sample_id,
            GenerationRequest(
                prompt=item.clip_result.prefix,
                n=cfg.per_sample_max,
                max_new_tokens=cfg.max_new_tokens,
                temperature=cfg.temperature,
                seed=derive_seed(cfg.seed, item.sample_id, 0),
            ),
        )
        for item in planned
    ]
    n_prompts = export_prompts(plans, out / "prompts.jsonl")
    payload = _selection_payload(selection)
    payload["plan_skips"] = [{"id": s.sample_id, "reason": s.reason} for s in plan_skips]
    payload["prompts"] = n_prompts
    _write_json(out / "selection.json", payload)
    figures.group_size_histogram(selection.histogram, out)
    print(
        f"{n_samples} samples: {len(selection.augment_ids)} to augment, "
        f"{len(selection.skip_ids)} in large groups; exported {n_prompts} prompts"
    )
    return 0


def _make_generator(cfg: RunConfig, out: Path):
    if cfg.use_stub:
        return StubGenerator(accepted_per_prompt=cfg.stub_accepted)
    if not cfg.endpoint:
        raise ConfigError("augment-run needs --endpoint or --stub-generator")
    return GenerationClient(
        cfg.endpoint,
        timeout=cfg.timeout,
        max_in_flight=cfg.max_in_flight,
        retries=cfg.retries,
        wire_log=out / "wire_log.jsonl",
    )


def cmd_augment_run(args, cfg: RunConfig, out: Path) -> int:
    paths = require_paths(cfg, "train_corpus", "train_parses")
    write_run_meta(
        out, "augment-run", cfg, {"corpus": paths["train_corpus"], "parses": paths["train_parses"]}
    )
    selection, planned, plan_skips, n_samples = _plan_augmentation(
        cfg, paths["train_corpus"], paths["train_parses"]
    )
    generator = _make_generator(cfg, out)
    outcome = augment_with_generator(planned, generator, cfg.augment_config())
    _finish_augment(out, outcome, plan_skips, selection, n_samples)
    return 0


def cmd_augment_import(args, cfg: RunConfig, out: Path) -> int:
    paths = require_paths(cfg, "train_corpus", "train_parses")
    continuations_path = Path(args.continuations)
    if not continuations_path.is_file():
        raise ConfigError(f"continuations file does not exist: {continuations_path}")
    write_run_meta(
        out,
        "augment-import",
        cfg,
        {
            "corpus": paths["train_corpus"],
            "parses": paths["train_parses"],
            "continuations": continuations_path,
        },
    )
    selection, planned, plan_skips, n_samples = _plan_augmentation(
        cfg, paths["train_corpus"], paths["train_parses"]
    )
    expected = [item.sample_id for item in planned]
    try:
        found, missing = import_continuations(continuations_path, expected)
    except ValueError as exc:
        raise ConfigError(f"{continuations_path}: {exc}")
    if missing:
        print(f"warning: {len(missing)} planned id(s) absent from import", file=sys.stderr)
    outcome = augment_from_continuations(planned, found, cfg.augment_config())
    _finish_augment(out, outcome, plan_skips, selection, n_samples)
    report = json.loads((out / "augment_report.json").read_text())
    report["missing_ids"] = missing
    _write_json(out / "augment_report.json", report)
    return 0


def cmd_build_lexicon(args, cfg: RunConfig, out: Path) -> int:
    paths = require_paths(cfg, "train_corpus")
    write_run_meta(out, "build-lexicon", cfg, {"corpus": paths["train_corpus"]})
    samples, rejects = scan_corpus(paths["train_corpus"])
    comments = [s.comment for _, s in samples if s.comment is not None]
    if not comments:
        raise ConfigError("corpus has no comments to harvest terms from")
    lexicon = build_lexicon(comments)
    lexicon.save(out / "lexicon.txt")
    _write_json(
        out / "lexicon_report.json",
        {"comments": len(comments), "terms": len(lexicon), "max_tokens": lexicon.max_tokens},
    )
    print(f"{len(lexicon)} terms (longest {lexicon.max_tokens} tokens) from {len(comments)} comments")
    return 0


def cmd_repair(args, cfg: RunConfig, out: Path) -> int:
    paths = require_paths(cfg, "lexicon")
    predictions_path = Path(args.predictions)
    if not predictions_path.is_file():
        raise ConfigError(f"predictions file does not exist: {predictions_path}")
    write_run_meta(
        out, "repair", cfg, {"lexicon": paths["lexicon"], "predictions": predictions_path}
    )
    lexicon = TermLexicon.load(paths["lexicon"])
    samples = _load_clean_corpus(predictions_path)
    repaired_count = 0
    unresolved_count = 0
    untouched = 0
    details = []
    with open(out / "repaired.tsv", "w", encoding="utf-8") as fh:
        for sample_id, sample in samples:
            if sample.comment is None:
                raise ConfigError(f"{sample_id}: prediction line has no comment field")
            learner_tokens = [t.text.lower() for t in tokenize(sample.text)]
            outcome = repair_comment(
                sample.comment, learner_tokens, lexicon, citation_window=cfg.citation_window
            )
            if outcome.changed:
                repaired_count += 1
            elif not outcome.unresolved:
                untouched += 1
            if outcome.unresolved:
                unresolved_count += 1
            details.append(
                {
                    "id": sample_id,
                    "fixes": [
                        {"position": f.position, "kind": f.kind, "inserted": f.inserted}
                        for f in outcome.fixes
                    ],
                    "unresolved": [
                        {"position": u.position, "kind": u.kind} for u in outcome.unresolved
                    ],
                }
            )
            fh.write(
                write_line(Sample(sample.text, sample.raw_span, outcome.text)) + "\n"
            )
    _write_json(
        out / "repair_report.json",
        {
            "comments": len(samples),
            "repaired": repaired_count,
            "unresolved": unresolved_count,
            "untouched": untouched,
            "details": [d for d in details if d["fixes"] or d["unresolved"]],
        },
    )
    figures.repair_outcomes(repaired_count, unresolved_count, untouched, out)
    print(
        f"{len(samples)} comments: {repaired_count} repaired, "
        f"{unresolved_count} with unresolved brackets, {untouched} untouched"
    )
    return 0


def cmd_emit_train(args, cfg: RunConfig, out: Path) -> int:
    paths = require_paths(cfg, "train_corpus")
    augmented_path = Path(args.augmented)
    if not augmented_path.is_file():
        raise ConfigError(f"augmented corpus does not exist: {augmented_path}")
    if cfg.epochs is None or cfg.eval_every_steps is None:
        raise ConfigError("emit-train requires --epochs and --eval-every")
    inputs = {"corpus": paths["train_corpus"], "augmented": augmented_path}
    eval_data_file = None
    dev_samples = None
    if cfg.dev_corpus is not None:
        dev_path = require_paths(cfg, "dev_corpus")["dev_corpus"]
        inputs["dev_corpus"] = dev_path
        dev_samples = [s for _, s in _load_clean_corpus(dev_path)]
        eval_data_file = "dev_pairs.jsonl"
    write_run_meta(out, "emit-train", cfg, inputs)
    initial = [s for _, s in _load_clean_corpus(paths["train_corpus"])]
    augmented = [s for _, s in _load_clean_corpus(augmented_path)]
    if dev_samples is not None:
        trainprep.write_pairs(trainprep.make_pairs(dev_samples), out / eval_data_file)
    written = trainprep.emit_stages(
        out,
        initial,
        augmented,
        epochs=cfg.epochs,
        eval_every_steps=cfg.eval_every_steps,
        shuffle_seed=cfg.shuffle_seed,
        model_id=cfg.model_id,
        eval_data_file=eval_data_file,
    )
    for stage in written:
        print(f"stage {stage.stage}: {stage.pair_count} pairs -> {stage.data_file.name}")
    return 0


def cmd_eval_bleu(args, cfg: RunConfig, out: Path) -> int:
    refs_path = Path(args.references)
    hyps_path = Path(args.hypotheses)
    for p in (refs_path, hyps_path):
        if not p.is_file():
            raise ConfigError(f"input does not exist: {p}")
    write_run_meta(out, "eval-bleu", cfg, {"references": refs_path, "hypotheses": hyps_path})
    refs = _read_text_lines(refs_path)
    hyps = _read_text_lines(hyps_path)
    if len(refs) != len(hyps):
        raise ConfigError(f"line count mismatch: {len(hyps)} hypotheses vs {len(refs)} references")
    kept_h, kept_r = [], []
    dropped = 0
    for h, r in zip(hyps, refs):
        # Withheld outputs are scored by the P/R/F1 track, not BLEU.
        if h == NO_COMMENT or r == NO_COMMENT:
            dropped += 1
            continue
        kept_h.append(h)
        kept_r.append(r)
    if not kept_h:
        raise ConfigError("no scorable pairs after dropping withheld outputs")
    result = corpus_bleu(kept_h, kept_r)
    payload = result.to_dict()
    payload["pairs_scored"] = len(kept_h)
    payload["pairs_dropped_no_comment"] = dropped
    _write_json(out / "bleu.json", payload)
    figures.bleu_panel(payload, out)
    print(f"BLEU {result.score:.4f} over {len(kept_h)} pairs ({dropped} dropped)")
    return 0


def cmd_eval_prf(args, cfg: RunConfig, out: Path) -> int:
    labels_path = Path(args.labels)
    if not labels_path.is_file():
        raise ConfigError(f"labels file does not exist: {labels_path}")
    inputs = {"labels": labels_path}
    outputs_path = Path(args.outputs) if args.outputs else None
    if outputs_path is not None:
        if not outputs_path.is_file():
            raise ConfigError(f"outputs file does not exist: {outputs_path}")
        inputs["outputs"] = outputs_path
    write_run_meta(out, "eval-prf", cfg, inputs)
    labels = _read_text_lines(labels_path)
    bad = sorted({l for l in labels if l not in VALID_LABELS})
    if bad:
        raise ConfigError(f"unknown labels: {', '.join(bad)}; expected one of {sorted(VALID_LABELS)}")
    violations: list[str] = []
    if outputs_path is not None:
        outputs = _read_text_lines(outputs_path)
        if len(outputs) != len(labels):
            raise ConfigError(f"line count mismatch: {len(labels)} labels vs {len(outputs)} outputs")
        labels_by_id = {_sample_id(i): label for i, label in enumerate(labels, 1)}
        outputs_by_id = {_sample_id(i): output for i, output in enumerate(outputs, 1)}
        violations = validate_label_consistency(labels_by_id, outputs_by_id)
    result = prf_scores(labels)
    payload = result.to_dict()
    payload["label_violations"] = violations
    _write_json(out / "prf.json", payload)
    figures.prf_bars(payload, out)
    print(
        f"precision {result.precision:.4f}  recall {result.recall:.4f}  f1 {result.f1:.4f}"
    )
    if violations:
        for message in violations:
            print(f"label violation: {message}", file=sys.stderr)
        return 1
    return 0


def cmd_report_pairs(args, cfg: RunConfig, out: Path) -> int:
    predictions_path = Path(args.predictions)
    if not predictions_path.is_file():
        raise ConfigError(f"predictions file does not exist: {predictions_path}")
    write_run_meta(out, "report-pairs", cfg, {"predictions": predictions_path})
    samples = _load_clean_corpus(predictions_path)
    items = []
    for sample_id, sample in samples:
        if sample.comment is None:
            raise ConfigError(f"{sample_id}: prediction line has no comment field")
        items.append((sample_id, sample.text, sample.comment))
    report = paired_span_report(items)
    _write_json(out / "pairs.json", report.to_dict())
    figures.pair_variation(report.n_groups, report.n_all_distinct, out)
    print(
        f"{report.n_groups} repeated-sentence groups; "
        f"{report.n_all_distinct} with all outputs distinct"
    )
    return 0


# ---------------------------------------------------------------- parser

_CONFIG_FLAGS = [
    # (flag, config field, type)
    ("--corpus", "train_corpus", str),
    ("--parses", "train_parses", str),
    ("--dev-corpus", "dev_corpus", str),
    ("--lexicon", "lexicon", str),
    ("--endpoint", "endpoint", str),
    ("--timeout", "timeout", float),
    ("--max-in-flight", "max_in_flight", int),
    ("--retries", "retries", int),
    ("--max-new-tokens", "max_new_tokens", int),
    ("--temperature", "temperature", float),
    ("--seed", "seed", int),
    ("--group-skip-threshold", "group_skip_threshold", int),
    ("--per-sample-min", "per_sample_min", int),
    ("--per-sample-max", "per_sample_max", int),
    ("--topup-rounds", "topup_rounds", int),
    ("--stub-accepted", "stub_accepted", int),
    ("--citation-window", "citation_window", int),
    ("--epochs", "epochs", int),
    ("--eval-every", "eval_every_steps", int),
    ("--model-id", "model_id", str),
    ("--shuffle-seed", "shuffle_seed", int),
]


def _add_command(subparsers, name: str, handler, help_text: str) -> argparse.ArgumentParser:
    sub = subparsers.add_parser(name, help=help_text)
    sub.set_defaults(handler=handler)
    sub.add_argument("--config", help="JSON config file; flags override its values")
    sub.add_argument("--out-dir", required=True, help="directory for all outputs")
    for flag, field_name, value_type in _CONFIG_FLAGS:
        sub.add_argument(flag, dest=f"cfg_{field_name}", type=value_type, default=None)
    sub.add_argument(
        "--stub-generator",
        action="store_true",
        help="use the deterministic offline generator instead of an endpoint",
    )
    return sub


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fcgkit",
        description="feedback comment generation pipeline tools",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    _add_command(subparsers, "validate", cmd_validate, "check corpus lines and span alignment")
    _add_command(subparsers, "preprocess", cmd_preprocess, "emit marked source/target pairs")
    _add_command(subparsers, "clip", cmd_clip, "clip sentences after the span's last connection")
    _add_command(subparsers, "augment-plan", cmd_augment_plan, "select samples and export prompts")
    _add_command(subparsers, "augment-run", cmd_augment_run, "generate continuations and assemble")
    sub = _add_command(
        subparsers, "augment-import", cmd_augment_import, "assemble from imported continuations"
    )
    sub.add_argument("--continuations", required=True, help="JSONL of {id, continuations}")
    _add_command(subparsers, "build-lexicon", cmd_build_lexicon, "harvest grammar terms")
    sub = _add_command(subparsers, "repair", cmd_repair, "insert missing opening brackets")
    sub.add_argument("--predictions", required=True, help="TSV of text, span, generated comment")
    sub = _add_command(subparsers, "emit-train", cmd_emit_train, "write stage pair files and manifests")
    sub.add_argument("--augmented", required=True, help="augmented corpus TSV")
    sub = _add_command(subparsers, "eval-bleu", cmd_eval_bleu, "corpus BLEU of hypotheses")
    sub.add_argument("--references", required=True, help="one reference comment per line")
    sub.add_argument("--hypotheses", required=True, help="one hypothesis per line")
    sub = _add_command(subparsers, "eval-prf", cmd_eval_prf, "precision/recall/F1 from labels")
    sub.add_argument("--labels", required=True, help="one label per line: correct, incorrect, no_comment")
    sub.add_argument("--outputs", help="matching system outputs, for label consistency checks")
    sub = _add_command(subparsers, "report-pairs", cmd_report_pairs, "same-sentence output variation")
    sub.add_argument("--predictions", required=True, help="TSV of text, span, comment")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {
        field_name: getattr(args, f"cfg_{field_name}") for _, field_name, _ in _CONFIG_FLAGS
    }
    if args.stub_generator:
        overrides["use_stub"] = True
    try:
        cfg = load_config(args.config, overrides)
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        return args.handler(args, cfg, out)
    except (ConfigError, CorpusFormatError, ConlluFormatError, ManifestError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GenerationError as exc:
        print(f"generation error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
