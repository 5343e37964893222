"""Batch orchestration and the command-line surface.

Subcommands: train-markov, screen, evaluate, fit, report. Input batches are
JSONL ({"id", "question", "response", "language"}); annotations are CSV or
JSONL with effort/relevance/completeness/overall/acceptance columns. Exit
codes: 0 success, 1 I/O or config failure, 2 excessive judging failures.
"""

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import aggregate, gibberish, judge, markov, metrics, textstat
from .cache import CachingChatClient, PromptCache
from .records import EvaluationRecord, SurveyItem

EXIT_OK = 0
EXIT_IO = 1
EXIT_JUDGE_FAILURES = 2


def read_items(path: str) -> list[SurveyItem]:
    items = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            items.append(
                SurveyItem(
                    id=str(rec["id"]),
                    question=rec.get("question", ""),
                    response=rec.get("response", ""),
                    language=rec["language"],
                )
            )
    return items


def read_annotations(path: str) -> dict[str, dict]:
    """Annotation rows keyed by id, from CSV or JSONL."""
    rows: dict[str, dict] = {}
    if path.endswith(".csv"):
        with open(path, encoding="utf-8", newline="") as fh:
            for rec in csv.DictReader(fh):
                rows[str(rec["id"])] = dict(rec)
    else:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    rec = json.loads(line)
                    rows[str(rec["id"])] = rec
    return rows


def load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def build_gibberish_config(language: str, options: dict) -> gibberish.GibberishConfig:
    overrides = {
        key: options[key]
        for key in (
            "ll_threshold",
            "run_threshold",
            "valid_word_threshold",
            "syllable_ratio_threshold",
            "jamo_diversity_threshold",
        )
        if key in options
    }
    config = gibberish.GibberishConfig.for_language(
        language,
        whitelist_path=options.get("whitelist"),
        lexicon_path=options.get("lexicon"),
        **overrides,
    )
    return config


def _model_language(model: markov.BigramModel) -> str:
    return textstat.ENGLISH if model.unit == markov.UNIT_CHAR else textstat.KOREAN


def record_to_json(record: EvaluationRecord) -> str:
    doc = {
        "id": record.item_id,
        "gibberish": record.gibberish,
        "scores": record.scores,
        "overall": record.overall,
        "error": record.error,
        "metadata": record.metadata,
    }
    return json.dumps(doc, sort_keys=True, ensure_ascii=False)


@dataclass
class EvaluateOptions:
    aggregation: str = aggregate.METHOD_SUM
    threshold: float = 0.5
    weights: aggregate.RidgeWeights | None = None
    max_workers: int = 4
    max_failure_rate: float = 0.1
    include_timing: bool = False


def _scores_dict(scores: judge.DimensionScores) -> dict:
    return {
        "effort": None if scores.effort is None else scores.effort.to_dict(),
        "relevance": None if scores.relevance is None else scores.relevance.to_dict(),
        "completeness": None
        if scores.completeness is None
        else scores.completeness.to_dict(),
        "failures": dict(scores.failures),
    }


def evaluate_item(
    item: SurveyItem,
    model: markov.BigramModel,
    gib_config: gibberish.GibberishConfig,
    judge_config: judge.JudgeConfig,
    client: judge.ChatClient,
    options: EvaluateOptions,
) -> EvaluationRecord:
    """Stage-1 screen, then (unless short-circuited) judge and aggregate."""
    metadata = {
        "model_identifier": judge_config.model_identifier,
        "aggregation": options.aggregation,
    }
    verdict = gibberish.detect(item, model, gib_config)
    if verdict.is_gibberish:
        report = aggregate.QualityReport(
            overall=0.0,
            method=options.aggregation,
            acceptance=aggregate.REJECT,
            threshold=options.threshold,
            components=None,
            gibberish_short_circuit=True,
        )
        return EvaluationRecord(
            item_id=item.id,
            gibberish=verdict.to_dict(),
            overall=report.to_dict(),
            metadata=metadata,
        )

    scores = judge.score_all(client, item, judge_config)
    if not scores.complete():
        return EvaluationRecord(
            item_id=item.id,
            gibberish=verdict.to_dict(),
            scores=_scores_dict(scores),
            error="judging_failed",
            metadata=metadata,
        )

    normalized = aggregate.normalize(*scores.values())
    if options.aggregation == aggregate.METHOD_SUM:
        overall = aggregate.aggregate_sum(normalized)
    elif options.aggregation == aggregate.METHOD_REGRESSION:
        if options.weights is None:
            raise ValueError("regression aggregation requires fitted weights")
        overall = aggregate.aggregate_regression(options.weights, normalized)
    elif options.aggregation == aggregate.METHOD_LLM:
        llm_score = judge.llm_overall_quality(client, item, scores, judge_config)
        overall = aggregate.rescale_overall(llm_score.score)
    else:
        raise ValueError(f"unknown aggregation: {options.aggregation!r}")

    report = aggregate.QualityReport(
        overall=overall,
        method=options.aggregation,
        acceptance=aggregate.decide_acceptance(overall, options.threshold),
        threshold=options.threshold,
        components=normalized,
    )
    return EvaluationRecord(
        item_id=item.id,
        gibberish=verdict.to_dict(),
        scores=_scores_dict(scores),
        overall=report.to_dict(),
        metadata=metadata,
    )


def evaluate_batch(
    items: list[SurveyItem],
    model: markov.BigramModel,
    gib_config: gibberish.GibberishConfig,
    judge_config: judge.JudgeConfig,
    client: judge.ChatClient,
    options: EvaluateOptions,
) -> list[EvaluationRecord]:
    """Evaluate a batch with a bounded worker pool, preserving input order.

    Per-item errors become error records; the batch always completes.
    """

    def run_one(item: SurveyItem) -> EvaluationRecord:
        try:
            return evaluate_item(item, model, gib_config, judge_config, client, options)
        except Exception as exc:  # per-record isolation
            return EvaluationRecord(
                item_id=item.id,
                gibberish={},
                error=f"{type(exc).__name__}: {exc}",
            )

    with ThreadPoolExecutor(max_workers=max(1, options.max_workers)) as pool:
        return list(pool.map(run_one, items))


# ---------------------------------------------------------------- commands


def cmd_train_markov(args) -> int:
    try:
        with open(args.corpus, encoding="utf-8") as fh:
            model = markov.train(
                (line.rstrip("\n") for line in fh),
                unit=args.unit,
                smoothing_alpha=args.alpha,
                metadata={"corpus": args.corpus},
            )
    except markov.EmptyCorpus:
        print("error: empty corpus", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    markov.save(model, args.out)
    print(
        f"trained {model.unit} model: vocabulary {len(model.vocabulary)}, "
        f"lines {model.metadata.get('lines')}"
    )
    return EXIT_OK


def cmd_screen(args) -> int:
    try:
        model = markov.load(args.model)
        items = read_items(args.input)
        options = load_config_file(args.config)
    except (OSError, json.JSONDecodeError, markov.FormatVersionMismatch, markov.CorruptCounts) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    language = _model_language(model)
    config = build_gibberish_config(language, options)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    counts = {"gibberish": 0, "clean": 0, "error": 0}
    try:
        for item in items:
            try:
                verdict = gibberish.detect(item, model, config)
            except gibberish.LanguageModelMismatch as exc:
                counts["error"] += 1
                out.write(json.dumps({"id": item.id, "error": str(exc)}, sort_keys=True) + "\n")
                continue
            counts["gibberish" if verdict.is_gibberish else "clean"] += 1
            doc = {"id": item.id, **verdict.to_dict()}
            out.write(json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    print(
        f"screened {len(items)} items: {counts['gibberish']} gibberish, "
        f"{counts['clean']} clean, {counts['error']} errors",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_evaluate(args, client: judge.ChatClient | None = None) -> int:
    try:
        model = markov.load(args.model)
        items = read_items(args.input)
        config_options = load_config_file(args.config)
    except (OSError, json.JSONDecodeError, markov.FormatVersionMismatch, markov.CorruptCounts) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    language = _model_language(model)
    gib_config = build_gibberish_config(language, config_options)
    judge_config = judge.JudgeConfig(
        endpoint_url=config_options.get("endpoint_url", args.endpoint or ""),
        model_identifier=config_options.get("model_identifier", args.judge_model),
        language=config_options.get("judge_language", language),
        max_retries=config_options.get("max_retries", 3),
    )
    weights = aggregate.load_weights(args.weights) if args.weights else None
    options = EvaluateOptions(
        aggregation=args.aggregation,
        threshold=args.threshold,
        weights=weights,
        max_workers=args.workers,
        max_failure_rate=args.max_failure_rate,
    )
    if client is None:
        client = judge.HttpChatClient()
    cache = PromptCache(args.cache_dir)
    caching_client = CachingChatClient(client, cache)

    records = evaluate_batch(items, model, gib_config, judge_config, caching_client, options)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for record in records:
            out.write(record_to_json(record) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    failures = sum(1 for r in records if r.error is not None)
    print(
        f"evaluated {len(records)} items, {failures} failures, "
        f"{caching_client.network_calls} network calls",
        file=sys.stderr,
    )
    if items and failures / len(items) > options.max_failure_rate:
        return EXIT_JUDGE_FAILURES
    return EXIT_OK


def _join_scores(scores_path: str, annotations_path: str):
    """Join evaluation records with annotation rows on id."""
    annotations = read_annotations(annotations_path)
    joined = []
    missing = []
    with open(scores_path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            item_id = str(rec["id"])
            if item_id not in annotations:
                missing.append(item_id)
                continue
            joined.append((rec, annotations[item_id]))
    return joined, missing


def _dim_scores(rec: dict) -> tuple[int, int, int] | None:
    scores = rec.get("scores")
    if not scores:
        return None
    dims = []
    for dim in ("effort", "relevance", "completeness"):
        entry = scores.get(dim)
        if entry is None:
            return None
        dims.append(entry["score"])
    return tuple(dims)


def cmd_fit(args) -> int:
    try:
        joined, missing = _join_scores(args.scores, args.annotations)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    rows = []
    targets = []
    for rec, ann in joined:
        dims = _dim_scores(rec)
        if dims is None:
            continue
        normalized = aggregate.normalize(*dims)
        rows.append(normalized.as_array())
        targets.append(aggregate.rescale_overall(float(ann["overall"])))
    if not rows and missing:
        print(f"error: no joined ids; missing {missing[:10]}", file=sys.stderr)
        return EXIT_IO
    try:
        weights = aggregate.fit_ridge(rows, targets, lam=args.lam, fitted_on=args.scores)
    except (ValueError, aggregate.DegenerateDesign) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    aggregate.save_weights(weights, args.out)
    predictions = [
        aggregate.aggregate_regression(
            weights, aggregate.NormalizedScores(*row)
        )
        for row in rows
    ]
    rho = metrics.spearman_rho(predictions, targets)
    print(f"fitted weights on {len(rows)} rows; in-sample Spearman {rho}")
    return EXIT_OK


def cmd_report(args) -> int:
    try:
        joined, missing = _join_scores(args.scores, args.annotations)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    report: dict = {"n_joined": len(joined), "missing_ids": missing}

    columns: dict[str, list[float]] = {
        "effort": [], "relevance": [], "completeness": [], "overall": [],
        "human_effort": [], "human_relevance": [], "human_completeness": [],
        "human_overall": [],
    }
    acceptance_scores: list[float] = []
    acceptance_labels: list[int] = []
    for rec, ann in joined:
        short_circuited = bool(rec.get("overall") and rec["overall"].get("gibberish_short_circuit"))
        dims = _dim_scores(rec)
        overall = rec.get("overall", {}).get("overall") if rec.get("overall") else None
        if short_circuited and not args.include_gibberish:
            pass
        elif dims is not None and overall is not None:
            columns["effort"].append(dims[0])
            columns["relevance"].append(dims[1])
            columns["completeness"].append(dims[2])
            columns["overall"].append(overall)
            for dim in ("effort", "relevance", "completeness", "overall"):
                columns["human_" + dim].append(float(ann[dim]))
        elif short_circuited and args.include_gibberish:
            for key in ("effort", "relevance", "completeness", "overall"):
                columns[key].append(0.0)
                columns["human_" + key].append(float(ann[key]))
        if overall is not None and "acceptance" in ann and ann["acceptance"]:
            acceptance_scores.append(overall)
            acceptance_labels.append(aggregate.label_to_binary(ann["acceptance"]))

    correlations = {}
    for dim in ("effort", "relevance", "completeness", "overall"):
        x = columns[dim]
        y = columns["human_" + dim]
        entry: dict = {}
        if len(x) >= 2:
            entry["spearman"] = metrics.spearman_rho(x, y)
            entry["kendall"] = metrics.kendall_tau(x, y)
        else:
            entry["spearman"] = entry["kendall"] = None
        correlations[dim] = entry
    report["correlations"] = correlations

    kappas = {}
    ranges = {"effort": 8, "relevance": 5, "completeness": 5, "overall": 5}
    for dim, size in ranges.items():
        x = [round(v) for v in columns[dim]]
        y = [round(v) for v in columns["human_" + dim]]
        if x:
            try:
                kappas[dim] = metrics.quadratic_weighted_kappa(x, y, range(size))
            except ValueError as exc:
                kappas[dim] = f"degenerate: {exc}"
        else:
            kappas[dim] = None
    report["quadratic_weighted_kappa"] = kappas

    if args.ci:
        col_a, col_b = args.ci
        try:
            ci = metrics.bootstrap_ci_diff(
                columns["human_overall"],
                columns[col_a],
                columns[col_b],
                statistic=args.ci_statistic,
                resamples=args.resamples,
                seed=args.seed,
            )
            report["bootstrap_ci"] = {
                "columns": [col_a, col_b],
                "statistic": args.ci_statistic,
                "lower": ci.lower,
                "upper": ci.upper,
                "level": ci.level,
                "resamples": ci.resamples,
                "seed": ci.seed,
                "observed_diff": ci.observed_diff,
            }
        except (metrics.TooSmallSample, metrics.NonConvergentResampling) as exc:
            report["bootstrap_ci"] = f"degenerate: {exc}"

    if acceptance_labels:
        try:
            roc = metrics.roc_auc(acceptance_scores, acceptance_labels)
            report["roc"] = {"auc": roc.auc, "points": [list(p) for p in roc.points]}
        except metrics.SingleClass as exc:
            report["roc"] = f"degenerate: {exc}"

    output = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(output + "\n")
    else:
        print(output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="respeval",
        description="Two-stage quality scoring for open-ended survey responses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train-markov", help="train a bigram model from a line corpus")
    p.add_argument("corpus")
    p.add_argument("--unit", choices=[markov.UNIT_CHAR, markov.UNIT_JAMO], required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_markov)

    p = sub.add_parser("screen", help="stage-1 gibberish screening of a JSONL batch")
    p.add_argument("input")
    p.add_argument("--model", required=True)
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_screen)

    p = sub.add_parser("evaluate", help="full two-stage evaluation with LLM caching")
    p.add_argument("input")
    p.add_argument("--model", required=True)
    p.add_argument("--config", default=None)
    p.add_argument("--cache-dir", required=True)
    p.add_argument("--endpoint", default=None)
    p.add_argument("--judge-model", default="gpt-4o-mini")
    p.add_argument(
        "--aggregation",
        choices=[aggregate.METHOD_SUM, aggregate.METHOD_REGRESSION, aggregate.METHOD_LLM],
        default=aggregate.METHOD_SUM,
    )
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--weights", default=None)
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--max-failure-rate", type=float, default=0.1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("fit", help="fit ridge aggregation weights on annotations")
    p.add_argument("--scores", required=True)
    p.add_argument("--annotations", required=True)
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("report", help="statistics report against annotations")
    p.add_argument("--scores", required=True)
    p.add_argument("--annotations", required=True)
    p.add_argument("--ci", nargs=2, default=None, metavar=("COL_A", "COL_B"))
    p.add_argument("--ci-statistic", choices=["spearman", "kendall"], default="spearman")
    p.add_argument("--resamples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--include-gibberish", action="store_true",
                   help="count short-circuited items as zeros in correlations")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
