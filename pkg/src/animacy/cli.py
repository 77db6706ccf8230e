"""Command line entry point.

Subcommands mirror the pipeline: import-wndb, annotate, enrich, classify,
xval, eval, kappa, simulate, sweep.  Data goes to stdout or --out files;
diagnostics go to stderr.  Exit codes: 0 success, 1 runtime error, 2 usage
error.  Stochastic subcommands require an explicit --seed so that equal
invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys

from . import evaluation, mbl, resolution, rules, wndb, wsd
from .corpus import Label, load_corpus, run_annotation_session, save_corpus
from .enrichment import dump_statuses, enrich, load_enriched
from .taxonomy import BeginnerClass, dump_taxonomy, load_taxonomy


def _write_output(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _prediction_lines(keyed: list[tuple[tuple[str, int, int], Label]]) -> str:
    return "".join(
        "%s\t%d\t%d\t%s\n" % (doc_id, sent_id, np_id, label.value)
        for (doc_id, sent_id, np_id), label in keyed
    )


def _load_predictions(path) -> dict[tuple[str, int, int], Label]:
    out = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 4:
                raise ValueError(f"{path} line {lineno}: expected 4 fields")
            out[(fields[0], int(fields[1]), int(fields[2]))] = Label(fields[3])
    return out


def _labels_for(path) -> dict[tuple[str, int, int], Label]:
    """Label assignment from either a prediction TSV or an annotated corpus."""
    first = ""
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if line.strip() and not line.startswith("#"):
                first = line
                break
    if first.split("\t", 1)[0] in ("DOC", "NP", "PRON"):
        docs = load_corpus(path)
        return resolution.gold_assignment(docs)
    return _load_predictions(path)


def _beginners(args) -> BeginnerClass:
    kwargs = {}
    if getattr(args, "animate_noun_lexfiles", None):
        kwargs["animate_noun_lexfiles"] = frozenset(
            int(x) for x in args.animate_noun_lexfiles.split(",")
        )
    if getattr(args, "animate_verb_lexfiles", None):
        kwargs["animate_verb_lexfiles"] = frozenset(
            int(x) for x in args.animate_verb_lexfiles.split(",")
        )
    return BeginnerClass(**kwargs)


def _doc_weightings(docs, taxonomy, ic_table):
    return {
        doc.doc_id: wsd.document_weights(doc, taxonomy, ic_table) for doc in docs
    }


class UsageError(Exception):
    pass


def cmd_import_wndb(args) -> int:
    taxonomy, warnings = wndb.import_wndb(
        noun_path=args.noun,
        verb_path=args.verb,
        index_noun_path=args.index_noun,
        index_verb_path=args.index_verb,
    )
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    _write_output(dump_taxonomy(taxonomy), args.out)
    return 0


def cmd_annotate(args) -> int:
    docs = load_corpus(args.corpus)
    keystrokes = iter(sys.stdin.readline, "")
    try:
        updated, assigned = run_annotation_session(docs, keystrokes)
    except KeyboardInterrupt:
        print("interrupted; saving progress", file=sys.stderr)
        updated, assigned = docs, 0
    save_corpus(updated, args.out)
    print(f"{assigned} labels assigned -> {args.out}", file=sys.stderr)
    return 0


def cmd_enrich(args) -> int:
    taxonomy = load_taxonomy(args.taxonomy)
    docs = load_corpus(args.corpus)
    enriched = enrich(taxonomy, docs, alpha=args.alpha)
    _write_output(dump_statuses(enriched), args.out)
    coverage = enriched.coverage()
    print(f"coverage: {coverage:.4f}", file=sys.stderr)
    return 0


def cmd_classify(args) -> int:
    if args.method in ("random", "weighted") and args.seed is None:
        raise UsageError(f"--method {args.method} requires --seed")
    if args.method in ("rule", "random", "weighted", "dummy") and args.corpus is None:
        raise UsageError(f"--method {args.method} requires --corpus")
    if args.method in ("rule", "ml") and args.taxonomy is None:
        raise UsageError(f"--method {args.method} requires --taxonomy")
    beginners = _beginners(args)

    if args.method in ("random", "weighted", "dummy"):
        docs = load_corpus(args.corpus)
        stream = evaluation.baseline(args.method, docs, seed=args.seed)
        keyed = [
            (np.key, label)
            for (_, np), label in zip(
                ((doc, np) for doc in docs for np in doc.nps), stream
            )
        ]
        _write_output(_prediction_lines(keyed), args.out)
        return 0

    taxonomy = load_taxonomy(args.taxonomy)
    thresholds = rules.Thresholds(args.t1, args.t2, args.t3)

    if args.method == "rule":
        docs = load_corpus(args.corpus)
        weightings = None
        if args.wsd:
            ic_table = (
                wsd.load_counts(args.ic, taxonomy)
                if args.ic
                else wsd.information_content(docs, taxonomy)
            )
            weightings = _doc_weightings(docs, taxonomy, ic_table)
        keyed = []
        for doc in docs:
            weighting = weightings[doc.doc_id] if weightings else None
            for np in doc.nps:
                label = rules.classify_np(
                    np, taxonomy, beginners, thresholds, weighting,
                    reflexive_counts=not args.no_reflexive,
                )
                keyed.append((np.key, label))
        _write_output(_prediction_lines(keyed), args.out)
        return 0

    # memory-based: train on --train, predict --test
    if args.train is None or args.test is None:
        raise UsageError("--method ml requires --train and --test")
    train_docs = load_corpus(args.train)
    test_docs = load_corpus(args.test)
    if args.enriched:
        enriched = load_enriched(args.enriched, taxonomy)
    else:
        enriched = enrich(taxonomy, train_docs)
    train_weightings = test_weightings = None
    if args.wsd:
        ic_table = (
            wsd.load_counts(args.ic, taxonomy)
            if args.ic
            else wsd.information_content(train_docs, taxonomy)
        )
        train_weightings = _doc_weightings(train_docs, taxonomy, ic_table)
        test_weightings = _doc_weightings(test_docs, taxonomy, ic_table)
    store = mbl.build_store(train_docs, enriched, beginners, train_weightings)
    config = mbl.MblConfig(k=args.k)
    keyed = []
    for doc in test_docs:
        weighting = test_weightings[doc.doc_id] if test_weightings else None
        for np in doc.nps:
            query = mbl.extract_features(np, doc, enriched, beginners, weighting)
            keyed.append((np.key, mbl.knn_classify(query, store, config)))
    _write_output(_prediction_lines(keyed), args.out)
    return 0


def cmd_xval(args) -> int:
    taxonomy = load_taxonomy(args.taxonomy)
    docs = load_corpus(args.corpus)
    beginners = _beginners(args)
    if args.enriched:
        enriched = load_enriched(args.enriched, taxonomy)
    else:
        enriched = enrich(taxonomy, docs)
    weightings = None
    if args.wsd:
        ic_table = (
            wsd.load_counts(args.ic, taxonomy)
            if args.ic
            else wsd.information_content(docs, taxonomy)
        )
        weightings = _doc_weightings(docs, taxonomy, ic_table)
    report, _ = mbl.cross_validate(
        docs, enriched, folds=args.folds, config=mbl.MblConfig(k=args.k),
        seed=args.seed, beginners=beginners, weightings=weightings,
    )
    _write_output(evaluation.format_report(report), args.out)
    return 0


def cmd_eval(args) -> int:
    gold_labels = _labels_for(args.gold)
    predicted = _labels_for(args.pred)
    missing = [key for key in gold_labels if key not in predicted]
    if missing:
        raise ValueError(f"{len(missing)} gold NPs lack predictions, e.g. {missing[0]}")
    keys = sorted(gold_labels)
    report = evaluation.score(
        [gold_labels[k] for k in keys],
        [predicted[k] for k in keys],
        include_unknown=not args.ignore_unknown,
    )
    _write_output(evaluation.format_report(report), args.out)
    return 0


def cmd_kappa(args) -> int:
    first = _labels_for(args.a)
    second = _labels_for(args.b)
    keys = sorted(set(first) & set(second))
    if not keys:
        raise ValueError("the two annotations share no NP keys")
    value, agreement = evaluation.kappa(
        [first[k] for k in keys], [second[k] for k in keys]
    )
    kappa_text = "-" if value is None else repr(value)
    _write_output(
        "kappa\traw_agreement\titems\n%s\t%r\t%d\n" % (kappa_text, agreement, len(keys)),
        args.out,
    )
    return 0


def cmd_simulate(args) -> int:
    docs = load_corpus(args.corpus)
    labels = _labels_for(args.labels) if args.labels else resolution.gold_assignment(docs)
    result = resolution.run_harness(
        docs, labels, window=args.window,
        count_prefilter_misses=not args.only_filter_losses,
    )
    _write_output(
        "success_rate\tavg_candidates\tpct_no_antecedent\n%r\t%r\t%r\n"
        % (result.success_rate, result.avg_candidates, result.pct_no_antecedent),
        args.out,
    )
    return 0


def cmd_sweep(args) -> int:
    docs = load_corpus(args.corpus)
    grid = resolution.sweep(
        docs,
        precision_percents=range(args.p_from, args.p_to + 1, args.p_step),
        recall_percents=range(args.r_from, args.r_to + 1, args.r_step),
        runs=args.runs,
        seed=args.seed,
        window=args.window,
    )
    _write_output(resolution.sweep_csv(grid), args.out)
    if args.marginals:
        _write_output(resolution.marginal_csv(grid), args.marginals)
    return 0


def _add_beginner_flags(parser):
    parser.add_argument(
        "--animate-noun-lexfiles", default=None,
        help="comma-separated lexfile numbers treated as animate for nouns",
    )
    parser.add_argument(
        "--animate-verb-lexfiles", default=None,
        help="comma-separated lexfile numbers treated as animate for verbs",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="animacy",
        description="Animacy classification and its evaluation harnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("import-wndb", help="convert WordNet database files")
    p.add_argument("--noun", help="path to data.noun")
    p.add_argument("--verb", help="path to data.verb")
    p.add_argument("--index-noun", help="optional index.noun for cross-checking")
    p.add_argument("--index-verb", help="optional index.verb for cross-checking")
    p.add_argument("--out", help="output taxonomy file (default stdout)")
    p.set_defaults(func=cmd_import_wndb)

    p = sub.add_parser("annotate", help="interactively label a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("enrich", help="compute per-synset animacy statuses")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--alpha", type=float, default=0.05,
                   help="significance level for the chi-square tests")
    p.set_defaults(func=cmd_enrich)

    p = sub.add_parser("classify", help="predict NP animacy")
    p.add_argument("--method", required=True,
                   choices=["rule", "ml", "random", "weighted", "dummy"])
    p.add_argument("--taxonomy", help="taxonomy file (rule and ml)")
    p.add_argument("--corpus", help="corpus to classify (rule and baselines)")
    p.add_argument("--train", help="training corpus (ml)")
    p.add_argument("--test", help="corpus to classify (ml)")
    p.add_argument("--enriched", help="statuses file (ml; default: enrich --train)")
    p.add_argument("--t1", type=float, default=0.71,
                   help="noun animacy threshold")
    p.add_argument("--t2", type=float, default=0.92,
                   help="noun inanimacy threshold")
    p.add_argument("--t3", type=float, default=0.90,
                   help="verb animacy threshold")
    p.add_argument("--k", type=int, default=3, help="nearest distances (ml)")
    p.add_argument("--wsd", action="store_true", help="weight senses by context")
    p.add_argument("--ic", help="COUNT file overriding the frequency source")
    p.add_argument("--seed", type=int, default=None,
                   help="rng seed (required for random/weighted)")
    p.add_argument("--no-reflexive", action="store_true",
                   help="contextual rule checks the who-complementizer only")
    p.add_argument("--out", default=None)
    _add_beginner_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("xval", help="k-fold cross-validation of the ml method")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--enriched", help="statuses file (default: enrich --corpus)")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--wsd", action="store_true")
    p.add_argument("--ic")
    p.add_argument("--out", default=None)
    _add_beginner_flags(p)
    p.set_defaults(func=cmd_xval)

    p = sub.add_parser("eval", help="score predictions against gold labels")
    p.add_argument("--gold", required=True,
                   help="annotated corpus or prediction TSV with gold labels")
    p.add_argument("--pred", required=True, help="prediction TSV")
    p.add_argument("--ignore-unknown", action="store_true",
                   help="drop unknown predictions instead of counting them as errors")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("kappa", help="inter-annotator agreement")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("simulate", help="run the candidate-filtering harness once")
    p.add_argument("--corpus", required=True)
    p.add_argument("--labels", help="label assignment (default: gold labels)")
    p.add_argument("--window", type=int, default=2,
                   help="preceding sentences searched for candidates")
    p.add_argument("--only-filter-losses", action="store_true",
                   help="count as antecedent-less only pronouns the filter broke")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="precision/recall error-injection sweep")
    p.add_argument("--corpus", required=True)
    p.add_argument("--p-from", type=int, default=10)
    p.add_argument("--p-to", type=int, default=100)
    p.add_argument("--p-step", type=int, default=1)
    p.add_argument("--r-from", type=int, default=50)
    p.add_argument("--r-to", type=int, default=100)
    p.add_argument("--r-step", type=int, default=1)
    p.add_argument("--runs", type=int, default=50)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--marginals", help="also write axis-averaged curves here")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
