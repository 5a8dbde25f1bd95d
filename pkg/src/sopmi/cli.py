"""Command-line entry point: ``sopmi <command> ...``.

Exit codes: 0 success, 2 usage error, 3 I/O error, 4 backend or data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from sopmi.classify import Label, Pipeline, dumps_result, load_reviews, make_tagger, result_from_json
from sopmi.errors import CacheIoError, SopmiError
from sopmi.evaluation import evaluate, render_text
from sopmi.hits import (
    CachedBackend,
    FixtureBackend,
    IndexBackend,
    QueryCache,
    build_index,
    iter_corpus,
    load_corpus,
    load_index,
    save_index,
)
from sopmi.orientation import SoConfig, WordPair, estimate_so
from sopmi.phrases import extract_phrases
from sopmi.tagging import load_lexicon

log = logging.getLogger("sopmi")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DATA = 4


class UsageError(Exception):
    pass


def _log_base(text: str) -> float:
    if text.lower() == "e":
        return math.e
    value = float(text)
    if not value > 1:
        raise argparse.ArgumentTypeError("log base must exceed 1")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _add_backend_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--index", help="index file built by 'index build'")
    g.add_argument("--corpus", help="JSON Lines reference corpus, indexed in memory")
    g.add_argument("--fixture", help="JSON file mapping canonical queries to counts")
    p.add_argument("--cache", help="persistent query cache file")


def _add_so_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pos-ref", default="excellent")
    p.add_argument("--neg-ref", default="poor")
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--min-hits", type=int, default=4)
    p.add_argument("--window", type=_positive_int, default=10)
    p.add_argument("--log-base", type=_log_base, default=math.e, help="'e' or a number > 1")
    p.add_argument("--exclude", action="append", default=[], metavar="SRC",
                   help="source label to drop from every count (repeatable)")


def _add_tagger_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tagger", choices=("auto", "baseline", "pretagged"), default="auto")
    p.add_argument("--lexicon", help="surface<TAB>TAG lexicon replacing the bundled one")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sopmi", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value file supplying defaults; flags win")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="build a hit index")
    isub = p_index.add_subparsers(dest="index_command", required=True)
    p_build = isub.add_parser("build")
    p_build.add_argument("--corpus", required=True)
    p_build.add_argument("--out", required=True)

    p_so = sub.add_parser("so", help="semantic orientation of one phrase")
    p_so.add_argument("phrase", help='two words, e.g. "low fees"')
    _add_backend_args(p_so)
    _add_so_args(p_so)
    p_so.add_argument("--format", choices=("text", "json"), default="text")

    p_extract = sub.add_parser("extract", help="per-review phrase tables")
    p_extract.add_argument("--in", dest="reviews", required=True)
    _add_tagger_args(p_extract)
    _add_backend_args(p_extract, required=False)
    _add_so_args(p_extract)

    p_classify = sub.add_parser("classify", help="classify reviews to JSON Lines")
    p_classify.add_argument("--in", dest="reviews", required=True)
    p_classify.add_argument("--out", help="results file (default: stdout)")
    p_classify.add_argument("--workers", type=_positive_int, default=1)
    _add_tagger_args(p_classify)
    _add_backend_args(p_classify)
    _add_so_args(p_classify)

    p_eval = sub.add_parser("evaluate", help="score results against author labels")
    p_eval.add_argument("--results", required=True)
    p_eval.add_argument("--reviews", required=True)
    p_eval.add_argument("--fallback", choices=("recommended", "not_recommended"), default="recommended",
                        help="label assigned to reviews with no usable phrases")
    p_eval.add_argument("--format", choices=("text", "json"), default="text")

    p_cache = sub.add_parser("cache", help="inspect or clear a query cache")
    p_cache.add_argument("action", choices=("stats", "clear"))
    p_cache.add_argument("--cache", required=True)

    parser._subparsers_by_name = {  # type: ignore[attr-defined]
        "so": p_so, "extract": p_extract, "classify": p_classify, "evaluate": p_eval,
        "cache": p_cache, "build": p_build,
    }
    return parser


def read_config(path: str | Path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment. Keys use flag spelling."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{line_no}: expected key = value")
            value = value.strip()
            if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
                value = value[1:-1]
            out[key.strip().replace("-", "_")] = value
    return out


def _coerce(action: argparse.Action, key: str, value: str):
    if isinstance(action, argparse._AppendAction):
        return [v.strip() for v in value.split(",") if v.strip()]
    if action.type is None:
        return value
    try:
        return action.type(value)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise UsageError(f"config key {key!r}: {exc}") from None


def apply_config(parser: argparse.ArgumentParser, config: dict[str, str]) -> None:
    """Install config values as defaults on every subcommand that has the option."""
    unused = set(config)
    for sub in parser._subparsers_by_name.values():  # type: ignore[attr-defined]
        actions = {a.dest: a for a in sub._actions}
        defaults = {}
        for key, value in config.items():
            if key in actions:
                defaults[key] = _coerce(actions[key], key, value)
                actions[key].required = False
                unused.discard(key)
        sub.set_defaults(**defaults)
        for group in sub._mutually_exclusive_groups:
            if any(a.dest in defaults for a in group._group_actions):
                group.required = False
    if unused:
        raise UsageError(f"unknown config key(s): {', '.join(sorted(unused))}")


def _prefer_flag_backend(args: argparse.Namespace, argv: Sequence[str]) -> None:
    # a backend named on the command line overrides one from the config file
    names = ("index", "corpus", "fixture")
    given = [n for n in names if any(a == f"--{n}" or a.startswith(f"--{n}=") for a in argv)]
    if given and hasattr(args, "fixture"):
        for n in names:
            if n not in given:
                setattr(args, n, None)


def so_config(args: argparse.Namespace) -> SoConfig:
    return SoConfig(
        positive_ref=args.pos_ref.lower(),
        negative_ref=args.neg_ref.lower(),
        epsilon=args.epsilon,
        min_hits=args.min_hits,
        log_base=args.log_base,
        window=args.window,
        exclusions=frozenset(args.exclude),
    )


def open_backend(args: argparse.Namespace):
    if args.index:
        backend = IndexBackend(load_index(args.index))
    elif args.corpus:
        backend = IndexBackend(build_index(iter_corpus(args.corpus)))
    elif args.fixture:
        backend = FixtureBackend.from_json(args.fixture)
    else:
        return None
    if args.cache:
        backend = CachedBackend(backend, QueryCache(args.cache))
    return backend


def _tagger(args: argparse.Namespace):
    lexicon = load_lexicon(args.lexicon) if args.lexicon else None
    return make_tagger(args.tagger, lexicon)


def cmd_index(args, out) -> int:
    docs = load_corpus(args.corpus)
    index = build_index(docs)
    save_index(index, args.out)
    print(f"indexed {index.corpus_size} documents, {len(index.postings)} distinct words -> {args.out}",
          file=out)
    return EXIT_OK


def cmd_so(args, out) -> int:
    words = args.phrase.lower().split()
    if len(words) != 2:
        raise UsageError(f"phrase must be exactly two words, got {args.phrase!r}")
    cfg = so_config(args)
    est = estimate_so(WordPair(*words), open_backend(args), cfg)
    c = est.counts
    if args.format == "json":
        json.dump({"phrase": " ".join(words), "so": est.value, "status": est.status,
                   "counts": c._asdict()}, out, sort_keys=True)
        out.write("\n")
        return EXIT_OK
    if est.skipped:
        print(f"{' '.join(words)}\tSKIPPED", file=out)
    else:
        sign = "positive" if est.value > 0 else "negative" if est.value < 0 else "neutral"
        print(f"{' '.join(words)}\t{est.value!r}\t{sign}", file=out)
    print(f"hits(phrase NEAR {cfg.positive_ref})={c.near_positive}\t"
          f"hits(phrase NEAR {cfg.negative_ref})={c.near_negative}\t"
          f"hits({cfg.positive_ref})={c.positive_total}\thits({cfg.negative_ref})={c.negative_total}",
          file=out)
    return EXIT_OK


def _phrase_table(phrases) -> list[str]:
    rows = [(p.text, p.tags, est) for p, est in phrases]
    width = max([len("Extracted Phrase")] + [len(t) for t, _, _ in rows])
    lines = [f"{'Extracted Phrase':<{width}}  {'Tags':<8}  Semantic Orientation"]
    for text, tags, est in rows:
        so = "" if est is None else ("skipped" if est.skipped else f"{est.value:.3f}")
        lines.append(f"{text:<{width}}  {tags:<8}  {so}".rstrip())
    return lines


def cmd_extract(args, out) -> int:
    tagger = _tagger(args)
    backend = open_backend(args)
    cfg = so_config(args)
    for review in load_reviews(args.reviews):
        if backend is not None:
            result = Pipeline(backend, cfg, tagger).classify(review)
            phrases = result.phrases
        else:
            phrases = tuple((p, None) for p in extract_phrases(tagger(review)))
            result = None
        print(f"# {review.review_id}" + (f" ({review.domain})" if review.domain else ""), file=out)
        for line in _phrase_table(phrases):
            print(line, file=out)
        if result is not None:
            avg = "n/a" if result.average_so is None else f"{result.average_so:.3f}"
            print(f"Average Semantic Orientation  {avg}  ({result.label.value})", file=out)
        print(file=out)
    return EXIT_OK


def cmd_classify(args, out) -> int:
    reviews = load_reviews(args.reviews)
    backend = open_backend(args)
    pipeline = Pipeline(backend, so_config(args), _tagger(args))
    results = pipeline.classify_all(reviews, workers=args.workers)
    lines = "".join(dumps_result(r) + "\n" for r in results)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(lines)
    else:
        out.write(lines)
    log.info("classified %d reviews", len(results))
    return EXIT_OK


def cmd_evaluate(args, out) -> int:
    reviews = load_reviews(args.reviews)
    results = []
    with open(args.results, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                results.append(result_from_json(json.loads(line)))
            except (ValueError, KeyError, TypeError) as exc:
                raise SopmiError(f"{args.results}:{line_no}: malformed result ({exc})") from None
    report = evaluate(results, reviews, Label(args.fallback))
    if args.format == "json":
        json.dump(report.as_dict(), out, indent=2)
        out.write("\n")
    else:
        out.write(render_text(report))
    return EXIT_OK


def cmd_cache(args, out) -> int:
    cache = QueryCache(args.cache)
    if args.action == "clear":
        n = len(cache)
        cache.clear()
        print(f"cleared {n} entries from {args.cache}", file=out)
    else:
        for key, value in cache.stats().items():
            print(f"{key}: {value}", file=out)
    return EXIT_OK


COMMANDS = {
    "index": cmd_index,
    "so": cmd_so,
    "extract": cmd_extract,
    "classify": cmd_classify,
    "evaluate": cmd_evaluate,
    "cache": cmd_cache,
}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    try:
        config_path = pre.parse_known_args(argv)[0].config
        if config_path:
            apply_config(parser, read_config(config_path))
        args = parser.parse_args(argv)
        if config_path:
            _prefer_flag_backend(args, argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    except UsageError as exc:
        print(f"sopmi: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sopmi: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="sopmi: %(message)s")
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"sopmi: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CacheIoError, OSError) as exc:
        print(f"sopmi: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SopmiError, ValueError) as exc:
        print(f"sopmi: error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
