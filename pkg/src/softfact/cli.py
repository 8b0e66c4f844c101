"""Command-line interface.

Subcommands: ``weights`` (entity-type TF-IDF table), ``score`` (per-document
reports), ``compare`` (model comparison over scored reports), and ``run``
(the whole pipeline). Results go to stdout or --output; diagnostics go to
stderr. Exit codes: 0 success, 1 invalid input or configuration, 2 external
provider failure. Outputs are byte-identical for identical inputs and flags
unless --timestamps is given.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from datetime import datetime, timezone
from typing import IO, Iterator

from .corpus import assemble_corpus, parse_fact_file
from .errors import ProviderError, ValidationError
from .reports import (
    comparison_to_obj,
    read_score_reports,
    score_report_to_obj,
    write_score_reports,
)
from .scoring import Mode, score_corpus
from .similarity import ExternalProvider, SimilarityProvider, TrigramProvider
from .stats import ScoreMatrix, compare_models
from .weighting import select_top_types, tfidf_weights

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    # argparse defaults to exit code 2 on usage errors; 2 is reserved for
    # provider failures, so configuration problems map to 1 instead.
    def error(self, message: str):
        self.exit(1, f"error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="softfact",
        description="Schema-free factual-consistency scoring over annotated fact sets.",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log progress and warnings to stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--input",
            nargs="+",
            required=True,
            help="fact file(s) in line-delimited JSON; '-' reads standard input",
        )
        p.add_argument("--output", help="write results here instead of standard output")

    def add_selection(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--top-n",
            type=int,
            default=10,
            metavar="N",
            help="number of entity types that gate scoring (default 10)",
        )

    def add_scoring(p: argparse.ArgumentParser) -> None:
        add_selection(p)
        p.add_argument(
            "--mode",
            choices=[m.value for m in Mode],
            default=Mode.LITERAL.value,
            help="how multiple pair-matching target facts count (default literal)",
        )
        p.add_argument(
            "--provider",
            choices=["trigram", "external"],
            default="trigram",
            help="predicate similarity backend (default trigram)",
        )
        p.add_argument("--provider-url", help="base URL of the external similarity service")
        p.add_argument(
            "--provider-timeout-ms",
            type=int,
            default=10000,
            metavar="MS",
            help="request timeout for the external provider (default 10000)",
        )
        p.add_argument(
            "--jobs",
            type=int,
            default=1,
            metavar="J",
            help="worker threads for per-document scoring (default 1)",
        )

    p_weights = sub.add_parser("weights", help="print the entity-type TF-IDF table as TSV")
    add_io(p_weights)
    add_selection(p_weights)
    p_weights.set_defaults(func=cmd_weights)

    p_score = sub.add_parser("score", help="score every (document, model) pair")
    add_io(p_score)
    add_scoring(p_score)
    p_score.set_defaults(func=cmd_score)

    p_compare = sub.add_parser("compare", help="compare models over scored reports")
    add_io(p_compare)
    p_compare.add_argument(
        "--alpha",
        type=float,
        default=0.05,
        help="significance level used only to annotate flags (default 0.05)",
    )
    p_compare.set_defaults(func=cmd_compare)

    p_run = sub.add_parser("run", help="score a corpus and compare its models")
    add_io(p_run)
    add_scoring(p_run)
    p_run.add_argument(
        "--alpha",
        type=float,
        default=0.05,
        help="significance level used only to annotate flags (default 0.05)",
    )
    p_run.add_argument(
        "--timestamps",
        action="store_true",
        help="include a generated_at field (breaks byte-for-byte reproducibility)",
    )
    p_run.set_defaults(func=cmd_run)
    return parser


def _load_corpus(args: argparse.Namespace):
    fact_sets = []
    stdin_used = False
    for path in args.input:
        if path == "-":
            if stdin_used:
                raise ValidationError("standard input may be given only once")
            stdin_used = True
            fact_sets.extend(parse_fact_file(sys.stdin, source_name="<stdin>"))
        else:
            try:
                with open(path, "r", encoding="utf-8") as handle:
                    fact_sets.extend(parse_fact_file(handle, source_name=path))
            except OSError as exc:
                raise ValidationError(f"cannot read '{path}': {exc}") from exc
    return assemble_corpus(fact_sets)


def _select_types(corpus, top_n: int) -> tuple:
    if top_n < 1:
        raise ValidationError("--top-n must be >= 1")
    weights = tfidf_weights(corpus)
    type_set = select_top_types(weights, top_n)
    if not type_set.types:
        raise ValidationError("corpus contains no entity types; nothing can be scored")
    return weights, type_set


def _make_provider(args: argparse.Namespace) -> SimilarityProvider:
    if args.provider == "trigram":
        return TrigramProvider()
    if not args.provider_url:
        raise ValidationError("--provider external requires --provider-url")
    return ExternalProvider(url=args.provider_url, timeout_ms=args.provider_timeout_ms)


@contextlib.contextmanager
def _open_output(args: argparse.Namespace) -> Iterator[IO]:
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8", newline="\n") as handle:
                yield handle
        except OSError as exc:
            raise ValidationError(f"cannot write '{args.output}': {exc}") from exc
    else:
        yield sys.stdout


def cmd_weights(args: argparse.Namespace) -> int:
    corpus = _load_corpus(args)
    weights, type_set = _select_types(corpus, args.top_n)
    selected = set(type_set.types)
    order = sorted(weights.aggregate, key=lambda t: (-weights.aggregate[t], t))
    with _open_output(args) as out:
        out.write("type\taggregate_weight\tdf\tselected\n")
        for type_label in order:
            out.write(
                f"{type_label}\t{weights.aggregate[type_label]!r}\t"
                f"{weights.doc_freq[type_label]}\t{str(type_label in selected).lower()}\n"
            )
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    corpus = _load_corpus(args)
    _, type_set = _select_types(corpus, args.top_n)
    provider = _make_provider(args)
    reports = score_corpus(corpus, type_set, provider, Mode(args.mode), jobs=args.jobs)
    with _open_output(args) as out:
        write_score_reports(reports, out)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    reports = []
    for path in args.input:
        if path == "-":
            reports.extend(read_score_reports(sys.stdin))
        else:
            try:
                with open(path, "r", encoding="utf-8") as handle:
                    reports.extend(read_score_reports(handle))
            except OSError as exc:
                raise ValidationError(f"cannot read '{path}': {exc}") from exc
    result = compare_models(ScoreMatrix.from_reports(reports))
    with _open_output(args) as out:
        json.dump(
            comparison_to_obj(result, alpha=args.alpha),
            out,
            ensure_ascii=False,
            sort_keys=True,
            indent=2,
        )
        out.write("\n")
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    corpus = _load_corpus(args)
    _, type_set = _select_types(corpus, args.top_n)
    provider = _make_provider(args)
    reports = score_corpus(corpus, type_set, provider, Mode(args.mode), jobs=args.jobs)
    result = compare_models(ScoreMatrix.from_reports(reports))
    payload = {
        "reports": [score_report_to_obj(r) for r in reports],
        "comparison": comparison_to_obj(result, alpha=args.alpha),
    }
    if args.timestamps:
        payload["generated_at"] = datetime.now(timezone.utc).isoformat()
    with _open_output(args) as out:
        json.dump(payload, out, ensure_ascii=False, sort_keys=True, indent=2)
        out.write("\n")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ProviderError as exc:
        print(f"provider error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
