"""Command line entry point: ``choiceaxioms {analyze,verify,generate}``.

Exit codes: 0 success (and, for ``verify``, claim verified); 1 usage or
ingestion error; 2 counterexample found.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any

from .analysis import analyze
from .core import complete, dataset_to_dict, dumps_dataset, load_dataset
from .errors import ChoiceDataError
from .generators import enumerate_all, fixtures, from_preference, iter_sample, parse_ranking
from .relations import strict_from_weak
from .verifier import CLAIMS, verify

EXIT_OK, EXIT_USAGE, EXIT_COUNTEREXAMPLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}") from None


def _common(suppress: bool) -> argparse.ArgumentParser:
    default = argparse.SUPPRESS if suppress else None
    p = argparse.ArgumentParser(add_help=False)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default=default or "json",
                     help="JSON output (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", default=default or "json",
                     help="human-readable output")
    p.add_argument("--complete", metavar="POLICY", choices=["full-menu", "fail"], default=default,
                   help="completion policy for partial data before total-only checks")
    p.add_argument("-v", "--verbose", action="store_true", default=default or False)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="choiceaxioms", description=__doc__.splitlines()[0], parents=[_common(False)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    child = [_common(True)]

    a = sub.add_parser("analyze", parents=child, help="check every axiom on a dataset")
    a.add_argument("path", help="dataset JSON file ('-' for stdin)")

    v = sub.add_parser("verify", parents=child, help="exhaustively verify a claim")
    v.add_argument("--claim", required=True, choices=sorted(CLAIMS))
    v.add_argument("--n", type=int, default=4)
    v.add_argument("--shards", type=int)
    v.add_argument("--shard", type=int)
    v.add_argument("--range", type=_range, dest="index_range", metavar="LO..HI")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--long-running", action="store_true", help="permit n=5 (sliced runs only)")

    g = sub.add_parser("generate", parents=child, help="emit datasets")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--fixture", choices=sorted(fixtures()))
    src.add_argument("--from-preference", metavar="RANKING", help='e.g. "a>b>k" or "a>b=k"')
    src.add_argument("--n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--range", type=_range, dest="index_range", metavar="LO..HI",
                   help="enumerate correspondences by index instead of sampling")
    g.add_argument("--out", type=Path, help="write one file per dataset into this directory")
    return parser


def _emit(doc: dict[str, Any], fmt: str, text: str | None = None) -> None:
    if fmt == "text" and text is not None:
        print(text)
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))


def cmd_analyze(args: argparse.Namespace) -> int:
    if args.path == "-":
        from .core import ingest_dataset

        data = ingest_dataset(sys.stdin.read())
    else:
        data = load_dataset(args.path)
    report = analyze(data, completion=args.complete, verbose=args.verbose)
    _emit(report.to_dict(), args.fmt, report.to_text())
    return EXIT_OK


def _verify_text(doc: dict[str, Any]) -> str:
    lines = [
        f"claim {doc['claim']} at n={doc['n']}: {'VERIFIED' if doc['verified'] else 'FAILED'}",
        f"  {doc['statement']}",
        f"  instances: {doc['instances']}  range: {doc['range'][0]}..{doc['range'][1]}"
        f"  elapsed: {doc['elapsed_seconds']}s",
    ]
    for ce in doc["counterexamples"]:
        lines.append(f"  counterexample #{ce['index']}: {json.dumps(ce['correspondence'])}")
    return "\n".join(lines)


def cmd_verify(args: argparse.Namespace) -> int:
    if args.shard is not None and args.shards is None:
        raise UsageError("--shard requires --shards")
    lo, hi = args.index_range if args.index_range else (None, None)
    report = verify(
        args.claim,
        args.n,
        shards=args.shards,
        shard=args.shard,
        lo=lo,
        hi=hi,
        workers=args.workers,
        allow_large=args.long_running,
    )
    doc = report.to_dict()
    _emit(doc, args.fmt, _verify_text(doc))
    return EXIT_OK if report.verified else EXIT_COUNTEREXAMPLE


def cmd_generate(args: argparse.Namespace) -> int:
    if args.fixture:
        datasets = [fixtures()[args.fixture].dataset]
    elif args.from_preference:
        universe, weak = parse_ranking(args.from_preference)
        datasets = [from_preference(strict_from_weak(weak), universe)]
    elif args.index_range:
        lo, hi = args.index_range
        datasets = list(enumerate_all(args.n, lo, hi))
    else:
        datasets = list(iter_sample(args.n, args.count, args.seed))
    if args.complete:
        datasets = [complete(d, args.complete) for d in datasets]
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        for k, d in enumerate(datasets):
            (args.out / f"dataset-{k:04d}.json").write_text(dumps_dataset(d) + "\n")
        return EXIT_OK
    if args.fmt == "text":
        for d in datasets:
            print(repr(d))
    elif len(datasets) == 1:
        print(dumps_dataset(datasets[0]))
    else:
        for d in datasets:
            print(json.dumps(dataset_to_dict(d)))
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify, "generate": cmd_generate}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except ChoiceDataError as exc:
        print(json.dumps(exc.to_dict()))
        return EXIT_USAGE
    except ValueError as exc:
        print(json.dumps({"error": "invalid-argument", "message": str(exc)}))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
