"""Command line front end.

Subcommands::

    potentsplit decompose     --input A.json [--out D.json]
    potentsplit verify        --input D.json
    potentsplit rcf           --input A.json [--out R.json]
    potentsplit oracle-search --input A.json --max-nil-index M [--out S.json]
    potentsplit sweep         --ring "Z/4" --n 2 [--jobs J]

Exit codes: 0 success, 1 failed verification or sweep, 2 malformed input,
3 oracle search found nothing, 4 operation budget exceeded.
"""

import argparse
import sys

from .canonical import primary_rcf
from .decompose import decompose
from .documents import (
    MalformedDocument,
    decomposition_from_doc,
    decomposition_to_doc,
    dump_json,
    load_json,
    matrix_from_doc,
    rcf_to_doc,
)
from .errors import BudgetExceeded, RingSpecError, UnsupportedRing
from .oracle import DEFAULT_BUDGET, exhaustive_decomposition_search, sweep, verify_decomposition
from .rings import parse_ring

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_MALFORMED = 2
EXIT_NOT_FOUND = 3
EXIT_BUDGET = 4


def _emit(args, doc):
    """Write the document; return the stream to use for the summary."""
    if args.out is None:
        return sys.stdout
    text = dump_json(doc)
    if args.out == "-":
        sys.stdout.write(text)
        return sys.stderr
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    return sys.stdout


def _cmd_decompose(args):
    A = matrix_from_doc(load_json(args.input))
    D = decompose(A)
    out = _emit(args, decomposition_to_doc(D))
    status = "passed" if D.passed else "FAILED"
    print(f"{A.n}x{A.n} over {A.ring}: P^{D.exponent} = P, guarantee {D.guarantee.value}, certificate {status}", file=out)
    return EXIT_OK if D.passed else EXIT_FAILED


def _cmd_verify(args):
    A, P, N, exponent, guarantee = decomposition_from_doc(load_json(args.input))
    cert = verify_decomposition(A, P, N, guarantee, exponent)
    for name, ok in cert.checks.items():
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
    return EXIT_OK if cert.passed else EXIT_FAILED


def _cmd_rcf(args):
    A = matrix_from_doc(load_json(args.input))
    if not A.ring.is_field:
        raise UnsupportedRing(f"rational canonical form needs a field, got {A.ring}")
    rcf = primary_rcf(A)
    doc = rcf_to_doc(A, rcf)
    out = _emit(args, doc)
    print("elementary divisors: " + ", ".join(b["divisor"] for b in doc["blocks"]), file=out)
    return EXIT_OK


def _cmd_oracle(args):
    A = matrix_from_doc(load_json(args.input))
    rep = exhaustive_decomposition_search(A, args.max_nil_index, args.budget)
    out = _emit(args, rep.to_doc())
    verdict = "found" if rep.found is not None else "not found"
    print(f"{verdict} after {rep.search_size} candidates with N^{args.max_nil_index} = 0", file=out)
    return EXIT_OK if rep.found is not None else EXIT_NOT_FOUND


def _cmd_sweep(args):
    ring = parse_ring(args.ring)
    summary = sweep(ring, args.n, budget=args.budget, jobs=args.jobs)
    doc = {"ring": str(ring), "n": args.n, **summary}
    out = _emit(args, doc)
    print(
        f"{summary['total']} matrices, {summary['decomposed']} decomposed, "
        f"{summary['certificate_failures']} certificate failures",
        file=out,
    )
    return EXIT_OK if summary["certificate_failures"] == 0 else EXIT_FAILED


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser():
    parser = argparse.ArgumentParser(
        prog="potentsplit",
        description="Potent plus square-zero decompositions of matrices over finite rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a matrix document")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("verify", help="re-check a decomposition document")
    p.add_argument("--input", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("rcf", help="primary rational canonical form over a field")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_rcf)

    p = sub.add_parser("oracle-search", help="exhaustive potent + nilpotent search")
    p.add_argument("--input", required=True)
    p.add_argument("--max-nil-index", type=_positive, default=2)
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("sweep", help="decompose and verify every n x n matrix")
    p.add_argument("--ring", required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (MalformedDocument, RingSpecError, UnsupportedRing) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
