"""Command-line front end.

One subcommand per analysis plus the sweep harness.  Matrices arrive inline
("110;010;001") or through --file (rows on separate lines).  Exit codes:
0 success, 1 parse or usage error, 2 precondition violated, 3 a verification
sweep found counterexamples.  JSON mode renders every integer as a decimal
string so arbitrary-precision values survive any consumer.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import classify_report, dimension, spectral_radius
from .equivalence import are_equivalent, canonical_form
from .errors import MatrixFormatError, PreconditionError
from .harness import CLAIMS, enumerate_matrices, run_claim
from .matrices import BitMatrix, norm_sequence
from .words import admissible_words, infinite_word_census, word_to_text


class _CliUsage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad arguments; route through the
    # documented usage code instead
    def error(self, message):
        raise _CliUsage(message)


def _add_matrix_args(sub, count=1):
    sub.add_argument("matrix", nargs="*", default=[],
                     help="matrix text, rows of 0/1 joined by ';'")
    sub.add_argument("--file", action="append", default=[],
                     help="read a matrix from a file (rows on lines); "
                          "may repeat")
    sub.set_defaults(matrix_count=count)


def _add_format(sub):
    sub.add_argument("--format", choices=("text", "json"), default="text")


def _build_parser() -> _Parser:
    parser = _Parser(prog="matgrowth",
                     description="growth of powers of 0/1 matrices: "
                                 "classification, word spaces, sweeps")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("classify", help="growth class with certificate")
    _add_matrix_args(p)
    _add_format(p)
    p.set_defaults(handler=_cmd_classify)

    p = subs.add_parser("norms", help="entry sums of the first powers")
    _add_matrix_args(p)
    _add_format(p)
    p.add_argument("--n", type=int, default=12, help="how many powers")
    p.set_defaults(handler=_cmd_norms)

    p = subs.add_parser("words", help="admissible words of a fixed length")
    _add_matrix_args(p)
    _add_format(p)
    p.add_argument("--length", type=int, default=12)
    p.add_argument("--cap", type=int, default=10 ** 6,
                   help="refuse to materialize more words than this")
    p.add_argument("--head", type=int, default=None,
                   help="keep words starting at this letter")
    p.add_argument("--tail", type=int, default=None,
                   help="keep words ending at this letter")
    p.set_defaults(handler=_cmd_words)

    p = subs.add_parser("infinite", help="census of the infinite word space")
    _add_matrix_args(p)
    _add_format(p)
    p.set_defaults(handler=_cmd_infinite)

    p = subs.add_parser("canonical", help="least relabeled form and witness")
    _add_matrix_args(p)
    _add_format(p)
    p.set_defaults(handler=_cmd_canonical)

    p = subs.add_parser("equiv", help="are two matrices relabelings of "
                                      "each other")
    _add_matrix_args(p, count=2)
    _add_format(p)
    p.set_defaults(handler=_cmd_equiv)

    p = subs.add_parser("dim", help="word-space dimension and spectral data")
    _add_matrix_args(p)
    _add_format(p)
    p.set_defaults(handler=_cmd_dim)

    p = subs.add_parser("verify", help="run one exhaustive claim sweep")
    _add_format(p)
    p.add_argument("--claim", required=True, choices=sorted(CLAIMS))
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--max-b", type=int, default=None, dest="max_b")
    p.add_argument("--max-n", type=int, default=None, dest="max_n")
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--allow-b5", action="store_true", dest="allow_b5")
    p.set_defaults(handler=_cmd_verify)

    p = subs.add_parser("gen", help="stream an enumerated population")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--filter", default="all-nonzero",
                   choices=("all-nonzero", "p1", "p1-and-p2"))
    p.set_defaults(handler=_cmd_gen)

    return parser


def _collect_matrices(args) -> list[BitMatrix]:
    texts = list(args.matrix)
    for path in args.file:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                texts.append(fh.read())
        except OSError as e:
            raise MatrixFormatError(f"cannot read {path}: {e}") from e
    if len(texts) != args.matrix_count:
        raise _CliUsage(
            f"expected {args.matrix_count} matrix argument(s) "
            f"(inline or --file), got {len(texts)}")
    return [BitMatrix.from_text(t) for t in texts]


def _print_json(obj):
    print(json.dumps(obj, sort_keys=True))


def _cmd_classify(args) -> int:
    (m,) = _collect_matrices(args)
    report = classify_report(m)
    if args.format == "json":
        _print_json(report)
    else:
        print(f"class: {report['class']}")
        cert = " ".join(f"{k}={v}" for k, v in sorted(report["certificate"].items()))
        print(f"certificate: {cert}")
        if "sup_norm" in report:
            print(f"sup-norm: {report['sup_norm']}")
        print(f"dimension: {report['dimension']}")
    return 0


def _cmd_norms(args) -> int:
    (m,) = _collect_matrices(args)
    if args.n < 1:
        raise PreconditionError(f"--n must be >= 1, got {args.n}")
    seq = norm_sequence(m, args.n)
    if args.format == "json":
        _print_json({"norms": [str(x) for x in seq]})
    else:
        print(" ".join(str(x) for x in seq))
    return 0


def _cmd_words(args) -> int:
    (m,) = _collect_matrices(args)
    if args.length < 1:
        raise PreconditionError(f"--length must be >= 1, got {args.length}")
    for side in (args.head, args.tail):
        if side is not None and not 1 <= side <= m.b:
            raise PreconditionError(f"letter {side} out of range 1..{m.b}")
    found = admissible_words(m, args.length, cap=args.cap)
    if args.head is not None:
        found = [w for w in found if w[0] == args.head]
    if args.tail is not None:
        found = [w for w in found if w[-1] == args.tail]
    if args.format == "json":
        _print_json({"count": str(len(found)),
                     "words": [word_to_text(w, m.b) for w in found]})
    else:
        for w in found:
            print(word_to_text(w, m.b))
    return 0


def _cmd_infinite(args) -> int:
    (m,) = _collect_matrices(args)
    census = infinite_word_census(m)
    if args.format == "json":
        _print_json(census.to_json_obj(m.b))
    else:
        print(f"kind: {census.kind}")
        if census.descriptors is not None:
            print(f"count: {len(census.descriptors)}")
            for d in census.descriptors:
                print(d.to_text(m.b))
    return 0


def _cmd_canonical(args) -> int:
    (m,) = _collect_matrices(args)
    form = canonical_form(m)
    if args.format == "json":
        _print_json({"matrix": form.matrix.to_text(),
                     "witness": [str(x) for x in form.witness.images]})
    else:
        print(form.matrix.to_text())
        print("witness: " + " ".join(str(x) for x in form.witness.images))
    return 0


def _cmd_equiv(args) -> int:
    first, second = _collect_matrices(args)
    flag = are_equivalent(first, second)
    if args.format == "json":
        _print_json({"equivalent": flag})
    else:
        print("equivalent" if flag else "not equivalent")
    return 0


def _cmd_dim(args) -> int:
    (m,) = _collect_matrices(args)
    rho = spectral_radius(m)
    dim = dimension(m)
    if args.format == "json":
        _print_json({
            "dimension": dim.value,
            "error_bound": dim.error_bound,
            "empty_word_space": dim.empty_word_space,
            "radius": rho.value,
            "radius_error_bound": rho.error_bound,
            "radius_method": rho.method,
        })
    else:
        print(f"dimension: {dim.value} (error <= {dim.error_bound})")
        print(f"radius: {rho.value} (error <= {rho.error_bound}, "
              f"{rho.method})")
        if dim.empty_word_space:
            print("word space is empty")
    return 0


def _cmd_verify(args) -> int:
    kwargs = {}
    for name in ("b", "horizon", "max_b", "max_n", "sample", "seed", "workers"):
        value = getattr(args, name)
        if value is not None:
            kwargs[name] = value
    if args.allow_b5:
        kwargs["allow_b5"] = True
    try:
        report = run_claim(args.claim, **kwargs)
    except TypeError as e:
        # a flag the chosen claim does not take
        raise _CliUsage(str(e)) from e
    if args.format == "json":
        _print_json(report.to_json_obj())
    else:
        print(f"claim: {report.claim_id}")
        print(f"population: {report.population}")
        print(f"passes: {report.passes}")
        print(f"counterexamples: {len(report.counterexamples)}")
        for text, detail in report.counterexamples:
            print(f"  {text}  {detail}")
        print(f"elapsed_ms: {report.elapsed_ms:.1f}")
    return 0 if report.ok else 3


def _cmd_gen(args) -> int:
    for m in enumerate_matrices(args.b, args.filter):
        print(m.to_text())
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _CliUsage as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except SystemExit as e:
        # argparse handles --help by exiting; keep in-process callers safe
        return int(e.code or 0)
    try:
        return args.handler(args)
    except _CliUsage as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except MatrixFormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (PreconditionError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
