"""Command line front end.

Exit codes: 0 success (for ``member``: the word is a member), 1 negative
answer (not a member, not heapable), 2 usage error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys

from .core import ResourceLimitError, SignedPermutation, format_word, parse_word, sign_char
from .heaps import (
    NotHeapable,
    derive_sign,
    forest_to_dot,
    forest_to_json,
    forest_to_word,
    greedy_decompose,
)
from .multiplicity import (
    literal_multiplicity,
    multiplicity,
    predecessors,
    scaling_exact,
    scaling_montecarlo,
)
from .process import enumerate_words, sample_trajectory, token_key
from .recognizer import (
    StrictnessMode,
    automata_member,
    build_a1,
    build_a2,
    is_member,
    strictness_report,
)

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--k", type=_positive, default=2, help="arity (default 2)")
    shared.add_argument(
        "--mode",
        choices=[m.value for m in StrictnessMode],
        default=StrictnessMode.NON_STRICT.value,
    )
    shared.add_argument("--seed", type=int, default=0)
    shared.add_argument("--out", help="write output to this file instead of stdout")
    shared.add_argument("--format", choices=["text", "json"], default="text")

    parser = argparse.ArgumentParser(
        prog="signed-hammersley",
        description="Signed Hammersley process: membership, multiplicities, heap decompositions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("member", parents=[shared], help="decide membership of a word")
    p.add_argument("word")
    p.add_argument("--automata", action="store_true", help="decide with the counter automata")

    p = sub.add_parser("mult", parents=[shared], help="multiplicity of a word")
    p.add_argument("word")
    p.add_argument("--literal", action="store_true", help="use the literal reference recursion")

    p = sub.add_parser("enumerate", parents=[shared], help="all words of length n with counts")
    p.add_argument("--n", type=_nonnegative, required=True)

    p = sub.add_parser("simulate", parents=[shared], help="random trajectory from the empty word")
    p.add_argument("--n", type=_nonnegative, required=True)

    p = sub.add_parser("decompose", parents=[shared], help="greedy heap decomposition")
    p.add_argument("--perm", required=True, help="comma-separated distinct integers")
    p.add_argument("--signs", required=True, help="comma-separated + and -")
    p.add_argument("--dot", help="also write the forest as DOT to this file")

    p = sub.add_parser("derive-sign", parents=[shared], help="signing that keeps a heap legal")
    p.add_argument("--perm", required=True)

    p = sub.add_parser("scaling", parents=[shared], help="expected greedy tree count")
    p.add_argument("--n", type=_nonnegative, required=True)
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument("--exact", action="store_true")
    how.add_argument("--samples", type=_positive)

    p = sub.add_parser("predecessors", parents=[shared], help="one-step pre-images of a word")
    p.add_argument("word")

    p = sub.add_parser("automaton", parents=[shared], help="export a counter automaton as JSON")
    p.add_argument("--which", choices=["a1", "a2"], default="a1")

    p = sub.add_parser("strictness-report", parents=[shared], help="modes vs. the forward process")
    p.add_argument("--n", type=_nonnegative, required=True)
    return parser


def _word(args):
    try:
        return parse_word(args.word, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, out, text: str, payload: dict) -> None:
    if args.format == "json":
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def _cmd_member(args, out) -> int:
    w = _word(args)
    mode = StrictnessMode.parse(args.mode)
    result = automata_member(w, mode) if args.automata else is_member(w, args.k, mode)
    _emit(
        args,
        out,
        "member" if result else "not member",
        {"word": format_word(w), "k": args.k, "mode": mode.value, "member": result},
    )
    return EXIT_OK if result else EXIT_NO


def _cmd_mult(args, out) -> int:
    w = _word(args)
    value = literal_multiplicity(w) if args.literal else multiplicity(w)
    _emit(args, out, str(value), {"word": format_word(w), "k": args.k, "multiplicity": str(value)})
    return EXIT_OK


def _cmd_enumerate(args, out) -> int:
    table = enumerate_words(args.k, args.n)
    ordered = sorted(table, key=token_key)
    if args.format == "json":
        payload = {
            "k": args.k,
            "n": args.n,
            "words": [{"word": format_word(w), "multiplicity": str(table[w])} for w in ordered],
        }
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        for w in ordered:
            out.write(f"{format_word(w)}\t{table[w]}\n")
    return EXIT_OK


def _cmd_simulate(args, out) -> int:
    words = sample_trajectory(args.k, args.n, args.seed)
    if args.format == "json":
        payload = {
            "k": args.k,
            "n": args.n,
            "seed": args.seed,
            "trajectory": [format_word(w) for w in words],
        }
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        for i, w in enumerate(words):
            out.write(f"{i}\t{format_word(w)}\n")
    return EXIT_OK


def _permutation(args) -> SignedPermutation:
    try:
        return SignedPermutation.parse(args.perm, args.signs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_decompose(args, out) -> int:
    p = _permutation(args)
    forest, trees = greedy_decompose(p, args.k)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(forest_to_dot(forest))
    slot_word = format_word(forest_to_word(forest))
    if args.format == "json":
        payload = {"k": args.k, "trees": trees, "word": slot_word, "forest": forest_to_json(forest)}
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(f"trees: {trees}\n")
        out.write(f"word: {slot_word}\n")
    return EXIT_OK


def _cmd_derive_sign(args, out) -> int:
    try:
        sigma = [int(t) for t in args.perm.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    perm_text = ",".join(str(v) for v in sigma)
    try:
        signs = derive_sign(sigma, args.k)
    except NotHeapable:
        _emit(args, out, "not heapable", {"k": args.k, "perm": perm_text, "heapable": False})
        return EXIT_NO
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = ",".join(sign_char(s) for s in signs)
    _emit(args, out, text, {"k": args.k, "perm": perm_text, "heapable": True, "signs": text})
    return EXIT_OK


def _cmd_scaling(args, out) -> int:
    if args.exact:
        z = scaling_exact(args.k, args.n)
        text = f"{z.numerator}/{z.denominator}"
        _emit(args, out, text, {"k": args.k, "n": args.n, "Z_exact": text})
    else:
        est = scaling_montecarlo(args.k, args.n, args.samples, args.seed)
        mean = float(est.mean)
        _emit(
            args,
            out,
            f"{mean:.6f} +- {est.stderr:.6f}",
            {
                "k": args.k,
                "n": args.n,
                "Z_mc": mean,
                "stderr": est.stderr,
                "samples": est.samples,
                "seed": est.seed,
            },
        )
    return EXIT_OK


def _cmd_predecessors(args, out) -> int:
    w = _word(args)
    if len(w) == 0:
        raise UsageError("the empty word has no predecessors")
    preds = predecessors(w)
    if args.format == "json":
        payload = {
            "word": format_word(w),
            "k": args.k,
            "predecessors": [
                {
                    "word": format_word(p.word),
                    "position": p.event.position,
                    "polarity": sign_char(p.event.polarity),
                    "kill_position": p.kill_position,
                }
                for p in preds
            ],
        }
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        for p in preds:
            kill = "-" if p.kill_position is None else str(p.kill_position)
            out.write(f"{format_word(p.word)}\t{p.event}\tkill={kill}\n")
    return EXIT_OK


def _cmd_automaton(args, out) -> int:
    build = build_a1 if args.which == "a1" else build_a2
    out.write(build(args.k, StrictnessMode.parse(args.mode)).dumps() + "\n")
    return EXIT_OK


def _cmd_strictness_report(args, out) -> int:
    report = strictness_report(args.k, args.n)
    if args.format == "json":
        payload = {
            "k": args.k,
            "n": args.n,
            "differences": {
                mode.value: [
                    {"word": text, "mode": in_mode, "process": in_process}
                    for text, in_mode, in_process in diffs
                ]
                for mode, diffs in report.differences.items()
            },
        }
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write("\n".join(report.lines()) + "\n")
    return EXIT_OK


COMMANDS = {
    "member": _cmd_member,
    "mult": _cmd_mult,
    "enumerate": _cmd_enumerate,
    "simulate": _cmd_simulate,
    "decompose": _cmd_decompose,
    "derive-sign": _cmd_derive_sign,
    "scaling": _cmd_scaling,
    "predecessors": _cmd_predecessors,
    "automaton": _cmd_automaton,
    "strictness-report": _cmd_strictness_report,
}


def _glue_sign_lists(argv: list[str]) -> list[str]:
    # "--signs -,+,-" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for token in it:
        if token == "--signs":
            value = next(it, None)
            out.append(token if value is None else f"--signs={value}")
        else:
            out.append(token)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_sign_lists(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    buffer = io.StringIO()
    try:
        code = COMMANDS[args.command](args, buffer)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buffer.getvalue())
    else:
        with contextlib.suppress(BrokenPipeError):
            sys.stdout.write(buffer.getvalue())
    return code


def entry() -> None:
    sys.exit(main())
