"""Command-line interface.

Every subcommand prints a short human summary, or with ``--json`` a
report holding the tool version, a digest of the input file, the options
used, the results and a separate ``timing`` block.  Apart from ``timing``
the report is a pure function of the input and the options.

Exit codes: 0 for definite verdicts, 1 for input errors, 2 when a verdict
is inconclusive or a budget ran out, 3 when the implication suite finds a
violation.
"""

import argparse
import hashlib
import json
import math
import sys
import time

from . import __version__
from .bridges import WordFibre, bridge_exists, depth, routing_set, t_depth
from .class_closing import (DEFAULT_STATE_BUDGET, check_class_closing,
                            closing_delay_by_enumeration)
from .class_degree import class_degree
from .ctc import (check_constant_class_to_one, check_continuing, image_is_sft,
                  implication_suite, multiplicity_shell)
from .errors import BudgetExceeded, FactorCodeError, InstanceTooLarge, WordError
from .presentation import export_dot, format_presentation, parse_presentation
from .randomgen import RandomSpec, random_presentation
from .subset_sink import aft_witness, language_agrees, subset_construction, \
    verify_left_closing_delay

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _global_flags(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true",
                        default=default if suppress else False, help="print the JSON report")
    parser.add_argument("--threads", type=int, default=default if suppress else 1,
                        help="accepted for compatibility; analyses run single-threaded")
    parser.add_argument("--budget", type=int, default=default if suppress else DEFAULT_STATE_BUDGET,
                        help="state budget for every automaton exploration")


def build_parser():
    parser = _Parser(prog="factorcodes", description="Analyse 1-block factor codes "
                     "given as edge-labelled graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help, file=True):
        sp = sub.add_parser(name, help=help, parents=[common])
        if file:
            sp.add_argument("file", help="presentation file")
        return sp

    cmd("validate", "parse and validate a presentation")
    sp = cmd("depth", "depth and t-depth of a word")
    sp.add_argument("--word", required=True, help="comma-separated labels, or abcd shorthand")
    sp.add_argument("--cutoff", type=int, default=20, help="clique-cover size cutoff")
    sp = cmd("bridges", "bridges between two paths, or a routing set")
    sp.add_argument("--from", dest="source", required=True, help="edge ids of the first path")
    sp.add_argument("--to", dest="target", help="edge ids of the second path")
    sp.add_argument("--position", type=int, help="1-based interior position for a routing set")
    sp = cmd("class-degree", "class degree with a certificate")
    sp.add_argument("--max-len", type=int, default=8, help="word length for the fallback scan")
    sp = cmd("closing", "right/left class-closing")
    sp.add_argument("--side", choices=("right", "left", "both"), default="both")
    sp.add_argument("--max-delay", type=int, default=6,
                    help="cross-check delays up to this bound by path enumeration")
    sp = cmd("subset", "subset-construction cover and its sink")
    sp.add_argument("--seed", help="seed vertex name (default: the first vertex)")
    sp.add_argument("--dot", help="write the sink cover as DOT to this file")
    sp = cmd("ctc", "constant-class-to-one")
    sp.add_argument("--horizon", type=int, default=8)
    sp = cmd("continuing", "right/left continuing")
    sp.add_argument("--side", choices=("right", "left", "both"), default="both")
    sp.add_argument("--max-retract", type=int, default=16)
    sp = cmd("image-sft", "is the image a shift of finite type")
    sp.add_argument("--horizon", type=int, default=12)
    sp = cmd("shell", "minimal depth-d words and the multiplicity shell")
    sp.add_argument("--side", choices=("right", "left"), default="right")
    sp.add_argument("--horizon", type=int, default=6)
    sp = cmd("check-all", "run every analysis and the implication checks")
    sp.add_argument("--horizon", type=int, default=8)
    sp.add_argument("--max-retract", type=int, default=16)
    sp = cmd("export-dot", "DOT rendering of a presentation")
    sp.add_argument("--out", help="output file (default: standard output)")
    sp = cmd("random", "generate a random irreducible presentation", file=False)
    sp.add_argument("--vertices", type=int, required=True)
    sp.add_argument("--edges", type=int, required=True)
    sp.add_argument("--labels", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="output file (default: standard output)")
    return parser


def _parse_path(p, text):
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise WordError("empty path")
    return tuple(p.edge_id(t) for t in tokens)


def _sides(side):
    return ("right", "left") if side == "both" else (side,)


def _json_value(v):
    return None if v == math.inf else v


# -- subcommands -----------------------------------------------------------------------
# each returns (results, summary lines, definite)


def _validate(p, args):
    res = {"vertices": p.n_vertices, "edges": p.n_edges, "labels": list(p.label_names)}
    return res, [f"valid: {p.n_vertices} vertices, {p.n_edges} edges, "
                 f"{p.n_labels} labels"], True


def _depth(p, args):
    word = p.parse_word(args.word)
    fibre = WordFibre(p, word)
    d = depth(p, word, fibre)
    tau, part = t_depth(p, word, fibre, args.cutoff)
    res = {
        "word": p.word_text(word),
        "preimages": len(fibre.paths),
        "depth": _json_value(d.value),
        "depth_infinite": d.infinite,
        "certificate": d.certificate.to_json(p) if d.certificate else None,
        "t_depth": tau,
        "partition": part.to_json(p),
    }
    shown = "infinite" if d.infinite else d.value
    return res, [f"word {p.word_text(word)}: depth {shown}, t-depth {tau}"], True


def _bridges(p, args):
    u = p.check_path(_parse_path(p, args.source))
    res, lines = {"from": [p.edge_names[e] for e in u]}, []
    if args.target:
        w = p.check_path(_parse_path(p, args.target))
        there, back = bridge_exists(p, u, w), bridge_exists(p, w, u)
        res["to"] = [p.edge_names[e] for e in w]
        res["bridge"] = [p.edge_names[e] for e in there] if there else None
        res["reverse_bridge"] = [p.edge_names[e] for e in back] if back else None
        lines.append(f"bridge: {p.path_text(there) if there else 'none'}")
        lines.append(f"reverse bridge: {p.path_text(back) if back else 'none'}")
    if args.position is not None:
        rs = sorted(routing_set(p, u, args.position))
        res["position"] = args.position
        res["routing_set"] = [p.edge_names[e] for e in rs]
        lines.append(f"routing set at {args.position}: {{{', '.join(p.edge_names[e] for e in rs)}}}")
    if len(res) == 1:
        raise UsageError("bridges needs --to and/or --position")
    return res, lines, True


def _class_degree(p, args):
    r = class_degree(p, args.max_len, budget=args.budget)
    line = f"class degree {r.value} ({r.method}, {'certified' if r.certified else 'horizon-limited'})"
    return r.to_json(p), [line, f"witness word: {p.word_text(r.word)}"], r.certified


def _closing(p, args):
    res, lines = {}, []
    for side in _sides(args.side):
        v = check_class_closing(p, side, args.budget)
        out = v.to_json(p)
        if side == "right":
            try:
                enum = closing_delay_by_enumeration(p, args.max_delay)
            except InstanceTooLarge:
                enum = "too large"
            out["enumeration_delay"] = enum
            out["max_delay"] = args.max_delay
        res[side] = out
        if v.closing:
            lines.append(f"{side}: class-closing, delay {v.delay}")
        else:
            lines.append(f"{side}: not class-closing; image {v.image.render(p.label_names)}")
    return res, lines, True


def _subset(p, args):
    seed = p.vertex_id(args.seed) if args.seed else 0
    cover = subset_construction(p, seed, args.budget)
    res = cover.to_json()
    res["language_agrees_to_length_8"] = language_agrees(p, cover, 8)
    res["language_check"] = "sampling"
    verdicts = [check_class_closing(p, s, args.budget) for s in ("right", "left")]
    aft = aft_witness(p, seed, verdicts, args.budget)
    res["aft_witness"] = aft.to_json() if aft else None
    res["left_closing_delay_0"] = verify_left_closing_delay(cover, 0)[0]
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(export_dot(cover.cover, "sink"))
    lines = [f"sink: {' '.join(cover.sink_sets())}",
             f"almost-finite-type witness: {'present' if aft else 'absent'}"]
    return res, lines, True


def _ctc(p, args):
    v = check_constant_class_to_one(p, args.horizon, budget=args.budget)
    shown = {True: "true", False: "false", None: "inconclusive"}[v.constant]
    lines = [f"constant-class-to-one: {shown} (d = {v.d}, N = {v.N})"] + \
        [f"  {r}" for r in v.reasons]
    return v.to_json(), lines, v.constant is not None


def _continuing(p, args):
    res, lines, definite = {}, [], True
    for side in _sides(args.side):
        v = check_continuing(p, side, args.max_retract, args.budget)
        res[side] = v.to_json(p)
        definite &= v.status != "inconclusive"
        extra = f", retract {v.retract}" if v.status == "continuing" else ""
        lines.append(f"{side}: {v.status}{extra}")
    return res, lines, definite


def _image_sft(p, args):
    v = image_is_sft(p, args.horizon, budget=args.budget)
    line = f"image: {v.status}" + (f", step {v.step}" if v.status == "sft" else "")
    return v.to_json(p), [line], v.status != "inconclusive"


def _shell(p, args):
    s = multiplicity_shell(p, args.side, args.horizon)
    words = " ".join(p.word_text(w) for w in s.forbidden_words)
    lines = [f"{len(s.forbidden_words)} minimal depth-{s.d} words: {words}"]
    if s.shell_presentation is not None:
        lines.append(f"shell presentation: {s.shell_presentation.n_vertices} vertices, "
                     f"{s.shell_presentation.n_edges} edges")
    else:
        lines.append(f"{args.side} side is not class-closing; no shell presentation")
    return s.to_json(p), lines, True


def _check_all(p, args):
    report, violations = implication_suite(p, args.horizon, args.max_retract, args.budget)
    report["violations"] = violations
    rows = report["implications"]
    lines = [f"{r['status']:>8}  {r['name']}" for r in rows]
    lines.append(f"violations: {len(violations)}")
    return report, lines, not any(r["status"] == "skipped" for r in rows)


def _export_dot(p, args):
    text = export_dot(p)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return {"dot": text}, ([f"wrote {args.out}"] if args.out else [text.rstrip("\n")]), True


HANDLERS = {
    "validate": _validate,
    "depth": _depth,
    "bridges": _bridges,
    "class-degree": _class_degree,
    "closing": _closing,
    "subset": _subset,
    "ctc": _ctc,
    "continuing": _continuing,
    "image-sft": _image_sft,
    "shell": _shell,
    "check-all": _check_all,
    "export-dot": _export_dot,
}


def _random(args):
    p = random_presentation(RandomSpec(args.vertices, args.edges, args.labels, args.seed))
    text = format_presentation(p)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return {"presentation": text}, ([f"wrote {args.out}"] if args.out else [text.rstrip("\n")]), True


def run(argv=None):
    """Execute one command; returns ``(exit code, report or None)``."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT, None
    options = {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "command", "file")}
    report = {"tool": "factorcodes", "version": __version__, "command": args.command,
              "options": options}
    start = time.perf_counter()
    try:
        if args.command == "random":
            results, lines, definite = _random(args)
        else:
            with open(args.file, "rb") as fh:
                data = fh.read()
            report["input"] = {"file": args.file, "sha256": hashlib.sha256(data).hexdigest()}
            p = parse_presentation(data.decode("utf-8"))
            results, lines, definite = HANDLERS[args.command](p, args)
        code = EXIT_OK if definite else EXIT_INCONCLUSIVE
        if args.command == "check-all" and results["violations"]:
            code = EXIT_VIOLATION
        report["status"] = "ok" if definite else "inconclusive"
        report["results"] = results
    except (BudgetExceeded, InstanceTooLarge) as exc:
        code, lines = EXIT_INCONCLUSIVE, [f"inconclusive: {exc}"]
        report["status"] = "budget_exhausted"
        report["error"] = str(exc)
    except (FactorCodeError, UsageError, OSError, UnicodeDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT, None
    report["exit_code"] = code
    report["timing"] = {"wall_seconds": round(time.perf_counter() - start, 6)}
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return code, report


def strip_timing(report):
    """Copy of a report without the fields that legitimately vary between runs."""
    return {k: v for k, v in report.items() if k != "timing"}


def main(argv=None):
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
