"""Command-line interface.

Subcommands: build, act, section, trivial, equal, abelianize, wreath,
schreier, spine, verify.  Exit codes: 0 for success / a true verdict /
all checks passing, 1 for a false verdict / a failing check / resource
limits, 2 for usage errors.

Tree words on the command line are space- or comma-separated decimal
integers (negative letters allowed); group words use the text form
``a1 b1^-1``.  All commands accept ``--config FILE`` (JSON); explicit
flags override the file.  The vertex cap resolves in the order flag,
``ZC_VERTEX_CAP`` environment variable, config file, default.
"""

import argparse
import json
import os
import sys

from .automaton import (
    KneadingError,
    EndSpec,
    ZAutomaton,
    automaton_to_json,
    build_kneading,
    format_tree_word,
    load_automaton,
    parse_tree_word,
)
from .schreier import (
    DEFAULT_VERTEX_CAP,
    VertexCapExceeded,
    ball,
    ball_to_dot,
    ball_to_json_obj,
    label_name,
    leaving_edges,
    spine,
)
from .verify import (
    DEFAULT_CONJUGATION_CAP,
    DEFAULT_DEPTH,
    run_all,
    verify_abelianization,
    verify_commutator_section,
    verify_kneading_shape,
    verify_level_transitive_window,
    verify_residual_witness,
    verify_self_replicating,
    verify_wreath_surjection,
)
from .words import WordParseError

CHECK_NAMES = (
    "kneading-shape",
    "abelianization",
    "self-replicating",
    "level-transitive",
    "commutator-section",
    "wreath-surjection",
    "residual-witness",
)


def _add_common(parser):
    parser.add_argument("--automaton", "-a", metavar="FILE", help="automaton JSON file")
    parser.add_argument("--x", help="first kneading word, e.g. '0,5'")
    parser.add_argument("--y", help="second kneading word, e.g. '1,2'")
    parser.add_argument("--config", metavar="FILE", help="JSON config; flags override it")


def _load_config(args) -> dict:
    if not getattr(args, "config", None):
        return {}
    with open(args.config, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise KneadingError("the config file must hold a JSON object")
    return cfg


def _automaton(args, cfg) -> ZAutomaton:
    if args.x or args.y:
        if not (args.x and args.y):
            raise KneadingError("--x and --y must be given together")
        return build_kneading(parse_tree_word(args.x), parse_tree_word(args.y))
    if args.automaton:
        return load_automaton(args.automaton)
    if "x" in cfg and "y" in cfg:
        return build_kneading(tuple(cfg["x"]), tuple(cfg["y"]))
    raise KneadingError("no automaton: use --automaton, --x/--y, or a config file")


def _vertex_cap(args, cfg) -> int:
    if getattr(args, "vertex_cap", None) is not None:
        return args.vertex_cap
    env = os.environ.get("ZC_VERTEX_CAP")
    if env:
        return int(env)
    return int(cfg.get("vertex_cap", DEFAULT_VERTEX_CAP))


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_build(args) -> int:
    cfg = _load_config(args)
    aut = _automaton(args, cfg)
    _emit(args, automaton_to_json(aut))
    return 0


def cmd_act(args) -> int:
    aut = _automaton(args, _load_config(args))
    image = aut.word(args.word).act(parse_tree_word(args.treeword))
    print(format_tree_word(image))
    return 0


def cmd_section(args) -> int:
    aut = _automaton(args, _load_config(args))
    print(aut.word(args.word).section(parse_tree_word(args.treeword)))
    return 0


def cmd_trivial(args) -> int:
    aut = _automaton(args, _load_config(args))
    cert = aut.word(args.word).triviality()
    if cert.trivial:
        print("trivial")
        return 0
    print(f'nontrivial witness="{format_tree_word(cert.witness)}" rho={cert.rho}')
    return 1


def cmd_equal(args) -> int:
    aut = _automaton(args, _load_config(args))
    if aut.word(args.word).equals(aut.word(args.other)):
        print("equal")
        return 0
    print("different")
    return 1


def cmd_abelianize(args) -> int:
    aut = _automaton(args, _load_config(args))
    print(" ".join(str(v) for v in aut.word(args.word).rho_vec()))
    return 0


def cmd_wreath(args) -> int:
    aut = _automaton(args, _load_config(args))
    print(json.dumps(aut.word(args.word).wreath_image().to_json_obj()))
    return 0


def cmd_spine(args) -> int:
    aut = _automaton(args, _load_config(args))
    sp = spine(aut, args.m)
    print(json.dumps({"m": sp.m, "w": list(sp.word), "c": sp.state.name}))
    return 0


def cmd_schreier(args) -> int:
    cfg = _load_config(args)
    aut = _automaton(args, cfg)
    cap = _vertex_cap(args, cfg)
    fmt = args.format or cfg.get("format", "json")
    end = EndSpec.parse(args.end) if args.end else None
    if end is not None:
        if args.m is None:
            raise KneadingError("--end needs --m (the window level)")
        center = parse_tree_word(args.center) if args.center else end.prefix(args.m)
        if len(center) != args.m:
            raise KneadingError("the center must be a level-m vertex")
    else:
        if args.center:
            center = parse_tree_word(args.center)
            if args.level is not None and args.level != len(center):
                raise KneadingError("--level contradicts the center length")
        elif args.level is not None:
            center = (0,) * args.level
        else:
            raise KneadingError("give --level or --end/--m (plus optionally --center)")
        if not center:
            raise KneadingError("the level must be positive")
    radius = args.radius if args.radius is not None else int(cfg.get("radius", 3))
    window = ball(aut, center, radius, cap)
    if fmt == "dot":
        _emit(args, ball_to_dot(window))
        return 0
    obj = ball_to_json_obj(window)
    if end is not None:
        leaving = leaving_edges(aut, end, args.m)
        obj["end"] = str(end)
        obj["m"] = args.m
        obj["leaving_edges"] = [
            {"vertex": list(v), "label": label_name(lab)}
            for v, lab in leaving.sorted_edges()
        ]
    _emit(args, json.dumps(obj, indent=2) + "\n")
    return 0


def cmd_verify(args) -> int:
    cfg = _load_config(args)
    aut = _automaton(args, cfg)
    cap = _vertex_cap(args, cfg)
    depth = args.depth if args.depth is not None else int(cfg.get("depth", DEFAULT_DEPTH))
    radius = args.radius if args.radius is not None else int(cfg.get("radius", 24))
    window = tuple(args.window) if args.window else (-2, 2)
    conj_cap = args.conj_cap if args.conj_cap is not None else DEFAULT_CONJUGATION_CAP
    deterministic = bool(cfg.get("deterministic", True)) and not args.real_ms

    checks = args.checks or ["all"]
    reports = []
    for name in checks:
        if name == "all":
            reports.extend(
                run_all(
                    aut,
                    depth=depth,
                    level=args.level_n,
                    window=window,
                    radius=radius,
                    conjugation_cap=conj_cap,
                    vertex_cap=cap,
                )
            )
        elif name == "kneading-shape":
            reports.append(verify_kneading_shape(aut, depth))
        elif name == "abelianization":
            reports.append(verify_abelianization(aut))
        elif name == "self-replicating":
            reports.append(verify_self_replicating(aut))
        elif name == "level-transitive":
            reports.append(
                verify_level_transitive_window(
                    aut, args.level_n, window[0], window[1], radius, cap
                )
            )
        elif name == "commutator-section":
            for s in aut.generators:
                for t in aut.generators:
                    reports.append(verify_commutator_section(aut, s, t))
        elif name == "wreath-surjection":
            reports.append(verify_wreath_surjection(aut))
        elif name == "residual-witness":
            reports.append(verify_residual_witness(aut, conjugation_cap=conj_cap))
        else:
            raise KneadingError(
                f"unknown check {name!r}; choose from {', '.join(CHECK_NAMES)} or 'all'"
            )
    for report in reports:
        print(json.dumps(report.to_json_obj(zero_ms=deterministic)))
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zcg",
        description="Kneading automaton groups over the integer alphabet: "
        "build automata, act on the tree, decide the word problem, window "
        "the Schreier graphs, and run the structure verifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write the automaton as JSON")
    _add_common(p)
    p.add_argument("--output", "-o", metavar="FILE")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("act", help="apply a group word to a tree word")
    _add_common(p)
    p.add_argument("word")
    p.add_argument("treeword")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("section", help="section of a group word at a vertex")
    _add_common(p)
    p.add_argument("word")
    p.add_argument("treeword")
    p.set_defaults(func=cmd_section)

    p = sub.add_parser("trivial", help="decide the word problem")
    _add_common(p)
    p.add_argument("word")
    p.set_defaults(func=cmd_trivial)

    p = sub.add_parser("equal", help="semantic equality of two words")
    _add_common(p)
    p.add_argument("word")
    p.add_argument("other")
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("abelianize", help="abelianization vector of a word")
    _add_common(p)
    p.add_argument("word")
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("wreath", help="lamp-and-shift image of a word")
    _add_common(p)
    p.add_argument("word")
    p.set_defaults(func=cmd_wreath)

    p = sub.add_parser("schreier", help="export a Schreier-graph window")
    _add_common(p)
    p.add_argument("--level", type=int, help="tree level (zero-vertex center)")
    p.add_argument("--end", help="end 'preperiod : period' for an orbital window")
    p.add_argument("--m", type=int, help="window level for --end")
    p.add_argument("--center", help="center vertex, e.g. '0 0'")
    p.add_argument("--radius", type=int)
    p.add_argument("--format", choices=("dot", "json"))
    p.add_argument("--vertex-cap", type=int, dest="vertex_cap")
    p.add_argument("--output", "-o", metavar="FILE")
    p.set_defaults(func=cmd_schreier)

    p = sub.add_parser("spine", help="spine vertex and state of a level")
    _add_common(p)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_spine)

    p = sub.add_parser("verify", help="run structure checks (default: all)")
    _add_common(p)
    p.add_argument("checks", nargs="*", metavar="CHECK")
    p.add_argument("--depth", type=int)
    p.add_argument("--level-n", type=int, default=2, dest="level_n")
    p.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--radius", type=int)
    p.add_argument("--conj-cap", type=int, dest="conj_cap")
    p.add_argument("--vertex-cap", type=int, dest="vertex_cap")
    p.add_argument(
        "--real-ms",
        action="store_true",
        help="report measured durations (breaks byte-for-byte determinism)",
    )
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (KneadingError, WordParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VertexCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
