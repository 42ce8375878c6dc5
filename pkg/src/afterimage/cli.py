"""Command-line front end: generate, validate, and inspect stimuli.

All results are printed as JSON on stdout; diagnostics go to stderr.  Exit
code 0 means every validation passed.  The default seed can be supplied via
the AFTERIMAGE_SEED environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import raster
from .model import (
    BUILTIN_NAMES,
    RuleSet,
    RuleSetValidationError,
    builtin_ruleset,
    ruleset_from_json,
    validation_report,
)
from .pattern import PatternError, load_pattern, save_pattern, text_to_pattern, uniform_pattern
from .sequence import assemble_multi, assemble_single, write_sequence


def _default_seed() -> int:
    try:
        return int(os.environ.get("AFTERIMAGE_SEED", "0"))
    except ValueError:
        return 0


def _load_ruleset(name_or_path: str) -> RuleSet:
    if name_or_path in BUILTIN_NAMES:
        return builtin_ruleset(name_or_path)
    return ruleset_from_json(Path(name_or_path).read_text())


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2))


def _fail(message: str, violations: list[str] | None = None) -> int:
    _emit({"error": message, "violations": violations or []})
    print(f"error: {message}", file=sys.stderr)
    for v in violations or []:
        print(f"  - {v}", file=sys.stderr)
    return 1


def cmd_gen(args: argparse.Namespace) -> int:
    rs = _load_ruleset(args.ruleset)
    patterns = [load_pattern(Path(p).read_text()) for p in args.pattern]
    if args.multi:
        seq = assemble_multi(patterns, rs, seed=args.seed, m=args.m, n=args.n)
    else:
        if len(patterns) != 1:
            return _fail("single-trigger generation takes exactly one --pattern")
        seq = assemble_single(patterns[0], rs, seed=args.seed, m=args.m, n=args.n)
    manifest_path = write_sequence(seq, args.out)
    manifest = json.loads(manifest_path.read_text())
    _emit(
        {
            "out": str(args.out),
            "manifest": str(manifest_path),
            "frames": len(manifest["frames"]),
            "digests": [f["sha256"] for f in manifest["frames"]],
            "classification": validation_report(rs),
        }
    )
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    rs = _load_ruleset(args.ruleset)
    report = validation_report(rs)
    _emit(report)
    if report["surjective"] and report["consistent"]:
        return 0
    from .model import check_consistency

    for violation in check_consistency(rs).violations:
        print(f"  - {violation}", file=sys.stderr)
    return 1


def cmd_text(args: argparse.Namespace) -> int:
    pat = text_to_pattern(args.word, fg=args.fg, bg=args.bg, thickness=args.thickness)
    out = Path(args.out)
    out.write_text(save_pattern(pat))
    _emit(
        {
            "word": args.word,
            "file": str(out),
            "width": pat.width,
            "height": pat.height,
            "levels": pat.levels,
        }
    )
    return 0


def cmd_calib(args: argparse.Namespace) -> int:
    rs = _load_ruleset(args.ruleset)
    pat = uniform_pattern(args.level, rs.n)
    seq = assemble_single(pat, rs, seed=args.seed, m=args.m, n=args.n)
    manifest_path = write_sequence(seq, args.out)
    manifest = json.loads(manifest_path.read_text())
    _emit(
        {
            "out": str(args.out),
            "manifest": str(manifest_path),
            "level": args.level,
            "frames": len(manifest["frames"]),
            "digests": [f["sha256"] for f in manifest["frames"]],
        }
    )
    return 0


def _add_render_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=_default_seed(),
                   help="random seed for per-square rule choice")
    p.add_argument("--m", type=int, default=raster.DEFAULT_SQUARE_SIZE,
                   help="square size in pixels")
    p.add_argument("--n", type=int, default=raster.DEFAULT_BLUR_SIZE,
                   help="box blur width in pixels (odd)")
    p.add_argument("--out", required=True, help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="afterimage",
        description="Compile target afterimage patterns into bias/trigger "
                    "image sequences, and validate intensity rule sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a stimulus sequence")
    p_gen.add_argument("--pattern", action="append", required=True,
                       help="pattern file; repeat with --multi for several")
    p_gen.add_argument("--ruleset", required=True,
                       help="built-in name (f1..f6) or rule-set JSON path")
    p_gen.add_argument("--multi", action="store_true",
                       help="one bias image followed by one trigger per pattern")
    _add_render_flags(p_gen)
    p_gen.set_defaults(func=cmd_gen)

    p_val = sub.add_parser("validate", help="classify and check a rule set")
    p_val.add_argument("--ruleset", required=True,
                       help="built-in name (f1..f6) or rule-set JSON path")
    p_val.set_defaults(func=cmd_validate)

    p_text = sub.add_parser("text", help="render a word into a pattern file")
    p_text.add_argument("--word", required=True)
    p_text.add_argument("--fg", type=int, default=2, help="stroke level index")
    p_text.add_argument("--bg", type=int, default=1, help="background level index")
    p_text.add_argument("--thickness", type=int, default=2,
                        help="stroke thickness in square units (1 or 2)")
    p_text.add_argument("-o", "--out", required=True, help="output pattern file")
    p_text.set_defaults(func=cmd_text)

    p_cal = sub.add_parser("calib", help="generate a uniform calibration sequence")
    p_cal.add_argument("--ruleset", required=True,
                       help="built-in name (f1..f6) or rule-set JSON path")
    p_cal.add_argument("--level", type=int, required=True,
                       help="afterimage level index to fill the canvas with")
    _add_render_flags(p_cal)
    p_cal.set_defaults(func=cmd_calib)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RuleSetValidationError as exc:
        return _fail(str(exc), exc.violations)
    except (ValueError, OSError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
