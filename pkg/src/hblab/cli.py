"""Command-line entry point.

Subcommands:
  analyze <spec-file>   run the tasks of a space-spec document
  reproduce <id|all>    rerun a corpus example against frozen expectations
  list-examples         show the available example ids

Exit codes: 0 success, 1 a mathematical check failed, 2 input error.
The machine report written by analyze is deterministic; wall-clock
timing appears only in the human-readable report.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .models import (
    EXAMPLE_IDS,
    SpecError,
    parse_space_spec,
    render_report,
    reproduce,
    run_model,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2


def _cmd_analyze(args) -> int:
    path = Path(args.spec)
    try:
        text = path.read_text()
    except OSError as e:
        print(f"error: cannot read {path}: {e}", file=sys.stderr)
        return EXIT_INPUT
    t0 = time.monotonic()
    model = parse_space_spec(text)
    report = run_model(model, seed=args.seed, samples=args.samples)
    elapsed = time.monotonic() - t0
    machine = json.dumps(report, indent=2) + "\n"
    human = render_report(report) + f"\nelapsed: {elapsed:.3f}s\n"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(machine)
        (out / "report.txt").write_text(human)
        print(f"wrote {out / 'report.json'} and {out / 'report.txt'}")
    else:
        sys.stdout.write(human)
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    ids = list(EXAMPLE_IDS) if args.example_id == "all" else [args.example_id]
    all_ok = True
    for eid in ids:
        ok, lines = reproduce(eid)
        print("\n".join(lines))
        all_ok = all_ok and ok
    return EXIT_OK if all_ok else EXIT_MISMATCH


def _cmd_list_examples(_args) -> int:
    for eid in EXAMPLE_IDS:
        print(eid)
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hb-lab",
        description="Exact-rational lab for extension-uniqueness experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="run the tasks of a space-spec file")
    p_an.add_argument("spec", help="path to a space-spec JSON document")
    p_an.add_argument("--out", help="directory for report.json and report.txt")
    p_an.add_argument("--seed", type=int, default=0, help="sampling seed")
    p_an.add_argument("--samples", type=int, default=8, help="sample count")
    p_an.set_defaults(func=_cmd_analyze)

    p_re = sub.add_parser(
        "reproduce", help="rerun a corpus example against frozen expectations"
    )
    p_re.add_argument("example_id", help="an example id, or 'all'")
    p_re.set_defaults(func=_cmd_reproduce)

    p_ls = sub.add_parser("list-examples", help="list the available example ids")
    p_ls.set_defaults(func=_cmd_list_examples)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
