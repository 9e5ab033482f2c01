"""Command-line entry point.

Exit status: 0 when every check passes, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys

from .document import load
from .errors import SpectralFloerError
from .report import TASKS, run_all

_VALUED = {"--seed", "--box", "--degree-factor", "--format"}


def _split(argv):
    """Separate flags from positionals so values such as -1/2 stay positional."""
    flags, pos = [], []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--":
            pos.extend(argv[i + 1:])
            break
        name = tok.split("=", 1)[0]
        if name in _VALUED:
            if "=" in tok:
                flags.append(tok)
            else:
                flags.extend(argv[i:i + 2])
                i += 1
        elif tok in ("-h", "--help"):
            flags.append(tok)
        else:
            pos.append(tok)
        i += 1
    return flags + ["--"] + pos


def build_parser():
    p = argparse.ArgumentParser(
        prog="spectral-floer",
        description="Exact spectral invariants of filtered Novikov chain complexes.",
        epilog="tasks: " + " | ".join(TASKS) + "; with no task the document's tasks section runs",
    )
    p.add_argument("document", help="workspace document (JSON with exact rationals)")
    p.add_argument("task", nargs="*", help="task name followed by its arguments")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--box", type=int, default=None, help="override the exponent box radius of every complex")
    p.add_argument("--degree-factor", type=int, choices=(1, 2), default=None,
                   help="override the Chern-number factor in the capping degree rule")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(_split(argv))
    try:
        doc = load(args.document, box=args.box, degree_factor=args.degree_factor)
        tasks = [args.task] if args.task else (doc.tasks or ["validate"])
        report = run_all(doc, tasks, args.seed)
    except SpectralFloerError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(report.json() if args.format == "json" else report.text())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
