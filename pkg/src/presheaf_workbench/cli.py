"""Command-line interface.

    presheaf-workbench validate <file>
    presheaf-workbench run <file> [--format text|json] [--seed N] [--budget N]
    presheaf-workbench demo <name> [--format text|json] [--seed N]
    presheaf-workbench re-verify <certificate-file>

``<file>`` may also be the name of a bundled scenario.  The default search
budget comes from the ``PRESHEAF_WORKBENCH_BUDGET`` environment variable.
Exit codes: 0 pass, 1 a check failed or a required lift is absent,
2 invalid input, 3 search budget exceeded.
"""

import argparse
import json
import sys

from . import certificates
from .errors import SizeError, WorkbenchError
from .scenarios import (DEMOS, EXIT_BUDGET, EXIT_FAILED, EXIT_INVALID, EXIT_OK,
                        bundled_names, demo, render_json, render_text, run_scenario,
                        validate_scenario)


def _parser():
    parser = argparse.ArgumentParser(
        prog="presheaf-workbench",
        description="Finite presheaf computations: scenarios, demos and certificate checks.",
        epilog="bundled scenarios: " + ", ".join(bundled_names()))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a scenario and validate its declared objects")
    p.add_argument("file")

    p = sub.add_parser("run", help="run a scenario and print its report")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None,
                   help="search budget in visited nodes (default from environment)")

    p = sub.add_parser("demo", help="run a bundled demonstration")
    p.add_argument("name", choices=DEMOS)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("re-verify", help="independently check a certificate or report file")
    p.add_argument("file")
    return parser


def main(argv=None):
    args = _parser().parse_args(argv)
    out = sys.stdout

    if args.command == "validate":
        report, code = validate_scenario(args.file)
        out.write(report.render() + "\n")
        return code

    if args.command == "run":
        document, code = run_scenario(args.file, seed=args.seed, budget=args.budget)
        out.write(render_json(document) if args.format == "json" else render_text(document))
        return code

    if args.command == "demo":
        try:
            report = demo(args.name, seed=args.seed)
        except SizeError as exc:
            sys.stderr.write(f"budget exceeded: {exc}\n")
            return EXIT_BUDGET
        if args.format == "json":
            out.write(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
        else:
            out.write(report.render() + "\n")
        return EXIT_OK if report.ok else EXIT_FAILED

    # re-verify
    try:
        with open(args.file, encoding="utf-8") as fh:
            data = json.load(fh)
        if isinstance(data, dict) and "certificate" in data and "claims" not in data:
            data = data["certificate"]
        if not isinstance(data, dict):
            raise ValueError("no certificate found")
        report = certificates.reverify(data)
    except (OSError, ValueError, KeyError, TypeError, WorkbenchError) as exc:
        sys.stderr.write(f"invalid certificate file: {exc}\n")
        return EXIT_INVALID
    out.write(report.render() + "\n")
    return EXIT_OK if report.ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
