"""Command line entry point.

    cmfamilies report G25
    cmfamilies report --all --format machine --jobs 4
    cmfamilies diff-golden --all
    cmfamilies validate path/to/G10.chars.json

Exit codes: 0 success, 2 parse error, 3 validation error, 4 refusal (bad
generic Euler families, so no CM certificate), 5 golden mismatch, 6 missing
bundle or golden.
"""
from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .bundles import (
    available_groups,
    bundle_path,
    detect_kind,
    load_group_bundle,
    parse_character_bundle,
    parse_group_bundle,
    parse_rouquier_bundle,
    read_json,
)
from .chardata import load_and_validate, poincare_series
from .errors import BundleParseError, GoldenMissingError, MissingBundleError, ValidationError
from .groups import enumerate_group
from .pipeline import run_group
from .report import diff_golden, machine_text, render_text

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_REFUSAL = 4
EXIT_DIFF = 5
EXIT_MISSING = 6

log = logging.getLogger("cmfamilies")


def _groups(args) -> list[str]:
    if args.all:
        return available_groups(args.bundles)
    names = list(args.groups or [])
    if args.group:
        names.append(args.group)
    if not names:
        raise SystemExit("name a group (positional or --group) or pass --all")
    return names


def _error_code(exc: BaseException) -> int:
    if isinstance(exc, BundleParseError):
        return EXIT_PARSE
    if isinstance(exc, ValidationError):
        return EXIT_VALIDATION
    if isinstance(exc, (MissingBundleError, GoldenMissingError)):
        return EXIT_MISSING
    raise exc


def _report_one(name, bundles, fmt, seed, samples):
    """Runs in a worker; returns (exit code, output text, error text)."""
    try:
        res = run_group(name, bundles, seed=seed, samples=samples)
    except (BundleParseError, ValidationError, MissingBundleError) as exc:
        return _error_code(exc), "", f"{name}: {exc}"
    text = machine_text(res) if fmt == "machine" else render_text(res)
    return (EXIT_OK if res.cm.certified else EXIT_REFUSAL), text, ""


def _diff_one(name, bundles, goldens, seed, samples):
    try:
        res = run_group(name, bundles, seed=seed, samples=samples)
        div = diff_golden(res, goldens)
    except (BundleParseError, ValidationError, MissingBundleError, GoldenMissingError) as exc:
        return _error_code(exc), "", f"{name}: {exc}"
    if div is None:
        return EXIT_OK, f"{name}: PASS\n", ""
    return EXIT_DIFF, f"{name}: FAIL\n{div}\n", ""


def _map(fn, names, jobs, *rest):
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, names, *([r] * len(names) for r in rest)))
    return [fn(n, *rest) for n in names]


def _collect(results) -> int:
    code = EXIT_OK
    for rc, out, err in results:
        if out:
            sys.stdout.write(out)
        if err:
            print(err, file=sys.stderr)
        code = max(code, rc)
    sys.stdout.flush()
    return code


def cmd_report(args) -> int:
    return _collect(_map(_report_one, _groups(args), args.jobs, args.bundles, args.format, args.seed, args.samples))


def cmd_diff_golden(args) -> int:
    return _collect(_map(_diff_one, _groups(args), args.jobs, args.bundles, args.goldens, args.seed, args.samples))


def validate_file(path: str | Path, bundle_dir: str | Path | None = None) -> list[str]:
    """Load-time checks for one bundle file; returns the list of passed checks."""
    data = read_json(path)
    kind = detect_kind(data)
    done = [f"parsed {kind} bundle"]
    if kind == "group":
        spec = parse_group_bundle(data)
        g = enumerate_group(spec)
        done.append(f"enumerated {g.name}: order {g.order}, {len(g.classes)} classes, {len(g.reflections)} reflections")
        p1 = poincare_series(spec.degrees)(1)
        if p1 != g.order:
            raise ValidationError(f"{g.name}: invariant degrees give P(1) = {p1} but |W| = {g.order}")
        done.append("P(1) = |W|")
    elif kind == "characters":
        cb = parse_character_bundle(data)
        base = bundle_dir or Path(path).parent
        g = enumerate_group(load_group_bundle(bundle_path(cb.group, "group", base)))
        p1 = poincare_series(cb.degrees)(1)
        if p1 != g.order:
            raise ValidationError(f"{g.name}: invariant degrees give P(1) = {p1} but |W| = {g.order}")
        t = load_and_validate(cb, g)
        done += [
            "columns matched to classes",
            "degrees positive, sum of squares = |W|, P(1) = |W|",
            "orthogonality relations",
            f"fake degrees certified ({t.fake_degree_convention} convention)",
        ]
    else:
        rb = parse_rouquier_bundle(data)
        done.append(f"{len(rb.families)} listed families, {len(rb.essential_planes)} essential planes, {rb.coordinate_convention} coordinates")
    return done


def cmd_validate(args) -> int:
    code = EXIT_OK
    for path in args.paths:
        try:
            for line in validate_file(path, args.bundles):
                print(f"{path}: ok: {line}")
        except (BundleParseError, ValidationError, MissingBundleError) as exc:
            print(f"{path}: error: {exc}", file=sys.stderr)
            code = max(code, _error_code(exc))
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cmfamilies", description="Euler and Calogero-Moser families of complex reflection groups")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("groups", nargs="*", help="group names such as G4 or S6")
        sp.add_argument("--group", help="a single group name")
        sp.add_argument("--all", action="store_true", help="every group with a group bundle")
        sp.add_argument("--bundles", help="bundle directory (default: shipped bundles)")
        sp.add_argument("--seed", type=int, default=0, help="seed for the random generic-point check")
        sp.add_argument("--samples", type=int, default=100, help="number of random generic points (0 disables)")
        sp.add_argument("--jobs", type=int, default=1, help="groups processed in parallel")

    rp = sub.add_parser("report", help="run the full pipeline and print a report")
    common(rp)
    rp.add_argument("--format", choices=("text", "machine"), default="text")
    rp.set_defaults(func=cmd_report)

    dp = sub.add_parser("diff-golden", help="compare machine reports with shipped goldens")
    common(dp)
    dp.add_argument("--goldens", help="golden directory (default: shipped goldens)")
    dp.set_defaults(func=cmd_diff_golden)

    vp = sub.add_parser("validate", help="run load-time checks on bundle files")
    vp.add_argument("paths", nargs="+")
    vp.add_argument("--bundles", help="where to find the group bundle for a character bundle")
    vp.set_defaults(func=cmd_validate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
