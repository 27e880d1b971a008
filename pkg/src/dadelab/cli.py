"""Command line interface: ``dadelab verify``, ``dadelab compute`` and ``dadelab dade``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import harness
from .coeffring import TruncatedDVR
from .dade import (
    determinant_one_lift,
    element_of,
    find_generator,
    order,
    rings_for,
    section_on_generators,
    configured_generators,
)
from .heller import omega_power, relative_syzygy
from .moduleio import format_module
from .pgroup import CATALOG, build_group, subgroup_classes
from .rpmod import RPModule, determinant_character
from . import linalg

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_precision() -> int:
    raw = os.environ.get("DADELAB_PRECISION")
    if raw is None:
        return harness.DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"DADELAB_PRECISION must be an integer, got {raw!r}") from None


def _group(spec: str):
    if spec not in CATALOG:
        raise UsageError(f"unknown group {spec!r}; choose from {', '.join(CATALOG)}")
    return build_group(spec)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def det_table(m: RPModule) -> str:
    """Determinant of every generator: powers of zeta over O, residues over k."""
    ring = m.ring
    if isinstance(ring, TruncatedDVR):
        return determinant_character(m).table()
    return " ".join(
        f"{name}:{int(linalg.det(ring, a)[0])}" for name, a in zip(m.group.gen_names, m.gens)
    )


# ----------------------------------------------------------------------
# subcommands


def cmd_verify(args) -> int:
    groups = [g for g in args.group.split(",") if g]
    for g in groups:
        _group(g)
    try:
        suite = harness.resolve_suite(args.suite)
    except harness.UnknownCheck as exc:
        raise UsageError(str(exc)) from None
    results = harness.run_suite(groups, args.precision, args.seed, suite, full=args.suite == "full")
    _emit(harness.report(results, args.format), args.out)
    if args.out:
        print(harness.summary(results))
    return harness.exit_code(results)


def _find_subgroup(group, label: str):
    for q in subgroup_classes(group):
        if q.label == label or q.label.strip("<>") == label:
            return q
    raise UsageError(
        f"unknown subgroup {label!r}; classes: {', '.join(q.label for q in subgroup_classes(group))}"
    )


def cmd_omega(args) -> int:
    group = _group(args.group)
    k, o = rings_for(group, args.precision)
    ring = o if args.ring == "O" else k
    if args.rel is not None:
        if args.m != 1:
            raise UsageError("relative syzygies are available for --m 1 only")
        m = relative_syzygy(ring, group, _find_subgroup(group, args.rel))
    else:
        m = omega_power(ring, group, args.m, bound=max(4, abs(args.m)))
    _emit(format_module(m), args.out)
    print(f"dim={m.dim} det={det_table(m)}")
    return EXIT_OK


def _generator(args):
    group = _group(args.group)
    try:
        return group, find_generator(group, args.gen, args.precision)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def cmd_lift(args) -> int:
    group, gen = _generator(args)
    phi = determinant_one_lift(gen.module, gen.lift, args.seed)
    _emit(format_module(phi), args.out)
    print(f"dim={phi.dim} det={det_table(phi)} native_det={det_table(gen.lift)}")
    return EXIT_OK


def cmd_order(args) -> int:
    group, gen = _generator(args)
    if args.ring == "O":
        phi = determinant_one_lift(gen.module, gen.lift, args.seed)
        a = element_of(phi, args.seed, check=False, label=f"Phi({gen.name})")
    else:
        a = gen.element(args.seed)
    print(f"order={order(a, args.bound, args.seed)}")
    return EXIT_OK


def cmd_section(args) -> int:
    group = _group(args.group)
    gens = configured_generators(group, args.precision)
    rep = section_on_generators(group, gens, bound=args.bound, seed=args.seed)
    _emit(json.dumps(rep.as_dict(), indent=2) + "\n", args.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


# ----------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser, precision: int) -> None:
    p.add_argument("--precision", type=int, default=precision, help="p-adic precision N")
    p.add_argument("--seed", type=int, default=harness.DEFAULT_SEED)
    p.add_argument("--out", default=None, help="write the main output here instead of stdout")


def _add_dade_commands(sub, precision: int) -> None:
    p = sub.add_parser("lift", help="determinant-one lift of a configured generator")
    p.add_argument("--group", required=True)
    p.add_argument("--gen", required=True)
    _common(p, precision)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("order", help="order of a configured generator's class")
    p.add_argument("--group", required=True)
    p.add_argument("--gen", required=True)
    p.add_argument("--bound", type=int, default=8)
    p.add_argument("--ring", choices=("k", "O"), default="k")
    _common(p, precision)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("section", help="section properties on the configured generators (JSON)")
    p.add_argument("--group", required=True)
    p.add_argument("--bound", type=int, default=8)
    _common(p, precision)
    p.set_defaults(func=cmd_section)


def build_parser(precision: int) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dadelab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run registered checks")
    v.add_argument("--group", required=True, help="comma separated catalog groups")
    v.add_argument("--suite", default="all", help="comma separated check ids, 'all' or 'full'")
    v.add_argument("--format", choices=("text", "json"), default="text")
    _common(v, precision)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compute", help="compute modules and classes")
    csub = c.add_subparsers(dest="what", required=True)
    om = csub.add_parser("omega", help="Heller translate Omega^m or a relative syzygy")
    om.add_argument("--group", required=True)
    om.add_argument("--ring", choices=("k", "O"), default="k")
    om.add_argument("--m", type=int, default=1)
    om.add_argument("--rel", default=None, help="subgroup label Q for Omega^1_{P/Q}")
    _common(om, precision)
    om.set_defaults(func=cmd_omega)
    _add_dade_commands(csub, precision)

    d = sub.add_parser("dade", help="alias of the class-level compute commands")
    _add_dade_commands(d.add_subparsers(dest="what", required=True), precision)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        precision = _default_precision()
    except UsageError as exc:
        print(f"dadelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser(precision)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    if getattr(args, "precision", 16) < 4:
        print("dadelab: error: precision must be at least 4", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"dadelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
