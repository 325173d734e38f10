"""Command-line front end.

Exit status: 0 on success, 1 when a check fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path as FilePath

from . import cycles as cyc
from .corpus import corpus_manifest
from .matchings import ALL, SIMPLE, NamingError, build_label_table, parse_names, sigma_monomial
from .modules import (ModuleSpecError, WellDefinednessError, annihilator_point, load_module,
                      syzygy_generators, validate_simple_module)
from .paths import dimer_equal_bounded, ghor_equal
from .quiver import CompositionError, DQIFError, EmbeddingError, load_dqif, validate
from .resolution import (BDSearchError, InvalidModuleError, RepresentativeNotFoundError,
                         assemble_resolution, gldim_report, pd_report, verify_complex)

OK, CHECK_FAILED, USAGE = 0, 1, 2


def positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"bound must be positive, got {n}")
    return n


def load(args):
    """Quiver plus label table; names come from --names or a sibling .names file."""
    quiver = load_dqif(args.quiver)
    names_file = args.names
    if names_file is None:
        sibling = FilePath(args.quiver).with_suffix(".names")
        if sibling.is_file():
            names_file = sibling
    names = parse_names(FilePath(names_file).read_text(encoding="utf-8")) if names_file else None
    return quiver, build_label_table(quiver, names)


def cmd_validate(args, out):
    report = validate(load_dqif(args.quiver))
    out.extend(report.lines())
    return OK if report.valid else CHECK_FAILED


def cmd_matchings(args, out):
    _, table = load(args)
    names = table.names()
    for k, m in enumerate(table.matchings):
        if args.simple_only and not table.simple_flags[k]:
            continue
        flag = "simple" if table.simple_flags[k] else "non-simple"
        out.append(f"{names[k]} = {','.join(m.sorted_arrows)} {flag}")
    return OK


def cmd_labels(args, out):
    quiver, table = load(args)
    labels = table.labels(args.basis)
    for a in quiver.arrow_ids:
        out.append(f"{a}: {table.format(labels[a], args.basis)}")
    out.append(f"sigma: {table.format(sigma_monomial(table, args.basis), args.basis)}")
    return OK


def cmd_eq(args, out):
    quiver, table = load(args)
    p, q = quiver.parse_path(args.p), quiver.parse_path(args.q)
    out.append(f"ghor: {'equal' if ghor_equal(table, p, q) else 'not-equal'}")
    if args.dimer:
        out.append(f"dimer: {dimer_equal_bounded(quiver, p, q, args.bound)}")
    return OK


def cmd_cycles(args, out):
    quiver, table = load(args)
    for r in cyc.simple_cycles(quiver, table):
        out.append(f"{r.cycle} tau={table.format(r.tau_label, SIMPLE)} "
                   f"eta={table.format(r.eta_label, ALL)} class={r.homology}")
    return OK


def cmd_cycle_algebra(args, out):
    quiver, table = load(args)
    gens = cyc.cycle_algebra_generators(quiver, table)
    out.append("generators: " + ", ".join(table.format(g, SIMPLE) for g in gens))
    out.append(f"dim={cyc.krull_dimension(gens)}")
    return OK


def cmd_center(args, out):
    quiver, table = load(args)
    center = cyc.center_generators_bounded(quiver, table, args.bound)
    out.append(f"center up to degree {args.bound}: " + ", ".join(table.format(m, SIMPLE) for m in center))
    return OK


def cmd_compare_rs(args, out):
    quiver, table = load(args)
    rs = cyc.compare_R_S_bounded(quiver, table, args.bound)
    line = f"RS={rs.outcome}({rs.bound})"
    if rs.witness is not None:
        line += f" witness={table.format(rs.witness, SIMPLE)}"
    out.append(line)
    return OK


def cmd_geodesic(args, out):
    quiver, table = load(args)
    g = cyc.geodesic_quiver_check_bounded(quiver, table, args.bound)
    line = f"geodesic={g.status}({g.bound})"
    if g.witness is not None:
        line += f" witness={g.witness} class={g.witness_class}"
    out.append(line)
    for h in sorted(g.families, key=lambda c: c.coords):
        out.append(f"family {h}: " + " ".join(str(c) for c in g.families[h]))
    return CHECK_FAILED if g.status == cyc.FAILS else OK


def cmd_module_check(args, out):
    quiver, table = load(args)
    spec = load_module(args.module)
    report = validate_simple_module(quiver, table, spec, args.bound)
    out.extend(report.lines())
    if not report.valid:
        return CHECK_FAILED
    try:
        point = annihilator_point(quiver, table, spec)
    except WellDefinednessError as exc:
        out.append(f"annihilator: error {exc}")
        return CHECK_FAILED
    out.append("annihilator: " + ", ".join(f"{g}={v}" for g, v in point.items(table)))
    out.append("syzygies: " + ", ".join(str(s) for s in syzygy_generators(quiver, table, spec)))
    return OK


def cmd_resolve(args, out):
    quiver, table = load(args)
    spec = load_module(args.module)
    cx = assemble_resolution(quiver, table, spec)
    for k, t in enumerate(cx.terms):
        out.append(f"term {k}: rank {len(t)}, basis [{', '.join(str(s) for s in t)}]")
    check = verify_complex(cx, table)
    out.append(f"d2={'ok' if check.ok else 'fail'}")
    if check.witness:
        out.append(f"witness={check.witness}")
    out.extend(pd_report(quiver, table, spec, cx).lines())
    out.extend(f"warning={w}" for w in cx.warnings)
    return OK if check.ok else CHECK_FAILED


def cmd_report(args, out):
    quiver, table = load(args)
    g = gldim_report(quiver, table, args.bound)
    out.append(f"N={quiver.N} dimS={g.dimS} bound={g.bound} RS={g.rs_outcome}({g.rs_bound})")
    out.append(f"locus: {g.locus_note}")
    return OK


def cmd_corpus(args, out):
    for e in corpus_manifest(args.directory):
        out.append(f"{e.name}\t{e.file.name}\t{e.provenance}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghorkit", description="Dimer quivers, ghor algebras and their simple modules.")
    sub = parser.add_subparsers(dest="command", required=True)

    def quiver_cmd(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("quiver", help="DQIF file")
        p.add_argument("--names", help="naming map file (name = a,b per line)")
        p.set_defaults(func=func)
        return p

    quiver_cmd("validate", cmd_validate, "check the embedding axioms")
    p = quiver_cmd("matchings", cmd_matchings, "list perfect matchings")
    p.add_argument("--simple-only", action="store_true")
    p = quiver_cmd("labels", cmd_labels, "arrow labels")
    p.add_argument("--basis", choices=[ALL, SIMPLE], default=ALL)
    p = quiver_cmd("eq", cmd_eq, "compare two paths")
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("--dimer", action="store_true", help="also try bounded dimer rewriting")
    p.add_argument("--bound", type=positive_int, default=8)
    quiver_cmd("cycles", cmd_cycles, "simple cycles")
    quiver_cmd("cycle-algebra", cmd_cycle_algebra, "generators and Krull dimension of S")
    for name, func in (("center", cmd_center), ("compare-rs", cmd_compare_rs)):
        p = quiver_cmd(name, func, "bounded center computations")
        p.add_argument("--bound", type=positive_int, default=cyc.DEFAULT_DEGREE_BOUND)
    p = quiver_cmd("geodesic", cmd_geodesic, "bounded geodesic-quiver check")
    p.add_argument("--bound", type=positive_int, default=4)
    p = quiver_cmd("module-check", cmd_module_check, "validate a simple module")
    p.add_argument("module")
    p.add_argument("--bound", type=positive_int, default=4)
    p = quiver_cmd("resolve", cmd_resolve, "projective complex of a simple module")
    p.add_argument("module")
    p = quiver_cmd("report", cmd_report, "global dimension summary")
    p.add_argument("--bound", type=positive_int, default=cyc.DEFAULT_DEGREE_BOUND)
    p = sub.add_parser("corpus", help="list bundled quivers")
    p.add_argument("directory", nargs="?")
    p.set_defaults(func=cmd_corpus)
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    out: list[str] = []
    try:
        status = args.func(args, out)
    except (OSError, DQIFError, ModuleSpecError, NamingError, CompositionError, EmbeddingError) as exc:
        print(f"error: {exc}", file=stderr)
        return USAGE
    except (InvalidModuleError, RepresentativeNotFoundError, BDSearchError, WellDefinednessError) as exc:
        out.append(f"error: {exc}")
        status = CHECK_FAILED
    for line in out:
        print(line, file=stdout)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
