"""Command-line front end: ``eqalg COMMAND FILE [options]``.

Exit codes: 0 every check passed, 1 a check failed, 2 bad input or usage,
3 a search budget was exhausted.
"""
from __future__ import annotations

import argparse
import sys
from typing import Callable, Optional, Sequence

from . import cones, core, dedsys, states, translate
from .errors import BudgetExceeded, EqalgError, PreconditionError, StructureError
from .fileformat import read_algebra, serialize_algebra
from .report import Report, render_set, render_witness
from .search import PREDICATES, SearchQuery, enumerate_algebras, predicate_registry

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _axiom_section(rep: Report, section: str, alg, report) -> None:
    """One line per checked label; failures carry their first witness."""
    first = {}
    for label, w in report.violations:
        first.setdefault(label, w)
    for label in report.checked:
        if label in first:
            rep.fail(section, label, "FAIL " + render_witness(alg.names, first[label]))
        else:
            rep.put(section, label, "pass")


def _cone_text(cone) -> str:
    lines = ["L " + " ".join(str(x) for x in v) for v in cone.lineality]
    lines += ["R " + " ".join(str(x) for x in v) for v in cone.rays]
    return "\n".join(lines) if lines else "(zero cone)"


# -- commands ------------------------------------------------------------------------

def cmd_check(args, rep: Report) -> None:
    alg = read_algebra(args.file)
    axioms = core.verify_axioms(alg)
    _axiom_section(rep, "axioms", alg, axioms)
    if axioms.passed:
        _axiom_section(rep, "identities", alg, core.identity_suite(alg))
    else:
        rep.put("identities", "skipped", "axioms failed")


def cmd_analyze(args, rep: Report) -> None:
    alg = read_algebra(args.file)
    core.require_valid(alg)
    c = core.classify(alg)
    names = alg.names
    for flag, value in c.as_dict().items():
        rep.put("classify", flag, value)
        if not value and flag in c.witnesses and c.witnesses[flag] is not None:
            rep.put("classify", flag + ".witness", render_witness(names, c.witnesses[flag]))
    inv = translate.check_invariant(alg)
    rep.put("invariant", "round_trip", inv.holds)
    if not inv.holds:
        rep.put("invariant", "witness", render_witness(names, inv.witness))
    rep.put("structure", "size", alg.n)
    rep.put("structure", "top", names[alg.top])
    b = core.bottom(alg)
    rep.put("structure", "bottom", names[b] if b is not None else None)
    rep.put("structure", "simple", dedsys.is_simple(alg))


def _bck_tables(b) -> str:
    names = b.names
    width = max(len(s) for s in names)
    lines = []
    for key in ("arrow", "squig"):
        lines.append(f"{key}:")
        for row in getattr(b, key):
            lines.append("  " + " ".join(names[v].ljust(width) for v in row).rstrip())
    return "\n".join(lines)


def cmd_translate(args, rep: Report) -> None:
    alg = read_algebra(args.file)
    core.require_valid(alg)
    b = translate.psi(alg)
    rep.put("psi", "tables", _bck_tables(b))
    _axiom_section(rep, "bck-axioms", alg, translate.verify_bck(b))
    rep.put("psi", "pC", translate.pC_witness(b) is None)
    rep.put("psi", "pD", translate.pD_witness(b) is None)
    rep.put("psi", "commutative", translate.bck_commutative_witness(b) is None)
    back = translate.phi(b)
    rep.put("phi-psi", "equals_input", back.same_tables(alg))
    if args.roundtrip:
        _axiom_section(rep, "round-trip", alg, translate.round_trip_report(alg))
        rep.put("phi-psi", "tables", serialize_algebra(back).rstrip())


def cmd_ds(args, rep: Report) -> None:
    alg = read_algebra(args.file)
    core.require_valid(alg)
    names = alg.names
    records = dedsys.enumerate_ds(alg)
    keep = {"normal": lambda r: r.is_normal, "commutative": lambda r: r.is_commutative,
            "closed": lambda r: r.is_closed}.get(args.filter, lambda r: True)
    shown = [r for r in records if keep(r)]
    rep.put("ds", "count", len(shown))
    for r in shown:
        flags = [f for f, on in (("normal", r.is_normal), ("commutative", r.is_commutative),
                                 ("closed", r.is_closed), ("proper", r.is_proper),
                                 ("maximal", r.is_maximal)) if on]
        label = "A" if not r.is_proper else render_set(names, r.set)
        rep.put("ds", label, " ".join(flags) if flags else "-")


def _parse_names(alg, text: str) -> list[int]:
    out = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        try:
            out.append(alg.index(tok))
        except Exception:
            raise PreconditionError(f"unknown element {tok!r}")
    return out


def cmd_quotient(args, rep: Report) -> None:
    alg = read_algebra(args.file)
    core.require_valid(alg)
    h = dedsys.ElementSet.of(alg.n, _parse_names(alg, args.ds))
    q = dedsys.congruence_of(alg, h)
    rep.put("quotient", "ds", render_set(alg.names, h))
    rep.put("quotient", "classes", " ".join(render_set(alg.names, c) for c in q.classes))
    rep.put("quotient", "commutative", core.is_commutative(q.algebra))
    rep.put("quotient", "ds_commutative", dedsys.is_commutative_ds(alg, h))
    rep.put("quotient", "algebra", serialize_algebra(q.algebra).rstrip())


def cmd_measures(args, rep: Report) -> None:
    alg = read_algebra(args.file)
    core.require_valid(alg)
    cone = cones.measure_cone(alg)
    rep.put("measures", "dim", cone.dim)
    rep.put("measures", "lineality", len(cone.lineality))
    rep.put("measures", "rays", len(cone.rays))
    rep.put("measures", "cone", _cone_text(cone))
    if args.morphisms:
        for g in cone.rays:
            f = cones.RationalFn(g)
            rep.put("morphisms", "ray " + " ".join(str(x) for x in g), cones.is_measure_morphism(alg, f))
        gap = cones.measures_are_morphisms(alg)
        rep.put("morphisms", "all_measures_are_morphisms", gap.holds)
        if not gap.holds:
            rep.put("morphisms", "witness", " ".join(str(x) for x in gap.witness))
        gens = cones.measure_morphisms(alg).generators()
        rep.put("morphisms", "generators", "\n".join("R " + " ".join(str(x) for x in g) for g in gens)
                or "(zero set)")


def cmd_valuations(args, rep: Report) -> None:
    alg = read_algebra(args.file)
    core.require_valid(alg)
    cone = cones.valuation_cone(alg, commutative=args.commutative)
    sec = "commutative-valuations" if args.commutative else "valuations"
    rep.put(sec, "dim", cone.dim)
    rep.put(sec, "lineality", len(cone.lineality))
    rep.put(sec, "rays", len(cone.rays))
    rep.put(sec, "cone", _cone_text(cone))
    for g in cone.rays:
        ker = cones.valuation_kernel(alg, g)
        rep.put(sec, "kernel " + " ".join(str(x) for x in g), render_set(alg.names, ker))


def cmd_states(args, rep: Report) -> None:
    alg = read_algebra(args.file)
    core.require_valid(alg)
    ops = states.enumerate_states(alg)
    keep = {"type1": lambda o: o.type_one, "type2": lambda o: o.type_two,
            "morphism": lambda o: o.morphism}.get(args.filter, lambda o: True)
    shown = [o for o in ops if keep(o)]
    rep.put("states", "count", len(shown))
    for o in shown:
        flags = [f for f, on in (("type1", o.type_one), ("type2", o.type_two),
                                 ("morphism", o.morphism), ("faithful", o.faithful)) if on]
        rep.put("states", o.render(alg.names), " ".join(flags))


def cmd_search(args, out) -> int:
    require = [p for p in (args.require or "").split(",") if p]
    forbid = [p for p in (args.forbid or "").split(",") if p]
    SearchQuery(max_size=args.size, require=require, forbid=forbid)  # validates names
    reg = predicate_registry()
    count = 0
    for alg in enumerate_algebras(args.size, cap=args.cap):
        if all(reg[p](alg) for p in require) and not any(reg[p](alg) for p in forbid):
            if count:
                out.write("---\n")
            out.write(serialize_algebra(alg))
            count += 1
            if args.limit and count >= args.limit:
                break
    out.write(f"# count: {count}\n")
    return EXIT_OK


def _suite_runs(alg) -> list[tuple[str, Callable]]:
    runs = [
        ("axioms", core.verify_axioms),
        ("derived-identities", core.identity_suite),
        ("commutativity-characterizations", core.commutativity_characterizations),
        ("translation-round-trip", translate.round_trip_report),
        ("bck-identities", lambda a: translate.bck_identity_suite(translate.psi(a))),
        ("quotient-commutativity", dedsys.check_quotient_commutativity_theorem),
        ("commutativity-via-systems", dedsys.commutativity_via_systems),
        ("commutative-system-consequences", dedsys.ds_consequences_suite),
        ("measures", cones.measure_suite),
        ("measure-translation", cones.translation_suite),
        ("valuations", cones.valuation_suite),
        ("states", states.state_properties_suite),
    ]
    if alg.n <= 8:
        runs.insert(8, ("congruences", dedsys.congruence_lattice_report))
    return runs


def cmd_verify_all(args, rep: Report) -> None:
    alg = read_algebra(args.file)
    axioms = core.verify_axioms(alg)
    if not axioms.passed:
        _axiom_section(rep, "axioms", alg, axioms)
        rep.put("summary", "skipped", "axioms failed")
        return
    total = failed = 0
    for name, run in _suite_runs(alg):
        result = run(alg)
        _axiom_section(rep, name, alg, result)
        total += len(result.checked)
        failed += len(set(label for label, _ in result.violations))
    rep.put("summary", "checks", total)
    rep.put("summary", "failed", failed)


COMMANDS = {
    "check": cmd_check, "analyze": cmd_analyze, "translate": cmd_translate, "ds": cmd_ds,
    "quotient": cmd_quotient, "measures": cmd_measures, "valuations": cmd_valuations,
    "states": cmd_states, "verify-paper": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eqalg", description="Finite pseudo equality algebra workbench.")
    p.add_argument("--dump", action="store_true", help="print SECTION.KEY=VALUE lines")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file")
        return sp

    with_file("check", "verify the axioms and the derived identities")
    with_file("analyze", "classify the algebra")
    with_file("translate", "build the BCK structure").add_argument("--roundtrip", action="store_true")
    sp = with_file("ds", "list deductive systems")
    g = sp.add_mutually_exclusive_group()
    for flag in ("normal", "commutative", "closed"):
        g.add_argument(f"--{flag}", dest="filter", action="store_const", const=flag)
    with_file("quotient", "quotient by a normal deductive system").add_argument(
        "--ds", required=True, help="comma-separated element names")
    with_file("measures", "measure cone").add_argument("--morphisms", action="store_true")
    with_file("valuations", "pseudo-valuation cone").add_argument("--commutative", action="store_true")
    sp = with_file("states", "internal states and state-morphisms")
    g = sp.add_mutually_exclusive_group()
    for flag in ("type1", "type2", "morphism"):
        g.add_argument(f"--{flag}", dest="filter", action="store_const", const=flag)
    sp = sub.add_parser("search", help="enumerate algebras of one size")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--require", help="comma-separated predicates: " + ",".join(PREDICATES))
    sp.add_argument("--forbid", help="comma-separated predicates")
    sp.add_argument("--limit", type=int, default=0, help="stop after this many models (0 = all)")
    sp.add_argument("--cap", type=int, default=5, help="largest size allowed")
    with_file("verify-paper", "run every theorem suite on the instance")
    return p


def run_command(argv: Optional[Sequence[str]] = None, out=None, err=None) -> tuple[int, Optional[Report]]:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        err.write(f"eqalg: {exc}\n")
        return EXIT_USAGE, None
    try:
        if args.command == "search":
            return cmd_search(args, out), None
        rep = Report()
        COMMANDS[args.command](args, rep)
    except BudgetExceeded as exc:
        err.write(f"eqalg: budget exceeded: {exc}\n")
        return EXIT_BUDGET, None
    except OSError as exc:
        err.write(f"eqalg: {exc}\n")
        return EXIT_USAGE, None
    except (StructureError, PreconditionError) as exc:
        w = getattr(exc, "witness", None)
        err.write(f"eqalg: {exc}" + (f" witness={w}" if w is not None else "") + "\n")
        return EXIT_USAGE, None
    except EqalgError as exc:
        # a theorem cross-check or congruence scan failed: a finding, not bad input
        err.write(f"eqalg: check failed: {exc}\n")
        return EXIT_FAIL, None
    out.write(rep.dump() if args.dump else rep.text())
    return (EXIT_FAIL if rep.failed else EXIT_OK), rep


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, _ = run_command(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
