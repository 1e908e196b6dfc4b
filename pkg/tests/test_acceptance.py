"""Acceptance criteria 1-11, one test each.

Every test prints exactly one ``CRITERION n: PASS|FAIL ...`` line (also
collected into the terminal summary) and then asserts.  Run directly with
``python3 tests/test_acceptance.py`` for the bare list of lines.
"""
import io
import os
import sys
import time
from fractions import Fraction

sys.path.insert(0, os.path.dirname(__file__))

from conftest import DATA, corpus  # noqa: E402
from eqalg import cones, core, dedsys, states, translate  # noqa: E402
from eqalg.cli import run_command  # noqa: E402
from eqalg.dedsys import ElementSet  # noqa: E402
from eqalg.rational import vec  # noqa: E402
from eqalg.search import brute_force_count, enumerate_algebras  # noqa: E402

FIXTURE = os.path.join(DATA, "diamond.alg")
RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> None:
    line = f"CRITERION {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    sys.__stdout__.write("\n" + line + "\n")
    sys.__stdout__.flush()
    assert ok, line


def _dump(*argv):
    out, err = io.StringIO(), io.StringIO()
    code, _ = run_command(["--dump", *argv], out, err)
    return code, dict(line.split("=", 1) for line in out.getvalue().splitlines())


def test_criterion_01_golden_fixture():
    t0 = time.perf_counter()
    code_check, check = _dump("check", FIXTURE)
    code_an, an = _dump("analyze", FIXTURE)
    elapsed = time.perf_counter() - t0
    failures = [k for k, v in check.items() if v != "pass"]
    flags = {k: an[f"classify.is_{k}"] for k in ("invariant", "commutative", "symmetric",
                                                  "distributive_lattice")}
    ok = (code_check == 0 and not failures and code_an == 0
          and all(v == "true" for v in flags.values())
          and an["invariant.round_trip"] == "true" and an["structure.simple"] == "false"
          and elapsed < 1.0)
    record(1, ok, f"{len(check)} axiom/identity checks, failures={failures}, flags={flags}, "
                  f"simple={an['structure.simple']}, {elapsed:.2f}s (< 1 s)")


def test_criterion_02_fixture_systems():
    code, d = _dump("ds", FIXTURE)
    listed = [k[3:] for k in d if k != "ds.count"]
    flags_ok = all("normal" in d["ds." + s].split() and "commutative" in d["ds." + s].split()
                   for s in listed)
    ok = code == 0 and listed == ["{1}", "{a,1}", "{b,1}", "A"] and flags_ok
    record(2, ok, f"systems {' '.join(listed)}; all normal and commutative: {flags_ok}")


def test_criterion_03_fixture_measure_cone():
    alg = core.diamond()
    cone = cones.measure_cone(alg)
    expected = (vec([1, 0, 1, 0]), vec([1, 1, 0, 0]))
    morph = [cones.is_measure_morphism(alg, g) for g in cone.generators()]
    ok = cone.lineality == () and cone.rays == expected and all(morph)
    rays = ", ".join("(" + ",".join(str(x) for x in r) + ")" for r in cone.rays)
    record(3, ok, f"rays {rays}, lineality {len(cone.lineality)}, "
                  f"generators are measure-morphisms: {all(morph)}")


def test_criterion_04_round_trips():
    algs = corpus(4)
    bad = []
    for alg in algs:
        b = translate.psi(alg)
        back = translate.phi(b)
        if not translate.psi(back).same_tables(b):
            bad.append(("psi-phi-psi", alg))
        if not translate.psi(translate.phi(b)).same_tables(b):
            bad.append(("bck-round-trip", alg))
        if back.same_tables(alg) != translate.check_invariant(alg).holds:
            bad.append(("invariance", alg))
    inv = sum(translate.check_invariant(a).holds for a in algs)
    record(4, not bad, f"{len(algs)} algebras (sizes 1-4), {inv} invariant, violations={len(bad)}")


def test_criterion_05_commutativity_results():
    algs = corpus(4)
    bad = []
    for alg in algs:
        c = core.classify(alg)
        if not core.commutativity_characterizations(alg).passed:
            bad.append("equivalence")
        if c.is_invariant and c.is_commutative != translate.check_bck_commutative(translate.psi(alg)):
            bad.append("invariant-transfer")
        if c.is_commutative and not c.is_distributive_lattice:
            bad.append("distributive")
        if c.is_invariant and c.is_commutative and not c.is_symmetric:
            bad.append("symmetric")
    comm = sum(core.is_commutative(a) for a in algs)
    record(5, not bad, f"{len(algs)} algebras, {comm} commutative, violations={bad}")


def test_criterion_06_quotient_commutativity():
    algs = corpus(4)
    bad = []
    checked = 0
    for alg in algs:
        for r in dedsys.enumerate_ds(alg):
            if not r.is_normal:
                continue
            checked += 1
            q = dedsys.congruence_of(alg, r.set)
            if r.is_commutative != core.is_commutative(q.algebra):
                bad.append((alg, r))
    detail = f"{checked} normal systems, {len(bad)} mismatches"
    if bad:
        alg, r = bad[0]
        detail += (f"; first: size {alg.n}, sim={alg.sim}, bsim={alg.bsim}, H={r.set.members()}"
                   f" (commutative system={r.is_commutative}, closed={r.is_closed},"
                   f" invariant={core.is_invariant_scan(alg)})")
    record(6, not bad, detail)


def test_criterion_07_commutativity_via_systems():
    algs = corpus(4)
    bad = []
    for alg in algs:
        comm = core.is_commutative(alg)
        top = dedsys.is_commutative_ds(alg, ElementSet.of(alg.n, [alg.top]))
        every = all(r.is_commutative for r in dedsys.enumerate_ds(alg))
        if not (comm == top == every):
            bad.append(alg)
    record(7, not bad, f"{len(algs)} algebras, mismatches={len(bad)}")


def test_criterion_08_measure_theorems():
    algs = corpus(4)
    bad = []
    gens = 0
    for alg in algs:
        rep = cones.measure_suite(alg)
        if not rep.passed:
            bad.extend(rep.labels())
        rays = cones.measure_cone(alg).rays
        gens += len(rays)
        for g in rays:
            cones.measure_kernel(alg, g)  # raises on a wrong classification
            if core.is_invariant_scan(alg):
                q, _ = cones.quotient_by_measure(alg, g)
                if not core.is_commutative(q.algebra):
                    bad.append("quotient")
        if cones.is_order_determining(alg, rays or [[0] * alg.n]).holds and not core.is_commutative(alg):
            bad.append("order-determining")
    record(8, not bad, f"{len(algs)} algebras, {gens} cone generators, violations={bad}")


def test_criterion_09_state_theorems():
    t0 = time.perf_counter()
    algs = corpus(4)
    bad = []
    for alg in algs:
        ops = states.enumerate_states(alg)
        if ops != states.enumerate_states_bruteforce(alg):
            bad.append("brute-force")
        one = {o.map for o in ops if o.type_one}
        two = {o.map for o in ops if o.type_two}
        if (one == two) != core.is_commutative(alg):
            bad.append("types-iff-commutative")
    c4 = core.chain(4)
    ops = states.enumerate_states(c4)
    sets = [{o.map for o in ops if getattr(o, f)} for f in ("type_one", "type_two", "morphism")]
    if not (sets[0] == sets[1] == sets[2]) or not states.state_properties_suite(c4, ops).passed:
        bad.append("chain(4)")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    record(9, ok, f"{len(algs)} algebras, chain(4) has {len(sets[0])} states, "
                  f"violations={bad}, {elapsed:.1f}s (< 60 s)")


def test_criterion_10_valuations():
    algs = corpus(4)
    bad = []
    for alg in algs:
        for r in dedsys.enumerate_ds(alg):
            for a in (1, 2, Fraction(7, 2)):
                f = cones.ds_valuation(alg, r.set, a)
                if not cones.is_valuation(alg, f) or cones.valuation_kernel(alg, f) != r.set:
                    bad.append("ds-valuation")
        for g in cones.valuation_cone(alg).rays:
            if not dedsys.is_ds(alg, cones.valuation_kernel(alg, g)):
                bad.append("kernel-ds")
        for g in cones.valuation_cone(alg, commutative=True).rays:
            if not dedsys.is_commutative_ds(alg, cones.valuation_kernel(alg, g)):
                bad.append("kernel-commutative")
        if core.is_commutative(alg):
            if not cones.valuation_cone(alg, True).same_set(cones.valuation_cone(alg)):
                bad.append("cone-equality")
        if not cones.valuation_suite(alg).passed:
            bad.append("suite")
    record(10, not bad, f"{len(algs)} algebras, violations={bad}")


def test_criterion_11_search_determinism():
    def stream():
        out = io.StringIO()
        code, _ = run_command(["search", "--size", "4"], out, io.StringIO())
        return code, out.getvalue()

    (c1, s1), (c2, s2) = stream(), stream()
    n1 = sum(1 for _ in enumerate_algebras(1))
    n2 = sum(1 for _ in enumerate_algebras(2))
    b1, b2 = brute_force_count(1), brute_force_count(2)
    identical = c1 == c2 == 0 and s1 == s2
    ok = identical and n1 == b1 == 1 and n2 == b2 == 1
    record(11, ok, f"byte-identical: {identical} ({len(s1)} bytes); size-1 count {n1} "
                   f"(brute force {b1}), size-2 count {n2} (brute force {b2}); expected 1 and 1")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
