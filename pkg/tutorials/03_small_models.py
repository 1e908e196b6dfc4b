"""Exhaustive search over small algebras, and one surprise it turns up.

Run:  python3 tutorials/03_small_models.py
"""
from eqalg import classify
from eqalg.dedsys import check_quotient_commutativity_theorem
from eqalg.fileformat import serialize_algebra
from eqalg.search import SearchQuery, enumerate_algebras, find_counterexample

for size in range(1, 5):
    algs = list(enumerate_algebras(size))
    comm = sum(classify(a).is_commutative for a in algs)
    inv = sum(classify(a).is_invariant for a in algs)
    print(f"size {size}: {len(algs):>3} algebras, {comm:>2} commutative, {inv:>2} invariant")

print("\nthe two structures on the 2-element chain:")
for a in enumerate_algebras(2):
    print(serialize_algebra(a))

# a commutative algebra whose order is not a distributive lattice? none up to 4
print("counterexample:", find_counterexample(SearchQuery(4, ["commutative"], ["distributive_lattice"])))

# a normal deductive system that is commutative while its quotient is not
for size in (3, 4):
    for a in enumerate_algebras(size):
        rep = check_quotient_commutativity_theorem(a)
        if not rep.passed:
            print(f"\nsize {size}: system {rep.violations[0][1]} breaks the quotient correspondence")
            print(serialize_algebra(a))
            break
    else:
        continue
    break
