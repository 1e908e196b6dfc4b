"""A walk around the four-element Boolean fixture.

Run:  python3 tutorials/01_fixture_tour.py
"""
from eqalg import arrow, classify, diamond, identity_suite, verify_axioms
from eqalg.dedsys import congruence_of, enumerate_ds
from eqalg.translate import check_invariant, phi, psi

alg = diamond()
name = alg.names.__getitem__

print("axioms hold:", verify_axioms(alg).passed)
print("derived laws checked:", len(identity_suite(alg).checked))

# the derived implications are read off the tables
a, b = alg.index("a"), alg.index("b")
print("a -> b =", name(arrow(alg, a, b)))

for flag, value in classify(alg).as_dict().items():
    print(f"  {flag:<24} {value}")

# translating to the BCK side and back changes nothing for invariant algebras
print("invariant:", check_invariant(alg).holds, "| phi(psi(A)) == A:", phi(psi(alg)).same_tables(alg))

print("\ndeductive systems:")
for r in enumerate_ds(alg):
    print("  ", r.set.render(alg.names), "normal" if r.is_normal else "", "commutative" if r.is_commutative else "")

q = congruence_of(alg, enumerate_ds(alg)[1].set)
print("\nquotient by {a,1} has classes", [tuple(map(name, c)) for c in q.classes])
