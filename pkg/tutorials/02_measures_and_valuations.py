"""Measures, measure-morphisms and pseudo-valuations as exact cones.

Run:  python3 tutorials/02_measures_and_valuations.py
"""
from fractions import Fraction

from eqalg import diamond
from eqalg.cones import (is_measure, is_measure_morphism, measure_cone, measure_morphisms,
                         measures_are_morphisms, quotient_by_measure, valuation_cone)


def show(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


alg = diamond()
cone = measure_cone(alg)
print("measure cone:")
print(cone.serialize(), end="")

# every extreme ray is a measure-morphism ...
for r in cone.rays:
    print("ray", show(r), "morphism:", is_measure_morphism(alg, r))

# ... but the cone is bigger than the set of measure-morphisms
u = (1, Fraction(1, 2), Fraction(1, 2), 0)
print("u =", show(u), "measure:", is_measure(alg, u), "morphism:", is_measure_morphism(alg, u))
gap = measures_are_morphisms(alg)
print("every measure a morphism?", gap.holds, "| witness", show(gap.witness))
print("morphism generators:", " ".join(show(g) for g in measure_morphisms(alg).generators()))

q, hat = quotient_by_measure(alg, (1, 1, 0, 0))
print("quotient by the kernel of (1,1,0,0):", q.classes, "induced", show(hat))

print("\npseudo-valuation cone:")
print(valuation_cone(alg).serialize(), end="")
print("commutative variant equal:", valuation_cone(alg, commutative=True).same_set(valuation_cone(alg)))
