"""Pole placement on a small system with an uncontrollable mode."""
from ila.control import place_poles, place_poles_injection
from ila.errors import UnplaceableFactor
from ila.genops import gds_from_matrices, minimal_annihilating_poly
from ila.poly import Poly

# w1 is driven by the input, w2 is not and keeps its pole at 2
src = gds_from_matrices([[1, 1], [0, 2]], [[1], [0]], [[1, 1]])

try:
    place_poles(src, Poly.from_roots([-1, -1]))
except UnplaceableFactor as e:
    print("refused:", e, "| missing factor:", e.factor)

target = Poly.from_roots([2, -3])
law = place_poles(src, target)
print("target:", target)
print("achieved:", minimal_annihilating_poly(law.achieved))
print("feedback law on W + Mu:")
for row in law.linkage.rows:
    print("  ", dict(zip(map(str, law.linkage.index), map(str, row))))

# the dual problem: output injection on a chain of integrators
chain = gds_from_matrices([[0, 1, 0], [0, 0, 1], [0, 0, 0]], [[0], [0], [0]], [[1, 0, 0]])
obs = place_poles_injection(chain, Poly.from_roots([-1, -2, -3]))
print("\ninjection achieved:", minimal_annihilating_poly(obs.achieved))
