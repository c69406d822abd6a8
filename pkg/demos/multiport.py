"""Minimal multiport decomposition of a bridge-like graph."""
from ila.netgraph import (DirectedGraph, contains_cutset, current_space, is_forest,
                          multiport_decompose, port_count_formula, recompose)

G = DirectedGraph.parse("""
a 1 2
b 2 3
c 3 1
x 2 4
y 4 3
z 4 3
""")
E1, E2 = ["a", "b", "c"], ["x", "y", "z"]
dec = multiport_decompose(G, E1, E2)
print(f"ports: {dec.port_count} (formula {port_count_formula(G, E1)})")
for name, H in (("G1", dec.g1), ("G2", dec.g2), ("connector", dec.connector)):
    print(f"{name}:")
    print(H.format(), end="")
print("P1 is a forest without cutsets in G1:", is_forest(dec.g1, dec.p1) and not contains_cutset(dec.g1, dec.p1))
print("recomposed current space equals the original:", recompose(dec, "current") == current_space(G))
