"""Build the one-state emulator of the three-capacitor RC network, check the
linkage that ties it to the original and place a pole through it."""
from ila import spaces as sp
from ila.control import place_poles
from ila.emulator import build_rlc_emulator, elinkage_verify, feedback_transfer
from ila.genops import annihilates, minimal_annihilating_poly
from ila.netlist import RC_EXAMPLE, parse_netlist
from ila.poly import Poly


def show(name, M):
    print(f"{name} =", [[str(x) for x in row] for row in M])


net = parse_netlist(RC_EXAMPLE)
print(RC_EXAMPLE)
em = build_rlc_emulator(net)

f = em.flattened
print("state", [str(x) for x in f["state"]], "inputs", [str(x) for x in f["inputs"]],
      "outputs", [str(x) for x in f["outputs"]])
for key in "ABCD":
    show(key, f[key])

print("\nlinkage V1 on W + P:")
print(sp.format_matrix(em.pair.v1))
print("linkage V2 on Wdot + Pdot:")
print(sp.format_matrix(em.pair.v2))
rep = elinkage_verify(em.pair, em.original, em.gds)
print("linked:", rep.linked)

p = minimal_annihilating_poly(em.gds.zero_input())
print("\nemulator polynomial:", p)
# the original has an extra zero mode from the capacitor loop
print("s * p annihilates the original:", annihilates(Poly.s() * p, em.original.zero_input()))

# place s + 1 on the emulator and carry the law back to the capacitors
law = place_poles(em.gds, Poly((1, 1)))
law_w = sp.compose(law.linkage, em.pair.v1, allow_empty=True)
tr = feedback_transfer(em.pair, em.original, law_w, em.gds)
print("\nclosed loop on the emulator:", minimal_annihilating_poly(tr.closed_p))
print("closed loop on the original:", minimal_annihilating_poly(tr.closed_w))
print("forward transfer holds:", tr.forward)
