"""Walk through a small link by hand: two complete intersections, the residual,
its mapping-cone resolution and what survives minimalization."""

from liaison.bounds import conjecture_verdict
from liaison.cli import render_betti
from liaison.groebner import Ideal
from liaison.linkage import LinkInstance
from liaison.resolution import betti
from liaison.ring import Ring

R = Ring(4)  # GF(32003)[x0..x3]
x, y, z, w = R.gens()

# X is a complete intersection of type (2, 2, 6) containing Z = (x, y, z^6)
I_X = Ideal([x**2, y**2, z**6])
I_Z = Ideal([x, y, z**6])
inst = LinkInstance.from_ideals(I_X, I_Z)

print("I_Y =", inst.I_Y)
print("deg Y =", inst.degree())

cone = betti(inst.cone_resolution())
print("\nmapping cone:")
print(render_betti(cone))

minimal = betti(inst.minimal_resolution())
print("\nminimal resolution:")
print(render_betti(minimal))

# the two cancelled pairs both sit in homological degrees 2 and 3 at shift 4
print("\ncancelled:", sorted(set(cone.table.items()) - set(minimal.table.items())))

v = conjecture_verdict(minimal, inst.degree())
print("\nbounds: %s <= %s <= %s  holds=%s" % (v.lower_value, v.degree, v.upper_value, v.holds))
