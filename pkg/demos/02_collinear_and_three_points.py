"""Random realizations of the two residual families and a comparison of the
computed minimal shifts with the predicted profiles."""

from liaison.bounds import branch_checks, conjecture_verdict
from liaison.cli import render_betti
from liaison.linkage import CIType, LinkSpec, profiles, realize
from liaison.resolution import betti

for spec in [
    LinkSpec(CIType((2, 2, 3)), "collinear", t=1),
    LinkSpec(CIType((2, 2, 3)), "collinear", t=3),
    LinkSpec(CIType((2, 2, 2)), "three-points"),
    LinkSpec(CIType((2, 2, 2, 3)), "three-points"),
]:
    inst = realize(spec, seed=2024)
    minimal = betti(inst.minimal_resolution())
    n = spec.ci.n
    print("=" * 60)
    print(spec.kind, spec.ci.degrees, "t=%s" % spec.t if spec.t else "")
    print("deg Y = %d (expected %d)" % (inst.degree(), spec.degree))
    print(render_betti(minimal))
    print("m =", minimal.mins(n), " M =", minimal.maxs(n))

    matched = [pr.scenario for pr in profiles(spec) if pr.matches(minimal)]
    print("matching predicted scenarios:", matched or "none")

    v = conjecture_verdict(minimal, inst.degree())
    print("bounds: %s <= %d <= %s" % (v.lower_value, v.degree, v.upper_value))

    applicable = [r for r in branch_checks(spec) if r.applicable]
    for r in applicable:
        print("  %-45s %6s <= %-6s %s" % (r.label, r.lhs, r.rhs, "ok" if r.holds else "FAILS"))
