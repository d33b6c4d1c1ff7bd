"""Exhaustive sweeps over degree tuples, done with the closed-form shift
profiles, followed by a sampled cross-check against actual Groebner computations."""

from liaison.bounds import crosscheck, sweep

for family, n_range, dmax in [
    ("lemmas", (3, 6), 8),
    ("one-point", (3, 5), 6),
    ("collinear", (3, 4), 6),
    ("three-points", (3, 5), 6),
]:
    rep = sweep(family, n_range, dmax)
    print("%-13s n=%d..%d dmax=%d  tuples=%d  violations=%d  %.2fs"
          % (family, n_range[0], n_range[1], dmax, rep.checked, len(rep.violations), rep.wall_time))

# a handful of realized instances, each resolved and compared with its prediction
rep = crosscheck("collinear", (3, 3), 3, density=0.5, seed=7)
print("\noracle:", rep.oracle["sampled"], "sampled,", rep.oracle["agreed"], "agreed,",
      rep.oracle["mismatched"], "mismatched")
