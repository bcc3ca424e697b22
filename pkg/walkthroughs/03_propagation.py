"""Run each Cauchy datum through the x2-expansion and classify."""

from ma_kahler.axis import enumerate_cauchy_data
from ma_kahler.poly import Polynomial
from ma_kahler.taylor import classify, propagate, propagate_profiles

for s in (1, 2, 3):
    for d in enumerate_cauchy_data(s):
        out = propagate(d, max_order=10)
        print(f"s={s} k={d.k}: {out.status.value}, solution {out.solution}")
        for h in range(out.terminated_at + 2):
            print(f"    c_{h} = {out.series[h]}")

# profiles that do not satisfy the axis condition cannot be continued
t = Polynomial.variable(0, 1)
bad = propagate_profiles((1 + t / 2) ** 2, Polynomial.one(1), s=2, max_order=6)
print("\nnon-Cauchy profiles:", bad.status.value, "at order", bad.obstruction_order)

for s in (1, 2, 3):
    print(f"s={s}:", [r.label for r in classify(s, max_order=20)])
