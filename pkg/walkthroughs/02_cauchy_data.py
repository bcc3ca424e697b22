"""Where the axis data come from.

Restricting a solution to x2 = 0 gives (1 + x1/k)^k. The mixed term
of the residual then forces s^2 k^2 - 5 s k + 6 = 0.
"""

from ma_kahler.axis import axis_profile, diophantine, enumerate_cauchy_data, soln2_template
from ma_kahler.geometry import catalog
from ma_kahler.operator import d_operator

for rec in catalog():
    prof = axis_profile(rec.polynomial, 0)
    print(f"{rec.polynomial!s:40s} axis: {prof.p}")

print()
for s in (1, 2, 3):
    for d in enumerate_cauchy_data(s):
        print(f"s={s} k={d.k}  p0 = {d.p0}   p1 = {d.p1}")

# the x1*x2 coefficient of the template residual is the Diophantine expression, up to a factor
for s, k in [(1, 2), (2, 2), (1, 4)]:
    T = soln2_template(k, s)
    F = d_operator(T) - T ** (3 - s)
    print(f"s={s} k={k}: [x1 x2] residual = {F.coefficient((1, 1))}, s^2k^2-5sk+6 = {diophantine(s, k)}")
