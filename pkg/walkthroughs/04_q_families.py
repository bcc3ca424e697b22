"""Each normal-form solution S gives S(x/q)^q with Einstein constant 2s/q."""

from ma_kahler.geometry import catalog, q_family
from ma_kahler.operator import d_operator, power_reduce

cp2 = catalog()[0]
for q in (2, 4, 5):
    rec = q_family(cp2, q)
    P = rec.polynomial
    print(f"q={q} lambda={rec.einstein.lam}  {rec.label}")
    print("    P =", P)
    print("    D_2(P)^q == P^(3q-s):", d_operator(P) ** q == P ** (3 * q - 3))
    print("    reduces back:", power_reduce(P, q) == cp2.polynomial)
