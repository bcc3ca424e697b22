"""Verify the four known solutions and look at one that fails."""

from ma_kahler import catalog
from ma_kahler.operator import EinsteinData, d_operator, mae_residual
from ma_kahler.parse import parse_expression

for rec in catalog():
    P = rec.polynomial
    print(f"{rec.label:32s} s={rec.einstein.s}  P = {P}")
    print(f"{'':32s} D_2(P) = {d_operator(P)}")

# A polynomial of the right shape that is not a solution: the residual is the witness.
P = parse_expression("1 + x1 + x2 + x1*x2 + x1^2*x2^2")
cert = mae_residual(P, EinsteinData(s=2))
print("\nverdict:", cert.verdict)
print("residual:", cert.residual)
