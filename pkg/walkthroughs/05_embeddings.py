"""Projective embedding dimensions for products of projective spaces."""

from ma_kahler.geometry import FlagProduct, embedding_dimension, veronese_constant

for dims, q in [((1, 1), 1), ((2,), 1), ((2,), 2), ((1, 3), 1), ((1, 2), 1), ((2, 2, 2), 1)]:
    fp = FlagProduct(dims, q)
    print(f"dims={dims} q={q}: G={fp.G} c={fp.c()} N={embedding_dimension(fp)}")

for c in range(1, 8):
    v = veronese_constant(c)
    print(f"c={c}: radicand {v.radicand}, perfect square: {v.is_perfect_square}")
