"""The Jacobiator on the curved patch, three ways, and its homogeneity.

Nested brackets of random sections, nested brackets of a frame that is
parallel at p, and the closed-form frame tensor all give the same answer.
On every geometry tried so far that answer is zero, so hom(J) is infinite
while hom(kappa) = 2.
"""
import random
from fractions import Fraction

from precourant import BracketContext, PolyScalar, TractorConnection, WeylStructure, build_sl
from precourant.checks import random_section
from precourant.courant import (check_homogeneity_theorem, jacobiator_at, jacobiator_frame,
                                jacobiator_frame_parts, jacobiator_on_frame)

alg, grading = build_sl(3)
weyl = WeylStructure.from_entries(2, christoffel={(0, 1, 1): PolyScalar.variable(0, 2)})
ctx = BracketContext(TractorConnection(alg, grading, weyl))
p = (Fraction(1), Fraction(1))

rng = random.Random("jacobiator")
x, y, z = (random_section(rng, ctx) for _ in range(3))
print("J(x, y, z)(p) from nested brackets:", [str(v) for v in jacobiator_at(x, y, z, ctx, p)])

direct = jacobiator_on_frame(ctx, p)
closed = jacobiator_frame(ctx, p)
print("frame tensor, direct == closed form:", bool((direct == closed).all()))
lin, quad = jacobiator_frame_parts(ctx, p)
print("nonzero entries: linear part", int((lin != 0).sum()), " quadratic part", int((quad != 0).sum()))

res = check_homogeneity_theorem(ctx, p)
print(f"hom(kappa) = {res.hom_kappa}, hom(J) = {res.hom_J}, J != 0: {res.jacobiator_nonzero}")
