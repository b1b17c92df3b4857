"""The two brackets on random polynomial sections, and the identities they satisfy."""
import random
from fractions import Fraction

from precourant import BracketContext, PolyScalar, TractorConnection, WeylStructure, build_sl
from precourant.checks import random_scalar, random_section
from precourant.courant import (angle_jacobi_defect, check_axiom2, check_axiom3, check_df_bracket,
                                courant_bracket, skew_defect, symmetric_part_defect)

alg, grading = build_sl(3)
weyl = WeylStructure.from_entries(2, christoffel={(0, 1, 1): PolyScalar.variable(0, 2)})
ctx = BracketContext(TractorConnection(alg, grading, weyl))

rng = random.Random("demo")
x, y, z = (random_section(rng, ctx) for _ in range(3))
f = random_scalar(rng, 2)
p = (Fraction(1, 2), Fraction(-3, 4))

xy = courant_bracket(x, y, ctx)
print("[x, y] has degree", max(c.degree() for c in xy), "and at p equals")
print("   ", [str(v) for v in xy.evaluate(p)])

print("[x,x] - 1/2 dB(x,x)     :", [str(v) for v in symmetric_part_defect(x, ctx, p)])
print("[x,y] + [y,x] - dB(x,y) :", [str(v) for v in skew_defect(x, y, ctx, p)])
print("axiom 2 defect          :", check_axiom2(x, y, ctx, p))
print("axiom 3 defect          :", check_axiom3(x, y, z, ctx, p))
print("[df, y]                 :", [str(v) for v in check_df_bracket(f, y, ctx, p)])
print("Jacobi for <,>          :", [str(v) for v in angle_jacobi_defect(x, y, z, ctx, p)])
