"""A curved projective patch: Gamma^1_{22} = x^1, everything else zero.

The tractor curvature is recovered by inverting ad on the commutator of
covariant derivatives, then graded and tested for regularity and normality.
"""
from fractions import Fraction

from precourant import PolyScalar, TractorConnection, WeylStructure, build_sl
from precourant.tractor import curvature_homogeneity, is_normal, is_regular, normality_defect

alg, grading = build_sl(3)
x1 = PolyScalar.variable(0, 2)
weyl = WeylStructure.from_entries(2, christoffel={(0, 1, 1): x1})
conn = TractorConnection(alg, grading, weyl)

print("omega_1 =", conn.omega[0])
print("omega_2 =", conn.omega[1])
print("kappa_12 =", conn.curvature[0, 1])

p = (Fraction(1), Fraction(1))
print("graded pieces at p:", {k: [(ab, [str(c) for c in v]) for ab, v in vs]
                              for k, vs in conn.graded_curvature(p).items()})
print("hom(kappa) =", curvature_homogeneity(conn, p))
print("regular:", is_regular(conn, [p]), " normal:", is_normal(conn, [p]))
dk = normality_defect(conn, p)
print("nonzero entries of d* kappa:", [(tuple(int(i) for i in idx), str(dk[idx]))
                                       for idx in zip(*(dk != 0).nonzero())])

# the curvature is the same whether read off the commutator or d omega + [omega, omega]
print("matches d omega + [omega, omega]:", conn.curvature[0, 1] == conn.closed_form_curvature(0, 1))
