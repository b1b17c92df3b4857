"""sl(3) with its first-column |1|-grading: basis, Killing form, grading element."""
from precourant import build_sl
from precourant.lie import codifferential_squared_defects, id_minus_m_rank_on_wedge, phi_map_rank

alg, grading = build_sl(3)

print("basis:", ", ".join(f"{n}[{g:+d}]" for n, g in zip(alg.basis_names, grading.grade_of)))
print("grade dimensions:", grading.dims())

# B(x, y) = tr(ad x ad y); on sl(3) this is 6 tr(XY)
print("Killing matrix:")
for row in alg.killing_matrix:
    print("   ", " ".join(f"{str(v):>3}" for v in row))

E = grading.grading_element
print("grading element E =", [str(v) for v in E])
for j in (-1, 0, 1):
    i = grading.indices(j)[0]
    print(f"  {{E, {alg.basis_names[i]}}} =", [str(v) for v in alg.bracket(E, alg.unit(i))])

rank, dim = id_minus_m_rank_on_wedge(alg.dim)
print(f"Id - m on wedge^2 g (x) g: rank {rank} of {dim}")
print(f"phi map rank: {phi_map_rank(alg)} of {alg.dim}")
print("d* o d* failures on wedge^3 p^perp (x) g:", len(codifferential_squared_defects(grading)))
