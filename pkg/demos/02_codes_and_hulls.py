"""Classical codes over GF(9): duals, Hermitian hulls, and distances.

Works through the bundled [16,5,8] code whose 3-dimensional hull powers
the entanglement-reduction example elsewhere in the demos.
"""

from eaqecc import GF, LinearCode, min_weight_outside, tables
from eaqecc.matrix import MatrixFq

F9 = GF(9)

M, _ = MatrixFq.from_text(tables.load_data_text("g16_5_9.txt"))
C = LinearCode(F9, M)
print("code:", C)
print("minimum distance:", C.min_distance(), "(full scan of 9^5 words)")

dual = C.hermitian_dual()
print("Hermitian dual:", dual)
print("Euclidean dual dimension:", C.euclidean_dual().k)

hull_basis, ell = C.hermitian_hull()
print(f"hull dimension: {ell} = k - rank(G G^dagger)")
hull = C.hull_code()
print("hull as a code:", hull, "with distance", hull.min_distance().value)

print("\nweight of dual words outside the hull (the quantity quantum distances use):")
print("  ", min_weight_outside(C, hull))

print("\nhull dimension is blind to column permutations but not to column scaling:")
perm = list(range(1, 16)) + [0]
print("  permuted:", C.permute_columns(perm).hull_dim)
scaled = C.scale_columns([3] + [1] * 15)  # w has norm 2 != 1
print("  scaled first column by w:", scaled.hull_dim)

print("\nthe [29,14] bundled code is Hermitian self-orthogonal: hull = the whole code")
M29, _ = MatrixFq.from_text(tables.load_data_text("g29_14_9.txt"))
C29 = LinearCode(F9, M29)
print("  G G^dagger == 0:", C29.gram_hermitian().is_zero(), "| hull dim:", C29.hull_dim)
