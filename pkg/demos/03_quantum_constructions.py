"""From classical codes to [[n, kappa, delta; c]]_q parameters.

The Hermitian route eats one code over GF(q^2); the ebit count c is the
rank of G G^dagger, and the distance reads off the dual (relative to
the hull when the dual pokes outside the code).  The CSS-like route
eats a pair of codes over GF(q).  Every constructed parameter set is
pushed through the bound checks.
"""

import numpy as np

from eaqecc import GF, LinearCode, bounds, css_construct, hermitian_construct, tables
from eaqecc.matrix import MatrixFq

F9, F2 = GF(9), GF(2)

print("== Hermitian route ==")
G5 = np.hstack([np.eye(4, dtype=np.uint8), np.full((4, 1), 2, np.uint8)])
C5 = LinearCode(F9, G5)
col = MatrixFq.from_text(tables.load_data_text("extcol_5_4.txt"))[0].array[:, 0]
C6 = LinearCode(F9, np.hstack([C5.G.array, col.reshape(4, 1)]))
print("ingredient:", C6, "d =", C6.min_distance().value, "hull", C6.hull_dim)
Q = hermitian_construct(C6)
print("quantum:", Q, "| purity:", Q.purity, "| net rate:", Q.net_rate)
print("bounds:")
for line in bounds.check_all(Q).lines():
    print("  ", line)

print("\n== extremal cases ==")
full = LinearCode(F9, np.eye(5, dtype=np.uint8))
print("full-space ingredient:", hermitian_construct(full), "(superdense-coding regime)")
zero = LinearCode(F9, MatrixFq.zeros(F9, 0, 5))
print("zero ingredient:", hermitian_construct(zero), "(no checks at all)")

print("\n== CSS-like route ==")
H = np.array([[1, 0, 0, 1, 1, 0, 1],
              [0, 1, 0, 1, 0, 1, 1],
              [0, 0, 1, 0, 1, 1, 1]], dtype=np.uint8)
simplex = LinearCode(F2, H)
Qs = css_construct(simplex, simplex)
print("simplex pair:", Qs, "| purity:", Qs.purity)
print("bounds:")
for line in bounds.check_all(Qs).lines():
    print("  ", line)
