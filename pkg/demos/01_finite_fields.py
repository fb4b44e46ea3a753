"""Tour of the finite-field layer.

Fields GF(p^s) up to order 256, with the conjugation and norm maps that
drive everything Hermitian downstream.  Elements are plain ints; the
encoding is the base-p digit expansion of the residue polynomial.
"""

from eaqecc import GF, FieldElement

F9 = GF(9)

print("GF(9) on x^2 + 2x + 2, writing w for the class of x:")
for value, name in F9.element_table():
    print(f"  {value} = {name}")

w = FieldElement(F9, F9.generator)
print("\nw is primitive; its powers cycle through every nonzero element:")
print(" ", [(w**i).value for i in range(9)])

print("\nConjugation x -> x^3 fixes exactly the base subfield GF(3):")
for a in F9.elements():
    tag = "fixed" if F9.conj(a) == a else f"-> {F9.element_poly_str(F9.conj(a))}"
    print(f"  conj({F9.element_poly_str(a):4s}) {tag}")

print("\nThe norm x -> x^4 maps onto GF(3); every nonzero target has 4 preimages:")
for t in (1, 2):
    pre = [a for a in F9.elements() if F9.norm(a) == t]
    print(f"  norm == {t}: {pre}")

print("\nsolve_norm picks the smallest preimage, handy for the -1 targets")
print("  solve_norm(-1) =", F9.solve_norm(F9.neg(1)), "(that is w itself: w^4 = 2 = -1)")

F4 = GF(4)
print("\nGF(4) on x^2 + x + 1: norms are all 1 on nonzero elements,")
print("which is why the hull-reduction trick needs a base field larger than GF(2):")
print(" ", {a: F4.norm(a) for a in F4.nonzero_elements()})
