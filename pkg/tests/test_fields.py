import pytest

from eaqecc.errors import InvalidFieldError
from eaqecc.fields import GF, FieldElement, FieldSpec

SQUARE_ORDERS = [4, 9, 25, 49]


def test_gf9_encoding_table():
    F = GF(9)
    assert F.element_table() == [
        (0, "0"), (1, "1"), (2, "2"), (3, "w"), (4, "w+1"),
        (5, "w+2"), (6, "2w"), (7, "2w+1"), (8, "2w+2"),
    ]


def test_gf9_generator_cycle():
    F = GF(9)
    w = F.generator
    assert w == 3
    assert [F.pow_(w, i) for i in range(8)] == [1, 3, 4, 7, 2, 6, 8, 5]


def test_pinned_defining_polys():
    assert GF(9).defining_poly == (2, 2, 1)  # x^2 + 2x + 2
    assert GF(4).defining_poly == (1, 1, 1)  # x^2 + x + 1


def test_gf_cache_identity():
    assert GF(9) is GF(9)
    assert GF(9) == FieldSpec(3, 2)


@pytest.mark.parametrize("order", [2, 3, 4, 5, 8, 9, 16, 25, 27, 49, 81])
def test_inverses_exhaustive(order):
    F = GF(order)
    for a in F.nonzero_elements():
        assert F.mul(a, F.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@pytest.mark.parametrize("order", [4, 9, 16, 25, 49, 81])
def test_frobenius_is_homomorphism(order):
    F = GF(order)
    for a in F.elements():
        for b in F.elements():
            assert F.conj(F.mul(a, b)) == F.mul(F.conj(a), F.conj(b))
            assert F.conj(F.add(a, b)) == F.add(F.conj(a), F.conj(b))
        assert F.conj(F.conj(a)) == a


def test_conj_golden_values():
    F9 = GF(9)
    assert F9.conj(0) == 0
    assert F9.conj(1) == 1
    # conj(w) = w^3 = 2w + 1, encoded 7
    assert F9.conj(3) == 7


@pytest.mark.parametrize("order", SQUARE_ORDERS)
def test_norm_maps_onto_subfield(order):
    F = GF(order)
    q = F.subfield_order
    images = {F.norm(a) for a in F.nonzero_elements()}
    assert images == set(range(1, q))
    for a in F.elements():
        assert F.in_base_subfield(F.norm(a))
        for b in F.elements():
            assert F.norm(F.mul(a, b)) == F.mul(F.norm(a), F.norm(b))


def test_norm_golden_values():
    assert GF(9).norm(0) == 0
    assert GF(9).norm(3) == 2  # norm(w) = w^4 = 2 = -1
    assert GF(4).norm(2) == 1  # GF(4)* has order 3


@pytest.mark.parametrize("order", [4, 9])
def test_norm_preimage_counts(order):
    F = GF(order)
    q = F.subfield_order
    for t in range(1, q):
        assert sum(1 for a in F.elements() if F.norm(a) == t) == q + 1


@pytest.mark.parametrize("order", SQUARE_ORDERS)
def test_solve_norm_contract(order):
    F = GF(order)
    assert F.solve_norm(0) == 0
    for t in range(1, F.subfield_order):
        a = F.solve_norm(t)
        assert F.norm(a) == t
        # canonical: no smaller solution exists
        assert all(F.norm(b) != t for b in range(a))


def test_solve_norm_minus_one_gf9():
    F = GF(9)
    assert F.solve_norm(F.neg(1)) == 3  # w itself has norm 2 = -1


def test_solve_norm_rejects_outside_subfield():
    with pytest.raises(InvalidFieldError):
        GF(9).solve_norm(3)


def test_square_order_gate():
    F3 = GF(3)
    with pytest.raises(InvalidFieldError):
        F3.conj(1)
    with pytest.raises(InvalidFieldError):
        F3.norm(2)


def test_field_construction_errors():
    with pytest.raises(InvalidFieldError):
        FieldSpec(4, 1)  # not prime
    with pytest.raises(InvalidFieldError):
        FieldSpec(3, 2, poly=(0, 0, 1))  # x^2 is reducible
    with pytest.raises(InvalidFieldError):
        FieldSpec(2, 2, poly=(1, 0, 1))  # x^2 + 1 = (x+1)^2 over GF(2)
    with pytest.raises(InvalidFieldError):
        GF(512)  # above the supported order cap
    with pytest.raises(InvalidFieldError):
        GF(6)  # not a prime power


def test_alternative_poly_allowed():
    F = FieldSpec(3, 2, poly=(1, 0, 1))  # x^2 + 1
    assert F.order == 9
    assert F != GF(9)


def test_field_element_wrapper():
    F = GF(9)
    w = FieldElement(F, 3)
    one = FieldElement(F, 1)
    assert (w + one).value == 4
    assert (w * w).value == 4  # w^2 = w + 1
    assert (-w).value == 6
    assert (w / w).value == 1
    assert (w**4).value == 2
    assert w.conj().value == 7
    assert w.norm().value == 2
    assert repr(w) == "w"
    with pytest.raises(InvalidFieldError):
        w + FieldElement(GF(4), 1)


def test_subtraction_and_division():
    for order in (2, 3, 4, 9, 25):
        F = GF(order)
        for a in F.elements():
            for b in F.nonzero_elements():
                assert F.add(F.sub(a, b), b) == a
                assert F.mul(F.div(a, b), b) == a
