from fractions import Fraction

from newton_invariants.core import maximal_ideal, parse_ideal
from newton_invariants.lct import (
    arnold_index,
    duality_product,
    lct,
    lct_compare,
    lct_k,
    lct_k_witness,
    lct_sequence,
)

I23 = parse_ideal("x^2, y^3")
BS = parse_ideal("x^14, y^7, x*y^6, z^4")
CUBE = parse_ideal("x^2, y^2, z^2")


def test_lct_values():
    for n in (2, 3, 4):
        assert lct(maximal_ideal(n)) == n
    assert lct(I23) == Fraction(5, 6)
    assert lct(BS) == Fraction(10, 21)
    assert arnold_index(BS) == Fraction(21, 10)


def test_lct_k():
    assert lct_k(CUBE, 2) == 1
    assert lct_k(CUBE, 3) == lct(CUBE)
    for I in (I23, BS, CUBE):
        assert lct_k(I, 1) == Fraction(1, min(sum(g) for g in I.gens))


def test_lct_k_witness_is_checkable():
    w = lct_k_witness(CUBE, 2)
    assert len(w.pinned.members) == 2
    a = w.weights
    lvalue = min(sum(x * y for x, y in zip(a, g)) for g in CUBE.gens)
    assert lvalue == 1
    assert (sum(a) - (3 - 2) * min(a)) / lvalue == w.value
    assert all(sum(x * y for x, y in zip(a, g)) == 1 for g in w.binding)


def test_sequences():
    assert lct_sequence(I23).values == (Fraction(5, 6), Fraction(1, 2))
    assert lct_sequence(CUBE).values == (Fraction(3, 2), 1, Fraction(1, 2))
    assert lct_sequence(CUBE).ascending() == (Fraction(1, 2), 1, Fraction(3, 2))


def test_compare():
    assert lct_compare(I23, I23) == (Fraction(5, 6), Fraction(5, 6))
    lo, hi = lct_compare(maximal_ideal(2) ** 2, maximal_ideal(2))
    assert lo == 1 and hi == 1
    lo, hi = lct_compare(I23, maximal_ideal(2))
    assert lo == Fraction(5, 6) and hi == 1
    lo, hi = lct_compare(maximal_ideal(2), maximal_ideal(2) ** 2)
    assert lo <= hi


def test_monomialized_example():
    assert lct(parse_ideal("x, y^2")) == Fraction(3, 2)


def test_duality():
    for I in (I23, BS, CUBE, maximal_ideal(3)):
        assert duality_product(I) == 1
