from fractions import Fraction

import pytest

from newton_invariants.core import CoordinateSet, maximal_ideal, parse_ideal, principal_diag
from newton_invariants.lojasiewicz import (
    EmptyRestrictionError,
    loj_oracle_L0,
    loj_relative_oracle,
    loj_relative_wrt,
    loj_sequence,
    loj_wrt,
    ord,
    r0,
    restrict,
)

I23 = parse_ideal("x^2, y^3")
BS = parse_ideal("x^14, y^7, x*y^6, z^4")
ABC = parse_ideal("x^4, y^5, z^6, x*y*z")


def cs(members, n):
    return CoordinateSet(frozenset(members), n)


def test_order():
    assert ord(I23) == 2
    assert ord(maximal_ideal(3)) == 1
    assert ord(BS) == 4
    assert ord(ABC) == 3


def test_restrict():
    assert restrict(BS, cs({0, 1}, 3)) == parse_ideal("x^14, y^7, x*y^6")
    assert ord(restrict(BS, cs({0, 1}, 3))) == 7
    assert restrict(BS, cs({0, 1, 2}, 3)) == BS
    assert restrict(I23, cs({1}, 2)) == parse_ideal("x^3", 1)
    with pytest.raises(EmptyRestrictionError):
        restrict(parse_ideal("x*y"), cs({0}, 2))


def test_sequences():
    assert loj_sequence(ABC).values == (6, 5, 3)
    assert loj_sequence(BS).values == (14, 7, 4)
    assert loj_sequence(I23).values == (3, 2)
    L = loj_sequence(BS)
    assert L.entry(1) == 4 and L.entry(3) == 14
    assert L.ascending() == (4, 7, 14)


def test_loj_wrt():
    assert loj_wrt(I23, maximal_ideal(2)) == 3
    assert loj_wrt(I23, parse_ideal("x*y")) == Fraction(6, 5)
    assert loj_wrt(BS, principal_diag(3)) == Fraction(21, 10)


def test_oracles():
    assert r0(I23) == 3
    assert r0(maximal_ideal(2) ** 2) == 2
    assert r0(I23, full_layer=True) == 3
    assert loj_oracle_L0(I23) == 3
    assert loj_relative_oracle(I23, 1) == 2
    assert loj_relative_oracle(I23, 2) == 3
    assert loj_relative_oracle(BS, 2) == 7


def test_relative_wrt():
    assert loj_relative_wrt(I23, maximal_ideal(2), 2) == 3
    assert loj_relative_wrt(I23, parse_ideal("x*y"), 2, s_cap=4) == Fraction(5, 4)
