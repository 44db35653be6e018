import pytest

from newton_invariants.core import (
    DimensionError,
    IdealError,
    MonomialIdeal,
    ParseError,
    WeightVector,
    CoordinateSet,
    ideal_power,
    ideal_product,
    ideal_sum,
    maximal_ideal,
    minimalize,
    parse_ideal,
    principal_diag,
    render,
    unit_ideal,
)


def gens(text, dim=None):
    return set(parse_ideal(text, dim).gens)


def test_parse_monomial_syntax():
    I = parse_ideal("x^2, y^3")
    assert set(I.gens) == {(2, 0), (0, 3)}
    assert I.finite_colength


def test_parse_exponent_lists_briancon_speder():
    I = parse_ideal("[[14,0,0],[0,7,0],[1,6,0],[0,0,4]]")
    assert I == parse_ideal("x^14, y^7, x*y^6, z^4")
    assert I.dim == 3 and I.finite_colength


def test_parse_indexed_variables():
    I = parse_ideal("x1^14, x2^7, x1*x2^6, x3^4")
    assert I == parse_ideal("x^14, y^7, x*y^6, z^4")


def test_parse_minimalizes():
    assert gens("x^2, x^4, y^3") == {(2, 0), (0, 3)}


def test_parse_dim_override_and_inference():
    assert parse_ideal("x^2").dim == 1
    assert parse_ideal("x^2", 3).gens == ((2, 0, 0),)
    assert parse_ideal("x5").dim == 5
    with pytest.raises(DimensionError):
        parse_ideal("z", 2)


@pytest.mark.parametrize(
    "text,pos",
    [("x^2,,y", 4), ("x^", 2), ("x + y", 2), ("q^2", 0), ("", 0), ("x^2*", 4)],
)
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_ideal(text)
    assert info.value.position == pos


def test_parse_rejects_negative_exponent():
    with pytest.raises(ParseError):
        parse_ideal("x^-1, y")
    with pytest.raises(IdealError):
        parse_ideal("[[1,-1]]")


def test_parse_rejects_empty_list():
    with pytest.raises(IdealError):
        parse_ideal("[]")


@pytest.mark.parametrize(
    "pts,expected",
    [
        ([(2, 0), (4, 0), (0, 3)], {(2, 0), (0, 3)}),
        ([(1, 1)], {(1, 1)}),
        ([(2, 0), (1, 1), (0, 2)], {(2, 0), (1, 1), (0, 2)}),
    ],
)
def test_minimalize_examples(pts, expected):
    assert set(minimalize(pts)) == expected


def test_minimalize_large_input_uses_same_answer():
    import random

    rng = random.Random(5)
    pts = [tuple(rng.randrange(12) for _ in range(3)) for _ in range(3000)]
    brute = {p for p in set(pts) if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in set(pts))}
    assert set(minimalize(pts)) == brute


def test_product_examples():
    I = parse_ideal("x^2, y^3")
    m = maximal_ideal(2)
    assert set(ideal_product(I, m).gens) == {(3, 0), (2, 1), (1, 3), (0, 4)}
    assert ideal_product(I, unit_ideal(2)) == I
    assert set(ideal_product(I, I).gens) == {(4, 0), (2, 3), (0, 6)}


def test_power_examples():
    I = parse_ideal("x^2, y^3")
    assert ideal_power(I, 1) == I
    assert set(ideal_power(I, 2).gens) == {(4, 0), (2, 3), (0, 6)}
    assert set(ideal_power(maximal_ideal(2), 3).gens) == {(3, 0), (2, 1), (1, 2), (0, 3)}
    with pytest.raises(IdealError):
        ideal_power(I, -1)


def test_sum_and_standard_ideals():
    I = parse_ideal("x^2, y^3")
    assert ideal_sum(I, ideal_power(maximal_ideal(2), 2)) == ideal_power(maximal_ideal(2), 2)
    assert set(maximal_ideal(3).gens) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert principal_diag(3).gens == ((1, 1, 1),)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        ideal_product(maximal_ideal(2), maximal_ideal(3))
    with pytest.raises(DimensionError):
        ideal_sum(maximal_ideal(2), maximal_ideal(3))


def test_finite_colength_flag():
    assert not parse_ideal("x^2, x*y").finite_colength
    assert parse_ideal("x^2, x*y, y^5").finite_colength
    assert not principal_diag(2).finite_colength


def test_generators_are_lexicographic():
    I = parse_ideal("x^2, y^3, x*y")
    assert list(I.gens) == sorted(I.gens)


def test_render_round_trip():
    for text in ["x^2, y^3", "x^14, y^7, x*y^6, z^4", "x*y*z*w, x^3, y^3, z^3, w^3", "x1^2, x5"]:
        I = parse_ideal(text)
        assert parse_ideal(render(I), I.dim) == I


def test_unit_ideal_renders_and_parses():
    assert render(unit_ideal(2)) == "1"
    assert parse_ideal("1", 2).is_unit


def test_weight_vector_and_coordinate_set():
    v = WeightVector((3, 1, 1))
    assert v.v_min == 1 and v.min_set == frozenset({1, 2})
    assert v.in_region(2) and not v.in_region(1)
    with pytest.raises(IdealError):
        WeightVector((1, 0))
    L = CoordinateSet(frozenset({0, 2}), 3)
    assert L.one_based() == [1, 3]
    with pytest.raises(IdealError):
        CoordinateSet(frozenset(), 3)
    with pytest.raises(IdealError):
        CoordinateSet(frozenset({3}), 3)


def test_ideal_requires_generators():
    with pytest.raises(IdealError):
        MonomialIdeal.from_gens([], 2)
