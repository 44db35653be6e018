"""Invariants as hypothesis properties on small random ideals."""

import math
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from newton_invariants.core import (
    MonomialIdeal,
    ideal_power,
    ideal_product,
    ideal_sum,
    maximal_ideal,
    minimalize,
    parse_ideal,
    principal_diag,
    render,
)
from newton_invariants.lct import lct, lct_k
from newton_invariants.lojasiewicz import loj_oracle_L0, loj_relative_oracle, loj_sequence, loj_wrt
from newton_invariants.lp import GE, LinearProgram, constraint, lp_minimize
from newton_invariants.multiplicity import IdealTuple, mixed_multiplicity, mixed_value, relative_multiplicity
from newton_invariants.newton import NewtonPolyhedron, covolume, gauge, support_value

SETTINGS = settings(max_examples=25, deadline=None)


@st.composite
def ideals(draw, dims=(2, 3), max_degree=6, extras=3):
    n = draw(st.sampled_from(dims))
    degs = [draw(st.integers(2, max_degree)) for _ in range(n)]
    gens = [tuple(d * int(i == j) for j in range(n)) for i, d in enumerate(degs)]
    for _ in range(draw(st.integers(0, extras))):
        g = tuple(draw(st.integers(0, d - 1)) for d in degs)
        if any(g):
            gens.append(g)
    return MonomialIdeal.from_gens(gens, n)


@st.composite
def pairs(draw):
    a = draw(ideals())
    b = draw(ideals(dims=(a.dim,)))
    return a, b


points = st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=8)


@SETTINGS
@given(points, st.randoms())
def test_minimalize_idempotent_and_order_free(pts, rnd):
    once = minimalize(pts)
    assert minimalize(once) == once
    shuffled = list(pts)
    rnd.shuffle(shuffled)
    assert minimalize(shuffled) == once


@SETTINGS
@given(pairs(), st.data())
def test_product_laws(pair, data):
    a, b = pair
    c = data.draw(ideals(dims=(a.dim,)))
    assert ideal_product(a, b) == ideal_product(b, a)
    assert ideal_product(ideal_product(a, b), c) == ideal_product(a, ideal_product(b, c))
    assert ideal_product(a, b).finite_colength == (a.finite_colength and b.finite_colength)
    assert ideal_sum(a, b).finite_colength


@SETTINGS
@given(ideals(dims=(1, 2, 3, 4)))
def test_render_round_trip(I):
    assert parse_ideal(render(I), I.dim) == I


@SETTINGS
@given(
    st.lists(st.tuples(st.integers(1, 5), st.integers(1, 5), st.integers(1, 12)), min_size=1, max_size=4),
    st.lists(st.integers(1, 4), min_size=4, max_size=4),
    st.randoms(),
)
def test_lp_row_permutation_and_scaling(rows, scales, rnd):
    cons = [constraint([a, b], GE, c) for a, b, c in rows]
    base = lp_minimize(LinearProgram(2, (2, 3), tuple(cons)))
    scaled = [constraint([s * x for x in c.coeffs], GE, s * c.rhs) for c, s in zip(cons, scales)]
    rnd.shuffle(scaled)
    other = lp_minimize(LinearProgram(2, (2, 3), tuple(scaled)))
    assert base.status == other.status and base.value == other.value
    assert LinearProgram(2, (2, 3), tuple(cons)).is_feasible_point(base.witness)


weights = st.lists(st.fractions(min_value=0, max_value=5, max_denominator=6), min_size=3, max_size=3)


@SETTINGS
@given(pairs(), weights, st.integers(1, 4))
def test_support_function(pair, w, lam):
    a, b = pair
    v = w[: a.dim]
    assert support_value([lam * x for x in v], a) == lam * support_value(v, a)
    assert support_value(v, ideal_product(a, b)) == support_value(v, a) + support_value(v, b)


@SETTINGS
@given(ideals(), st.data())
def test_closure_and_facets(I, data):
    P = NewtonPolyhedron(I)
    k = tuple(data.draw(st.integers(0, d)) for d in I.pure_powers())
    assert P.contains(k) == P.satisfies_facets(k)
    u = [data.draw(st.integers(1, 3)) for _ in range(I.dim)]
    assert P.gauge(u) == P.gauge_from_facets(u)
    for j, d in enumerate(I.pure_powers()):
        assert gauge([int(i == j) for i in range(I.dim)], I) == d


@SETTINGS
@given(ideals(max_degree=5), st.integers(2, 3))
def test_gauge_and_lct_homogeneity(I, s):
    u = (1,) * I.dim
    Is = ideal_power(I, s)
    assert gauge(u, Is) == s * gauge(u, I)
    assert lct(Is) == lct(I) / s


@SETTINGS
@given(ideals())
def test_covolume_matches_multiplicity(I):
    assert math.factorial(I.dim) * covolume(I) == relative_multiplicity(I, I.dim)
    assert relative_multiplicity(I, 1) == min(sum(g) for g in I.gens)


@SETTINGS
@given(ideals(max_degree=4, extras=2), st.integers(2, 3))
def test_multiplicity_scaling(I, s):
    n = I.dim
    Is = ideal_power(I, s)
    for i in range(1, n + 1):
        assert relative_multiplicity(Is, i) == s**i * relative_multiplicity(I, i)


@SETTINGS
@given(pairs(), st.randoms())
def test_symmetry_and_monotonicity(pair, rnd):
    a, b = pair
    n = a.dim
    entries = [a, b] + [maximal_ideal(n)] * (n - 2)
    base = mixed_value(entries)
    shuffled = list(entries)
    rnd.shuffle(shuffled)
    assert mixed_value(shuffled) == base
    assert mixed_multiplicity(IdealTuple(tuple(entries)), grouped=False).value == base
    bigger = [ideal_sum(x, maximal_ideal(n) ** 2) for x in entries]
    assert mixed_value(bigger) <= base


@SETTINGS
@given(ideals())
def test_lojasiewicz_invariants(I):
    n = I.dim
    L = loj_sequence(I)
    asc = L.ascending()
    assert all(x <= y for x, y in zip(asc, asc[1:]))
    top = max(I.pure_powers())
    assert L.entry(n) == loj_wrt(I, maximal_ideal(n)) == loj_oracle_L0(I) == top
    for i in range(1, n + 1):
        assert loj_relative_oracle(I, i) == L.entry(i)
    e = relative_multiplicity(I, n)
    e_prev = relative_multiplicity(I, n - 1)
    assert Fraction(e, e_prev) <= top
    assert e <= top**n


@SETTINGS
@given(pairs(), st.integers(2, 3))
def test_loj_wrt_scaling(pair, s):
    a, b = pair
    assert loj_wrt(ideal_power(a, s), b) == s * loj_wrt(a, b)
    assert loj_wrt(a, ideal_power(b, s)) == loj_wrt(a, b) / s


@SETTINGS
@given(ideals(dims=(2, 3, 4), max_degree=5))
def test_lct_invariants(I):
    n = I.dim
    t = lct(I)
    assert t * loj_wrt(I, principal_diag(n)) == 1
    chain = [lct_k(I, k) for k in range(1, n + 1)]
    assert all(x <= y for x, y in zip(chain, chain[1:]))
    assert chain[-1] == t
    o = min(sum(g) for g in I.gens)
    assert Fraction(1, o) <= t <= Fraction(n, o)
