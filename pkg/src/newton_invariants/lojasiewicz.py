"""Orders, coordinate restrictions, relative Lojasiewicz sequences and their definitional oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import (
    CoordinateSet,
    DimensionError,
    IdealError,
    InfiniteColengthError,
    MonomialIdeal,
    ideal_order,
    ideal_power,
    maximal_ideal,
)
from .multiplicity import reduction_number, samuel_multiplicity
from .newton import closure_member, gauge


class EmptyRestrictionError(IdealError):
    """No generator is supported on the requested coordinates (the restriction is zero)."""


def ord(ideal: MonomialIdeal) -> int:  # noqa: A001 - mathematical name
    """Largest r with I inside m^r, i.e. the least total degree of a generator."""
    return ideal_order(ideal)


def restrict(ideal: MonomialIdeal, L: CoordinateSet) -> MonomialIdeal:
    """Generators supported inside ``L``, reindexed to |L| variables."""
    if L.dim != ideal.dim:
        raise DimensionError(f"coordinate set of dimension {L.dim} against ideal of dimension {ideal.dim}")
    keep = L.sorted()
    outside = [j for j in range(ideal.dim) if j not in L.members]
    gens = [tuple(g[j] for j in keep) for g in ideal.gens if all(g[j] == 0 for j in outside)]
    if not gens:
        raise EmptyRestrictionError(f"restriction of {ideal} to coordinates {L.one_based()} is zero")
    return MonomialIdeal.from_gens(gens, len(keep))


@dataclass(frozen=True)
class LojSequence:
    """Stored in report order (L^(n), ..., L^(1)); ``entry(i)`` gives L^(i)."""

    values: tuple[Fraction, ...]
    witnesses: tuple[CoordinateSet, ...]

    @property
    def dim(self) -> int:
        return len(self.values)

    def entry(self, i: int) -> Fraction:
        if not 1 <= i <= self.dim:
            raise IdealError(f"index {i} outside 1..{self.dim}")
        return self.values[self.dim - i]

    def witness(self, i: int) -> CoordinateSet:
        return self.witnesses[self.dim - i]

    def ascending(self) -> tuple[Fraction, ...]:
        """(L^(1), ..., L^(n))."""
        return tuple(reversed(self.values))


def loj_sequence(ideal: MonomialIdeal) -> LojSequence:
    """Entry i is the largest order among restrictions to n+1-i coordinates."""
    if not ideal.finite_colength:
        raise InfiniteColengthError(f"ideal {ideal} has infinite colength")
    n = ideal.dim
    values, witnesses = [], []
    for i in range(n, 0, -1):
        best, arg = None, None
        for L in combinations(range(n), n + 1 - i):
            cs = CoordinateSet(frozenset(L), n)
            o = ideal_order(restrict(ideal, cs))
            if best is None or o > best:
                best, arg = o, cs
        values.append(Fraction(best))
        witnesses.append(arg)
    return LojSequence(tuple(values), tuple(witnesses))


def _check_reference(ideal: MonomialIdeal, J: MonomialIdeal) -> None:
    if J.dim != ideal.dim:
        raise DimensionError("Lojasiewicz exponent needs ideals of one dimension")
    if J.is_unit:
        raise IdealError("reference ideal contains a unit")


def loj_wrt(ideal: MonomialIdeal, J: MonomialIdeal) -> Fraction:
    """inf r/s over J^r inside the closure of I^s: the largest gauge of a generator of J."""
    _check_reference(ideal, J)
    if not ideal.finite_colength:
        raise InfiniteColengthError(f"ideal {ideal} has infinite colength")
    return max(gauge(u, ideal) for u in J.gens)


def _layer(n: int, r: int):
    if n == 1:
        yield (r,)
        return
    for first in range(r + 1):
        for rest in _layer(n - 1, r - first):
            yield (first,) + rest


def r0(ideal: MonomialIdeal, s: int = 1, full_layer: bool = False) -> int:
    """Least r with m^r inside the closure of I^s.

    The layer {|k| = r} lies in the Newton polyhedron iff its vertices r*e_j do
    (convexity), and a passing layer stays passing for larger r. ``full_layer``
    checks every lattice point of the layer instead.
    """
    if s < 1:
        raise IdealError("power must be positive")
    if not ideal.finite_colength:
        raise InfiniteColengthError(f"ideal {ideal} has infinite colength")
    n = ideal.dim
    Is = ideal_power(ideal, s)
    r = 0
    while True:
        if full_layer:
            points = _layer(n, r)
        else:
            points = (tuple(r * int(i == j) for i in range(n)) for j in range(n))
        if all(closure_member(k, Is) for k in points):
            return r
        r += 1


def loj_oracle_L0(ideal: MonomialIdeal, s_cap: int = 4) -> Fraction:
    """min r0(I^s)/s over 1 <= s <= min(s_cap, ceil(e/(r0-1)))."""
    first = r0(ideal, 1)
    if first <= 1:
        return Fraction(first)
    bound = math.ceil(Fraction(samuel_multiplicity(ideal), first - 1))
    return min(Fraction(r0(ideal, s), s) for s in range(1, min(s_cap, bound) + 1))


def loj_relative_oracle(ideal: MonomialIdeal, i: int, s_cap: int = 1) -> Fraction:
    """min over s <= s_cap of r_m((I x i, m x (n-i))^s)/s."""
    return loj_relative_wrt(ideal, maximal_ideal(ideal.dim), i, s_cap)


def loj_relative_wrt(ideal: MonomialIdeal, J: MonomialIdeal, i: int, s_cap: int = 1) -> Fraction:
    """Upper approximation of the i-th exponent relative to J.

    J^r is added to every entry of (I^s x i, m^s x (n-i)); the padding stays m.
    """
    _check_reference(ideal, J)
    if s_cap < 1:
        raise IdealError("s_cap must be positive")
    return min(Fraction(reduction_number(ideal, J, i, s), s) for s in range(1, s_cap + 1))
