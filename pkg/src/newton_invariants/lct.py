"""Log canonical thresholds of monomial ideals and the sequence of thresholds of generic sections."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import CoordinateSet, IdealError, InfiniteColengthError, MonomialIdeal, principal_diag
from .lojasiewicz import loj_wrt
from .lp import GE, LinearProgram, constraint, lp_minimize
from .newton import gauge


def _require_finite(ideal: MonomialIdeal) -> None:
    if not ideal.finite_colength:
        raise InfiniteColengthError(f"ideal {ideal} has infinite colength")


def lct(ideal: MonomialIdeal) -> Fraction:
    """1 / gauge of the diagonal ray."""
    _require_finite(ideal)
    return 1 / gauge((1,) * ideal.dim, ideal)


def arnold_index(ideal: MonomialIdeal) -> Fraction:
    return 1 / lct(ideal)


@dataclass(frozen=True)
class LctValue:
    value: Fraction
    pinned: CoordinateSet
    weights: tuple[Fraction, ...]
    binding: tuple[tuple[int, ...], ...]


def _pinned_lp(ideal: MonomialIdeal, M: tuple[int, ...]) -> LctValue:
    n = ideal.dim
    free = [j for j in range(n) if j not in M]
    # variables: s, then a_j for j outside M
    cons = [constraint([sum(g[j] for j in M)] + [g[j] for j in free], GE, 1) for g in ideal.gens]
    for t in range(len(free)):
        cons.append(constraint([-1] + [int(u == t) for u in range(len(free))], GE, 0))
    out = lp_minimize(LinearProgram(1 + len(free), (1,) * (1 + len(free)), tuple(cons)))
    if not out.optimal:
        raise IdealError(f"threshold program for pinned set {M} ended {out.status}")
    s, rest = out.witness[0], out.witness[1:]
    a = [s] * n
    for j, v in zip(free, rest):
        a[j] = v
    binding = tuple(g for g in ideal.gens if sum(x * y for x, y in zip(a, g)) == 1)
    return LctValue(out.value, CoordinateSet(frozenset(M), n), tuple(a), binding)


def lct_k_witness(ideal: MonomialIdeal, k: int) -> LctValue:
    """Minimum of (sum a - (n-k) a_min) / l(a, I) over weights with n+1-k minimal coordinates."""
    _require_finite(ideal)
    n = ideal.dim
    if not 1 <= k <= n:
        raise IdealError(f"k must lie in 1..{n}")
    best = None
    for M in combinations(range(n), n + 1 - k):
        cand = _pinned_lp(ideal, M)
        if best is None or cand.value < best.value:
            best = cand
    return best


def lct_k(ideal: MonomialIdeal, k: int) -> Fraction:
    return lct_k_witness(ideal, k).value


@dataclass(frozen=True)
class LctSequence:
    """Stored as (lct^(n), ..., lct^(1)); ``entry(k)`` gives lct^(k)."""

    values: tuple[Fraction, ...]
    witnesses: tuple[LctValue, ...]

    def entry(self, k: int) -> Fraction:
        return self.values[len(self.values) - k]

    def ascending(self) -> tuple[Fraction, ...]:
        return tuple(reversed(self.values))


def lct_sequence(ideal: MonomialIdeal) -> LctSequence:
    wits = tuple(lct_k_witness(ideal, k) for k in range(ideal.dim, 0, -1))
    return LctSequence(tuple(w.value for w in wits), wits)


def lct_compare(I: MonomialIdeal, J: MonomialIdeal) -> tuple[Fraction, Fraction]:
    """(lct(I), L_I(J) * lct(J)); the first never exceeds the second."""
    return lct(I), loj_wrt(J, I) * lct(J)


def duality_product(ideal: MonomialIdeal) -> Fraction:
    """lct(I) times the exponent of I relative to x_1...x_n; one for monomial ideals."""
    return lct(ideal) * loj_wrt(ideal, principal_diag(ideal.dim))
