"""Colength counting, multigraded Hilbert functions, and mixed multiplicities by finite differences."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .core import (
    DimensionError,
    IdealError,
    InfiniteColengthError,
    MonomialIdeal,
    ideal_order,
    ideal_product,
    ideal_sum,
    maximal_ideal,
    minimalize,
    unit_ideal,
)
from .newton import MAX_FACET_DIM, prune_points, supporting_normals

STABILIZATION_CAP = 40


class StabilizationError(RuntimeError):
    """The finite difference never repeated below the cap; indicates a bug."""


_CHUNK = 1 << 20
HEIGHT_DTYPE = np.int32


def _product_colength(factors: Sequence[MonomialIdeal]) -> int:
    """Colength of the product of ``factors`` without minimalizing the last product step.

    Standard monomials of a finite-colength ideal live in the box of pure-power degrees;
    over the first n-1 coordinates each column is cut at the lowest generator below it.
    """
    factors = [f for f in factors if not f.is_unit]
    if not factors:
        return 0
    n = factors[0].dim
    d = [0] * n
    for f in factors:
        powers = f.pure_powers()
        if any(p is None for p in powers):
            raise InfiniteColengthError(f"ideal {f} has infinite colength")
        d = [a + b for a, b in zip(d, powers)]
    if n == 1:
        return d[0]
    acc = factors[0]
    for f in factors[1:-1]:
        acc = ideal_product(acc, f)
    last = factors[-1] if len(factors) > 1 else unit_ideal(n)
    perm = sorted(range(n), key=lambda i: d[i])
    dims = np.asarray([d[i] for i in perm[:-1]])
    a = acc.array()[:, perm]
    b = last.array()[:, perm]
    heights = np.full(tuple(int(c) for c in dims), d[perm[-1]], dtype=np.int64)
    step = max(1, _CHUNK // len(b))
    for start in range(0, len(a), step):
        pts = (a[start:start + step, None, :] + b[None, :, :]).reshape(-1, n)
        pts = pts[np.all(pts[:, :-1] < dims, axis=1)]
        np.minimum.at(heights, tuple(pts[:, :-1].T), pts[:, -1])
    for axis in range(n - 1):
        heights = np.minimum.accumulate(heights, axis=axis)
    return int(heights.sum())


@lru_cache(maxsize=1024)
def colength(ideal: MonomialIdeal) -> int:
    """Number of standard monomials (exponents dominating no generator)."""
    if not ideal.is_unit and not ideal.finite_colength:
        raise InfiniteColengthError(f"ideal {ideal} has infinite colength")
    return _product_colength([ideal])


@lru_cache(maxsize=512)
def _power(ideal: MonomialIdeal, s: int) -> MonomialIdeal:
    if s <= 1:
        return unit_ideal(ideal.dim) if s == 0 else ideal
    half = _power(ideal, s // 2)
    sq = ideal_product(half, half)
    return ideal_product(sq, ideal) if s % 2 else sq


def _powers(ideals: Sequence[MonomialIdeal], exps: Sequence[int]) -> list[MonomialIdeal]:
    return [_power(k, e) for k, e in zip(ideals, exps) if e]


def _product_of_powers(ideals: Sequence[MonomialIdeal], exps: Sequence[int]) -> MonomialIdeal:
    out = unit_ideal(ideals[0].dim)
    for f in _powers(ideals, exps):
        out = ideal_product(out, f)
    return out


@dataclass(frozen=True)
class IdealTuple:
    entries: tuple[MonomialIdeal, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if not entries:
            raise IdealError("empty ideal tuple")
        n = entries[0].dim
        if len(entries) != n:
            raise DimensionError(f"a tuple in dimension {n} needs {n} ideals, got {len(entries)}")
        for e in entries:
            if e.dim != n:
                raise DimensionError("ideals of different dimensions in one tuple")
            if not e.finite_colength:
                raise InfiniteColengthError(f"tuple entry {e} has infinite colength")
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return len(self.entries)

    @classmethod
    def pattern(cls, first: MonomialIdeal, count: int, rest: MonomialIdeal) -> "IdealTuple":
        """``first`` repeated ``count`` times, padded with ``rest``."""
        return cls((first,) * count + (rest,) * (first.dim - count))


@dataclass(frozen=True)
class MultiplicityRecord:
    value: int
    stabilized_at: int
    consistency: tuple[str, ...] = field(default=())


def hilbert(tup: IdealTuple, r: Sequence[int]) -> int:
    """Colength of I_1^{r_1} ... I_n^{r_n}."""
    if len(r) != tup.dim or min(r) < 0:
        raise IdealError("exponent vector must have n nonnegative entries")
    return _product_colength(_powers(tup.entries, r))


def _maximal_power(ideal: MonomialIdeal) -> int:
    """t if the ideal is m^t (t >= 1), else 0."""
    if ideal.is_unit:
        return 0
    t = sum(ideal.gens[0])
    if all(sum(g) == t for g in ideal.gens) and len(ideal.gens) == math.comb(t + ideal.dim - 1, t):
        return t
    return 0


def _heights(factors: Sequence[MonomialIdeal], n: int, perm: list[int], dims: tuple[int, ...], top: int) -> np.ndarray:
    """Column heights of prod(factors) on a fixed box; cells past the product's box come out 0."""
    heights = np.full(dims, top, dtype=HEIGHT_DTYPE)
    factors = [f for f in factors if not f.is_unit]
    if not factors:
        heights[...] = 0
        return heights
    acc = factors[0]
    for f in factors[1:-1]:
        acc = ideal_product(acc, f)
    last = factors[-1] if len(factors) > 1 else unit_ideal(n)
    a = acc.array()[:, perm]
    b = last.array()[:, perm]
    lim = np.asarray(dims)
    step = max(1, _CHUNK // len(b))
    for start in range(0, len(a), step):
        pts = (a[start:start + step, None, :] + b[None, :, :]).reshape(-1, n)
        pts = pts[np.all(pts[:, :-1] < lim, axis=1)]
        np.minimum.at(heights, tuple(pts[:, :-1].T), pts[:, -1].astype(HEIGHT_DTYPE))
    for axis in range(n - 1):
        heights = np.minimum.accumulate(heights, axis=axis)
    return heights


def _times_maximal(heights: np.ndarray) -> np.ndarray:
    """Heights of X*m from those of X: min(H(k) + 1, H(k - e_j))."""
    out = heights + 1
    for axis in range(heights.ndim):
        dst = [slice(None)] * heights.ndim
        src = [slice(None)] * heights.ndim
        dst[axis] = slice(1, None)
        src[axis] = slice(None, -1)
        np.minimum(out[tuple(dst)], heights[tuple(src)], out=out[tuple(dst)])
    return out


def _mixed_difference(ideals: Sequence[MonomialIdeal], orders: Sequence[int], base: Sequence[int]) -> int:
    """Iterated forward difference of order ``orders[j]`` in slot j of G(p) = colength(prod K_j^p_j).

    Slots holding a power of m are multiplied into the column-height array one factor
    of m at a time, which avoids forming the large generator sets of m^q; the other
    slots are multiplied out as generator sets first.
    """
    n = ideals[0].dim
    if n == 1:
        total = 0
        for steps in product(*(range(c + 1) for c in orders)):
            sign = (-1) ** sum(c - k for c, k in zip(orders, steps))
            coef = math.prod(math.comb(c, k) for c, k in zip(orders, steps))
            total += sign * coef * hilbert_general(ideals, [b + k for b, k in zip(base, steps)])
        return total
    # one box large enough for every evaluation point
    tops = [0] * n
    for j, k in enumerate(ideals):
        for i, d in enumerate(k.pure_powers()):
            tops[i] += (base[j] + orders[j]) * d
    perm = sorted(range(n), key=lambda i: tops[i])
    dims = tuple(max(1, tops[i]) for i in perm[:-1])
    top = tops[perm[-1]]
    # a slot m^t is applied as t single factors of m
    tpow = {j: _maximal_power(k) for j, k in enumerate(ideals)}
    stencil = [j for j in tpow if tpow[j]]
    gen_slots = [j for j in tpow if not tpow[j]]

    def apply(h: np.ndarray, j: int) -> np.ndarray:
        for _ in range(tpow[j]):
            h = _times_maximal(h)
        return h

    def walk(h: np.ndarray, level: int) -> int:
        # slots before ``level`` are applied; returns the signed sum over the rest
        if level == len(stencil):
            return int(h.sum(dtype=np.int64))
        j = stencil[level]
        for _ in range(base[j]):
            h = apply(h, j)
        acc = 0
        for k in range(orders[j] + 1):
            if k:
                h = apply(h, j)
            acc += (-1) ** (orders[j] - k) * math.comb(orders[j], k) * walk(h, level + 1)
        return acc

    total = 0
    for gsteps in product(*(range(orders[j] + 1) for j in gen_slots)):
        gsign = (-1) ** sum(orders[j] - k for j, k in zip(gen_slots, gsteps))
        gcoef = math.prod(math.comb(orders[j], k) for j, k in zip(gen_slots, gsteps))
        factors = _powers([ideals[j] for j in gen_slots], [base[j] + k for j, k in zip(gen_slots, gsteps)])
        total += gsign * gcoef * walk(_heights(factors, n, perm, dims, top), 0)
    return total


def hilbert_general(ideals: Sequence[MonomialIdeal], exps: Sequence[int]) -> int:
    return _product_colength(_powers(ideals, exps))


def _fan(ideals: Sequence[MonomialIdeal]) -> tuple[np.ndarray, np.ndarray]:
    """Facet normals of sum_j p_j Gamma(K_j) for p > 0, with the support value of each K_j.

    For positive p the normal fan does not depend on p, so the facets of Gamma(prod K_j)
    serve for every evaluation point. Its vertices are sums of vertices of the factors.
    """
    n = ideals[0].dim
    corners = [[tuple(int(c) for c in v) for v in prune_points(k.gens, n)] for k in ideals]
    pts = [tuple(sum(c) for c in zip(*combo)) for combo in product(*corners)]
    normals = [a for a, _ in supporting_normals(minimalize(pts), n)]
    arr = np.asarray(normals, dtype=np.int64).reshape(-1, n)
    sup = np.asarray([[min(sum(x * y for x, y in zip(a, g)) for g in k.gens) for k in ideals] for a in normals],
                     dtype=np.int64).reshape(-1, len(ideals))
    return arr, sup


def _closure_colength(normals: np.ndarray, sup: np.ndarray, degs: np.ndarray, p: Sequence[int]) -> int:
    """Lattice points of the orthant outside sum_j p_j Gamma(K_j), by column heights."""
    p = np.asarray(p, dtype=np.int64)
    tops = degs.T @ p
    n = len(tops)
    if n == 1:
        return int(tops[0])
    perm = np.argsort(tops, kind="stable")
    dims = tuple(int(tops[i]) for i in perm[:-1])
    grids = np.ogrid[tuple(slice(0, d) for d in dims)]
    c = sup @ p
    heights = np.zeros(dims, dtype=np.int64)
    for a, rhs in zip(normals, c):
        lin = sum(int(a[perm[i]]) * grids[i] for i in range(n - 1))
        # least k_last with lin + a_last * k_last >= rhs
        np.maximum(heights, -((lin - rhs) // int(a[perm[-1]])), out=heights)
    return int(heights.sum())


def _closure_difference(ideals: Sequence[MonomialIdeal], orders: Sequence[int], base: Sequence[int],
                        fan: tuple[np.ndarray, np.ndarray]) -> int:
    """Mixed difference of G(p) = colength(closure(prod K_j^p_j))."""
    degs = np.asarray([k.pure_powers() for k in ideals], dtype=np.int64)
    total = 0
    for steps in product(*(range(c + 1) for c in orders)):
        sign = (-1) ** sum(c - k for c, k in zip(orders, steps))
        coef = math.prod(math.comb(c, k) for c, k in zip(orders, steps))
        total += sign * coef * _closure_colength(*fan, degs, [b + k for b, k in zip(base, steps)])
    return total


def _slot_scales(ideals: Sequence[MonomialIdeal]) -> list[int]:
    # low-degree slots need proportionally larger exponents before G turns polynomial
    degs = [max(p for p in k.pure_powers()) for k in ideals]
    top = max(degs)
    return [-(-top // max(d, 1)) for d in degs]


FILTRATIONS = ("closure", "power")


def mixed_multiplicity(
    tup: IdealTuple,
    cap: int = STABILIZATION_CAP,
    grouped: bool = True,
    confirm: int = 3,
    filtration: str = "closure",
) -> MultiplicityRecord:
    """Coefficient of r_1...r_n in the eventual Hilbert polynomial.

    Identical entries are merged: with K_j appearing c_j times, the value is the
    (c_1,...,c_t)-fold difference of G(p), which equals the unit mixed difference.

    ``filtration="closure"`` (default) takes G(p) = colength of the integral closure of
    prod K_j^p_j. Mixed multiplicities only see integral closures, and this G counts
    lattice points outside a dilated lattice polyhedron, a polynomial for p >= 1, so the
    base (R,...,R) settles at once. Dimensions above the facet limit fall back to
    ``"power"``: G(p) = colength(prod K_j^p_j) itself, at p_j = R * scale_j with
    scale_j = largest pure-power degree over that of K_j. Its difference can plateau
    at a wrong value for several R before the polynomial regime, so that route is a
    heuristic. Either way R grows until ``confirm`` consecutive bases agree.
    """
    if filtration not in FILTRATIONS:
        raise IdealError(f"filtration must be one of {FILTRATIONS}")
    if grouped:
        counts = Counter(tup.entries)
        ideals = sorted(counts, key=lambda k: k.gens)
        orders = [counts[k] for k in ideals]
    else:
        ideals = list(tup.entries)
        orders = [1] * len(ideals)
    if filtration == "closure" and tup.dim > MAX_FACET_DIM:
        filtration = "power"
    if filtration == "closure":
        fan = _fan(ideals)
        scales = [1] * len(ideals)
        step = lambda base: _closure_difference(ideals, orders, base, fan)  # noqa: E731
    else:
        scales = _slot_scales(ideals)
        step = lambda base: _mixed_difference(ideals, orders, base)  # noqa: E731
    history: list[int] = []
    for R in range(1, cap + 1):
        history.append(step([R * c for c in scales]))
        if len(history) >= confirm and len(set(history[-confirm:])) == 1:
            checks = [f"{filtration} filtration", f"stable at {confirm} consecutive bases"]
            if grouped:
                checks.append("symmetric by construction")
            return MultiplicityRecord(history[-1], R - confirm + 1, tuple(checks))
    raise StabilizationError(f"mixed multiplicity did not stabilize below base {cap}")


def mixed_value(entries: Sequence[MonomialIdeal], cap: int = STABILIZATION_CAP) -> int:
    return mixed_multiplicity(IdealTuple(tuple(entries)), cap).value


def relative_multiplicity(ideal: MonomialIdeal, i: int, pad: MonomialIdeal | None = None) -> int:
    """e(I repeated i times, pad repeated n-i times); ``pad`` defaults to the maximal ideal."""
    if pad is None:
        pad = maximal_ideal(ideal.dim)
    return mixed_multiplicity(IdealTuple.pattern(ideal, i, pad)).value


def samuel_multiplicity(ideal: MonomialIdeal) -> int:
    return relative_multiplicity(ideal, ideal.dim)


def e_sequence(ideal: MonomialIdeal) -> tuple[int, ...]:
    """(e_0, ..., e_n) with e_i = e(I x i, m x (n-i)); e_n is cross-checked against the covolume."""
    if not ideal.finite_colength:
        raise InfiniteColengthError(f"ideal {ideal} has infinite colength")
    n = ideal.dim
    seq = (1,) + tuple(relative_multiplicity(ideal, i) for i in range(1, n + 1))
    if seq[1] != ideal_order(ideal):
        raise StabilizationError(f"e_1 = {seq[1]} disagrees with the order {ideal_order(ideal)}")
    if n <= 3:
        from .newton import covolume

        expected = math.factorial(n) * covolume(ideal)
        if seq[n] != expected:
            raise StabilizationError(f"e_n = {seq[n]} disagrees with n! * covolume = {expected}")
    return seq


def max_pure_power(ideal: MonomialIdeal) -> int:
    powers = ideal.pure_powers()
    if any(p is None for p in powers):
        raise InfiniteColengthError(f"ideal {ideal} has infinite colength")
    return max(powers)


def reduction_number(K: MonomialIdeal, J: MonomialIdeal, i: int, s: int = 1) -> int:
    """Least r >= 0 with e((K^s+J^r) x i, (m^s+J^r) x (n-i)) = e(K^s x i, m^s x (n-i))."""
    n = K.dim
    if J.dim != n:
        raise DimensionError("reduction number needs ideals of one dimension")
    if J.is_unit:
        raise IdealError("J must be a proper ideal")
    if not 1 <= i <= n or s < 1:
        raise IdealError("need 1 <= i <= n and s >= 1")
    Ks = _power(K, s)
    ms = _power(maximal_ideal(n), s)
    target = mixed_value((Ks,) * i + (ms,) * (n - i))
    cap = s * max_pure_power(K) * n
    for r in range(cap + 1):
        Jr = _power(J, r)
        entries = (ideal_sum(Ks, Jr),) * i + (ideal_sum(ms, Jr),) * (n - i)
        if mixed_value(entries) == target:
            return r
    raise StabilizationError(f"reduction number exceeded the cap {cap}")
