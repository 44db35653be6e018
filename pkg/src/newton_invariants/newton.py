"""Newton polyhedron queries: support values, integral closure, ray gauges, facets, covolume."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from typing import Sequence

import numpy as np

from .core import (
    DimensionError,
    IdealError,
    InfiniteColengthError,
    MonomialIdeal,
    UnsupportedDimensionError,
    WeightVector,
)
from .lp import EQ, LinearProgram, constraint, lp_feasible, lp_minimize

MAX_FACET_DIM = 4
MAX_COVOLUME_DIM = 3

Facet = tuple[tuple[int, ...], int]


def _coords(v) -> tuple[Fraction, ...]:
    if isinstance(v, WeightVector):
        return v.coords
    return tuple(Fraction(c) for c in v)


def _check_len(v: Sequence, ideal: MonomialIdeal) -> None:
    if len(v) != ideal.dim:
        raise DimensionError(f"vector of length {len(v)} against ideal of dimension {ideal.dim}")


def support_value(v, ideal: MonomialIdeal) -> Fraction:
    """min <v, k> over the Newton polyhedron; attained at a generator since v >= 0."""
    v = _coords(v)
    _check_len(v, ideal)
    if min(v) < 0:
        raise IdealError("support function needs a nonnegative weight")
    return min(sum((a * b for a, b in zip(v, g)), Fraction(0)) for g in ideal.gens)


def closure_witness(k: Sequence[int], ideal: MonomialIdeal) -> tuple[Fraction, ...] | None:
    """Convex weights mu with k >= sum mu_j g_j, or None if x^k is not in the integral closure."""
    _check_len(k, ideal)
    gens = ideal.gens
    for t, g in enumerate(gens):
        if all(a <= b for a, b in zip(g, k)):
            return tuple(Fraction(int(j == t)) for j in range(len(gens)))
    # the hull is spanned by the points that survive pruning
    corners = {tuple(int(c) for c in v) for v in prune_points(gens, ideal.dim)}
    use = [t for t, g in enumerate(gens) if g in corners]
    m, n = len(use), ideal.dim
    # variables: mu over the kept generators, then slack_1..slack_n
    cons = [constraint([gens[t][i] for t in use] + [int(j == i) for j in range(n)], EQ, k[i]) for i in range(n)]
    cons.append(constraint([1] * m + [0] * n, EQ, 1))
    ok, x = lp_feasible(m + n, cons)
    if not ok:
        return None
    mu = [Fraction(0)] * len(gens)
    for t, v in zip(use, x[:m]):
        mu[t] = v
    return tuple(mu)


def closure_member(k: Sequence[int], ideal: MonomialIdeal) -> bool:
    return closure_witness(k, ideal) is not None


def gauge(u, ideal: MonomialIdeal) -> Fraction:
    """Least lambda >= 0 with lambda*u in the Newton polyhedron."""
    u = _coords(u)
    _check_len(u, ideal)
    if min(u) < 0 or not any(u):
        raise IdealError("gauge direction must be nonnegative and nonzero")
    m, n = len(ideal.gens), ideal.dim
    # variables: lambda, mu_1..mu_m, slack_1..slack_n
    cons = [
        constraint([u[i]] + [-g[i] for g in ideal.gens] + [-int(j == i) for j in range(n)], EQ, 0)
        for i in range(n)
    ]
    cons.append(constraint([0] + [1] * m + [0] * n, EQ, 1))
    out = lp_minimize(LinearProgram(1 + m + n, (1,) + (0,) * (m + n), tuple(cons)))
    if not out.optimal:
        raise InfiniteColengthError(f"ray {tuple(str(c) for c in u)} never enters the Newton polyhedron")
    return out.value


def _int_det(m: np.ndarray) -> np.ndarray:
    """Exact determinants of a stack of k x k integer matrices, k <= 3."""
    k = m.shape[-1]
    if k == 0:
        return np.ones(m.shape[:-2], dtype=np.int64)
    if k == 1:
        return m[..., 0, 0]
    if k == 2:
        return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
    return (
        m[..., 0, 0] * (m[..., 1, 1] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 1])
        - m[..., 0, 1] * (m[..., 1, 0] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 0])
        + m[..., 0, 2] * (m[..., 1, 0] * m[..., 2, 1] - m[..., 1, 1] * m[..., 2, 0])
    )


_COMBO_CHUNK = 200_000


def prune_points(points: Sequence[Sequence[int]], n: int) -> np.ndarray:
    """Drop points lying above the midpoint of two others; no vertex of the hull is ever dropped."""
    pts = np.asarray(sorted(set(tuple(p) for p in points)), dtype=np.int64).reshape(-1, n)
    m = len(pts)
    if m < 3:
        return pts
    i, j = np.triu_indices(m, 1)
    sums = pts[i] + pts[j]
    keep = np.ones(m, dtype=bool)
    for g in range(m):
        hit = np.all(sums <= 2 * pts[g], axis=1) & (i != g) & (j != g)
        keep[g] = not hit.any()
    return pts[keep]


def supporting_normals(points: Sequence[Sequence[int]], n: int) -> list[Facet]:
    """Bounded facets of conv(points) + R^n_{>=0}: positive primitive normals with offsets."""
    if n > MAX_FACET_DIM:
        raise UnsupportedDimensionError(f"facet enumeration supports dimension <= {MAX_FACET_DIM}")
    pts = prune_points(points, n)
    if n == 1:
        return [((1,), int(pts.min()))]
    if len(pts) < n:
        return []
    found: set[Facet] = set()
    combos = combinations(range(len(pts)), n)
    while True:
        block = np.fromiter((i for c in _take(combos, _COMBO_CHUNK) for i in c), dtype=np.int64)
        if not len(block):
            break
        idx = block.reshape(-1, n)
        base = pts[idx[:, 0]]
        diffs = pts[idx[:, 1:]] - base[:, None, :]
        cols = list(range(n))
        normal = np.stack(
            [(-1) ** j * _int_det(diffs[:, :, [c for c in cols if c != j]]) for j in cols], axis=1
        )
        flip = normal.min(axis=1) < 0
        normal[flip] = -normal[flip]
        keep = normal.min(axis=1) > 0
        normal, base = normal[keep], base[keep]
        if not len(normal):
            continue
        g = np.gcd.reduce(normal, axis=1)
        normal = normal // g[:, None]
        offset = np.einsum("ij,ij->i", normal, base)
        valid = (normal @ pts.T).min(axis=1) >= offset
        for a, b in zip(normal[valid], offset[valid]):
            found.add((tuple(int(c) for c in a), int(b)))
    return sorted(found)


def _take(it, k):
    for _ in range(k):
        try:
            yield next(it)
        except StopIteration:
            return


def facet_list(ideal: MonomialIdeal) -> list[Facet]:
    """Bounded facets of the Newton polyhedron as (primitive inward normal, offset)."""
    n = ideal.dim
    if n > MAX_FACET_DIM:
        raise UnsupportedDimensionError(f"facet enumeration supports dimension <= {MAX_FACET_DIM}")
    if not ideal.finite_colength:
        raise InfiniteColengthError("facet enumeration needs a finite-colength ideal")
    if ideal.is_unit:
        return []
    return supporting_normals(ideal.gens, n)


def _rank(rows: list[tuple[int, ...]]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for col in range(len(m[0]) if m else 0):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            f = m[i][col] / m[rank][col]
            m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def vertices(ideal: MonomialIdeal) -> list[tuple[int, ...]]:
    """Vertices of the Newton polyhedron: generators where the tight facet and coordinate normals span R^n."""
    n = ideal.dim
    if ideal.is_unit:
        return [ideal.gens[0]]
    facets = facet_list(ideal)
    out = []
    for g in ideal.gens:
        tight = [a for a, b in facets if sum(x * y for x, y in zip(a, g)) == b]
        tight += [tuple(int(i == j) for j in range(n)) for i in range(n) if g[i] == 0]
        if _rank(tight) == n:
            out.append(g)
    return out


def _hull_area2(points: list[tuple[int, int]]) -> int:
    """Twice the area of the convex hull of planar integer points (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return 0

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[int, int]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[int, int]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return abs(sum(hull[i][0] * hull[i - 1][1] - hull[i - 1][0] * hull[i][1] for i in range(len(hull))))


def covolume(ideal: MonomialIdeal) -> Fraction:
    """Exact volume of the nonnegative orthant minus the Newton polyhedron.

    The region is the union of cones from the origin over the bounded facets; each
    cone's volume is ``offset * vol(projection of facet) / (n * normal[-1])`` where the
    projection drops the last coordinate.
    """
    n = ideal.dim
    if n > MAX_COVOLUME_DIM:
        raise UnsupportedDimensionError(f"covolume supports dimension <= {MAX_COVOLUME_DIM}")
    if not ideal.finite_colength:
        raise InfiniteColengthError("covolume is infinite for ideals of infinite colength")
    if ideal.is_unit:
        return Fraction(0)
    total = Fraction(0)
    for normal, offset in facet_list(ideal):
        on = [g for g in ideal.gens if sum(a * b for a, b in zip(normal, g)) == offset]
        if n == 1:
            proj = Fraction(1)
        elif n == 2:
            xs = [g[0] for g in on]
            proj = Fraction(max(xs) - min(xs))
        else:
            proj = Fraction(_hull_area2([(g[0], g[1]) for g in on]), 2)
        total += offset * proj / (n * normal[-1])
    return total


@dataclass(frozen=True)
class NewtonPolyhedron:
    """V-represented Newton polyhedron; facets are computed lazily (dimension <= 4)."""

    ideal: MonomialIdeal

    @cached_property
    def facets(self) -> list[Facet]:
        return facet_list(self.ideal)

    def support_value(self, v) -> Fraction:
        return support_value(v, self.ideal)

    def contains(self, k: Sequence[int]) -> bool:
        return closure_member(k, self.ideal)

    def satisfies_facets(self, k: Sequence) -> bool:
        if min(k) < 0:
            return False
        return all(sum(Fraction(a) * b for a, b in zip(normal, k)) >= offset for normal, offset in self.facets)

    def gauge(self, u) -> Fraction:
        return gauge(u, self.ideal)

    def gauge_from_facets(self, u) -> Fraction:
        u = _coords(u)
        return max(Fraction(offset) / sum(a * b for a, b in zip(normal, u)) for normal, offset in self.facets)

    @cached_property
    def covolume(self) -> Fraction:
        return covolume(self.ideal)
