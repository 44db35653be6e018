"""Monomial ideals as minimal exponent sets, with exact ideal arithmetic and parsing."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Exponent = tuple[int, ...]

VARIABLE_ALIASES = {"x": 1, "y": 2, "z": 3, "w": 4}


class IdealError(ValueError):
    """Invalid ideal data or an operation undefined for the given ideal."""


class ParseError(IdealError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DimensionError(IdealError):
    pass


class InfiniteColengthError(IdealError):
    pass


class UnsupportedDimensionError(IdealError):
    pass


_HEIGHT_LIMIT = 20_000_000


def _minimal_by_scan(pts: np.ndarray) -> np.ndarray:
    # a point can only be dominated by a point of strictly smaller total degree
    pts = pts[np.argsort(pts.sum(axis=1), kind="stable")]
    kept = np.empty_like(pts)
    nkept = 0
    for p in pts:
        if nkept and np.any(np.all(kept[:nkept] <= p, axis=1)):
            continue
        kept[nkept] = p
        nkept += 1
    return kept[:nkept]


def _minimal_by_heights(pts: np.ndarray, extents: np.ndarray) -> np.ndarray:
    """Minimal points via the column-height array over all but the longest axis.

    With h(k') = min{g_n : g' <= k'}, a point g is minimal iff it is the lowest point
    over its own column and lies strictly below h at every lower neighbour column.
    """
    n = pts.shape[1]
    perm = np.argsort(extents, kind="stable")
    q = pts[:, perm]
    base, last = q[:, :-1], q[:, -1]
    big = np.iinfo(np.int64).max
    own = np.full(tuple(int(e) for e in extents[perm][:-1]), big, dtype=np.int64)
    idx = tuple(base.T)
    np.minimum.at(own, idx, last)
    h = own
    for axis in range(n - 1):
        h = np.minimum.accumulate(h, axis=axis)
    keep = last == own[idx]
    for axis in range(n - 1):
        shifted = base.copy()
        shifted[:, axis] -= 1
        valid = shifted[:, axis] >= 0
        below = np.full(len(q), big, dtype=np.int64)
        below[valid] = h[tuple(shifted[valid].T)]
        keep &= last < below
    return pts[keep]


def minimalize(gens: Iterable[Sequence[int]]) -> tuple[Exponent, ...]:
    """Componentwise-minimal elements of ``gens``, in lexicographic order."""
    pts = np.asarray(gens if isinstance(gens, np.ndarray) else list(gens), dtype=np.int64)
    if pts.size == 0:
        raise IdealError("empty generator set")
    if pts.ndim != 2:
        raise IdealError("generators must be exponent vectors")
    extents = pts.max(axis=0) + 1
    if math.prod(int(e) for e in extents) < 2**62:
        _, first = np.unique(np.ravel_multi_index(tuple(pts.T), tuple(int(e) for e in extents)), return_index=True)
        pts = pts[first]
    if pts.shape[1] > 1 and len(pts) > 64 and math.prod(sorted(int(e) for e in extents)[:-1]) <= _HEIGHT_LIMIT:
        kept = _minimal_by_heights(pts, extents)
    else:
        kept = _minimal_by_scan(pts)
    return tuple(sorted({tuple(int(c) for c in row) for row in kept}))


@dataclass(frozen=True)
class MonomialIdeal:
    """Ideal generated by monomials ``x^g``; ``gens`` is the minimal generating set.

    Construct through :meth:`from_gens` unless ``gens`` is already minimal and
    sorted.
    """

    dim: int
    gens: tuple[Exponent, ...]
    finite_colength: bool = field(init=False, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise IdealError("dimension must be at least 1")
        if not self.gens:
            raise IdealError("an ideal needs at least one generator")
        for g in self.gens:
            if len(g) != self.dim:
                raise DimensionError(f"generator {g} does not have length {self.dim}")
            if min(g) < 0:
                raise IdealError(f"negative exponent in {g}")
        object.__setattr__(self, "finite_colength", all(d is not None for d in self.pure_powers()))

    @classmethod
    def from_gens(cls, gens: Iterable[Sequence[int]], dim: int | None = None) -> "MonomialIdeal":
        gens = [tuple(int(c) for c in g) for g in gens]
        if not gens:
            raise IdealError("an ideal needs at least one generator")
        if dim is None:
            dim = len(gens[0])
        for g in gens:
            if len(g) != dim:
                raise DimensionError(f"generator {g} does not have length {dim}")
            if min(g) < 0:
                raise IdealError(f"negative exponent in {g}")
        return cls(dim, minimalize(gens))

    def pure_powers(self) -> list[int | None]:
        """Degree of the pure power of each variable among the generators (None if absent)."""
        out: list[int | None] = [None] * self.dim
        for g in self.gens:
            support = [i for i, c in enumerate(g) if c]
            if len(support) == 1:
                i = support[0]
                out[i] = g[i] if out[i] is None else min(out[i], g[i])
            elif not support:
                return [0] * self.dim
        return out

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.dim,)

    def array(self) -> np.ndarray:
        return np.asarray(self.gens, dtype=np.int64).reshape(len(self.gens), self.dim)

    def contains(self, k: Sequence[int]) -> bool:
        """Plain membership of the monomial x^k (divisibility by a generator)."""
        return any(all(a <= b for a, b in zip(g, k)) for g in self.gens)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_product(self, other)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_sum(self, other)

    def __pow__(self, s: int) -> "MonomialIdeal":
        return ideal_power(self, s)

    def __str__(self) -> str:
        return render(self)


def _check_dims(a: MonomialIdeal, b: MonomialIdeal) -> None:
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")


def ideal_product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    _check_dims(a, b)
    sums = (a.array()[:, None, :] + b.array()[None, :, :]).reshape(-1, a.dim)
    return MonomialIdeal(a.dim, minimalize(sums))


def ideal_power(a: MonomialIdeal, s: int) -> MonomialIdeal:
    if s < 0:
        raise IdealError(f"power must be nonnegative, got {s}")
    if s == 0:
        return unit_ideal(a.dim)
    # square-and-multiply, minimalizing after every product
    result = None
    base = a
    while s:
        if s & 1:
            result = base if result is None else ideal_product(result, base)
        s >>= 1
        if s:
            base = ideal_product(base, base)
    return result


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    _check_dims(a, b)
    return MonomialIdeal(a.dim, minimalize(a.gens + b.gens))


def unit_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, ((0,) * n,))


def maximal_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, tuple(sorted(tuple(int(i == j) for j in range(n)) for i in range(n))))


def principal_diag(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, ((1,) * n,))


def ideal_order(ideal: MonomialIdeal) -> int:
    return min(sum(g) for g in ideal.gens)


# -- weights and coordinate sets -------------------------------------------


@dataclass(frozen=True)
class WeightVector:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        if not coords:
            raise IdealError("empty weight vector")
        if min(coords) <= 0:
            raise IdealError("weight vectors must be positive")
        object.__setattr__(self, "coords", coords)

    @property
    def v_min(self) -> Fraction:
        return min(self.coords)

    @property
    def min_set(self) -> frozenset[int]:
        """Indices (0-based) where the minimum is attained."""
        m = self.v_min
        return frozenset(i for i, c in enumerate(self.coords) if c == m)

    def in_region(self, i: int) -> bool:
        """Membership in the cone of weights with at least n+1-i minimal coordinates."""
        return len(self.min_set) >= len(self.coords) + 1 - i


@dataclass(frozen=True)
class CoordinateSet:
    """Nonempty subset of variable indices; stored 0-based, rendered 1-based."""

    members: frozenset[int]
    dim: int

    def __post_init__(self):
        members = frozenset(self.members)
        if not members:
            raise IdealError("coordinate set must be nonempty")
        if min(members) < 0 or max(members) >= self.dim:
            raise IdealError(f"coordinate set {sorted(members)} outside 0..{self.dim - 1}")
        object.__setattr__(self, "members", members)

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def one_based(self) -> list[int]:
        return [i + 1 for i in self.sorted()]


# -- parsing and rendering ---------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<var>[a-z]\d*)|(?P<num>\d+)|(?P<op>[\^*,]))")


def _parse_monomials(text: str) -> list[dict[int, int]]:
    pos = 0
    monomials: list[dict[int, int]] = []
    current: dict[int, int] = {}
    expect_factor = True
    last_var: int | None = None
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        if m.group("var"):
            if not expect_factor:
                raise ParseError("expected '*', '^' or ','", start)
            name = m.group("var")
            if name in VARIABLE_ALIASES:
                idx = VARIABLE_ALIASES[name]
            elif name[0] == "x" and len(name) > 1 and name[1:] != "0":
                idx = int(name[1:])
            else:
                raise ParseError(f"unknown variable {name!r}", start)
            current[idx] = current.get(idx, 0) + 1
            last_var = idx
            expect_factor = False
        elif m.group("num"):
            if not expect_factor:
                raise ParseError("expected operator", start)
            if m.group("num") != "1":
                raise ParseError("only the constant 1 may appear as a factor", start)
            last_var = None
            expect_factor = False
        else:
            op = m.group("op")
            if expect_factor:
                raise ParseError(f"unexpected {op!r}", start)
            if op == "^":
                if last_var is None:
                    raise ParseError("'^' must follow a variable", start)
                m2 = re.compile(r"\s*(-?\d+)").match(text, m.end())
                if m2 is None:
                    raise ParseError("expected exponent after '^'", m.end())
                e = int(m2.group(1))
                if e < 0:
                    raise ParseError("negative exponent", m2.start(1))
                current[last_var] += e - 1
                last_var = None
                pos = m2.end()
                continue
            if op == "*":
                expect_factor = True
            else:
                monomials.append(current)
                current = {}
                expect_factor = True
            last_var = None
        pos = m.end()
    if expect_factor:
        if not monomials and not current:
            raise ParseError("empty generator list", len(text))
        raise ParseError("dangling operator", len(text))
    monomials.append(current)
    return monomials


def parse_ideal(text: str, dim: int | None = None) -> MonomialIdeal:
    """Parse ``"x^2, y^3"`` / ``"x1*x2^6"`` or a JSON list of exponent vectors."""
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.pos) from None
        if not isinstance(data, list) or not data:
            raise ParseError("empty generator list", 0)
        if not all(isinstance(g, list) and g and all(isinstance(c, int) for c in g) for g in data):
            raise ParseError("expected a list of integer lists", 0)
        width = len(data[0])
        if any(len(g) != width for g in data):
            raise ParseError("exponent vectors of unequal length", 0)
        if any(c < 0 for g in data for c in g):
            raise IdealError("negative exponent")
        if dim is not None and dim != width:
            raise DimensionError(f"declared dimension {dim} but vectors have length {width}")
        return MonomialIdeal.from_gens(data, width)
    monomials = _parse_monomials(text)
    used = max((max(m) for m in monomials if m), default=1)
    if dim is None:
        dim = used
    elif used > dim:
        raise DimensionError(f"variable x{used} exceeds declared dimension {dim}")
    gens = [tuple(m.get(i + 1, 0) for i in range(dim)) for m in monomials]
    return MonomialIdeal.from_gens(gens, dim)


def _var_name(i: int, n: int) -> str:
    if n <= 3:
        return "xyz"[i]
    if n == 4:
        return "xyzw"[i]
    return f"x{i + 1}"


def render_monomial(k: Sequence[int]) -> str:
    n = len(k)
    parts = []
    for i, e in enumerate(k):
        if e == 1:
            parts.append(_var_name(i, n))
        elif e > 1:
            parts.append(f"{_var_name(i, n)}^{e}")
    return "*".join(parts) if parts else "1"


def render(ideal: MonomialIdeal) -> str:
    """Canonical monomial text; ``parse_ideal(render(I), I.dim) == I``."""
    return ", ".join(render_monomial(g) for g in ideal.gens)
