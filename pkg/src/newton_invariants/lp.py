"""Exact rational linear programming: two-phase simplex with Bland's rule."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

GE = ">="
EQ = "="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class MalformedProgramError(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((a * b for a, b in zip(self.coeffs, x)), Fraction(0))
        return lhs >= self.rhs if self.relation == GE else lhs == self.rhs


def constraint(coeffs, relation, rhs) -> Constraint:
    if relation not in (GE, EQ):
        raise MalformedProgramError(f"unknown relation {relation!r}")
    return Constraint(tuple(Fraction(c) for c in coeffs), relation, Fraction(rhs))


@dataclass(frozen=True)
class LinearProgram:
    """Minimize ``objective . x`` subject to ``constraints``.

    ``nonneg`` marks variables with the bound x_j >= 0; unmarked variables are free.
    """

    num_vars: int
    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...] = ()
    nonneg: tuple[bool, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.nonneg is None:
            object.__setattr__(self, "nonneg", (True,) * self.num_vars)
        if self.num_vars < 0 or len(self.objective) != self.num_vars:
            raise MalformedProgramError("objective length does not match num_vars")
        if len(self.nonneg) != self.num_vars:
            raise MalformedProgramError("nonneg mask length does not match num_vars")
        for c in self.constraints:
            if len(c.coeffs) != self.num_vars:
                raise MalformedProgramError("constraint length does not match num_vars")
        if not self.constraints and not any(self.nonneg):
            raise MalformedProgramError("program has neither constraints nor bounds")

    def is_feasible_point(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.num_vars:
            return False
        if any(b and xi < 0 for b, xi in zip(self.nonneg, x)):
            return False
        return all(c.satisfied_by(x) for c in self.constraints)

    def value_at(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * b for a, b in zip(self.objective, x)), Fraction(0))


@dataclass(frozen=True)
class LPOutcome:
    status: str
    value: Fraction | None = None
    witness: tuple[Fraction, ...] | None = field(default=None)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Standard-form tableau for ``A x = b, x >= 0`` with b >= 0."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        p = row[c]
        if p != 1:
            inv = 1 / p
            self.rows[r] = row = [v * inv for v in row]
            self.rhs[r] *= inv
        nz = [j for j, v in enumerate(row) if v]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[c]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def minimize(self, cost: list[Fraction], allowed: int) -> str:
        """Run Bland-rule simplex on columns ``< allowed``; returns OPTIMAL or UNBOUNDED."""
        red = list(cost)
        for i, b in enumerate(self.basis):
            f = cost[b]
            if f:
                red = [v - f * a for v, a in zip(red, self.rows[i])]
        while True:
            entering = next((j for j in range(allowed) if red[j] < 0), None)
            if entering is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            r = best[1]
            self.pivot(r, entering)
            f = red[entering]
            red = [v - f * a for v, a in zip(red, self.rows[r])]


def lp_minimize(lp: LinearProgram) -> LPOutcome:
    """Exact optimum of ``lp`` over the rationals."""
    # column layout: for each variable a nonneg part (and a negative part when free),
    # then one surplus per inequality row, then one artificial per row
    col_of: list[tuple[int, int | None]] = []
    ncols = 0
    for free in (not b for b in lp.nonneg):
        if free:
            col_of.append((ncols, ncols + 1))
            ncols += 2
        else:
            col_of.append((ncols, None))
            ncols += 1
    nstruct = ncols

    ineq: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for c in lp.constraints:
        ineq.append((c.coeffs, c.rhs))
        if c.relation == EQ:
            ineq.append((tuple(-a for a in c.coeffs), -c.rhs))
    m = len(ineq)
    total = nstruct + m + m

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i, (coeffs, b) in enumerate(ineq):
        row = [Fraction(0)] * total
        for j, a in enumerate(coeffs):
            pos, neg = col_of[j]
            row[pos] = a
            if neg is not None:
                row[neg] = -a
        row[nstruct + i] = Fraction(-1)
        if b < 0:
            row = [-v for v in row]
            b = -b
        row[nstruct + m + i] = Fraction(1)
        rows.append(row)
        rhs.append(b)
    tab = _Tableau(rows, rhs, [nstruct + m + i for i in range(m)])

    phase1 = [Fraction(0)] * (nstruct + m) + [Fraction(1)] * m
    tab.minimize(phase1, total)
    if sum(tab.rhs[i] for i, b in enumerate(tab.basis) if b >= nstruct + m) != 0:
        return LPOutcome(INFEASIBLE)
    # drive zero-level artificials out of the basis where possible
    for i, b in enumerate(tab.basis):
        if b >= nstruct + m:
            for j in range(nstruct + m):
                if tab.rows[i][j] and j not in tab.basis:
                    tab.pivot(i, j)
                    break

    cost = [Fraction(0)] * total
    for j, (pos, neg) in enumerate(col_of):
        cost[pos] = lp.objective[j]
        if neg is not None:
            cost[neg] = -lp.objective[j]
    # artificials stuck in the basis sit on redundant rows at level zero; forbid re-entry
    status = tab.minimize(cost, nstruct + m)
    if status == UNBOUNDED:
        return LPOutcome(UNBOUNDED)
    values = [Fraction(0)] * total
    for i, b in enumerate(tab.basis):
        values[b] = tab.rhs[i]
    x = tuple(values[pos] - (values[neg] if neg is not None else 0) for pos, neg in col_of)
    return LPOutcome(OPTIMAL, lp.value_at(x), x)


def lp_feasible(num_vars: int, constraints: Sequence[Constraint], nonneg=None) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Phase one only: feasibility and an exact witness."""
    lp = LinearProgram(num_vars, (0,) * num_vars, tuple(constraints), None if nonneg is None else tuple(nonneg))
    out = lp_minimize(lp)
    return out.optimal, out.witness
