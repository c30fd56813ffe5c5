"""Exact linear programs, a certifying simplex solver and its checker."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from ..core import to_rational
from ._kernel import get_kernel

MINIMIZE = "minimize"
MAXIMIZE = "maximize"
LE, GE, EQ = "<=", ">=", "=="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

FREE = (None, None)
NONNEGATIVE = (0, None)

_RELATIONS = {"<=": LE, "≤": LE, "le": LE, ">=": GE, "≥": GE, "ge": GE,
              "==": EQ, "=": EQ, "eq": EQ}
_FLIP = {LE: GE, GE: LE, EQ: EQ}


class MalformedProgramError(ValueError):
    """Raised for dimension mismatches and unknown relations."""


@dataclass(frozen=True)
class Constraint:
    coefficients: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __init__(self, coefficients: Iterable, relation: str, rhs):
        try:
            relation = _RELATIONS[relation]
        except KeyError:
            raise MalformedProgramError(f"unknown relation {relation!r}") from None
        object.__setattr__(self, "coefficients", tuple(to_rational(a) for a in coefficients))
        object.__setattr__(self, "relation", relation)
        object.__setattr__(self, "rhs", to_rational(rhs))

    def activity(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * v for a, v in zip(self.coefficients, x) if a), Fraction(0))

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = self.activity(x)
        if self.relation == LE:
            return lhs <= self.rhs
        if self.relation == GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """``direction`` of ``objective . x`` subject to rows and variable bounds.

    *bounds* holds one ``(lower, upper)`` pair per variable, ``None``
    meaning unbounded on that side; the default is ``x >= 0``.
    """

    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]
    bounds: tuple[tuple[Fraction | None, Fraction | None], ...]
    direction: str = MINIMIZE

    def __init__(self, objective: Iterable, constraints: Iterable = (),
                 bounds: Iterable | None = None, direction: str = MINIMIZE):
        if direction not in (MINIMIZE, MAXIMIZE):
            raise MalformedProgramError(f"unknown direction {direction!r}")
        objective = tuple(to_rational(c) for c in objective)
        n = len(objective)
        cons = []
        for con in constraints:
            if not isinstance(con, Constraint):
                con = Constraint(*con)
            if len(con.coefficients) != n:
                raise MalformedProgramError(
                    f"constraint has {len(con.coefficients)} coefficients, objective has {n}")
            cons.append(con)
        if bounds is None:
            bounds = [NONNEGATIVE] * n
        bnds = []
        for lo, hi in bounds:
            bnds.append((None if lo is None else to_rational(lo),
                         None if hi is None else to_rational(hi)))
        if len(bnds) != n:
            raise MalformedProgramError(f"{len(bnds)} bounds given for {n} variables")
        object.__setattr__(self, "objective", objective)
        object.__setattr__(self, "constraints", tuple(cons))
        object.__setattr__(self, "bounds", tuple(bnds))
        object.__setattr__(self, "direction", direction)

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def objective_value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x) if c), Fraction(0))

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.n_vars:
            return False
        for v, (lo, hi) in zip(x, self.bounds):
            if lo is not None and v < lo:
                return False
            if hi is not None and v > hi:
                return False
        return all(con.holds(x) for con in self.constraints)


@dataclass(frozen=True)
class LPSolution:
    """Outcome of :func:`solve` with its certificate.

    * ``optimal``: ``primal`` is an optimal point and ``dual`` holds one
      multiplier per constraint with ``value`` equal to the dual objective.
    * ``unbounded``: ``primal`` is feasible and ``ray`` is an improving
      recession direction.
    * ``infeasible``: ``farkas`` holds row multipliers whose combination
      cannot be satisfied within the variable bounds.
    """

    status: str
    value: Fraction | None = None
    primal: tuple[Fraction, ...] | None = None
    dual: tuple[Fraction, ...] | None = None
    ray: tuple[Fraction, ...] | None = None
    farkas: tuple[Fraction, ...] | None = None

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


def _integerise(values: Sequence[Fraction]) -> tuple[list[int], Fraction]:
    """Smallest integer multiple of *values*; returns ``(ints, scale)``."""
    den = 1
    for v in values:
        d = v.denominator
        if d != 1:
            den = lcm(den, d)
    nums = [v.numerator * (den // v.denominator) for v in values]
    g = gcd(*nums) or 1
    if g != 1:
        nums = [x // g for x in nums]
    return nums, Fraction(den, g)


def _recombine(offsets, var_cols, xs) -> tuple[Fraction, ...]:
    """Map standard-form column values back to the user's variables."""
    out = []
    for off, cols in zip(offsets, var_cols):
        v = off
        for col, s in cols:
            if xs[col]:
                v = v + xs[col] if s == 1 else v - xs[col]
        out.append(Fraction(v))
    return tuple(out)


def solve(lp: LinearProgram, kernel: str | None = None) -> LPSolution:
    """Solve *lp* exactly with a two-phase simplex under Bland's rule.

    The duals are read off the final basis; nothing is re-solved.
    """
    k = get_kernel(kernel)
    sign = 1 if lp.direction == MINIMIZE else -1
    cost_user = [sign * c for c in lp.objective]

    # x_j = offset_j + sum(coef * x'_col), x' >= 0
    var_cols: list[list[tuple[int, int]]] = []
    offsets: list[Fraction] = []
    upper_rows: list[tuple[int, Fraction]] = []
    n_struct = 0
    for lo, hi in lp.bounds:
        if lo is not None:
            var_cols.append([(n_struct, 1)])
            offsets.append(lo)
            if hi is not None:
                upper_rows.append((n_struct, hi - lo))
            n_struct += 1
        elif hi is not None:
            var_cols.append([(n_struct, -1)])
            offsets.append(hi)
            n_struct += 1
        else:
            var_cols.append([(n_struct, 1), (n_struct + 1, -1)])
            offsets.append(Fraction(0))
            n_struct += 2

    # every standard column belongs to exactly one variable
    def substitute(coefficients):
        coeffs = [0] * n_struct
        shift = 0
        for j, a in enumerate(coefficients):
            if a:
                if offsets[j]:
                    shift += a * offsets[j]
                for col, s in var_cols[j]:
                    coeffs[col] = a if s == 1 else -a
        return coeffs, shift

    rows: list[tuple[list, str, Fraction]] = []
    for con in lp.constraints:
        coeffs, shift = substitute(con.coefficients)
        rows.append((coeffs, con.relation, con.rhs - shift))
    for col, ub in upper_rows:
        coeffs = [0] * n_struct
        coeffs[col] = 1
        rows.append((coeffs, LE, ub))

    cost, _ = substitute(cost_user)

    m = len(rows)
    scales: list[Fraction] = []
    int_rows: list[tuple[list[int], str]] = []
    for coeffs, rel, rhs in rows:
        ints, scale = _integerise(coeffs + [rhs])
        if ints[-1] < 0:
            ints = [-v for v in ints]
            scale = -scale
            rel = _FLIP[rel]
        int_rows.append((ints, rel))
        scales.append(scale)

    n_slack = sum(1 for _, rel in int_rows if rel != EQ)
    n_art = sum(1 for _, rel in int_rows if rel != LE)
    first_slack = n_struct
    first_art = n_struct + n_slack
    width = first_art + n_art + 1

    T: list[list[int]] = []
    basis: list[int] = []
    init_col: list[int] = []
    art_rows: list[int] = []
    s_next, a_next = first_slack, first_art
    for i, (ints, rel) in enumerate(int_rows):
        row = ints[:-1] + [0] * (n_slack + n_art) + [ints[-1]]
        if rel == LE:
            row[s_next] = 1
            init_col.append(s_next)
            s_next += 1
        else:
            if rel == GE:
                row[s_next] = -1
                s_next += 1
            row[a_next] = 1
            init_col.append(a_next)
            art_rows.append(i)
            a_next += 1
        basis.append(init_col[-1])
        T.append(row)

    cost_ints, kappa = _integerise(cost) if cost else ([], Fraction(1))
    T.append(cost_ints + [0] * (width - n_struct))

    D = 1
    if art_rows:
        phase1 = [0] * width
        for i in art_rows:
            Ti = T[i]
            for j in range(first_art):
                phase1[j] -= Ti[j]
            phase1[-1] -= Ti[-1]
        T.append(phase1)
        _, D, _ = k.simplex(T, basis, D, m + 1, first_art, m)
        if T[m + 1][-1] != 0:
            farkas = []
            for i in range(len(lp.constraints)):
                col = init_col[i]
                red = Fraction(T[m + 1][col], D)
                y = (1 if col >= first_art else 0) - red
                farkas.append(-y * scales[i])
            return LPSolution(INFEASIBLE, farkas=tuple(farkas))
        for i in range(m):
            if basis[i] >= first_art:
                Ti = T[i]
                for j in range(first_art):
                    if Ti[j] != 0:
                        D = k.pivot(T, basis, D, i, j)
                        break
        del T[m + 1]

    status, D, entering = k.simplex(T, basis, D, m, first_art, m)

    xs = [0] * (width - 1)
    for i in range(m):
        xs[basis[i]] = Fraction(T[i][-1], D)
    primal = _recombine(offsets, var_cols, xs)

    if status != 0:
        rs = [0] * (width - 1)
        rs[entering] = 1
        for i in range(m):
            rs[basis[i]] = Fraction(-T[i][entering], D)
        ray = _recombine([0] * len(var_cols), var_cols, rs)
        return LPSolution(UNBOUNDED, primal=primal, ray=ray)

    dual = []
    for i in range(len(lp.constraints)):
        sc = scales[i]
        dual.append(Fraction(-sign * T[m][init_col[i]] * sc.numerator * kappa.denominator,
                             D * sc.denominator * kappa.numerator))
    return LPSolution(OPTIMAL, value=lp.objective_value(primal), primal=primal, dual=tuple(dual))


def _min_form(lp: LinearProgram, y: Sequence[Fraction] | None = None):
    sign = 1 if lp.direction == MINIMIZE else -1
    c = [sign * v for v in lp.objective]
    if y is None:
        return c, None
    return c, [sign * v for v in y]


def _signs_ok(lp: LinearProgram, y: Sequence[Fraction], le_sign: int) -> bool:
    """Multiplier sign convention; *le_sign* is the sign required on ``<=`` rows."""
    for con, v in zip(lp.constraints, y):
        if con.relation == LE and v * le_sign < 0:
            return False
        if con.relation == GE and v * le_sign > 0:
            return False
    return True


def _combine(lp: LinearProgram, y: Sequence[Fraction]) -> list[Fraction]:
    g = [Fraction(0)] * lp.n_vars
    for con, v in zip(lp.constraints, y):
        if v:
            for j, a in enumerate(con.coefficients):
                if a:
                    g[j] += v * a
    return g


def verify_certificate(lp: LinearProgram, sol: LPSolution) -> bool:
    """Re-check *sol* against *lp* from scratch; no solver state is used."""
    try:
        return _verify(lp, sol)
    except (TypeError, ValueError, IndexError, ZeroDivisionError):
        return False


def _verify(lp: LinearProgram, sol: LPSolution) -> bool:
    n, m = lp.n_vars, len(lp.constraints)
    if sol.status == OPTIMAL:
        x, y = sol.primal, sol.dual
        if x is None or y is None or sol.value is None or len(y) != m:
            return False
        if not lp.is_feasible(x) or lp.objective_value(x) != sol.value:
            return False
        c, ym = _min_form(lp, y)
        # minimisation: >= rows carry y >= 0, <= rows y <= 0
        if not _signs_ok(lp, ym, -1):
            return False
        g = _combine(lp, ym)
        dual_obj = sum((v * con.rhs for con, v in zip(lp.constraints, ym)), Fraction(0))
        for j in range(n):
            d = c[j] - g[j]
            lo, hi = lp.bounds[j]
            if d > 0:
                if lo is None:
                    return False
                dual_obj += d * lo
            elif d < 0:
                if hi is None:
                    return False
                dual_obj += d * hi
        primal_obj = sum((cj * xj for cj, xj in zip(c, x)), Fraction(0))
        return dual_obj == primal_obj

    if sol.status == UNBOUNDED:
        x, r = sol.primal, sol.ray
        if x is None or r is None or len(r) != n or not lp.is_feasible(x):
            return False
        for con in lp.constraints:
            a = con.activity(r)
            if con.relation == LE and a > 0:
                return False
            if con.relation == GE and a < 0:
                return False
            if con.relation == EQ and a != 0:
                return False
        for v, (lo, hi) in zip(r, lp.bounds):
            if lo is not None and v < 0:
                return False
            if hi is not None and v > 0:
                return False
        c, _ = _min_form(lp)
        return sum((cj * rj for cj, rj in zip(c, r)), Fraction(0)) < 0

    if sol.status == INFEASIBLE:
        y = sol.farkas
        if y is None or len(y) != m:
            return False
        # <= rows carry y >= 0, so that g.x <= y.b for every feasible x
        if not _signs_ok(lp, y, 1):
            return False
        g = _combine(lp, y)
        floor = Fraction(0)
        for j in range(n):
            lo, hi = lp.bounds[j]
            if g[j] > 0:
                if lo is None:
                    return False
                floor += g[j] * lo
            elif g[j] < 0:
                if hi is None:
                    return False
                floor += g[j] * hi
        return floor > sum((v * con.rhs for con, v in zip(lp.constraints, y)), Fraction(0))

    return False
