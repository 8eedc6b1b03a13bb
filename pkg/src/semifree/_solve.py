"""Exact small-scale solving utilities shared by the geometry modules.

Everything here works over ``fractions.Fraction``: sparse multivariate
polynomials, linear elimination, a complete solver for the tiny
polynomial systems produced by the integration equations (linear
closure alternating with case splits on univariate quadratics), strict
and non-strict Fourier-Motzkin feasibility, and primitive integer
kernel bases for lattice quotients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Mapping, Sequence

Rational = Fraction | int

# ---------------------------------------------------------------------------
# polynomials

Monomial = tuple[tuple[str, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    acc = dict(a)
    for var, exp in b:
        acc[var] = acc.get(var, 0) + exp
    return tuple(sorted(acc.items()))


@dataclass(frozen=True)
class Poly:
    """Sparse multivariate polynomial with rational coefficients."""

    terms: tuple[tuple[Monomial, Fraction], ...]

    # -- construction ------------------------------------------------------

    @staticmethod
    def _from_dict(d: Mapping[Monomial, Fraction]) -> Poly:
        return Poly(tuple(sorted((m, c) for m, c in d.items() if c)))

    @staticmethod
    def const(value: Rational) -> Poly:
        v = Fraction(value)
        return Poly(((((), v)),)) if v else Poly(())

    @staticmethod
    def var(name: str) -> Poly:
        return Poly(((((name, 1),), Fraction(1)),))

    @staticmethod
    def coerce(value: "Poly | Rational") -> Poly:
        return value if isinstance(value, Poly) else Poly.const(value)

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m, _ in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self!r}")
        return self.terms[0][1] if self.terms else Fraction(0)

    def variables(self) -> frozenset[str]:
        return frozenset(v for m, _ in self.terms for v, _ in m)

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m, _ in self.terms), default=0)

    def as_linear(self) -> tuple[Fraction, dict[str, Fraction]] | None:
        """Return ``(constant, {var: coeff})`` when total degree <= 1."""
        const = Fraction(0)
        coeffs: dict[str, Fraction] = {}
        for m, c in self.terms:
            if not m:
                const = c
            elif len(m) == 1 and m[0][1] == 1:
                coeffs[m[0][0]] = c
            else:
                return None
        return const, coeffs

    def as_univariate(self) -> tuple[str, list[Fraction]] | None:
        """Return ``(var, [c0, c1, ...])`` when only one variable appears."""
        names = self.variables()
        if len(names) != 1:
            return None
        (name,) = names
        coeffs = [Fraction(0)] * (self.total_degree() + 1)
        for m, c in self.terms:
            coeffs[m[0][1] if m else 0] = c
        return name, coeffs

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly | Rational") -> Poly:
        other = Poly.coerce(other)
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, Fraction(0)) + c
        return Poly._from_dict(acc)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "Poly | Rational") -> Poly:
        return self + (-Poly.coerce(other))

    def __rsub__(self, other: "Poly | Rational") -> Poly:
        return Poly.coerce(other) + (-self)

    def __mul__(self, other: "Poly | Rational") -> Poly:
        other = Poly.coerce(other)
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = _mono_mul(m1, m2)
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return Poly._from_dict(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def substitute(self, values: Mapping[str, "Poly | Rational"]) -> Poly:
        out = Poly.const(0)
        for m, c in self.terms:
            factor = Poly.const(c)
            for var, exp in m:
                if var in values:
                    factor = factor * (Poly.coerce(values[var]) ** exp)
                else:
                    factor = factor * (Poly.var(var) ** exp)
            out = out + factor
        return out

    def __repr__(self) -> str:  # compact debugging form
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# linear algebra over the rationals


def rref(
    rows: list[list[Fraction]], col_limit: int | None = None
) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices).

    ``col_limit`` restricts pivoting to the leading columns so augmented
    matrices keep their right-hand side intact.
    """
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    row = 0
    cols = len(mat[0]) if mat else 0
    if col_limit is not None:
        cols = min(cols, col_limit)
    for col in range(cols):
        sel = next((r for r in range(row, len(mat)) if mat[r][col]), None)
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        lead = mat[row][col]
        mat[row] = [x / lead for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    return mat, pivots


class InconsistentSystemError(ValueError):
    """Raised when a linear system has no solution."""


def solve_linear(
    rows: Sequence[tuple[Mapping[str, Fraction], Fraction]],
    variables: Sequence[str],
) -> tuple[dict[str, Fraction], list[str]] | None:
    """Solve ``sum coeff*v = rhs`` rows exactly.

    Returns ``(values, free_variables)`` where free variables are set to
    zero in ``values``, or ``None`` when the system is inconsistent.
    """
    order = list(variables)
    mat = [
        [Fraction(coeffs.get(v, 0)) for v in order] + [Fraction(rhs)]
        for coeffs, rhs in rows
    ]
    if not mat:
        return {v: Fraction(0) for v in order}, order
    n = len(order)
    red, pivots = rref(mat, col_limit=n)
    for r in red:
        if all(x == 0 for x in r[:n]) and r[n]:
            return None
    free = [v for i, v in enumerate(order) if i not in pivots]
    values = {v: Fraction(0) for v in order}
    for ri, col in enumerate(pivots):
        values[order[col]] = red[ri][n] - sum(
            red[ri][j] * values[order[j]]
            for j in range(n)
            if j != col and red[ri][j]
        )
    return values, free


# ---------------------------------------------------------------------------
# polynomial systems


class SolverStallError(RuntimeError):
    """The case-split strategy cannot make progress on this system."""


@dataclass(frozen=True)
class Solution:
    """One solution branch: fixed values plus still-free variables."""

    assignment: tuple[tuple[str, Fraction], ...]
    free: frozenset[str]

    def value(self, var: str) -> Fraction:
        return dict(self.assignment)[var]

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.assignment)


def sqrt_fraction(value: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction] | None:
    """Roots of a univariate polynomial of degree <= 2; None above that."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) > 3:
        return None
    if not coeffs:
        raise ValueError("zero polynomial has no finite root set")
    if len(coeffs) == 1:
        return []
    if len(coeffs) == 2:
        return [-coeffs[0] / coeffs[1]]
    c, b, a = coeffs
    root = sqrt_fraction(b * b - 4 * a * c)
    if root is None:
        return []
    return sorted({(-b + root) / (2 * a), (-b - root) / (2 * a)})


def solve_system(equations: Iterable[Poly]) -> list[Solution]:
    """All rational solutions of a system of polynomials set to zero.

    Strategy: exact linear elimination (expressing pivot variables as
    affine combinations of the rest), then case splits on equations that
    become univariate of degree <= 2, recursing until every equation is
    satisfied. Branches without rational roots are discarded, which is
    sound because only rational solutions are admissible downstream.
    """
    variables = sorted(set().union(*(e.variables() for e in equations)) or set())
    out: list[Solution] = []
    _solve_rec([e for e in equations], {}, set(variables), out)
    unique: dict[tuple, Solution] = {}
    for sol in out:
        unique[(sol.assignment, sol.free)] = sol
    return list(unique.values())


def _solve_rec(
    equations: list[Poly],
    fixed: dict[str, Fraction],
    universe: set[str],
    out: list[Solution],
) -> None:
    eqs = []
    for e in equations:
        e = e.substitute(fixed) if fixed else e
        if e.is_constant():
            if e.constant_value():
                return
            continue
        eqs.append(e)

    # Linear closure: pin down variables forced by the linear subset.
    while True:
        linear = [(e, e.as_linear()) for e in eqs]
        lin_rows = [
            (coeffs, -const) for _, lin in linear if lin for const, coeffs in [lin]
        ]
        if not lin_rows:
            break
        lin_vars = sorted(set().union(*(c.keys() for c, _ in lin_rows)))
        solved = solve_linear(lin_rows, lin_vars)
        if solved is None:
            return
        mat = [
            [coeffs.get(v, Fraction(0)) for v in lin_vars] + [rhs]
            for coeffs, rhs in lin_rows
        ]
        red, pivots = rref(mat, col_limit=len(lin_vars))
        forced: dict[str, Fraction] = {}
        exprs: dict[str, Poly] = {}
        n = len(lin_vars)
        for ri, col in enumerate(pivots):
            others = [j for j in range(n) if j != col and red[ri][j]]
            if not others:
                forced[lin_vars[col]] = red[ri][n]
            else:
                expr = Poly.const(red[ri][n])
                for j in others:
                    expr = expr - Poly.var(lin_vars[j]) * red[ri][j]
                exprs[lin_vars[col]] = expr
        if forced:
            fixed = {**fixed, **forced}
            new_eqs = []
            for e in eqs:
                e = e.substitute(forced)
                if e.is_constant():
                    if e.constant_value():
                        return
                    continue
                new_eqs.append(e)
            eqs = new_eqs
            continue
        if exprs:
            # Eliminate pivot variables, solve the reduced system, then
            # back-substitute each branch.
            reduced = []
            for e in eqs:
                e = e.substitute(exprs)
                if e.is_constant():
                    if e.constant_value():
                        return
                    continue
                reduced.append(e)
            sub_out: list[Solution] = []
            _solve_rec(reduced, {}, universe - set(exprs), sub_out)
            for sol in sub_out:
                values = sol.as_dict()
                merged = {**fixed, **values}
                # The sub-universe may still list variables pinned in
                # ``fixed``; those are not free.
                free = set(sol.free) - set(merged)
                for var, expr in exprs.items():
                    value = expr.substitute(values)
                    if value.is_constant():
                        merged[var] = value.constant_value()
                    else:
                        free.add(var)
                _emit(merged, free, universe, out)
            return
        break

    if not eqs:
        _emit(fixed, set(), universe, out)
        return

    for e in eqs:
        uni = e.as_univariate()
        if uni is None:
            continue
        var, coeffs = uni
        roots = _rational_roots(coeffs)
        if roots is None:
            continue
        for root in roots:
            _solve_rec(eqs, {**fixed, var: root}, universe, out)
        return

    raise SolverStallError(
        f"no univariate case split available among {len(eqs)} equations"
    )


def _emit(
    merged: dict[str, Fraction],
    free: set[str],
    universe: set[str],
    out: list[Solution],
) -> None:
    free = (free | (universe - set(merged))) & universe
    assignment = tuple(
        sorted((v, val) for v, val in merged.items() if v in universe and v not in free)
    )
    out.append(Solution(assignment, frozenset(free)))


# ---------------------------------------------------------------------------
# linear feasibility (Fourier-Motzkin with strict inequalities)


@dataclass(frozen=True)
class AffineConstraint:
    """``sum coeffs*x + const  (> | >=)  0``."""

    coeffs: tuple[tuple[str, Fraction], ...]
    const: Fraction
    strict: bool

    @staticmethod
    def make(
        coeffs: Mapping[str, Rational], const: Rational, strict: bool
    ) -> "AffineConstraint":
        cleaned = tuple(
            sorted((v, Fraction(c)) for v, c in coeffs.items() if Fraction(c))
        )
        return AffineConstraint(cleaned, Fraction(const), strict)

    def coeff(self, var: str) -> Fraction:
        return dict(self.coeffs).get(var, Fraction(0))


def feasible(constraints: Sequence[AffineConstraint]) -> bool:
    """Exact feasibility of a system of affine (in)equalities over Q."""
    pending = list(constraints)
    variables = sorted({v for c in pending for v, _ in c.coeffs})
    for var in variables:
        lower, upper, rest = [], [], []
        for c in pending:
            a = c.coeff(var)
            if a > 0:
                lower.append(c)
            elif a < 0:
                upper.append(c)
            else:
                rest.append(c)
        new = rest
        for lo in lower:
            for hi in upper:
                a_lo, a_hi = lo.coeff(var), -hi.coeff(var)
                coeffs: dict[str, Fraction] = {}
                for v, c in lo.coeffs:
                    if v != var:
                        coeffs[v] = coeffs.get(v, Fraction(0)) + c * a_hi
                for v, c in hi.coeffs:
                    if v != var:
                        coeffs[v] = coeffs.get(v, Fraction(0)) + c * a_lo
                combined = AffineConstraint.make(
                    coeffs,
                    lo.const * a_hi + hi.const * a_lo,
                    lo.strict or hi.strict,
                )
                new.append(combined)
        pending = new
    for c in pending:
        if c.const < 0 or (c.strict and c.const == 0):
            return False
    return True


# ---------------------------------------------------------------------------
# integer lattice helpers


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def unimodular_clearing(vector: Sequence[int]) -> list[list[int]]:
    """A unimodular integer matrix W with ``W @ vector = (g, 0, ..., 0)``.

    ``g`` is the gcd of the entries. Used both for completing a
    primitive vector to a lattice basis (columns of W^-1) and for
    quotient coordinates (the trailing rows of W).
    """
    n = len(vector)
    w = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = list(vector)
    for i in range(1, n):
        if v[i] == 0:
            continue
        g, s, t = _ext_gcd(v[0], v[i])
        a0, ai = v[0] // g, v[i] // g
        row0 = [s * w[0][j] + t * w[i][j] for j in range(n)]
        rowi = [-ai * w[0][j] + a0 * w[i][j] for j in range(n)]
        w[0], w[i] = row0, rowi
        v[0], v[i] = g, 0
    if v[0] < 0:
        w[0] = [-x for x in w[0]]
    return w


def integer_kernel_basis(vector: Sequence[int]) -> list[tuple[int, ...]]:
    """Basis of the saturated kernel ``{x : <vector, x> = 0}`` in Z^n.

    With W v = (g, 0, ..., 0), every row of W past the first pairs to
    zero with v, and unimodularity makes those rows a saturated basis.
    """
    if not any(vector):
        raise ValueError("zero functional has full kernel")
    w = unimodular_clearing(vector)
    return [tuple(row) for row in w[1:]]


def _invert_unimodular(mat: list[list[int]]) -> list[list[int]]:
    n = len(mat)
    aug = [
        [Fraction(mat[i][j]) for j in range(n)]
        + [Fraction(1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    red, pivots = rref(aug, col_limit=n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            value = red[i][n + j]
            if value.denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(value.numerator)
        out.append(row)
    return out


def primitive(vector: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in vector:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in vector)
