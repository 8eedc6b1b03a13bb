"""Classification machinery for semi-free fixed-point data.

The regular levels of the moment map carry reduced spaces whose
diffeomorphism type changes across critical levels in four ways: the
class of the level Euler bundle jumps by the dual class of a fixed
surface, an index-2 point blows the space up, an index-4 point blows
it down, and the twisted bare join identifies fiber and section. The
chain engine walks these events from the minimum to the maximum in an
integer lattice chart, solving exactly for the unknown dual classes
(adjunction plus the boundary normal forms) and branching over the
possible exceptional classes at blow-downs.

On top of the engine sit the public operations: the dual-class solver,
a yes/no chain-consistency check, transport of the Euler class for the
wall calculus, and a bounded exhaustive enumeration of all admissible
data shapes with small second Betti number, grouped into families.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from ._solve import (
    Poly,
    integer_kernel_basis,
    solve_system,
    sqrt_fraction,
    unimodular_clearing,
)
from .algebra import (
    ReducedClass,
    ReducedSpaceType,
    c1_reduced,
    nontrivial_bundle,
    pair,
    projective_plane,
    trivial_bundle,
)
from .fixed_points import (
    FixedComponent,
    FixedPointData,
    InvalidDataError,
    classify_type,
    point,
    surface,
    validate,
)
from .localization import (
    MultipleSolutionsError,
    NoSolutionError,
    abbv_integrate,
    c1_restrictions,
    unit_restrictions,
)

# ---------------------------------------------------------------------------
# wall-crossing events on canonical reduced-space descriptors


@dataclass(frozen=True)
class CrossSurface:
    """Pass a fixed surface: the space keeps its diffeomorphism type."""

    genus: int = 0


@dataclass(frozen=True)
class BlowUpPoint:
    """Pass an index-2 point: one-point blow-up of the reduced space."""


@dataclass(frozen=True)
class BlowDownPoint:
    """Pass an index-4 point: an exceptional sphere collapses."""


@dataclass(frozen=True)
class TwistIdentification:
    """Swap fiber and section of the product bundle over the sphere."""


WallEvent = CrossSurface | BlowUpPoint | BlowDownPoint | TwistIdentification


def wall_cross(space: ReducedSpaceType, event: WallEvent) -> ReducedSpaceType:
    """Reduced-space type after crossing one critical level.

    Only the transitions expressible between canonical descriptors are
    supported: blowing up the projective plane gives the nontrivial
    sphere bundle over the sphere and blowing down inverts that, while
    the fiber-section swap needs the product bundle over the sphere.
    """
    if isinstance(event, CrossSurface):
        return space
    if isinstance(event, BlowUpPoint):
        if space != projective_plane():
            raise InvalidDataError(
                "can only blow up the projective plane descriptor"
            )
        return nontrivial_bundle(0)
    if isinstance(event, BlowDownPoint):
        if space != nontrivial_bundle(0):
            raise InvalidDataError(
                "can only blow down the nontrivial bundle over the sphere"
            )
        return projective_plane()
    if isinstance(event, TwistIdentification):
        if space != trivial_bundle(0):
            raise InvalidDataError(
                "the twist identification needs the product bundle over the sphere"
            )
        return space
    raise TypeError(f"unknown wall event {event!r}")


def adjunction_genus(v: ReducedClass) -> Fraction:
    """Genus forced on an embedded surface representing a class.

    Computed from the self-pairing and the first Chern class; a
    negative or non-integral value certifies that no embedded sphere
    or surface realizes the class.
    """
    return Fraction(1) + (pair(v, v) - pair(c1_reduced(v.space), v)) / 2


# ---------------------------------------------------------------------------
# lattice chart state


@dataclass(frozen=True)
class _Chart:
    gram: tuple[tuple[int, ...], ...]
    c1: tuple[Fraction, ...]
    euler: tuple[Poly, ...]
    fiber: tuple[Fraction, ...] | None
    base_genus: int
    pristine: ReducedSpaceType | None  # canonical space while untouched
    exceptional: tuple[int, ...]  # basis indices of open blow-ups

    @property
    def rank(self) -> int:
        return len(self.gram)


def _dot(gram: Sequence[Sequence[int]], a: Sequence, b: Sequence):
    total: Poly | Fraction = Fraction(0)
    for i, ai in enumerate(a):
        if isinstance(ai, Poly) and ai.is_zero():
            continue
        row = gram[i]
        for j, bj in enumerate(b):
            g = row[j]
            if g:
                total = total + ai * g * bj
    return total


def _as_fraction(value) -> Fraction:
    if isinstance(value, Poly):
        return value.constant_value()
    return Fraction(value)


def _start_chart(minimum: FixedComponent) -> _Chart:
    if minimum.is_point:
        return _Chart(
            gram=((1,),),
            c1=(Fraction(3),),
            euler=(Poly.const(-1),),
            fiber=None,
            base_genus=0,
            pristine=projective_plane(),
            exceptional=(),
        )
    g = minimum.genus or 0
    b = minimum.b
    if b is None:
        raise InvalidDataError("surface minimum is missing b")
    k = b // 2
    if b % 2 == 0:
        gram = ((0, 1), (1, 0))
        c1 = (Fraction(2 - 2 * g), Fraction(2))
        space = trivial_bundle(g)
    else:
        gram = ((0, 1), (1, -1))
        c1 = (Fraction(3 - 2 * g), Fraction(2))
        space = nontrivial_bundle(g)
    return _Chart(
        gram=gram,
        c1=c1,
        euler=(Poly.const(k), Poly.const(-1)),
        fiber=(Fraction(1), Fraction(0)),
        base_genus=g,
        pristine=space,
        exceptional=(),
    )


# -- chart surgery -----------------------------------------------------------


def _blow_up(chart: _Chart) -> _Chart:
    n = chart.rank
    gram = tuple(
        tuple(list(row) + [0]) for row in chart.gram
    ) + ((tuple([0] * n + [-1])),)
    return _Chart(
        gram=gram,
        c1=chart.c1 + (Fraction(-1),),
        euler=chart.euler + (Poly.const(1),),
        fiber=None if chart.fiber is None else chart.fiber + (Fraction(0),),
        base_genus=chart.base_genus,
        pristine=None,
        exceptional=chart.exceptional + (n,),
    )


def _pairing_functional(
    gram: Sequence[Sequence[int]], vec: Sequence[int]
) -> list[int]:
    n = len(gram)
    return [sum(vec[i] * gram[i][j] for i in range(n)) for j in range(n)]


def _solve_in_span(
    basis: Sequence[Sequence[int]], target: Sequence[Fraction]
) -> list[Fraction] | None:
    """Coordinates t with sum t_i basis_i = target, or None."""
    from ._solve import solve_linear

    names = [f"t{i}" for i in range(len(basis))]
    rows = []
    for j in range(len(target)):
        coeffs = {names[i]: Fraction(basis[i][j]) for i in range(len(basis))}
        rows.append((coeffs, Fraction(target[j])))
    solved = solve_linear(rows, names)
    if solved is None:
        return None
    values, _ = solved
    return [values[name] for name in names]


def _affine_parts(
    vec: Sequence[Poly],
) -> tuple[list[Fraction], dict[str, list[Fraction]]]:
    const: list[Fraction] = []
    per_var: dict[str, list[Fraction]] = {}
    n = len(vec)
    for j, entry in enumerate(vec):
        lin = entry.as_linear()
        if lin is None:
            raise ValueError("chart vector is not affine in the unknowns")
        c, coeffs = lin
        const.append(c)
        for var, value in coeffs.items():
            per_var.setdefault(var, [Fraction(0)] * n)[j] = value
    for var in per_var:
        while len(per_var[var]) < n:
            per_var[var].append(Fraction(0))
    return const, per_var


def _reexpress_poly(
    basis: Sequence[Sequence[int]], vec: Sequence[Poly]
) -> list[Poly] | None:
    const, per_var = _affine_parts(vec)
    t_const = _solve_in_span(basis, const)
    if t_const is None:
        return None
    out = [Poly.const(c) for c in t_const]
    for var, coords in per_var.items():
        t_var = _solve_in_span(basis, coords)
        if t_var is None:
            return None
        for j in range(len(out)):
            if t_var[j]:
                out[j] = out[j] + Poly.var(var) * t_var[j]
    return out


def _blow_down(chart: _Chart, k_class: Sequence[int]) -> _Chart | None:
    """Contract a (-1)-class; the Euler condition is handled by the caller."""
    functional = _pairing_functional(chart.gram, k_class)
    if not any(functional):
        return None
    basis = integer_kernel_basis(functional)
    gram = tuple(
        tuple(_as_fraction(_dot(chart.gram, bi, bj)).numerator for bj in basis)
        for bi in basis
    )
    # Project, then re-express; e + K is orthogonal to K exactly when
    # pair(e, K) = 1, which the caller imposes as an equation.
    shifted = [entry + Fraction(ki) for entry, ki in zip(chart.euler, k_class)]
    correction = _dot(chart.gram, shifted, k_class)
    projected = [
        entry + correction * ki for entry, ki in zip(shifted, k_class)
    ]
    euler = _reexpress_poly(basis, projected)
    if euler is None:
        return None
    c1_shift = [c + Fraction(ki) for c, ki in zip(chart.c1, k_class)]
    c1_coords = _solve_in_span(basis, c1_shift)
    if c1_coords is None:
        return None
    fiber = None
    if chart.fiber is not None:
        if _as_fraction(_dot(chart.gram, chart.fiber, k_class)) == 0:
            coords = _solve_in_span(basis, chart.fiber)
            if coords is not None:
                fiber = tuple(coords)
    return _Chart(
        gram=gram,
        c1=tuple(c1_coords),
        euler=tuple(euler),
        fiber=fiber,
        base_genus=chart.base_genus,
        pristine=None,
        exceptional=(),
    )


# -- exceptional class enumeration ------------------------------------------


def _int_range(lo: Fraction, hi: Fraction) -> range:
    import math

    return range(math.ceil(lo), math.floor(hi) + 1)


def _minus_one_classes(
    gram: Sequence[Sequence[int]], c1: Sequence[Fraction]
) -> list[tuple[int, ...]]:
    """Integer classes K with K.K = -1 and c1.K = 1.

    Finite whenever c1 has positive square (the orthogonal complement
    is then negative definite); otherwise returns nothing and the
    caller falls back to the vertical candidates.
    """
    if any(c.denominator != 1 for c in c1):
        return []
    c1_int = [c.numerator for c in c1]
    functional = _pairing_functional(gram, c1_int)
    g = 0
    for value in functional:
        g = gcd(g, value)
    if g != 1:
        return []
    clearing = unimodular_clearing(functional)
    k0 = clearing[0]
    basis = clearing[1:]
    c0 = _as_fraction(_dot(gram, k0, k0))
    if not basis:
        return [tuple(k0)] if c0 == -1 else []
    m = [
        [_as_fraction(_dot(gram, bi, bj)) for bj in basis] for bi in basis
    ]
    b = [_as_fraction(_dot(gram, bi, k0)) for bi in basis]
    out: list[tuple[int, ...]] = []

    def emit(t: Sequence[int]) -> None:
        k = [
            k0[j] + sum(t[i] * basis[i][j] for i in range(len(basis)))
            for j in range(len(k0))
        ]
        out.append(tuple(k))

    if len(basis) == 1:
        from ._solve import _rational_roots

        roots = _rational_roots([c0 + 1, 2 * b[0], m[0][0]])
        for root in roots or []:
            if root.denominator == 1:
                emit([root.numerator])
        return out
    if len(basis) == 2:
        det = m[0][0] * m[1][1] - m[0][1] ** 2
        if m[0][0] >= 0 or det <= 0:
            return []
        # Center the quadric at t* with M t* = -b; then the equation is
        # s' M s = -phi0 for s = t - t*, bounded because M is negative
        # definite. Sweep the outer coordinate, solve the inner exactly.
        t_star = [
            (-b[0] * m[1][1] + b[1] * m[0][1]) / det,
            (-b[1] * m[0][0] + b[0] * m[0][1]) / det,
        ]
        phi0 = c0 + 1 + b[0] * t_star[0] + b[1] * t_star[1]
        if phi0 < 0:
            return []
        d1 = m[1][1] - m[0][1] ** 2 / m[0][0]
        span = phi0 / (-d1)
        root_span = sqrt_fraction(span)
        if root_span is None:
            root_span = Fraction(
                int(float(span) ** 0.5) + 1
            )
        lam = m[0][1] / m[0][0]
        for t1 in _int_range(t_star[1] - root_span, t_star[1] + root_span):
            s1 = t1 - t_star[1]
            value = (-phi0 - d1 * s1 * s1) / m[0][0]
            if value < 0:
                continue
            root = sqrt_fraction(value)
            if root is None:
                continue
            center0 = t_star[0] - lam * s1
            for t0 in {center0 + root, center0 - root}:
                if t0.denominator == 1:
                    emit([t0.numerator, t1])
        return out
    raise NotImplementedError("exceptional search beyond rank 3")


def _blow_down_candidates(chart: _Chart) -> list[tuple[int, ...]]:
    if chart.base_genus > 0:
        candidates: list[tuple[int, ...]] = []
        for idx in chart.exceptional:
            w = tuple(1 if j == idx else 0 for j in range(chart.rank))
            candidates.append(w)
            if chart.fiber is not None and all(
                f.denominator == 1 for f in chart.fiber
            ):
                candidates.append(
                    tuple(f.numerator - wi for f, wi in zip(chart.fiber, w))
                )
        return candidates
    return _minus_one_classes(chart.gram, chart.c1)


# -- canonical forms of small charts -----------------------------------------


def _isotropic_rays(gram: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    a, b, c = gram[0][0], gram[0][1], gram[1][1]
    rays: list[tuple[int, int]] = []

    def add(s: int, t: int) -> None:
        if s == 0 and t == 0:
            return
        g = gcd(s, t)
        s, t = s // g, t // g
        if s < 0 or (s == 0 and t < 0):
            s, t = -s, -t
        if (s, t) not in rays:
            rays.append((s, t))

    if a == 0:
        add(1, 0)
        if c == 0:
            add(0, 1)
        else:
            add(c, -2 * b)
    else:
        disc = Fraction(b * b - a * c)
        root = sqrt_fraction(disc)
        if root is not None:
            for sign in (1, -1):
                ratio = (-Fraction(b) + sign * root) / a
                add(ratio.numerator, ratio.denominator)
    out = []
    for s, t in rays:
        value = a * s * s + 2 * b * s * t + c * t * t
        if value == 0:
            out.append((s, t))
    return out


def _bundle_forms(
    chart: _Chart,
) -> list[tuple[ReducedSpaceType, tuple[int, int], tuple[int, int]]]:
    """Canonical (space, fiber, section) presentations of a rank-2 chart."""
    if chart.rank != 2:
        return []
    g = chart.base_genus
    forms = []
    for s, t in _isotropic_rays(chart.gram):
        for sign in (1, -1):
            fib = (sign * s, sign * t)
            if _as_fraction(_dot(chart.gram, chart.c1, fib)) != 2:
                continue
            section = _section_for(chart.gram, fib)
            if section is None:
                continue
            sq = _as_fraction(_dot(chart.gram, section, section))
            space = trivial_bundle(g) if sq == 0 else nontrivial_bundle(g)
            expect = 2 - 2 * g if sq == 0 else 1 - 2 * g
            if _as_fraction(_dot(chart.gram, chart.c1, section)) != expect:
                continue
            forms.append((space, fib, section))
    return forms


def _section_for(
    gram: Sequence[Sequence[int]], fib: tuple[int, int]
) -> tuple[int, int] | None:
    functional = _pairing_functional(gram, list(fib))
    g = gcd(functional[0], functional[1])
    if g != 1:
        return None
    clearing = unimodular_clearing(functional)
    section = list(clearing[0])
    # Normalize the self-pairing into {0, -1} by sliding along the fiber.
    sq = _as_fraction(_dot(gram, section, section))
    shift = -(sq.numerator // 2) if sq.numerator % 2 == 0 else -((sq.numerator + 1) // 2)
    section = [section[j] + shift * fib[j] for j in range(2)]
    sq = _as_fraction(_dot(gram, section, section))
    if sq not in (0, -1):
        return None
    return (section[0], section[1])


def _chart_reduced_class(
    chart: _Chart, vec: Sequence[Fraction]
) -> ReducedClass | None:
    """Express a numeric chart vector as a canonical reduced class."""
    if chart.pristine is not None:
        return ReducedClass(chart.pristine, tuple(Fraction(v) for v in vec))
    if chart.rank == 1:
        if abs(chart.c1[0]) != 3:
            return None
        h = chart.c1[0] / 3
        return ReducedClass.make(projective_plane(), Fraction(vec[0]) / h)
    if chart.rank == 2:
        forms = _bundle_forms(chart)
        if not forms:
            return None
        space, fib, section = forms[0]
        q = _as_fraction(_dot(chart.gram, vec, fib))
        sq = _as_fraction(_dot(chart.gram, section, section))
        p = _as_fraction(_dot(chart.gram, vec, section)) - q * sq
        return ReducedClass.make(space, p, q)
    return None


# ---------------------------------------------------------------------------
# the chain engine


@dataclass(frozen=True)
class _CrossingLog:
    position: int
    chart: _Chart  # chart state just below the crossing
    eta_vars: tuple[str, ...]


@dataclass(frozen=True)
class _Branch:
    equations: tuple[Poly, ...]
    crossings: tuple[_CrossingLog, ...]
    top: _Chart


def _middle_orderings(data: FixedPointData) -> list[tuple[int, ...]]:
    groups: dict[Fraction, list[int]] = {}
    for pos, comp in enumerate(data.components):
        if comp.is_minimum or comp.is_maximum:
            continue
        groups.setdefault(comp.level, []).append(pos)
    ordered_levels = sorted(groups)
    pools = [list(itertools.permutations(groups[lv])) for lv in ordered_levels]
    out: list[tuple[int, ...]] = []
    for combo in itertools.product(*pools):
        flat: list[int] = []
        for part in combo:
            flat.extend(part)
        out.append(tuple(flat))
    return out or [()]


def _advance(
    data: FixedPointData,
    chart: _Chart,
    ordering: Sequence[int],
    equations: list[Poly],
    crossings: list[_CrossingLog],
    out: list[_Branch],
) -> None:
    if not ordering:
        for extra, top in _terminal_variants(data, chart):
            out.append(
                _Branch(
                    tuple(equations) + tuple(extra),
                    tuple(crossings),
                    top,
                )
            )
        return
    pos, rest = ordering[0], ordering[1:]
    comp = data.components[pos]
    if comp.is_surface:
        names = tuple(f"eta{pos}_{i}" for i in range(chart.rank))
        eta = [Poly.var(name) for name in names]
        eqs = list(equations)
        genus = comp.genus or 0
        eqs.append(
            _dot(chart.gram, eta, eta)
            - _dot(chart.gram, [Poly.const(c) for c in chart.c1], eta)
            + Poly.const(2 - 2 * genus)
        )
        if comp.b_minus is not None:
            eqs.append(
                _dot(chart.gram, chart.euler, eta) + Poly.const(comp.b_minus)
            )
        if comp.b_plus is not None:
            eqs.append(
                _dot(chart.gram, chart.euler, eta)
                + _dot(chart.gram, eta, eta)
                - Poly.const(comp.b_plus)
            )
        new_chart = replace(
            chart,
            euler=tuple(e + v for e, v in zip(chart.euler, eta)),
        )
        _advance(
            data,
            new_chart,
            rest,
            eqs,
            crossings + [_CrossingLog(pos, chart, names)],
            out,
        )
        return
    if comp.index == 2:
        _advance(data, _blow_up(chart), rest, equations, crossings, out)
        return
    if comp.index == 4:
        for k_class in _blow_down_candidates(chart):
            condition = _dot(chart.gram, chart.euler, k_class) - 1
            if isinstance(condition, Poly) and condition.is_constant():
                if condition.constant_value():
                    continue
                extra: list[Poly] = []
            elif isinstance(condition, Poly):
                extra = [condition]
            else:
                if condition:
                    continue
                extra = []
            contracted = _blow_down(chart, k_class)
            if contracted is None:
                continue
            _advance(
                data,
                contracted,
                rest,
                equations + extra,
                crossings,
                out,
            )
        return
    raise InvalidDataError(f"cannot cross {comp.describe()}")


def _terminal_variants(
    data: FixedPointData, chart: _Chart
) -> list[tuple[list[Poly], _Chart]]:
    maximum = data.maximum
    if maximum.is_point:
        if chart.rank != 1 or chart.gram[0][0] != 1 or abs(chart.c1[0]) != 3:
            return []
        h = chart.c1[0] / 3
        return [([chart.euler[0] - Poly.const(h)], chart)]
    b_max = maximum.b
    if b_max is None or chart.rank != 2:
        return []
    e = chart.euler
    if data.twist:
        if chart.fiber is None:
            return []
        eqs = [
            _dot(chart.gram, e, chart.fiber) + Poly.const(Fraction(b_max, 2)),
            _dot(chart.gram, e, e) + Poly.const(b_max),
        ]
        if b_max == 0:
            section = _section_for(chart.gram, (chart.fiber[0].numerator, chart.fiber[1].numerator))
            if section is None:
                return []
            eqs.append(_dot(chart.gram, e, section) - Poly.const(1))
        return [(eqs, chart)]
    fibers: list[Sequence[Fraction]] = []
    if chart.fiber is not None:
        fibers.append(chart.fiber)
    else:
        for _, fib, _section in _bundle_forms(chart):
            fibers.append((Fraction(fib[0]), Fraction(fib[1])))
    variants = []
    for fib in fibers:
        eqs = [
            _dot(chart.gram, e, fib) - Poly.const(1),
            _dot(chart.gram, e, e) + Poly.const(b_max),
        ]
        variants.append((eqs, chart))
    return variants


# -- solving -----------------------------------------------------------------


@dataclass(frozen=True)
class Crossing:
    """One index-2 surface crossing with its exact wall pairings."""

    position: int
    pair_e_eta: Fraction
    pair_eta_eta: Fraction
    euler_below: ReducedClass | None
    dual: ReducedClass | None


@dataclass(frozen=True)
class ChainResult:
    """Euler-class transport along the moment map."""

    data: FixedPointData
    chart: ReducedSpaceType | None
    start_euler: ReducedClass | None
    crossings: tuple[Crossing, ...]


@dataclass(frozen=True)
class _ChainSolution:
    key: tuple
    crossings: tuple[Crossing, ...]
    duals: tuple[tuple[int, ReducedClass | None], ...]


def _structural_check(data: FixedPointData) -> None:
    if len(data.components) < 2:
        raise InvalidDataError("need at least a minimum and a maximum")
    minimum = data.minimum
    maximum = data.maximum
    for comp in data.components:
        if comp is minimum or comp is maximum:
            continue
        if not (minimum.level < comp.level < maximum.level):
            raise InvalidDataError(
                "middle components must sit strictly between the extremes"
            )


def _chain_solutions(
    data: FixedPointData,
) -> tuple[list[_ChainSolution], bool]:
    _structural_check(data)
    solutions: dict[tuple, _ChainSolution] = {}
    unbounded = False
    for ordering in _middle_orderings(data):
        branches: list[_Branch] = []
        _advance(
            data, _start_chart(data.minimum), ordering, [], [], branches
        )
        for branch in branches:
            for sol in solve_system(list(branch.equations)):
                if sol.free:
                    unbounded = True
                    continue
                values = sol.as_dict()
                resolved = _resolve_branch(branch, values)
                if resolved is None:
                    continue
                solutions.setdefault(resolved.key, resolved)
    return list(solutions.values()), unbounded


def _resolve_branch(
    branch: _Branch, values: Mapping[str, Fraction]
) -> _ChainSolution | None:
    crossings: list[Crossing] = []
    duals: list[tuple[int, ReducedClass | None]] = []
    key: list[tuple] = []
    for log in branch.crossings:
        eta = [Poly.var(name).substitute(values) for name in log.eta_vars]
        if not all(p.is_constant() for p in eta):
            return None
        eta_values = [p.constant_value() for p in eta]
        if any(v.denominator != 1 for v in eta_values):
            return None
        euler_below = [
            e.substitute(values).constant_value() for e in log.chart.euler
        ]
        if log.chart.rank == 1:
            # Surfaces in the plane chart must have positive degree.
            reduced = _chart_reduced_class(log.chart, eta_values)
            if reduced is None or reduced.coeffs[0] < 1:
                return None
        pe = _as_fraction(_dot(log.chart.gram, euler_below, eta_values))
        pee = _as_fraction(_dot(log.chart.gram, eta_values, eta_values))
        dual = _chart_reduced_class(log.chart, eta_values)
        below = _chart_reduced_class(log.chart, euler_below)
        crossings.append(Crossing(log.position, pe, pee, below, dual))
        duals.append((log.position, dual))
        key.append((log.position, pe, pee))
    return _ChainSolution(tuple(sorted(key)), tuple(crossings), tuple(duals))


def euler_chain_check(data: FixedPointData) -> bool:
    """Whether a consistent Euler-class chain exists for the data."""
    try:
        solutions, unbounded = _chain_solutions(data)
    except (InvalidDataError, NotImplementedError):
        return False
    return unbounded or bool(solutions)


def dual_class_solve(data: FixedPointData) -> dict[int, ReducedClass]:
    """Solve for the dual classes of the index-2 fixed surfaces.

    Returns a map from component position to the surface class in the
    reduced space just below its level. Raises when the chain has no
    admissible solution or more than one.
    """
    solution = _unique_chain_solution(data)
    out: dict[int, ReducedClass] = {}
    for position, dual in solution.duals:
        if dual is None:
            raise NotImplementedError(
                "dual class lives in a chart with no canonical form"
            )
        out[position] = dual
    return out


def _unique_chain_solution(data: FixedPointData) -> _ChainSolution:
    solutions, unbounded = _chain_solutions(data)
    if unbounded:
        raise MultipleSolutionsError(
            "the Euler chain is underdetermined for this data"
        )
    if not solutions:
        raise NoSolutionError("no consistent Euler chain exists for this data")
    if len(solutions) > 1:
        raise MultipleSolutionsError(
            f"{len(solutions)} distinct Euler chains are admissible; "
            "declare the normal splittings to disambiguate"
        )
    return solutions[0]


def euler_transport(data: FixedPointData) -> ChainResult:
    """Transport the level Euler class from the minimum to the maximum."""
    solution = _unique_chain_solution(data)
    chart = None
    start = None
    if all(c.is_surface for c in data.components):
        start_chart = _start_chart(data.minimum)
        chart = start_chart.pristine
        start = ReducedClass(
            chart, tuple(p.constant_value() for p in start_chart.euler)
        )
    ordered = sorted(
        solution.crossings,
        key=lambda c: (data.components[c.position].level, c.position),
    )
    return ChainResult(
        data=data,
        chart=chart,
        start_euler=start,
        crossings=tuple(ordered),
    )


# ---------------------------------------------------------------------------
# family instances


def family_instance(tag: str, **params) -> FixedPointData:
    """Canonical fixed-point data for each admissible family.

    Parameters: ``"3"`` takes ``n`` (odd, default 1) and ``same_level``;
    ``"6a"`` takes ``n``, ``g``, ``g1``; ``"6b"`` takes ``k`` and
    ``k_prime`` (the twisted branch, with middle genus ``k * k_prime``
    ruled out by the sweep unless one of them vanishes). ``"2"`` and
    ``"5"`` take ``same_level``. Types ``"1"`` and ``"4"`` are rigid.
    """
    P = point
    S = surface
    if tag == "1":
        _reject_params(params)
        return FixedPointData(
            (
                P(0, 0),
                S(2, 1, genus=0, b_plus=2, b_minus=2),
                P(6, 2),
            )
        )
    if tag == "2":
        same = bool(params.pop("same_level", False))
        _reject_params(params)
        return FixedPointData(
            (
                P(0, 0),
                S(2, 1, genus=0, b_plus=0, b_minus=1),
                S(2, 1 if same else 2, genus=0, b_plus=1, b_minus=0),
                P(6, 3 if not same else 2),
            )
        )
    if tag == "3":
        n = int(params.pop("n", 1))
        same = bool(params.pop("same_level", False))
        _reject_params(params)
        if n % 2 == 0:
            raise ValueError("the lowest normal degree must be odd")
        return FixedPointData(
            (
                S(0, 0, genus=0, b=n),
                S(2, 1, genus=0, b_plus=1, b_minus=1 - n),
                P(4, 1 if same else 2),
                P(6, 2 if same else 3),
            )
        )
    if tag == "4":
        _reject_params(params)
        return FixedPointData(
            (
                S(0, 0, genus=0, b=2),
                S(4, 1, genus=0, b=2),
            ),
            twist=True,
        )
    if tag == "5":
        same = bool(params.pop("same_level", False))
        _reject_params(params)
        return FixedPointData(
            (
                S(0, 0, genus=0, b=1),
                P(2, 1),
                P(4, 1 if same else 2),
                S(4, 2 if same else 3, genus=0, b=1),
            )
        )
    if tag == "6a":
        n = int(params.pop("n", 0))
        g = int(params.pop("g", 0))
        g1 = int(params.pop("g1", 0))
        _reject_params(params)
        c = 1 + g1 - 2 * g
        return FixedPointData(
            (
                S(0, 0, genus=g, b=n),
                S(2, 1, genus=g1, b_plus=n + 3 * c, b_minus=-n + c),
                S(4, 2, genus=g, b=-n - 2 * c),
            )
        )
    if tag == "6b":
        k = int(params.pop("k", 0))
        k_prime = int(params.pop("k_prime", 1))
        _reject_params(params)
        g1 = k * k_prime
        return FixedPointData(
            (
                S(0, 0, genus=0, b=2 * k),
                S(
                    2,
                    1,
                    genus=g1,
                    b_plus=1 - 2 * k_prime + g1,
                    b_minus=1 - 2 * k + g1,
                ),
                S(4, 2, genus=0, b=2 * k_prime),
            ),
            twist=True,
        )
    raise ValueError(f"unknown family tag {tag!r}")


def _reject_params(params: Mapping) -> None:
    if params:
        raise TypeError(f"unexpected parameters: {sorted(params)}")


# ---------------------------------------------------------------------------
# bounded enumeration


FAMILIES_SCHEMA = "families.v1"


@dataclass(frozen=True)
class EnumerationResult:
    max_genus: int
    b_range: tuple[int, int]
    families: Mapping[str, tuple[FixedPointData, ...]]
    rejected: Mapping[str, int]

    def to_json_dict(self) -> dict:
        return {
            "schema": FAMILIES_SCHEMA,
            "max_genus": self.max_genus,
            "b_range": list(self.b_range),
            "families": {
                key: [d.to_json_dict() for d in members]
                for key, members in sorted(self.families.items())
            },
            "rejected": dict(sorted(self.rejected.items())),
        }


def enumerate_types(
    max_genus: int = 1, b_range: tuple[int, int] = (-4, 4)
) -> EnumerationResult:
    """Exhaust all admissible data with second Betti number below three.

    Candidates run over both extremal kinds, genera up to ``max_genus``,
    extremal normal degrees in ``b_range``, every middle configuration
    compatible with the Betti bound, all level orderings including
    ties, and both twist settings. The normal splittings of middle
    surfaces are derived from the chain, never enumerated. Survivors
    of the full filter stack are grouped into families.
    """
    lo, hi = b_range
    if lo > hi:
        raise ValueError("empty range of normal degrees")
    rejected: dict[str, int] = {}
    families: dict[str, list[FixedPointData]] = {}
    seen: set[str] = set()

    def reject(stage: str) -> None:
        rejected[stage] = rejected.get(stage, 0) + 1

    for candidate in _candidates(max_genus, (lo, hi)):
        marker = candidate.dumps()
        if marker in seen:
            continue
        seen.add(marker)
        filled = _derive_splittings(candidate)
        if filled is None:
            reject("chain")
            continue
        if not validate(filled).ok:
            reject("validate")
            continue
        if not _localization_relations_hold(filled):
            reject("localization")
            continue
        if not euler_chain_check(filled):
            reject("chain_recheck")
            continue
        if all(c.is_surface for c in filled.components):
            from .localization import dh_path

            if dh_path(filled, 1, []).verdict == "inconsistent":
                reject("sweep")
                continue
        tag = classify_type(filled)
        if tag == "unclassified":
            reject("unclassified")
            continue
        family = "6" if tag in ("6a", "6b") else tag
        families.setdefault(family, []).append(filled)
    return EnumerationResult(
        max_genus=max_genus,
        b_range=(lo, hi),
        families={
            key: tuple(sorted(members, key=lambda d: d.dumps()))
            for key, members in families.items()
        },
        rejected=rejected,
    )


def _derive_splittings(data: FixedPointData) -> FixedPointData | None:
    """Fill in (b_plus, b_minus) of middle surfaces from the chain."""
    targets = [
        pos
        for pos, comp in enumerate(data.components)
        if comp.is_surface and comp.index == 2
    ]
    try:
        if not targets:
            return data if euler_chain_check(data) else None
        solutions, unbounded = _chain_solutions(data)
    except (InvalidDataError, NotImplementedError):
        return None
    if unbounded or len(solutions) != 1:
        return None
    by_position = {c.position: c for c in solutions[0].crossings}
    new_components = []
    for pos, comp in enumerate(data.components):
        if pos in by_position:
            crossing = by_position[pos]
            b_minus = -crossing.pair_e_eta
            b_plus = crossing.pair_eta_eta + crossing.pair_e_eta
            if b_minus.denominator != 1 or b_plus.denominator != 1:
                return None
            comp = replace(
                comp, b_plus=int(b_plus), b_minus=int(b_minus)
            )
        new_components.append(comp)
    return FixedPointData(tuple(new_components), twist=data.twist)


def _localization_relations_hold(data: FixedPointData) -> bool:
    from .algebra import mul

    units = unit_restrictions(data)
    c1s = c1_restrictions(data)
    c1sq = tuple(mul(a, a) for a in c1s)
    try:
        return (
            abbv_integrate(data, units) == {}
            and abbv_integrate(data, c1s) == {}
            and abbv_integrate(data, c1sq) == {}
        )
    except (ValueError, ZeroDivisionError):
        return False


def _candidates(
    max_genus: int, b_range: tuple[int, int]
) -> Iterable[FixedPointData]:
    lo, hi = b_range
    genera = range(max_genus + 1)
    b_values = range(lo, hi + 1)

    def extremes() -> Iterable[tuple[tuple[int, int] | None, tuple[int, int] | None]]:
        # None means an isolated extreme, (genus, b) a surface one.
        yield None, None
        for g in genera:
            for b in b_values:
                yield (g, b), None
                yield None, (g, b)
                for g2 in genera:
                    for b2 in b_values:
                        yield (g, b), (g2, b2)
        return

    for min_spec, max_spec in extremes():
        if min_spec is None and max_spec is not None:
            # Mirror of a surface-minimum shape; counted once there.
            continue
        min_is_surface = min_spec is not None
        max_is_surface = max_spec is not None
        b2_base = 1 if min_is_surface else 0
        for n2 in range(0, 3):
            for n_mid in range(0, 3):
                b2 = b2_base + n2 + n_mid
                if b2 > 2:
                    continue
                n4 = b2_base + n2 - (1 if max_is_surface else 0)
                if n4 < 0:
                    continue
                for mid_genera in itertools.combinations_with_replacement(
                    genera, n_mid
                ):
                    middles: list[tuple[str, int | None]] = (
                        [("P2", None)] * n2
                        + [("P4", None)] * n4
                        + [("S", g1) for g1 in mid_genera]
                    )
                    if not middles and min_is_surface != max_is_surface:
                        continue
                    yield from _assemble(
                        min_spec, max_spec, middles
                    )


def _assemble(
    min_spec: tuple[int, int] | None,
    max_spec: tuple[int, int] | None,
    middles: list[tuple[str, int | None]],
) -> Iterable[FixedPointData]:
    P = point
    S = surface
    count = len(middles)
    assignments: set[tuple[int, ...]] = set()
    for groups in range(0 if count == 0 else 1, count + 1):
        for combo in itertools.product(range(1, groups + 1), repeat=count):
            if set(combo) == set(range(1, groups + 1)):
                assignments.add(combo)
    if count == 0:
        assignments.add(())
    for combo in sorted(assignments):
        top = (max(combo) if combo else 0) + 1
        components: list[FixedComponent] = []
        if min_spec is None:
            components.append(P(0, 0))
        else:
            g, b = min_spec
            components.append(S(0, 0, genus=g, b=b))
        for (kind, g1), level in zip(middles, combo):
            if kind == "P2":
                components.append(P(2, level))
            elif kind == "P4":
                components.append(P(4, level))
            else:
                components.append(S(2, level, genus=g1 or 0))
        if max_spec is None:
            components.append(P(6, top))
        else:
            g, b = max_spec
            components.append(S(4, top, genus=g, b=b))
        all_surface = all(c.is_surface for c in components)
        twists = [False]
        if (
            all_surface
            and min_spec is not None
            and max_spec is not None
            and min_spec[0] == 0
            and max_spec[0] == 0
            and min_spec[1] % 2 == 0
            and max_spec[1] % 2 == 0
        ):
            twists.append(True)
        for twist in twists:
            try:
                yield FixedPointData(tuple(components), twist=twist)
            except (ValueError, InvalidDataError):
                continue
