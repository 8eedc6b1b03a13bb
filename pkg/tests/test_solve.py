"""Unit tests for the exact linear and polynomial solving helpers."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semifree._solve import (
    AffineConstraint,
    Poly,
    feasible,
    integer_kernel_basis,
    solve_linear,
    solve_system,
    sqrt_fraction,
    unimodular_clearing,
)

F = Fraction


def test_solve_linear_unique():
    rows = [
        ({"x": F(1), "y": F(1)}, F(3)),
        ({"x": F(1), "y": F(-1)}, F(1)),
    ]
    values, free = solve_linear(rows, ["x", "y"])
    assert values == {"x": F(2), "y": F(1)}
    assert free == []


def test_solve_linear_underdetermined_lists_free():
    rows = [({"x": F(1), "y": F(2)}, F(4))]
    values, free = solve_linear(rows, ["x", "y"])
    assert free == ["y"]
    assert values["x"] + 2 * values["y"] == 4


def test_solve_linear_inconsistent():
    rows = [
        ({"x": F(1)}, F(1)),
        ({"x": F(1)}, F(2)),
    ]
    assert solve_linear(rows, ["x"]) is None


def test_solve_system_linear_closure():
    x = Poly.var("x")
    y = Poly.var("y")
    eqs = [x + y - Poly.const(2), x - y]
    solutions = solve_system(eqs)
    assert len(solutions) == 1
    assert solutions[0].as_dict() == {"x": F(1), "y": F(1)}
    assert not solutions[0].free


def test_solve_system_quadratic_case_split():
    x = Poly.var("x")
    eqs = [x * x - Poly.const(4)]
    roots = sorted(s.as_dict()["x"] for s in solve_system(eqs))
    assert roots == [F(-2), F(2)]


def test_solve_system_forced_value_is_not_free():
    # A variable pinned by a linear equation must not be reported free
    # even when pivot elimination recurses into a sub-universe that
    # still mentions it.
    x = Poly.var("x")
    y = Poly.var("y")
    z = Poly.var("z")
    eqs = [
        x + Poly.const(1),
        y * z + y * x,
        y - Poly.const(2),
    ]
    solutions = solve_system(eqs)
    assert len(solutions) == 1
    solution = solutions[0]
    assert solution.as_dict() == {"x": F(-1), "y": F(2), "z": F(1)}
    assert not solution.free


def test_solve_system_no_solution():
    x = Poly.var("x")
    assert solve_system([x - Poly.const(1), x - Poly.const(2)]) == []


def test_feasible_strict_box():
    rows = [
        AffineConstraint.make({"t": F(1)}, F(0), strict=True),
        AffineConstraint.make({"t": F(-1)}, F(1), strict=True),
    ]
    assert feasible(rows)
    rows.append(AffineConstraint.make({"t": F(1)}, F(-2), strict=False))
    assert not feasible(rows)


def test_sqrt_fraction():
    assert sqrt_fraction(F(49, 4)) == F(7, 2)
    assert sqrt_fraction(F(2)) is None
    assert sqrt_fraction(F(0)) == 0


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_integer_kernel_basis_annihilates(a, b, c):
    if (a, b, c) == (0, 0, 0):
        return
    basis = integer_kernel_basis((a, b, c))
    assert len(basis) == 2
    for vector in basis:
        assert sum(x * y for x, y in zip(vector, (a, b, c))) == 0


@given(
    st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9)),
)
def test_unimodular_clearing_sends_vector_to_axis(vector):
    if vector == (0, 0, 0):
        return
    matrix = unimodular_clearing(vector)
    image = [
        sum(matrix[i][j] * vector[j] for j in range(3)) for i in range(3)
    ]
    assert image[1] == 0 and image[2] == 0
    assert image[0] != 0


def test_poly_arithmetic_exact():
    x = Poly.var("x")
    p = (x + Poly.const(F(1, 2))) * (x - Poly.const(F(1, 2)))
    assert p.substitute({"x": F(1, 2)}).constant_value() == 0
    assert p.substitute({"x": F(3, 2)}).constant_value() == F(2)
