"""Print the solved restriction table of each admissible family.

For every family the script builds the canonical fixed point data,
solves the equivariant restriction table, and prints it together with
the normal-bundle splittings forced at the index-2 surfaces and the
second Stiefel-Whitney verdict.
"""

from __future__ import annotations

import argparse

from semifree import (
    FixedPointData,
    b_plus_minus,
    family_instance,
    solve_restriction_table,
    validate,
    w2_vanishes,
)

PRESETS: tuple[tuple[str, dict], ...] = (
    ("1", {}),
    ("2", {}),
    ("3", {"n": 1}),
    ("3", {"n": -3}),
    ("4", {}),
    ("5", {}),
    ("6a", {"n": 0, "g": 1, "g1": 0}),
    ("6b", {"k": 0, "k_prime": 2}),
    ("6b", {"k": 2, "k_prime": 0}),
)


def describe_splittings(data: FixedPointData) -> list[str]:
    lines = []
    for comp in data.components:
        if comp.is_surface and comp.index == 2:
            bp, bm = b_plus_minus(data, comp)
            lines.append(
                f"index-2 surface at level {comp.level}: "
                f"b+ = {bp}, b- = {bm}"
            )
    return lines


def show(tag: str, params: dict) -> None:
    data = family_instance(tag, **params)
    validate(data)
    table = solve_restriction_table(data)
    arg_text = ", ".join(f"{k}={v}" for k, v in params.items()) or "defaults"
    print(f"== family {tag} ({arg_text}) ==")
    print(table.render_text(), end="")
    for line in describe_splittings(data):
        print(line)
    print(f"w2 vanishes: {'yes' if w2_vanishes(data) else 'no'}")
    print()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--family",
        choices=sorted({tag for tag, _ in PRESETS}),
        help="restrict the output to one family",
    )
    args = parser.parse_args()
    for tag, params in PRESETS:
        if args.family is None or tag == args.family:
            show(tag, params)


if __name__ == "__main__":
    main()
