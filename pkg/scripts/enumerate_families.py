"""Enumerate realizable fixed point data within genus and twist bounds.

Sweeps every candidate shape with the configured genus bound and range
of normal degrees, keeps the shapes that pass validation, localization,
wall-crossing, and the symplectic sweep, and reports how many survive
in each family together with the rejection tallies.
"""

from __future__ import annotations

import argparse

from semifree import FixedPointData, classify_type, enumerate_types


def describe(data: FixedPointData) -> str:
    parts = []
    for c in data.components:
        if c.is_point:
            parts.append(f"P(idx {c.index}, lvl {c.level})")
        else:
            bs = (
                f"b={c.b}"
                if c.b is not None
                else f"b+={c.b_plus}, b-={c.b_minus}"
            )
            parts.append(f"S(idx {c.index}, lvl {c.level}, g={c.genus}, {bs})")
    twist = ", twist" if data.twist else ""
    return "; ".join(parts) + twist


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-genus", type=int, default=3)
    parser.add_argument("--b-min", type=int, default=-6)
    parser.add_argument("--b-max", type=int, default=6)
    parser.add_argument(
        "--list",
        action="store_true",
        help="print every surviving shape, not just the counts",
    )
    args = parser.parse_args()

    result = enumerate_types(args.max_genus, (args.b_min, args.b_max))
    print(
        f"bounds: genus <= {result.max_genus}, "
        f"b in [{result.b_range[0]}, {result.b_range[1]}]"
    )
    total = 0
    for tag in sorted(result.families):
        members = result.families[tag]
        total += len(members)
        print(f"family {tag}: {len(members)} instance(s)")
        if args.list:
            for data in members:
                print(f"  [{classify_type(data)}] {describe(data)}")
    print(f"total: {total}")
    for stage in sorted(result.rejected):
        print(f"rejected at {stage}: {result.rejected[stage]}")


if __name__ == "__main__":
    main()
