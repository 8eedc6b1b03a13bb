"""Check the built-in moment polytopes and extract their fixed point data.

Every built-in example is tested for the Delzant condition and for
semi-freeness of the height circle, its twist is detected from the
facet structure, and the extracted fixed point data is classified.
Optionally prints the cross-section polygon at a chosen height.
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from semifree import (
    LatticePolytope,
    TwistUndefinedError,
    builtin_examples,
    classify_type,
    delzant_check,
    detect_twist,
    extract_fixed_data,
    slice_polygon,
    semifree_check,
    validate,
)


def show(name: str, polytope: LatticePolytope, z: Fraction | None) -> None:
    print(f"== {name} ==")
    lo, hi = polytope.level_range()
    print(
        f"{len(polytope.vertices)} vertices, {len(polytope.facets)} facets, "
        f"heights [{lo}, {hi}]"
    )
    delzant = delzant_check(polytope)
    print(f"delzant: {'yes' if delzant.ok else 'no'}")
    semifree = semifree_check(polytope)
    print(f"semi-free height circle: {'yes' if semifree.ok else 'no'}")
    for violation in semifree.violations:
        print(f"  violation: {violation}")
    try:
        print(f"twist: {'yes' if detect_twist(polytope) else 'no'}")
    except TwistUndefinedError:
        print("twist: undefined (no fixed sphere at an extreme)")
    data = extract_fixed_data(polytope)
    validate(data)
    print(f"extracted type: {classify_type(data)}")
    for c in data.components:
        if c.is_point:
            print(f"  point, index {c.index}, level {c.level}")
        else:
            bs = (
                f"b = {c.b}"
                if c.b is not None
                else f"b+ = {c.b_plus}, b- = {c.b_minus}"
            )
            print(
                f"  surface, index {c.index}, level {c.level}, "
                f"genus {c.genus}, {bs}"
            )
    if z is not None and lo < z < hi:
        polygon = slice_polygon(polytope, z)
        print(f"slice at z = {z}:")
        for edge in polygon.edges:
            print(
                f"  facet {edge.source_facet}: "
                f"{edge.normal} . (x, y) >= {edge.offset}"
            )
    print()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--name",
        choices=sorted(builtin_examples()),
        help="restrict the output to one example",
    )
    parser.add_argument(
        "--slice",
        type=Fraction,
        default=None,
        metavar="Z",
        help="also print the cross-section at this height",
    )
    args = parser.parse_args()
    for name, polytope in sorted(builtin_examples().items()):
        if args.name is None or name == args.name:
            show(name, polytope, args.slice)


if __name__ == "__main__":
    main()
