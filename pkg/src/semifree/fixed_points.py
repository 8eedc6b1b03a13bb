"""Fixed-point data for semi-free Hamiltonian circle actions on
compact six-manifolds.

A ``FixedPointData`` records the connected fixed components (isolated
points and surfaces), their Morse indices for the moment map, their
levels, and the normal-bundle Chern numbers. ``validate`` applies the
structural rules that any such action must satisfy, ``betti_profile``
computes the Morse-theoretic Betti numbers, and ``classify_type``
pattern-matches the data against the known shapes with small second
Betti number.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .rationals import format_rational, parse_rational

POINT = "point"
SURFACE = "surface"

FPDATA_SCHEMA = "fpdata.v1"

UNCLASSIFIED = "unclassified"


class SchemaError(ValueError):
    """Raised when serialized data does not match a supported schema."""


class InvalidDataError(ValueError):
    """Raised when an operation requires data that passes validation."""


@dataclass(frozen=True)
class FixedComponent:
    """One connected component of the fixed-point set."""

    level: Fraction
    index: int
    kind: str
    genus: int | None = None
    b: int | None = None
    b_plus: int | None = None
    b_minus: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "level", Fraction(self.level))
        if self.kind == POINT:
            if self.index not in (0, 2, 4, 6):
                raise ValueError(f"point index must be 0, 2, 4 or 6: {self.index}")
            for name in ("genus", "b", "b_plus", "b_minus"):
                if getattr(self, name) is not None:
                    raise ValueError(f"isolated point carries no {name}")
        elif self.kind == SURFACE:
            if self.index not in (0, 2, 4):
                raise ValueError(f"surface index must be 0, 2 or 4: {self.index}")
            if not isinstance(self.genus, int) or self.genus < 0:
                raise ValueError(f"surface needs a genus >= 0: {self.genus}")
            if self.index == 2:
                if self.b is not None:
                    raise ValueError("index-2 surface carries (b_plus, b_minus), not b")
            else:
                if self.b_plus is not None or self.b_minus is not None:
                    raise ValueError("extremal surface carries a single b")
        else:
            raise ValueError(f"unknown component kind: {self.kind}")

    @property
    def is_point(self) -> bool:
        return self.kind == POINT

    @property
    def is_surface(self) -> bool:
        return self.kind == SURFACE

    @property
    def is_minimum(self) -> bool:
        return self.index == 0

    @property
    def is_maximum(self) -> bool:
        return (self.kind == POINT and self.index == 6) or (
            self.kind == SURFACE and self.index == 4
        )

    def describe(self) -> str:
        if self.is_point:
            return f"point(index {self.index}, level {format_rational(self.level)})"
        extra = ""
        if self.index == 2:
            extra = f", b+={self.b_plus}, b-={self.b_minus}"
        else:
            extra = f", b={self.b}"
        return (
            f"surface(genus {self.genus}, index {self.index}, "
            f"level {format_rational(self.level)}{extra})"
        )


def point(index: int, level: Fraction | int | str) -> FixedComponent:
    return FixedComponent(level=Fraction(parse_rational(level)), index=index, kind=POINT)


def surface(
    index: int,
    level: Fraction | int | str,
    genus: int = 0,
    b: int | None = None,
    b_plus: int | None = None,
    b_minus: int | None = None,
) -> FixedComponent:
    return FixedComponent(
        level=Fraction(parse_rational(level)),
        index=index,
        kind=SURFACE,
        genus=genus,
        b=b,
        b_plus=b_plus,
        b_minus=b_minus,
    )


@dataclass(frozen=True)
class FixedPointData:
    """All fixed components of one action, ordered by level."""

    components: tuple[FixedComponent, ...]
    twist: bool = False

    def __post_init__(self) -> None:
        def key(c: FixedComponent):
            return (
                c.level,
                c.index,
                c.kind,
                -1 if c.genus is None else c.genus,
                (c.b is None, c.b or 0),
                (c.b_plus is None, c.b_plus or 0),
                (c.b_minus is None, c.b_minus or 0),
            )

        object.__setattr__(self, "components", tuple(sorted(self.components, key=key)))

    # -- access helpers ------------------------------------------------------

    @property
    def minimum(self) -> FixedComponent:
        mins = [c for c in self.components if c.is_minimum]
        if len(mins) != 1:
            raise InvalidDataError(f"expected one minimum, found {len(mins)}")
        return mins[0]

    @property
    def maximum(self) -> FixedComponent:
        maxes = [c for c in self.components if c.is_maximum]
        if len(maxes) != 1:
            raise InvalidDataError(f"expected one maximum, found {len(maxes)}")
        return maxes[0]

    def middles(self) -> tuple[FixedComponent, ...]:
        return tuple(
            c for c in self.components if not (c.is_minimum or c.is_maximum)
        )

    def point_count(self, index: int) -> int:
        return sum(1 for c in self.components if c.is_point and c.index == index)

    def levels(self) -> tuple[Fraction, ...]:
        return tuple(sorted({c.level for c in self.components}))

    def at_level(self, level: Fraction) -> tuple[FixedComponent, ...]:
        return tuple(c for c in self.components if c.level == level)

    def reversed(self) -> "FixedPointData":
        """The same action run backwards: indices and levels flip."""
        flipped = []
        for c in self.components:
            if c.is_point:
                flipped.append(
                    FixedComponent(level=-c.level, index=6 - c.index, kind=POINT)
                )
            else:
                flipped.append(
                    FixedComponent(
                        level=-c.level,
                        index=4 - c.index,
                        kind=SURFACE,
                        genus=c.genus,
                        b=c.b,
                        b_plus=c.b_minus,
                        b_minus=c.b_plus,
                    )
                )
        return FixedPointData(tuple(flipped), twist=self.twist)

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        comps = []
        for c in self.components:
            entry: dict = {
                "kind": c.kind,
                "index": c.index,
                "level": format_rational(c.level),
            }
            if c.is_surface:
                entry["genus"] = c.genus
                if c.index == 2:
                    if c.b_plus is not None:
                        entry["b_plus"] = c.b_plus
                    if c.b_minus is not None:
                        entry["b_minus"] = c.b_minus
                elif c.b is not None:
                    entry["b"] = c.b
            comps.append(entry)
        return {"schema": FPDATA_SCHEMA, "twist": self.twist, "components": comps}

    @staticmethod
    def from_json_dict(payload: Mapping) -> "FixedPointData":
        if not isinstance(payload, Mapping):
            raise SchemaError("fixed point data must be a JSON object")
        schema = payload.get("schema")
        if schema != FPDATA_SCHEMA:
            raise SchemaError(f"unsupported schema: {schema!r}")
        allowed_top = {"schema", "twist", "components"}
        extra = set(payload) - allowed_top
        if extra:
            raise SchemaError(f"unknown fields: {sorted(extra)}")
        twist = payload.get("twist", False)
        if not isinstance(twist, bool):
            raise SchemaError("twist must be a boolean")
        raw = payload.get("components")
        if not isinstance(raw, list) or not raw:
            raise SchemaError("components must be a non-empty list")
        comps = []
        allowed = {"kind", "index", "level", "genus", "b", "b_plus", "b_minus"}
        for entry in raw:
            if not isinstance(entry, Mapping):
                raise SchemaError("component entries must be objects")
            extra = set(entry) - allowed
            if extra:
                raise SchemaError(f"unknown component fields: {sorted(extra)}")
            try:
                level = parse_rational(entry["level"])
            except KeyError:
                raise SchemaError("component missing level") from None
            kind = entry.get("kind")
            index = entry.get("index")
            if kind not in (POINT, SURFACE):
                raise SchemaError(f"unknown component kind: {kind!r}")
            if not isinstance(index, int) or isinstance(index, bool):
                raise SchemaError("component index must be an integer")
            def _opt_int(name: str) -> int | None:
                value = entry.get(name)
                if value is None:
                    return None
                if not isinstance(value, int) or isinstance(value, bool):
                    raise SchemaError(f"{name} must be an integer")
                return value
            try:
                comps.append(
                    FixedComponent(
                        level=level,
                        index=index,
                        kind=kind,
                        genus=_opt_int("genus"),
                        b=_opt_int("b"),
                        b_plus=_opt_int("b_plus"),
                        b_minus=_opt_int("b_minus"),
                    )
                )
            except ValueError as exc:
                raise SchemaError(str(exc)) from None
        return FixedPointData(tuple(comps), twist=twist)

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    @staticmethod
    def loads(text: str) -> "FixedPointData":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
        return FixedPointData.from_json_dict(payload)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...] = field(default_factory=tuple)


def validate(data: FixedPointData) -> ValidationReport:
    """Check the structural rules for semi-free fixed-point data.

    Covers field completeness, uniqueness and placement of the
    extremes, the pairing rules between isolated points and extremal
    surfaces, level sharing restrictions, twist prerequisites, parity
    of extremal Chern numbers, and the rank bookkeeping of the reduced
    spaces as the level sweeps from bottom to top.
    """
    problems: list[str] = []
    comps = data.components

    # Field completeness.
    for c in comps:
        if c.is_surface:
            if c.index in (0, 4) and c.b is None:
                problems.append(f"missing normal Chern number b on {c.describe()}")
            if c.index == 2 and (c.b_plus is None or c.b_minus is None):
                problems.append(f"missing (b_plus, b_minus) on {c.describe()}")

    # Unique extremes at extreme levels.
    mins = [c for c in comps if c.is_minimum]
    maxes = [c for c in comps if c.is_maximum]
    if len(mins) != 1:
        problems.append(f"need exactly one minimum, found {len(mins)}")
    if len(maxes) != 1:
        problems.append(f"need exactly one maximum, found {len(maxes)}")
    if len(mins) == 1 and len(maxes) == 1:
        lo, hi = mins[0], maxes[0]
        if lo.level >= hi.level:
            problems.append("minimum level must lie strictly below maximum level")
        for c in comps:
            if c is lo or c is hi:
                continue
            if not (lo.level < c.level < hi.level):
                problems.append(
                    f"{c.describe()} must lie strictly between the extremes"
                )

    if problems:
        return ValidationReport(False, tuple(problems))

    lo, hi = mins[0], maxes[0]
    n2 = data.point_count(2)
    n4 = data.point_count(4)

    # Pairing rules between isolated points and extremal surfaces.
    if lo.is_point and hi.is_point:
        if n2 != n4:
            problems.append(
                f"point extremes force equal point counts, got N2={n2}, N4={n4}"
            )
    elif lo.is_surface and hi.is_point:
        if lo.genus != 0:
            problems.append("a surface minimum with point maximum must be a sphere")
        if n4 != n2 + 1:
            problems.append(
                f"surface minimum with point maximum forces N4=N2+1, got N2={n2}, N4={n4}"
            )
    elif lo.is_point and hi.is_surface:
        if hi.genus != 0:
            problems.append("a surface maximum with point minimum must be a sphere")
        if n2 != n4 + 1:
            problems.append(
                f"point minimum with surface maximum forces N2=N4+1, got N2={n2}, N4={n4}"
            )
    else:
        if lo.genus != hi.genus:
            problems.append(
                f"surface extremes must share a genus, got {lo.genus} and {hi.genus}"
            )
        if n2 != n4:
            problems.append(
                f"surface extremes force equal point counts, got N2={n2}, N4={n4}"
            )

    # Two middle spheres over point extremes never share a level.
    if lo.is_point and hi.is_point:
        middle_surface_levels = [
            c.level for c in data.middles() if c.is_surface
        ]
        if len(middle_surface_levels) != len(set(middle_surface_levels)):
            problems.append(
                "two middle surfaces over point extremes cannot share a level"
            )

    # Twist prerequisites.
    if data.twist:
        if any(c.is_point for c in comps):
            problems.append("a twist requires every fixed component to be a surface")
        else:
            if lo.genus != 0 or hi.genus != 0:
                problems.append("a twist requires genus-0 extremes")
            if lo.b is not None and lo.b % 2 != 0:
                problems.append("a twist requires an even b at the minimum")
            if hi.b is not None and hi.b % 2 != 0:
                problems.append("a twist requires an even b at the maximum")

    # Parity coherence when no blow-up or blow-down can occur.
    has_blow_points = any(c.is_point and c.index in (2, 4) for c in comps)
    if lo.is_surface and hi.is_surface and not has_blow_points:
        if lo.b is not None and hi.b is not None and (lo.b - hi.b) % 2 != 0:
            problems.append(
                f"surface extremes need matching parity of b, got {lo.b} and {hi.b}"
            )
        if not data.middles():
            if not data.twist:
                problems.append(
                    "two bare surface extremes cannot be joined without a twist"
                )
            elif lo.b != 2 or hi.b != 2:
                problems.append(
                    "a bare twisted join needs b=2 at both extremes"
                )

    # Rank bookkeeping of the reduced space from bottom to top.
    rank = 1 if lo.is_point else 2
    legal = True
    for level in data.levels():
        events = [c for c in data.at_level(level) if c in data.middles()]
        deltas = [
            1 if (c.is_point and c.index == 2) else -1
            for c in events
            if c.is_point
        ]
        if not deltas:
            continue
        if not _rank_walk_possible(rank, deltas):
            legal = False
            problems.append(
                f"no ordering of the level {format_rational(level)} events keeps "
                "the reduced space rank legal"
            )
            break
        rank = rank + sum(deltas)
    if legal:
        expected = 1 if hi.is_point else 2
        if rank != expected:
            problems.append(
                f"reduced space rank below the maximum is {rank}, expected {expected}"
            )

    return ValidationReport(not problems, tuple(problems))


def _rank_walk_possible(start: int, deltas: list[int]) -> bool:
    """Can the +1/-1 events be ordered so the rank never drops below 1?

    A -1 step is a blow-down and needs rank >= 2 before it happens.
    """
    if not deltas:
        return True
    ups = deltas.count(1)
    downs = deltas.count(-1)

    def walk(rank: int, ups: int, downs: int) -> bool:
        if ups == 0 and downs == 0:
            return True
        if ups and walk(rank + 1, ups - 1, downs):
            return True
        if downs and rank >= 2 and walk(rank - 1, ups, downs - 1):
            return True
        return False

    return walk(start, ups, downs)


# ---------------------------------------------------------------------------
# Betti numbers and classification


def betti_profile(data: FixedPointData) -> tuple[int, int, int, int, int, int, int]:
    """Morse-theoretic Betti numbers b_0..b_6 from the fixed components.

    A point of index i contributes t^i; a genus-g surface of index i
    contributes t^i (1 + 2g t + t^2).
    """
    betti = [0] * 7
    for c in data.components:
        if c.is_point:
            betti[c.index] += 1
        else:
            betti[c.index] += 1
            betti[c.index + 1] += 2 * (c.genus or 0)
            betti[c.index + 2] += 1
    return tuple(betti)


def classify_type(data: FixedPointData) -> str:
    """Match validated data against the small-second-Betti shapes.

    Returns one of "1", "2", "3", "4", "5", "6a", "6b" or
    "unclassified". Classification checks the component kinds, indices,
    genus and parity constraints only; deeper consistency is the
    business of the wall-crossing checks.
    """
    report = validate(data)
    if not report.ok:
        raise InvalidDataError("; ".join(report.violations))
    if betti_profile(data)[2] >= 3:
        return UNCLASSIFIED

    lo, hi = data.minimum, data.maximum
    middles = data.middles()
    mid_surfaces = [c for c in middles if c.is_surface]
    mid_points = [c for c in middles if c.is_point]

    if lo.is_point and hi.is_point:
        if mid_points or data.twist:
            return UNCLASSIFIED
        if len(mid_surfaces) == 1 and mid_surfaces[0].genus == 0:
            return "1"
        if len(mid_surfaces) == 2 and all(c.genus == 0 for c in mid_surfaces):
            return "2"
        return UNCLASSIFIED

    if lo.is_surface and hi.is_point:
        if data.twist or lo.genus != 0 or lo.b is None or lo.b % 2 == 0:
            return UNCLASSIFIED
        if (
            len(mid_surfaces) == 1
            and mid_surfaces[0].genus == 0
            and len(mid_points) == 1
            and mid_points[0].index == 4
        ):
            return "3"
        return UNCLASSIFIED

    if lo.is_point and hi.is_surface:
        return UNCLASSIFIED

    if lo.b is None or hi.b is None:
        return UNCLASSIFIED
    if not middles:
        return "4" if data.twist else UNCLASSIFIED
    if (
        len(mid_points) == 2
        and not mid_surfaces
        and {c.index for c in mid_points} == {2, 4}
    ):
        if lo.genus == 0 and hi.genus == 0 and lo.b % 2 == 1 and hi.b % 2 == 1:
            return "5"
        return UNCLASSIFIED
    if len(mid_surfaces) == 1 and not mid_points:
        return "6b" if data.twist else "6a"
    return UNCLASSIFIED


def iter_components_bottom_up(
    data: FixedPointData,
) -> Iterable[tuple[Fraction, tuple[FixedComponent, ...]]]:
    """Yield (level, components at that level) from bottom to top."""
    for level in data.levels():
        yield level, data.at_level(level)
