"""The slow triangle map on the real cone, over exact rationals.

The cone consists of strictly decreasing positive coordinate tuples.
Off the diagonal (first coordinate equal to second plus last, twice
the second in dimension two) the map either rotates the first
coordinate's excess to the back or shaves the last coordinate off the
front; on the diagonal it is undefined.  Exact rationals keep the
trichotomy decidable, which matters because the tests construct
diagonal points deliberately.

In dimension two the map computes continued fractions: runs of
second-branch steps count a digit the way the Farey map does, and a
rational input reaches the diagonal in finitely many steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import PartitionClass


class ConePointError(ValueError):
    """Coordinates are not strictly decreasing positive rationals."""


class OnDiagonalError(ValueError):
    """The map is undefined where the first coordinate equals second + last."""


class BadRatioError(ValueError):
    """Digit extraction needs x1 > x2 > 0."""


@dataclass(frozen=True)
class ConePoint:
    """A point of the cone: m >= 2 strictly decreasing positive rationals."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) < 2:
            raise ConePointError("a cone point needs at least two coordinates")
        if coords[-1] <= 0:
            raise ConePointError("coordinates must be positive")
        for a, b in zip(coords, coords[1:]):
            if a <= b:
                raise ConePointError(
                    f"coordinates must strictly decrease; saw {a} before {b}"
                )

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)


def classify_cone(x: ConePoint) -> PartitionClass:
    """Exact trichotomy of the first coordinate against second + last."""
    threshold = x.coords[1] + x.coords[-1]
    if x.coords[0] < threshold:
        return PartitionClass.DELTA0
    if x.coords[0] > threshold:
        return PartitionClass.DELTA1
    return PartitionClass.DELTA_D


def apply_slow(x: ConePoint) -> ConePoint:
    """One step of the slow map; undefined on the diagonal."""
    cls = classify_cone(x)
    if cls is PartitionClass.DELTA_D:
        raise OnDiagonalError(f"({x}) lies on the diagonal")
    c = x.coords
    if cls is PartitionClass.DELTA0:
        return ConePoint(c[1:] + (c[0] - c[1],))
    return ConePoint((c[0] - c[-1],) + c[1:])


def cf_digits_via_map(x1, x2, max_steps: int = 10_000) -> list[int]:
    """Continued-fraction digits of x2/x1 read off the slow map.

    Each maximal run of r second-branch steps closed by a first-branch
    step contributes the digit r + 1.  A rational ratio reaches the
    diagonal, where the remaining ratio is exactly one half; the
    pending run then closes with digit r + 2.  If the step budget runs
    out first, the digits collected so far (a prefix) are returned.
    """
    x1, x2 = Fraction(x1), Fraction(x2)
    if not (x1 > x2 > 0):
        raise BadRatioError(f"need x1 > x2 > 0, got {x1}, {x2}")
    digits: list[int] = []
    run = 0
    point = ConePoint((x1, x2))
    for _ in range(max_steps):
        cls = classify_cone(point)
        if cls is PartitionClass.DELTA_D:
            digits.append(run + 2)
            return digits
        if cls is PartitionClass.DELTA0:
            digits.append(run + 1)
            run = 0
        else:
            run += 1
        point = apply_slow(point)
    return digits
