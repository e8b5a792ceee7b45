"""Integer partitions in part-by-multiplicity form.

A partition of n is stored as strictly decreasing parts with positive
multiplicities: 7 = 2+2+1+1+1 becomes (2,1)x[2,3].  The size is the dot
product of parts and multiplicities and the dimension is the number of
distinct parts.  Partitions of dimension at least two split into three
classes by comparing the largest part with the sum of the second and
smallest parts (read as twice the second part in dimension two); the
triangle map dispatches on that trichotomy.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass


class PartitionError(ValueError):
    """Invalid partition data."""


class EmptyPartitionError(PartitionError):
    """No parts were given."""


class LengthMismatchError(PartitionError):
    """Parts and multiplicities have different lengths."""


class NonPositiveEntryError(PartitionError):
    """A part or multiplicity is zero or negative."""


class NonDecreasingPartsError(PartitionError):
    """Parts are not strictly decreasing."""


class NotSortedError(PartitionError):
    """A weak part sequence is not non-increasing."""


class PartitionClass(enum.Enum):
    """Which branch of the triangle map applies to a partition."""

    DELTA0 = "Delta0"
    DELTA1 = "Delta1"
    DELTA_D = "DeltaD"
    DIM1 = "Dim1"

    def __str__(self) -> str:
        return self.value


_TEXT_RE = re.compile(r"^\((\d+(?:,\d+)*)\)\s*[x×]\s*\[(\d+(?:,\d+)*)\]$")


@dataclass(frozen=True)
class Partition:
    """A partition as strictly decreasing parts with positive multiplicities.

    Construction validates; it never sorts or merges silently.  Use
    :meth:`from_weak_sequence` to normalize a plain non-increasing list
    of parts with repeats.
    """

    parts: tuple[int, ...]
    mults: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        mults = tuple(self.mults)
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "mults", mults)
        if not parts and not mults:
            raise EmptyPartitionError("a partition needs at least one part")
        if len(parts) != len(mults):
            raise LengthMismatchError(
                f"{len(parts)} parts but {len(mults)} multiplicities"
            )
        if not parts:
            raise EmptyPartitionError("a partition needs at least one part")
        for v in parts:
            if not isinstance(v, int) or v < 1:
                raise NonPositiveEntryError(f"part {v!r} is not a positive integer")
        for k in mults:
            if not isinstance(k, int) or k < 1:
                raise NonPositiveEntryError(
                    f"multiplicity {k!r} is not a positive integer"
                )
        for a, b in zip(parts, parts[1:]):
            if a <= b:
                raise NonDecreasingPartsError(
                    f"parts must strictly decrease; saw {a} before {b}"
                    + (" (concatenate equal parts first)" if a == b else "")
                )

    @classmethod
    def from_weak_sequence(cls, parts_with_repeats) -> "Partition":
        """Normalize a non-increasing sequence of positive parts.

        Equal runs are concatenated into one part with a multiplicity,
        so [3, 2, 2] becomes (3,2)x[1,2].
        """
        seq = list(parts_with_repeats)
        if not seq:
            raise EmptyPartitionError("a partition needs at least one part")
        for v in seq:
            if not isinstance(v, int) or v < 1:
                raise NonPositiveEntryError(f"part {v!r} is not a positive integer")
        for a, b in zip(seq, seq[1:]):
            if a < b:
                raise NotSortedError(f"sequence must be non-increasing; saw {a} before {b}")
        parts: list[int] = []
        mults: list[int] = []
        for v in seq:
            if parts and parts[-1] == v:
                mults[-1] += 1
            else:
                parts.append(v)
                mults.append(1)
        return cls(tuple(parts), tuple(mults))

    @classmethod
    def from_text(cls, text: str) -> "Partition":
        """Parse the canonical text form, e.g. ``(5,4,2)x[1,1,1]``."""
        m = _TEXT_RE.match(text.strip())
        if m is None:
            raise PartitionError(f"cannot parse partition literal {text!r}")
        parts = tuple(int(v) for v in m.group(1).split(","))
        mults = tuple(int(v) for v in m.group(2).split(","))
        return cls(parts, mults)

    @classmethod
    def from_json(cls, obj: dict) -> "Partition":
        """Build from the machine form ``{"parts": [...], "mults": [...]}``."""
        return cls(tuple(obj["parts"]), tuple(obj["mults"]))

    @classmethod
    def _wrap(cls, parts: tuple[int, ...], mults: tuple[int, ...]) -> "Partition":
        # Validation-free constructor for enumeration hot paths; the
        # caller guarantees the invariants hold.
        p = object.__new__(cls)
        object.__setattr__(p, "parts", parts)
        object.__setattr__(p, "mults", mults)
        return p

    @property
    def size(self) -> int:
        """Dot product of parts and multiplicities."""
        return sum(v * k for v, k in zip(self.parts, self.mults))

    @property
    def dimension(self) -> int:
        """Number of distinct parts."""
        return len(self.parts)

    def expand(self) -> tuple[int, ...]:
        """The plain non-increasing part sequence with repeats."""
        out: list[int] = []
        for v, k in zip(self.parts, self.mults):
            out.extend([v] * k)
        return tuple(out)

    def classify(self) -> PartitionClass:
        """Place the partition in the triangle-map trichotomy.

        DIM1 for one distinct part; otherwise the largest part is
        compared with second + smallest part.  In dimension two the
        second part is the smallest, so the threshold is twice the
        second part, as required.
        """
        if len(self.parts) == 1:
            return PartitionClass.DIM1
        threshold = self.parts[1] + self.parts[-1]
        if self.parts[0] < threshold:
            return PartitionClass.DELTA0
        if self.parts[0] > threshold:
            return PartitionClass.DELTA1
        return PartitionClass.DELTA_D

    def to_json(self) -> dict:
        return {"parts": list(self.parts), "mults": list(self.mults)}

    def __str__(self) -> str:
        return "({})x[{}]".format(
            ",".join(str(v) for v in self.parts),
            ",".join(str(k) for k in self.mults),
        )

    def __repr__(self) -> str:
        return f"Partition.from_text({str(self)!r})"


def make_partition(parts, mults) -> Partition:
    """Validated construction from two integer sequences."""
    return Partition(tuple(parts), tuple(mults))
