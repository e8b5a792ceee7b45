"""Named partition sets: the builtin registry and cylinder predicates.

Every named set carries a dimension-two and a dimension-at-least-three
defining condition (they frequently coincide once ``Llast`` is read
literally, since the smallest part of a two-part partition *is* the
second part).  Sets over all dimensions, like distinct-parts ``D`` and
odd-parts ``O``, use a single quantified form instead.

Cylinder sets follow a branch word under the iterated triangle map and
are defined dynamically: membership applies the map and recurses.  The
length-one and length-two words also have intrinsic (map-free)
registry entries; their equivalence is a theorem, checked exhaustively
by the test suite rather than assumed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .dsl import Dynamic, SetPredicate, _Parser, parse_predicate
from .trimap import _t0_raw, _t1_raw


class UnknownSetError(KeyError):
    """No registered set has this name."""


class EmptyWordError(ValueError):
    """Cylinder words need at least one letter."""


@dataclass(frozen=True)
class RegistryEntry:
    """A named set: defining text per dimension regime, or one uniform form."""

    name: str
    dim2: str | None = None
    dim3: str | None = None
    uniform: str | None = None
    note: str = ""

    def combined_source(self) -> str:
        if self.uniform is not None:
            return self.uniform
        return f"(dim = 2 and ({self.dim2})) or (dim >= 3 and ({self.dim3}))"

    def predicate(self) -> SetPredicate:
        return parse_predicate(self.combined_source())


_ENTRIES = [
    RegistryEntry("Delta0", "2*L2 > L1", "L2 + Llast > L1",
                  note="largest part below second + smallest"),
    RegistryEntry("Delta1", "2*L2 < L1", "L2 + Llast < L1",
                  note="largest part above second + smallest"),
    RegistryEntry("DeltaD", "2*L2 = L1", "L2 + Llast = L1",
                  note="largest part equals second + smallest"),
    RegistryEntry("Delta00", "2*L2 > L1 and 2*L1 > 3*L2",
                  "L2 + Llast > L1 and 2*L2 < L1 + L3",
                  note="branch word 00, intrinsic form"),
    RegistryEntry("Delta01", "2*L2 > L1 and 2*L1 < 3*L2",
                  "L2 + Llast > L1 and 2*L2 > L1 + L3",
                  note="branch word 01, intrinsic form"),
    RegistryEntry("Delta10", "2*L2 < L1 and L1 < 3*L2",
                  "L2 + Llast < L1 and L1 < L2 + 2*Llast",
                  note="branch word 10, intrinsic form"),
    RegistryEntry("Delta11", "L1 > 3*L2", "L1 > L2 + 2*Llast",
                  note="branch word 11, intrinsic form"),
    RegistryEntry("M0", "K1 > K2", "K1 > Klast",
                  note="first multiplicity exceeds last"),
    RegistryEntry("M1", "K1 < K2", "K1 < Klast",
                  note="last multiplicity exceeds first"),
    RegistryEntry("T0Delta00", "2*L2 > L1 and K1 > K2",
                  "L2 + Llast > L1 and K1 > Klast",
                  note="one-step image of Delta00"),
    RegistryEntry("T0Delta01", "2*L2 < L1 and K1 > K2",
                  "L2 + Llast < L1 and K1 > Klast",
                  note="one-step image of Delta01"),
    RegistryEntry("T1Delta10", "2*L2 > L1 and K1 < K2",
                  "L2 + Llast > L1 and K1 < Klast",
                  note="one-step image of Delta10"),
    RegistryEntry("T1Delta11", "2*L2 < L1 and K1 < K2",
                  "L2 + Llast < L1 and K1 < Klast",
                  note="one-step image of Delta11"),
    RegistryEntry("T0T0Delta00", "K2 < K1 and K1 < 2*K2",
                  "Ksecondlast < Klast and Klast < K1",
                  note="two-step image of Delta00"),
    RegistryEntry("T1T0Delta01", "K1 < K2 and K2 < 2*K1",
                  "K1 < Klast and Klast < 2*K1",
                  note="two-step image of Delta01"),
    RegistryEntry("T0T1Delta10", "2*K2 < K1",
                  "Klast < Ksecondlast and Klast < K1",
                  note="two-step image of Delta10"),
    RegistryEntry("T1T1Delta11", "2*K1 < K2", "2*K1 < Klast",
                  note="two-step image of Delta11"),
    RegistryEntry("D", uniform="forall i: K[i] = 1",
                  note="distinct parts (all multiplicities one)"),
    RegistryEntry("E0", uniform="dim >= 2 and K1 = 2 and (forall i: i = 1 or K[i] = 1)",
                  note="distinct except the largest part, which repeats twice"),
    RegistryEntry("E1", uniform="dim >= 2 and Klast = 2 and (forall i: i = dim or K[i] = 1)",
                  note="distinct except the smallest part, which repeats twice"),
    RegistryEntry("ED", uniform=("dim >= 2 and K1 = 2 and Klast = 2"
                                 " and (forall i: i = 1 or i = dim or K[i] = 1)"),
                  note="distinct except both extreme parts, each repeating twice"),
    RegistryEntry("O", uniform="forall i: odd(L[i])",
                  note="all parts odd"),
    RegistryEntry("F0", uniform=("dim >= 2 and even(Llast) and K1 > Klast"
                                 " and (forall i: i = dim or odd(L[i]))"),
                  note="odd parts except an even smallest, with K1 > Klast"),
    RegistryEntry("F1", uniform=("dim >= 2 and even(L1) and K1 < Klast"
                                 " and (forall i: i = 1 or odd(L[i]))"),
                  note="odd parts except an even largest, with K1 < Klast"),
]

_REGISTRY = {entry.name: entry for entry in _ENTRIES}

_PARAM_RE = re.compile(r"^(Delta0Off|Delta1Off|GaussG)\((\d+)\)$")

_predicate_cache: dict[str, SetPredicate] = {}


def names() -> list[str]:
    """Registered set names (parameterized families excluded)."""
    return [entry.name for entry in _ENTRIES]


def entry(name: str) -> RegistryEntry:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownSetError(name) from None


def delta0_offset(d: int) -> SetPredicate:
    """Partitions with L2 + Llast exceeding L1 by exactly d (d >= 1)."""
    if d < 1:
        raise ValueError("offset d must be >= 1")
    return parse_predicate(f"dim >= 2 and L2 + Llast = L1 + {d}")


def delta1_offset(d: int) -> SetPredicate:
    """Partitions with L1 exceeding L2 + Llast by exactly d (d >= 1)."""
    if d < 1:
        raise ValueError("offset d must be >= 1")
    return parse_predicate(f"dim >= 2 and L1 = L2 + Llast + {d}")


def gauss_set(d: int) -> SetPredicate:
    """The band L1 - L2 - d*Llast > 0 > L1 - L2 - (d+1)*Llast.

    For d = 0 this degenerates to the below-diagonal cone, which is why
    iterating the second branch d times lands there.
    """
    if d < 0:
        raise ValueError("d must be >= 0")
    return parse_predicate(
        f"dim >= 2 and L1 - L2 - {d}*Llast > 0 and L1 - L2 - {d + 1}*Llast < 0"
    )


def builtin(name: str) -> SetPredicate:
    """Look up a registered set, including parameterized names like GaussG(2)."""
    cached = _predicate_cache.get(name)
    if cached is not None:
        return cached
    if name in _REGISTRY:
        pred = _REGISTRY[name].predicate()
    else:
        m = _PARAM_RE.match(name)
        if m is None:
            raise UnknownSetError(name)
        family, d = m.group(1), int(m.group(2))
        if d < 1:
            raise UnknownSetError(f"{name} (parameter must be >= 1)")
        if family == "Delta0Off":
            pred = delta0_offset(d)
        elif family == "Delta1Off":
            pred = delta1_offset(d)
        else:
            pred = gauss_set(d)
    _predicate_cache[name] = pred
    return pred


def parse_set_expression(text: str) -> SetPredicate:
    """Parse predicate text that may also reference registered set names.

    ``"D and Delta0"`` or ``"GaussG(2) and K1 = 1"`` work here; plain
    :func:`tripart.dsl.parse_predicate` knows nothing about the registry.
    """

    def resolve(name: str):
        try:
            return builtin(name).root
        except UnknownSetError:
            return None

    return SetPredicate(_Parser(text, resolve=resolve).parse())


def registry_json() -> list[dict]:
    """The registry as documentation-friendly JSON."""
    out = []
    for e in _ENTRIES:
        out.append({
            "name": e.name,
            "dim2": e.dim2 if e.uniform is None else e.uniform,
            "dim3": e.dim3 if e.uniform is None else e.uniform,
            "uniform": e.uniform is not None,
            "note": e.note,
        })
    return out


def cylinder(word: Sequence[int]) -> SetPredicate:
    """The set of partitions following the branch word under iteration.

    Membership is tested dynamically: classify, require the class to
    match the next letter (the diagonal matches neither), apply that
    branch, recurse.  Words of any positive length are supported.
    """
    letters = tuple(word)
    if not letters:
        raise EmptyWordError("cylinder words need at least one letter")
    for letter in letters:
        if letter not in (0, 1):
            raise ValueError(f"cylinder letters must be 0 or 1, got {letter!r}")

    def follows(L, K, m):
        parts, mults = L, K
        for letter in letters:
            if len(parts) < 2:
                return False
            threshold = parts[1] + parts[-1]
            if parts[0] < threshold:
                cls = 0
            elif parts[0] > threshold:
                cls = 1
            else:
                return False
            if cls != letter:
                return False
            if letter == 0:
                parts, mults = _t0_raw(parts, mults)
            else:
                parts, mults = _t1_raw(parts, mults)
        return True

    label = "cylinder({})".format("".join(str(b) for b in letters))
    return SetPredicate(Dynamic(label, follows))
