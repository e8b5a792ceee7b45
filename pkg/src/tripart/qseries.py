"""Generating-function coefficients with enumeration as the arbiter.

Coefficients are exact integers throughout.  Each counting series can
be computed along at least two independent routes: a truncated product
or closed-form expansion here, and a brute-force count of the matching
set (:func:`set_series`).  The test suite holds the routes equal
coefficientwise; a closed form disagreeing with enumeration is a bug,
never a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .enumeration import iter_raw
from .dsl import SetPredicate


@dataclass(frozen=True)
class SeriesCoeffs:
    """Coefficients c0..cN of a truncated formal power series in q."""

    coeffs: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "SeriesCoeffs") -> "SeriesCoeffs":
        if len(self.coeffs) != len(other.coeffs):
            raise ValueError("series have different truncation orders")
        return SeriesCoeffs(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "SeriesCoeffs") -> "SeriesCoeffs":
        if len(self.coeffs) != len(other.coeffs):
            raise ValueError("series have different truncation orders")
        return SeriesCoeffs(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": list(self.coeffs)}


def expand_partition_gf(N: int) -> SeriesCoeffs:
    """Coefficients of prod_m 1/(1-q^m): c_n = p(n), with c_0 = 1.

    Pure product expansion, independent of the enumerator.
    """
    c = [1] + [0] * N
    for m in range(1, N + 1):
        for j in range(m, N + 1):
            c[j] += c[j - m]
    return SeriesCoeffs(tuple(c))


def expand_product(factors: Iterable[tuple[int, int]], N: int) -> SeriesCoeffs:
    """Truncated product over (sign, exponent) factor descriptions.

    sign +1 multiplies by (1 + q^e); sign -1 multiplies by 1/(1 - q^e).
    Exponents must be positive; factors beyond the truncation order are
    inert and simply skipped.
    """
    c = [1] + [0] * N
    for sign, e in factors:
        if e < 1:
            raise ValueError(f"exponent must be positive, got {e}")
        if e > N:
            continue
        if sign > 0:
            for j in range(N, e - 1, -1):
                c[j] += c[j - e]
        else:
            for j in range(e, N + 1):
                c[j] += c[j - e]
    return SeriesCoeffs(tuple(c))


def distinct_parts_product(N: int) -> SeriesCoeffs:
    """prod_k (1 + q^k): counts partitions into distinct parts."""
    return expand_product(((1, k) for k in range(1, N + 1)), N)


def odd_parts_product(N: int) -> SeriesCoeffs:
    """prod_k 1/(1 - q^(2k+1)): counts partitions into odd parts."""
    return expand_product(((-1, k) for k in range(1, N + 1, 2)), N)


def divisor_series(N: int) -> SeriesCoeffs:
    """c_n = number of divisors of n (c_0 = 0); sum_m q^m/(1-q^m)."""
    c = [0] * (N + 1)
    for m in range(1, N + 1):
        for j in range(m, N + 1, m):
            c[j] += 1
    return SeriesCoeffs(tuple(c))


def odd_divisor_series(N: int) -> SeriesCoeffs:
    """c_n = number of odd divisors of n; sum_k q^(2k+1)/(1-q^(2k+1))."""
    c = [0] * (N + 1)
    for m in range(1, N + 1, 2):
        for j in range(m, N + 1, m):
            c[j] += 1
    return SeriesCoeffs(tuple(c))


def ones_series(N: int) -> SeriesCoeffs:
    """1/(1-q): every coefficient 1, counting the family (n)x[1]."""
    return SeriesCoeffs((1,) * (N + 1))


def multiples_series(step: int, N: int) -> SeriesCoeffs:
    """sum_k q^(step*k), k >= 1: indicator of positive multiples."""
    if step < 1:
        raise ValueError("step must be positive")
    return SeriesCoeffs(tuple(1 if n and n % step == 0 else 0 for n in range(N + 1)))


def set_series(pred, N: int) -> SeriesCoeffs:
    """c_n = p_S(n) by enumeration; the semantic ground truth."""
    return set_series_many([pred], N)[0]


def set_series_many(preds: Sequence, N: int) -> list[SeriesCoeffs]:
    """Enumeration-backed series for several sets in one pass."""
    fns = []
    for pred in preds:
        if isinstance(pred, SetPredicate):
            fns.append(pred.fn)
        else:
            raise TypeError("set_series needs SetPredicate instances")
    columns = [[0] * (N + 1) for _ in fns]
    for n in range(1, N + 1):
        for parts, mults in iter_raw(n):
            m = len(parts)
            for j, fn in enumerate(fns):
                if fn(parts, mults, m):
                    columns[j][n] += 1
    return [SeriesCoeffs(tuple(col)) for col in columns]


def _mul_binomial(poly: list[int], e: int, N: int) -> None:
    # poly *= (1 + q^e), in place
    for j in range(N, e - 1, -1):
        poly[j] += poly[j - e]


def expand_E_series(which: str, N: int) -> SeriesCoeffs:
    """Closed-form series for the three near-distinct families.

    E0 (largest part doubled): sum over largest part v >= 2 of
    q^(2v) * (prod_{j<v}(1+q^j) - 1); the -1 removes the empty choice
    of smaller parts, which would be the dimension-one (v)x[2].

    E1 (smallest part doubled): sum over smallest part s >= 1 of
    q^(2s) * (prod_{j>s}(1+q^j) - 1).

    ED (both doubled): sum over s < v of q^(2s+2v) * prod_{s<j<v}(1+q^j).
    """
    acc = [0] * (N + 1)
    if which == "E0":
        prod = [1] + [0] * N  # prod_{j=1}^{v-1} (1+q^j), grown incrementally
        for v in range(2, N // 2 + 1):
            _mul_binomial(prod, v - 1, N)
            base = 2 * v
            for t in range(1, N - base + 1):
                acc[base + t] += prod[t]
    elif which == "E1":
        for s in range(1, N // 2 + 1):
            base = 2 * s
            room = N - base
            prod = [1] + [0] * room
            for j in range(s + 1, room + 1):
                for t in range(room, j - 1, -1):
                    prod[t] += prod[t - j]
            for t in range(1, room + 1):
                acc[base + t] += prod[t]
    elif which == "ED":
        for s in range(1, N // 4 + 1):
            for v in range(s + 1, (N - 2 * s) // 2 + 1):
                base = 2 * s + 2 * v
                room = N - base
                prod = [1] + [0] * room
                for j in range(s + 1, min(v - 1, room) + 1):
                    for t in range(room, j - 1, -1):
                        prod[t] += prod[t - j]
                for t in range(0, room + 1):
                    acc[base + t] += prod[t]
    else:
        raise ValueError(f"which must be E0, E1 or ED, got {which!r}")
    return SeriesCoeffs(tuple(acc))


def support_series(
    condition: Callable[[tuple[int, ...]], bool],
    N: int,
    *,
    min_dim: int = 1,
    max_dim: int | None = None,
) -> SeriesCoeffs:
    """Sum of prod_i q^(l_i)/(1-q^(l_i)) over strictly decreasing supports.

    The condition sees the support (the distinct parts, decreasing);
    multiplicities stay free, which is exactly what the geometric
    factors encode.  This is the constrained-sum route for sets whose
    definition touches only the parts, independent of the enumerator.
    """
    acc = [0] * (N + 1)

    def extend(poly: list[int], v: int) -> list[int]:
        out = [0] * (N + 1)
        for j in range(v, N + 1):
            out[j] = poly[j - v] + out[j - v]
        return out

    def recurse(prefix: tuple[int, ...], poly: list[int], max_next: int) -> None:
        depth = len(prefix)
        if depth >= min_dim and (max_dim is None or depth <= max_dim):
            if condition(prefix):
                for j in range(N + 1):
                    acc[j] += poly[j]
        if max_dim is not None and depth >= max_dim:
            return
        budget = N - sum(prefix)
        for v in range(min(max_next, budget), 0, -1):
            recurse(prefix + (v,), extend(poly, v), v - 1)

    unit = [1] + [0] * N
    recurse((), unit, N)
    return SeriesCoeffs(tuple(acc))
