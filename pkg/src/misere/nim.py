"""Grundy arithmetic and the closed-form misère outcome of nim sums."""

from __future__ import annotations

from functools import reduce
from typing import Iterable

from .outcomes import Outcome


def mex(values: Iterable[int]) -> int:
    """Minimum excluded nonnegative integer."""
    present = set(values)
    m = 0
    while m in present:
        m += 1
    return m


def grundy(heaps: Iterable[int]) -> int:
    """XOR of all heap sizes; 0 for the empty sum."""
    return reduce(lambda a, b: a ^ b, heaps, 0)


def is_firm(heaps: Iterable[int]) -> bool:
    """True iff some heap exceeds 1; the empty sum is fickle."""
    return any(h > 1 for h in heaps)


def nim_misere_outcome(heaps: Iterable[int]) -> Outcome:
    """Misère outcome of a sum of nimbers.

    Firm sums behave as in normal play (first player wins iff the Grundy
    value is nonzero); fickle sums are inverted.
    """
    heaps = tuple(heaps)
    if (grundy(heaps) != 0) == is_firm(heaps):
        return Outcome.N
    return Outcome.P


def option_with_grundy(heaps: Iterable[int], m: int) -> tuple[int, ...]:
    """A single-heap reduction of the sum with Grundy value m.

    Requires m < grundy(heaps).  Ties are broken by reducing the largest
    eligible heap, then by the least resulting multiset.
    """
    heaps = tuple(sorted(heaps))
    g = grundy(heaps)
    if m < 0 or m >= g:
        raise ValueError(f"no option with grundy {m}: need m < {g}")
    candidates = []
    for i, v in enumerate(heaps):
        if i and heaps[i - 1] == v:
            continue
        w = m ^ g ^ v
        if w < v:
            result = tuple(sorted(heaps[:i] + (w,) + heaps[i + 1 :]))
            candidates.append((-v, result))
    # m < g guarantees at least one heap is reducible to reach m
    best = min(candidates)
    return best[1]
