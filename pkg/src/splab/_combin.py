"""Small combinatorial generators shared by the series machinery.

The number-theoretic oracle module deliberately does not use these: it keeps
its own enumeration so the cross-checks stay independent.
"""

from __future__ import annotations


def partitions_exact(n: int, k: int):
    """Yield partitions of n into exactly k positive parts.

    Each partition is a dict {part: multiplicity}. Parts are generated in
    decreasing order, so the overall order is deterministic.
    """
    if n < 0 or k < 0:
        return
    if k == 0:
        if n == 0:
            yield {}
        return

    acc: dict = {}

    def rec(remaining, parts_left, max_part):
        if parts_left == 0:
            if remaining == 0:
                yield dict(acc)
            return
        top = min(max_part, remaining - (parts_left - 1))
        for part in range(top, 0, -1):
            if part * parts_left < remaining:
                break
            acc[part] = acc.get(part, 0) + 1
            yield from rec(remaining - part, parts_left - 1, part)
            if acc[part] == 1:
                del acc[part]
            else:
                acc[part] -= 1

    yield from rec(n, k, n)


def partitions_all(n: int):
    """Yield partitions of n into any number of parts, as multiplicity dicts."""
    if n == 0:
        yield {}
        return
    for k in range(1, n + 1):
        yield from partitions_exact(n, k)
