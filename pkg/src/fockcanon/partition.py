"""Partitions, nodes, residues and the orders used to index matrices."""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, NamedTuple


class NotRegular(ValueError):
    """An operation that needs an e-regular partition got a singular one."""


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Comparison is the inherited tuple (lexicographic) order, so
    ``sorted(ps, reverse=True)`` lists more dominant partitions first.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return tuple.__new__(cls, parts)

    @classmethod
    def _make(cls, parts) -> "Partition":
        return tuple.__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, r: int) -> int:
        """Length of row ``r`` (1-indexed); zero below the last row."""
        return self[r - 1] if 1 <= r <= len(self) else 0

    def nodes(self):
        for r, p in enumerate(self, 1):
            for c in range(1, p + 1):
                yield Node(r, c)

    def __repr__(self):
        return f"Partition({format_partition(self)})"

    def __str__(self):
        return format_partition(self)


EMPTY = Partition()


class Node(NamedTuple):
    row: int
    col: int


def residue(x: Node, e: int) -> int:
    return (x.col - x.row) % e


def addable_nodes(lam: Partition, e: int, i: int | None = None) -> list[Node]:
    """Addable nodes of ``lam`` (of residue ``i`` if given), top row first."""
    out = []
    prev = None
    for r in range(1, len(lam) + 2):
        p = lam.part(r)
        if prev is None or prev > p:
            x = Node(r, p + 1)
            if i is None or residue(x, e) == i:
                out.append(x)
        prev = p
    return out


def removable_nodes(lam: Partition, e: int, i: int | None = None) -> list[Node]:
    out = []
    for r in range(1, len(lam) + 1):
        p = lam[r - 1]
        if p > lam.part(r + 1):
            x = Node(r, p)
            if i is None or residue(x, e) == i:
                out.append(x)
    return out


def add_node(lam: Partition, x: Node) -> Partition:
    parts = list(lam)
    if x.row == len(parts) + 1:
        parts.append(1)
    else:
        parts[x.row - 1] += 1
    return Partition._make(parts)


def dominates(lam: Partition, mu: Partition) -> bool:
    """``lam`` dominates ``mu`` (both of the same size)."""
    if sum(lam) != sum(mu):
        return False
    a = b = 0
    for t in range(max(len(lam), len(mu))):
        a += lam[t] if t < len(lam) else 0
        b += mu[t] if t < len(mu) else 0
        if a < b:
            return False
    return True


def is_e_regular(lam: Partition, e: int) -> bool:
    run = 1
    for t in range(1, len(lam)):
        run = run + 1 if lam[t] == lam[t - 1] else 1
        if run >= e:
            return False
    return True


def ladder_residue_sequence(mu: Partition, e: int) -> list[tuple[int, int]]:
    """Residues and sizes of the nonempty e-ladders of ``mu`` in ladder order.

    Node ``(a, b)`` lies on ladder ``a + (e-1)(b-1)``; every node on ladder
    ``l`` has residue ``(1 - l) mod e``.
    """
    if not is_e_regular(mu, e):
        raise NotRegular(f"{format_partition(mu)} is not {e}-regular")
    counts: dict[int, int] = {}
    for a, p in enumerate(mu, 1):
        for b in range(1, p + 1):
            l = a + (e - 1) * (b - 1)
            counts[l] = counts.get(l, 0) + 1
    return [((1 - l) % e, counts[l]) for l in sorted(counts)]


def dominance_descending_order(ps: Iterable[Partition]) -> list[Partition]:
    """Descending lexicographic order; more dominant partitions come first."""
    return sorted(ps, reverse=True)


def _revcolex_key(lam: Partition, width: int):
    padded = tuple(lam) + (0,) * (width - len(lam))
    return tuple(reversed(padded))


def reverse_colex_order(ps: Iterable[Partition]) -> list[Partition]:
    """A second linear extension of dominance.

    ``lam`` precedes ``mu`` when, at the last row where they differ,
    ``lam`` has the shorter row.
    """
    ps = list(ps)
    width = max((len(p) for p in ps), default=0)
    return sorted(ps, key=lambda p: _revcolex_key(p, width))


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` in descending lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return (EMPTY,)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append(Partition._make((first,) + tuple(rest)))
    return tuple(out)


# -- text form ----------------------------------------------------------

def format_partition(lam: Iterable[int], shorthand: bool = True) -> str:
    """``(4,4,3)`` -> ``4^2,3``; the empty partition is ``-``."""
    lam = tuple(lam)
    if not lam:
        return "-"
    if not shorthand:
        return ",".join(map(str, lam))
    out = []
    t = 0
    while t < len(lam):
        s = t
        while t < len(lam) and lam[t] == lam[s]:
            t += 1
        m = t - s
        out.append(str(lam[s]) if m == 1 else f"{lam[s]}^{m}")
    return ",".join(out)


_PIECE = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_partition(text: str) -> Partition:
    s = text.strip().strip("()").replace(" ", "")
    if s in ("", "-", "0"):
        return EMPTY
    parts: list[int] = []
    for piece in s.split(","):
        m = _PIECE.match(piece)
        if not m:
            raise ValueError(f"bad partition {text!r}")
        parts.extend([int(m.group(1))] * int(m.group(2) or 1))
    return Partition(parts)
