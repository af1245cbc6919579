"""The e-abacus: bead positions, runner residues, cores, weights and
inserting an empty runner."""

from __future__ import annotations

from dataclasses import dataclass

from .partition import Partition, partitions_of


class TooFewBeads(ValueError):
    pass


class NoBeads(ValueError):
    pass


@dataclass(frozen=True)
class Abacus:
    e: int
    beads: tuple[int, ...]

    def __post_init__(self):
        if self.e < 2:
            raise ValueError("an abacus needs at least two runners")
        b = self.beads
        if any(p < 0 for p in b) or any(b[t] >= b[t + 1] for t in range(len(b) - 1)):
            raise ValueError(f"bead positions must be strictly increasing and non-negative: {b}")

    @property
    def k(self) -> int:
        return len(self.beads)

    def runner(self, p: int) -> int:
        return p % self.e

    def render(self, extra_rows: int = 1) -> str:
        """Bullet/dot grid with the runner residues as a header row."""
        e = self.e
        header = runner_residues(self) if self.k else list(range(e))
        width = max(len(str(h)) for h in header)
        rows = (max(self.beads) // e + 1 if self.beads else 0) + extra_rows
        filled = set(self.beads)
        lines = [" ".join(str(h).rjust(width) for h in header)]
        lines.append("-" * len(lines[0]))
        for r in range(rows):
            lines.append(" ".join(("*" if r * e + c in filled else ".").rjust(width) for c in range(e)))
        return "\n".join(lines)


def abacus_from_partition(lam: Partition, e: int, k: int | None = None) -> Abacus:
    """Beads at ``lam_k, lam_{k-1}+1, ..., lam_1+k-1``; ``k`` defaults to ``len(lam)``."""
    if k is None:
        k = len(lam)
    if k < len(lam):
        raise TooFewBeads(f"{k} beads cannot hold a partition with {len(lam)} rows")
    return Abacus(e, beta_numbers(lam, k))


def beta_numbers(lam, k: int) -> tuple[int, ...]:
    n = len(lam)
    return tuple((lam[k - m] if k - m < n else 0) + m - 1 for m in range(1, k + 1))


def partition_from_beads(beads) -> Partition:
    k = len(beads)
    parts = [beads[k - r] - (k - r) for r in range(1, k + 1)]
    while parts and parts[-1] == 0:
        parts.pop()
    return Partition._make(parts)


def partition_from_abacus(A: Abacus) -> Partition:
    return partition_from_beads(A.beads)


def runner_residues(A: Abacus) -> list[int]:
    """e-residues of the runners.

    Bead ``p`` is the end of row ``l`` with ``p = lam_l + k - l``, so that
    row ends in a node of residue ``lam_l - l = p - k``.
    """
    if A.k == 0:
        raise NoBeads("runner residues need at least one bead")
    return [(r - A.k) % A.e for r in range(A.e)]


def insert_empty_runner(A: Abacus, alpha: int) -> Abacus:
    e = A.e
    if not 0 <= alpha <= e:
        raise ValueError(f"alpha must lie in [0, {e}]")
    beads = []
    for p in A.beads:
        q, r = divmod(p, e)
        beads.append(q * (e + 1) + r + (r >= alpha))
    return Abacus(e + 1, tuple(beads))


def plus(lam: Partition, e: int, k: int, alpha: int) -> Partition:
    """The partition obtained by inserting an empty runner before runner ``alpha``."""
    return partition_from_abacus(insert_empty_runner(abacus_from_partition(lam, e, k), alpha))


def core_and_weight(A: Abacus) -> tuple[Partition, int]:
    e = A.e
    counts = [0] * e
    weight = 0
    for p in A.beads:
        q, r = divmod(p, e)
        # empty positions above p on its runner
        weight += q - counts[r]
        counts[r] += 1
    slid = sorted(r + e * t for r in range(e) for t in range(counts[r]))
    return partition_from_beads(slid), weight


def e_core(A: Abacus) -> Partition:
    return core_and_weight(A)[0]


def e_weight(A: Abacus) -> int:
    return core_and_weight(A)[1]


def core_of(lam: Partition, e: int) -> Partition:
    return core_and_weight(abacus_from_partition(lam, e))[0]


def weight_of(lam: Partition, e: int) -> int:
    return core_and_weight(abacus_from_partition(lam, e))[1]


def same_block(lam: Partition, mu: Partition, e: int, k: int | None = None) -> bool:
    if sum(lam) != sum(mu):
        return False
    if k is None:
        k = max(len(lam), len(mu))
    return e_core(abacus_from_partition(lam, e, k)) == e_core(abacus_from_partition(mu, e, k))


def dominates_via_beads(lam: Partition, mu: Partition, e: int, k: int) -> bool:
    """Tail sums of sorted bead positions: sum_{s>=t} b^lam_s >= sum_{s>=t} b^mu_s."""
    if k < max(len(lam), len(mu)):
        raise TooFewBeads(f"need k >= {max(len(lam), len(mu))}")
    a = beta_numbers(lam, k)
    b = beta_numbers(mu, k)
    sa = sb = 0
    for s in range(k - 1, -1, -1):
        sa += a[s]
        sb += b[s]
        if sa < sb:
            return False
    return sa == sb


def block_members(n: int, e: int, core: Partition, max_length: int | None = None) -> list[Partition]:
    """Partitions of ``n`` with the given e-core, most dominant first."""
    out = []
    for lam in partitions_of(n):
        if max_length is not None and len(lam) > max_length:
            continue
        if core_of(lam, e) == core:
            out.append(lam)
    return out


__all__ = [
    "Abacus",
    "NoBeads",
    "TooFewBeads",
    "abacus_from_partition",
    "block_members",
    "core_and_weight",
    "core_of",
    "dominates_via_beads",
    "e_core",
    "e_weight",
    "insert_empty_runner",
    "partition_from_abacus",
    "plus",
    "runner_residues",
    "same_block",
    "weight_of",
]
