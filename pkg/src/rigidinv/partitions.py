"""Integer partitions as immutable values.

Indices are 1-based everywhere in the public API, matching the usual
``lambda_i`` notation. Reading past the last part yields 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class PartitionError(ValueError):
    """Raised when a sequence cannot be read as a partition."""


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]
    total: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        parts = self.parts
        for k, p in enumerate(parts, 1):
            if p < 1:
                raise PartitionError(f"part {k} is {p}; parts must be positive")
            if k > 1 and parts[k - 2] < p:
                raise PartitionError(
                    f"not weakly decreasing: part {k - 1} = {parts[k - 2]} < part {k} = {p}"
                )
        object.__setattr__(self, "total", sum(parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "()"

    def to_json(self) -> list[int]:
        return list(self.parts)


EMPTY = Partition(())


def make_partition(parts: Iterable[int]) -> Partition:
    """Build a partition, silently dropping trailing zeros.

    >>> make_partition([3, 2, 0, 0])
    Partition(parts=(3, 2))
    """
    seq = [int(p) for p in parts]
    for k, p in enumerate(seq, 1):
        if p < 0:
            raise PartitionError(f"part {k} is negative ({p})")
    while seq and seq[-1] == 0:
        seq.pop()
    if 0 in seq:
        raise PartitionError("not weakly decreasing: zero part followed by a positive part")
    return Partition(tuple(seq))


def part_at(lam: Partition, i: int) -> int:
    """``lambda_i`` for 1-based ``i``; 0 beyond the length."""
    if i < 1:
        raise IndexError(f"partition index must be >= 1, got {i}")
    return lam.parts[i - 1] if i <= len(lam.parts) else 0


def add_partitions(a: Partition, b: Partition) -> Partition:
    n = max(len(a), len(b))
    return Partition(tuple(part_at(a, i) + part_at(b, i) for i in range(1, n + 1)))


def transpose(lam: Partition) -> Partition:
    if not lam:
        return EMPTY
    return Partition(tuple(sum(1 for p in lam.parts if p >= j) for j in range(1, lam.parts[0] + 1)))


def multiplicity(lam: Partition, m: int) -> int:
    if m < 1:
        raise ValueError("multiplicity is defined for positive part sizes")
    return lam.parts.count(m)


def has_no_gaps(lam: Partition, virtual_zero: bool = True) -> bool:
    """True iff consecutive parts differ by at most one.

    With ``virtual_zero`` a trailing 0 part is compared too, so the last part
    must be 1. The empty partition has no gaps.
    """
    seq = list(lam.parts) + ([0] if virtual_zero and lam.parts else [])
    return all(seq[k] - seq[k + 1] <= 1 for k in range(len(seq) - 1))


def partitions_of(n: int, largest: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in lexicographically decreasing order."""
    for parts in _partition_tuples(n, n if largest is None else largest):
        yield Partition(parts)


def _partition_tuples(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partition_tuples(n - k, k):
            yield (k,) + rest


def from_rows(rows: Sequence[int]) -> Partition:
    """Partition whose transpose is ``rows`` (zero rows ignored)."""
    return transpose(make_partition(rows))
