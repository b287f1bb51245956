"""Theory partitions, rigidity, and enumeration of rigid semisimple pairs."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Literal

from .partitions import (
    EMPTY,
    Partition,
    has_no_gaps,
    make_partition,
    multiplicity,
    partitions_of,
    transpose,
)

Family = Literal["B", "C", "D"]
FAMILIES: tuple[Family, ...] = ("B", "C", "D")

# Offset used by the per-row symbol rule and by the pairwise-row convention.
FAMILY_SHIFT = {"B": -1, "C": 0, "D": 1}


class InvalidPair(ValueError):
    """A pair that violates the theory's pair-validity rule."""


@dataclass(frozen=True, order=True)
class TheoryKind:
    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.rank < 0:
            raise ValueError("rank must be non-negative")

    @property
    def total(self) -> int:
        return 2 * self.rank + 1 if self.family == "B" else 2 * self.rank


@dataclass(frozen=True, order=True)
class RigidPair:
    first: Partition
    second: Partition
    theory: TheoryKind

    def to_json(self) -> dict:
        return {
            "theory": self.theory.family,
            "n": self.theory.rank,
            "lambda1": self.first.to_json(),
            "lambda2": self.second.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict, check: bool = True) -> "RigidPair":
        try:
            theory = TheoryKind(str(obj["theory"]), int(obj["n"]))
            pair = cls(make_partition(obj["lambda1"]), make_partition(obj["lambda2"]), theory)
        except KeyError as exc:
            raise InvalidPair(f"missing field {exc.args[0]!r}") from exc
        if check:
            problem = pair_problem(pair)
            if problem:
                raise InvalidPair(problem)
        return pair

    def swapped(self) -> "RigidPair":
        return RigidPair(self.second, self.first, self.theory)

    def __str__(self) -> str:
        return f"{self.theory.family}{self.theory.rank}[{self.first};{self.second}]"


def is_theory_partition(lam: Partition, family: str) -> bool:
    """Parity-multiplicity rule: B/D need even parts of even multiplicity, C odd parts."""
    bad_parity = 0 if family in ("B", "D") else 1
    return all(multiplicity(lam, m) % 2 == 0 for m in set(lam.parts) if m % 2 == bad_parity)


def rigidity_problem(lam: Partition, family: str, virtual_zero: bool = True) -> str | None:
    """Which rigidity rule ``lam`` breaks, or None."""
    if not lam:
        return None
    if not has_no_gaps(lam, virtual_zero=virtual_zero):
        return "has a gap (consecutive parts differ by more than 1)"
    forbidden = 1 if family in ("B", "D") else 0
    twice = sorted(m for m in set(lam.parts) if m % 2 == forbidden and multiplicity(lam, m) == 2)
    if twice:
        kind = "odd" if forbidden else "even"
        return f"{kind} part {twice[0]} appears exactly twice"
    return None


def is_rigid(lam: Partition, family: str, virtual_zero: bool = True) -> bool:
    if not is_theory_partition(lam, family):
        raise ValueError(f"{lam} is not a {family}-theory partition")
    return rigidity_problem(lam, family, virtual_zero) is None


def component_family(theory_family: str, lam: Partition) -> str:
    """Family whose rules govern one component of a pair."""
    if theory_family == "B":
        return "B" if lam.total % 2 else "D"
    return theory_family


def pair_problem(pair: RigidPair) -> str | None:
    """Describe why ``pair`` is invalid, or None when it is a valid rigid pair."""
    fam = pair.theory.family
    total = pair.first.total + pair.second.total
    if total != pair.theory.total:
        return f"component totals sum to {total}, theory {fam}{pair.theory.rank} needs {pair.theory.total}"
    if fam in ("C", "D") and (pair.first.total % 2 or pair.second.total % 2):
        return f"{fam} components must have even totals"
    for name, comp in (("lambda1", pair.first), ("lambda2", pair.second)):
        cf = component_family(fam, comp)
        if not is_theory_partition(comp, cf):
            return f"{name}={comp} is not a {cf}-theory partition"
        problem = rigidity_problem(comp, cf)
        if problem:
            return f"{name}={comp} is not rigid for {cf}: {problem}"
    return None


def is_valid_pair(pair: RigidPair) -> bool:
    return pair_problem(pair) is None


@lru_cache(maxsize=None)
def _rigid_cached(total: int, family: str) -> tuple[Partition, ...]:
    return tuple(
        lam for lam in partitions_of(total) if is_theory_partition(lam, family) and is_rigid(lam, family)
    )


def enumerate_rigid(total: int, family: str) -> list[Partition]:
    """Rigid partitions of ``total``, lexicographically decreasing."""
    if total < 0:
        raise ValueError("total must be non-negative")
    return list(_rigid_cached(total, family))


def _component_totals(theory: TheoryKind) -> Iterator[tuple[int, str, int, str]]:
    n = theory.total
    if theory.family == "B":
        for a in range(n + 1):
            yield a, ("B" if a % 2 else "D"), n - a, ("B" if (n - a) % 2 else "D")
    else:
        for a in range(0, n + 1, 2):
            yield a, theory.family, n - a, theory.family


def enumerate_rigid_pairs(theory: TheoryKind) -> list[RigidPair]:
    """All ordered rigid pairs of the theory, in a fixed deterministic order."""
    out = []
    for a, fa, b, fb in _component_totals(theory):
        for x in enumerate_rigid(a, fa):
            for y in enumerate_rigid(b, fb):
                out.append(RigidPair(x, y, theory))
    return out


def count_rigid_pairs(theory: TheoryKind) -> int:
    return sum(len(enumerate_rigid(a, fa)) * len(enumerate_rigid(b, fb)) for a, fa, b, fb in _component_totals(theory))


def unipotent_pair(lam: Partition, theory: TheoryKind) -> RigidPair:
    return RigidPair(lam, EMPTY, theory)


# -- structural propositions -------------------------------------------------


def structure_report(lam: Partition, family: str, orientation: str = "columns") -> dict[str, bool]:
    """Evaluate the structural clauses for a rigid partition.

    The clauses describe "rows": with ``orientation="columns"`` they are read
    off the transpose (row lengths are the conjugate parts), with ``"rows"``
    off the parts themselves.
    """
    if orientation not in ("rows", "columns"):
        raise ValueError("orientation must be 'rows' or 'columns'")
    rows = list(transpose(lam).parts if orientation == "columns" else lam.parts)
    report: dict[str, bool] = {}
    if family in ("B", "D"):
        want = 1 if family == "B" else 0
        report["first_row_parity"] = (not rows) or rows[0] % 2 == want
        pairs = [(rows[k], rows[k + 1]) for k in range(1, len(rows) - 1, 2)]
        report["pairwise_parity"] = all(a % 2 == b % 2 for a, b in pairs)
        report["shortest_row"] = (not rows) or len(rows) % 2 == 1 or rows[-1] % 2 == 0
        # remark: an odd last row forces an odd number of rows
        if family == "B":
            report["odd_last_row_odd_count"] = (not rows) or rows[-1] % 2 == 0 or len(rows) % 2 == 1
    else:
        pairs = [(rows[k], rows[k + 1]) for k in range(0, len(rows) - 1, 2)]
        report["pairwise_parity"] = all(a % 2 == b % 2 for a, b in pairs)
        report["shortest_row"] = (not rows) or len(rows) % 2 == 0 or rows[-1] % 2 == 0
    return report


def adjudicate_orientation(max_total: int = 17) -> dict[str, dict]:
    """Sweep every rigid partition and record which orientation satisfies all clauses.

    Returns per-orientation counts of passing and failing partitions plus the
    first failure seen.
    """
    result = {}
    for orientation in ("rows", "columns"):
        passed = failed = 0
        first_failure = None
        for fam in FAMILIES:
            for total in range(max_total + 1):
                if fam != "B" and total % 2:
                    continue
                if fam == "B" and total % 2 == 0:
                    continue
                for lam in enumerate_rigid(total, fam):
                    ok = all(structure_report(lam, fam, orientation).values())
                    if ok:
                        passed += 1
                    else:
                        failed += 1
                        if first_failure is None:
                            first_failure = (fam, lam.to_json())
        result[orientation] = {"passed": passed, "failed": failed, "first_failure": first_failure}
    return result


def uniform_orientations(max_total: int = 17) -> list[str]:
    return [o for o, r in adjudicate_orientation(max_total).items() if r["failed"] == 0]
