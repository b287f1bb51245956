"""Concrete pairs for the reference tables and named moves, plus the sign-rule calibration."""

from __future__ import annotations

from dataclasses import dataclass

from .fingerprint import SIGN_RULES, Fingerprint, assemble, condition_flags, mu_blocks, mu_trace, tau
from .partitions import Partition, make_partition
from .rigid import RigidPair, TheoryKind, enumerate_rigid_pairs
from .moves import Site


def pair(family: str, rank: int, first, second) -> RigidPair:
    return RigidPair(make_partition(first), make_partition(second), TheoryKind(family, rank))


@dataclass(frozen=True)
class Fixture:
    name: str
    before: RigidPair
    after: RigidPair | None
    site: Site | None
    segment: tuple[int, ...]  # indices i of the table columns
    segment_mu: tuple[int, ...]
    segment_fingerprint: Fingerprint


def _fp(alpha=(), beta=()) -> Fingerprint:
    return Fingerprint(Partition(tuple(alpha)), Partition(tuple(beta)))


# smallest pair whose lambda starts 5, 4, 3 with mu = 4, 4, 4 (one 4 in the middle)
SEO2_TABLE = Fixture(
    "Seo2 table",
    pair("B", 6, (2, 2, 1), (3, 2, 2, 1)),
    None,
    None,
    (1, 2, 3),
    (4, 4, 4),
    _fp(beta=(2, 2, 2)),
)

# Seo2 acting on lambda' = rows (3,2), lambda'' = rows (6,5,1)
SEO2_MOVE = Fixture(
    "Seo2",
    pair("B", 8, (2, 2, 1), (3, 2, 2, 2, 2, 1)),
    pair("B", 8, (1, 1, 1), (3, 3, 3, 2, 2, 1)),
    Site((2,), (3,)),
    (1, 2, 3),
    (4, 4, 4),
    _fp(beta=(2, 2, 2)),
)

# See1 with l + k = 0: a run of two 5s that the swap leaves alone
SEE1_MOVE = Fixture(
    "See1",
    pair("B", 18, (1,) * 6, (4, 4, 3, 3, 3, 3, 3, 3, 2, 2, 1)),
    pair("B", 18, (1,) * 8, (4, 4, 3, 3, 3, 3, 2, 2, 2, 2, 1)),
    Site((1,), (3,)),
    (1, 2),
    (5, 5),
    _fp(alpha=(5,)),
)

SEE2_MOVE = Fixture(
    "See2",
    pair("B", 15, (2, 2, 1, 1, 1), (4, 4, 4, 4, 3, 2, 2, 1)),
    pair("B", 15, (2, 2, 2, 2, 1), (4, 4, 3, 3, 3, 2, 2, 1)),
    Site((2,), (4,)),
    (3, 4),
    (5, 5),
    _fp(alpha=(5,)),
)

FIXTURES = (SEO2_TABLE, SEO2_MOVE, SEE1_MOVE, SEE2_MOVE)


def fixture_mu(fx: Fixture, sign_rule: str, which: str = "before") -> tuple[int, ...]:
    p = fx.before if which == "before" else fx.after
    mu = mu_trace(p, "formula", sign_rule).mu
    return tuple(mu[i - 1] for i in fx.segment)


def segment_fingerprint(fx: Fixture, sign_rule: str = "b", which: str = "before") -> Fingerprint:
    p = fx.before if which == "before" else fx.after
    trace = condition_flags(p, mu_trace(p, "formula", sign_rule))
    return assemble(trace, fx.segment)


def segment_tau(fx: Fixture, sign_rule: str = "b", which: str = "before") -> tuple[int, ...]:
    p = fx.before if which == "before" else fx.after
    trace = condition_flags(p, mu_trace(p, "formula", sign_rule))
    return tuple(tau(trace, trace.mu[i - 1]) if trace.mu[i - 1] % 2 == 0 else 1 for i in fx.segment)


def calibrate(max_rank: int = 6) -> dict[str, dict]:
    """Score every sign-rule candidate against the tables and the row route."""
    out = {}
    for rule in sorted(SIGN_RULES):
        see1 = all(fixture_mu(fx, rule, w) == fx.segment_mu for fx in (SEE1_MOVE, SEE2_MOVE) for w in ("before", "after"))
        seo2 = fixture_mu(SEO2_TABLE, rule) == SEO2_TABLE.segment_mu and segment_tau(SEO2_TABLE, rule) == (-1, -1, -1)
        mismatches = 0
        for fam in "BCD":
            for rank in range(1, max_rank + 1):
                for p in enumerate_rigid_pairs(TheoryKind(fam, rank)):
                    if mu_trace(p, "formula", rule).mu != mu_blocks(p).mu:
                        mismatches += 1
        out[rule] = {
            "see1_table": see1,
            "seo2_table": seo2,
            "blocks_mismatches": mismatches,
            "accepted": see1 and seo2 and mismatches == 0,
        }
    return out


def elected_sign_rule(max_rank: int = 6) -> str | None:
    winners = [r for r, v in calibrate(max_rank).items() if v["accepted"]]
    return winners[0] if len(winners) == 1 else None


# smallest non-trivial site for each named example, found by search
NAMED_SITES = {
    "See1": (pair("D", 5, (1, 1, 1, 1), (1,) * 6), Site((1,), (1,))),
    "See2": (pair("C", 3, (1, 1), (1, 1, 1, 1)), Site((1,), (1,))),
    "Se2": (pair("C", 5, (2, 1, 1), (2, 1, 1, 1, 1)), Site((1,), (1,))),
    "Seo2": (pair("B", 4, (2, 2, 1, 1, 1, 1), (1,)), Site((2,), (1,))),
    "Ie2": (pair("C", 11, (2, 2, 2, 2, 1, 1), (2, 2, 2, 2, 1, 1, 1, 1)), Site((1, 2), (1, 2))),
}

# smallest pairs realizing two named descriptors
SO1121 = (pair("C", 10, (2, 1, 1, 1, 1, 1, 1, 1, 1), (2, 2, 2, 2, 1, 1)), Site((1,), (2,)))
DE24 = (pair("D", 4, (1, 1, 1, 1), (1, 1, 1, 1)), Site((1, 2), ()))

# structure clause fixture: B partition (2,2,1) is rigid and its rows are (3,2)
STRUCTURE_FIXTURE = (make_partition((2, 2, 1)), "B")
