"""Sweeps over rigid pairs: catalogs, invariant checks, reports and the self-test."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .fingerprint import (
    Fingerprint,
    condition_ii_subsumed,
    full_trace,
    mu_blocks,
    mu_trace,
    pair_fingerprint,
    trace_csv,
    trace_digest,
    trace_table,
)
from .fixtures import SEE1_MOVE, SEE2_MOVE, SEO2_TABLE, STRUCTURE_FIXTURE, fixture_mu, segment_tau
from .moves import enumerate_d_moves, enumerate_s_moves, enumerate_te_to, split_paths, splitting_sites, verify_splitting
from .partitions import add_partitions, has_no_gaps, make_partition
from .rigid import FAMILIES, RigidPair, TheoryKind, enumerate_rigid, enumerate_rigid_pairs, structure_report, uniform_orientations
from .symbol import Symbol, add_symbols, pair_symbol, symbol_key, symbol_of, symbol_via_rows, symbols_equal


def dumps(obj) -> str:
    """Canonical one-line JSON used for every report line."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class CatalogRecord:
    pair: RigidPair
    symbol: Symbol
    fingerprint: Fingerprint
    trace_digest: str

    def to_json(self) -> dict:
        return {
            "pair": self.pair.to_json(),
            "symbol": self.symbol.to_json(),
            "symbol_key": symbol_key(self.symbol),
            "fingerprint": self.fingerprint.to_json(),
            "trace_digest": self.trace_digest,
        }


def catalog_record(pair: RigidPair, sign_rule: str = "b") -> CatalogRecord:
    trace = full_trace(pair, "formula", sign_rule)
    return CatalogRecord(pair, pair_symbol(pair), pair_fingerprint(pair, "formula", sign_rule), trace_digest(trace))


def theories(family: str, max_rank: int, min_rank: int = 1) -> list[TheoryKind]:
    return [TheoryKind(family, n) for n in range(min_rank, max_rank + 1)]


def catalog(family: str, max_rank: int, sign_rule: str = "b", min_rank: int = 1) -> Iterator[CatalogRecord]:
    for theory in theories(family, max_rank, min_rank):
        for pair in enumerate_rigid_pairs(theory):
            yield catalog_record(pair, sign_rule)


# -- class reports -------------------------------------------------------------


@dataclass
class ClassReport:
    theory: TheoryKind
    keyed_by: str
    key: str
    members: list[RigidPair]
    values: list[str]  # distinct values of the other invariant
    uniform: bool
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "theory": self.theory.family,
            "n": self.theory.rank,
            "keyed_by": self.keyed_by,
            "key": self.key,
            "size": len(self.members),
            "members": [p.to_json() for p in self.members],
            "other_values": self.values,
            "uniform": self.uniform,
        }
        out.update(self.extra)
        return out


def _fp_key(fp: Fingerprint) -> str:
    return str(fp)


def verify_forward(family: str, max_rank: int, sign_rule: str = "b", method: str = "formula") -> tuple[list[ClassReport], list[dict]]:
    """Group by symbol and check each class has a single fingerprint."""
    reports, violations = [], []
    for theory in theories(family, max_rank):
        classes: dict[str, list[RigidPair]] = defaultdict(list)
        for pair in enumerate_rigid_pairs(theory):
            classes[symbol_key(pair_symbol(pair))].append(pair)
        for key in sorted(classes):
            members = classes[key]
            fps = {p: pair_fingerprint(p, method, sign_rule) for p in members}
            values = sorted({_fp_key(f) for f in fps.values()})
            report = ClassReport(theory, "symbol", key, members, values, len(values) == 1)
            reports.append(report)
            if not report.uniform:
                violations.append(
                    {
                        "theory": family,
                        "n": theory.rank,
                        "symbol": key,
                        "members": [
                            {"pair": p.to_json(), "fingerprint": fps[p].to_json(), "trace": trace_csv(full_trace(p, method, sign_rule))}
                            for p in members
                        ],
                    }
                )
    return reports, violations


def verify_converse(family: str, max_rank: int, sign_rule: str = "b") -> list[ClassReport]:
    """Group by fingerprint and report symbol uniformity.

    Each report also states whether adding lambda = lambda' + lambda'' to the
    key singles out one pair up to swapping the components, and lists the
    sub-classes where it does not.
    """
    reports = []
    for theory in theories(family, max_rank):
        classes: dict[str, list[RigidPair]] = defaultdict(list)
        for pair in enumerate_rigid_pairs(theory):
            classes[_fp_key(pair_fingerprint(pair, "formula", sign_rule))].append(pair)
        for key in sorted(classes):
            members = classes[key]
            values = sorted({symbol_key(pair_symbol(p)) for p in members})
            by_lambda: dict[tuple, list[RigidPair]] = defaultdict(list)
            for p in members:
                by_lambda[add_partitions(p.first, p.second).parts].append(p)
            # a pair and its swap share lambda; only distinct swap orbits collide
            ambiguous = [
                {"lambda": list(lam), "members": [p.to_json() for p in ps]}
                for lam, ps in sorted(by_lambda.items())
                if len({min(p, p.swapped()) for p in ps}) > 1
            ]
            reports.append(
                ClassReport(
                    theory,
                    "fingerprint",
                    key,
                    members,
                    values,
                    len(values) == 1,
                    {"lambda_determines_pair": not ambiguous, "lambda_collisions": ambiguous},
                )
            )
    return reports


def converse_summary(reports: Iterable[ClassReport]) -> dict:
    reports = list(reports)
    return {
        "classes": len(reports),
        "non_uniform": sum(not r.uniform for r in reports),
        "lambda_collision_classes": sum(not r.extra["lambda_determines_pair"] for r in reports),
    }


def duality_match(rank: int, include_d: bool = False) -> dict:
    """Join the B_n and C_n catalogs on equal symbols."""
    sides = {}
    for fam in ("B", "C") + (("D",) if include_d else ()):
        keyed: dict[str, list[RigidPair]] = defaultdict(list)
        for pair in enumerate_rigid_pairs(TheoryKind(fam, rank)):
            keyed[symbol_key(pair_symbol(pair))].append(pair)
        sides[fam] = keyed
    b, c = sides["B"], sides["C"]
    matched = sorted(set(b) & set(c))
    out = {
        "rank": rank,
        "counts": {fam: sum(map(len, keyed.values())) for fam, keyed in sides.items()},
        "distinct_symbols": {fam: len(keyed) for fam, keyed in sides.items()},
        "matched": [
            {"symbol": k, "B": [p.to_json() for p in b[k]], "C": [p.to_json() for p in c[k]]} for k in matched
        ],
        "unmatched_B": [{"symbol": k, "pairs": [p.to_json() for p in b[k]]} for k in sorted(set(b) - set(c))],
        "unmatched_C": [{"symbol": k, "pairs": [p.to_json() for p in c[k]]} for k in sorted(set(c) - set(b))],
    }
    if include_d:
        out["matched_D_with_B"] = len(set(sides["D"]) & set(b))
        out["matched_D_with_C"] = len(set(sides["D"]) & set(c))
    return out


def move_reports(family: str, max_rank: int, enable_teto: bool = False) -> Iterator[dict]:
    for theory in theories(family, max_rank):
        for pair in enumerate_rigid_pairs(theory):
            outcomes = enumerate_s_moves(pair) + enumerate_d_moves(pair)
            if enable_teto:
                outcomes += enumerate_te_to(pair)
            for o in outcomes:
                yield o.to_json()


# -- self-test -----------------------------------------------------------------


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


REFERENCE_SUM = (
    Symbol((0, 0, 0, 0, 0, 1, 1), (1, 1, 1, 1, 1, 2)),
    Symbol((0, 0, 0, 1, 1, 1), (1, 1, 1, 1, 1)),
    Symbol((0, 0, 0, 0, 1, 2, 2), (1, 2, 2, 2, 2, 3)),
)


def check_symbol_addition() -> Check:
    s, u, want = REFERENCE_SUM
    got = add_symbols(s, u)
    return Check("symbol addition example", got == want, f"got {got.to_json()}")


def check_symbol_oracle(max_total: int = 17) -> Check:
    bad = []
    count = 0
    for fam in FAMILIES:
        for total in range(1 if fam == "B" else 0, max_total + 1, 2):
            for lam in enumerate_rigid(total, fam):
                count += 1
                if not symbols_equal(symbol_of(lam, fam), symbol_via_rows(lam, fam)):
                    bad.append(f"{fam} {lam}")
    return Check("per-row symbol equals beta-set symbol", not bad, f"{count} partitions, mismatches: {bad[:5]}")


def check_mu_fixtures(sign_rule: str) -> list[Check]:
    seo2_mu = fixture_mu(SEO2_TABLE, sign_rule)
    seo2_tau = segment_tau(SEO2_TABLE, sign_rule)
    seo2 = Check(
        "Seo2 mu table",
        seo2_mu == SEO2_TABLE.segment_mu and seo2_tau == (-1, -1, -1),
        f"mu segment {seo2_mu}, tau {seo2_tau}\n" + trace_table(full_trace(SEO2_TABLE.before, "formula", sign_rule)),
    )
    see1_got = [fixture_mu(fx, sign_rule, w) for fx in (SEE1_MOVE, SEE2_MOVE) for w in ("before", "after")]
    see1 = Check(
        "See1/See2 odd run unchanged",
        all(g == (5, 5) for g in see1_got),
        f"mu segments {see1_got}\n" + trace_table(full_trace(SEE1_MOVE.before, "formula", sign_rule)),
    )
    return [seo2, see1]


def check_mu_routes(max_rank: int, sign_rule: str) -> Check:
    for fam in FAMILIES:
        for theory in theories(fam, max_rank):
            for p in enumerate_rigid_pairs(theory):
                a = mu_trace(p, "formula", sign_rule)
                b = mu_blocks(p)
                if a.mu != b.mu:
                    return Check("mu formula equals row route", False, f"{p}: formula {a.mu}, rows {b.mu}\n" + trace_table(a))
    return Check("mu formula equals row route", True)


def check_structure(orientation: str, max_total: int = 17) -> list[Check]:
    lam, fam = STRUCTURE_FIXTURE
    rep = structure_report(lam, fam, orientation)
    fixture = Check(f"structure clauses on {fam} {lam}", all(rep.values()), json.dumps(rep, sort_keys=True))
    uniform = uniform_orientations(max_total)
    sweep = Check("structure clauses hold in exactly this orientation", uniform == [orientation], f"uniform orientations: {uniform}")
    return [fixture, sweep]


def check_conditions(max_rank: int, sign_rule: str) -> list[Check]:
    implied = []
    redundant = []
    logged = 0
    for fam in FAMILIES:
        for theory in theories(fam, max_rank):
            for p in enumerate_rigid_pairs(theory):
                lam = add_partitions(p.first, p.second)
                no_gaps = has_no_gaps(lam, virtual_zero=False)
                trace = full_trace(p, "formula", sign_rule)
                if no_gaps and not condition_ii_subsumed(trace):
                    implied.append(str(p))
                same = pair_fingerprint(p, "formula", sign_rule) == pair_fingerprint(p, "formula", sign_rule, use_condition_ii=False)
                if not same:
                    if no_gaps:
                        redundant.append(str(p))
                    else:
                        logged += 1
    return [
        Check("(i) covers (ii) without gaps", not implied, f"failures: {implied[:5]}"),
        Check("dropping (ii) keeps fingerprints", not redundant, f"failures: {redundant[:5]}; logged outside no-gap regime: {logged}"),
    ]


def check_splitting(max_rank: int) -> Check:
    seen = 0
    for fam in FAMILIES:
        for theory in theories(fam, max_rank):
            for p in enumerate_rigid_pairs(theory):
                for site in splitting_sites(p):
                    if split_paths(p, *site)["direct"] is None:
                        continue
                    seen += 1
                    if not verify_splitting(p, *site):
                        return Check("splitting compositions agree", False, f"{p} rows {site}")
    return Check("splitting compositions agree", True, f"{seen} configurations")


def check_moves(max_rank: int) -> Check:
    count = 0
    for fam in FAMILIES:
        for theory in theories(fam, max_rank):
            for p in enumerate_rigid_pairs(theory):
                for o in enumerate_s_moves(p) + enumerate_d_moves(p):
                    count += 1
                    if not (o.symbol_preserved and o.fingerprint_preserved and o.blocks_agree):
                        return Check("S and D moves preserve invariants", False, dumps(o.to_json()))
    return Check("S and D moves preserve invariants", True, f"{count} moves")


def check_forward(max_rank: int, sign_rule: str) -> Check:
    for fam in FAMILIES:
        _, violations = verify_forward(fam, max_rank, sign_rule)
        if violations:
            v = violations[0]
            traces = "\n".join(m["trace"] for m in v["members"])
            return Check("symbol classes are fingerprint-uniform", False, f"{fam}{v['n']} symbol {v['symbol']}\n{traces}")
    return Check("symbol classes are fingerprint-uniform", True)


def selftest(
    max_rank: int = 5, sign_rule: str = "b", orientation: str = "columns", max_total: int = 17, split_rank: int = 9
) -> list[Check]:
    # real-row splitting configurations first show up at rank 8
    checks = [check_symbol_addition(), check_symbol_oracle(max_total)]
    checks += check_mu_fixtures(sign_rule)
    checks.append(check_mu_routes(max_rank, sign_rule))
    checks += check_structure(orientation, max_total)
    checks += check_conditions(max_rank, sign_rule)
    checks.append(check_splitting(max(max_rank, split_rank)))
    checks.append(check_moves(min(max_rank, 5)))
    checks.append(check_forward(max_rank, sign_rule))
    return checks


def parse_pair(text: str) -> RigidPair:
    """Read a pair from JSON text; raises InvalidPair or ValueError."""
    obj = json.loads(text)
    if not isinstance(obj, dict):
        raise ValueError("pair JSON must be an object")
    # make_partition gives a precise message for malformed parts
    for k in ("lambda1", "lambda2"):
        if k in obj:
            make_partition(obj[k])
    return RigidPair.from_json(obj)
