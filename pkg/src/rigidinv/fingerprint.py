"""Fingerprint invariant [alpha; beta] of rigid pairs.

The partition mu is obtained from lambda = lambda' + lambda'' either by the
closed formula on parts (``mu_formula``) or by walking the rows of the
Young diagram with their provenance (``mu_blocks``). The two routes are
independent and must agree.
"""

from __future__ import annotations

import csv
import hashlib
import io
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable

from .partitions import Partition, add_partitions, part_at, transpose
from .rigid import RigidPair


class AssemblyError(ValueError):
    """mu has a part that cannot be paired into alpha."""


# -- sign rules ----------------------------------------------------------------


def _sign_index(lam: Partition, i: int) -> int:
    return -1 if i % 2 else 1


def _sign_box(lam: Partition, i: int) -> int:
    # sign of the last box of column i when boxes alternate column by column
    return -1 if sum(lam.parts[:i]) % 2 else 1


def _sign_column(lam: Partition, i: int) -> int:
    height = sum(1 for p in lam.parts if p >= lam.parts[i - 1])
    return -1 if height % 2 else 1


SIGN_RULES: dict[str, Callable[[Partition, int], int]] = {
    "a": _sign_index,
    "b": _sign_box,
    "c": _sign_column,
}
SIGN_RULE_NAMES = {"a": "(-1)^i", "b": "parity of boxes in columns 1..i", "c": "parity of column height at lambda_i"}
DEFAULT_SIGN_RULE = "b"


# -- traces --------------------------------------------------------------------


@dataclass(frozen=True)
class MuEntry:
    i: int
    lambda_i: int
    mu_i: int
    lambda1_i: int
    lambda2_i: int
    cond_i: bool = False
    cond_ii: bool = False
    cond_iii: bool = False


@dataclass(frozen=True)
class MuTrace:
    entries: tuple[MuEntry, ...]
    method: str
    sign_rule: str | None = None
    blocks: tuple[str, ...] = field(default=(), compare=False)

    @property
    def lam(self) -> tuple[int, ...]:
        return tuple(e.lambda_i for e in self.entries)

    @property
    def mu(self) -> tuple[int, ...]:
        return tuple(e.mu_i for e in self.entries)


@dataclass(frozen=True)
class Fingerprint:
    alpha: Partition
    beta: Partition

    def to_json(self) -> dict:
        return {"alpha": self.alpha.to_json(), "beta": self.beta.to_json()}

    def __str__(self) -> str:
        return f"[{self.alpha};{self.beta}]"


def _bare_entries(pair: RigidPair, mu: list[int]) -> tuple[MuEntry, ...]:
    lam = add_partitions(pair.first, pair.second)
    return tuple(
        MuEntry(i, lam.parts[i - 1], mu[i - 1], part_at(pair.first, i), part_at(pair.second, i))
        for i in range(1, len(lam) + 1)
    )


def mu_formula(lam: Partition, sign_rule: str = DEFAULT_SIGN_RULE) -> list[int]:
    """mu_i = lambda_i + p(i) when lambda_i is odd and differs from lambda_{i - p(i)}."""
    sign = SIGN_RULES[sign_rule]
    out = []
    for i, li in enumerate(lam.parts, 1):
        if li % 2:
            p = sign(lam, i)
            j = i - p
            # lambda_0 counts as unequal to everything
            if j < 1 or part_at(lam, j) != li:
                out.append(li + p)
                continue
        out.append(li)
    return out


def mu_blocks(pair: RigidPair) -> MuTrace:
    """mu computed on the merged rows of lambda' and lambda''.

    Rows are stacked by height h (row h has length r_h = #{k : lambda_k >= h}).
    Each row's fate depends on the parity of h and the sign of its last box,
    boxes being signed alternately column by column:

        odd h,  sign -  : the last box of row h is deleted
        even h, sign -  : a box is appended to row h
        sign +          : unchanged

    A deletion needs the row to stick out past row h+1, an append needs row
    h-1 to stick out past row h. Rows are paired (1,2), (3,4), ... into units;
    a unit whose two rows come from one component is labelled II, a unit
    mixing the components III, and the leading unit holding the first rows of
    both components in B/D is labelled I.
    """
    rows1 = list(transpose(pair.first).parts)
    rows2 = list(transpose(pair.second).parts)
    merged: list[tuple[int, int]] = []
    a = b = 0
    while a < len(rows1) or b < len(rows2):
        if b >= len(rows2) or (a < len(rows1) and rows1[a] >= rows2[b]):
            merged.append((rows1[a], 1))
            a += 1
        else:
            merged.append((rows2[b], 2))
            b += 1
    r = [length for length, _ in merged]
    lam = add_partitions(pair.first, pair.second)
    if tuple(r) != transpose(lam).parts:
        raise ValueError("undecomposable: merged rows do not rebuild lambda' + lambda''")

    def length(h: int) -> int:
        return r[h - 1] if 1 <= h <= len(r) else 0

    def last_box_negative(h: int) -> bool:
        rh = length(h)
        return rh > 0 and sum(min(x, rh) for x in r) % 2 == 1

    delta = [0] * (len(lam) + 1)
    for h in range(1, len(r) + 1):
        if not last_box_negative(h):
            continue
        if h % 2 and length(h) > length(h + 1):
            delta[length(h) - 1] -= 1
        elif h % 2 == 0 and length(h - 1) > length(h):
            delta[length(h)] += 1
    mu = [p + d for p, d in zip(lam.parts, delta)]

    labels = []
    for h in range(1, len(merged) + 1, 2):
        unit = merged[h - 1 : h + 1]
        sources = {src for _, src in unit}
        if len(sources) == 1:
            labels.append("II")
        elif h == 1 and pair.theory.family != "C" and rows1 and rows2:
            labels.append("I")
        else:
            labels.append("III")
    return MuTrace(_bare_entries(pair, mu), method="blocks", blocks=tuple(labels))


def mu_trace(pair: RigidPair, method: str = "formula", sign_rule: str = DEFAULT_SIGN_RULE) -> MuTrace:
    if method == "blocks":
        return mu_blocks(pair)
    if method != "formula":
        raise ValueError(f"unknown method {method!r}")
    lam = add_partitions(pair.first, pair.second)
    return MuTrace(_bare_entries(pair, mu_formula(lam, sign_rule)), method="formula", sign_rule=sign_rule)


def condition_flags(pair: RigidPair, trace: MuTrace, use_condition_ii: bool = True) -> MuTrace:
    want_odd = pair.theory.family in ("B", "D")
    out = []
    sum_mu = sum_lam = 0
    for e in trace.entries:
        sum_mu += e.mu_i
        sum_lam += e.lambda_i
        out.append(
            replace(
                e,
                cond_i=e.mu_i != e.lambda_i,
                cond_ii=use_condition_ii and sum_mu != sum_lam,
                cond_iii=(e.lambda1_i % 2 == 1) if want_odd else (e.lambda1_i % 2 == 0),
            )
        )
    return replace(trace, entries=tuple(out))


def tau(trace: MuTrace, m: int) -> int:
    if m < 2 or m % 2:
        raise ValueError("tau is defined on even positive integers")
    hit = any(e.mu_i == m and (e.cond_i or e.cond_ii or e.cond_iii) for e in trace.entries)
    return -1 if hit else 1


def assemble(trace: MuTrace, indices: Iterable[int] | None = None) -> Fingerprint:
    """Pair up parts of mu into alpha; even parts with tau = -1 feed beta.

    ``indices`` restricts assembly to some rows of the trace (tau is still
    evaluated on the whole trace).
    """
    chosen = set(indices) if indices is not None else None
    values = Counter(e.mu_i for e in trace.entries if e.mu_i > 0 and (chosen is None or e.i in chosen))
    alpha: list[int] = []
    beta: list[int] = []
    for value in sorted(values, reverse=True):
        count = values[value]
        if value % 2 == 0 and tau(trace, value) == -1:
            beta.extend([value // 2] * count)
            continue
        if count % 2:
            raise AssemblyError(f"unpairable part {value} (multiplicity {count})")
        alpha.extend([value] * (count // 2))
    fp = Fingerprint(Partition(tuple(alpha)), Partition(tuple(sorted(beta, reverse=True))))
    assert 2 * fp.alpha.total + 2 * fp.beta.total == sum(v * c for v, c in values.items())
    return fp


def pair_fingerprint(
    pair: RigidPair,
    method: str = "formula",
    sign_rule: str = DEFAULT_SIGN_RULE,
    use_condition_ii: bool = True,
) -> Fingerprint:
    trace = condition_flags(pair, mu_trace(pair, method, sign_rule), use_condition_ii)
    return assemble(trace)


def full_trace(pair: RigidPair, method: str = "formula", sign_rule: str = DEFAULT_SIGN_RULE) -> MuTrace:
    return condition_flags(pair, mu_trace(pair, method, sign_rule))


# -- export --------------------------------------------------------------------

CSV_COLUMNS = ["i", "lambda_i", "mu_i", "lambda1_i", "lambda2_i", "(i)", "(ii)", "(iii)", "tau"]


def trace_rows(trace: MuTrace) -> list[list[str]]:
    rows = []
    for e in trace.entries:
        t = str(tau(trace, e.mu_i)) if e.mu_i > 0 and e.mu_i % 2 == 0 else ""
        rows.append(
            [
                str(e.i),
                str(e.lambda_i),
                str(e.mu_i),
                str(e.lambda1_i),
                str(e.lambda2_i),
                "y" if e.cond_i else "",
                "y" if e.cond_ii else "",
                "y" if e.cond_iii else "",
                t,
            ]
        )
    return rows


def trace_csv(trace: MuTrace) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(trace_rows(trace))
    return buf.getvalue()


def trace_digest(trace: MuTrace) -> str:
    return hashlib.sha256(trace_csv(trace).encode()).hexdigest()


def trace_table(trace: MuTrace) -> str:
    """Transposed table: one line per quantity, one column per index."""
    rows = trace_rows(trace)
    labels = ["i", "lambda_i", "mu_i", "(i)", "(ii)", "(iii)", "tau"]
    picks = [0, 1, 2, 5, 6, 7, 8]
    width = max([len(x) for row in rows for x in row] + [2])
    lines = []
    for label, k in zip(labels, picks):
        cells = " ".join(f"{row[k]:>{width}}" for row in rows)
        lines.append(f"{label:>8} | {cells}")
    return "\n".join(lines)


def condition_ii_subsumed(trace: MuTrace) -> bool:
    """Every even value of mu flagged by (ii) is also flagged by (i) somewhere.

    This is the sense in which (i) covers (ii) on partitions without gaps:
    tau is the same whether or not (ii) is consulted.
    """
    by_i = {e.mu_i for e in trace.entries if e.cond_i}
    return all(e.mu_i in by_i for e in trace.entries if e.cond_ii and e.mu_i > 0 and e.mu_i % 2 == 0)


def partition_trace(lam: Partition, sign_rule: str = DEFAULT_SIGN_RULE) -> MuTrace:
    """Trace of (i) and (ii) for a bare partition; (iii) needs a pair and stays unset."""
    mu = mu_formula(lam, sign_rule)
    entries = []
    sum_mu = sum_lam = 0
    for i, (li, mi) in enumerate(zip(lam.parts, mu), 1):
        sum_mu += mi
        sum_lam += li
        entries.append(MuEntry(i, li, mi, li, 0, mi != li, sum_mu != sum_lam))
    return MuTrace(tuple(entries), method="formula", sign_rule=sign_rule)
