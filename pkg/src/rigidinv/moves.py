"""Symbol-preserving transformations of rigid pairs.

Every row of a component contributes one token (side, run length) to the
symbol, so the pair symbol is fixed by the multiset of tokens of both
components. A move hands tokens from one component to the other; each
component then re-reads its tokens in canonical order (run length
descending, bottom before top) and turns them back into rows. The move
applies when both resulting components are rigid and the totals fit the
theory.

Coordinates: a site lists 1-based row indices (rows of the transpose) taken
from lambda' and from lambda''. Index ``len + 1`` names the virtual zero row
under the last row of a component. Position 1/2 says whether a row is the
first or second row of its pairwise unit: in B/D the longest row stands
alone and rows (2,3), (4,5), ... pair up; in C rows (1,2), (3,4), ... pair up.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from .fingerprint import pair_fingerprint
from .partitions import Partition, from_rows, transpose
from .rigid import FAMILY_SHIFT, RigidPair, pair_problem
from .symbol import BOTTOM, pair_symbol, row_length, row_token, symbols_equal

Token = tuple[str, int]

NAMED = ("See1", "See2", "Seo2", "Se2", "Ie2")


class PatternMismatch(ValueError):
    """The move does not apply at the requested site."""

    def __init__(self, detail: str):
        super().__init__(f"pattern mismatch: {detail}")


@dataclass(frozen=True)
class MoveDescriptor:
    kind: str  # S, D, TE, TO, I or a named example
    parity: str = ""
    positions: tuple[int, ...] = ()
    source: int = 0
    target: int = 0

    @property
    def name(self) -> str:
        if self.kind == "S":
            return "S" + self.parity + "".join(map(str, self.positions))
        if self.kind == "D":
            return f"D{self.parity}{self.source}{self.target}"
        return self.kind


@dataclass(frozen=True)
class Site:
    from_first: tuple[int, ...] = ()
    from_second: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"from_first": list(self.from_first), "from_second": list(self.from_second)}


@dataclass(frozen=True)
class MoveOutcome:
    descriptor: MoveDescriptor
    site: Site
    before: RigidPair
    result: RigidPair
    symbol_preserved: bool
    fingerprint_preserved: bool
    blocks_agree: bool = True
    landed: tuple[tuple[int, ...], tuple[int, ...]] = field(default=((), ()), compare=False)

    def to_json(self) -> dict:
        return {
            "descriptor": self.descriptor.name,
            "site": self.site.to_json(),
            "before": self.before.to_json(),
            "after": self.result.to_json(),
            "symbol_before": pair_symbol(self.before).to_json(),
            "symbol_after": pair_symbol(self.result).to_json(),
            "fingerprint_before": pair_fingerprint(self.before).to_json(),
            "fingerprint_after": pair_fingerprint(self.result).to_json(),
            "symbol_preserved": self.symbol_preserved,
            "fingerprint_preserved": self.fingerprint_preserved,
        }


# -- token bookkeeping ---------------------------------------------------------


def _shift(pair: RigidPair) -> int:
    # B and D components differ by 2 in shift, so only the parity matters
    return FAMILY_SHIFT[pair.theory.family]


def position(index: int, shift: int) -> int:
    return 1 if (index + shift) % 2 else 2


def tokens_of(lam: Partition, shift: int) -> list[Token]:
    """Tokens of the rows of ``lam`` followed by the virtual zero row's token."""
    rows = transpose(lam).parts
    return [row_token(r, i, shift) for i, r in enumerate(rows, 1)] + [row_token(0, len(rows) + 1, shift)]


def _order(tok: Token) -> tuple[int, int]:
    return (-tok[1], 0 if tok[0] == BOTTOM else 1)


def decode(tokens: list[Token], shift: int) -> Partition | None:
    """Rows from a token multiset, or None if they do not form a diagram."""
    lengths = [row_length(t, i, shift) for i, t in enumerate(sorted(tokens, key=_order), 1)]
    while lengths and lengths[-1] == 0:
        lengths.pop()
    if any(x < 1 for x in lengths) or any(a < b for a, b in zip(lengths, lengths[1:])):
        return None
    return from_rows(lengths)


def _landing(tokens: list[Token], moved: list[Token]) -> tuple[int, ...]:
    """Row indices where the moved tokens sit after canonical sorting."""
    ordered = sorted(tokens, key=_order)
    taken: set[int] = set()
    out = []
    for tok in moved:
        k = next(i for i, t in enumerate(ordered, 1) if t == tok and i not in taken)
        taken.add(k)
        out.append(k)
    return tuple(out)


def transfer(pair: RigidPair, site: Site, strict: bool = True) -> tuple[RigidPair, tuple[tuple[int, ...], tuple[int, ...]]]:
    """Move the tokens of the listed rows across and rebuild both components.

    Returns the new pair and the landing row indices of the moved tokens
    (in lambda'' for tokens from lambda', and in lambda' for the others).
    With ``strict=False`` the result only has to be a pair of Young diagrams.
    """
    t = _shift(pair)
    k1 = tokens_of(pair.first, t)
    k2 = tokens_of(pair.second, t)
    for idx, toks in ((site.from_first, k1), (site.from_second, k2)):
        if len(set(idx)) != len(idx) or any(not 1 <= i <= len(toks) for i in idx):
            raise PatternMismatch(f"row indices {idx} out of range")
    out1 = [k1[i - 1] for i in site.from_first]
    out2 = [k2[i - 1] for i in site.from_second]
    # the virtual zero row only travels when it is explicitly listed
    keep1 = [tok for i, tok in enumerate(k1[:-1], 1) if i not in site.from_first]
    keep2 = [tok for i, tok in enumerate(k2[:-1], 1) if i not in site.from_second]
    new1 = keep1 + out2
    new2 = keep2 + out1
    a, b = decode(new1, t), decode(new2, t)
    if a is None or b is None:
        raise PatternMismatch("tokens do not rebuild a Young diagram")
    result = RigidPair(a, b, pair.theory)
    problem = pair_problem(result) if strict else None
    if problem:
        raise PatternMismatch(problem)
    return result, (_landing(new2, out1), _landing(new1, out2))


def _outcome(pair: RigidPair, desc: MoveDescriptor, site: Site, result: RigidPair, landed) -> MoveOutcome:
    fp = pair_fingerprint(pair)
    fp_after = pair_fingerprint(result)
    blocks = pair_fingerprint(pair, "blocks") == fp and pair_fingerprint(result, "blocks") == fp_after
    return MoveOutcome(
        desc,
        site,
        pair,
        result,
        symbols_equal(pair_symbol(pair), pair_symbol(result)),
        fp == fp_after,
        blocks,
        landed,
    )


def _row_count(lam: Partition) -> int:
    return len(transpose(lam).parts)


def _parity(length: int) -> str:
    return "o" if length % 2 else "e"


def _rows(lam: Partition) -> list[int]:
    return list(transpose(lam).parts) + [0]


# -- S type --------------------------------------------------------------------


def s_descriptor(pair: RigidPair, site: Site, landed) -> MoveDescriptor:
    t = _shift(pair)
    (i,), (j,) = site.from_first, site.from_second
    (k,), (m,) = landed
    return MoveDescriptor(
        "S",
        _parity(_rows(pair.first)[i - 1]),
        (position(i, t), position(k, t), position(j, t), position(m, t)),
    )


def enumerate_s_moves(pair: RigidPair) -> list[MoveOutcome]:
    """One row each way, over every pair of rows including the virtual zero rows."""
    out = []
    n1, n2 = _row_count(pair.first) + 1, _row_count(pair.second) + 1
    for i in range(1, n1 + 1):
        for j in range(1, n2 + 1):
            site = Site((i,), (j,))
            try:
                result, landed = transfer(pair, site)
            except PatternMismatch:
                continue
            if result == pair:
                continue
            out.append(_outcome(pair, s_descriptor(pair, site, landed), site, result, landed))
    return out


# -- D type --------------------------------------------------------------------


def block_config(k: int, m: int, shift: int) -> int:
    """Configuration number of two rows k < m of one component.

    1: first and second row of the same unit; 2: a second row above a first
    row; 3: both first rows; 4: both second rows; 5: a first row above the
    second row of a lower unit.
    """
    pk, pm = position(k, shift), position(m, shift)
    if (pk, pm) == (1, 2):
        return 1 if m == k + 1 else 5
    return {(2, 1): 2, (1, 1): 3, (2, 2): 4}[(pk, pm)]


def enumerate_d_moves(pair: RigidPair) -> list[MoveOutcome]:
    """Two rows from one component to the other, in both directions."""
    t = _shift(pair)
    out = []
    for direction in (1, 2):
        src = pair.first if direction == 1 else pair.second
        n = _row_count(src) + 1
        lengths = _rows(src)
        for i, j in combinations(range(1, n + 1), 2):
            site = Site((i, j), ()) if direction == 1 else Site((), (i, j))
            try:
                result, landed = transfer(pair, site)
            except PatternMismatch:
                continue
            if result == pair:
                continue
            k, m = sorted(landed[0] if direction == 1 else landed[1])
            desc = MoveDescriptor("D", _parity(lengths[i - 1]), source=block_config(i, j, t), target=block_config(k, m, t))
            out.append(_outcome(pair, desc, site, result, landed))
    return out


def all_s_descriptors() -> list[MoveDescriptor]:
    return [MoveDescriptor("S", par, (a, b, c, d)) for par in "oe" for a in (1, 2) for b in (1, 2) for c in (1, 2) for d in (1, 2)]


def all_d_descriptors() -> list[MoveDescriptor]:
    return [MoveDescriptor("D", par, source=s, target=g) for par in "oe" for s in range(1, 6) for g in range(1, 6)]


# -- named examples ------------------------------------------------------------

# (parity of the lambda' rows, parity of the lambda'' rows, position in lambda', position in lambda'')
_NAMED_PATTERN = {
    "See1": ("e", "e", 2, 2),
    "See2": ("e", "e", 1, 1),
    "Se2": ("o", "o", 1, 1),
    "Seo2": ("e", "o", 1, 2),
}


def apply_named_example(pair: RigidPair, which: str, site: Site) -> MoveOutcome:
    """Index-preserving swaps between the components.

    See1/See2/Se2 swap one row of lambda' with one row of lambda'' of the
    same parity, both second rows (See1) or both first rows (See2, Se2).
    Seo2 trades a first row of even length in lambda' for a second row of
    odd length in lambda'': the first grows by a box, the second loses one.
    Ie2 swaps a whole even unit of lambda' with one of lambda''. In all
    cases each moved row must land at the index it left.
    """
    t = _shift(pair)
    r1, r2 = _rows(pair.first), _rows(pair.second)
    if which == "Ie2":
        if len(site.from_first) != 2 or len(site.from_second) != 2:
            raise PatternMismatch("Ie2 needs two rows on each side")
        for idx, rows in ((site.from_first, r1), (site.from_second, r2)):
            a, b = idx
            if not (1 <= a < len(rows) and b == a + 1 and position(a, t) == 1):
                raise PatternMismatch("Ie2 rows must form one pairwise unit")
            if rows[a - 1] % 2 or rows[b - 1] % 2 or rows[b - 1] == 0:
                raise PatternMismatch("Ie2 units must be even")
    elif which in _NAMED_PATTERN:
        p1, p2, q1, q2 = _NAMED_PATTERN[which]
        if len(site.from_first) != 1 or len(site.from_second) != 1:
            raise PatternMismatch(f"{which} needs one row on each side")
        (i,), (j,) = site.from_first, site.from_second
        if not (i < len(r1) and j < len(r2)):
            raise PatternMismatch("rows must exist")
        if _parity(r1[i - 1]) != p1 or _parity(r2[j - 1]) != p2:
            raise PatternMismatch(f"{which} parities do not match")
        if position(i, t) != q1 or position(j, t) != q2:
            raise PatternMismatch(f"{which} positions do not match")
    else:
        raise ValueError(f"unknown named example {which!r}")
    result, landed = transfer(pair, site)
    k1, k2 = tokens_of(pair.first, t), tokens_of(pair.second, t)
    n1, n2 = tokens_of(result.first, t), tokens_of(result.second, t)
    # equal tokens are interchangeable, so compare tokens rather than landing indices
    same_first = [n1[i - 1] for i in site.from_first] == [k2[j - 1] for j in site.from_second]
    same_second = [n2[j - 1] for j in site.from_second] == [k1[i - 1] for i in site.from_first]
    if not (same_first and same_second):
        raise PatternMismatch("rows do not land at the indices they left")
    return _outcome(pair, MoveDescriptor(which), site, result, landed)


def named_sites(pair: RigidPair, which: str) -> Iterator[Site]:
    n1, n2 = _row_count(pair.first), _row_count(pair.second)
    if which == "Ie2":
        for a in range(1, n1):
            for c in range(1, n2):
                yield Site((a, a + 1), (c, c + 1))
    else:
        for i in range(1, n1 + 1):
            for j in range(1, n2 + 1):
                yield Site((i,), (j,))


def enumerate_named(pair: RigidPair, which: str) -> list[MoveOutcome]:
    out = []
    for site in named_sites(pair, which):
        try:
            out.append(apply_named_example(pair, which, site))
        except PatternMismatch:
            continue
    return out


# -- TE / TO -------------------------------------------------------------------


def apply_te_to(pair: RigidPair, which: str, site: Site) -> MoveOutcome:
    """Insert one row of lambda' into lambda'' with no row going back.

    TE applies when the row lands as an even first row, TO when it lands as
    an odd second row.
    """
    if which not in ("TE", "TO"):
        raise ValueError(f"unknown move {which!r}")
    if len(site.from_first) != 1 or site.from_second:
        raise PatternMismatch(f"{which} moves exactly one row of lambda'")
    result, landed = transfer(pair, site)
    (k,), _ = landed
    length = _rows(result.second)[k - 1]
    want = ("e", 1) if which == "TE" else ("o", 2)
    if (_parity(length), position(k, _shift(pair))) != want or result == pair:
        raise PatternMismatch(f"{which} landing pattern")
    return _outcome(pair, MoveDescriptor(which), site, result, landed)


def enumerate_te_to(pair: RigidPair) -> list[MoveOutcome]:
    out = []
    for which in ("TE", "TO"):
        for i in range(1, _row_count(pair.first) + 2):
            try:
                out.append(apply_te_to(pair, which, Site((i,), ())))
            except PatternMismatch:
                continue
    return out


# -- splitting and interchange -------------------------------------------------


def _token_at(lam: Partition, i: int, shift: int) -> Token:
    return tokens_of(lam, shift)[i - 1]


def _index_of(lam: Partition, tok: Token, shift: int, skip: tuple[int, ...] = ()) -> int:
    for i, t in enumerate(tokens_of(lam, shift), 1):
        if t == tok and i not in skip:
            return i
    raise PatternMismatch(f"token {tok} not present")


def _move_tokens(pair: RigidPair, out1: list[Token], out2: list[Token], strict: bool = True) -> tuple[RigidPair, Site]:
    t = _shift(pair)
    idx1: tuple[int, ...] = ()
    idx2: tuple[int, ...] = ()
    for tok in out1:
        idx1 += (_index_of(pair.first, tok, t, idx1),)
    for tok in out2:
        idx2 += (_index_of(pair.second, tok, t, idx2),)
    site = Site(idx1, idx2)
    return transfer(pair, site, strict)[0], site


def split_paths(pair: RigidPair, a: int, b: int, c: int, d: int) -> dict[str, RigidPair | None]:
    """Results of the direct 2+2 exchange and of its two-step splittings.

    ``a, b`` are rows of lambda', ``c, d`` rows of lambda''. The halfway
    pair of a splitting only has to be a pair of Young diagrams (rigidity
    and orthogonality are not asked of it); a path that leaves the diagrams
    maps to None. End results are held to full validity.
    """
    t = _shift(pair)
    ta, tb = _token_at(pair.first, a, t), _token_at(pair.first, b, t)
    tc, td = _token_at(pair.second, c, t), _token_at(pair.second, d, t)
    out: dict[str, RigidPair | None] = {}
    try:
        out["direct"] = transfer(pair, Site((a, b), (c, d)))[0]
    except PatternMismatch:
        out["direct"] = None
    steps = {
        "ac_then_bd": [([ta], [tc]), ([tb], [td])],
        "bd_then_ac": [([tb], [td]), ([ta], [tc])],
        # crossed pairing, used when regions between the rows are empty
        "ad_then_bc": [([ta], [td]), ([tb], [tc])],
        "bc_then_ad": [([tb], [tc]), ([ta], [td])],
        # two D moves: a and b across, then c and d back
        "d_split": [([ta, tb], []), ([], [tc, td])],
        "d_split_reverse": [([], [tc, td]), ([ta, tb], [])],
    }
    for name, seq in steps.items():
        cur: RigidPair | None = pair
        for k, (o1, o2) in enumerate(seq):
            try:
                cur, _ = _move_tokens(cur, o1, o2, strict=k == len(seq) - 1)
            except PatternMismatch:
                cur = None
                break
        out[name] = cur
    return out


def verify_splitting(pair: RigidPair, a: int, b: int, c: int, d: int) -> bool:
    """True iff every realizable splitting reproduces the direct exchange and one exists."""
    rows1, rows2 = _rows(pair.first), _rows(pair.second)
    if not (rows1[b - 1] > rows2[d - 1] > rows1[a - 1] > rows2[c - 1]):
        raise ValueError("rows must satisfy L(b) > L(d) > L(a) > L(c)")
    paths = split_paths(pair, a, b, c, d)
    direct = paths.pop("direct")
    if direct is None:
        return False
    found = [r for r in paths.values() if r is not None]
    return bool(found) and all(r == direct for r in found)


def splitting_sites(pair: RigidPair, virtual: bool = False) -> Iterator[tuple[int, int, int, int]]:
    """Row quadruples with L(b) > L(d) > L(a) > L(c).

    With ``virtual`` the zero row under lambda'' may serve as c.
    """
    rows1, rows2 = _rows(pair.first), _rows(pair.second)
    n1, n2 = len(rows1) - 1, len(rows2) - (0 if virtual else 1)
    for a in range(1, n1 + 1):
        for b in range(1, n1 + 1):
            for c in range(1, n2 + 1):
                for d in range(1, n2 + 1):
                    if rows1[b - 1] > rows2[d - 1] > rows1[a - 1] > rows2[c - 1]:
                        yield a, b, c, d


def _describe_step(pair: RigidPair, site: Site) -> MoveDescriptor:
    result, landed = transfer(pair, site)
    t = _shift(pair)
    if len(site.from_first) == 1 and len(site.from_second) == 1:
        return s_descriptor(pair, site, landed)
    if len(site.from_first) == 2 and not site.from_second:
        i, j = site.from_first
        k, m = sorted(landed[0])
        return MoveDescriptor("D", _parity(_rows(pair.first)[i - 1]), source=block_config(i, j, t), target=block_config(k, m, t))
    i, j = site.from_second
    k, m = sorted(landed[1])
    return MoveDescriptor("D", _parity(_rows(pair.second)[i - 1]), source=block_config(i, j, t), target=block_config(k, m, t))


@dataclass(frozen=True)
class Step:
    descriptor: MoveDescriptor
    site: Site


def interchange(pair: RigidPair, span1: tuple[int, int], span2: tuple[int, int]) -> RigidPair:
    """Direct exchange of rows span1 of lambda' with rows span2 of lambda''."""
    site = Site(tuple(range(span1[0], span1[1] + 1)), tuple(range(span2[0], span2[1] + 1)))
    return transfer(pair, site)[0]


def decompose_interchange(pair: RigidPair, span1: tuple[int, int], span2: tuple[int, int], max_steps: int = 8) -> list[Step]:
    """Shortest sequence of S/D moves through valid pairs reaching the block interchange.

    Raises PatternMismatch when the interchange itself is not a valid pair or
    no such sequence exists.
    """
    t = _shift(pair)
    toks1 = [_token_at(pair.first, i, t) for i in range(span1[0], span1[1] + 1)]
    toks2 = [_token_at(pair.second, j, t) for j in range(span2[0], span2[1] + 1)]
    if Counter(toks1) == Counter(toks2):
        return []
    goal = interchange(pair, span1, span2)
    start = (pair, tuple(sorted(toks1)), tuple(sorted(toks2)))
    queue = deque([(start, [])])
    seen = {start}
    while queue:
        (cur, left1, left2), path = queue.popleft()
        if not left1 and not left2:
            if cur == goal:
                return path
            continue
        if len(path) >= max_steps:
            continue
        moves = [((x,), (y,)) for x in sorted(set(left1)) for y in sorted(set(left2))]
        moves += [(xy, ()) for xy in sorted(set(combinations(left1, 2)))]
        moves += [((), xy) for xy in sorted(set(combinations(left2, 2)))]
        for o1, o2 in moves:
            try:
                nxt, site = _move_tokens(cur, list(o1), list(o2))
            except PatternMismatch:
                continue
            r1, r2 = list(left1), list(left2)
            for tok in o1:
                r1.remove(tok)
            for tok in o2:
                r2.remove(tok)
            state = (nxt, tuple(r1), tuple(r2))
            if state in seen:
                continue
            seen.add(state)
            queue.append((state, path + [Step(_describe_step(cur, site), site)]))
    raise PatternMismatch("no S/D sequence reaches the interchange")


def compose(pair: RigidPair, steps: list[Step]) -> RigidPair:
    for step in steps:
        pair = transfer(pair, step.site)[0]
    return pair
