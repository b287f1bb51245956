"""Symbol invariant of partitions and of rigid pairs.

Two independent constructions are provided: the beta-set recipe
(``symbol_b``/``symbol_c``/``symbol_d``) and a per-row recipe that sums one
contribution per row of the Young diagram (``symbol_via_rows``).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .partitions import Partition, transpose
from .rigid import FAMILY_SHIFT, RigidPair, component_family

TOP, BOTTOM = "top", "bottom"


@dataclass(frozen=True)
class Symbol:
    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def to_json(self) -> dict:
        return {"top": list(self.top), "bottom": list(self.bottom)}

    def canonical(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Rows with leading zeros stripped; equal symbols share this key."""
        return _strip(self.top), _strip(self.bottom)

    def render(self) -> str:
        """Two-line interleaved layout, bottom entries offset between top entries."""
        top = "  ".join(f"{a:>2}" for a in self.top)
        bottom = "  ".join(f"{b:>2}" for b in self.bottom)
        return f"( {top} )\n(   {bottom} )"


EMPTY_SYMBOL = Symbol((), ())


def _strip(row: Sequence[int]) -> tuple[int, ...]:
    k = 0
    while k < len(row) and row[k] == 0:
        k += 1
    return tuple(row[k:])


def _check_rows(sym: Symbol) -> Symbol:
    for row in (sym.top, sym.bottom):
        assert all(row[k] <= row[k + 1] for k in range(len(row) - 1)), f"symbol row not increasing: {row}"
    return sym


def _beta_symbol(parts: Sequence[int]) -> Symbol:
    l = len(parts)
    seq = [l - k + parts[k - 1] for k in range(1, l + 1)]
    assert all(seq[k] > seq[k + 1] for k in range(l - 1)), "shifted parts must be distinct"
    odd = sorted((s - 1) // 2 for s in seq if s % 2)
    even = sorted(s // 2 for s in seq if s % 2 == 0)
    top = tuple(f - i for i, f in enumerate(odd))
    bottom = tuple(g - i for i, g in enumerate(even))
    return _check_rows(Symbol(top, bottom))


def symbol_b(lam: Partition) -> Symbol:
    if not lam:
        raise ValueError("symbol_b needs a non-empty partition")
    return _beta_symbol(lam.parts)


def symbol_c(lam: Partition) -> Symbol:
    if not lam:
        raise ValueError("symbol_c needs a non-empty partition")
    if len(lam) % 2 == 0:
        s = _beta_symbol(lam.parts)
        return _check_rows(Symbol((0,) + s.top, s.bottom))
    s = _beta_symbol(lam.parts + (0,))
    assert s.bottom and s.bottom[0] == 0, f"expected leading 0 in bottom row, got {s.bottom}"
    return _check_rows(Symbol(s.top, s.bottom[1:]))


def symbol_d(lam: Partition) -> Symbol:
    if not lam:
        raise ValueError("symbol_d needs a non-empty partition")
    s = _beta_symbol(lam.parts + (0,))
    assert len(s.bottom) >= 2 and s.bottom[:2] == (0, 0), f"expected two leading 0s, got {s.bottom}"
    return _check_rows(Symbol(s.top, s.bottom[2:]))


_BY_FAMILY = {"B": symbol_b, "C": symbol_c, "D": symbol_d}


def symbol_of(lam: Partition, family: str) -> Symbol:
    if not lam:
        return EMPTY_SYMBOL
    return _BY_FAMILY[family](lam)


# -- per-row construction ----------------------------------------------------


def row_token(length: int, index: int, shift: int) -> tuple[str, int]:
    """Side and run length contributed by row ``index`` (1-based) of given length."""
    if (length + index + shift + 1) % 2:
        run = (length + 1) // 2 if length % 2 else length // 2
        return TOP, run
    run = (length - 1) // 2 if length % 2 else length // 2
    return BOTTOM, run


def row_length(token: tuple[str, int], index: int, shift: int) -> int:
    """Inverse of ``row_token`` at a given row index."""
    side, run = token
    odd_slot = (index + shift + 1) % 2 == 1
    if side == TOP:
        return 2 * run if odd_slot else 2 * run - 1
    return 2 * run + 1 if odd_slot else 2 * run


def row_tokens(lam: Partition, family: str) -> list[tuple[str, int]]:
    shift = FAMILY_SHIFT[family]
    return [row_token(r, i, shift) for i, r in enumerate(transpose(lam).parts, 1)]


def symbol_from_tokens(tokens: Iterable[tuple[str, int]], width: tuple[int, int] | None = None) -> Symbol:
    """Right-aligned sum of run contributions; ``width`` pads to fixed row lengths."""
    tokens = list(tokens)
    tops = [run for side, run in tokens if side == TOP and run > 0]
    bottoms = [run for side, run in tokens if side == BOTTOM and run > 0]
    top = _runs_to_row(tops, width[0] if width else None)
    bottom = _runs_to_row(bottoms, width[1] if width else None)
    return Symbol(top, bottom)


def _runs_to_row(runs: list[int], width: int | None) -> tuple[int, ...]:
    n = max(runs, default=0)
    if width is not None:
        n = max(n, width)
    # entry counted from the right: how many runs reach position p
    return tuple(sum(1 for r in runs if r >= p) for p in range(n, 0, -1))


def symbol_via_rows(lam: Partition, family: str) -> Symbol:
    if not lam:
        return EMPTY_SYMBOL
    return symbol_from_tokens(row_tokens(lam, family))


# -- pairs -------------------------------------------------------------------


def add_symbols(s: Symbol, u: Symbol) -> Symbol:
    """Entry-wise sum after right-aligning each row."""
    return Symbol(_add_right(s.top, u.top), _add_right(s.bottom, u.bottom))


def _add_right(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    n = max(len(a), len(b))
    a = (0,) * (n - len(a)) + tuple(a)
    b = (0,) * (n - len(b)) + tuple(b)
    return tuple(x + y for x, y in zip(a, b))


def symbols_equal(s: Symbol, u: Symbol) -> bool:
    return s.canonical() == u.canonical()


def pair_symbol(pair: RigidPair) -> Symbol:
    fam = pair.theory.family
    s1 = symbol_of(pair.first, component_family(fam, pair.first))
    s2 = symbol_of(pair.second, component_family(fam, pair.second))
    return add_symbols(s1, s2)


def pair_tokens(pair: RigidPair) -> Counter:
    """Multiset of non-trivial row contributions of both components."""
    fam = pair.theory.family
    out: Counter = Counter()
    for comp in (pair.first, pair.second):
        out.update(t for t in row_tokens(comp, component_family(fam, comp)) if t[1] > 0)
    return out


def symbol_key(sym: Symbol) -> str:
    top, bottom = sym.canonical()
    return ",".join(map(str, top)) + "/" + ",".join(map(str, bottom))


def parse_symbol(obj: dict) -> Symbol:
    return Symbol(tuple(int(v) for v in obj["top"]), tuple(int(v) for v in obj["bottom"]))

