"""Command line front end.

Exit codes: 0 verified, 1 property violation, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Iterable

from . import lab
from .fingerprint import SIGN_RULES, full_trace, trace_csv, trace_table
from .partitions import PartitionError
from .rigid import FAMILIES, InvalidPair
from .symbol import pair_symbol

DEFAULTS = {
    "theory": "B",
    "max_rank": 4,
    "sign_rule": "b",
    "orientation": "columns",
    "enable_teto": False,
    "format": "jsonl",
}


class InputError(Exception):
    pass


def load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise InputError(f"unknown config keys: {sorted(unknown)}")
    return data


def settings(args: argparse.Namespace) -> dict:
    """Defaults, then the config file, then explicit flags."""
    out = dict(DEFAULTS)
    out.update(load_config(args.config))
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None and val is not False:
            out[key] = val
    if out["theory"] not in FAMILIES:
        raise InputError(f"unknown theory {out['theory']!r}")
    if out["sign_rule"] not in SIGN_RULES:
        raise InputError(f"unknown sign rule {out['sign_rule']!r}")
    if out["orientation"] not in ("rows", "columns"):
        raise InputError(f"unknown orientation {out['orientation']!r}")
    return out


def _flatten(obj: dict) -> dict:
    return {k: (lab.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in obj.items()}


def emit(records: Iterable[dict], fmt: str, out) -> None:
    if fmt == "jsonl":
        for rec in records:
            out.write(lab.dumps(rec) + "\n")
    elif fmt == "csv":
        rows = [_flatten(r) for r in records]
        if not rows:
            return
        writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        for rec in records:
            out.write(json.dumps(rec, sort_keys=True, indent=2) + "\n")


def _open_out(path: str | None):
    return open(path, "w", newline="") if path else sys.stdout


def _read_pairs(args: argparse.Namespace):
    if args.pair:
        texts = [args.pair]
    else:
        src = sys.stdin.read() if args.input in (None, "-") else Path(args.input).read_text()
        texts = [line for line in src.splitlines() if line.strip()]
    pairs = []
    for text in texts:
        try:
            pairs.append(lab.parse_pair(text))
        except (InvalidPair, PartitionError, ValueError, TypeError) as exc:
            raise InputError(f"invalid pair {text.strip()}: {exc}") from exc
    return pairs


# -- subcommands ---------------------------------------------------------------


def cmd_invariants(args, cfg, out) -> int:
    pairs = _read_pairs(args)
    for pair in pairs:
        rec = lab.catalog_record(pair, cfg["sign_rule"])
        trace = full_trace(pair, "formula", cfg["sign_rule"])
        if cfg["format"] == "pretty":
            out.write(f"{pair}\nsymbol:\n{pair_symbol(pair).render()}\n")
            out.write(trace_table(trace) + "\n")
            out.write(f"fingerprint: {rec.fingerprint}\n\n")
        elif cfg["format"] == "csv":
            out.write(trace_csv(trace))
        else:
            out.write(lab.dumps(rec.to_json()) + "\n")
    return 0


def cmd_enumerate(args, cfg, out) -> int:
    lo = args.rank if args.rank is not None else 1
    hi = args.rank if args.rank is not None else cfg["max_rank"]
    records = (r.to_json() for r in lab.catalog(cfg["theory"], hi, cfg["sign_rule"], lo))
    emit(records, cfg["format"], out)
    return 0


def cmd_moves(args, cfg, out) -> int:
    emit(lab.move_reports(cfg["theory"], cfg["max_rank"], cfg["enable_teto"]), cfg["format"], out)
    return 0


def cmd_verify_forward(args, cfg, out) -> int:
    reports, violations = lab.verify_forward(cfg["theory"], cfg["max_rank"], cfg["sign_rule"], args.method)
    emit((r.to_json() for r in reports), cfg["format"], out)
    for v in violations:
        sys.stderr.write(lab.dumps({"violation": v}) + "\n")
    sys.stderr.write(f"{cfg['theory']} rank<={cfg['max_rank']}: {len(reports)} symbol classes, {len(violations)} violations\n")
    return 1 if violations else 0


def cmd_verify_converse(args, cfg, out) -> int:
    reports = lab.verify_converse(cfg["theory"], cfg["max_rank"], cfg["sign_rule"])
    emit((r.to_json() for r in reports), cfg["format"], out)
    sys.stderr.write(lab.dumps(lab.converse_summary(reports)) + "\n")
    return 0


def cmd_duality_match(args, cfg, out) -> int:
    rank = args.rank if args.rank is not None else cfg["max_rank"]
    report = lab.duality_match(rank, args.include_d)
    if cfg["format"] == "csv":
        emit(
            [{"side": side, "symbol": m["symbol"], "pairs": len(m["pairs"])} for side in ("B", "C") for m in report[f"unmatched_{side}"]],
            "csv",
            out,
        )
    else:
        emit([report], cfg["format"], out)
    return 0


def cmd_selftest(args, cfg, out) -> int:
    checks = lab.selftest(cfg["max_rank"], cfg["sign_rule"], cfg["orientation"])
    failed = None
    for c in checks:
        out.write(f"{'PASS' if c.ok else 'FAIL'}  {c.name}\n")
        if not c.ok and failed is None:
            failed = c
    if failed:
        out.write(f"\nfirst failure: {failed.name}\n{failed.detail}\n")
        return 1
    return 0


COMMANDS = {
    "invariants": cmd_invariants,
    "enumerate": cmd_enumerate,
    "moves": cmd_moves,
    "verify-forward": cmd_verify_forward,
    "verify-converse": cmd_verify_converse,
    "duality-match": cmd_duality_match,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theory", choices=FAMILIES)
    common.add_argument("--max-rank", type=int, dest="max_rank")
    common.add_argument("--sign-rule", choices=sorted(SIGN_RULES), dest="sign_rule")
    common.add_argument("--orientation", choices=("rows", "columns"))
    common.add_argument("--enable-teto", action="store_true", dest="enable_teto")
    common.add_argument("--format", choices=("jsonl", "csv", "pretty"))
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--config", help="JSON file with defaults; flags override it")

    parser = argparse.ArgumentParser(prog="rigidinv", description="Symbol and fingerprint invariants of rigid pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="invariants of given pairs")
    p.add_argument("--pair", help="pair as JSON")
    p.add_argument("--input", help="JSONL file of pairs ('-' for stdin)")

    p = sub.add_parser("enumerate", parents=[common], help="catalog of all rigid pairs")
    p.add_argument("--rank", type=int, help="only this rank")

    sub.add_parser("moves", parents=[common], help="S/D (and TE/TO) move reports")

    p = sub.add_parser("verify-forward", parents=[common], help="symbol classes must be fingerprint-uniform")
    p.add_argument("--method", choices=("formula", "blocks"), default="formula")

    sub.add_parser("verify-converse", parents=[common], help="report on fingerprint classes")

    p = sub.add_parser("duality-match", parents=[common], help="join B_n and C_n on symbols")
    p.add_argument("--rank", type=int)
    p.add_argument("--include-d", action="store_true", dest="include_d", help="also count D_n symbol matches")

    sub.add_parser("selftest", parents=[common], help="oracle and property checks")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = settings(args)
        if cfg["max_rank"] < 1 and args.command in ("verify-forward", "duality-match"):
            raise InputError("max rank must be at least 1")
        with _open_out(args.out) if args.out else _nullctx(sys.stdout) as out:
            return COMMANDS[args.command](args, cfg, out)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


class _nullctx:
    def __init__(self, obj):
        self.obj = obj

    def __enter__(self):
        return self.obj

    def __exit__(self, *exc):
        return False


if __name__ == "__main__":
    sys.exit(main())
