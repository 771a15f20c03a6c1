"""Command-line surface: builders, verifiers, scans and searches.

Every command is deterministic for a given configuration.  Data goes to
stdout (or --out) in a machine-readable format; diagnostics go to stderr.
Exit codes: 0 success, 1 a mathematical claim failed, 2 usage or
precondition error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import bounds, partitions
from .core import COMPLEMENT, R1, R2, R3, SET, WeightPair, classic_rep
from .errors import (
    DomainError,
    EnumerationCapExceeded,
    InvalidSeed,
    NoWitness,
    PreconditionError,
    QueryBeyondPrefix,
)

SCHEMA_VERSION = 1

_USAGE_ERRORS = (
    PreconditionError,
    DomainError,
    EnumerationCapExceeded,
    InvalidSeed,
    QueryBeyondPrefix,
)


@dataclass
class RunConfig:
    """Validated bag of options for one command invocation."""

    command: str
    k: int | None = None
    n0: int | None = None
    k1: int | None = None
    k2: int | None = None
    seed: str | None = None
    limit: int | None = None
    lo: int | None = None
    hi: int | None = None
    n: int | None = None
    cap: int | None = None
    format: str = "json"
    out: str | None = None
    workers: int = 1

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        fields = {f: getattr(args, f) for f in cls.__dataclass_fields__ if hasattr(args, f)}
        return cls(**fields)


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(doc: dict, cfg: RunConfig) -> None:
    _emit(json.dumps(doc, indent=2) + "\n", cfg)


def _emit_csv(header: list[str], rows, cfg: RunConfig) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    _emit(buf.getvalue(), cfg)


def _parse_seed(cfg: RunConfig) -> partitions.SeedAssignment:
    return partitions.SeedAssignment.from_string(cfg.k, cfg.n0, cfg.seed)


def _cmd_seeds(cfg: RunConfig) -> int:
    found = partitions.enumerate_seeds(cfg.k, cfg.n0)
    strings = [s.bit_string() for s in found]
    if cfg.format == "json":
        _emit_json(
            {
                "schema": SCHEMA_VERSION,
                "command": "seeds",
                "k": cfg.k,
                "n0": cfg.n0,
                "count": len(strings),
                "seeds": strings,
            },
            cfg,
        )
    elif cfg.format == "csv":
        _emit_csv(["seed"], [[s] for s in strings], cfg)
    else:
        _emit("".join(s + "\n" for s in strings), cfg)
    print(f"{len(strings)} valid seed(s) for k={cfg.k}, n0={cfg.n0}", file=sys.stderr)
    return 0


def _cmd_build(cfg: RunConfig) -> int:
    seed = _parse_seed(cfg)
    chi = partitions.extend_seed(seed, cfg.limit)
    bit_string = "".join(map(str, chi.bits.tolist()))
    if cfg.format == "json":
        _emit_json(
            {
                "schema": SCHEMA_VERSION,
                "command": "build",
                "k": cfg.k,
                "n0": cfg.n0,
                "seed": cfg.seed,
                "limit": cfg.limit,
                "bits": bit_string,
            },
            cfg,
        )
    elif cfg.format == "csv":
        _emit_csv(["n", "chi"], enumerate(chi.bits.tolist()), cfg)
    else:
        _emit(bit_string + "\n", cfg)
    return 0


_VERIFY_BLOCK_IMAX = 4


def _cmd_verify(cfg: RunConfig) -> int:
    seed = _parse_seed(cfg)
    # build mechanically even from a bad seed so the report can show the failure
    chi = partitions.extend_seed(seed, cfg.limit, require_valid=False)
    structure = partitions.verify_structure(chi, cfg.limit)
    equality = partitions.verify_equality(chi, cfg.limit, workers=cfg.workers)
    parity = partitions.verify_block_parity(chi, _VERIFY_BLOCK_IMAX)
    eq_violations = equality.violations
    ok = structure.ok and equality.passed and parity.ok
    if cfg.format == "csv":
        _emit_csv(
            ["n", "R_A", "R_comp", "equal"],
            ((n, rs, rc, 1 if rs == rc else 0) for n, rs, rc, _, _ in equality.rows()),
            cfg,
        )
        print(f"verify: {'pass' if ok else 'FAIL'}", file=sys.stderr)
    else:
        _emit_json(
            {
                "schema": SCHEMA_VERSION,
                "command": "verify",
                "k": cfg.k,
                "n0": cfg.n0,
                "seed": cfg.seed,
                "limit": cfg.limit,
                "passed": ok,
                "checks": {
                    "structure": {
                        "passed": structure.ok,
                        "window_violations": list(structure.window_violations),
                        "flip_first_violation": structure.flip_first_violation,
                        "flip_violation_count": structure.flip_violation_count,
                    },
                    "equality": {
                        "passed": equality.passed,
                        "first_violation": eq_violations[0] if eq_violations else None,
                        "violation_count": len(eq_violations),
                    },
                    "block_parity": {
                        "passed": parity.ok,
                        "i_max": parity.i_max,
                        "checked": parity.checked,
                        "violation_count": parity.violation_count,
                        "first_violations": [list(v) for v in parity.violations[:5]],
                    },
                },
            },
            cfg,
        )
    return 0 if ok else 1


def _cmd_scan_bound(cfg: RunConfig) -> int:
    seed = _parse_seed(cfg)
    if cfg.lo > cfg.hi:
        raise PreconditionError(f"empty range: lo={cfg.lo} > hi={cfg.hi}")
    chi = partitions.extend_seed(seed, cfg.hi)
    report = bounds.bound_scan(chi, cfg.lo, cfg.hi, workers=cfg.workers)
    if cfg.format == "csv":
        _emit_csv(["n", "R_A", "R_comp", "bound", "ok"], report.rows(), cfg)
        print(
            f"scan-bound: {len(report.violations)} violation(s), "
            f"min_ratio={report.min_ratio:.6f}",
            file=sys.stderr,
        )
    else:
        doc = {"schema": SCHEMA_VERSION, "command": "scan-bound", "seed": cfg.seed}
        doc.update(report.to_dict())
        _emit_json(doc, cfg)
    return 0 if report.passed else 1


def _cmd_witness(cfg: RunConfig) -> int:
    seed = _parse_seed(cfg)
    chi = partitions.extend_seed(seed, cfg.n)
    records, skipped = bounds.witness_list(chi, cfg.n)
    rows = [
        {
            "j": r.decomposition.j,
            "i": r.decomposition.i,
            "t": r.decomposition.t,
            "r": r.decomposition.r,
            "case": r.decomposition.case,
            "s": r.decomposition.s,
            "a1": r.a1,
            "a2": r.a2,
            "side": r.side,
        }
        for r in records
    ]
    if cfg.format == "csv":
        _emit_csv(
            ["j", "i", "t", "r", "case", "s", "a1", "a2", "side"],
            ([v["j"], v["i"], v["t"], v["r"], v["case"], v["s"], v["a1"], v["a2"], v["side"]] for v in rows),
            cfg,
        )
    else:
        _emit_json(
            {
                "schema": SCHEMA_VERSION,
                "command": "witness",
                "k": cfg.k,
                "n0": cfg.n0,
                "seed": cfg.seed,
                "n": cfg.n,
                "guaranteed_bound": bounds.guaranteed_bound(cfg.k, cfg.n0, cfg.n)
                if cfg.n >= bounds.chain_threshold(cfg.k, cfg.n0)
                else 0,
                "records": rows,
                "skipped": [{"j": j, "reason": reason} for j, reason in skipped],
            },
            cfg,
        )
    return 0


def _cmd_search(cfg: RunConfig) -> int:
    outcome = bounds.nonexistence_search(WeightPair(cfg.k1, cfg.k2), cfg.n0, cfg.cap)
    _emit_json(
        {
            "schema": SCHEMA_VERSION,
            "command": "search",
            "k1": cfg.k1,
            "k2": cfg.k2,
            "n0": cfg.n0,
            "cap": cfg.cap,
            "status": outcome.status,
            "unsat_depth": outcome.unsat_depth,
            "nodes": outcome.nodes,
            "wall_time_s": round(outcome.elapsed, 6),
            "certificate": "".join(map(str, outcome.certificate))
            if outcome.certificate is not None
            else None,
        },
        cfg,
    )
    return 0


def _cmd_classic(cfg: RunConfig) -> int:
    seed = _parse_seed(cfg)
    if cfg.lo > cfg.hi:
        raise PreconditionError(f"empty range: lo={cfg.lo} > hi={cfg.hi}")
    if cfg.hi > cfg.limit:
        raise PreconditionError(f"hi={cfg.hi} exceeds limit={cfg.limit}")
    chi = partitions.extend_seed(seed, cfg.limit)
    rows = []
    for n in range(cfg.lo, cfg.hi + 1):
        rows.append(
            [n]
            + [classic_rep(chi, SET, v, n) for v in (R1, R2, R3)]
            + [classic_rep(chi, COMPLEMENT, v, n) for v in (R1, R2, R3)]
        )
    header = ["n", "r1_set", "r2_set", "r3_set", "r1_comp", "r2_comp", "r3_comp"]
    if cfg.format == "csv":
        _emit_csv(header, rows, cfg)
    else:
        _emit_json(
            {
                "schema": SCHEMA_VERSION,
                "command": "classic",
                "k": cfg.k,
                "n0": cfg.n0,
                "seed": cfg.seed,
                "columns": header,
                "rows": rows,
            },
            cfg,
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repfn",
        description="Build, verify and probe partitions of the naturals with "
        "equal weighted representation counts on both sides.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, **required_flags):
        p = sub.add_parser(name, help=help_text)
        flag_types = {
            "k": int, "n0": int, "k1": int, "k2": int, "seed": str,
            "limit": int, "lo": int, "hi": int, "n": int, "cap": int,
        }
        for flag, required in required_flags.items():
            p.add_argument(f"--{flag}", type=flag_types[flag], required=required)
        p.add_argument("--format", choices=("json", "csv", "plain"),
                       default="plain" if name in ("seeds", "build") else "json")
        p.add_argument("--out", type=str, default=None)
        if name in ("verify", "scan-bound"):
            p.add_argument("--workers", type=int, default=1)
        return p

    add("seeds", "enumerate valid initial segments", k=True, n0=True)
    add("build", "extend a seed to a full prefix table", k=True, n0=True, seed=True, limit=True)
    add("verify", "run structure, equality and block-parity checks",
        k=True, n0=True, seed=True, limit=True)
    add("scan-bound", "compare representation counts against the guaranteed bound",
        k=True, n0=True, seed=True, lo=True, hi=True)
    add("witness", "extract explicit representations at one target n",
        k=True, n0=True, seed=True, n=True)
    add("search", "exhaustive prefix search for the count equality",
        k1=True, k2=True, n0=True, cap=True)
    add("classic", "classic unweighted counts r1/r2/r3 over a range",
        k=True, n0=True, seed=True, limit=True, lo=True, hi=True)
    return parser


_HANDLERS = {
    "seeds": _cmd_seeds,
    "build": _cmd_build,
    "verify": _cmd_verify,
    "scan-bound": _cmd_scan_bound,
    "witness": _cmd_witness,
    "search": _cmd_search,
    "classic": _cmd_classic,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig.from_args(args)
    if cfg.format == "plain" and cfg.command not in ("seeds", "build"):
        print(f"error: --format plain is not supported by {cfg.command}", file=sys.stderr)
        return 2
    if cfg.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return 2
    try:
        return _HANDLERS[cfg.command](cfg)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NoWitness as exc:
        print(f"claim failure: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())
