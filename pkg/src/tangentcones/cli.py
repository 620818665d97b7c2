"""Command-line front end.

    tangentcones compute --rank 3 --w "(13)(24)"
    tangentcones table --rank 3 --format json
    tangentcones verify --suite all --rank 4 --jobs 4

Exit codes: 0 success, 1 verification failures, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .cache import ConeCache, default_cache_dir
from .poly import GREVLEX, print_poly
from .verify import (
    CORPUS_FORMAT,
    ConeStore,
    check_ad_invariance,
    check_conjecture1,
    check_conjecture2,
    check_conjecture3_evidence,
    check_coxeter,
    check_dimensions,
    compare_corpus,
    cone_classes,
    load_allowlist,
    load_corpus,
)
from .weyl import CycleSyntaxError, parse_cycles, print_cycles

SUITES = ("dims", "conj1", "conj2", "conj3", "corpus", "adstar", "coxeter")

log = logging.getLogger("tangentcones")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    rank: int
    selector: str = "all"  # a cycle string, or "all"
    fmt: str = "text"
    cache_dir: Path | None = None
    jobs: int = 1
    corpus: Path | None = None
    allowlist: Path | None = None

    def __post_init__(self):
        if self.rank < 1:
            raise UsageError("rank must be at least 1")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")

    def store(self) -> ConeStore:
        cache = ConeCache(self.cache_dir) if self.cache_dir is not None else None
        return ConeStore(jobs=self.jobs, cache=cache)


def display_order(gens) -> list:
    """Lowest degree first; within a degree, larger leading monomial first."""
    gens = sorted(gens, key=lambda g: GREVLEX.key(g.leading_monomial(GREVLEX)), reverse=True)
    return sorted(gens, key=lambda g: g.total_degree())


def cone_record(cone, class_id: int | None = None) -> dict:
    return {
        "rank": cone.n,
        "w": print_cycles(cone.w),
        "one_line": list(cone.w.one_line),
        "length": cone.length,
        "dimension": cone.dimension,
        "generators": [print_poly(g) for g in display_order(cone.generators)],
        "cone_class_id": class_id,
    }


def _csv(records: list[dict]) -> str:
    buf = io.StringIO()
    fields = ["rank", "w", "one_line", "length", "dimension", "cone_class_id", "generators"]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in records:
        row = dict(r)
        row["one_line"] = " ".join(map(str, r["one_line"]))
        row["generators"] = "; ".join(r["generators"])
        writer.writerow(row)
    return buf.getvalue()


def _json(records: list[dict]) -> str:
    return json.dumps({"format": CORPUS_FORMAT, "records": records}, indent=1) + "\n"


def cmd_compute(cfg: RunConfig, out) -> int:
    try:
        w = parse_cycles(cfg.selector, cfg.rank)
    except CycleSyntaxError as exc:
        raise UsageError(str(exc)) from None
    cone = cfg.store().cone(w)
    rec = cone_record(cone)
    if cfg.fmt == "json":
        out.write(json.dumps(rec, indent=1) + "\n")
    elif cfg.fmt == "csv":
        out.write(_csv([rec]))
    else:
        out.write(f"w: {rec['w']}\n")
        out.write(f"rank: {rec['rank']}\n")
        out.write(f"one_line: {' '.join(map(str, rec['one_line']))}\n")
        out.write(f"length: {rec['length']}\n")
        out.write(f"dimension: {rec['dimension']}\n")
        out.write("generators:\n")
        for g in rec["generators"] or ["(none: the cone is all of n*)"]:
            out.write(f"  {g}\n")
    return 0 if cone.dimension_ok else 1


def table_records(rank: int, store: ConeStore) -> list[dict]:
    """Records in enumeration order; class ids follow display order
    (decreasing dimension, then first appearance)."""
    cones = store.cones(rank)
    classes = cone_classes(cones)
    order = sorted(range(len(classes)), key=lambda i: (-cones[classes[i][0]].dimension, i))
    class_id = {}
    for new_id, i in enumerate(order, 1):
        for w in classes[i]:
            class_id[w] = new_id
    return [cone_record(c, class_id[w]) for w, c in cones.items()]


def cmd_table(cfg: RunConfig, out) -> int:
    records = table_records(cfg.rank, cfg.store())
    if cfg.fmt == "json":
        out.write(_json(records))
    elif cfg.fmt == "csv":
        out.write(_csv(records))
    else:
        groups: dict[int, list[dict]] = {}
        for r in records:
            groups.setdefault(r["cone_class_id"], []).append(r)
        out.write(f"A_{cfg.rank}: {len(records)} elements, {len(groups)} cone classes\n")
        for cid in sorted(groups):
            rs = groups[cid]
            labels = ", ".join(r["w"] for r in rs)
            gens = ", ".join(rs[0]["generators"]) or "n*"
            out.write(f"{cid:3d}  dim {rs[0]['dimension']:2d}  {labels} | {gens}\n")
    return 0


def run_suites(cfg: RunConfig, suites: list[str]) -> tuple[bool, list]:
    store = cfg.store()
    reports = []
    rank = cfg.rank
    for suite in suites:
        if suite == "dims":
            reports.append(check_dimensions(rank, store))
        elif suite == "conj1":
            reports.append(check_conjecture1(rank, store))
        elif suite == "conj2":
            reports.append(check_conjecture2(rank, store))
        elif suite == "conj3":
            for k in range(1, rank):
                reports.append(check_conjecture3_evidence(k, rank, store))
        elif suite == "coxeter":
            if rank >= 2:
                reports.append(check_coxeter(rank, store))
        elif suite == "adstar":
            reports.append(check_ad_invariance(rank, store))
        elif suite == "corpus":
            try:
                records, errors = load_corpus(cfg.corpus)
                allow = load_allowlist(cfg.allowlist)
            except FileNotFoundError as exc:
                raise UsageError(f"missing file: {exc.filename}") from None
            reports.append(compare_corpus(rank, records, store, allow, errors))
    return all(r.passed for r in reports), reports


def cmd_verify(cfg: RunConfig, suite: str, out) -> int:
    suites = list(SUITES) if suite == "all" else [suite]
    ok, reports = run_suites(cfg, suites)
    if cfg.fmt == "json":
        out.write(json.dumps([r.to_dict() for r in reports], indent=1) + "\n")
    else:
        for r in reports:
            for line in r.lines():
                out.write(line + "\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank", type=int, required=True, help="n for the Lie algebra A_n")
    common.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--cache-dir", type=Path, default=None, help="overrides $TANGENTCONES_CACHE_DIR")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--corpus", type=Path, default=None, help="corpus JSON (default: bundled reference corpus)")
    common.add_argument("--allowlist", type=Path, default=None, help="known-anomaly JSON (default: bundled)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="tangentcones", description="Tangent cones of type A Schubert varieties.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("compute", parents=[common], help="tangent cone of one permutation")
    p.add_argument("--w", required=True, help='cycle notation, e.g. "(13)(24)" or "e"')
    sub.add_parser("table", parents=[common], help="all cones of a rank, grouped into classes")
    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    cache_dir = None if args.no_cache else (args.cache_dir or default_cache_dir())
    try:
        cfg = RunConfig(
            rank=args.rank,
            selector=getattr(args, "w", "all"),
            fmt=args.fmt,
            cache_dir=cache_dir,
            jobs=args.jobs,
            corpus=args.corpus,
            allowlist=args.allowlist,
        )
        if args.command == "compute":
            return cmd_compute(cfg, out)
        if args.command == "table":
            return cmd_table(cfg, out)
        return cmd_verify(cfg, args.suite, out)
    except UsageError as exc:
        print(f"tangentcones: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
