"""``verify``: list and run verification scenarios, manage the Gröbner cache.

Exit codes of ``verify run``: 0 when every claim passes, 2 when any claim
fails, 3 when the only non-passing statuses are flagged discrepancies or
cap-outs, 64 on usage errors (unknown scenario, bad prime, unwritable output).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from sympy import isprime

from . import __version__
from .cascade import (
    DEFAULT_SEED,
    STRETCH_SECONDS,
    UnknownScenario,
    consistency_matrix,
    get_scenario,
    list_scenarios,
    run_scenario,
    scenario_ids,
    summary_table,
)
from .groebner import GroebnerCache
from .polycore import DEFAULT_PRIME

EXIT_OK, EXIT_FAIL, EXIT_FLAGGED, EXIT_USAGE = 0, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    prime: int = DEFAULT_PRIME
    seed: int = DEFAULT_SEED
    budget_seconds: dict = field(default_factory=dict)
    stretch_seconds: float = STRETCH_SECONDS
    output: str | None = None
    include_stretch: bool = False
    jobs: int = 1
    cache_dir: str | None = None
    use_cache: bool = True

    def validate(self) -> None:
        if not isprime(self.prime):
            raise UsageError(f"--prime {self.prime} is not prime")
        if not 0 <= self.seed < 1 << 64:
            raise UsageError("--seed must be a 64-bit unsigned value")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")


def load_schema() -> dict:
    return json.loads(resources.files("detcascade").joinpath("report_schema.json").read_text())


def validate_document(doc: dict) -> None:
    import jsonschema

    jsonschema.validate(doc, load_schema())


def _env_int(name: str):
    v = os.environ.get(name)
    if v in (None, ""):
        return None
    try:
        return int(v, 0)
    except ValueError:
        raise UsageError(f"{name}={v!r} is not an integer") from None


def _parse_budgets(items) -> dict:
    out = {}
    for item in items or ():
        sid, sep, secs = item.partition("=")
        if not sep:
            raise UsageError(f"--budget expects <scenario>=<seconds>, got {item!r}")
        try:
            out[sid] = float(secs)
        except ValueError:
            raise UsageError(f"bad seconds in --budget {item!r}") from None
    return out


def _run_one(sid: str, cfg: RunConfig) -> dict:
    cache = GroebnerCache(cfg.cache_dir) if cfg.use_cache else None
    rep = run_scenario(sid, cfg.prime, cfg.seed, cfg.include_stretch, cfg.budget_seconds.get(sid),
                       cfg.stretch_seconds, cache)
    return rep.to_json()


def cmd_verify(ids: list, cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    cfg.validate()
    run_all = ids == ["all"]
    if run_all:
        ids = scenario_ids()
    for sid in ids:
        try:
            get_scenario(sid)
        except UnknownScenario:
            raise UsageError(f"unknown scenario {sid!r}; choose from {', '.join(scenario_ids())} or all") from None
    for sid in cfg.budget_seconds:
        if sid not in scenario_ids():
            raise UsageError(f"--budget names unknown scenario {sid!r}")
    target = Path(cfg.output) if cfg.output else None
    if target is not None:
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            with open(target, "a"):
                pass
        except OSError as e:
            raise UsageError(f"cannot write {target}: {e}") from None

    if cfg.jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, len(ids))) as pool:
            futures = [pool.submit(_run_one, sid, cfg) for sid in ids]
            reports = [f.result() for f in futures]
    else:
        reports = [_run_one(sid, cfg) for sid in ids]

    doc = {"version": __version__, "prime": cfg.prime, "seed": cfg.seed, "stretch": cfg.include_stretch,
           "reports": reports}
    if run_all:
        doc["consistency"] = consistency_matrix()
    validate_document(doc)
    if target is not None:
        target.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    print(text_report(doc), file=out)
    return exit_code(doc)


def exit_code(doc: dict) -> int:
    statuses = [c["status"] for r in doc["reports"] for c in r["claims"]]
    statuses += [row["status"] for row in doc.get("consistency", ())]
    if "fail" in statuses:
        return EXIT_FAIL
    if any(s != "pass" for s in statuses):
        return EXIT_FLAGGED
    return EXIT_OK


class _Rec:
    """Adapter so summary_table can format claims from a JSON report."""

    def __init__(self, d):
        self.label, self.expected, self.computed = d["label"], d["expected"], d["computed"]
        self.status, self.seconds = d["status"], d["seconds"]


class _Rep:
    def __init__(self, d):
        self.scenario = d["scenario"]
        self.claims = [_Rec(c) for c in d["claims"]]


def text_report(doc: dict) -> str:
    lines = [f"prime {doc['prime']}  seed {doc['seed']}  stretch {doc['stretch']}", "",
             summary_table([_Rep(r) for r in doc["reports"]])]
    if doc.get("consistency"):
        lines += ["", "consistency"]
        for row in doc["consistency"]:
            extra = f"  (implied nodes {row['implied_nodes']})" if row.get("implied_nodes") not in (None, row.get(
                "nodes")) else ""
            lines.append(f"  {row['row']:<30} {row['lhs']:>5} vs {row['rhs']:>5}  {row['status']}{extra}")
    counts: dict = {}
    for r in doc["reports"]:
        for c in r["claims"]:
            counts[c["status"]] = counts.get(c["status"], 0) + 1
    lines += ["", "  ".join(f"{k}: {v}" for k, v in sorted(counts.items()))]
    return "\n".join(lines)


def cmd_list(as_json: bool = False, include_stretch: bool = False, out=None) -> int:
    out = out or sys.stdout
    summaries = list_scenarios(include_stretch)
    if as_json:
        print(json.dumps(summaries, indent=2), file=out)
        return EXIT_OK
    for s in summaries:
        print(f"{s['id']:<12} {s['description']}", file=out)
        for c in s["claims"]:
            mark = " [stretch]" if c["stretch"] else ""
            print(f"    {c['label']:<38} = {json.dumps(c['expected'])}{mark}", file=out)
    return EXIT_OK


def cmd_cache(action: str, cache_dir: str | None = None, out=None) -> int:
    out = out or sys.stdout
    cache = GroebnerCache(cache_dir)
    if action == "clear":
        n = cache.clear()
        print(f"removed {n} entries from {cache.dir}", file=out)
    else:
        st = cache.stats()
        print(f"{st['directory']}: {st['entries']} entries, {st['bytes']} bytes", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="verify", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    ls = sub.add_parser("list", help="show the scenario registry")
    ls.add_argument("--json", action="store_true", help="machine-readable registry")
    ls.add_argument("--stretch", action="store_true", help="include stretch steps")

    run = sub.add_parser("run", help="run scenarios")
    run.add_argument("ids", nargs="+", help="scenario ids or 'all'")
    run.add_argument("--prime", type=int, default=None, help="coefficient prime (env CASCADE_PRIME)")
    run.add_argument("--seed", type=int, default=None, help="base seed (env CASCADE_SEED)")
    run.add_argument("--json", dest="json_path", default=None, help="write the JSON report here")
    run.add_argument("--stretch", action="store_true", help="also run stretch steps")
    run.add_argument("--jobs", type=int, default=1, help="scenarios to run concurrently")
    run.add_argument("--budget", action="append", metavar="ID=SECONDS", help="per-step cap for one scenario")
    run.add_argument("--stretch-budget", type=float, default=STRETCH_SECONDS, help="per-step cap of stretch steps")
    run.add_argument("--cache-dir", default=None, help="Gröbner cache directory (env CASCADE_CACHE_DIR)")
    run.add_argument("--no-cache", action="store_true", help="do not read or write the Gröbner cache")

    cache = sub.add_parser("cache", help="inspect or clear the Gröbner cache")
    cache.add_argument("action", choices=("stats", "clear"))
    cache.add_argument("--cache-dir", default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "list":
            return cmd_list(args.json, args.stretch)
        if args.cmd == "cache":
            return cmd_cache(args.action, args.cache_dir)
        prime = args.prime if args.prime is not None else _env_int("CASCADE_PRIME")
        seed = args.seed if args.seed is not None else _env_int("CASCADE_SEED")
        cfg = RunConfig(
            prime=DEFAULT_PRIME if prime is None else prime,
            seed=DEFAULT_SEED if seed is None else seed,
            budget_seconds=_parse_budgets(args.budget),
            stretch_seconds=args.stretch_budget,
            output=args.json_path,
            include_stretch=args.stretch,
            jobs=args.jobs,
            cache_dir=args.cache_dir,
            use_cache=not args.no_cache,
        )
        return cmd_verify(args.ids, cfg)
    except UsageError as e:
        print(f"verify: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
