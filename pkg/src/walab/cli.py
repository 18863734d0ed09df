"""Command-line runner: ``walab verify``, ``walab characters`` and ``walab list-checks``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import __version__
from .rootsys import LABELS

SCHEMA = "walab/1"


@dataclass
class RunConfig:
    suites: list
    algebras: list
    weight_cutoff: int = 4
    q_order: int = 30
    output_path: str | None = None
    cache_dir: str | None = None
    jobs: int = 1
    timings: bool = False
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("extra")
        d.pop("timings")
        return d


def _split(values) -> list[str]:
    out = []
    for v in values or []:
        out.extend(x for x in v.split(",") if x)
    return out


def _task(args):
    from . import verify

    check_id, label, options = args
    spec = next(c for c in verify.CHECKS if c.check_id == check_id)
    if options.get("cache_dir"):
        from . import qseries

        qseries.set_cache_dir(options["cache_dir"])
    try:
        return verify.run_check(spec, label, options)
    except Exception as exc:  # a crashing check is reported, not fatal
        return verify.CheckResult(check_id, label or "all", "fail", f"{type(exc).__name__}: {exc}")


def run(config: RunConfig, stream=sys.stdout) -> tuple[int, dict]:
    from . import qseries, verify

    if config.cache_dir:
        qseries.set_cache_dir(config.cache_dir)
    tasks = verify.plan(config.suites, config.algebras)
    options = {"weight_cutoff": config.weight_cutoff, "q_order": config.q_order, "cache_dir": config.cache_dir}
    args = [(spec.check_id, label, options) for spec, label in tasks]
    if config.jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_task, args))
    else:
        results = []
        for a in args:
            r = _task(a)
            results.append(r)
            print(_line(r, config.timings), file=stream, flush=True)
    if config.jobs > 1:
        for r in results:
            print(_line(r, config.timings), file=stream)
    extra = verify.psi_implication(results)
    for r in extra:
        print(_line(r, config.timings), file=stream)
    results += extra
    summary = {k: sum(1 for r in results if r.status == k) for k in ("pass", "fail", "skipped")}
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "config": config.to_json(),
        "results": [r.to_json(config.timings) for r in results],
        "summary": summary,
    }
    print(f"summary: {summary['pass']} pass, {summary['fail']} fail, {summary['skipped']} skipped", file=stream)
    return (0 if summary["fail"] == 0 else 1), report


def _line(r, timings: bool) -> str:
    alg = r.algebra or "-"
    s = f"{r.status.upper():7s} {r.check_id:26s} {alg:8s}"
    if timings:
        s += f" {r.runtime_ms:>8d} ms"
    if r.witness and r.status == "fail":
        s += f"  {r.witness}"
    return s


def _write(report: dict, path: str | None) -> int:
    text = json.dumps(report, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
    if not path:
        return 0
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write report to {path}: {exc}", file=sys.stderr)
        sys.stdout.write(text)  # partial results are not lost
        return 2
    return 0


def cmd_verify(ns, parser) -> int:
    from . import verify

    suites = _split(ns.suite)
    bad = [s for s in suites if s != "all" and s not in verify.SUITES]
    if bad:
        parser.error(f"unknown suite {bad[0]!r}; choose from all, {', '.join(verify.SUITES)}")
    algebras = _split(ns.type) or list(LABELS)
    bad = [g for g in algebras if g not in LABELS]
    if bad:
        parser.error(f"unknown algebra {bad[0]!r}; choose from {', '.join(LABELS)}")
    cfg = RunConfig(suites, algebras, ns.weight_cutoff, ns.qorder, ns.out, ns.cache, ns.jobs, ns.timings)
    code, report = run(cfg)
    wcode = _write(report, ns.out)
    return wcode or code


def cmd_characters(ns, parser) -> int:
    from . import qseries

    if ns.cache:
        qseries.set_cache_dir(ns.cache)
    order = ns.qorder
    report = {"schema": SCHEMA, "version": __version__, "config": {"q_order": order, "mde": ns.mde}, "characters": {}}
    for name in qseries.E8_MODULES:
        chi = qseries.module_character(name, order)
        report["characters"][name] = chi.to_json()
        head = ", ".join(f"{qseries.format_rational(c)}" for c in chi.coeffs[:6])
        print(f"{name}: q^{qseries.format_rational(chi.exponent0)} (step {qseries.format_rational(chi.step)}) [{head}, ...]")
    code = 0
    if ns.mde:
        rep = qseries.mde_report(order)
        report["mde"] = rep
        for name, m in rep["modules"].items():
            print(f"MDE mu={rep['mu']}: {name} residual through q^{order}: {'zero' if m['residual_zero'] else 'NONZERO'}")
        print(f"indicial roots {rep['indicial_roots']}; normalization a2={rep['normalization']['a2']}, "
              f"a4={rep['normalization']['a4']} (fixed by the indicial roots)")
        print(f"h = 4/3 reading of the last Ramond sector: {rep['h_4_3_diagnostic']}")
        if not all(m["residual_zero"] for m in rep["modules"].values()):
            code = 1
    return _write(report, ns.out) or code


def cmd_list(ns, parser) -> int:
    from . import verify

    rows = [c for c in verify.CHECKS if not ns.query or ns.query in (c.suite, c.check_id)]
    if not rows:
        print(f"no checks match {ns.query!r}; suites are: {', '.join(verify.SUITES)}")
        return 0
    w = max(len(c.check_id) for c in rows)
    for c in rows:
        algs = ",".join(c.algebras) if c.algebras else "-"
        print(f"{c.check_id:{w}s}  {c.suite:12s}  {algs:28s}  {c.anchor}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="walab", description="Exact verification of minimal W-algebra computations.")
    p.add_argument("--version", action="version", version=f"walab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", nargs="+", help="suite name(s) or 'all' (see list-checks)")
    v.add_argument("--type", action="append", help="algebra label(s), comma separated or repeated")
    v.add_argument("--weight-cutoff", type=int, default=4)
    v.add_argument("--qorder", type=int, default=30)
    v.add_argument("--out", help="write the JSON report here")
    v.add_argument("--cache", help="cache directory for lattice enumerations")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--timings", action="store_true", help="include runtime_ms in output")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("characters", help="E8-sector characters and the modular differential equation")
    c.add_argument("--mde", action="store_true")
    c.add_argument("--qorder", type=int, default=30)
    c.add_argument("--out")
    c.add_argument("--cache")
    c.set_defaults(func=cmd_characters)

    ls = sub.add_parser("list-checks", help="list checks with what they verify")
    ls.add_argument("query", nargs="?", help="suite or check id")
    ls.set_defaults(func=cmd_list)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    sub = parser._subparsers._group_actions[0].choices[ns.command]  # error messages from the subcommand
    return ns.func(ns, sub)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
