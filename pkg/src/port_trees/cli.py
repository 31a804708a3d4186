"""Command-line front end.

One executable, ``port``, with one subcommand per capability.  Every
run that writes to an output directory also drops a ``run-manifest.json``
holding the fully resolved configuration, the seed, and the package
version -- enough to reproduce the outputs byte for byte.

A config file (simple ``key = value`` lines, ``#`` comments) can supply
defaults via ``--config``; explicit flags always win.  The seed comes
only from the flag or config file, never from the environment.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .degree import (
    degree_mean,
    degree_pmf_closed,
    degree_pmf_hypergeom,
    degree_pmf_recurrence,
    degree_variance,
    root_pmf_recurrence,
)
from .montecarlo import SimulationConfig, martingale_diagnostics, run_experiment
from .oracle import enumerate_statistic, oracle_moment
from .poisson import moments_w, simulate_poissonized_tree, simulate_yule
from .tree import Kernel
from .zagreb import martingale_diff_bound, moment_series, zagreb_mean, zagreb_second_moment

SCHEMA_VERSION = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _num(x):
    """Serialize a number: rationals as 'p/q' strings, floats shortest."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    config = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SystemExit(f"bad config line (expected key = value): {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            config[key.replace("-", "_")] = value
    return config


def _resolve(args, config, name, cast, default=None, required=False):
    value = getattr(args, name, None)
    if value is None and name in config:
        value = config[name]
    if value is None:
        if required:
            raise SystemExit(f"missing required option --{name.replace('_', '-')}")
        return default
    return cast(value)


def _write_manifest(out_dir: str, subcommand: str, resolved: dict) -> None:
    os.makedirs(out_dir, exist_ok=True)
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "subcommand": subcommand,
        "resolved": resolved,
    }
    with open(os.path.join(out_dir, "run-manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _emit_rows(header, rows, fmt: str, out_path: str | None) -> None:
    """Write rows as CSV or JSON, to a file or stdout."""
    if fmt == "json":
        payload = {"schema_version": SCHEMA_VERSION, "columns": list(header), "rows": [list(r) for r in rows]}
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [",".join(header)]
        lines += [",".join(str(c) for c in row) for row in rows]
        text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)


def _cmd_exact_pmf(args, config) -> int:
    n = _resolve(args, config, "n", int, required=True)
    j = _resolve(args, config, "j", int, required=True)
    method = _resolve(args, config, "method", str, default="recurrence")
    rational = bool(args.rational or config.get("rational") == "true")
    out_dir = _resolve(args, config, "out", str)
    fmt = _resolve(args, config, "format", str, default="csv")
    if method not in ("closed", "recurrence", "hypergeom"):
        raise SystemExit(f"unknown method {method!r}")
    if rational and method != "recurrence":
        raise SystemExit("--rational is only available with the recurrence method")
    if j == 1:
        if method == "recurrence":
            law = root_pmf_recurrence(n, exact=rational)
            rows = [(d, _num(p)) for d, p in sorted(law.probs.items())]
        else:
            from .degree import root_pmf

            rows = [(d, _num(root_pmf(n, d))) for d in range(1, n)]
    elif method == "recurrence":
        law = degree_pmf_recurrence(n, j, exact=rational)
        rows = [(d, _num(p)) for d, p in sorted(law.probs.items())]
    else:
        fn = degree_pmf_closed if method == "closed" else degree_pmf_hypergeom
        rows = [(d, _num(fn(n, j, d))) for d in range(1, n - j + 2)]
    resolved = {"n": n, "j": j, "method": method, "rational": rational, "format": fmt}
    if out_dir:
        _write_manifest(out_dir, "exact-pmf", resolved)
        _emit_rows(("d", "probability"), rows, fmt, os.path.join(out_dir, "pmf." + fmt))
    else:
        _emit_rows(("d", "probability"), rows, fmt, None)
    return 0


def _cmd_exact_moments(args, config) -> int:
    n = _resolve(args, config, "n", int, required=True)
    j = _resolve(args, config, "j", int, required=True)
    out_dir = _resolve(args, config, "out", str)
    fmt = _resolve(args, config, "format", str, default="csv")
    rows = [(n, j, _num(degree_mean(n, j)), _num(degree_variance(n, j)))]
    if out_dir:
        _write_manifest(out_dir, "exact-moments", {"n": n, "j": j, "format": fmt})
        _emit_rows(("n", "j", "mean", "variance"), rows, fmt, os.path.join(out_dir, "moments." + fmt))
    else:
        _emit_rows(("n", "j", "mean", "variance"), rows, fmt, None)
    return 0


def _cmd_zagreb_moments(args, config) -> int:
    n_max = _resolve(args, config, "n_max", int, required=True)
    rational = bool(args.rational or config.get("rational") == "true")
    out_dir = _resolve(args, config, "out", str)
    fmt = _resolve(args, config, "format", str, default="csv")
    series = moment_series(n_max, exact=rational if rational else None)
    rows = []
    for n in range(1, n_max + 1):
        mz = series.mean_z[n - 1]
        my = series.mean_y[n - 1]
        sz = series.second_z[n - 1]
        rows.append((n, _num(mz), _num(my), _num(sz), _num(sz - mz * mz)))
    header = ("n", "mean_Z", "mean_Y", "second_Z", "var_Z")
    if out_dir:
        _write_manifest(out_dir, "zagreb-moments", {"n_max": n_max, "rational": rational, "format": fmt})
        _emit_rows(header, rows, fmt, os.path.join(out_dir, "series." + fmt))
    else:
        _emit_rows(header, rows, fmt, None)
    return 0


def _cmd_oracle(args, config) -> int:
    n = _resolve(args, config, "n", int, required=True)
    kernel = Kernel.parse(_resolve(args, config, "kernel", str, default="gap"))
    stat = _resolve(args, config, "stat", str, required=True)
    out_dir = _resolve(args, config, "out", str)
    j = None
    name = stat
    if stat.startswith("degree:"):
        name, j = "degree", int(stat.split(":", 1)[1])
    dist = enumerate_statistic(n, kernel, name, j=j)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "n": n,
        "kernel": kernel.value,
        "statistic": stat,
        "history_count": dist.history_count,
        "law": {_num(v): _num(p) for v, p in dist.outcomes.items()},
        "mean": _num(oracle_moment(dist, 1)),
        "second_moment": _num(oracle_moment(dist, 2)),
    }
    text = json.dumps(payload, indent=2) + "\n"
    if out_dir:
        _write_manifest(out_dir, "oracle", {"n": n, "kernel": kernel.value, "stat": stat})
        with open(os.path.join(out_dir, "oracle.json"), "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_simulate(args, config) -> int:
    n = _resolve(args, config, "n", int, required=True)
    reps = _resolve(args, config, "reps", int, required=True)
    kernel = Kernel.parse(_resolve(args, config, "kernel", str, default="degree"))
    stat = _resolve(args, config, "stat", str, default="zagreb")
    seed = _resolve(args, config, "seed", int, default=0)
    out_dir = _resolve(args, config, "out", str, required=True)
    kde_grid = _resolve(args, config, "kde", int, default=0)
    sim = SimulationConfig(
        n=n, replicates=reps, kernel=kernel, seed=seed, statistic=stat, out_dir=out_dir, kde_grid=kde_grid
    )
    _write_manifest(
        out_dir,
        "simulate",
        {
            "n": n,
            "reps": reps,
            "kernel": kernel.value,
            "stat": stat,
            "seed": seed,
            "kde": kde_grid,
            "chunk_size": sim.resolved_chunk(),
        },
    )
    summary = run_experiment(sim)
    print(f"simulate: n={n} reps={reps} stat={stat} mean={summary.mean:.6g} -> {out_dir}")
    return 0


def _cmd_poisson(args, config) -> int:
    j = _resolve(args, config, "j", int, default=2)
    dt = _resolve(args, config, "dt", float, required=True)
    reps = _resolve(args, config, "reps", int, required=True)
    mode = _resolve(args, config, "mode", str, default="yule")
    seed = _resolve(args, config, "seed", int, default=0)
    out_dir = _resolve(args, config, "out", str, required=True)
    if mode not in ("yule", "tree"):
        raise SystemExit(f"unknown mode {mode!r}")
    _write_manifest(out_dir, "poisson", {"j": j, "dt": dt, "reps": reps, "mode": mode, "seed": seed})
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    if mode == "yule":
        sample = simulate_yule(dt, rng, size=reps)
    else:
        sample = np.array([simulate_poissonized_tree(j, dt, rng).final_white() for _ in range(reps)], dtype=np.int64)
    with open(os.path.join(out_dir, "sample.csv"), "w") as fh:
        fh.writelines(f"{int(v)}\n" for v in sample)
    mean_t, second_t, var_t = moments_w(dt)
    summary = {
        "schema_version": SCHEMA_VERSION,
        "mode": mode,
        "j": j,
        "dt": dt,
        "count": int(sample.size),
        "mean": float(sample.mean()),
        "variance": float(np.var(sample, ddof=1)),
        "theoretical_mean": mean_t,
        "theoretical_variance": var_t,
    }
    with open(os.path.join(out_dir, "summary.json"), "w") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    print(f"poisson: mode={mode} dt={dt} mean={summary['mean']:.6g} (theory {mean_t:.6g}) -> {out_dir}")
    return 0


def _cmd_normality_report(args, config) -> int:
    n = _resolve(args, config, "n", int, required=True)
    reps = _resolve(args, config, "reps", int, required=True)
    seed = _resolve(args, config, "seed", int, default=0)
    out_dir = _resolve(args, config, "out", str, required=True)
    sim = SimulationConfig(
        n=n, replicates=reps, kernel=Kernel.DEGREE, seed=seed, statistic="zagreb", out_dir=out_dir, kde_grid=256
    )
    _write_manifest(
        out_dir,
        "normality-report",
        {"n": n, "reps": reps, "seed": seed, "chunk_size": sim.resolved_chunk()},
    )
    if reps < 100:
        print("warning: fewer than 100 replicates; the normality test is underpowered", file=sys.stderr)
    summary = run_experiment(sim)
    verdict = "normality rejected" if summary.jb_pvalue < 1e-3 else "normality not rejected"
    report = {
        "schema_version": SCHEMA_VERSION,
        "n": n,
        "replicates": reps,
        "skewness": summary.skewness,
        "excess_kurtosis": summary.excess_kurtosis,
        "jb_statistic": summary.jb_statistic,
        "jb_pvalue": summary.jb_pvalue,
        "test": summary.normality_test,
        "verdict": verdict,
    }
    with open(os.path.join(out_dir, "report.json"), "w") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    print(f"normality-report: n={n} reps={reps} skewness={summary.skewness:.4f} "
          f"jb_p={summary.jb_pvalue:.3g} verdict: {verdict}")
    return 0


def _verify_oracle(n_max: int) -> list[tuple[str, bool]]:
    checks = []
    for n in range(2, n_max + 1):
        for j in range(1, n + 1):
            dist = enumerate_statistic(n, Kernel.GAP, "degree", j=j)
            if j == 1:
                law = root_pmf_recurrence(n, exact=True) if n >= 2 else None
            else:
                law = degree_pmf_recurrence(n, j, exact=True)
            ok = dist.outcomes == {d: p for d, p in law.probs.items() if p}
            checks.append((f"oracle-vs-recurrence n={n} j={j}", ok))
    for n in range(2, n_max + 1):
        dist = enumerate_statistic(n, Kernel.DEGREE, "zagreb", cap=max(n, 9))
        ok = oracle_moment(dist, 1) == zagreb_mean(n) and oracle_moment(dist, 2) == zagreb_second_moment(n)
        checks.append((f"oracle-vs-zagreb-moments n={n}", ok))
    return checks


def _verify_routes(n_max: int) -> list[tuple[str, bool]]:
    checks = []
    for n in range(2, n_max + 1):
        for j in range(2, n + 1):
            law = degree_pmf_recurrence(n, j)
            ok = all(
                abs(degree_pmf_closed(n, j, d) - p) <= 1e-9
                and abs(degree_pmf_hypergeom(n, j, d) - p) <= 1e-9
                for d, p in law.probs.items()
            )
            checks.append((f"route-equivalence n={n} j={j}", ok))
    return checks


def _verify_normalization(n: int) -> list[tuple[str, bool]]:
    checks = []
    for j in (2, max(2, n // 2), n):
        total = degree_pmf_recurrence(n, j).total()
        checks.append((f"normalization n={n} j={j}", abs(total - 1.0) <= 1e-10))
    total = root_pmf_recurrence(n).total()
    checks.append((f"normalization n={n} root", abs(total - 1.0) <= 1e-10))
    return checks


def _verify_martingale() -> list[tuple[str, bool]]:
    report = martingale_diagnostics(
        SimulationConfig(n=2000, replicates=400, kernel=Kernel.DEGREE, seed=7, statistic="martingale")
    )
    checks = [("martingale-increment-bound", report["increment_bound_satisfied"])]
    se = report["mean_M_stderr"]
    checks.append(("martingale-mean-zero", abs(report["mean_M"]) < 5 * se))
    checks.append(("martingale-bound-decreasing", martingale_diff_bound(3) > martingale_diff_bound(10) > 6.0))
    return checks


def _cmd_verify(args, config) -> int:
    suite = _resolve(args, config, "suite", str, default="all")
    n_max = _resolve(args, config, "n_max", int, default=6)
    checks = []
    if suite in ("all", "oracle"):
        checks += _verify_oracle(n_max)
    if suite in ("all", "routes"):
        checks += _verify_routes(max(n_max, 12))
    if suite in ("all", "normalization"):
        checks += _verify_normalization(200)
    if suite in ("all", "martingale"):
        checks += _verify_martingale()
    if not checks:
        raise SystemExit(f"unknown suite {suite!r}")
    failed = [name for name, ok in checks if not ok]
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    print(f"verify: {len(checks) - len(failed)}/{len(checks)} checks passed")
    return 2 if failed else 0


def build_parser() -> _Parser:
    parser = _Parser(prog="port", description=__doc__)
    parser.add_argument("--config", help="key = value defaults file")
    sub = parser.add_subparsers(dest="subcommand")

    def add(name, fn, **flags):
        p = sub.add_parser(name)
        for flag, kwargs in flags.items():
            p.add_argument(f"--{flag}", **kwargs)
        p.set_defaults(fn=fn)
        return p

    add(
        "exact-pmf",
        _cmd_exact_pmf,
        n={}, j={}, method={}, out={}, format={"choices": ("csv", "json")},
        rational={"action": "store_true"},
    )
    add("exact-moments", _cmd_exact_moments, n={}, j={}, out={}, format={"choices": ("csv", "json")})
    add(
        "zagreb-moments",
        _cmd_zagreb_moments,
        **{"n-max": {"dest": "n_max"}},
        out={}, format={"choices": ("csv", "json")},
        rational={"action": "store_true"},
    )
    add("oracle", _cmd_oracle, n={}, kernel={}, stat={}, out={})
    add("simulate", _cmd_simulate, n={}, reps={}, kernel={}, stat={}, seed={}, out={}, kde={})
    add("poisson", _cmd_poisson, j={}, dt={}, reps={}, mode={}, seed={}, out={})
    add("normality-report", _cmd_normality_report, n={}, reps={}, seed={}, out={})
    add("verify", _cmd_verify, suite={}, **{"n-max": {"dest": "n_max"}})
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "fn", None) is None:
        parser.print_usage(sys.stderr)
        return 1
    config = _load_config(args.config)
    try:
        return args.fn(args, config)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"port: error: {exc.code}", file=sys.stderr)
            return 1
        raise
    except ValueError as exc:
        print(f"port: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
