"""Command-line interface and reproducible experiment runner.

Exit codes: 0 success, 1 domain error (structured message on stderr),
2 usage error (argparse). Report-producing subcommands write delimited
output plus a rendered figure next to it unless --no-plot.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time

from . import constructs
from .cayley import PrimeField, alpha_exact, alpha_upper_ratio, build_cayley, \
    greedy_independent, next_prime
from .constructs import SparseGraph, construct_nondegenerate, construct_poly_lower, \
    construct_schur_lower, gen_high_girth, gen_triangle_free
from .density import density_curve, write_density_csv
from .equations import classify, parse_equation
from .rainbow import find_rainbow_exhaustive, find_rainbow_greedy, load_instance
from .solutions import count_solutions_all, count_solutions_distinct
from .witness import PipelineConfig, find_solution_via_rainbow
from . import __version__

_DOMAIN_ERRORS = (ValueError, ArithmeticError, RuntimeError, OSError)


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(";", ",").split(",") if x.strip()]


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.replace(";", ",").split(",") if x.strip()]


def _read_member_file(path: str) -> list[int]:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].replace(",", " ")
            out.extend(int(tok) for tok in line.split())
    return out


def _figure_path(out: str) -> str:
    root, _ = os.path.splitext(out)
    return root + ".png"


# ---------------------------------------------------------------------------
# subcommand handlers (each returns an exit code)

def _cmd_classify(args) -> int:
    eq = parse_equation(args.eq)
    cls = classify(eq)
    if cls.is_degenerate:
        print(f"degenerate S={{{','.join(str(i) for i in cls.witness)}}}")
    else:
        print("non-degenerate")
    return 0


def _cmd_alpha(args) -> int:
    field = PrimeField(args.p)
    gens = _int_list(args.gens)
    graph = build_cayley(field, gens)
    mode = "exact" if args.exact else ("bounds" if args.bounds else None)
    if mode is None:
        mode = "exact" if args.p <= 2000 else "bounds"
    if mode == "exact":
        res = alpha_exact(graph, cap=max(args.p, 2000))
        print(f"alpha={res.value} method=exact")
    else:
        lower = len(greedy_independent(graph))
        upper = min(args.p, int(alpha_upper_ratio(graph)))
        print(f"alpha_lower={lower} alpha_upper={upper} method=greedy/ratio")
    return 0


def _cmd_count(args) -> int:
    field = PrimeField(args.p)
    eq = parse_equation(args.eq)
    members = _int_list(args.gens)
    if args.distinct:
        n = count_solutions_distinct(members, eq, field)
    else:
        n = count_solutions_all(members, eq, field)
    print(f"count={n}")
    return 0


def _cmd_witness(args) -> int:
    field = PrimeField(args.p)
    eq = parse_equation(args.eq)
    members = _read_member_file(args.set_file)
    cfg = PipelineConfig(epsilon=args.epsilon, relaxed=not args.strict,
                         try_all_witnesses=args.try_all,
                         exhaustive_fallback=args.exhaustive_fallback)
    report = find_solution_via_rainbow(members, eq, field, cfg)
    if report.found:
        sol = ",".join(str(z) for z in report.solution.entries)
        subset = ",".join(str(i) for i in report.subset)
        print(f"found solution={sol} subset={subset}")
    else:
        print(f"not-found stage={report.stage} diagnostic={report.diagnostic}")
    if args.verbose:
        print(report.to_text())
    return 0 if report.found else 1


def _load_or_gen_graph(args, *, girth: int | None) -> SparseGraph:
    if args.graph_file:
        with open(args.graph_file) as fh:
            return SparseGraph.from_text(fh.read())
    n = args.graph_n
    if girth is None:
        graph, _ = gen_triangle_free(n, seed=args.seed)
    else:
        graph, _ = gen_high_girth(n, girth, seed=args.seed)
    return graph


def _cmd_construct(args) -> int:
    field = PrimeField(args.p)
    if args.kind == "nondeg":
        eq = parse_equation(args.eq)
        report = construct_nondegenerate(eq, field, t=args.t)
    elif args.kind == "schur":
        graph = _load_or_gen_graph(args, girth=None)
        report = construct_schur_lower(field, args.eps, graph, t=args.t)
    else:
        eq = parse_equation(args.eq)
        graph = _load_or_gen_graph(args, girth=eq.k + 2)
        report = construct_poly_lower(eq, field, args.eps, graph)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(constructs.CSV_HEADER)
        writer.writerow(report.to_csv_row())
    if not args.no_plot:
        from .plots import save_construction_figure
        save_construction_figure(report, _figure_path(args.out))
    print(f"ok={report.ok} size={report.size} out={args.out}")
    if not report.ok:
        failed = [k for k, v in report.checks.items() if not v]
        print(f"failed-checks={','.join(failed)}", file=sys.stderr)
        return 1
    return 0


def _cmd_density(args) -> int:
    eq = parse_equation(args.eq)
    primes = _int_list(args.primes)
    for p in primes:
        PrimeField(p)  # validate the whole grid before any work
    grid = _float_list(args.eps_grid)
    curve = density_curve(eq, primes, grid, args.mode, budget=args.budget,
                          seed=args.seed, exclude_zero=args.exclude_zero)
    write_density_csv(curve, args.out)
    if not args.no_plot:
        from .plots import save_density_figure
        save_density_figure(curve, _figure_path(args.out))
    mono = "ok" if all(curve.monotone_by_p.values()) else "violated"
    print(f"rows={len(curve.points)} failures={len(curve.failures)} "
          f"monotone={mono} out={args.out}")
    return 0 if curve.ok else 1


def _cmd_rainbow(args) -> int:
    with open(args.instance_file) as fh:
        system = load_instance(fh.read())
    if args.exhaustive:
        path = find_rainbow_exhaustive(system, args.length)
    else:
        path = find_rainbow_greedy(system, args.length)
    if path is None:
        print(f"no rainbow path of length {args.length}")
        return 1
    print(f"path={','.join(str(v) for v in path.vertices)} "
          f"colors={','.join(str(c) for c in path.colors)}")
    return 0


# ---------------------------------------------------------------------------
# experiment runner: flat key=value config, CSV + provenance sidecar

_TRUE = {"1", "true", "yes", "on"}


def parse_config(text: str) -> dict:
    cfg: dict = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line is not key=value: {raw!r}")
        key, _, value = line.partition("=")
        cfg[key.strip()] = value.strip()
    if "task" not in cfg:
        raise ValueError("config missing required key: task")
    if "out" not in cfg:
        raise ValueError("config missing required key: out")
    return cfg


def _config_primes(cfg: dict) -> list[int]:
    if "primes" in cfg:
        primes = _int_list(cfg["primes"])
    elif "prime_range_start" in cfg:
        count = int(cfg.get("prime_count", "3"))
        primes, q = [], int(cfg["prime_range_start"]) - 1
        for _ in range(count):
            q = next_prime(q + 1)
            primes.append(q)
    else:
        raise ValueError("config needs primes=... or prime_range_start=...")
    for p in primes:
        PrimeField(p)  # validation before any work
    return primes


def run_experiment(cfg: dict) -> tuple[str, int]:
    """Execute the configured pipeline; returns (csv path, failed row count).

    Writes the CSV, a PNG beside it (unless plot=false), and a provenance
    sidecar with seed, version, parameters, and wall times. All randomness
    flows from the config seed.
    """
    task = cfg["task"]
    out = cfg["out"]
    seed = int(cfg.get("seed", "0"))
    plot = cfg.get("plot", "true").lower() in _TRUE
    relaxed = cfg.get("relaxed", "true").lower() in _TRUE
    t0 = time.perf_counter()
    timings: list[tuple[str, float]] = []
    failures = 0

    if task == "density":
        eq = parse_equation(cfg["eq"])
        primes = _config_primes(cfg)
        grid = _float_list(cfg["eps_grid"])
        mode = cfg.get("mode", "exact")
        budget = int(cfg.get("budget", "20000"))
        exclude_zero = cfg.get("exclude_zero", "false").lower() in _TRUE
        curve = density_curve(eq, primes, grid, mode, budget=budget, seed=seed,
                              exclude_zero=exclude_zero)
        write_density_csv(curve, out)
        failures = len(curve.failures)
        if not all(curve.monotone_by_p.values()):
            failures += 1
        if plot:
            from .plots import save_density_figure
            save_density_figure(curve, _figure_path(out))
        timings.append(("grid", time.perf_counter() - t0))
    elif task == "construct":
        kind = cfg["kind"]
        primes = _config_primes(cfg)
        rows = []
        reports = []
        for p in primes:
            row_t = time.perf_counter()
            field = PrimeField(p)
            try:
                if kind == "nondeg":
                    eq = parse_equation(cfg["eq"])
                    t = int(cfg["t"]) if "t" in cfg else None
                    report = construct_nondegenerate(eq, field, t=t)
                elif kind == "schur":
                    graph = _experiment_graph(cfg, seed, girth=None)
                    t = int(cfg["t"]) if "t" in cfg else None
                    report = construct_schur_lower(field, float(cfg["eps"]),
                                                   graph, t=t)
                elif kind == "poly":
                    eq = parse_equation(cfg["eq"])
                    graph = _experiment_graph(cfg, seed, girth=eq.k + 2)
                    report = construct_poly_lower(eq, field, float(cfg["eps"]),
                                                  graph)
                else:
                    raise ValueError(f"unknown construct kind {kind!r}")
                rows.append(report.to_csv_row())
                reports.append(report)
                if not report.ok:
                    failures += 1
            except _DOMAIN_ERRORS as exc:
                rows.append((kind, str(p), cfg.get("eq", ""), "", "", "",
                             f"failed:{type(exc).__name__}"))
                failures += 1
            timings.append((f"p={p}", time.perf_counter() - row_t))
        tmp = f"{out}.tmp.{os.getpid()}"
        with open(tmp, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(constructs.CSV_HEADER)
            writer.writerows(rows)
        os.replace(tmp, out)
        if plot and reports:
            from .plots import save_construction_figure
            save_construction_figure(reports[-1], _figure_path(out))
    else:
        raise ValueError(f"unknown task {task!r}")

    sidecar = out + ".provenance.txt"
    with open(sidecar, "w") as fh:
        fh.write(f"version={__version__}\nseed={seed}\nrelaxed={relaxed}\n")
        for key in sorted(cfg):
            fh.write(f"param.{key}={cfg[key]}\n")
        for label, dt in timings:
            fh.write(f"wall.{label}={dt:.6f}\n")
        fh.write(f"wall.total={time.perf_counter() - t0:.6f}\n")
        fh.write(f"failed_rows={failures}\n")
    return out, failures


def _experiment_graph(cfg: dict, seed: int, *, girth: int | None) -> SparseGraph:
    if "graph_file" in cfg:
        with open(cfg["graph_file"]) as fh:
            return SparseGraph.from_text(fh.read())
    n = int(cfg.get("graph_n", "5"))
    if girth is None:
        graph, _ = gen_triangle_free(n, seed=seed)
    else:
        graph, _ = gen_high_girth(n, girth, seed=seed)
    return graph


def _cmd_run(args) -> int:
    with open(args.config) as fh:
        cfg = parse_config(fh.read())
    out, failures = run_experiment(cfg)
    print(f"out={out} failures={failures}")
    return 1 if failures else 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solfree",
        description="solution-free sets over prime fields: classification, "
                    "independence numbers, witnesses, constructions, density")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="degeneracy of a linear equation")
    sp.add_argument("eq")
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("alpha", help="independence number of Cay(F_p, gens)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--gens", required=True)
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true")
    group.add_argument("--bounds", action="store_true")
    sp.set_defaults(func=_cmd_alpha)

    sp = sub.add_parser("count", help="count solutions inside a set")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--gens", required=True, help="set members, comma separated")
    sp.add_argument("--eq", required=True)
    sp.add_argument("--distinct", action="store_true")
    sp.set_defaults(func=_cmd_count)

    sp = sub.add_parser("witness", help="extract a distinct-entry solution")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--set-file", required=True)
    sp.add_argument("--eq", required=True)
    sp.add_argument("--relaxed", action="store_true",
                    help="relaxed quotas (the default; kept for scripts)")
    sp.add_argument("--strict", action="store_true",
                    help="headline quotas, requires --epsilon")
    sp.add_argument("--epsilon", type=float, default=None)
    sp.add_argument("--try-all", action="store_true")
    sp.add_argument("--exhaustive-fallback", action="store_true")
    sp.add_argument("--verbose", action="store_true")
    sp.set_defaults(func=_cmd_witness)

    sp = sub.add_parser("construct", help="build a certified solution-free set")
    sp.add_argument("kind", choices=("nondeg", "schur", "poly"))
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--eq", default="1,1,-1")
    sp.add_argument("--eps", type=float, default=1.0)
    sp.add_argument("--graph-file", default=None)
    sp.add_argument("--graph-n", type=int, default=5)
    sp.add_argument("--t", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)
    sp.add_argument("--no-plot", action="store_true")
    sp.set_defaults(func=_cmd_construct)

    sp = sub.add_parser("density", help="D(eq, eps, p) over a grid")
    sp.add_argument("--eq", required=True)
    sp.add_argument("--primes", required=True)
    sp.add_argument("--eps-grid", required=True)
    sp.add_argument("--mode", choices=("exact", "heuristic"), required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=20000)
    sp.add_argument("--exclude-zero", action="store_true")
    sp.add_argument("--no-plot", action="store_true")
    sp.set_defaults(func=_cmd_density)

    sp = sub.add_parser("rainbow", help="rainbow path search on an instance file")
    sp.add_argument("--instance-file", required=True)
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--exhaustive", action="store_true")
    sp.set_defaults(func=_cmd_rainbow)

    sp = sub.add_parser("run", help="run a key=value experiment config")
    sp.add_argument("config")
    sp.set_defaults(func=_cmd_run)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
