"""Batch command-line front end.

Subcommands: stats | color | bounds | neigh. Every report embeds the
resolved run configuration and a format version; CSV column orders are
frozen per subcommand so runs are diffable (runtime columns vary run to
run and are excluded from the determinism guarantee, like timestamps).

Exit codes: 0 success, 2 usage error, 3 input error, 4 internal invariant
violation.
"""

from __future__ import annotations

import io
import json
import sys
import time

import click
import numpy as np

from .bounds import bound_report, heuristic_clique
from .coloring import greedy_color, greedy_recolor, validate_coloring
from .graph import STATS_CSV_COLUMNS, GraphInputError, compute_stats, load_edge_list
from .neighborhood import neighborhood_color_all, neighborhood_feature_export
from .ordering import CATALOG, ScoreContext, canonical_method, compute_ordering
from .decompose import resolve_threads

FORMAT_VERSION = 1


class InputFailure(click.ClickException):
    exit_code = 3


class InternalFailure(click.ClickException):
    exit_code = 4


def _load(path, base_index):
    try:
        return load_edge_list(path, base_index=base_index)
    except GraphInputError as exc:
        raise InputFailure(str(exc)) from exc


def _parse_methods(spec: str) -> list[str]:
    if spec.strip().lower() == "all":
        return list(CATALOG)
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append(canonical_method(tok))
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
    if not out:
        raise click.UsageError("no methods given")
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _csv_report(config: dict, header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write(f"# chroma-report format={FORMAT_VERSION} config={json.dumps(config, sort_keys=True)}\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_cell(x) for x in row) + "\n")
    return buf.getvalue()


def _cell(x) -> str:
    if isinstance(x, float):
        return format(x, ".6g")
    return str(x)


def _json_report(config: dict, payload: dict) -> str:
    return json.dumps({"format": FORMAT_VERSION, "config": config, **payload}, sort_keys=True) + "\n"


_in_path = click.Path(exists=True, dir_okay=False)


@click.group()
@click.version_option()
def main():
    """Greedy coloring toolkit for large sparse networks."""


@main.command()
@click.argument("input", type=_in_path)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--base-index", type=int, default=0)
@click.option("--threads", type=int, default=None)
def stats(input, fmt, out, base_index, threads):
    """Network statistics (triangles, clustering, assortativity, degrees)."""
    from .decompose import vertex_triangles

    g = _load(input, base_index)
    tri = vertex_triangles(g, threads=threads)
    st = compute_stats(g, tri)
    config = {"cmd": "stats", "input": str(input), "base_index": base_index}
    if fmt == "csv":
        _emit(_csv_report(config, STATS_CSV_COLUMNS, [st.to_row()]), out)
    else:
        _emit(_json_report(config, {"stats": json.loads(st.to_json())}), out)


@main.command()
@click.argument("input", type=_in_path)
@click.option("--methods", default="all", help="comma-separated catalog tokens or 'all'")
@click.option("--variant", type=click.Choice(["basic", "recolor"]), default="basic")
@click.option("--direction", type=click.Choice(["max-to-min", "min-to-max"]), default=None)
@click.option("--tiebreak", default="high-id")
@click.option("--seed", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--base-index", type=int, default=0)
@click.option("--threads", type=int, default=None)
def color(input, methods, variant, direction, tiebreak, seed, fmt, out, base_index, threads):
    """Greedy-color the graph under one or more ordering methods."""
    g = _load(input, base_index)
    method_list = _parse_methods(methods)
    ctx = ScoreContext(g, threads=threads)
    runner = greedy_recolor if variant == "recolor" else greedy_color
    rows = []
    results = []
    for m in method_list:
        t0 = time.perf_counter()
        order = compute_ordering(g, m, ctx=ctx, direction=direction, tiebreak=tiebreak, seed=seed)
        t1 = time.perf_counter()
        coloring = runner(g, order)
        t2 = time.perf_counter()
        check = validate_coloring(g, coloring)
        if not check.valid:
            raise InternalFailure(f"method {m} produced an invalid coloring")
        results.append((m, coloring))
        rows.append(
            [
                m,
                variant,
                order.direction,
                coloring.k,
                (t1 - t0) * 1e3,
                (t2 - t1) * 1e3,
                (t2 - t0) * 1e3,
            ]
        )
    config = {
        "cmd": "color",
        "input": str(input),
        "methods": method_list,
        "variant": variant,
        "direction": direction,
        "tiebreak": tiebreak,
        "seed": seed,
        "base_index": base_index,
    }
    ks = [c.k for _, c in results]
    chi_min, chi_max = (min(ks), max(ks)) if ks else (0, 0)
    if fmt == "csv":
        header = ["method", "variant", "direction", "k", "ordering_ms", "coloring_ms", "total_ms"]
        rows.append(["chi_min", variant, "", chi_min, "", "", ""])
        rows.append(["chi_max", variant, "", chi_max, "", "", ""])
        _emit(_csv_report(config, header, rows), out)
    else:
        payload = {
            "results": [
                {"method": m, "k": c.k, "ordering_ms": r[4], "coloring_ms": r[5], "runtime_ms": r[6]}
                for (m, c), r in zip(results, rows)
            ],
            "chi_min": chi_min,
            "chi_max": chi_max,
        }
        _emit(_json_report(config, payload), out)


BOUNDS_CSV_COLUMNS = [
    "n",
    "m",
    "max_degree",
    "degree_ub",
    "core_ub",
    "truss_ub",
    "clique_lb",
    "chi_min",
    "chi_max",
    "verdict_best",
]


@main.command()
@click.argument("input", type=_in_path)
@click.option("--methods", default=None, help="optional coloring sweep for verdicts")
@click.option("--variant", type=click.Choice(["basic", "recolor"]), default="basic")
@click.option("--seed", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--base-index", type=int, default=0)
@click.option("--threads", type=int, default=None)
def bounds(input, methods, variant, seed, fmt, out, base_index, threads):
    """Lower/upper chromatic bounds and optimality verdicts."""
    g = _load(input, base_index)
    ctx = ScoreContext(g, threads=threads)
    core = ctx.core_decomposition
    truss = ctx.truss_decomposition
    clique = heuristic_clique(g, core.core, threads=threads)
    colorings = []
    method_list = _parse_methods(methods) if methods else []
    runner = greedy_recolor if variant == "recolor" else greedy_color
    for m in method_list:
        order = compute_ordering(g, m, ctx=ctx, seed=seed)
        colorings.append(runner(g, order))
    try:
        report = bound_report(g, core, truss, clique, colorings)
    except ValueError as exc:
        raise InternalFailure(str(exc)) from exc
    config = {
        "cmd": "bounds",
        "input": str(input),
        "methods": method_list,
        "variant": variant,
        "seed": seed,
        "base_index": base_index,
    }
    ks = [c.k for c in colorings]
    chi_min = min(ks) if ks else ""
    chi_max = max(ks) if ks else ""
    verdict_best = ""
    if ks:
        verdict_best = report.verdicts[int(np.argmin(ks))]
    if fmt == "csv":
        row = [
            g.n,
            g.m,
            g.max_degree,
            report.ub_degree,
            report.ub_core,
            report.ub_truss,
            report.lb_clique,
            chi_min,
            chi_max,
            verdict_best,
        ]
        _emit(_csv_report(config, BOUNDS_CSV_COLUMNS, [row]), out)
    else:
        payload = json.loads(report.to_json())
        payload["methods"] = [
            {"method": m, "k": c.k, "verdict": v}
            for m, c, v in zip(method_list, colorings, report.verdicts)
        ]
        payload["chi_min"] = chi_min
        payload["chi_max"] = chi_max
        _emit(_json_report(config, {"bounds": payload}), out)


@main.command()
@click.argument("input", type=_in_path)
@click.option("--global-method", default="kcore-vol")
@click.option("--global-direction", type=click.Choice(["max-to-min", "min-to-max"]), default="max-to-min")
@click.option("--local-method", default="kcore-deg-vol")
@click.option("--local-direction", type=click.Choice(["max-to-min", "min-to-max"]), default="max-to-min")
@click.option("--variant", type=click.Choice(["basic", "recolor"]), default="basic")
@click.option("--search", type=click.Choice(["color-centric", "vertex-centric"]), default="color-centric")
@click.option("--pruning", type=click.Choice(["on", "off"]), default="off")
@click.option("--open", "open_", is_flag=True, default=False, help="drop the center vertex from each neighborhood")
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(), default=None, help="prefix for features/CCDF/summary files")
@click.option("--base-index", type=int, default=0)
@click.option("--threads", type=int, default=None)
def neigh(
    input,
    global_method,
    global_direction,
    local_method,
    local_direction,
    variant,
    search,
    pruning,
    open_,
    seed,
    out,
    base_index,
    threads,
):
    """Color every vertex neighborhood; export per-vertex features and CCDFs."""
    g = _load(input, base_index)
    ctx = ScoreContext(g, threads=threads)
    try:
        order = compute_ordering(g, global_method, ctx=ctx, direction=global_direction, seed=seed)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    t0 = time.perf_counter()
    try:
        result = neighborhood_color_all(
            g,
            global_order=order,
            local_method=local_method,
            local_direction=local_direction,
            variant=variant,
            search=search,
            pruning=(pruning == "on"),
            open_neighborhoods=open_,
            threads=threads,
            seed=seed,
            ctx=ctx,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    wall = time.perf_counter() - t0
    config = dict(result.config)
    config.update({"cmd": "neigh", "input": str(input), "base_index": base_index})
    summary = {
        "L": result.local_max,
        "pruned_count": result.pruned_count,
        "runtimes": {"wall_s": wall, "color_s": result.runtime_s},
        "threads": resolve_threads(threads),
    }
    if out:
        feats = neighborhood_feature_export(result) if pruning == "off" else None
        with open(f"{out}.summary.json", "w", encoding="utf-8") as fh:
            fh.write(_json_report(config, summary))
        if feats is not None:
            with open(f"{out}.features.csv", "w", encoding="utf-8") as fh:
                fh.write(_csv_report(config, ["vertex", "colors", "largest_class"], [list(r) for r in feats.rows]))
            with open(f"{out}.ccdf_colors.csv", "w", encoding="utf-8") as fh:
                fh.write(_csv_report(config, ["x", "ccdf"], [list(r) for r in feats.ccdf_colors]))
            with open(f"{out}.ccdf_indep.csv", "w", encoding="utf-8") as fh:
                fh.write(_csv_report(config, ["x", "ccdf"], [list(r) for r in feats.ccdf_largest]))
    click.echo(_json_report(config, summary), nl=False)


if __name__ == "__main__":
    main()
