"""Command-line front end: single runs, parameter grids, report emission."""

from __future__ import annotations

import csv
import sys
from pathlib import Path

import click

from .config import (
    ALL_SUITES,
    ConfigError,
    GridSpec,
    RunConfig,
    config_from_file,
    grid_from_file,
)
from .reporting import EXIT_CONFIG_ERROR, Report
from .suites import SUITE_FUNCS

TAIL_CSV_COLUMNS = ("k", "tail_norm", "theta", "mu", "c", "M")


def run(config: RunConfig, write_artifacts: bool = True) -> Report:
    """Execute the selected suites in dependency order."""
    report = Report(config=config.to_jsonable())
    config.truncation()  # fail fast on operator-level validation
    tail_rows: list[tuple] = []
    for name in config.suites:
        result = SUITE_FUNCS[name](config)
        if isinstance(result, tuple):
            records, rows = result
            tail_rows.extend(rows)
        else:
            records = result
        report.extend(records)

    if write_artifacts:
        out = Path(config.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(report.to_json() + "\n")
        if tail_rows:
            with open(out / "tail_norms.csv", "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(TAIL_CSV_COLUMNS)
                writer.writerows(tail_rows)
    return report


def grid(template: RunConfig, spec: GridSpec,
         write_artifacts: bool = True) -> list[dict]:
    """Cartesian-product runs; one summary row per (mu, c, theta, M)."""
    rows = []
    for idx, cell in enumerate(spec.cells()):
        base = template.to_jsonable()
        base.update(cell)
        base["output_dir"] = str(Path(template.output_dir) / f"cell{idx:03d}")
        row = {"mu": cell["mu"], "c": cell["c"], "theta": cell["theta"],
               "M": cell["M"]}
        try:
            cfg = RunConfig(**base)
            report = run(cfg, write_artifacts=write_artifacts)
        except ConfigError as exc:
            row["status"] = "config-invalid"
            row["detail"] = str(exc)
            rows.append(row)
            continue
        row["status"] = "pass" if report.ok else "fail"
        row["max_residual"] = report.max_residual()
        for rec in report.records:
            row[rec.check_id] = rec.status
        rows.append(row)

    if write_artifacts:
        out = Path(template.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        fixed = ["mu", "c", "theta", "M", "status", "max_residual", "detail"]
        extra = sorted({k for r in rows for k in r} - set(fixed))
        with open(out / "summary.csv", "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=fixed + extra, restval="")
            writer.writeheader()
            writer.writerows(rows)
    return rows


@click.command()
@click.option("--config", "config_path", type=click.Path(exists=True),
              default=None, help="TOML (or JSON) run configuration.")
@click.option("--mu", type=float, default=None)
@click.option("--c", "c_", type=float, default=None)
@click.option("--theta", type=float, default=None)
@click.option("--M", "-M", "M", type=int, default=None)
@click.option("--buffer", "buffer_", type=int, default=None)
@click.option("--N", "N", type=int, default=None, help="Quotient level.")
@click.option("--suite", "suites", multiple=True,
              type=click.Choice(ALL_SUITES), help="Repeatable suite selector.")
@click.option("--grid-file", type=click.Path(exists=True), default=None,
              help="TOML grid spec with lists mu, c, theta, M.")
@click.option("--out", "out_dir", type=click.Path(), default=None,
              help="Output directory for report.json and CSV files.")
@click.option("--seed", type=int, default=None)
def main(config_path, mu, c_, theta, M, buffer_, N, suites, grid_file,
         out_dir, seed):
    """Run the verification workbench and emit machine-readable reports."""
    overrides = {
        "mu": mu, "c": c_, "theta": theta, "M": M, "buffer": buffer_,
        "N_quotient": N, "suites": list(suites) or None,
        "output_dir": out_dir, "seed": seed,
    }
    try:
        if config_path:
            cfg = config_from_file(config_path, **overrides)
        else:
            defaults = RunConfig().to_jsonable()
            defaults.update({k: v for k, v in overrides.items() if v is not None})
            cfg = RunConfig(**defaults)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG_ERROR)

    try:
        if grid_file:
            spec = grid_from_file(grid_file)
            rows = grid(cfg, spec)
            n_bad = sum(r["status"] != "pass" for r in rows)
            for r in rows:
                click.echo(f"mu={r['mu']} c={r['c']} theta={r['theta']} "
                           f"M={r['M']}: {r['status']}")
            sys.exit(0 if n_bad == 0 else 1)
        report = run(cfg)
        for rec in report.records:
            click.echo(f"[{rec.status.upper():4s}] {rec.check_id} "
                       f"residual={rec.residual:.3e}")
        click.echo(f"{len(report.records)} checks, {report.n_fail} failures; "
                   f"report written to {cfg.output_dir}/report.json")
        sys.exit(report.exit_code())
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG_ERROR)


if __name__ == "__main__":
    main()
