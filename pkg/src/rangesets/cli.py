"""Command line entry points: batch compute, SVG export, threshold
suggestion, the HTTP service and the timing study."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .config import load_config
from .document import RangesetDocument, run_pipeline
from .errors import RangesetsError


@click.group()
def main():
    """Rangeset computation and exploration for 2D embeddings."""


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
def compute(config_path, out_path):
    """Run the batch pipeline and write the result document."""
    doc = run_pipeline(load_config(config_path))
    Path(out_path).write_bytes(doc.to_bytes())
    n_attrs = len(doc.fragment("rangesets"))
    eps = doc.fragment("embedding")["epsilon"]["value"]
    click.echo(f"wrote {out_path}: {n_attrs} rangesets, epsilon={eps:.6g}")


@main.command("export-svg")
@click.option("--doc", "doc_path", required=True, type=click.Path(exists=True))
@click.option("--attr", required=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--width", default=800, show_default=True)
@click.option("--height", default=600, show_default=True)
def export_svg_cmd(doc_path, attr, out_path, width, height):
    """Render one attribute's rangeset from a result document to SVG."""
    import json

    from .svg import export_svg

    doc = RangesetDocument(json.loads(Path(doc_path).read_bytes()))
    Path(out_path).write_bytes(export_svg(doc, attr, width=width, height=height))
    click.echo(f"wrote {out_path}")


@main.command("suggest-eps")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
def suggest_eps(config_path):
    """Print the suggested filter threshold for the configured dataset."""
    from .document import prepare_pipeline

    state = prepare_pipeline(load_config(config_path))
    click.echo(f"{state.suggested:.6g}")


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--frontend", "frontend_dir", default=None, type=click.Path(),
              help="Directory with built UI assets to serve at /")
def serve(config_path, port, host, frontend_dir):
    """Start the interactive exploration service."""
    import uvicorn

    from .service import create_app

    app = create_app(load_config(config_path), frontend_dir=frontend_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command()
@click.option("--n", "sizes", default="1000,2500,5000,10000,20000", show_default=True,
              help="Comma-separated point counts")
@click.option("--bins", default=5, show_default=True)
@click.option("--seed", default=0, show_default=True)
def bench(sizes, bins, seed):
    """Time rangeset computation over uniform random data."""
    from .bench import bench_rangesets, linear_fit_r2

    ns = [int(s) for s in sizes.split(",") if s.strip()]
    rows = bench_rangesets(ns, bins=bins, seed=seed)
    click.echo(f"{'n':>8}  {'rangeset [s]':>12}  {'suggest-eps [s]':>15}")
    for row in rows:
        click.echo(f"{row.n:>8}  {row.rangeset_seconds:>12.3f}  {row.suggest_seconds:>15.3f}")
    r2 = linear_fit_r2([r.n for r in rows], [r.rangeset_seconds for r in rows])
    click.echo(f"linear fit R^2 = {r2:.4f}")


def cli_main():  # pragma: no cover
    try:
        main(standalone_mode=True)
    except RangesetsError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":  # pragma: no cover
    cli_main()
