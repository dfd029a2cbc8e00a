"""``commaware`` command line."""

from __future__ import annotations

import csv
import logging
import sys
from pathlib import Path

import click

from commaware.centrality import MEASURES, compute_measure, rank, write_scores_csv
from commaware.community import detect_label_propagation, load_partition, modularity
from commaware.diffusion import ThresholdSpec, lt_simulate, lt_sweep, select_seeds
from commaware.errors import CommAwareError
from commaware.graph import largest_connected_component, load_edge_list, network_stats
from commaware.harness.config import default_workers, load_config
from commaware.harness.experiment import read_sweep_csv, rank_from_sweeps, run_experiment


def _load(edgelist, lcc):
    g = load_edge_list(edgelist)
    return largest_connected_component(g) if lcc else g


@click.group()
@click.option("-v", "--verbose", count=True)
def cli(verbose):
    """Community-aware centralities under Linear Threshold diffusion."""
    logging.basicConfig(level=logging.WARNING - 10 * verbose, format="%(levelname)s %(name)s: %(message)s")


@cli.command()
@click.argument("edgelist", type=click.Path(exists=True, dir_okay=False))
@click.option("--lcc/--no-lcc", default=True, help="Restrict to the largest connected component.")
def stats(edgelist, lcc):
    """Print Table-1 style statistics as CSV."""
    s = network_stats(_load(edgelist, lcc)).as_row()
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(list(s))
    w.writerow([repr(v) if isinstance(v, float) else v for v in s.values()])


@cli.command()
@click.argument("edgelist", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", default=0, show_default=True, help="Label propagation seed.")
@click.option("--lcc/--no-lcc", default=True)
def communities(edgelist, seed, lcc):
    """Detect communities by label propagation; prints 'label community' lines."""
    g = _load(edgelist, lcc)
    p = detect_label_propagation(g, seed)
    click.echo(f"# communities={p.n_communities} modularity={modularity(g, p)!r} fingerprint={p.fingerprint()}")
    for label, c in zip(g.labels, p.assignment.tolist()):
        click.echo(f"{label} {c}")


measure_option = click.option("--measure", "-m", type=click.Choice(MEASURES, case_sensitive=False), required=True)


@cli.command()
@click.argument("edgelist", type=click.Path(exists=True, dir_okay=False))
@click.argument("partition", type=click.Path(exists=True, dir_okay=False))
@measure_option
@click.option("--R", "R", default=1.0, show_default=True, help="Comm Centrality scaling factor.")
@click.option("--delta", default=0.5, show_default=True, help="K-shell with Community weight.")
@click.option("--lcc/--no-lcc", default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="CSV file (default stdout).")
def centrality(edgelist, partition, measure, R, delta, lcc, output):
    """Score and rank nodes: node_label,measure,score,rank."""
    g = _load(edgelist, lcc)
    p = load_partition(partition, g, unknown="ignore" if lcc else "error")
    scores = compute_measure(measure.upper(), g, p, R=R, delta=delta)
    meta = {"measure": scores.measure, "partition_fingerprint": p.fingerprint()}
    meta.update({k: v for k, v in scores.params.items() if k in ("R", "delta", "signed")})
    write_scores_csv(output or sys.stdout, g, [rank(scores)], meta)


@cli.command()
@click.argument("edgelist", type=click.Path(exists=True, dir_okay=False))
@click.argument("partition", type=click.Path(exists=True, dir_okay=False))
@measure_option
@click.option("--theta", type=float, help="Fixed threshold for every node.")
@click.option("--random", "random_", is_flag=True, help="Thresholds drawn from U[0,1].")
@click.option("--fraction", "-f", type=float, required=True)
@click.option("--runs", default=50, show_default=True, help="Repetitions for --random.")
@click.option("--seed", default=0, show_default=True, help="Master seed for --random.")
@click.option("--R", "R", default=1.0, show_default=True)
@click.option("--delta", default=0.5, show_default=True)
@click.option("--lcc/--no-lcc", default=True)
def simulate(edgelist, partition, measure, theta, random_, fraction, runs, seed, R, delta, lcc):
    """LT activation size for one measure and seed fraction."""
    if (theta is None) == (not random_):
        raise click.UsageError("give exactly one of --theta or --random")
    g = _load(edgelist, lcc)
    p = load_partition(partition, g, unknown="ignore" if lcc else "error")
    r = rank(compute_measure(measure.upper(), g, p, R=R, delta=delta))
    if theta is not None:
        out = lt_simulate(g, select_seeds(r, fraction, g.n_nodes), theta)
        click.echo(f"seeds={out.seed_count} final_active={out.final_active} "
                   f"activation={out.final_active / g.n_nodes!r} rounds={out.rounds}")
    else:
        row = lt_sweep(g, r, [fraction], ThresholdSpec.uniform(seed), runs, Path(edgelist).stem)[0]
        click.echo(f"seeds={row.seed_count} runs={row.runs} mean_activation={row.mean_activation!r} "
                   f"std_activation={row.std_activation!r}")


@cli.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--workers", type=int, default=None, help="Worker processes (default $COMMAWARE_WORKERS or 1).")
def sweep(config_path, workers):
    """Run the full experiment described by a config file."""
    cfg = load_config(config_path)
    run_experiment(cfg, workers or default_workers())
    click.echo(f"results written to {cfg.output}")


@cli.command(name="rank")
@click.option("--from", "from_dir", type=click.Path(exists=True, file_okay=False), required=True)
@click.option("-o", "--output", type=click.Path(file_okay=False), help="Defaults to the sweep directory.")
def rank_cmd(from_dir, output):
    """Schulze elections from the sweep_*.csv files below a directory."""
    files = sorted(Path(from_dir).rglob("sweep_*.csv"))
    if not files:
        raise click.UsageError(f"no sweep_*.csv files below {from_dir}")
    rows = [r for f in files for r in read_sweep_csv(f)]
    results = rank_from_sweeps(rows, output or from_dir)
    for tag, res in results.items():
        click.echo(f"{tag}: " + " > ".join(res["global"].order))


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="commaware", standalone_mode=False)
    except click.exceptions.Abort:
        return 1
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except (CommAwareError, FileNotFoundError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
