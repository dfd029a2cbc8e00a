"""End-to-end pipeline: load -> partition -> centralities -> LT sweeps -> Schulze.

Bundle layout written by :func:`run_experiment`::

    <output>/metadata.json
    <output>/<network>/labels.csv, partition.txt, stats.csv
    <output>/<network>/scores_<MEASURE>.csv
    <output>/<network>/sweep_<threshold>.csv
    <output>/ballots.csv, elections.csv, consensus.csv, rank_summary.csv
    <output>/figures/curves_<network>_<threshold>.svg, ranks_<threshold>.svg
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from commaware import __version__
from commaware.centrality import MEASURES, compute_measure, rank, write_scores_csv
from commaware.community import detect_label_propagation, link_census, load_partition, modularity, write_partition
from commaware.diffusion import SWEEP_COLUMNS, SweepRow, lt_sweep
from commaware.errors import CommAwareError, IncompleteCellError
from commaware.graph import largest_connected_component, load_edge_list, network_stats, write_label_map
from commaware.harness import manifest
from commaware.harness.config import ExperimentConfig, default_workers
from commaware.harness.plots import emit_curves, emit_rank_boxes, rank_box_stats
from commaware.voting import build_ballots, schulze

logger = logging.getLogger(__name__)


def _fmt(x):
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return x


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _sweep_task(args):
    g, ranking, fractions, spec, runs, network = args
    return lt_sweep(g, ranking, fractions, spec, runs, network)


def _check_inputs(cfg: ExperimentConfig) -> None:
    for net in cfg.networks:
        if not net.edges.is_file():
            raise FileNotFoundError(f"{net.name}: edge list not found: {net.edges}")
        if net.partition is not None and not net.partition.is_file():
            raise FileNotFoundError(f"{net.name}: partition not found: {net.partition}")
        if net.partition is None and not cfg.fallback_communities:
            raise CommAwareError(f"{net.name}: no partition given and fallback_communities is off")


def _prepare_network(cfg: ExperimentConfig, net, out: Path):
    """Load, summarise and score one network; returns (graph, rankings, metadata)."""
    raw = load_edge_list(net.edges)
    g = largest_connected_component(raw) if cfg.lcc else raw
    out.mkdir(parents=True, exist_ok=True)
    write_label_map(g, out / "labels.csv")

    stats = network_stats(g)
    with open(out / "stats.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        row = stats.as_row()
        w.writerow(["network", *row])
        w.writerow([net.name, *(_fmt(v) for v in row.values())])
    check = manifest.verify_size(net.name, g.n_nodes, g.n_edges)

    if net.partition is not None:
        p = load_partition(net.partition, g, unknown="ignore" if cfg.lcc else "error")
        source = {"file": net.partition.name, "sha256": _sha256(net.partition)}
    else:
        p = detect_label_propagation(g, cfg.lpa_seed)
        source = {"label_propagation_seed": cfg.lpa_seed}
    write_partition(g, p, out / "partition.txt")
    census = link_census(g, p)
    fp = p.fingerprint()

    rankings = {}
    mv_empty = []
    for m in cfg.measures:
        scores = compute_measure(m, g, p, census, R=cfg.R, delta=cfg.delta)
        if m == "MV":
            mv_empty = [g.labels[i] for i in scores.params["empty_after_removal"]]
        r = rank(scores)
        rankings[m] = r
        header = {"network": net.name, "measure": m, "partition_fingerprint": fp}
        header.update({k: v for k, v in scores.params.items() if k in ("R", "delta", "signed")})
        write_scores_csv(out / f"scores_{m}.csv", g, [r], header)

    meta = {
        "edges_file": net.edges.name,
        "edges_sha256": _sha256(net.edges),
        "n_nodes_raw": raw.n_nodes,
        "n_edges_raw": raw.n_edges,
        "n_nodes": g.n_nodes,
        "n_edges": g.n_edges,
        "partition": source,
        "partition_fingerprint": fp,
        "n_communities": p.n_communities,
        "modularity": modularity(g, p),
        "reference_check": check,
        "mv_empty_after_removal": mv_empty,
    }
    return g, rankings, meta


def write_sweep_csv(path: Path, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for r in rows:
            w.writerow(r.as_row())


def read_sweep_csv(path) -> list[SweepRow]:
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for rec in csv.DictReader(fh):
            rows.append(SweepRow(
                network=rec["network"], measure=rec["measure"], threshold_kind=rec["threshold_kind"],
                theta_or_seed=float(rec["theta_or_seed"]) if rec["threshold_kind"] == "fixed" else int(rec["theta_or_seed"]),
                fraction=float(rec["fraction"]), mean_activation=float(rec["mean_activation"]),
                std_activation=float(rec["std_activation"]), seed_count=int(rec["seed_count"]),
                runs=int(rec["runs"]), mean_active_count=float(rec.get("mean_active_count") or "nan"),
            ))
    return rows


def _tag(kind: str, value) -> str:
    return f"fixed-{value!r}" if kind == "fixed" else f"random-{value}"


def rank_from_sweeps(rows, out_dir, figures: bool = True) -> dict:
    """Ballots, per-network and global Schulze elections from sweep rows.

    Per-network elections use fractions as voters; the global election per
    threshold pools every (network, fraction) voter. Returns
    ``{threshold_tag: {"networks": {name: SchulzeResult}, "global": SchulzeResult}}``.
    """
    out_dir = Path(out_dir)
    cells = defaultdict(lambda: defaultdict(dict))
    seen = set()
    for r in rows:
        tag = _tag(r.threshold_kind, r.theta_or_seed)
        key = (tag, r.network, r.fraction, r.measure)
        if key in seen:
            raise IncompleteCellError(f"duplicate sweep cell {key}")
        seen.add(key)
        cells[tag][(r.network, r.fraction)][r.measure] = r.mean_activation
    present = {r.measure for r in rows}
    candidates = [m for m in MEASURES if m in present] + sorted(present - set(MEASURES))

    results = {}
    ballot_rows, election_rows, consensus_rows, summary_rows = [], [], [], []
    for tag in sorted(cells):
        ballots = build_ballots({(tag, *voter): s for voter, s in sorted(cells[tag].items())}, candidates)
        by_net = defaultdict(list)
        for b in ballots:
            by_net[b.voter[1]].append(b)
            ballot_rows.append([tag, b.voter[1], _fmt(b.voter[2]), str(b)])
        per_network = {net: schulze(bs, candidates) for net, bs in sorted(by_net.items())}
        pooled = schulze(ballots, candidates)
        results[tag] = {"networks": per_network, "global": pooled}
        for net, res in per_network.items():
            for c in candidates:
                election_rows.append([tag, net, c, res.ranks[c], res.beat_counts[c]])
        for c in candidates:
            consensus_rows.append([tag, c, pooled.ranks[c], pooled.beat_counts[c]])
            s = rank_box_stats([res.ranks[c] for res in per_network.values()])
            summary_rows.append([tag, c, len(per_network), *(_fmt(s[k]) for k in
                                                              ("mean", "whislo", "q1", "med", "q3", "whishi"))])

    out_dir.mkdir(parents=True, exist_ok=True)
    tables = {
        "ballots.csv": (["threshold", "network", "fraction", "ballot"], ballot_rows),
        "elections.csv": (["threshold", "network", "measure", "schulze_rank", "beat_count"], election_rows),
        "consensus.csv": (["threshold", "measure", "schulze_rank", "beat_count"], consensus_rows),
        "rank_summary.csv": (["threshold", "measure", "n_networks", "mean_rank", "min", "q1", "median", "q3",
                              "max"], summary_rows),
    }
    for name, (header, body) in tables.items():
        with open(out_dir / name, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(body)
    if figures:
        emit_rank_boxes({tag: res["networks"] for tag, res in results.items()}, out_dir / "figures")
    return results


def run_experiment(cfg: ExperimentConfig, workers: int | None = None) -> dict:
    """Run the full protocol and write the result bundle to ``cfg.output``.

    Output is identical for any worker count. Returns the metadata dict.
    """
    _check_inputs(cfg)
    workers = workers or default_workers()
    out = Path(cfg.output)
    out.mkdir(parents=True, exist_ok=True)
    fractions = cfg.fractions

    prepared = {}
    net_meta = {}
    for net in cfg.networks:
        logger.info("preparing %s", net.name)
        g, rankings, meta = _prepare_network(cfg, net, out / net.name)
        prepared[net.name] = (g, rankings)
        net_meta[net.name] = meta

    tasks, cell_ids = [], []
    for net in cfg.networks:
        g, rankings = prepared[net.name]
        for spec in cfg.thresholds:
            for m in cfg.measures:
                tasks.append((g, rankings[m], fractions, spec, cfg.runs, net.name))
                cell_ids.append((net.name, spec.tag, m))

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_sweep_task, t) for t in tasks]
            results = []
            for cell, fut in zip(cell_ids, futures):
                try:
                    results.append(fut.result())
                except Exception as exc:
                    raise CommAwareError(f"sweep cell {cell} failed: {exc}") from exc
    else:
        results = []
        for cell, t in zip(cell_ids, tasks):
            try:
                results.append(_sweep_task(t))
            except Exception as exc:
                raise CommAwareError(f"sweep cell {cell} failed: {exc}") from exc

    by_file = defaultdict(list)
    for (name, tag, _), rows in zip(cell_ids, results):
        by_file[(name, tag)].extend(rows)
    all_rows = []
    for (name, tag), rows in by_file.items():
        write_sweep_csv(out / name / f"sweep_{tag}.csv", rows)
        all_rows.extend(rows)

    emit_curves(all_rows, out / "figures")
    rank_from_sweeps(all_rows, out)

    metadata = {
        "version": __version__,
        "measures": list(cfg.measures),
        "thresholds": [{"kind": s.kind, "value": s.value} for s in cfg.thresholds],
        "fractions": fractions,
        "runs_random": cfg.runs,
        "master_seed": cfg.master_seed,
        "R": cfg.R,
        "delta": cfg.delta,
        "lcc": cfg.lcc,
        "seed_rounding": "half-up",
        "update_schedule": "synchronous",
        "child_seed": "SeedSequence(master_seed, blake2b64(network), measure_index, fraction_index, run)",
        "networks": net_meta,
    }
    with open(out / "metadata.json", "w", encoding="utf-8") as fh:
        json.dump(metadata, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return metadata
