"""Linear Threshold diffusion seeded by the top of a centrality ranking."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from commaware.centrality import MEASURES, Ranking
from commaware.errors import ParameterError
from commaware.graph import Graph


@dataclass(frozen=True)
class ThresholdSpec:
    """Either one fixed threshold for every node or i.i.d. U[0, 1] thresholds."""

    kind: str
    theta: float | None = None
    master_seed: int | None = None

    def __post_init__(self):
        if self.kind == "fixed":
            if self.theta is None or not 0.0 <= self.theta <= 1.0:
                raise ParameterError(f"fixed threshold must lie in [0, 1], got {self.theta}")
        elif self.kind == "random":
            if self.master_seed is None:
                raise ParameterError("random thresholds need a master seed")
        else:
            raise ParameterError(f"unknown threshold kind {self.kind!r}")

    @classmethod
    def fixed(cls, theta: float) -> "ThresholdSpec":
        return cls("fixed", theta=float(theta))

    @classmethod
    def uniform(cls, master_seed: int) -> "ThresholdSpec":
        return cls("random", master_seed=int(master_seed))

    @property
    def value(self):
        """The ``theta_or_seed`` CSV column."""
        return self.theta if self.kind == "fixed" else self.master_seed

    @property
    def tag(self) -> str:
        return f"fixed-{self.theta!r}" if self.kind == "fixed" else f"random-{self.master_seed}"


@dataclass(frozen=True)
class LTOutcome:
    final_active: int
    rounds: int
    per_round_active: tuple
    seed_count: int
    active: np.ndarray


def select_seeds(ranking: Ranking, fraction: float, n: int) -> np.ndarray:
    """First ``round_half_up(fraction * n)`` nodes of the ranking."""
    if not 0.0 <= fraction <= 1.0:
        raise ParameterError(f"fraction must lie in [0, 1], got {fraction}")
    s = min(n, int(math.floor(fraction * n + 0.5)))
    return np.asarray(ranking.order[:s], dtype=np.int64)


def _gather(indptr: np.ndarray, indices: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    """Concatenated neighbor lists of ``nodes``."""
    starts = indptr[nodes]
    lengths = indptr[nodes + 1] - starts
    total = int(lengths.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    shift = np.repeat(starts - np.cumsum(lengths) + lengths, lengths)
    return indices[np.arange(total) + shift]


def lt_simulate(g: Graph, seeds, thresholds) -> LTOutcome:
    """Synchronous LT dynamics until a round activates nobody.

    In round ``t`` an inactive node ``v`` with ``k_v > 0`` activates when
    ``m_v / k_v >= theta_v``, counting active neighbors as of the end of round
    ``t - 1``. Isolated nodes activate only if seeded.
    """
    n = g.n_nodes
    theta = np.broadcast_to(np.asarray(thresholds, dtype=np.float64), (n,))
    k = g.degrees
    active = np.zeros(n, dtype=bool)
    seeds = np.unique(np.asarray(seeds, dtype=np.int64))
    active[seeds] = True
    m = np.zeros(n, dtype=np.int64)
    counts = [int(active.sum())]
    # the first round checks everyone: with theta_v = 0 a node needs no active neighbor
    candidates = np.flatnonzero(~active & (k > 0))
    frontier = seeds
    while True:
        nbrs = _gather(g.indptr, g.indices, frontier)
        if len(nbrs):
            m += np.bincount(nbrs, minlength=n)
        if len(counts) > 1:
            candidates = np.unique(nbrs)
            candidates = candidates[~active[candidates]]
        ok = m[candidates] / k[candidates] >= theta[candidates]
        new = candidates[ok]
        if len(new) == 0:
            break
        active[new] = True
        counts.append(counts[-1] + len(new))
        frontier = new
    return LTOutcome(counts[-1], len(counts) - 1, tuple(counts), len(seeds), active)


def _stable_id(text: str) -> int:
    return int.from_bytes(hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest(), "little")


def child_seed(master_seed: int, network: str, measure: str, fraction_index: int, run: int) -> int:
    """64-bit seed for one simulation, independent of execution order.

    Mixes ``(master_seed, network, measure, fraction_index, run)`` through
    numpy's SeedSequence; string ids are first hashed with BLAKE2b.
    """
    measure_id = MEASURES.index(measure) if measure in MEASURES else _stable_id(measure)
    ss = np.random.SeedSequence([int(master_seed), _stable_id(network), measure_id, int(fraction_index), int(run)])
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class SweepRow:
    network: str
    measure: str
    threshold_kind: str
    theta_or_seed: object
    fraction: float
    mean_activation: float
    std_activation: float
    seed_count: int
    runs: int
    mean_active_count: float

    def as_row(self) -> list:
        return [self.network, self.measure, self.threshold_kind, _fmt(self.theta_or_seed), _fmt(self.fraction),
                _fmt(self.mean_activation), _fmt(self.std_activation), self.seed_count, self.runs,
                _fmt(self.mean_active_count)]


SWEEP_COLUMNS = ["network", "measure", "threshold_kind", "theta_or_seed", "fraction", "mean_activation",
                 "std_activation", "seed_count", "runs", "mean_active_count"]


def _fmt(x) -> str:
    return repr(float(x)) if isinstance(x, (float, np.floating)) else str(x)


def lt_sweep(g: Graph, ranking: Ranking, fractions, spec: ThresholdSpec, runs: int = 1,
             network: str = "network") -> list[SweepRow]:
    """Mean and (population) standard deviation of ``A(t_f) / N`` per fraction.

    Fixed thresholds are deterministic, so ``runs`` is forced to 1. Random
    thresholds are redrawn for every (fraction, run) from ``child_seed``.
    """
    if runs < 1:
        raise ParameterError("runs must be at least 1")
    fractions = [float(f) for f in fractions]
    if any(b < a for a, b in zip(fractions, fractions[1:])):
        raise ParameterError("fractions must be sorted ascending")
    n = g.n_nodes
    measure = ranking.scores.measure
    if spec.kind == "fixed":
        runs = 1
    rows = []
    for fi, f in enumerate(fractions):
        seeds = select_seeds(ranking, f, n)
        sizes = np.empty(runs)
        for r in range(runs):
            if spec.kind == "fixed":
                theta = spec.theta
            else:
                rng = np.random.default_rng(child_seed(spec.master_seed, network, measure, fi, r))
                theta = rng.random(n)
            sizes[r] = lt_simulate(g, seeds, theta).final_active
        rows.append(SweepRow(network, measure, spec.kind, spec.value, f, float(sizes.mean() / n),
                             float(sizes.std() / n), len(seeds), runs, float(sizes.mean())))
    return rows
