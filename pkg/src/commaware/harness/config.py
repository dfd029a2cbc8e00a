"""Experiment configuration: a flat ``key = value`` text file.

Example::

    # one line per network: name, edge list, optional partition file
    network = pgp data/pgp.edges data/pgp.clu
    network = toy data/toy.edges
    measures = COMM, CBC, CBM, CHB, MV, PC, KSC
    thresholds = 0.4, 0.7, random
    runs = 50
    master_seed = 2022
    R = 1.0
    delta = 0.5
    fractions = 100
    fraction_max = 0.5
    include_zero = false
    fallback_communities = false
    lpa_seed = 0
    lcc = true
    output = results

Relative paths are resolved against the config file's directory.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from commaware.centrality import MEASURES
from commaware.diffusion import ThresholdSpec
from commaware.errors import ParameterError

WORKERS_ENV = "COMMAWARE_WORKERS"


@dataclass(frozen=True)
class NetworkEntry:
    name: str
    edges: Path
    partition: Path | None = None


@dataclass
class ExperimentConfig:
    networks: list
    output: Path
    measures: tuple = MEASURES
    thresholds: tuple = (ThresholdSpec.fixed(0.4), ThresholdSpec.fixed(0.7))
    n_fractions: int = 100
    fraction_max: float = 0.5
    include_zero: bool = False
    runs: int = 50
    master_seed: int = 0
    R: float = 1.0
    delta: float = 0.5
    fallback_communities: bool = False
    lpa_seed: int = 0
    lcc: bool = True

    def __post_init__(self):
        if not self.networks:
            raise ParameterError("config needs at least one network")
        if not self.measures:
            raise ParameterError("config needs at least one measure")
        bad = [m for m in self.measures if m not in MEASURES]
        if bad:
            raise ParameterError(f"unknown measure(s): {', '.join(bad)}")
        if self.runs < 1:
            raise ParameterError("runs must be at least 1")
        if self.n_fractions < 1 or not 0 < self.fraction_max <= 0.5:
            raise ParameterError("fraction grid must lie in [0, 0.5]")
        names = [n.name for n in self.networks]
        if len(set(names)) != len(names):
            raise ParameterError("network names must be unique")

    @property
    def fractions(self) -> list[float]:
        """``n_fractions`` evenly spaced values ending at ``fraction_max`` (plus 0 if asked)."""
        step = self.fraction_max / self.n_fractions
        grid = [round(step * i, 12) for i in range(1, self.n_fractions + 1)]
        return ([0.0] if self.include_zero else []) + grid


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ParameterError(f"not a boolean: {text!r}")


def parse_thresholds(text: str, master_seed: int) -> tuple:
    specs = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok.lower() in ("random", "uniform", "u[0,1]"):
            specs.append(ThresholdSpec.uniform(master_seed))
        else:
            specs.append(ThresholdSpec.fixed(float(tok)))
    return tuple(specs)


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    base = path.parent
    networks = []
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParameterError(f"{path}:{lineno}: expected 'key = value'")
            key, val = (s.strip() for s in line.split("=", 1))
            if key == "network":
                parts = val.split()
                if len(parts) not in (2, 3):
                    raise ParameterError(f"{path}:{lineno}: network needs 'name edges [partition]'")
                part = base / parts[2] if len(parts) == 3 else None
                networks.append(NetworkEntry(parts[0], base / parts[1], part))
            else:
                values[key] = val

    seed = int(values.pop("master_seed", 0))
    kwargs = dict(master_seed=seed)
    if "measures" in values:
        kwargs["measures"] = tuple(m.strip().upper() for m in values.pop("measures").split(",") if m.strip())
    kwargs["thresholds"] = parse_thresholds(values.pop("thresholds", "0.4, 0.7, random"), seed)
    conv = {"runs": int, "fractions": int, "fraction_max": float, "include_zero": _bool, "R": float,
            "delta": float, "fallback_communities": _bool, "lpa_seed": int, "lcc": _bool}
    for key, fn in conv.items():
        if key in values:
            kwargs["n_fractions" if key == "fractions" else key] = fn(values.pop(key))
    output = base / values.pop("output", "results")
    if values:
        raise ParameterError(f"{path}: unknown key(s): {', '.join(sorted(values))}")
    return ExperimentConfig(networks=networks, output=output, **kwargs)


def default_workers() -> int:
    return max(1, int(os.environ.get(WORKERS_ENV, "1")))
