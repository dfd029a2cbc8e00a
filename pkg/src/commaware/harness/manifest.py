"""Reference properties of the thirteen benchmark networks.

Datasets are not shipped. When a network in a run carries one of these
names, its size after LCC extraction is checked against the reference.
Values are ``(N, |E|, <k>, <d>, density, transitivity, assortativity, source)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReferenceNetwork:
    name: str
    n_nodes: int
    n_edges: int
    avg_degree: float
    avg_distance: float
    density: float
    transitivity: float
    assortativity: float
    source: str
    lcc: bool


TABLE = [
    ReferenceNetwork("euroroad", 1039, 1305, 2.51, 18.39, 0.002, 0.035, 0.090, "networkrepository.com", True),
    ReferenceNetwork("hamsterster", 1788, 12476, 13.49, 3.45, 0.007, 0.090, -0.088, "konect.cc", True),
    ReferenceNetwork("kegg_metabolic", 1865, 5769, 6.19, 3.12, 0.003, 0.030, -0.224, "networks.skewed.de", True),
    ReferenceNetwork("human_protein", 2217, 6418, 5.78, 3.84, 0.002, 0.007, -0.331, "konect.cc", True),
    ReferenceNetwork("interactome_vidal", 2783, 6007, 4.32, 4.84, 0.002, 0.035, -0.137, "networks.skewed.de", True),
    ReferenceNetwork("grqc", 4158, 13422, 6.45, 6.04, 0.001, 0.628, 0.639, "networkrepository.com", False),
    ReferenceNetwork("powergrid", 4941, 6594, 2.66, 18.98, 0.005, 0.103, 0.003, "konect.cc", False),
    ReferenceNetwork("facebook_politician", 5908, 41729, 14.12, 4.66, 0.002, 0.301, 0.018, "networkrepository.com", False),
    ReferenceNetwork("internet_as", 6474, 12572, 3.88, 3.70, 0.0006, 0.009, -0.181, "networkrepository.com", False),
    ReferenceNetwork("pgp", 10680, 24316, 4.55, 7.48, 0.0004, 0.378, 0.238, "konect.cc", False),
    ReferenceNetwork("dblp", 12494, 49579, 7.94, 4.42, 0.0006, 0.062, -0.046, "networks.skewed.de", True),
    ReferenceNetwork("astroph", 17903, 196972, 22.00, 4.19, 0.001, 0.317, 0.201, "networkrepository.com", True),
    ReferenceNetwork("deezer_eu", 28281, 92752, 6.55, 6.44, 0.002, 0.095, 0.104, "snap.stanford.edu", False),
]

REFERENCE = {r.name: r for r in TABLE}

SIZE_TOLERANCE = 0.02


def _key(name: str) -> str:
    return name.lower().replace("-", "_").replace(" ", "_")


def lookup(name: str) -> ReferenceNetwork | None:
    return REFERENCE.get(_key(name))


def verify_size(name: str, n_nodes: int, n_edges: int, tolerance: float = SIZE_TOLERANCE) -> dict | None:
    """Compare a loaded network with its reference entry.

    Returns ``None`` for unknown names, otherwise a record with an ``ok``
    flag. A mismatch is logged as a dataset-version warning.
    """
    ref = lookup(name)
    if ref is None:
        return None
    dn = abs(n_nodes - ref.n_nodes) / ref.n_nodes
    de = abs(n_edges - ref.n_edges) / ref.n_edges
    ok = dn <= tolerance and de <= tolerance
    if not ok:
        logger.warning("%s: N=%d |E|=%d differ from reference N=%d |E|=%d by more than %.0f%%; "
                       "the dataset version probably differs", name, n_nodes, n_edges,
                       ref.n_nodes, ref.n_edges, 100 * tolerance)
    return {"reference": ref.name, "n_nodes": ref.n_nodes, "n_edges": ref.n_edges, "ok": ok}
