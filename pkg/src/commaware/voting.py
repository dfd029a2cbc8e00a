"""Schulze aggregation of measure orderings.

Each ballot is a weak order of the candidates (the centrality measures),
derived from the activation sizes observed in one sweep cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from commaware.errors import IncompleteCellError, ParameterError


@dataclass(frozen=True)
class Ballot:
    voter: tuple
    ordering: tuple  # tuple of tie classes, best first; each class is a tuple of candidates

    def positions(self) -> dict:
        return {c: level for level, tied in enumerate(self.ordering) for c in tied}

    def __str__(self) -> str:
        return ">".join("=".join(tied) for tied in self.ordering)


def ballot_from_scores(voter, scores: Mapping[str, float], candidates: Sequence[str]) -> Ballot:
    """Sort candidates by descending score; exactly equal scores tie."""
    levels = sorted({scores[c] for c in candidates}, reverse=True)
    ordering = tuple(tuple(c for c in candidates if scores[c] == s) for s in levels)
    return Ballot(tuple(voter), ordering)


def build_ballots(cells: Mapping[tuple, Mapping[str, float]], candidates: Sequence[str]) -> list[Ballot]:
    """One ballot per cell.

    ``cells`` maps a voter id such as ``(network, threshold, fraction)`` to
    the mean activation of every candidate in that cell.
    """
    ballots = []
    for voter, scores in cells.items():
        missing = [c for c in candidates if c not in scores]
        if missing:
            raise IncompleteCellError(f"cell {voter} lacks measure(s): {', '.join(missing)}")
        ballots.append(ballot_from_scores(voter, scores, candidates))
    return ballots


@dataclass(frozen=True, eq=False)
class MarginMatrix:
    candidates: tuple
    values: np.ndarray  # values[d, e] = #(d strictly above e) - #(e strictly above d)

    def __getitem__(self, pair):
        d, e = pair
        return int(self.values[self.candidates.index(d), self.candidates.index(e)])


def margin_matrix(ballots: Sequence[Ballot], candidates: Sequence[str] | None = None) -> MarginMatrix:
    if not ballots:
        raise ParameterError("margin matrix needs at least one ballot")
    if candidates is None:
        candidates = [c for tied in ballots[0].ordering for c in tied]
    candidates = tuple(candidates)
    values = np.zeros((len(candidates), len(candidates)), dtype=np.int64)
    for b in ballots:
        pos = b.positions()
        level = np.array([pos[c] for c in candidates])
        values += np.sign(level[None, :] - level[:, None]).astype(np.int64)
    return MarginMatrix(candidates, values)


def strongest_paths(m: MarginMatrix | np.ndarray) -> np.ndarray:
    """Widest-path closure of the margins (Floyd-Warshall max-min relaxation).

    The diagonal is meaningless and left at 0.
    """
    st = np.array(m.values if isinstance(m, MarginMatrix) else m, dtype=np.int64, copy=True)
    n = len(st)
    for x in range(n):
        for d in range(n):
            if d == x:
                continue
            for e in range(n):
                if e == x or e == d:
                    continue
                via = min(st[d, x], st[x, e])
                if via > st[d, e]:
                    st[d, e] = via
    np.fill_diagonal(st, 0)
    return st


@dataclass(frozen=True)
class SchulzeResult:
    candidates: tuple
    order: tuple
    beat_counts: dict
    tied: bool

    @property
    def ranks(self) -> dict:
        return {c: i + 1 for i, c in enumerate(self.order)}

    @property
    def winner(self):
        """Candidate beating every other one, if any."""
        top = self.order[0]
        return top if self.beat_counts[top] == len(self.candidates) - 1 else None


def schulze_order(st: np.ndarray, candidates: Sequence[str]) -> SchulzeResult:
    """Order candidates by how many others they beat (``st[d,e] > st[e,d]``).

    Equal beat counts fall back to candidate order; ``tied`` reports whether
    that fallback was needed.
    """
    candidates = tuple(candidates)
    n = len(candidates)
    beats = [int(sum(st[d, e] > st[e, d] for e in range(n) if e != d)) for d in range(n)]
    idx = sorted(range(n), key=lambda d: (-beats[d], d))
    tied = len(set(beats)) < n
    return SchulzeResult(candidates, tuple(candidates[i] for i in idx),
                         {c: beats[i] for i, c in enumerate(candidates)}, tied)


def schulze(ballots: Sequence[Ballot], candidates: Sequence[str]) -> SchulzeResult:
    m = margin_matrix(ballots, candidates)
    return schulze_order(strongest_paths(m), candidates)
