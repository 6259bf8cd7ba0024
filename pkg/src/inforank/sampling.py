"""Bernoulli sampling of graphs from a probability matrix.

Sample t of a run uses the derived seed (seed, t), so samples are mutually
independent, individually reproducible and safe to generate in parallel.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graphs import Graph, make_graph
from .maxent import ProbMatrix


@dataclass(frozen=True)
class SampleSpec:
    count: int
    seed: int
    conditioned_on: int | None = None

    def __post_init__(self):
        if self.count < 1:
            raise InputError("sample count must be >= 1")


def sample_graph(pm: ProbMatrix, seed) -> Graph:
    """One graph draw: each free entry is an independent Bernoulli(p_ij).

    Undirected matrices use a single draw per unordered pair; entries pinned
    at 0 or 1 are copied deterministically by the same comparison.
    """
    rng = np.random.default_rng(seed)
    r = rng.random((pm.n, pm.n))
    if pm.directed:
        hit = r < pm.p
        np.fill_diagonal(hit, False)
        edges = list(zip(*np.nonzero(hit)))
    else:
        hit = np.triu(r, 1) < np.triu(pm.p, 1)
        edges = list(zip(*np.nonzero(hit)))
    return make_graph(pm.n, [(int(i), int(j)) for i, j in edges], directed=pm.directed)


def sample_ensemble(pm: ProbMatrix, spec: SampleSpec):
    """Yield spec.count independent draws with per-sample derived seeds."""
    for t in range(spec.count):
        yield sample_graph(pm, seed=(spec.seed, t))


def adjacency_sample(pm: ProbMatrix, seed) -> np.ndarray:
    """Adjacency-matrix variant of sample_graph (used by the risk loop)."""
    rng = np.random.default_rng(seed)
    r = rng.random((pm.n, pm.n))
    if pm.directed:
        a = (r < pm.p).astype(float)
    else:
        upper = np.triu(r, 1) < np.triu(pm.p, 1)
        a = upper.astype(float)
        a = a + a.T
    np.fill_diagonal(a, 0.0)
    return a
