"""Expected reconstruction accuracy and rank-accuracy correlation analysis.

Accuracy is the probability-weighted fraction of correctly reconstructed
link/non-link entries over all ordered pairs, <A> = (<TP> + <TN>) / (N(N-1)).
Undirected graphs evaluate ordered pairs symmetrically, which leaves the
value unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, SolverError, UndefinedCorrelationError
from .graphs import Graph
from .maxent import ProbMatrix, SolverOptions, solve_benchmark, solve_conditioned_set
from .centrality import RankVector


def expected_accuracy(pm: ProbMatrix, g: Graph) -> float:
    """<A> of a probability matrix against the observed adjacency of g."""
    if pm.n != g.n or pm.directed != g.directed:
        raise InputError("probability matrix and graph must match in size and directedness")
    if g.n < 2:
        raise InputError("accuracy needs at least two nodes")
    a = g.adjacency()
    terms = a * pm.p + (1.0 - a) * (1.0 - pm.p)
    np.fill_diagonal(terms, 0.0)
    return float(terms.sum() / (g.n * (g.n - 1)))


def node_accuracy(g: Graph, node: int, opts: SolverOptions | None = None) -> float:
    """Accuracy achieved by conditioning on `node`'s exact link pattern."""
    pm = solve_conditioned_set(g, [node], opts)
    return expected_accuracy(pm, g)


def pearson(x, y) -> float:
    """Product-moment correlation; raises if either input has zero variance."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or len(x) < 2:
        raise InputError("pearson needs two equal-length vectors of length >= 2")
    dx = x - x.mean()
    dy = y - y.mean()
    sx = float(np.sqrt((dx * dx).sum()))
    sy = float(np.sqrt((dy * dy).sum()))
    if sx == 0.0 or sy == 0.0:
        raise UndefinedCorrelationError("correlation undefined for zero-variance input")
    return float((dx * dy).sum() / (sx * sy))


@dataclass
class AccuracyReport:
    A_benchmark: float
    A: np.ndarray                      # per-node accuracy under conditioning
    correlations: dict[str, float | None]  # None where undefined
    failed: np.ndarray                 # bool; conditioned solve failed


def accuracy_report(g: Graph, ranks: list[RankVector],
                    opts: SolverOptions | None = None) -> AccuracyReport:
    """Per-node accuracies plus Pearson r against each rescaled rank vector.

    Rank vectors with zero variance get a None correlation instead of
    aborting the report; per-node solver failures are flagged and excluded
    from the correlations.
    """
    opts = opts or SolverOptions()
    benchmark = solve_benchmark(g, opts)
    a_bench = expected_accuracy(benchmark, g)

    acc = np.full(g.n, np.nan)
    for i in range(g.n):
        try:
            acc[i] = expected_accuracy(solve_conditioned_set(g, [i], opts), g)
        except SolverError:
            pass
    failed = np.isnan(acc)
    ok = ~failed

    correlations: dict[str, float | None] = {}
    for rank in ranks:
        if len(rank.rescaled) != g.n:
            raise InputError(f"rank vector {rank.index_name!r} has wrong length")
        try:
            correlations[rank.index_name] = pearson(acc[ok], rank.rescaled[ok])
        except UndefinedCorrelationError:
            correlations[rank.index_name] = None
    return AccuracyReport(A_benchmark=a_bench, A=acc,
                          correlations=correlations, failed=failed)
