"""Ensemble Shannon entropies and the uncertainty-reduction ranking index.

All entropies are in nats. The index of node i is

    I_i = 1 - S_(i) / S_0

where S_0 is the entropy of the degree-constrained benchmark ensemble and
S_(i) the entropy after additionally pinning node i's exact link pattern and
re-solving the reduced degree constraints.

Boundary handling: entries pinned by *conditioning* are genuine knowledge and
carry zero entropy. Entries pinned by *peeling* (saturated degrees, see
maxent) sit at the boundary limit of the solution; for ranking purposes each
such entry is scored at a small regularization `limit_eps` away from the
boundary. This keeps the ratio well defined on graphs whose benchmark is
exactly deterministic apart from saturated hubs (a star graph being the
canonical case: the center scores 1, a leaf scores 1/(n-1)). Fully pinned or
zero-entropy benchmarks have no free structure left to explain and raise
UndefinedIndexError. The standalone entropy functions default to the strict
convention (limit_eps = 0) in which boundary entries contribute nothing.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InputError, SolverError, UndefinedIndexError
from .graphs import DegreeSeq, Graph, degree_sequence
from .maxent import (FORCED_LIM, FORCED_OBS, ProbMatrix, SolverOptions,
                     solve_benchmark, solve_conditioned_set)

LOG_CLIP = 1e-15           # clamp inside logarithms only, never in residuals
DEFAULT_LIMIT_EPS = 1e-10  # regularization distance for peeled (boundary) entries


def _h(p: np.ndarray) -> np.ndarray:
    """Elementwise -[p ln p + (1-p) ln(1-p)] with 0 ln 0 := 0."""
    p = np.asarray(p, dtype=float)
    return -(p * np.log(np.clip(p, LOG_CLIP, None))
             + (1.0 - p) * np.log(np.clip(1.0 - p, LOG_CLIP, None)))


def _entry_entropies(pm: ProbMatrix, limit_eps: float) -> np.ndarray:
    """Per-entry entropy matrix honoring the forced-mask conventions."""
    h = _h(pm.p)
    h[pm.forced == FORCED_OBS] = 0.0
    h[pm.forced == FORCED_LIM] = _h(1.0 - limit_eps) if limit_eps > 0.0 else 0.0
    np.fill_diagonal(h, 0.0)
    return h


def benchmark_entropy(pm: ProbMatrix, limit_eps: float = 0.0):
    """Benchmark entropy S_0 and per-node contributions.

    Undirected matrices sum each unordered pair once; directed matrices sum
    all ordered pairs. In both cases S_0 = (1/2) sum_i contrib_i exactly,
    with a directed node's contribution covering its row and column terms.
    """
    h = _entry_entropies(pm, limit_eps)
    if pm.directed:
        contrib = h.sum(axis=1) + h.sum(axis=0)
        s0 = float(h.sum())
    else:
        contrib = h.sum(axis=1)
        s0 = 0.5 * float(h.sum())
    return s0, contrib


def conditioned_entropy(g: Graph, node: int, opts: SolverOptions | None = None,
                        limit_eps: float = 0.0) -> float:
    """Entropy of the ensemble conditioned on `node`'s exact link pattern."""
    pm = solve_conditioned_set(g, [node], opts)
    return benchmark_entropy(pm, limit_eps)[0]


@dataclass
class EntropyReport:
    """Full per-node ranking report."""

    n: int
    directed: bool
    S0: float
    S0_contrib: np.ndarray
    S_cond: np.ndarray
    I: np.ndarray
    failed: np.ndarray            # bool; True where the conditioned solve failed
    labels: tuple[str, ...]
    k: np.ndarray | None = None
    k_out: np.ndarray | None = None
    k_in: np.ndarray | None = None

    def to_rows(self):
        """Rows for tabular output: node, label, degrees, entropies, index."""
        rows = []
        for i in range(self.n):
            row = {"node": i, "label": self.labels[i]}
            if self.directed:
                row["k_out"] = int(self.k_out[i])
                row["k_in"] = int(self.k_in[i])
            else:
                row["k"] = int(self.k[i])
            row["S0_contrib"] = float(self.S0_contrib[i])
            row["S_cond"] = None if self.failed[i] else float(self.S_cond[i])
            row["inforank"] = None if self.failed[i] else float(self.I[i])
            rows.append(row)
        return rows

    def to_dict(self):
        return {
            "n": self.n,
            "directed": self.directed,
            "S0": float(self.S0),
            "nodes": self.to_rows(),
            "failed_nodes": [int(i) for i in np.flatnonzero(self.failed)],
        }


def _conditioned_entropy_or_nan(g, i, opts, limit_eps):
    try:
        pm = solve_conditioned_set(g, [i], opts)
    except SolverError:
        return np.nan
    return benchmark_entropy(pm, limit_eps)[0]


def inforank(g: Graph, opts: SolverOptions | None = None,
             limit_eps: float = DEFAULT_LIMIT_EPS, threads: int = 1) -> EntropyReport:
    """Rank every node by the fractional entropy reduction of its ego-network.

    The n conditioned solves are independent; `threads` > 1 runs them in a
    thread pool. Per-node solver failures are flagged in the report instead
    of aborting the whole ranking.
    """
    opts = opts or SolverOptions()
    deg = degree_sequence(g)
    pm = solve_benchmark(g, opts)
    s0, contrib = benchmark_entropy(pm, limit_eps)

    if not pm.free_mask().any():
        raise UndefinedIndexError(
            "benchmark ensemble is fully deterministic (no free entries); "
            "the ranking index is undefined")
    if s0 <= 0.0:
        raise UndefinedIndexError(
            "benchmark entropy is zero; the ranking index is undefined")

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            s_cond = np.array(list(pool.map(
                lambda i: _conditioned_entropy_or_nan(g, i, opts, limit_eps),
                range(g.n))))
    else:
        s_cond = np.array([_conditioned_entropy_or_nan(g, i, opts, limit_eps)
                           for i in range(g.n)])

    failed = np.isnan(s_cond)
    index = 1.0 - s_cond / s0
    return EntropyReport(
        n=g.n, directed=g.directed, S0=s0, S0_contrib=contrib,
        S_cond=s_cond, I=index, failed=failed,
        labels=tuple(g.label(i) for i in range(g.n)),
        k=None if g.directed else deg.k,
        k_out=deg.k_out if g.directed else None,
        k_in=deg.k_in if g.directed else None,
    )


def inforank_subset(g: Graph, nodes, opts: SolverOptions | None = None,
                    limit_eps: float = DEFAULT_LIMIT_EPS) -> float:
    """Joint index of a node subset: pin every link incident to the subset."""
    opts = opts or SolverOptions()
    subset = sorted(set(int(v) for v in nodes))
    if not subset or len(subset) >= g.n:
        raise InputError("subset must be non-empty and proper")

    pm = solve_benchmark(g, opts)
    s0, _ = benchmark_entropy(pm, limit_eps)
    if not pm.free_mask().any() or s0 <= 0.0:
        raise UndefinedIndexError(
            "benchmark ensemble is fully deterministic; subset index undefined")

    cond = solve_conditioned_set(g, subset, opts)
    s_sub = benchmark_entropy(cond, limit_eps)[0]
    return float(1.0 - s_sub / s0)


# ---------------------------------------------------------------------------
# closed-form approximations to the per-node benchmark contribution
# ---------------------------------------------------------------------------

def approx_sparse(deg: DegreeSeq) -> np.ndarray:
    """Sparse-limit estimate of S_0^(i): -k ln(k/sqrt(2L)) + k per side.

    Valid when all p_ij << 1; zero-degree sides contribute 0.
    """
    if deg.directed:
        out = np.zeros(deg.n)
        root_l = np.sqrt(float(deg.L)) if deg.L > 0 else 1.0
        for arr in (deg.k_out, deg.k_in):
            k = arr.astype(float)
            nz = k > 0
            out[nz] += -k[nz] * np.log(k[nz] / root_l) + k[nz]
        return out
    k = deg.k.astype(float)
    out = np.zeros(deg.n)
    nz = k > 0
    if deg.L > 0:
        out[nz] = -k[nz] * np.log(k[nz] / np.sqrt(2.0 * deg.L)) + k[nz]
    return out


def approx_meanfield(deg: DegreeSeq, n: int | None = None) -> np.ndarray:
    """Mean-field estimate of S_0^(i): (n-1) h(k_i/(n-1)) per side."""
    n = n if n is not None else deg.n
    if n < 2:
        return np.zeros(deg.n)
    if deg.directed:
        return (n - 1) * (_h(deg.k_out / (n - 1.0)) + _h(deg.k_in / (n - 1.0)))
    return (n - 1) * _h(deg.k / (n - 1.0))
