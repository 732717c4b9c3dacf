"""Spectral norms and the degree-based bounds on the adjacency operator.

The operator norm of a symmetric matrix equals its spectral radius.  For the
adjacency matrix A of a graph with max degree v_max the sandwich

    max over labelling prefixes of the prefix-average degree  <=  ||A||  <=  v_max

holds, where the prefix average at j counts the bonds inside the induced
subgraph on nodes 0..j-1 (degrees taken there, not in the full graph).  The
lower bound is the finite analogue of a limsup over an exhausting labelled
sequence, so it depends on the node labelling; we report the best prefix.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from .graph import build_binary_tree, build_cycle, build_path, component_count
from .operators import LinearMap, adjacency_map, coboundary_map

DENSE_CUTOFF = 64  # spectral_norm falls back to a full eigendecomposition below this


@dataclass(frozen=True)
class PowerIterationResult:
    estimate: float
    iterations: int
    converged: bool
    residual: float


@dataclass(frozen=True)
class NormBounds:
    lower: float
    upper: float
    estimate: float


@dataclass(frozen=True)
class TruncationReport:
    family: str
    depths: tuple[int, ...]
    sizes: tuple[int, ...]
    norms: tuple[float, ...]
    monotone: bool

    def to_csv(self):
        lines = ["depth,nodes,norm"]
        lines += [f"{d},{s},{x:.12g}" for d, s, x in zip(self.depths, self.sizes, self.norms)]
        return "\n".join(lines) + "\n"


def _as_sparse(m):
    if isinstance(m, LinearMap):
        m = m.matrix
    if sp.issparse(m):
        return sp.csr_array(m).astype(float)
    return sp.csr_array(np.asarray(m, dtype=float))


def power_iteration_norm(m, tol=1e-12, max_iter=200_000):
    """Largest singular value of a symmetric matrix via power iteration on M^2.

    Squaring makes the dominant eigenvalue nonnegative, so bipartite +-lambda
    pairs cannot stall the iteration.  The start vector is all-ones plus a
    fixed seeded perturbation (an exactly orthogonal start would otherwise be
    possible).  Convergence is declared when the Rayleigh residual
    ||M^2 v - rho v|| drops below tol * max(rho, 1).
    """
    M = _as_sparse(m)
    if M.shape[0] != M.shape[1]:
        raise ValueError("power iteration needs a square matrix")
    n = M.shape[0]
    if n == 0:
        return PowerIterationResult(0.0, 0, True, 0.0)
    rng = np.random.default_rng(1729)
    v = np.ones(n) + 0.01 * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    rho = 0.0
    residual = np.inf
    for it in range(1, max_iter + 1):
        w = M @ (M @ v)
        norm_w = np.linalg.norm(w)
        if norm_w == 0.0:
            return PowerIterationResult(0.0, it, True, 0.0)
        rho = float(v @ w)
        residual = float(np.linalg.norm(w - rho * v))
        v = w / norm_w
        if residual <= tol * max(rho, 1.0):
            return PowerIterationResult(float(np.sqrt(max(rho, 0.0))), it, True, residual)
    return PowerIterationResult(float(np.sqrt(max(rho, 0.0))), max_iter, False, residual)


def spectral_norm(m, tol=1e-12, method="auto", max_iter=200_000):
    """Operator norm (= spectral radius) of a symmetric matrix.

    method 'auto' uses a dense symmetric eigendecomposition up to
    DENSE_CUTOFF rows and power iteration above; 'dense'/'power' force one
    path.  A non-converged power iteration warns and returns its last
    estimate.
    """
    M = _as_sparse(m)
    if M.shape[0] != M.shape[1]:
        raise ValueError("spectral_norm needs a square symmetric matrix")
    asym = M - M.T
    scale = max(1.0, float(np.max(np.abs(M.data))) if M.nnz else 0.0)
    if asym.nnz and float(np.max(np.abs(asym.data))) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    if method not in ("auto", "dense", "power"):
        raise ValueError(f"unknown method {method!r}")
    if method == "dense" or (method == "auto" and M.shape[0] <= DENSE_CUTOFF):
        if M.shape[0] == 0:
            return 0.0
        eigs = np.linalg.eigvalsh(M.toarray())
        return float(np.max(np.abs(eigs)))
    result = power_iteration_norm(M, tol=tol, max_iter=max_iter)
    if not result.converged:
        warnings.warn(
            f"power iteration did not converge (residual {result.residual:.3g}); "
            "returning last estimate", RuntimeWarning)
    return result.estimate


def operator_norm(m, tol=1e-12, method="auto", max_iter=200_000):
    """Largest singular value of a general (rectangular) map via M* M."""
    M = _as_sparse(m)
    G = M.T @ M if M.shape[0] >= M.shape[1] else M @ M.T
    G = sp.csr_array((G + G.T) * 0.5)  # symmetrize away rounding noise
    return float(np.sqrt(max(spectral_norm(G, tol=tol, method=method,
                                           max_iter=max_iter), 0.0)))


def prefix_average_degrees(g):
    """Prefix averages 2*bonds(G_j)/j for the induced subgraphs on nodes 0..j-1."""
    n = g.node_count
    averages = np.zeros(n)
    inside = 0
    for j in range(1, n + 1):
        new = j - 1
        inside += sum(1 for k in g.adjacency[new] if k < new)
        averages[j - 1] = 2.0 * inside / j
    return averages


def adjacency_norm_bounds(g, tol=1e-12):
    """Best prefix-average lower bound, v_max upper bound and the computed norm."""
    if g.node_count == 0:
        return NormBounds(0.0, 0.0, 0.0)
    lower = float(np.max(prefix_average_degrees(g)))
    upper = float(np.max(g.degrees)) if g.node_count else 0.0
    estimate = spectral_norm(adjacency_map(g), tol=tol)
    assert lower <= estimate + 1e-8 and estimate <= upper + 1e-8
    return NormBounds(lower, upper, estimate)


_FAMILIES = {
    "binary_tree": lambda d: build_binary_tree(d),
    "tree": lambda d: build_binary_tree(d),
    "path": lambda d: build_path(d),
    "cycle": lambda d: build_cycle(d),
}


def truncation_norm_sequence(family, depths):
    """Adjacency norms along a nested family of truncations.

    For nested graphs the norms are nondecreasing (principal minors (P A P)
    cannot beat A); the report's ``monotone`` flag checks this within solver
    tolerance.  Binary-tree norms stay below 2*sqrt(2), the norm of the
    infinite tree.
    """
    depths = list(depths)
    if not depths:
        raise ValueError("need at least one depth")
    if any(b <= a for a, b in zip(depths, depths[1:])):
        raise ValueError("depths must be strictly increasing")
    if family not in _FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    graphs = [_FAMILIES[family](d) for d in depths]
    norms = [spectral_norm(adjacency_map(g)) for g in graphs]
    monotone = all(b >= a - 1e-9 for a, b in zip(norms, norms[1:]))
    return TruncationReport(family, tuple(depths), tuple(g.node_count for g in graphs),
                            tuple(norms), monotone)


def binary_tree_average_degree(levels, count_root=True):
    """Average degree of the depth-``levels`` truncation of the infinite binary tree.

    The truncation has 2**(levels+1) - 1 nodes and, being a tree, degree sum
    exactly twice its bond count.  With ``count_root=False`` the root is
    dropped from the denominator (the closed-form level count starts at level
    one), which makes the ratio exactly 2 for every depth; the full-node-count
    average approaches 2 from below as the depth grows.
    """
    if levels < 1:
        raise ValueError("need at least one level")
    nodes = 2 ** (levels + 1) - 1
    degree_sum = 2 * (nodes - 1)
    denominator = nodes if count_root else nodes - 1
    return degree_sum / denominator


@dataclass(frozen=True)
class CycleSpaceDims:
    rank_dstar: int
    kernel_dim: int
    components: int


def cycle_space_dims(g, rank_tol=1e-9):
    """Rank and kernel dimension of d* (the cycle subspace), plus component count.

    rank(d*) = n - c and dim Ker(d*) = sum(v_i) - (n - c); the numerical rank
    is cross-checked against the traversal component count.
    """
    c = component_count(g)
    n, m = g.node_count, g.directed_edge_count
    if m == 0:
        rank = 0
    else:
        dstar = coboundary_map(g).adjoint().toarray().astype(float)
        svals = np.linalg.svd(dstar, compute_uv=False)
        rank = int(np.sum(svals > rank_tol * svals[0])) if svals.size else 0
    assert rank == n - c, f"numerical rank {rank} != n - c = {n - c}"
    return CycleSpaceDims(rank, m - rank, c)


def rational_rank(matrix):
    """Exact rank over the rationals by fraction-free Gaussian elimination.

    Oracle for the dimension theorems; intended for small integer matrices.
    """
    rows = [[Fraction(int(x)) for x in row] for row in np.asarray(matrix)]
    rank = 0
    n_cols = len(rows[0]) if rows else 0
    pivot_row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(pivot_row, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        pv = rows[pivot_row][col]
        for r in range(pivot_row + 1, len(rows)):
            if rows[r][col] != 0:
                factor = rows[r][col] / pv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        rank += 1
        if pivot_row == len(rows):
            break
    return rank
