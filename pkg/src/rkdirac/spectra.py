"""Operator-norm (largest singular value) estimation for assembled maps.

The power path iterates on the normal-equations operator A^T A (always on the
smaller of the two sides, since blocks map between depth spaces of different
dimension).  Start vectors are deterministic: the normalized all-ones vector
plus one fixed-seed pseudorandom vector.  The second start is not optional
decoration: many commutator blocks here have zero-mean leading singular
vectors, which are exactly orthogonal to the all-ones start, and a single
deterministic start would converge cleanly to the wrong singular value.
Stagnation triggers one further seeded restart; remaining non-convergence
falls back to a dense solve.

Dense solves are used directly for small problems (min dimension <= 1024),
where they are both cheap and certain to meet the accuracy target.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Union

import math

import numpy as np

from .transfer import AssembledMap, OperatorSpec, assemble, dirac_blocks

DENSE_CUTOFF = 1024
_START_SEED = 0x5EED


@dataclass(frozen=True)
class NormEstimate:
    value: float
    iterations: int
    converged: bool
    method: str  # "power" or "dense"


def _as_matrix(m: Union[AssembledMap, np.ndarray]) -> np.ndarray:
    a = m.matrix if isinstance(m, AssembledMap) else np.asarray(m, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def _dense_sigma_max(a: np.ndarray) -> float:
    if min(a.shape) == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[0])


def _power_run(gram_apply, start: np.ndarray, tol: float, max_iter: int):
    """Power iteration on the (symmetric PSD) Gram operator from one start vector.

    Returns (lam, iterations, converged).  lam is a Rayleigh quotient, hence a
    certified lower bound on the top eigenvalue.
    """
    v = start / np.linalg.norm(start)
    lam_prev = None
    stagnant = 0
    for it in range(1, max_iter + 1):
        w = gram_apply(v)
        lam = float(v @ w)
        resid = float(np.linalg.norm(w - lam * v))
        if resid <= max(tol, 1e-15) * max(1.0, abs(lam)):
            return lam, it, True
        nw = float(np.linalg.norm(w))
        if nw == 0.0:
            return 0.0, it, True
        v = w / nw
        if lam_prev is not None and abs(lam - lam_prev) <= 1e-16 * max(1.0, abs(lam)):
            stagnant += 1
            if stagnant >= 50:
                return lam, it, False
        else:
            stagnant = 0
        lam_prev = lam
    return (lam_prev if lam_prev is not None else 0.0), max_iter, False


def _power_sigma_max(a: np.ndarray, tol: float, max_iter: int):
    rows, cols = a.shape
    if min(rows, cols) == 0 or not a.any():
        return 0.0, 0, True
    if cols <= rows:
        dim = cols
        gram_apply = lambda v: a.T @ (a @ v)
    else:
        dim = rows
        gram_apply = lambda v: a @ (a.T @ v)
    rng = np.random.default_rng(_START_SEED)
    starts = [np.ones(dim), rng.standard_normal(dim)]
    best_lam, total_it, best_ok = -np.inf, 0, False
    for k, start in enumerate(starts):
        lam, it, ok = _power_run(gram_apply, start, tol, max_iter)
        total_it += it
        if not ok and k == len(starts) - 1:
            # one further seeded restart before giving up on the power path
            lam2, it2, ok2 = _power_run(gram_apply, rng.standard_normal(dim), tol, max_iter)
            total_it += it2
            if lam2 > lam:
                lam, ok = lam2, ok2
        if lam > best_lam:
            best_lam, best_ok = lam, ok
    return math.sqrt(max(best_lam, 0.0)), total_it, best_ok


def operator_norm(
    m: Union[AssembledMap, np.ndarray],
    tol: float = 1e-12,
    max_iter: int = 20000,
    method: str = "auto",
) -> NormEstimate:
    """Largest singular value of an assembled map.

    method="power" forces the power path (no fallback), method="dense" forces
    a dense solve, method="auto" picks dense for small matrices and falls back
    to dense whenever the power path fails to converge.
    """
    a = _as_matrix(m)
    if method not in ("auto", "power", "dense"):
        raise ValueError(f"unknown method {method!r}")
    if method == "dense" or (method == "auto" and min(a.shape) <= DENSE_CUTOFF):
        return NormEstimate(_dense_sigma_max(a), 0, True, "dense")
    sigma, iters, ok = _power_sigma_max(a, tol, max_iter)
    if method == "power":
        return NormEstimate(sigma, iters, ok, "power")
    if ok:
        return NormEstimate(sigma, iters, True, "power")
    return NormEstimate(_dense_sigma_max(a), iters, True, "dense")


def block_pair_norm(
    upper: OperatorSpec,
    lower: OperatorSpec,
    depth: int,
    tol: float = 1e-12,
    method: str = "auto",
):
    """Norms of an anti-diagonal block pair at a given input depth.

    Returns (value, upper_estimate, lower_estimate); the block-operator norm
    is the max of the two block norms.
    """
    eu = operator_norm(assemble(upper, depth), tol=tol, method=method)
    el = operator_norm(assemble(lower, depth), tol=tol, method=method)
    return max(eu.value, el.value), eu, el


@dataclass(frozen=True)
class SweepPoint:
    depth: int
    value: float
    iterations: int
    method: str
    converged: bool
    plateau: bool


def depth_sweep(
    op: OperatorSpec,
    depths: Iterable[int],
    tol: float = 1e-12,
    method: str = "auto",
    plateau_tol: float = 1e-10,
) -> List[SweepPoint]:
    """Dirac-commutator norm of op across input depths, with plateau flags.

    Truncation can only grow the norm, so the values are nondecreasing;
    consecutive values within plateau_tol flag a plateau.
    """
    upper, lower = dirac_blocks(op)
    points: List[SweepPoint] = []
    prev = None
    for d in sorted(set(int(d) for d in depths)):
        value, eu, el = block_pair_norm(upper, lower, d, tol=tol, method=method)
        est = eu if eu.value >= el.value else el
        plateau = prev is not None and abs(value - prev) <= plateau_tol
        points.append(
            SweepPoint(
                depth=d,
                value=value,
                iterations=eu.iterations + el.iterations,
                method=est.method,
                converged=eu.converged and el.converged,
                plateau=plateau,
            )
        )
        prev = value
    return points
