"""Internal search primitives: sign enumeration, projected ascent, hill climbing.

All routines are pure functions of their inputs and the supplied RNG, so a
fixed seed reproduces results bit for bit (single-threaded).
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from .spaces import dual_witness, lq_norm

DEFAULT_BLOCK = 1 << 15


@lru_cache(maxsize=64)
def sphere_grid(d: int, qf: float, n: int = 512) -> np.ndarray:
    """Deterministic covering of the l_q unit sphere in dimension d <= 3.

    Used to brace low-dimensional dual-ball searches: one matmul scores
    every grid point at once.
    """
    if d == 1:
        pts = np.array([[1.0], [-1.0]])
    elif d == 2:
        ang = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
        pts = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    elif d == 3:
        # Fibonacci lattice on the Euclidean sphere, then renormalized
        i = np.arange(n) + 0.5
        z = 1.0 - 2.0 * i / n
        r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
        phi = math.pi * (1.0 + math.sqrt(5.0)) * i
        pts = np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)
    else:
        raise ValueError("sphere grid only tabulated for d <= 3")
    if qf == math.inf:
        scales = np.abs(pts).max(axis=1)
    else:
        scales = (np.abs(pts) ** qf).sum(axis=1) ** (1.0 / qf)
    pts = pts / scales[:, None]
    pts.flags.writeable = False
    return pts


def sign_patterns(k: int, fix_first: bool = False, block: int = DEFAULT_BLOCK) -> Iterator[np.ndarray]:
    """Yield blocks of +-1 rows enumerating {-1,+1}^k.

    With `fix_first` the first coordinate is pinned to +1, halving the
    enumeration; valid whenever the consumer is invariant under global
    sign flips.
    """
    if k == 0:
        yield np.ones((1, 0))
        return
    nfree = k - 1 if fix_first else k
    total = 1 << nfree
    shifts = np.arange(nfree, dtype=np.uint64)
    for start in range(0, total, block):
        idx = np.arange(start, min(start + block, total), dtype=np.uint64)
        bits = (idx[:, None] >> shifts) & 1
        pm = bits.astype(float) * 2.0 - 1.0
        if fix_first:
            pm = np.hstack([np.ones((pm.shape[0], 1)), pm])
        yield pm


def grid_scores(X: np.ndarray, grid: np.ndarray, pf: float) -> np.ndarray:
    """||X g||_p for every grid row g, in one pass."""
    vals = np.abs(X @ grid.T)  # (k, G)
    if pf == math.inf:
        return vals.max(axis=0)
    if pf == 1.0:
        return vals.sum(axis=0)
    if pf == 2.0:
        return np.sqrt((vals * vals).sum(axis=0))
    return (vals ** pf).sum(axis=0) ** (1.0 / pf)


def weak_p_ascent(
    X: np.ndarray,
    ball_q,
    p: float,
    rng: np.random.Generator,
    restarts: int = 32,
    iters: int = 200,
    tol: float = 1e-10,
    row_starts: int | None = None,
) -> tuple[float, np.ndarray]:
    """Maximize ||X phi||_p over the unit sphere of l_{ball_q}.

    Projected gradient ascent with step halving, restarted from uniform
    random directions plus the per-row dual witnesses, then polished by
    monotone alternating dual updates. The objective is convex in phi, so
    the maximum sits on the sphere; restarts make the boundary search
    reliable at small dimension.
    """
    k, d = X.shape
    pf = float(p)

    def obj(phi: np.ndarray) -> float:
        return lq_norm(X @ phi, pf)

    def weight(r: np.ndarray) -> np.ndarray:
        if pf == 1.0:
            return np.sign(r)
        a = np.abs(r)
        m = a.max()
        if m == 0.0:
            return np.zeros_like(r)
        return np.sign(r) * (a / m) ** (pf - 1.0)

    starts: list[np.ndarray] = []
    nrows = k if row_starts is None else min(k, row_starts)
    for j in range(nrows):
        if X[j].any():
            starts.append(dual_witness(X[j], ball_q))
    if d <= 3:
        # brace the restarts with the best points of a deterministic grid
        grid = sphere_grid(d, float(ball_q))
        scores = grid_scores(X, grid, pf)
        for i in np.argsort(scores)[-3:]:
            starts.append(grid[i])
    for _ in range(restarts):
        v = rng.standard_normal(d)
        n = lq_norm(v, ball_q)
        if n > 0:
            starts.append(v / n)
    if not starts:
        return 0.0, np.zeros(d)

    best_val, best_phi = -1.0, starts[0]
    for phi0 in starts:
        phi = phi0
        f = obj(phi)
        for _ in range(iters):
            g = X.T @ weight(X @ phi)
            gn = float(np.linalg.norm(g))
            if gn == 0.0:
                break
            g /= gn
            t, accepted = 1.0, 0.0
            while t > 1e-12:
                cand = phi + t * g
                n = lq_norm(cand, ball_q)
                if n > 0:
                    cand = cand / n
                    fc = obj(cand)
                    if fc > f:
                        phi, f, accepted = cand, fc, t
                        break
                t *= 0.5
            if accepted == 0.0 or accepted < tol:
                break
        # alternating dual polish: monotone, lands on a ball extreme point
        for _ in range(40):
            g = X.T @ weight(X @ phi)
            if not g.any():
                break
            cand = dual_witness(g, ball_q)
            fc = obj(cand)
            if fc > f + 1e-15:
                phi, f = cand, fc
            else:
                break
        if f > best_val:
            best_val, best_phi = f, phi
    return max(best_val, 0.0), best_phi


def hill_climb(
    f: Callable[[np.ndarray], float],
    x0: np.ndarray,
    rng: np.random.Generator,
    iters: int = 200,
    step: float = 0.5,
    maximize: bool = True,
) -> tuple[float, np.ndarray]:
    """Random-direction local search with adaptive step size.

    Proposals mix full-vector Gaussian moves and single-coordinate moves,
    scaled relative to the current iterate so the search is equivariant
    under rescaling of the instance.
    """
    sgn = 1.0 if maximize else -1.0
    x = np.array(x0, dtype=float)
    fx = sgn * f(x)
    scale = max(float(np.linalg.norm(x)), 1.0)
    for it in range(iters):
        if it % 3 == 2 and x.size > 1:
            d = np.zeros_like(x)
            d[rng.integers(x.size)] = rng.choice([-1.0, 1.0])
        else:
            d = rng.standard_normal(x.size).reshape(x.shape)
            d /= max(np.linalg.norm(d), 1e-300)
        cand = x + step * scale * d
        fc = sgn * f(cand)
        if fc > fx:
            x, fx = cand, fc
            step = min(step * 1.4, 2.0)
        else:
            step *= 0.75
            if step < 1e-12:
                break
    return sgn * fx, x
