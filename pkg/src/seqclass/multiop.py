"""Continuous n-linear operators between l_q spaces.

An operator is a dense coefficient tensor of shape d_1 x ... x d_n x d_out.
The operator norm is reported as a bracket: the lower end is certified by
an explicit witness tuple, the upper end combines a rigorous coefficient
(iterated Hoelder) bound with a heuristic slack on the search value.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._optim import sign_patterns
from .spaces import INF, Space, Vector, as_exponent, conjugate_exponent, dual_witness, lq_norm
from .seqnorm import ASCENT_SLACK, SIGN_CUTOFF, NormBracket, VecSeq, lq_norm_rows

__all__ = [
    "MultiOp",
    "OpNormEstimate",
    "evaluate",
    "evaluate_batch",
    "op_norm",
    "finite_type",
    "compose",
    "diag_operator",
    "decoupling_check",
]


@dataclass(frozen=True, eq=False)
class MultiOp:
    """n-linear operator E_1 x ... x E_n -> F as a coefficient tensor."""

    domain: tuple[Space, ...]
    codomain: Space
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        dom = tuple(self.domain)
        object.__setattr__(self, "domain", dom)
        if len(dom) < 1:
            raise ValueError("operator arity must be >= 1")
        c = np.array(self.coeffs, dtype=float)
        expected = tuple(s.dim for s in dom) + (self.codomain.dim,)
        if c.shape != expected:
            raise ValueError(f"coefficient shape {c.shape} does not match {expected}")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def arity(self) -> int:
        return len(self.domain)

    def __call__(self, *args: Vector) -> Vector:
        return evaluate(self, args)

    def __repr__(self):
        dom = " x ".join(repr(s) for s in self.domain)
        return f"MultiOp({dom} -> {self.codomain!r})"


@dataclass(frozen=True)
class OpNormEstimate:
    """Operator-norm bracket plus the argument tuple attaining the lower end."""

    bracket: NormBracket
    witness: tuple[Vector, ...]


def evaluate(A: MultiOp, args: Sequence[Vector]) -> Vector:
    """Apply the operator; multilinear in each slot."""
    if len(args) != A.arity:
        raise ValueError(f"expected {A.arity} arguments, got {len(args)}")
    for x, s in zip(args, A.domain):
        if x.space.dim != s.dim:
            raise ValueError(f"argument dimension {x.space.dim} does not match {s.dim}")
    t = A.coeffs
    for x in args:
        t = np.tensordot(x.coords, t, axes=(0, 0))
    return Vector(A.codomain, t)


def evaluate_batch(A: MultiOp, mats: Sequence[np.ndarray]) -> np.ndarray:
    """Evaluate at B argument tuples at once; mats[m] has shape (B, d_m)."""
    n = A.arity
    letters = string.ascii_lowercase[:n]
    out = string.ascii_lowercase[n]
    sub = ",".join(f"z{c}" for c in letters)
    return np.einsum(f"{sub},{letters}{out}->z{out}", *mats, A.coeffs, optimize=True)


def _contract_all_but(A: MultiOp, xs: list[np.ndarray], m: int) -> np.ndarray:
    """Matrix of the linear map in slot m with the other slots fixed (d_out x d_m)."""
    t = A.coeffs
    for l in range(A.arity - 1, -1, -1):
        if l == m:
            continue
        t = np.tensordot(xs[l], t, axes=(0, l))
    # after contracting every l != m the remaining axes are (d_m, d_out)
    return t.T


def _axis_lq(T: np.ndarray, q, axis: int) -> np.ndarray:
    a = np.abs(T)
    qf = float(q)
    if qf == math.inf:
        return a.max(axis=axis)
    return (a ** qf).sum(axis=axis) ** (1.0 / qf)


def holder_coefficient_bound(A: MultiOp) -> float:
    """Rigorous upper bound: iterated Hoelder on the absolute coefficients."""
    T = np.abs(A.coeffs)
    for m in range(A.arity - 1, -1, -1):
        T = _axis_lq(T, conjugate_exponent(A.domain[m].q), axis=m)
    return lq_norm(T, A.codomain.q)


def _slot_update(M: np.ndarray, q_m, q_out, x_old: np.ndarray) -> np.ndarray:
    """Maximize ||M x|| over the unit l_{q_m} ball; exact where tractable."""
    d_m = M.shape[1]
    if not M.any():
        return x_old
    if q_m == 1:
        norms = [lq_norm(M[:, i], q_out) for i in range(d_m)]
        e = np.zeros(d_m)
        e[int(np.argmax(norms))] = 1.0
        return e
    if q_m == INF and d_m <= 16:
        best_val, best = -1.0, x_old
        for block in sign_patterns(d_m, fix_first=True):
            vals = lq_norm_rows(block @ M.T, float(q_out))
            i = int(np.argmax(vals))
            if vals[i] > best_val:
                best_val, best = float(vals[i]), block[i]
        return best.copy()
    if q_m == 2 and q_out == 2:
        _, _, vt = np.linalg.svd(M, full_matrices=False)
        return vt[0]
    # generic slot: monotone alternating dual updates
    x = x_old
    f = lq_norm(M @ x, q_out)
    qo = float(q_out) if q_out != INF else math.inf
    for _ in range(20):
        r = M @ x
        a = np.abs(r)
        mx = a.max()
        if mx == 0.0:
            break
        if qo == math.inf:
            w = np.zeros_like(r)
            i = int(np.argmax(a))
            w[i] = math.copysign(1.0, r[i])
        elif qo == 1.0:
            w = np.sign(r)
        else:
            w = np.sign(r) * (a / mx) ** (qo - 1.0)
        g = M.T @ w
        if not g.any():
            break
        cand = dual_witness(g, q_m)
        fc = lq_norm(M @ cand, q_out)
        if fc > f + 1e-15:
            x, f = cand, fc
        else:
            break
    return x


def op_norm(
    A: MultiOp,
    seed: int = 0,
    restarts: int = 16,
    starts: Sequence[Sequence[np.ndarray]] = (),
) -> OpNormEstimate:
    """Alternating maximization of ||A(x_1,...,x_n)|| over unit arguments.

    Each sweep solves the one-slot problem exactly for l_1 slots, small
    l_inf slots and l_2 -> l_2 pairs, and by monotone ascent otherwise.
    `starts` may supply extra initial argument tuples (coordinate arrays).
    """
    n = A.arity
    rng = np.random.default_rng(seed)
    q_out = A.codomain.q

    inits: list[list[np.ndarray]] = [list(map(np.asarray, s)) for s in starts]
    peak = np.unravel_index(int(np.argmax(np.abs(A.coeffs))), A.coeffs.shape)
    basis = []
    for m in range(n):
        e = np.zeros(A.domain[m].dim)
        e[peak[m]] = 1.0
        basis.append(e)
    inits.append(basis)
    for _ in range(restarts):
        cand = []
        for m in range(n):
            v = rng.standard_normal(A.domain[m].dim)
            nv = lq_norm(v, A.domain[m].q)
            cand.append(v / nv if nv > 0 else v)
        inits.append(cand)

    best_val, best_args = -1.0, inits[0]
    for xs in inits:
        xs = [x.copy() for x in xs]
        f = _value(A, xs)
        for _ in range(60):
            for m in range(n):
                M = _contract_all_but(A, xs, m)
                xs[m] = _slot_update(M, A.domain[m].q, q_out, xs[m])
            fn = _value(A, xs)
            if fn <= f * (1.0 + 1e-12):
                f = max(f, fn)
                break
            f = fn
        if f > best_val:
            best_val, best_args = f, xs

    witness = tuple(Vector(s, x) for s, x in zip(A.domain, best_args))
    lower = lq_norm(evaluate(A, witness).coords, q_out)
    rigorous = holder_coefficient_bound(A)
    upper = min(lower * (1.0 + ASCENT_SLACK), rigorous)
    exact = upper - lower <= 1e-9 * max(1.0, upper)
    bracket = NormBracket(lower, upper, exact, "alternating-maximization", seed)
    return OpNormEstimate(bracket, witness)


def _value(A: MultiOp, xs: list[np.ndarray]) -> float:
    t = A.coeffs
    for x in xs:
        t = np.tensordot(x, t, axes=(0, 0))
    return lq_norm(t, A.codomain.q)


def finite_type(phis: Sequence[Vector], b: Vector) -> MultiOp:
    """Elementary operator (x_1,...,x_n) -> phi_1(x_1)...phi_n(x_n) b.

    The functionals live in the dual spaces, so the operator acts on the
    preduals.
    """
    if not phis:
        raise ValueError("at least one functional required")
    t = np.array([1.0])
    for phi in phis:
        t = np.multiply.outer(t, phi.coords)
    t = np.multiply.outer(t, b.coords)[0]
    domain = tuple(phi.space.dual for phi in phis)
    return MultiOp(domain, b.space, t)


def compose(v: MultiOp, A: MultiOp, us: Sequence[MultiOp]) -> MultiOp:
    """v o A o (u_1,...,u_n) with linear v and u_m."""
    if v.arity != 1:
        raise ValueError("outer factor v must be linear")
    if len(us) != A.arity:
        raise ValueError(f"expected {A.arity} inner factors, got {len(us)}")
    for u in us:
        if u.arity != 1:
            raise ValueError("inner factors must be linear")
    if v.domain[0].dim != A.codomain.dim:
        raise ValueError("v does not compose with the codomain of A")
    for u, s in zip(us, A.domain):
        if u.codomain.dim != s.dim:
            raise ValueError("an inner factor does not compose with A")

    t = np.tensordot(A.coeffs, v.coeffs, axes=(A.arity, 0))
    for m in range(A.arity - 1, -1, -1):
        # contract slot m of A with the output axis of u_m
        t = np.tensordot(us[m].coeffs, t, axes=(1, m))
        t = np.moveaxis(t, 0, m)
    domain = tuple(u.domain[0] for u in us)
    return MultiOp(domain, v.codomain, t)


def scalar_multiplication(n: int) -> MultiOp:
    """(t_1,...,t_n) -> t_1 ... t_n on the scalars."""
    if n < 1:
        raise ValueError("arity must be >= 1")
    t = np.ones((1,) * (n + 1))
    return MultiOp((Space(1, 2),) * n, Space(1, 2), t)


def diag_operator(n: int, k: int, q_in) -> MultiOp:
    """Coordinatewise product (l_{q_in}^k)^n -> l_1^k.

    The witness operator behind the weak-p growth experiments.
    """
    if n < 2:
        raise ValueError("diagonal operator needs arity >= 2")
    if k < 1:
        raise ValueError("dimension must be >= 1")
    q_in = as_exponent(q_in)
    t = np.zeros((k,) * (n + 1))
    idx = (np.arange(k),) * (n + 1)
    t[idx] = 1.0
    return MultiOp((Space(k, q_in),) * n, Space(k, 1), t)


def decoupling_check(
    A: MultiOp, seqs: Sequence[VecSeq], sign_cutoff: int = SIGN_CUTOFF
) -> float:
    """Residual of the sign-decoupling identity.

    Compares sum_j A(x_j^1,...,x_j^n) with the exact average over all
    (n-1)-tuples of sign vectors of A applied to the randomized sums, the
    last slot carrying the product of the signs. Zero up to roundoff.
    """
    n = A.arity
    if len(seqs) != n:
        raise ValueError(f"expected {n} sequences, got {len(seqs)}")
    k = len(seqs[0])
    for s, sp in zip(seqs, A.domain):
        if len(s) != k:
            raise ValueError("sequences must share a common length")
        if s.space.dim != sp.dim:
            raise ValueError("sequence space does not match operator domain")
    if k * (n - 1) > sign_cutoff:
        raise ValueError(
            f"enumeration budget exceeded: k*(n-1) = {k * (n - 1)} > {sign_cutoff}"
        )

    direct = np.zeros(A.codomain.dim)
    for j in range(k):
        direct += evaluate(A, [s.vector(j) for s in seqs]).coords

    nfree = k * (n - 1)
    total = 1 << nfree
    acc = np.zeros(A.codomain.dim)
    block = 1 << 14
    shifts = np.arange(nfree, dtype=np.uint64)
    for start in range(0, total, block):
        idx = np.arange(start, min(start + block, total), dtype=np.uint64)
        bits = ((idx[:, None] >> shifts) & 1).astype(float) * 2.0 - 1.0
        groups = [bits[:, l * k : (l + 1) * k] for l in range(n - 1)]
        mats = [g @ seqs[l].mat for l, g in enumerate(groups)]
        prod = np.ones((idx.size, k))
        for g in groups:
            prod = prod * g
        mats.append(prod @ seqs[n - 1].mat)
        acc += evaluate_batch(A, mats).sum(axis=0)
    avg = acc / total
    return lq_norm(direct - avg, A.codomain.q)
