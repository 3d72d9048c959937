"""Summing norms of multilinear operators over sequence classes.

The ideal norm of an operator relative to input classes X_1,...,X_n and an
output class Y is the best constant C with

    Y-norm(A(x^1_j,...,x^n_j))_j  <=  C * prod_m X_m-norm(x^m_j)_j

over all finite sequences. The estimator sweeps sequence lengths k,
maximizing the certified ratio (output lower / product of input uppers);
the k = 1 slice recovers the operator norm. Stability and growth
experiments probe which classes transport through multilinear maps with
constant equal to the operator norm, and at what rate the others fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .multiop import MultiOp, OpNormEstimate, diag_operator, evaluate_batch, op_norm
from .sampling import DEFAULT_EXPONENTS, random_multiop, random_space, random_vecseq
from .seqnorm import (
    ASCENT_SLACK,
    NormBracket,
    SeqClassSpec,
    VecSeq,
    seq_norm,
)
from .spaces import INF, Space, as_exponent, conjugate_exponent

__all__ = [
    "IdealSpec",
    "IdealNormEstimate",
    "StabilityReport",
    "LimitStabilityReport",
    "ideal_ratio",
    "ideal_norm",
    "stability_report",
    "growth_experiment",
    "limit_stability_experiment",
    "scalar_compatibility_excess",
]

#: Exact Rademacher enumeration cap inside ideal-norm sweeps.
RAD_SWEEP_CUTOFF = 12


@dataclass(frozen=True)
class IdealSpec:
    """Input classes (one per operator slot) and the output class."""

    inputs: tuple[SeqClassSpec, ...]
    output: SeqClassSpec

    def __post_init__(self):
        inputs = tuple(self.inputs)
        if not inputs:
            raise ValueError("at least one input class required")
        object.__setattr__(self, "inputs", inputs)

    @property
    def arity(self) -> int:
        return len(self.inputs)

    @property
    def uses_rad(self) -> bool:
        return any(c.tag == "rad" for c in self.inputs) or self.output.tag == "rad"

    @property
    def finitely_determined(self) -> bool:
        return all(c.finitely_determined for c in self.inputs) and self.output.finitely_determined

    @classmethod
    def uniform(cls, spec: SeqClassSpec, n: int) -> "IdealSpec":
        return cls((spec,) * n, spec)

    @classmethod
    def stable_family(cls, family: SeqClassSpec, n: int) -> "IdealSpec":
        """The theorem-backed ideal spec for a stable class family.

        weak-1 and Rad transport into themselves; strong-p and Cohen-p
        admit the tighter Hoelder output exponent max(1, p/n).
        """
        if family.tag in ("weak", "rad"):
            return cls.uniform(family, n)
        if family.tag in ("strong", "cohen"):
            p_out = max(Fraction(1), Fraction(family.p) / n)
            return cls((family,) * n, SeqClassSpec(family.tag, p_out))
        raise ValueError(f"no stability theorem on file for class {family.describe()}")

    def describe(self) -> str:
        ins = ", ".join(c.describe() for c in self.inputs)
        return f"({ins}; {self.output.describe()})"


@dataclass(frozen=True)
class IdealNormEstimate:
    """Result of the k-sweep search for the summing norm."""

    bracket: NormBracket
    best_k: int
    witness: tuple[VecSeq, ...]
    ratio_by_k: tuple[tuple[int, float], ...]
    op_estimate: OpNormEstimate


def _output_seq(A: MultiOp, seqs: Sequence[VecSeq]) -> VecSeq:
    mats = [s.mat for s in seqs]
    return VecSeq(A.codomain, evaluate_batch(A, mats))


def ideal_ratio(
    A: MultiOp, spec: IdealSpec, seqs: Sequence[VecSeq], seed: int = 0
) -> float:
    """Certified ratio output-lower / product of input-uppers for one tuple.

    A valid lower bound on any constant C for which the summing
    inequality holds.
    """
    if spec.arity != A.arity:
        raise ValueError(f"spec arity {spec.arity} does not match operator arity {A.arity}")
    if len(seqs) != A.arity:
        raise ValueError(f"expected {A.arity} sequences, got {len(seqs)}")
    k = len(seqs[0])
    if k < 1:
        raise ValueError("sequences must have length k >= 1")
    for s, sp in zip(seqs, A.domain):
        if len(s) != k:
            raise ValueError("sequences must share a common length")
        if s.space.dim != sp.dim:
            raise ValueError("sequence space does not match operator domain")
    denom = 1.0
    for s, cls in zip(seqs, spec.inputs):
        b = seq_norm(s, cls, seed=seed)
        if b.upper == 0.0:
            raise ValueError("input sequence of norm zero is excluded from ratios")
        denom *= b.upper
    out = seq_norm(_output_seq(A, seqs), spec.output, seed=seed)
    return out.lower / denom


def ideal_norm(
    A: MultiOp,
    spec: IdealSpec,
    k_max: int,
    restarts: int = 8,
    seed: int = 0,
) -> IdealNormEstimate:
    """Maximize the certified ratio over sequences of length 1..k_max.

    k = 1 is solved by the operator-norm search (its witness is the best
    singleton tuple); longer lengths refine random draws by hill climbing,
    warm-started from the zero-padded best witness of the previous length.
    The ratio-by-k curve is reported as a running maximum, which the
    pad-with-zeros argument justifies.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if spec.arity != A.arity:
        raise ValueError("spec arity does not match the operator")
    if spec.uses_rad:
        k_max = min(k_max, RAD_SWEEP_CUTOFF)

    rng = np.random.default_rng(seed)
    op_est = op_norm(A, seed=seed)
    witness1 = tuple(
        VecSeq(s, w.coords[None, :]) for s, w in zip(A.domain, op_est.witness)
    )
    try:
        best_ratio = ideal_ratio(A, spec, witness1, seed=seed)
    except ValueError:
        best_ratio = 0.0
    best_k, best_witness = 1, witness1
    curve = [(1, best_ratio)]
    prev_witness = witness1

    dims = [s.dim for s in A.domain]

    def ratio_of(flat: np.ndarray, k: int) -> float:
        mats, off = [], 0
        for d in dims:
            mats.append(flat[off : off + k * d].reshape(k, d))
            off += k * d
        try:
            return ideal_ratio(
                A, spec, [VecSeq(s, m) for s, m in zip(A.domain, mats)], seed=seed
            )
        except ValueError:
            return 0.0

    for k in range(2, k_max + 1):
        starts = []
        padded = [
            np.vstack([w.mat, 0.01 * rng.standard_normal((1, d))])
            for w, d in zip(prev_witness, dims)
        ]
        starts.append(np.concatenate([m.ravel() for m in padded]))
        # canonical structured candidates: coordinate sequences (cycled
        # past the dimension) and the operator witness repeated with signs
        basis = [np.eye(d)[np.arange(k) % d] for d in dims]
        starts.append(np.concatenate([m.ravel() for m in basis]))
        signs = rng.choice([-1.0, 1.0], size=k)
        repw = [signs[:, None] * np.tile(w.coords, (k, 1)) for w in op_est.witness]
        starts.append(np.concatenate([m.ravel() for m in repw]))
        for _ in range(restarts):
            starts.append(
                np.concatenate([rng.standard_normal(k * d) for d in dims])
            )
        k_best, k_wit = 0.0, None
        for z0 in starts:
            f0 = ratio_of(z0, k)
            z, fz = z0, f0
            step = 0.4
            for _ in range(40):
                cand = z + step * np.linalg.norm(z) * _unit(rng.standard_normal(z.size))
                fc = ratio_of(cand, k)
                if fc > fz:
                    z, fz = cand, fc
                    step = min(step * 1.3, 1.0)
                else:
                    step *= 0.8
                    if step < 1e-6:
                        break
            if fz > k_best:
                k_best, k_wit = fz, z
        if k_best > best_ratio and k_wit is not None:
            best_ratio, best_k = k_best, k
            mats, off = [], 0
            for d in dims:
                mats.append(k_wit[off : off + k * d].reshape(k, d))
                off += k * d
            best_witness = tuple(VecSeq(s, m) for s, m in zip(A.domain, mats))
        prev_witness = best_witness if best_k == k else tuple(
            VecSeq(s, np.vstack([w.mat, np.zeros((k - len(w), s.dim))]))
            for s, w in zip(A.domain, prev_witness)
        )
        curve.append((k, best_ratio))

    bracket = NormBracket(
        best_ratio, best_ratio * (1.0 + ASCENT_SLACK), False, "k-sweep-ratio-search", seed
    )
    return IdealNormEstimate(bracket, best_k, best_witness, tuple(curve), op_est)


def _unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    return v / n if n > 0 else v


# ---------------------------------------------------------------------------
# stability
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilityReport:
    """Outcome of randomized transport tests for one class family."""

    family: str
    arity: int
    trials: int
    violations: int
    max_ratio_over_ceiling: float
    tolerance: float
    cases: tuple[dict, ...] = field(repr=False, default=())

    @property
    def passed(self) -> bool:
        return self.violations == 0


def _stability_trials(
    spec_factory,
    arity: int,
    trials: int,
    seed: int,
    k_max: int,
    dims,
    exponents,
    tolerance: float,
    family_label: str,
    keep_cases: int = 64,
) -> StabilityReport:
    rng = np.random.default_rng(seed)
    violations, max_rel = 0, 0.0
    cases = []
    for t in range(trials):
        spec = spec_factory(rng)
        domain = [random_space(rng, dims, exponents) for _ in range(arity)]
        codomain = random_space(rng, dims, exponents)
        A = random_multiop(rng, domain, codomain)
        k = int(rng.integers(1, k_max + 1))
        seqs = [random_vecseq(rng, s, k) for s in domain]
        try:
            ratio = ideal_ratio(A, spec, seqs, seed=seed + t)
        except ValueError:
            continue
        est = op_norm(A, seed=seed + t)
        ceiling = est.bracket.upper
        rel = ratio / ceiling if ceiling > 0 else math.inf
        if ratio > ceiling * (1.0 + tolerance):
            # re-verify before flagging: reinforce the ceiling with more
            # restarts plus the per-index argument tuples of the sequences
            extra = [[s.mat[j] for s in seqs] for j in range(k)]
            est = op_norm(A, seed=seed + t, restarts=64, starts=extra)
            ceiling = est.bracket.upper
            rel = ratio / ceiling if ceiling > 0 else math.inf
            if ratio > ceiling * (1.0 + tolerance):
                violations += 1
        max_rel = max(max_rel, rel)
        if len(cases) < keep_cases:
            cases.append(
                {
                    "trial": t,
                    "k": k,
                    "dims": [s.dim for s in domain] + [codomain.dim],
                    "ratio": ratio,
                    "ceiling": ceiling,
                    "spec": spec.describe(),
                }
            )
    return StabilityReport(
        family=family_label,
        arity=arity,
        trials=trials,
        violations=violations,
        max_ratio_over_ceiling=max_rel,
        tolerance=tolerance,
        cases=tuple(cases),
    )


def stability_report(
    spec_family: SeqClassSpec,
    arity: int,
    trials: int,
    seed: int = 0,
    k_max: int = 6,
    dims=4,
    exponents=DEFAULT_EXPONENTS,
    tolerance: float = 1e-6,
) -> StabilityReport:
    """Randomized check that a stable family never beats the operator norm.

    Supported families: weak-1, Rad, strong-p and Cohen-p (the latter two
    with the Hoelder output exponent). A violation is flagged only when
    the certified ratio exceeds the reinforced operator-norm ceiling by
    more than the tolerance.
    """
    if spec_family.tag == "weak" and spec_family.p != 1:
        raise ValueError("weak-p transport is only norm-preserving for p = 1")
    if spec_family.tag == "sup":
        raise ValueError("sup-norm stability is trivial; no suite on file")
    spec = IdealSpec.stable_family(spec_family, arity)
    if spec.uses_rad:
        k_max = min(k_max, 6)
    return _stability_trials(
        lambda rng: spec,
        arity,
        trials,
        seed,
        k_max,
        dims,
        exponents,
        tolerance,
        family_label=spec_family.describe(),
    )


def cohen_holder_stability(
    trials: int,
    seed: int = 0,
    arity: int = 2,
    k_max: int = 4,
    dims=3,
    tolerance: float = 1e-6,
) -> StabilityReport:
    """Cohen transport with randomized Hoelder exponent tuples.

    Draws input exponents p_m and an output exponent p with
    1/p <= sum 1/p_m, the regime where the transported norm equals the
    operator norm.
    """
    choices = [Fraction(4, 3), Fraction(3, 2), 2, 3]

    def factory(rng: np.random.Generator) -> IdealSpec:
        ps = [choices[rng.integers(len(choices))] for _ in range(arity)]
        budget = sum(Fraction(1) / Fraction(p) for p in ps)
        p_out = max(Fraction(1), 1 / budget)
        return IdealSpec(
            tuple(SeqClassSpec.cohen(p) for p in ps), SeqClassSpec.cohen(p_out)
        )

    return _stability_trials(
        factory,
        arity,
        trials,
        seed,
        k_max,
        dims,
        (Fraction(3, 2), 2, 3, INF),
        tolerance,
        family_label="cohen[holder tuples]",
    )


def growth_experiment(p, n: int, k_list: Sequence[int]) -> list[tuple[int, float]]:
    """Quantitative failure of weak-p transport for p > 1.

    The coordinatewise-product operator on n copies of l_{p*}^k (bounded
    with norm <= 1 once n >= p*) applied to the standard basis yields
    certified ratios k^(1/p): unbounded in k, so no constant can close the
    inequality.
    """
    p = as_exponent(p)
    if p == INF or p <= 1:
        raise ValueError("growth experiment needs a finite exponent p > 1")
    pstar = conjugate_exponent(p)
    if n < pstar:
        raise ValueError(
            f"arity {n} is below the conjugate exponent {pstar}; the product operator would be unbounded"
        )
    out = []
    for k in k_list:
        if k < 1:
            raise ValueError("sequence lengths must be >= 1")
        D = diag_operator(n, k, pstar)
        spec = IdealSpec.uniform(SeqClassSpec.weak(p), n)
        basis = VecSeq(Space(k, pstar), np.eye(k))
        ratio = ideal_ratio(D, spec, [basis] * n)
        out.append((k, ratio))
    return out


@dataclass(frozen=True)
class LimitStabilityReport:
    """Pointwise-limit bound: the limit norm never exceeds the member supremum."""

    limit_lower: float
    member_sup_upper: float
    passed: bool
    member_records: tuple[dict, ...]


def limit_stability_experiment(
    A_seq: Sequence[MultiOp],
    A: MultiOp,
    spec: IdealSpec,
    k_max: int,
    seed: int = 0,
    restarts: int = 4,
) -> LimitStabilityReport:
    """Check ideal_norm(A).lower <= sup_m ideal_norm(A_m).upper for a family.

    Only finitely determined classes are admitted (the prefix supremum is
    what makes the limit argument sound). Each member is additionally
    scored at the limit operator's best witness so that search variance
    cannot produce a spurious failure.
    """
    if not spec.finitely_determined:
        raise ValueError("limit stability requires finitely determined classes")
    for B in A_seq:
        if B.coeffs.shape != A.coeffs.shape:
            raise ValueError("family members must share the operator shape")
    est = ideal_norm(A, spec, k_max, restarts=restarts, seed=seed)
    records = []
    sup_upper = 0.0
    for i, B in enumerate(A_seq):
        est_m = ideal_norm(B, spec, k_max, restarts=restarts, seed=seed)
        lower_m = est_m.bracket.lower
        try:
            lower_m = max(lower_m, ideal_ratio(B, spec, est.witness, seed=seed))
        except ValueError:
            pass
        upper_m = lower_m * (1.0 + ASCENT_SLACK)
        sup_upper = max(sup_upper, upper_m)
        records.append({"member": i, "lower": lower_m, "upper": upper_m})
    passed = est.bracket.lower <= sup_upper * (1.0 + 1e-6)
    return LimitStabilityReport(est.bracket.lower, sup_upper, passed, tuple(records))


def scalar_compatibility_excess(
    spec: IdealSpec, trials: int, seed: int = 0, k_max: int = 8
) -> float:
    """Numeric check of the scalar product embedding behind finite-type bounds.

    Samples scalar sequences and returns the worst relative excess of
    Y-norm(prod_m lambda^m) over prod_m X_m-norm(lambda^m); a stable
    family should keep this at roundoff level.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for t in range(trials):
        k = int(rng.integers(1, k_max + 1))
        lams = [rng.standard_normal(k) for _ in range(spec.arity)]
        prod = np.ones(k)
        for lam in lams:
            prod = prod * lam
        scalar = Space(1, 2)
        num = seq_norm(VecSeq(scalar, prod[:, None]), spec.output, seed=seed).lower
        den = 1.0
        for lam, cls in zip(lams, spec.inputs):
            den *= seq_norm(VecSeq(scalar, lam[:, None]), cls, seed=seed).upper
        if den > 0:
            worst = max(worst, num / den - 1.0)
    return worst
