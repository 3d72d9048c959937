"""Rademacher and Cohen classes transport with the operator norm.

Rademacher norms are exact finite averages here, so their transport test
is fully certified. Cohen norms are projective norms: each value is a
bracket (dual witness below, explicit decomposition above), and the
transport check compares brackets conservatively so estimator slack can
never manufacture a counterexample.
"""

import numpy as np

from seqclass import (
    IdealSpec,
    SeqClassSpec,
    Space,
    VecSeq,
    norm_cohen,
    norm_rad,
    stability_report,
)
from seqclass.idealnorm import cohen_holder_stability, ideal_ratio
from seqclass.multiop import MultiOp, op_norm

rng = np.random.default_rng(21)

print("Rademacher transport through a random bilinear operator:")
A = MultiOp((Space(3, 2), Space(2, 1)), Space(2, 2), rng.standard_normal((3, 2, 2)))
x = VecSeq(A.domain[0], rng.standard_normal((5, 3)))
y = VecSeq(A.domain[1], rng.standard_normal((5, 2)))
spec = IdealSpec.uniform(SeqClassSpec.rad(), 2)
ratio = ideal_ratio(A, spec, [x, y])
ceiling = op_norm(A, seed=0).bracket.upper
print(f"  certified ratio {ratio:.6f}  <=  operator ceiling {ceiling:.6f}")

print()
print("Randomized Rademacher stability (150 bilinear instances):")
rep = stability_report(SeqClassSpec.rad(), arity=2, trials=150, seed=1, k_max=6)
print(f"  violations={rep.violations}  max ratio/ceiling={rep.max_ratio_over_ceiling:.6f}")

print()
print("A Cohen bracket on a small awkward instance (l_inf^3, p = 3/2):")
s = VecSeq(Space(3, np.inf), rng.standard_normal((4, 3)))
b = norm_cohen(s, 1.5, seed=2)
print(f"  [{b.lower:.6f}, {b.upper:.6f}]  relative width "
      f"{(b.upper - b.lower) / b.upper:.2%}  method={b.method}")

print()
print("Cohen transport with Hoelder exponent tuples (40 instances):")
rep = cohen_holder_stability(trials=40, seed=3)
print(f"  violations={rep.violations}  max ratio/ceiling={rep.max_ratio_over_ceiling:.6f}")

print()
print("Sanity: the Rademacher norm really is the strong-2 norm in Hilbert space:")
h = VecSeq(Space(4, 2), rng.standard_normal((8, 4)))
from seqclass import norm_strong_p

print(f"  rad = {norm_rad(h):.12f}   strong-2 = {norm_strong_p(h, 2):.12f}")
