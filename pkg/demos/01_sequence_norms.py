"""Tour of the five sequence-norm engines.

Every norm acts on a finite sequence of vectors living in one l_q space.
Supremum-defined norms (weak-p, Cohen) come back as certified brackets;
the others are exact scalars wrapped in zero-width brackets.
"""

import numpy as np

from seqclass import (
    INF,
    SeqClassSpec,
    Space,
    VecSeq,
    norm_cohen,
    norm_rad,
    norm_rad_mc,
    norm_strong_p,
    norm_sup,
    norm_weak_p,
    seq_norm,
)

plane = Space(2, 2)  # the Euclidean plane
basis = VecSeq(plane, [[1, 0], [0, 1]])

print("The two standard basis vectors of l_2^2, measured five ways:")
print(f"  sup      : {norm_sup(basis):.6f}          (largest single norm)")
print(f"  strong-2 : {norm_strong_p(basis, 2):.6f}          (l_2 sum of norms)")

w = norm_weak_p(basis, 1)
print(f"  weak-1   : {w.lower:.6f}  method={w.method}")
print("             every sign pattern +-e_1 +- e_2 has l_2 norm sqrt(2),")
print("             so the sign enumeration is exact here.")

r = norm_rad(basis)
print(f"  rad      : {r:.6f}  (random-sign L_2 average; = strong-2 in Hilbert space)")

c = norm_cohen(basis, 1)
print(f"  cohen-1  : {c.lower:.6f}  (projective norm; p=1 collapses to the norm sum)")

print()
print("A sequence where the classes genuinely disagree (random, l_inf^3):")
rng = np.random.default_rng(7)
s = VecSeq(Space(3, INF), rng.standard_normal((4, 3)))
for spec in [
    SeqClassSpec.sup(),
    SeqClassSpec.weak(2),
    SeqClassSpec.rad(),
    SeqClassSpec.strong(2),
    SeqClassSpec.cohen(2),
    SeqClassSpec.strong(1),
]:
    b = seq_norm(s, spec, seed=1)
    kind = "exact " if b.exact else "bracket"
    print(f"  {spec.describe():<12} {kind}  [{b.lower:.6f}, {b.upper:.6f}]")
print("Note the ordering: sup <= weak-p <= strong-p <= cohen-p <= strong-1.")

print()
print("Beyond 20 vectors the exact Rademacher enumeration hands off to Monte Carlo:")
long_seq = VecSeq(plane, rng.standard_normal((40, 2)))
mc = norm_rad_mc(long_seq, samples=100_000, seed=3)
hil = norm_strong_p(long_seq, 2)
print(f"  bracket [{mc.lower:.5f}, {mc.upper:.5f}] vs Hilbert identity {hil:.5f}")
print(f"  contains the exact value: {mc.contains(hil)}")
