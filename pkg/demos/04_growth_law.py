"""Why weak-p transport fails for every p > 1, quantitatively.

The coordinatewise product on n copies of l_{p*}^k (n >= p*, so the
operator has norm at most one) applied to the standard basis produces
certified ratios k^(1/p). No constant can absorb that growth, so the
transport inequality has no finite constant once p exceeds 1.
"""

from fractions import Fraction

from seqclass import growth_experiment

print("p = 2, bilinear product on l_2^k, basis inputs:")
print(f"  {'k':>4}  {'ratio':>12}  {'k^(1/2)':>12}")
for k, ratio in growth_experiment(2, 2, [1, 4, 9, 16, 25, 64, 100]):
    print(f"  {k:>4}  {ratio:>12.6f}  {k ** 0.5:>12.6f}")

print()
print("p = 4/3 needs arity n >= p* = 4; the 4-linear product on l_4^k:")
print(f"  {'k':>4}  {'ratio':>12}  {'k^(3/4)':>12}")
for k, ratio in growth_experiment(Fraction(4, 3), 4, [1, 4, 16]):
    print(f"  {k:>4}  {ratio:>12.6f}  {k ** 0.75:>12.6f}")

print()
print("Contrast with p = 1 (see demo 03): there the ratio stays pinned at")
print("the operator norm for every k, which is exactly the stability claim.")
