"""Max weight independent set on K5-minus-free graphs: decompose, then run the
DP whose state count is bounded by 2^ell * n^k, and compare to brute force."""
import random
from fractions import Fraction

from tind import decompose_k5m_free, mwis_td, residual_independence_number
from tind.generators import biclique, co_c6, complete, k5_minus, random_clique_sum, wheel
from tind.oracles import mwis_bruteforce

rng = random.Random(3)
shapes = [complete(5), wheel(6), biclique(3, 3), co_c6(), wheel(5)]
g = random_clique_sum(shapes, seed=3)
w = {v: Fraction(rng.randint(1, 9), rng.randint(1, 3)) for v in g.vertices}

cert = decompose_k5m_free(g)
d = cert.decomposition
k = residual_independence_number(g, d)
print(f"glued {len(shapes)} shapes: n={g.n} m={g.m}, {d.size} bags, ell={d.ell}, residual={k}")

best, weight = mwis_td(g, w, d, k)
print(f"DP:          weight {weight}  set {sorted(best)}")
best, weight = mwis_bruteforce(g, w)
print(f"brute force: weight {weight}  set {sorted(best)}")

cert = decompose_k5m_free(k5_minus(), robust=True)
print(f"K5-minus: {cert.verdict} ({cert.reason}), certificate checks: {cert.check(k5_minus())}")
