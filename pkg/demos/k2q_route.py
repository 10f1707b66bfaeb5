"""K_{2,q}-induced-minor-free graphs: the clique tree of a minimal triangulation
has bags that are potential maximal cliques, each with independence number at
most 2q - 2 (at most 3 when q = 3).  Robust mode turns a large independent set
in a bag into a certificate of non-membership."""
from tind import decompose_k2q, independence_number
from tind.generators import biclique, cycle, random_gnp
from tind.oracles import enumerate_pmcs, find_induced_minor_model, mms

c6 = cycle(6)
cert = decompose_k2q(c6, 3)
print(f"C6: bag alphas {cert.bag_alpha}, every bag a PMC: "
      f"{all(b in set(enumerate_pmcs(c6)) for b in cert.decomposition.bags)}")

k55 = biclique(5, 5)
cert = decompose_k2q(k55, 3, robust=True)
print(f"K55 at q=3: {cert.verdict} {cert.reason}")

# tree-independence number against the largest minimal separator; the oracle handles q <= 4
shown = 0
for seed in range(50):
    g = random_gnp(9, 0.35, seed)
    s = mms(g)
    if s > 3 or shown == 5:
        continue
    shown += 1
    q = max(2, s + 1)
    d = decompose_k2q(g, q).decomposition
    free = find_induced_minor_model(g, biclique(2, q)) is None
    print(f"seed {seed}: mms={s} K2,{q}-free={free} alpha={independence_number(g, d)} bound={max(1, 2 * s)}")
