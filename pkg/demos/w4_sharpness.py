"""W4-induced-minor-free graphs: residual independence 1 after removing three
vertices per bag, and the F_q family showing the stripped bound 4 is attained."""
from tind import decompose_w4_free, independence_number, residual_independence_number, strip_refinement
from tind.generators import cycle, fq, random_block_cactus, subdivided_complete, wheel
from tind.oracles import find_induced_minor_model


def show(name, g):
    cert = decompose_w4_free(g, robust=True)
    if not cert.in_class:
        print(f"{name:18} rejected: {cert.reason}")
        return
    d = cert.decomposition
    print(f"{name:18} n={g.n:3} nodes={d.size:3} residual={residual_independence_number(g, d)} "
          f"stripped alpha={independence_number(g, strip_refinement(d))}")


for name, g in [("C6", cycle(6)), ("subdivided K4", subdivided_complete(4)),
                ("block cactus", random_block_cactus(6, 1)), ("W4", wheel(4))]:
    show(name, g)

# the stripped bound 4 is reached on the F_q family
for q in (2, 3, 4, 5):
    show(f"F_{q}", fq(q))

# exhaustive confirmation on the smallest members
for q in (1, 2):
    print(f"F_{q} has a W4 induced minor: {find_induced_minor_model(fq(q), wheel(4)) is not None}")
