# %% [markdown]
# # Combinatorial horoballs
# A horoball over a graph: the base sits at depth 0 and each level k joins
# vertices at base distance up to 2^k.  Distances have a closed form.

# %%
import random

from relhyp.experiments import horoball_distance
from relhyp.graph import parse_base
from relhyp.horoball import HoroballGraph, horoball_fill

# %%
h = HoroballGraph(parse_base("cycle:50"), 8)
g = h.graph()
print(g.n, "vertices,", sum(1 for _ in g.edges()), "edges")

# %% closed form against BFS, a handful of pairs
rng = random.Random(0)
for _ in range(5):
    a, b = rng.randrange(g.n), rng.randrange(g.n)
    la, lb = g.labels[a], g.labels[b]
    print(la, lb, horoball_distance(h, la, lb, 8), g.dist(a, b))

# %% [markdown]
# Far apart points on the base are closer through the horoball than along it:
# the distance grows like twice the log of the base distance.

# %%
line = HoroballGraph(parse_base("path:99"), 8)
for d in (1, 4, 16, 64, 99):
    print(d, horoball_distance(line, (0, 0), (d, 0), 8))

# %% a square loop on the base and its filling
loop = [(0, 0), (1, 0), (1, 1), (0, 1)]
fl = horoball_fill(line, loop)
print("area", fl.area, [kind for kind, _ in fl.cells])
