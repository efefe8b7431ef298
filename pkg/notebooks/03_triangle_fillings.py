# %% [markdown]
# # Filling the triangle group base
# Kill x^p, y^q, z^r with z = xy.  Spherical triples give finite groups,
# the rest keep growing.

# %%
from relhyp.filling import build_surgered, fill, shell_check, triangle_experiment
from relhyp.words import triangle_kernels, triangle_presentation

# %%
for pqr in [(2, 3, 5), (2, 3, 4), (2, 2, 5), (2, 3, 7), (4, 4, 4)]:
    row = triangle_experiment(*pqr, radius=10, delta_radius=4, samples=300)
    print(pqr, row["verdict"], row.get("order"), row["growth"][:7])

# %% the shell around each filled cusp looks like a horoball over a cycle
fs = fill(triangle_presentation(), triangle_kernels(8, 8, 8))
z = build_surgered(fs, 5, fs.L2 + 1)
rows = shell_check(z)
print("L2", fs.L2, "levels", len(rows), "all isomorphic", all(r[2] for r in rows))
