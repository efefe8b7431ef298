# %% [markdown]
# # Preferred paths in the cusped ball of F(a,b)
# Peripherals are <a> and <b>.  With constants measured from the ball itself
# the horoball families are empty at this size, so we also look at a tight
# override where paths really dive into horoballs.

# %%
from relhyp.experiments import preferred_context
from relhyp.metric import Constants
from relhyp.preferred import build_skeleton
from relhyp.words import free_product_presentation

F2 = free_product_presentation()

# %%
measured, meta = preferred_context(F2, 5, 6, "paper")
print(meta, measured.c.as_dict())

# %%
tight, _ = preferred_context(F2, 5, 6, Constants.override(1, 1, 1, 3))
at = lambda ctx, w: ctx.cb.cayley(F2.word(w))

for m in (2, 3, 4):
    pp = tight.preferred_path(at(tight, f"a^-{m}"), at(tight, f"a^{m}"))
    print(m, pp.family, [k for k, _ in pp.pieces], len(pp.vertices) - 1)

# %% [markdown]
# A triangle with two corners near <a> dips into that horoball twice.

# %%
sk = build_skeleton(tight, at(tight, "a^-4 b"), at(tight, "a^4 b"), at(tight, "a^4 b^-1"))
print(sk.classes, "ribs", len(sk.ribs), "middle", sk.middle_count())
