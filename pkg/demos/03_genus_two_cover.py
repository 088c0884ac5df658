# %% [markdown]
# # Lifting to a closed genus two surface
#
# A degree four branched cover with monodromy in (Z/2)^2 turns the sphere
# with five cone points into a genus two surface with ten marked points.

# %%
from curvekit import build_tower, generate, default_schedule, intersection_number, lift_curve, side_curve
from curvekit.covers import holonomy_by_walk, lift_sequence

f, F = build_tower(2)
print(F.total.surface, "degree", F.degree, "with", F.total.zeta, "edges")

# %% [markdown]
# A curve with trivial holonomy lifts to four components, otherwise to two.

# %%
for k in range(5):
    c = side_curve(k)
    print(k, "holonomy", holonomy_by_walk(F, c), "components", len(lift_curve(F, c)))

# %% [markdown]
# Intersection numbers multiply by the degree when summed over all
# component pairs.

# %%
a, c = side_curve(0), side_curve(1)
up = sum(intersection_number(x, y) for x in lift_curve(F, a) for y in lift_curve(F, c))
print("downstairs", intersection_number(a, c), "upstairs", up)

# %% [markdown]
# Lifting the whole sequence uses lifted twists, so the huge powers cost
# nothing extra.  Consecutive lifts stay disjoint.

# %%
b = generate(8, default_schedule())
L = lift_sequence(F, b.powers, 8)
print([intersection_number(L[i], L[i + 1]) for i in range(8)])
print([intersection_number(L[0], L[j]) for j in range(9)])
