# %% [markdown]
# # A sequence with large annular coefficients
#
# Each curve is obtained from the previous one by a rotation followed by a
# large twist.  Consecutive curves are disjoint, while curves further
# apart overlap and eventually fill.

# %%
from curvekit import annulus, default_schedule, generate, intersection_number, is_filling, subsurface_coefficient
from curvekit.pants import estimate, sequence_marking
from curvekit.verification import divergence_certificate

b = generate(10, default_schedule())
print("twist powers:", b.powers[:6], "...")
print("digits of total weight:", [len(str(c.total_weight)) for c in b.curves])

# %%
g = b.curves
print("i(g_i, g_j) > 0 pattern from g_0:", [intersection_number(g[0], x) > 0 for x in g])
print("g_0 fills with g_4:", is_filling(g[0], g[4]), " with g_3:", is_filling(g[0], g[3]))

# %% [markdown]
# The annular coefficient at ``g_i`` between curves on either side tracks
# the twist power that created it.

# %%
for i in range(2, 8):
    rec = subsurface_coefficient(annulus(g[i]), g[i - 2], g[i + 2])
    print(i, "e =", b.e(i - 1), "coefficient =", rec.value, "ratio = %.4f" % (rec.value / b.e(i - 1)))

# %% [markdown]
# Against the starting marking the coefficients increase along the sequence.

# %%
rep = divergence_certificate(b)
print([r["value"] for r in rep.tables["divergence"]], "violations:", rep.violations)

# %%
est = estimate(b.marking, sequence_marking(b, 10), A=3, radius=20, witnesses=g[2:9])
print("thresholded sum:", est.lower_bound_sum, "over", est.family_size, "subsurfaces")
