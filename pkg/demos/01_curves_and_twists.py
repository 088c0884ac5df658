# %% [markdown]
# # Curves and twists on the five-punctured sphere
#
# The sphere is cut into a doubled pentagon.  A curve is stored as its
# number of crossings with each of the nine edges.

# %%
from curvekit import base_chart, intersection_number, relative_twist, side_curve, twist_power
from curvekit.oracles import arc_walk_intersection, enumerate_curves, stepwise_twist

T = base_chart()
print(T.surface, "with", T.zeta, "edges")

# %% [markdown]
# The five "side" curves each surround two adjacent punctures.  Neighbours
# meet twice and non-neighbours are disjoint.

# %%
c = [side_curve(k) for k in range(5)]
for k in range(5):
    print(k, c[k].weights, [intersection_number(c[k], c[j]) for j in range(5)])

# %% [markdown]
# Twisting is exact and takes the same time for any power.  Small powers
# can be checked against the one-step-at-a-time oracle.

# %%
a, b = c[0], c[1]
for e in (1, 2, 5):
    fast = twist_power(a, b, e)
    assert fast == stepwise_twist(a, b, e)
    print(e, fast.weights, "i(a, D^e b) =", intersection_number(a, fast))

big = twist_power(a, b, 10**40)
print("a power of 10^40 has total weight with", len(str(big.total_weight)), "digits")
print("relative twist:", relative_twist(a, b, big) - 10**40)

# %% [markdown]
# Intersection numbers from the flip-based tracer agree with a slow count of
# linked runs in crossing words.

# %%
pool = list(enumerate_curves(T, 12))
checked = 0
for x in pool[:15]:
    for y in pool[:15]:
        if x != y:
            assert intersection_number(x, y) == arc_walk_intersection(x, y)
            checked += 1
print(checked, "pairs agree")
