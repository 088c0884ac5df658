from hypothesis import strategies as st

from pools import SMALL, TINY

small_curves = st.sampled_from(SMALL)
tiny_curves = st.sampled_from(TINY)


@st.composite
def crossing_pairs(draw, pool=SMALL):
    from curvekit.surface import intersection_number

    a = draw(st.sampled_from(pool))
    b = draw(st.sampled_from(pool).filter(lambda c: c != a and intersection_number(a, c) > 0))
    return a, b
