from hypothesis import given
from hypothesis import strategies as st

from curvekit.construction import prefix_word, side_curve
from curvekit.mapping_classes import (IDENTITY_WORD, MappingClassWord, Rho, Twist, apply, invert,
                                      rho_power, twist_power, word_from_json, word_to_json)
from curvekit.oracles import stepwise_twist
from curvekit.surface import canonical_key, intersection_number
from curvekit.transport import audit_mode

from pools import TINY
from strategies import small_curves, tiny_curves

letters = st.one_of(
    st.builds(Rho, st.integers(1, 4)),
    st.builds(Twist, st.sampled_from(TINY), st.integers(-6, 6).filter(bool)),
)
words = st.lists(letters, max_size=10).map(MappingClassWord)


@given(small_curves)
def test_identity_and_rho_order_five(c):
    assert apply(IDENTITY_WORD, c) == c
    assert apply(MappingClassWord([Rho(1)] * 5), c) == c
    assert canonical_key(rho_power(5, c)) == canonical_key(c)


def test_rho_moves_side_curves_two_steps():
    # rho sends P_j to P_{j+2}, hence side k to side k + 2
    for k in range(5):
        assert rho_power(1, side_curve(k)) == side_curve(k + 2)


def test_rho_exponent_is_reduced():
    assert Rho(7).exponent == 2
    assert len(MappingClassWord([Rho(5), Rho(0)])) == 0


@given(small_curves, small_curves)
def test_twist_trivial_cases(a, b):
    assert twist_power(a, b, 0) == b
    assert twist_power(a, a, 17) == a


@given(tiny_curves, tiny_curves, st.integers(1, 12))
def test_closed_form_matches_stepwise(a, b, e):
    assert twist_power(a, b, e) == stepwise_twist(a, b, e)
    assert twist_power(a, b, -e) == stepwise_twist(a, b, -e)


@given(tiny_curves, tiny_curves, st.integers(200, 10_000))
def test_affine_jump_matches_iteration_for_large_powers(a, b, e):
    with audit_mode(True):
        slow = twist_power(a, b, e)
    assert twist_power(a, b, e) == slow


@given(tiny_curves, tiny_curves, st.integers(-40, 40), st.integers(-40, 40))
def test_twist_powers_compose(a, b, e1, e2):
    assert twist_power(a, b, e1 + e2) == twist_power(a, twist_power(a, b, e2), e1)


@given(tiny_curves, tiny_curves, tiny_curves, st.integers(-20, 20).filter(bool))
def test_classical_twist_inequality(a, b, c, e):
    lhs = intersection_number(twist_power(a, b, e), c)
    main = abs(e) * intersection_number(a, b) * intersection_number(a, c)
    assert abs(lhs - main) <= intersection_number(b, c)


@given(words, tiny_curves, tiny_curves)
def test_intersection_is_mapping_class_invariant(w, a, b):
    assert intersection_number(apply(w, a), apply(w, b)) == intersection_number(a, b)


@given(words, tiny_curves)
def test_inverse_word_undoes(w, c):
    assert apply(invert(w), apply(w, c)) == c
    assert apply(w, apply(invert(w), c)) == c


@given(st.lists(letters, max_size=4).map(MappingClassWord), tiny_curves, tiny_curves, st.integers(-5, 5))
def test_twist_conjugation(w, a, b, e):
    lhs = apply(w, twist_power(a, b, e))
    rhs = twist_power(apply(w, a), apply(w, b), e)
    assert lhs == rhs


def test_invert_letters():
    assert len(invert(IDENTITY_WORD)) == 0
    a = side_curve(0)
    (L,) = invert(MappingClassWord([Twist(a, 5)])).letters
    assert L == Twist(a, -5)


def test_word_round_trip_from_gamma5(bundle10):
    w = prefix_word(bundle10.powers[:5])
    g5 = bundle10.curves[5]
    assert apply(w, bundle10.curves[0]) == g5
    assert apply(invert(w), g5) == bundle10.curves[0]


def test_two_letters_give_gamma2(bundle10):
    g = bundle10.curves
    assert apply(prefix_word(bundle10.powers[:2]), g[0]) == g[2]
    assert intersection_number(g[2], g[1]) == 0


@given(words)
def test_word_json_round_trip(w):
    back = word_from_json(word_to_json(w))
    assert word_to_json(back) == word_to_json(w)
    for c in TINY[:5]:
        assert apply(back, c) == apply(w, c)
