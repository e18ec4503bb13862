import pytest
from hypothesis import given, strategies as st

from fullgroup.errors import ConfigError, ParseError
from fullgroup.quadreal import QuadReal
from fullgroup.subshift import (ClopenSet, HigherBlockSystem, SFTSystem, SturmianPoint, SturmianSystem,
                                SubstitutionPoint, SubstitutionSystem, cylinder, format_cylinder,
                                language_coherent, parse_cylinder)

import oracles


def test_sturmian_single_letters(sturm):
    assert set(sturm.words(1)) == {"0", "1"}


def test_sturmian_six_words_of_length_five(sturm):
    assert len(sturm.words(5)) == 6


@pytest.mark.parametrize("alpha", ["sqrt(2)-1", "sqrt(2)/5", "(3-sqrt(5))/2"])
def test_sturmian_language_matches_slow_rotation_coding(alpha):
    a = QuadReal.parse(alpha)
    sys = SturmianSystem(a)
    for n in (1, 2, 5, 9, 14):
        assert set(sys.words(n)) == oracles.rotation_words(a, n)
        assert len(sys.words(n)) == n + 1


def test_fast_coding_agrees_with_exact_coding(sturm):
    t = QuadReal.parse("1/3")
    fast = sturm.orbit_coding(t, -40, 40)
    slow = "".join(oracles.rotation_letter(sturm.alpha, t + k * sturm.alpha) for k in range(-40, 40))
    assert fast == slow


def test_coding_of_zero(sturm):
    a = sturm.alpha
    want = "".join("1" if (k * a).frac() >= a else "0" for k in range(4))
    assert SturmianPoint(sturm, 0).coords(0, 3) == want


def test_mixed_radicands_rejected(sturm):
    with pytest.raises(ValueError):
        sturm.orbit_coding(QuadReal.parse("sqrt(3)/3"), 0, 3)


def test_sturmian_rejects_rational_alpha():
    with pytest.raises(ConfigError):
        SturmianSystem(QuadReal.parse("1/3"))


def test_distinguished_points_are_orbit_distinct(sturm, sub1):
    x, y = sturm.points
    assert sturm.same_orbit(x.t, y.t) is None
    assert sturm.check_orbit_distinct(x, y)
    assert sub1.check_orbit_distinct(*sub1.points)


@pytest.mark.parametrize("n", [1, 2, 3, 6, 10])
def test_substitution_language_matches_iterated_images(sub1, n):
    assert set(sub1.words(n)) == oracles.substitution_words(sub1.rule, n)


def test_substitution_rejects_non_primitive():
    with pytest.raises(ConfigError):
        SubstitutionSystem({"0": "00", "1": "01"})


def test_example_points(sub1):
    x, y = sub1.points
    assert x.coords(0, 3) == "0011"
    assert x.coords(-1, -1) == "1"
    assert y[0] == "1"
    # both are fixed by sigma: the image of the window reproduces the window
    w = x.coords(-8, 7)
    assert sub1.apply(w).find(w) >= 0


def test_substitution_point_needs_interior_seed(sub1):
    with pytest.raises(ConfigError):
        SubstitutionPoint(sub1, "", "")


def test_sft_words_match_filtered_enumeration():
    import itertools
    sft = SFTSystem("abc", ["aa", "bc", "cb"])
    for n in range(1, 6):
        # words of length n that extend to bi-infinite points: extendable to length n+8 both ways
        brute = set()
        for w in itertools.product("abc", repeat=n + 8):
            s = "".join(w)
            if not any(f in s for f in sft.forbidden):
                brute.add(s[4:4 + n])
        assert set(sft.words(n)) == brute


def test_higher_block_round_trip(sturm):
    hb = HigherBlockSystem(sturm, 3)
    for w in sturm.words(7):
        assert hb.decode(hb.encode(w)) == w
    assert len(hb.words(4)) == len(sturm.words(6))


def test_language_coherent(sturm, sub1):
    assert language_coherent(sturm, 8)
    assert language_coherent(sub1, 6)


# -- cylinders and dot notation -----------------------------------------

def test_cylinder_basic(sturm):
    U = cylinder(sturm, "0", 0)
    assert str(U) == "[0.]"
    assert U == parse_cylinder(sturm, "[0.]")
    assert (U & U.shift(1)).is_empty()


def test_shift_moves_window_left(sturm):
    U = parse_cylinder(sturm, "[0.]")
    assert U.shift(1) == parse_cylinder(sturm, "[0*.]")
    assert U.shift(-1) == parse_cylinder(sturm, "[.0]")


@pytest.mark.parametrize("text,word,start", [
    ("[0.]", "0", 0), ("[.0]", "0", 1), ("[01.1]", "011", -1), ("[0*.]", "0", -1),
    ("[.*1]", "1", 2), ("[0110.]", "0110", -3),
])
def test_format_round_trip(sturm, text, word, start):
    assert format_cylinder(word, start) == text
    assert parse_cylinder(sturm, text) == cylinder(sturm, word, start)


def test_parse_repetition(sturm):
    assert parse_cylinder(sturm, "[01^2.]") == cylinder(sturm, "011", -2)


def test_parse_errors_carry_positions(sturm):
    with pytest.raises(ParseError) as e:
        parse_cylinder(sturm, "[0.2]")
    assert e.value.position == 3
    with pytest.raises(ParseError):
        parse_cylinder(sturm, "[01]")
    with pytest.raises(ParseError):
        parse_cylinder(sturm, "01.")


def test_illegal_word_gives_empty(sturm):
    assert cylinder(sturm, "00", 0).is_empty()


# -- clopen algebra, compared with explicit word sets ----------------------

def clopen_sets(system, max_len=4):
    def build(data):
        n, off, picks = data
        ws = system.words(n)
        return ClopenSet(system, off, n, [w for w, keep in zip(ws, picks) if keep])
    return st.tuples(st.integers(1, max_len), st.integers(-3, 3),
                     st.lists(st.booleans(), min_size=max_len + 1, max_size=max_len + 1)).map(build)


def _points(A: ClopenSet, lo=-8, hi=8):
    """Membership of every legal window of ``[lo, hi]`` (the brute-force view of a set)."""
    sys = A.system
    out = set()
    for w in sys.words(hi - lo + 1):
        if w[A.start - lo: A.start - lo + A.length] in A.words:
            out.add(w)
    return out


@given(st.data())
def test_boolean_algebra_matches_window_sets(sturm, data):
    A = data.draw(clopen_sets(sturm))
    B = data.draw(clopen_sets(sturm))
    assert _points(A | B) == _points(A) | _points(B)
    assert _points(A & B) == _points(A) & _points(B)
    assert _points(A - B) == _points(A) - _points(B)
    assert _points(~A) == set(sturm.words(17)) - _points(A)
    assert ~(A | B) == (~A) & (~B)
    assert A.shift(2).shift(-2) == A
    assert (A & B).issubset(A)
    assert (A - B).isdisjoint(B)


def test_contains_point(sturm):
    x = sturm.points[0]
    U = cylinder(sturm, x.coords(-2, 2), -2)
    assert U.contains_point(x)
    assert not (~U).contains_point(x)
