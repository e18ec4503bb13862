import math

import pytest
from hypothesis import given, strategies as st

from fullgroup.bratteli import (AFGroupElement, BratteliDiagram, af_signature, alternating_closure,
                                alternating_gen_check, consecutive_three_cycles, embed, embed_to,
                                gf2_rank, gf2_vecmat, is_commutator_member, mod2_dimension_group, parity)
from fullgroup.errors import ConfigError, Inconclusive
from fullgroup.examples import example1_diagram

import oracles


@pytest.fixture
def ex1():
    return example1_diagram()


@pytest.fixture
def ident():
    return BratteliDiagram(top=[1, 1], stationary=[[1, 0], [0, 1]])


def test_example_heights(ex1):
    assert [ex1.heights(n) for n in range(5)] == [[1], [1, 1], [4, 4], [16, 16], [64, 64]]


def test_heights_match_path_enumeration(ex1):
    B = BratteliDiagram([[[1, 2]], [[1, 1, 0], [2, 0, 1]]], stationary=[[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    for D in (ex1, B):
        levels = [D.matrix(n) for n in range(1, 6)]
        for n in range(5):
            for v in range(D.num_vertices(n)):
                assert D.heights(n)[v] == oracles.count_paths(levels, n, v) == len(D.paths(n, v))


def test_simplicity(ex1, ident):
    assert ex1.is_simple()
    assert not ident.is_simple()
    finite = BratteliDiagram([[[1, 1]], [[1, 0], [0, 1]]])
    with pytest.raises(Inconclusive):
        finite.is_simple()


def test_validation():
    with pytest.raises(ConfigError):
        BratteliDiagram([[[1], [1]]])
    with pytest.raises(ConfigError):
        BratteliDiagram(top=[1, 1], stationary=[[1, 0], [1, 0]])


def test_mod2_groups(ex1, ident):
    assert mod2_dimension_group(ex1).dimension == 0
    lim = mod2_dimension_group(ident)
    assert lim.dimension == 2 and lim.order() == 4 and lim.certified
    with pytest.raises(Inconclusive):
        mod2_dimension_group(BratteliDiagram([[[1, 1]]]))


@pytest.mark.parametrize("S", [[[2, 2], [2, 2]], [[1, 0], [0, 1]], [[1, 1], [0, 1]], [[1, 1], [1, 0]],
                               [[1, 1, 0], [0, 1, 1], [1, 0, 1]], [[3, 1, 0], [1, 1, 1], [0, 2, 1]]])
def test_mod2_dimension_matches_stable_span(S):
    B = BratteliDiagram(top=[1] * len(S), stationary=S)
    N = len(S)
    sizes = {oracles.span_size(oracles.matpow_mod2(S, k)) for k in range(N, 2 * N + 2)}
    assert len(sizes) == 1
    assert 2 ** mod2_dimension_group(B).dimension == sizes.pop()


@given(st.lists(st.lists(st.integers(0, 1), min_size=4, max_size=4), min_size=1, max_size=4))
def test_gf2_rank_matches_span_enumeration(rows):
    assert 2 ** gf2_rank([list(r) for r in rows]) == oracles.span_size(rows)


def test_embedding_is_a_homomorphism(ex1):
    a = AFGroupElement.cycle(ex1, 2, 0, [0, 1, 2])
    b = AFGroupElement.cycle(ex1, 2, 1, [1, 3])
    c = AFGroupElement.cycle(ex1, 2, 0, [2, 3])
    assert embed(a * b) == embed(a) * embed(b)
    assert (a * c).inverse() == c.inverse() * a.inverse()
    assert embed_to(a, 4) == a


def test_parity_pushes_forward(ex1):
    t = AFGroupElement.cycle(ex1, 2, 1, [0, 1])
    assert parity(t) == (0, 1)
    assert parity(embed(t)) == gf2_vecmat(parity(t), ex1.matrix(3)) == (0, 0)


def test_commutator_membership(ex1, ident):
    t = AFGroupElement.cycle(ex1, 2, 1, [0, 1])
    assert is_commutator_member(t)
    assert af_signature(t, mod2_dimension_group(ex1)) == ()
    B = BratteliDiagram(top=[1, 1], stationary=[[1, 1], [0, 1]])
    s = AFGroupElement.cycle(B, 5, 1, [0, 1])
    assert not is_commutator_member(s)
    # brute force: the parity never vanishes at later levels
    g = s
    for _ in range(4):
        g = embed(g)
        assert any(parity(g))


def test_three_cycles():
    assert consecutive_three_cycles(4) == [(1, 2, 0, 3), (0, 2, 3, 1)]


@pytest.mark.parametrize("n,size", [(3, 3), (4, 12), (5, 60), (6, 360), (7, 2520)])
def test_alternating_closure(n, size):
    assert len(alternating_closure(n)) == size == math.factorial(n) // 2
    assert alternating_gen_check(n)
