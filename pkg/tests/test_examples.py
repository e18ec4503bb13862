import pytest

from fullgroup.element import product, shift
from fullgroup.examples import (EXAMPLE1_LABELS, block_rank_sets, example1_bratteli_report,
                                example1_elements, example1_sets, example2_sets, example2_system,
                                sturmian_n, verify_example1, verify_example2)
from fullgroup.generators import gamma_u, sigma_u
from fullgroup.report import ERRATUM, FAIL, PASS

import oracles


def test_rank_sets_match_fixed_point_blocks(sub1):
    x = sub1.points[0]
    sets = block_rank_sets(sub1)
    for j in range(-300, 300):
        v, i = x[j // 4], j % 4
        window = lambda U: x.coords(j + U.start, j + U.end)  # noqa: E731
        hits = [k for k, U in sets.items() if window(U) in U.words]
        assert hits == [(v, i)]


def test_rank_sets_partition_and_measures(sub1):
    U = example1_sets(sub1)
    from fullgroup.measure import measure
    total = sub1.empty()
    for name, V in U.items():
        assert total.isdisjoint(V)
        total = total | V
        assert measure(V) == measure(U["a"] if EXAMPLE1_LABELS[name][0] == "0" else U["e"])
    assert total == sub1.full()
    # moving one step inside a block raises the rank by one
    assert U["b"] == U["a"].shift(1) and U["c"] == U["b"].shift(1) and U["d"] == U["c"].shift(1)
    assert U["g"] == U["e"].shift(1) and U["f"] == U["g"].shift(1) and U["h"] == U["f"].shift(1)


def test_example1_suite(sub1):
    rep = verify_example1(sub1)
    verdicts = {c.name: c.verdict for c in rep.checks}
    assert rep.ok, rep.to_text()
    printed = "(s1 s2 s3)^-1 s_b (s2 s3 s4) = s_a (as printed)"
    assert verdicts.pop(printed) == ERRATUM
    assert set(verdicts.values()) == {PASS}
    assert len(verdicts) == 14


def test_example1_sigma_relations(sub1):
    s = example1_elements(sub1)
    for k in "1234":
        assert product([s[f"sigma_{k}"]] * 2).is_identity()
    # the printed right-hand factor differs from the conjugating one
    a123 = product([s["sigma_1"], s["sigma_2"], s["sigma_3"]])
    a234 = product([s["sigma_2"], s["sigma_3"], s["sigma_4"]])
    assert product([a123.inverse(), s["sigma_b"], a234]) != s["sigma_a"]


def test_example1_bratteli():
    rep = example1_bratteli_report()
    assert rep.ok, rep.to_text()


def test_sturmian_n():
    assert sturmian_n(example2_system("sqrt(2)-1")) == 1
    assert sturmian_n(example2_system("sqrt(2)/5")) == 2
    assert sturmian_n(example2_system("sqrt(5)/10")) == 3


def test_example2_n1_suite(sturm):
    rep = verify_example2(sturm)
    assert rep.ok, rep.to_text()
    assert rep.values["sgn(sigma_U)"] == (0, 1)
    assert rep.values["sgn(sigma_V)"] == (1, 0)


@pytest.mark.parametrize("alpha,n", [("sqrt(5)/10", 3), ("sqrt(2)/8", 4), ("sqrt(7)/20", 6)])
def test_example2_chain_for_larger_n(alpha, n):
    rep = verify_example2(example2_system(alpha))
    assert rep.values["n"] == n
    assert rep.ok, rep.to_text()


def test_example2_n2(sturm2):
    rep = verify_example2(sturm2)
    bad = [c for c in rep.checks if c.verdict == FAIL]
    assert [c.name for c in bad] == ["s_U gamma_[01^n.]^-1 s_U gamma_[01^n.] = gamma_[01^n0.]"]
    assert rep.values["sgn(sigma_V)"] == (1, 1)


def test_n2_counterexample_by_pointwise_action(sturm2):
    """The failing n = 2 identity, checked on orbit positions with no element algebra."""
    U, V, n = example2_sets(sturm2)
    sU = sigma_u(U)
    gC = gamma_u(sturm2.parse_cylinder("[011.]"))
    target = gamma_u(sturm2.parse_cylinder("[0110.]"))
    p = sturm2.points[0]
    lo, hi = -40, 40
    # n_{a b c d} along the orbit, composing one factor at a time from the right
    steps = [gC, sU, gC.inverse(), sU]
    pad = 20
    pos = {j: j for j in range(lo, hi + 1)}
    for g in steps:
        cv = oracles.cocycle_along(g, p, lo - pad, hi + pad)
        pos = {j: k + cv[k] for j, k in pos.items()}
    lhs = {j: pos[j] - j for j in pos}
    rhs = oracles.cocycle_along(target, p, lo, hi)
    assert lhs != rhs
