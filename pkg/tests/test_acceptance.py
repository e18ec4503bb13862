"""Acceptance suite.  Each test prints one ``PASS``/``FAIL`` line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines.  Sampling
uses a seeded ``random.Random`` so the lines are the same on every run.
"""

import itertools
import random
import time

import pytest

from fullgroup.bratteli import BratteliDiagram, alternating_closure, mod2_dimension_group
from fullgroup.element import compose, order, product, shift
from fullgroup.element import DEFAULT_ORDER_CAP
from fullgroup.examples import example1_diagram, example2_system, verify_example1, verify_example2
from fullgroup.generators import gamma_u, sigma_u, tau_u
from fullgroup.ktheory import K0Presentation, add_mod2, decompose, preserves_orbit_halves, sgn
from fullgroup.measure import first_return, index, measure
from fullgroup.report import ERRATUM, PASS
from fullgroup.subshift import cylinder

import oracles
import strategies as S

SEED = 20240611
# neighbourhood radius bound for the homomorphism samples; products with
# shifts up to 14 need radius 65, one past the library default
SPAN_CAP = 128


def report(n, ok, msg, seconds=None):
    t = f" [{seconds:.1f}s]" if seconds is not None else ""
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {msg}{t}")


# -- seeded samplers ---------------------------------------------------------

def _generator(system, rng, max_len=4):
    kind = rng.randrange(3)
    if kind == 0:
        return sigma_u(rng.choice(S.admissible_list(system, 1, max_len)))
    if kind == 1:
        return gamma_u(rng.choice(S.admissible_list(system, 2, max_len)))
    return tau_u(rng.choice(S.admissible_list(system, 4, max_len)))


def _index_zero_piece(system, rng):
    phi = shift(system)
    kind = rng.randrange(3)
    if kind == 0:
        return _generator(system, rng)
    if kind == 1:
        j = rng.randint(-2, 2)
        return product([phi ** j, _generator(system, rng), phi ** -j])
    U = rng.choice(S.admissible_list(system, 0, 3))
    V = rng.choice(S.admissible_list(system, 0, 3))
    return first_return(U) * first_return(V).inverse()


def index_zero_word(system, rng, max_factors=3):
    return product([_index_zero_piece(system, rng) for _ in range(rng.randint(1, max_factors))], system)


def any_word(system, rng, max_factors=3):
    phi = shift(system)
    pieces = []
    for _ in range(rng.randint(1, max_factors)):
        kind = rng.randrange(4)
        if kind == 0:
            pieces.append(phi if rng.random() < 0.5 else phi.inverse())
        elif kind == 1:
            pieces.append(first_return(rng.choice(S.admissible_list(system, 0, 3))))
        else:
            pieces.append(_generator(system, rng))
    return product(pieces, system)


def finite_order_word(system, rng, max_factors=3):
    """Products of generators whose order is finite within the default cap."""
    while True:
        g = product([_generator(system, rng) for _ in range(rng.randint(1, max_factors))], system)
        if order(g):
            return g


# -- criteria ----------------------------------------------------------------

def test_criterion_1_example1_identities(sub1):
    t = time.time()
    rep = verify_example1(sub1)
    dt = time.time() - t
    errata = [c for c in rep.checks if c.verdict == ERRATUM]
    passed = [c for c in rep.checks if c.verdict == PASS]
    ok = rep.ok and len(passed) == 14 and len(errata) == 1 and dt < 120
    report(1, ok, f"{len(passed)} equations verified exactly; one equation of the block is false as "
                  f"printed (second conjugator should be s1 s2 s3) and its corrected form verifies", dt)
    assert ok


def test_criterion_2_example2_identities(sturm, sturm2):
    t = time.time()
    lines, ok = [], True
    for system in (sturm, sturm2):
        rep = verify_example2(system)
        n = rep.values["n"]
        bad = [c for c in rep.checks if not c.ok]
        pres = K0Presentation.for_system(system)
        sU, sV = rep.values["sgn(sigma_U)"], rep.values["sgn(sigma_V)"]
        span = {add_mod2(tuple(a * x for x in sU), tuple(b * x for x in sV)) for a in (0, 1) for b in (0, 1)}
        ok &= not bad and len(span) == 4 and len(pres.basis) == 2
        lines.append(f"n={n}: " + ("all identities exact" if not bad else
                                    "; ".join(f"{c.name} FAILS (witness {c.witness})" for c in bad))
                     + f", sgn(s_U)={sU}, sgn(s_V)={sV}, span size {len(span)}")
    dt = time.time() - t
    ok &= dt < 120
    report(2, ok, " | ".join(lines), dt)
    assert ok


def test_criterion_3_signature_formula(sturm):
    rng = random.Random(SEED + 3)
    pres = K0Presentation.for_system(sturm)
    bad = 0
    for _ in range(24):
        U = rng.choice(S.admissible_list(sturm, 0, 4))
        V = rng.choice(S.admissible_list(sturm, 0, 4))
        g = first_return(U) * first_return(V).inverse()
        bad += sgn(g, pres) != add_mod2(pres.class_mod2(U), pres.class_mod2(V))
    report(3, bad == 0, f"sgn(phi_U phi_V^-1) = [U] + [V] mod 2 on 24 random cylinder pairs, {bad} mismatches")
    assert bad == 0


def test_criterion_4_homomorphism_laws(sturm):
    rng = random.Random(SEED + 4)
    pres = K0Presentation.for_system(sturm)
    bad_i = bad_s = 0
    for _ in range(100):
        g, h = any_word(sturm, rng), any_word(sturm, rng)
        bad_i += index(g * h) != index(g) + index(h)
    for _ in range(100):
        g, h = index_zero_word(sturm, rng, 2), index_zero_word(sturm, rng, 2)
        s = [sgn(e, pres, span_cap=SPAN_CAP) for e in (g * h, g, h)]
        bad_s += s[0] != add_mod2(s[1], s[2])
    ok = bad_i == 0 and bad_s == 0
    report(4, ok, f"index additive on 100 pairs ({bad_i} failures), sgn additive on 100 index-zero pairs "
                  f"({bad_s} failures), neighbourhood radius cap {SPAN_CAP}")
    assert ok


def test_criterion_5_well_definedness(sturm):
    rng = random.Random(SEED + 5)
    pres = K0Presentation.for_system(sturm)
    x, y = sturm.points
    bad = 0
    for _ in range(24):
        g = finite_order_word(sturm, rng)
        base = sgn(g, pres)
        variants = [sgn(g, pres, x=y, y=x), sgn(g, pres, pi="reversed"),
                    sgn(g, pres, policy="leftmost"), sgn(g, pres, policy="rightmost")]
        bad += any(v != base for v in variants)
    report(5, bad == 0, f"sgn unchanged under swapped points, reversed pi and transversal policy on "
                        f"24 finite-order elements, {bad} disagreements")
    assert bad == 0


@pytest.mark.parametrize("name,max_len", [("sturm", 4), ("sub1", 7)])
def test_criterion_6_orders(request, name, max_len):
    system = request.getfixturevalue(name)
    bad = checked = 0
    for gap, build, want in ((1, sigma_u, 2), (2, gamma_u, 3), (4, tau_u, 5)):
        for U in S.admissible_list(system, gap, max_len)[:40]:
            checked += 1
            bad += order(build(U)) != want
    report(6, bad == 0, f"{system.name}: orders 2, 3, 5 of sigma_U, gamma_U, tau_U on {checked} admissible "
                        f"cylinders, {bad} wrong")
    assert bad == 0


def test_criterion_7_bratteli():
    t = time.time()
    B = example1_diagram()
    simple = B.is_simple(16)
    heights_ok = all(B.heights(n) == [sum(B.matrix(n)[v][w] * B.heights(n - 1)[v]
                                          for v in range(B.num_vertices(n - 1))) for w in range(2)]
                     for n in range(1, 12))
    brute = all(B.heights(n) == [oracles.count_paths([B.matrix(k) for k in range(1, n + 1)], n, v)
                                 for v in range(2)] for n in range(1, 7))
    closed_form = all(B.heights(n) == [4 ** (n - 1)] * 2 for n in range(1, 12))
    trivial = mod2_dimension_group(B).dimension == 0
    ident = mod2_dimension_group(BratteliDiagram(top=[1, 1], stationary=[[1, 0], [0, 1]]))
    dt = time.time() - t
    ok = simple and heights_ok and brute and closed_form and trivial and ident.dimension == 2 and dt < 10
    report(7, ok, f"simple={simple}, height recursion={heights_ok} (path count oracle {brute}, h = 4^(n-1) {closed_form}), "
                  f"mod-2 group of example trivial={trivial}, identity diagram Z2^{ident.dimension}", dt)
    assert ok


def test_criterion_8_alternating():
    t = time.time()
    sizes = {n: len(alternating_closure(n)) for n in range(3, 8)}
    even = {n: sum(1 for p in itertools.permutations(range(n)) if _even(p)) for n in range(3, 8)}
    dt = time.time() - t
    ok = sizes == even == {3: 3, 4: 12, 5: 60, 6: 360, 7: 2520} and dt < 30
    report(8, ok, f"closure sizes {sizes}", dt)
    assert ok


def _even(p):
    return sum(1 for i in range(len(p)) for j in range(i) if p[j] > p[i]) % 2 == 0


def test_criterion_9_decomposition(sturm):
    rng = random.Random(SEED + 9)
    x, y = sturm.points
    contract = over_cap = infinite = 0
    worst = 1
    for _ in range(24):
        g = index_zero_word(sturm, rng)
        d = decompose(g)
        contract += not (compose(d.gamma1, d.gamma2) == g and preserves_orbit_halves(d.gamma1, x)
                         and preserves_orbit_halves(d.gamma2, y))
        for part in (d.gamma1, d.gamma2):
            if not order(part, DEFAULT_ORDER_CAP):
                over_cap += 1
                o = order(part, 100000)
                if o:
                    worst = max(worst, o)
                else:
                    infinite += 1
    ok = contract == 0 and over_cap == 0
    report(9, ok, f"24 samples: {contract} contract failures; {over_cap} parts have order above the "
                  f"default cap {DEFAULT_ORDER_CAP} (all but {infinite} finite below 100000, largest {worst})")
    assert ok


def test_criterion_10_oracle_cross_checks(sturm, sub1):
    words_ok = all(len(sturm.words(n)) == n + 1 for n in range(1, 31))
    meas_ok = True
    for system in (sturm, sub1):
        for n in range(0, 10):
            for w in system.words(n) if n else [""]:
                A = cylinder(system, w, 0) if w else system.full()
                total = sum((measure(cylinder(system, w + a, 0)) for a in system.alphabet
                             if w + a in system.words(n + 1)), start=measure(system.empty()))
                meas_ok &= measure(A) == total
    rng = random.Random(SEED + 10)
    idx_ok = all(index(finite_order_word(system, rng)) == 0 for system in (sturm, sub1) for _ in range(20))
    ok = words_ok and meas_ok and idx_ok
    report(10, ok, f"|words(n)| = n+1 for n <= 30: {words_ok}; mu([w]) = sum mu([wa]) up to length 10: "
                   f"{meas_ok}; finite-order elements have index 0: {idx_ok}")
    assert ok
