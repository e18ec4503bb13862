"""Hypothesis strategies producing admissible cylinders and elements."""

from hypothesis import strategies as st

from fullgroup.element import product, shift
from fullgroup.generators import gamma_u, sigma_u, tau_u
from fullgroup.measure import first_return
from fullgroup.subshift import cylinder


_CACHE: dict = {}


def admissible_list(system, gap, max_len=5):
    """Cylinders ``U`` (length <= max_len, offsets -2..2) with ``U, phi(U), ..., phi^gap(U)`` disjoint."""
    key = (id(system), gap, max_len)
    if key not in _CACHE:
        out = []
        for n in range(1, max_len + 1):
            for w in system.words(n):
                for off in range(-2, 3):
                    U = cylinder(system, w, off)
                    if all((U & U.shift(k)).is_empty() for k in range(1, gap + 1)):
                        out.append(U)
        if not out:
            raise ValueError(f"no {gap}-separated cylinder of length <= {max_len}")
        _CACHE[key] = out
    return _CACHE[key]


def admissible_cylinder(system, gap, max_len=5):
    return st.sampled_from(admissible_list(system, gap, max_len))


def finite_order_generator(system, max_len=5):
    """A single gamma_U, tau_U or sigma_U on a random admissible cylinder."""
    return st.one_of(
        admissible_cylinder(system, 1, max_len).map(sigma_u),
        admissible_cylinder(system, 2, max_len).map(gamma_u),
        admissible_cylinder(system, 4, max_len).map(tau_u),
    )


def index_zero_word(system, max_factors=3, max_len=4):
    """Products of finite-order generators, phi-conjugates and phi_U phi_V^-1."""
    phi = shift(system)
    gen = finite_order_generator(system, max_len)
    conj = st.tuples(gen, st.integers(-2, 2)).map(lambda t: product([phi ** t[1], t[0], phi ** -t[1]]))
    ret = st.tuples(admissible_cylinder(system, 0, 3), admissible_cylinder(system, 0, 3)).map(
        lambda t: first_return(t[0]) * first_return(t[1]).inverse())
    return st.lists(st.one_of(gen, conj, ret), min_size=1, max_size=max_factors).map(
        lambda gs: product(gs, system))


def any_word(system, max_factors=3, max_len=4):
    phi = shift(system)
    piece = st.one_of(finite_order_generator(system, max_len), st.just(phi), st.just(phi.inverse()),
                      admissible_cylinder(system, 0, 3).map(first_return))
    return st.lists(piece, min_size=1, max_size=max_factors).map(lambda gs: product(gs, system))
