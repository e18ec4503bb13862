"""Named elements gamma_U, tau_U, sigma_U and the generating family F.

``gamma_U`` cycles ``phi^{-1}(U) -> U -> phi(U) -> phi^{-1}(U)``,
``tau_U = gamma_{phi^{-1}U} gamma_{phi U}`` is a 5-cycle, and ``sigma_U``
swaps ``U`` and ``phi(U)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Optional

from .element import FullGroupElement, commutator, identity, piecewise_shift, product
from .errors import DisjointnessViolated, RecodingRequired
from .report import INAPPLICABLE, Check, Report, check_equal
from .subshift import ClopenSet, HigherBlockSystem, SubshiftSystem, cylinder


def _require_disjoint(U: ClopenSet, shifts: range, what: str) -> None:
    for k in shifts:
        if k and not (U & U.shift(k)).is_empty():
            raise DisjointnessViolated(f"{what}: U and phi^{k}(U) intersect", witness=str(U & U.shift(k)))


def pairwise_disjoint(sets: list[ClopenSet]) -> bool:
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if not (sets[i] & sets[j]).is_empty():
                return False
    return True


def gamma_u(U: ClopenSet) -> FullGroupElement:
    """The order-three element supported on ``phi^{-1}(U) ∪ U ∪ phi(U)``."""
    if U.is_empty():
        return identity(U.system)
    _require_disjoint(U, range(1, 3), "gamma_U")
    return piecewise_shift(U.system, [(U.shift(-1), 1), (U, 1), (U.shift(1), -2)])


def tau_u(U: ClopenSet) -> FullGroupElement:
    if U.is_empty():
        return identity(U.system)
    _require_disjoint(U, range(1, 5), "tau_U")
    return gamma_u(U.shift(-1)) * gamma_u(U.shift(1))


def sigma_u(U: ClopenSet) -> FullGroupElement:
    """The involution swapping ``U`` and ``phi(U)``."""
    if U.is_empty():
        return identity(U.system)
    _require_disjoint(U, range(1, 2), "sigma_U")
    return piecewise_shift(U.system, [(U, 1), (U.shift(1), -1)])


def phi_u(U: ClopenSet) -> FullGroupElement:
    from .measure import first_return
    return first_return(U)


# ---------------------------------------------------------------------------
# conjugation and commutator identities
# ---------------------------------------------------------------------------

def verify_conjugation_identities(V: ClopenSet, U: ClopenSet) -> Report:
    """Check the tau-conjugation rule and the gamma-commutator rule for (V, U)."""
    rep = Report(f"conjugation identities for V={V}, U={U}")
    sys = U.system
    five = [V.shift(k) for k in range(-2, 3)]
    if pairwise_disjoint(five) and U.issubset(V):
        t = tau_u(V)
        g = gamma_u(U)
        rep.add(check_equal("tau_V gamma_U tau_V^-1 = gamma_phi(U)", "tau conjugation",
                            product([t, g, t.inverse()]), gamma_u(U.shift(1))))
        rep.add(check_equal("tau_V^-1 gamma_U tau_V = gamma_phi^-1(U)", "tau conjugation",
                            product([t.inverse(), g, t]), gamma_u(U.shift(-1))))
    else:
        rep.add(Check("tau conjugation", "tau conjugation", INAPPLICABLE,
                      detail="needs phi^-2(V)..phi^2(V) disjoint and U inside V"))
    parts = [U.shift(-1), U, U.shift(1) | V.shift(-1), V, V.shift(1)]
    if pairwise_disjoint(parts):
        gV, gU = gamma_u(V), gamma_u(U)
        rep.add(check_equal("gamma_V gamma_U^-1 gamma_V^-1 gamma_U = gamma_(phi(U) ∩ phi^-1(V))",
                            "gamma commutator",
                            product([gV, gU.inverse(), gV.inverse(), gU]),
                            gamma_u(U.shift(1) & V.shift(-1))))
    else:
        rep.add(Check("gamma commutator", "gamma commutator", INAPPLICABLE,
                      detail="needs phi^-1(U), U, phi(U) ∪ phi^-1(V), V, phi(V) disjoint"))
    return rep


# ---------------------------------------------------------------------------
# separation and the standard family
# ---------------------------------------------------------------------------

def has_separation(system: SubshiftSystem, gap: int = 4) -> bool:
    """Whether ``x_i != x_j`` whenever ``0 < |i-j| <= gap`` for all points."""
    return all(len(set(w)) == len(w) for w in system.words(gap + 1))


def separation_block_length(system: SubshiftSystem, gap: int = 4, max_k: int = 64) -> int:
    """Least ``k`` such that the ``k``-block recoding has the separation property."""
    for k in range(1, max_k + 1):
        # recoded symbols at distance p agree iff a base word of length k+p has period p
        if all(not any(w[:k] == w[p:] for w in system.words(k + p)) for p in range(1, gap + 1)):
            return k
    raise RecodingRequired(f"no block length <= {max_k} separates the system")


@dataclass
class GeneratorFamily:
    system: SubshiftSystem
    original: SubshiftSystem
    block_length: int
    gammas: dict[str, FullGroupElement] = field(default_factory=dict)
    taus: dict[str, FullGroupElement] = field(default_factory=dict)
    _derived: dict = field(default_factory=dict, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    def letters(self):
        return self.system.alphabet


def build_standard_family(system: SubshiftSystem, recode: bool = True, gap: int = 4) -> GeneratorFamily:
    """``F = {gamma_[ab.c]}`` plus the derived ``tau_[a.]`` on a separated presentation."""
    if len(system.alphabet) < 2:
        raise ValueError("a one-letter alphabet carries no aperiodic subshift")
    if has_separation(system, gap):
        work, k = system, 1
    elif not recode:
        raise RecodingRequired("the subshift lacks the separation property; enable recoding")
    else:
        k = separation_block_length(system, gap)
        work = HigherBlockSystem(system, k)
    fam = GeneratorFamily(work, system, k)
    for w in work.words(3):
        fam.gammas[f"gamma[{w[0]}{w[1]}.{w[2]}]"] = gamma_u(cylinder(work, w, -1))
    for a in work.alphabet:
        fam.taus[f"tau[{a}.]"] = _tau_from_family(fam, a)
    return fam


def _normal_form(fam: GeneratorFamily, word: str) -> FullGroupElement:
    """``gamma`` of ``[a_-m ... a_0 . a_1]`` from F, by induction on ``m``."""
    key = ("nf", word)
    got = fam._derived.get(key)
    if got is not None:
        return got
    sys = fam.system
    m = len(word) - 2
    if m == 0:
        # disjoint union of the F-cylinders [c a_0 . a_1]
        g = product([fam.gammas[f"gamma[{c}{word[0]}.{word[1]}]"] for c in sys.alphabet
                     if sys.is_word(c + word)], sys)
    elif m == 1:
        g = fam.gammas[f"gamma[{word[0]}{word[1]}.{word[2]}]"]
    else:
        # [a_-m..a_0.a_1] = phi(U') ∩ phi^-1(V), U' = [a_-m..a_-1.a_0], V = [a_0 a_1.]
        gu = _normal_form(fam, word[:-1])
        gv = _gamma_two_left(fam, word[-2:])
        g = product([gv, gu.inverse(), gv.inverse(), gu])
    if g != gamma_u(cylinder(sys, word, -(len(word) - 2))):
        raise AssertionError(f"derivation of gamma for {word!r} disagrees with the direct element")
    fam._derived[key] = g
    return g


def _gamma_two_left(fam: GeneratorFamily, ab: str) -> FullGroupElement:
    """``gamma_[ab.]``: the union of the F-cylinders ``[ab.c]``."""
    key = ("left2", ab)
    got = fam._derived.get(key)
    if got is None:
        sys = fam.system
        got = product([fam.gammas[f"gamma[{ab[0]}{ab[1]}.{c}]"] for c in sys.alphabet
                       if sys.is_word(ab + c)], sys)
        fam._derived[key] = got
    return got


def _tau_from_family(fam: GeneratorFamily, a: str) -> FullGroupElement:
    """``tau_[a.] = gamma_{phi^-1[a.]} gamma_{phi[a.]}``, both built from F."""
    sys = fam.system
    # phi^-1[a.] is the union of the [c.a]; phi[a.] is the union of the [ae.]
    right = product([_normal_form(fam, c + a) for c in sys.alphabet if sys.is_word(c + a)], sys)
    left = product([_gamma_two_left(fam, a + e) for e in sys.alphabet if sys.is_word(a + e)], sys)
    t = right * left
    if t != tau_u(cylinder(sys, a, 0)):
        raise AssertionError(f"tau[{a}.] from F disagrees with the direct element")
    return t


def derive_gamma(fam: GeneratorFamily, word: str, offset: int) -> FullGroupElement:
    """``gamma_W`` for the cylinder of ``word`` at ``offset``, built from F.

    The window must contain coordinate 0.  The cylinder is produced in the
    normal form window ``[-m, 1]`` and moved into place by conjugating with
    ``tau_[a.]``, ``a`` being the letter at coordinate 0; each step is
    compared with the direct element.
    """
    sys = fam.system
    s, e = offset, offset + len(word) - 1
    if not s <= 0 <= e:
        raise ValueError("cylinder window must contain coordinate 0")
    key = ("cyl", word, offset)
    with fam._lock:
        got = fam._derived.get(key)
        if got is not None:
            return got
        if e >= 1:
            g = _normal_form(fam, word)
            start = -(len(word) - 2)
            for _ in range(e - 1):
                t = fam.taus[f"tau[{word[-start]}.]"]
                g = product([t.inverse(), g, t])
                start += 1
        elif len(word) == 1:
            g = product([_normal_form(fam, word + c) for c in sys.alphabet if sys.is_word(word + c)], sys)
        else:
            t = fam.taus[f"tau[{word[-2]}.]"]
            g = product([t, _normal_form(fam, word), t.inverse()])
        if g != gamma_u(cylinder(sys, word, offset)):
            raise AssertionError(f"derived gamma for {word!r}@{offset} disagrees with the direct element")
        fam._derived[key] = g
        return g


def derivation_closure(fam: GeneratorFamily, span: int = 6, offsets: Optional[list[int]] = None) -> Report:
    """Derive ``gamma_W`` for every cylinder with at most ``span`` letters.

    By default every placement whose window contains coordinate 0 is used.
    """
    sys = fam.system
    rep = Report(f"derivation closure up to span {span} on {sys.name}")
    count = 0
    for n in range(1, span + 1):
        for w in sys.words(n):
            places = offsets if offsets is not None else range(1 - n, 1)
            for off in places:
                if not off <= 0 <= off + n - 1:
                    continue
                try:
                    derive_gamma(fam, w, off)
                    count += 1
                except AssertionError as exc:
                    rep.add(Check(f"gamma[{w}@{off}]", "derivation closure", "fail", witness=str(exc)))
    rep.values["derived_cylinders"] = count
    if rep.ok:
        rep.add(Check(f"all {count} cylinders derived from F", "derivation closure", "pass"))
    return rep
