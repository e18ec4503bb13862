"""K^0 classes of clopen sets and the signature map on the index-zero subgroup.

Classes are recovered from exact measure values, which works for systems
whose trace is injective on K^0.  Two presentations are supported:

* ``sturmian``: basis ``([1_X], [1_U])`` with ``U = [0.]``; a clopen set of
  measure ``a + b*alpha`` has class ``(a, b)`` and mod-2 class
  ``(a mod 2, b mod 2)``.
* ``dyadic``: K^0 is ``Z[1/2]`` (declared by the caller); the class is the
  measure itself and the mod-2 quotient is trivial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .element import (DEFAULT_ORDER_CAP, FullGroupElement, compose, identity,
                      period_decomposition, piecewise_shift)
from .errors import NeighborhoodSearchExhausted, NonzeroIndex, UnsupportedSystem
from .measure import index, measure
from .subshift import (ClopenSet, HigherBlockSystem, PointHandle, SturmianSystem,
                       SubshiftSystem, SubstitutionSystem)

Mod2Class = tuple

DEFAULT_SPAN_CAP = 64
PI_POLICIES = ("order", "reversed")


def _root(system: SubshiftSystem) -> SubshiftSystem:
    while isinstance(system, HigherBlockSystem):
        system = system.base
    return system


class K0Presentation:
    def __init__(self, system: SubshiftSystem, kind: str):
        root = _root(system)
        if kind == "sturmian":
            if not isinstance(root, SturmianSystem):
                raise UnsupportedSystem("the sturmian presentation needs a Sturmian system")
            self.alpha = root.alpha
            self.basis = ("[1_X]", "[1_U]")
        elif kind == "dyadic":
            if not isinstance(root, SubstitutionSystem):
                raise UnsupportedSystem("the dyadic presentation is for substitution systems")
            self.basis = ("[1_X]",)
        else:
            raise UnsupportedSystem(f"unknown K0 presentation {kind!r}")
        self.system = system
        self.kind = kind

    @classmethod
    def for_system(cls, system: SubshiftSystem, k0: Optional[str] = None) -> "K0Presentation":
        root = _root(system)
        if k0 is None:
            k0 = getattr(root, "k0", None)
        if k0 is None and isinstance(root, SturmianSystem):
            k0 = "sturmian"
        if k0 is None:
            raise UnsupportedSystem(f"no K0 presentation declared for {system.name}")
        return cls(system, k0)

    def class_of(self, A: ClopenSet) -> tuple:
        mu = measure(A)
        if self.kind == "sturmian":
            al = self.alpha
            if mu.b == 0:
                b = Fraction(0)
            else:
                if mu.d != al.d:
                    raise UnsupportedSystem(f"measure {mu} is outside Z + Z*alpha")
                b = mu.b / al.b
            a = mu.a - b * al.a
            if a.denominator != 1 or b.denominator != 1:
                raise UnsupportedSystem(f"measure {mu} is outside Z + Z*alpha")
            return (int(a), int(b))
        if not mu.is_rational():
            raise UnsupportedSystem(f"measure {mu} is not dyadic")
        q = mu.a.denominator
        if q & (q - 1):
            raise UnsupportedSystem(f"measure {mu} is not in Z[1/2]")
        return (mu.a,)

    def class_mod2(self, A: ClopenSet) -> Mod2Class:
        c = self.class_of(A)
        if self.kind == "dyadic":
            return ()
        return tuple(v % 2 for v in c)

    def zero(self) -> Mod2Class:
        return () if self.kind == "dyadic" else (0, 0)

    def is_2divisible(self, A: ClopenSet) -> bool:
        return not any(self.class_mod2(A))

    def format_class(self, c: Mod2Class) -> str:
        if not c:
            return "0 (trivial group)"
        return "(" + ", ".join(str(v) for v in c) + ") wrt (" + ", ".join(self.basis) + ")"


def add_mod2(a: Mod2Class, b: Mod2Class) -> Mod2Class:
    return tuple((x + y) % 2 for x, y in zip(a, b))


def class_of(pres: K0Presentation, A: ClopenSet) -> tuple:
    return pres.class_of(A)


def class_mod2(pres: K0Presentation, A: ClopenSet) -> Mod2Class:
    return pres.class_mod2(A)


def is_2divisible(pres: K0Presentation, A: ClopenSet) -> bool:
    return pres.is_2divisible(A)


def compute_sgn_finite(g: FullGroupElement, pres: Optional[K0Presentation] = None,
                       policy: str = "lex", cap: int = DEFAULT_ORDER_CAP) -> Mod2Class:
    """Class of the union of the even-period transversals of a finite-order element."""
    pres = pres or K0Presentation.for_system(g.system)
    pd = period_decomposition(g, cap=cap, policy=policy)
    return pres.class_mod2(pd.even_union())


# ---------------------------------------------------------------------------
# decomposition [[phi]]_0 = [[phi]]_x [[phi]]_y
# ---------------------------------------------------------------------------

def preserves_orbit_halves(g: FullGroupElement, p: PointHandle) -> bool:
    """Whether ``g`` maps ``O^+(p)`` and ``O^-(p)`` into themselves.

    ``O^+ = {phi^j p : j >= 1}`` and ``O^- = {phi^j p : j <= 0}``; only
    ``|j| <= max shift`` can cross, so the check is exact.
    """
    M = g.max_abs_shift
    for j in range(-M + 1, M + 1):
        n = g.at_point(p, j)
        if (j <= 0) != (j + n <= 0):
            return False
    return True


def _in_shifted(A: ClopenSet, p: PointHandle, k: int) -> bool:
    """Whether ``phi^k(p)`` lies in ``A``."""
    if A.is_empty():
        return False
    return p.coords(A.start + k, A.end + k) in A.words


@dataclass
class Decomposition:
    gamma: FullGroupElement
    gamma1: FullGroupElement
    gamma2: FullGroupElement
    x: PointHandle
    y: PointHandle
    A: list[int]
    B: list[int]
    pi: dict[int, int]
    U: Optional[ClopenSet]
    radius: Optional[int]
    checks: dict[str, bool] = field(default_factory=dict)


def crossing_sets(g: FullGroupElement, x: PointHandle) -> tuple[list[int], list[int]]:
    M = g.max_abs_shift
    A = [n for n in range(1, M + 1) if n + g.at_point(x, n) <= 0]
    B = [n for n in range(1, M + 1) if (1 - n) + g.at_point(x, 1 - n) >= 1]
    return A, B


def decompose(g: FullGroupElement, x: Optional[PointHandle] = None, y: Optional[PointHandle] = None,
              *, pi: str = "order", span_cap: int = DEFAULT_SPAN_CAP, min_radius: int = 0,
              check_index: bool = True) -> Decomposition:
    """Split ``g = g1 g2`` with ``g1`` preserving the orbit halves of ``x`` and ``g2`` those of ``y``."""
    sys = g.system
    if x is None or y is None:
        if len(sys.points) < 2:
            raise ValueError("the system needs two distinguished points")
        x = x or sys.points[0]
        y = y or sys.points[1]
    if pi not in PI_POLICIES:
        raise ValueError(f"unknown bijection policy {pi!r}")
    if check_index and index(g) != 0:
        raise NonzeroIndex("decomposition needs an element of index zero")
    A, B = crossing_sets(g, x)
    if len(A) != len(B):
        raise NonzeroIndex(f"|A| = {len(A)} differs from |B| = {len(B)}", witness=(A, B))
    if not A:
        ident = identity(sys)
        return Decomposition(g, g, ident, x, y, A, B, {}, None, None,
                             {"product": True, "x_preserved": preserves_orbit_halves(g, x),
                              "y_preserved": True})
    Bs = sorted(B) if pi == "order" else sorted(B, reverse=True)
    pimap = dict(zip(sorted(A), Bs))
    pinv = {b: a for a, b in pimap.items()}
    l = max(A + B)
    for r in range(min_radius, span_cap + 1):
        U = sys.cylinder(x.coords(-r, r), -r)
        if any(not (U & U.shift(k)).is_empty() for k in range(1, 2 * l + 1)):
            continue
        V = sys.empty()
        for n in B:
            V = V | U.shift(1 - n)
        for n in A:
            V = V | U.shift(n)
        if any(_in_shifted(V, y, k) for k in range(0, 2 * l)):
            continue
        pieces = [(U.shift(n), 1 - pimap[n] - n) for n in A]
        pieces += [(U.shift(1 - n), n - 1 + pinv[n]) for n in B]
        g2 = piecewise_shift(sys, pieces)
        g1 = compose(g, g2.inverse())
        checks = {
            "product": compose(g1, g2) == g,
            "x_preserved": preserves_orbit_halves(g1, x),
            "y_preserved": preserves_orbit_halves(g2, y),
        }
        if all(checks.values()):
            return Decomposition(g, g1, g2, x, y, A, B, pimap, U, r, checks)
    raise NeighborhoodSearchExhausted(f"no admissible neighbourhood of radius <= {span_cap}")


def sgn(g: FullGroupElement, pres: Optional[K0Presentation] = None, *,
        x: Optional[PointHandle] = None, y: Optional[PointHandle] = None,
        pi: str = "order", policy: str = "lex", cap: int = DEFAULT_ORDER_CAP,
        span_cap: int = DEFAULT_SPAN_CAP, min_radius: int = 0) -> Mod2Class:
    """Signature of an index-zero element via the two-point decomposition."""
    pres = pres or K0Presentation.for_system(g.system)
    d = decompose(g, x, y, pi=pi, span_cap=span_cap, min_radius=min_radius)
    s1 = compute_sgn_finite(d.gamma1, pres, policy, cap)
    s2 = compute_sgn_finite(d.gamma2, pres, policy, cap)
    return add_mod2(s1, s2)
