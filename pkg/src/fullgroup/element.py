"""Elements of the topological full group as finite block codes.

An element ``gamma`` is stored through its cocycle ``n_gamma``: a map from
the words occupying coordinates ``[-L, R]`` to integers, so that
``gamma(x) = phi^{n(x)}(x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Union

from .errors import InfiniteOrder, NotBijective, NotClosed, ResourceCapExceeded, WordTooShort
from .subshift import ClopenSet, PointHandle, SubshiftSystem

DEFAULT_ORDER_CAP = 720
TRANSVERSAL_POLICIES = ("lex", "leftmost", "rightmost")


@dataclass(frozen=True)
class InfiniteOrderFlag:
    """Returned by :func:`order` when no period up to ``cap`` was found."""

    cap: int

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"infinite (no period <= {self.cap})"


class FullGroupElement:
    __slots__ = ("system", "L", "R", "code", "_inverse", "_hash")

    def __init__(self, system: SubshiftSystem, L: int, R: int, code: Mapping[str, int],
                 *, validate: bool = True, canonical: bool = True):
        if L < 0 or R < 0:
            raise ValueError("span radii must be non-negative")
        words = system.word_set(L + R + 1)
        code = {w: int(v) for w, v in code.items()}
        if set(code) != words:
            missing = sorted(words - set(code))[:3]
            extra = sorted(set(code) - words)[:3]
            if missing:
                raise ValueError(f"code is not total; missing words {missing}")
            raise NotClosed(f"code keys outside the language: {extra}", witness=extra[0])
        self.system = system
        self.L, self.R = L, R
        self.code = code
        self._inverse: Optional[FullGroupElement] = None
        self._hash: Optional[int] = None
        if canonical:
            self._canonicalize()
        if validate:
            self._inverse = self._build_inverse()
            self._inverse._inverse = self

    # -- basic data ---------------------------------------------------
    @property
    def width(self) -> int:
        return self.L + self.R + 1

    @property
    def min_shift(self) -> int:
        return min(self.code.values())

    @property
    def max_shift(self) -> int:
        return max(self.code.values())

    @property
    def max_abs_shift(self) -> int:
        return max(abs(v) for v in self.code.values())

    def _canonicalize(self) -> None:
        changed = True
        while changed:
            changed = False
            for side in ("left", "right"):
                if (self.L if side == "left" else self.R) == 0:
                    continue
                new: dict[str, int] = {}
                ok = True
                for w, v in self.code.items():
                    key = w[1:] if side == "left" else w[:-1]
                    if new.setdefault(key, v) != v:
                        ok = False
                        break
                if ok:
                    self.code = new
                    if side == "left":
                        self.L -= 1
                    else:
                        self.R -= 1
                    changed = True

    def refined_code(self, L: int, R: int) -> dict[str, int]:
        """The same cocycle keyed on the larger window ``[-L, R]``."""
        if L < self.L or R < self.R:
            raise ValueError("refinement must enlarge the window")
        a = L - self.L
        b = a + self.width
        code = self.code
        return {u: code[u[a:b]] for u in self.system.words(L + R + 1)}

    def value(self, word: str, pos: int) -> int:
        """Cocycle at the point whose coordinate 0 is ``word[pos]``."""
        lo = pos - self.L
        if lo < 0 or pos + self.R >= len(word):
            raise WordTooShort(f"window [{lo}, {pos + self.R}] leaves a word of length {len(word)}")
        return self.code[word[lo: pos + self.R + 1]]

    def at_point(self, p: PointHandle, j: int = 0) -> int:
        """``n_gamma(phi^j(x))`` for a computable point ``x``."""
        return self.code[p.coords(j - self.L, j + self.R)]

    # -- inverse and validation --------------------------------------
    def _build_inverse(self) -> "FullGroupElement":
        m, M = self.min_shift, self.max_shift
        lo = min(-M - self.L, 0)
        hi = max(-m + self.R, 0)
        c = -lo
        inv: dict[str, int] = {}
        for y in self.system.words(hi - lo + 1):
            hits = [k for k in range(m, M + 1)
                    if self.code.get(y[c - k - self.L: c - k + self.R + 1]) == k]
            if len(hits) != 1:
                what = "not surjective" if not hits else "not injective"
                raise NotBijective(f"map is {what} near word {y!r} (coordinate 0 at index {c})",
                                   witness=y)
            inv[y] = -hits[0]
        return FullGroupElement(self.system, c, hi, inv, validate=False)

    def inverse(self) -> "FullGroupElement":
        if self._inverse is None:
            self._inverse = self._build_inverse()
            self._inverse._inverse = self
        return self._inverse

    # -- group law ----------------------------------------------------
    def compose(self, other: "FullGroupElement") -> "FullGroupElement":
        """``self ∘ other``: apply ``other`` first."""
        return compose(self, other)

    def __mul__(self, other: "FullGroupElement") -> "FullGroupElement":
        if not isinstance(other, FullGroupElement):
            return NotImplemented
        return compose(self, other)

    def __pow__(self, k: int) -> "FullGroupElement":
        return power(self, k)

    def conj(self, by: "FullGroupElement") -> "FullGroupElement":
        """``by * self * by^{-1}``."""
        return by * self * by.inverse()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FullGroupElement):
            return NotImplemented
        if other.system is not self.system:
            return False
        if (self.L, self.R) == (other.L, other.R):
            return self.code == other.code
        L, R = max(self.L, other.L), max(self.R, other.R)
        return self.refined_code(L, R) == other.refined_code(L, R)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.code.values()))
        return self._hash

    def is_identity(self) -> bool:
        return self.L == 0 and self.R == 0 and set(self.code.values()) == {0}

    def __repr__(self) -> str:
        vals = sorted(set(self.code.values()))
        return f"<FullGroupElement span=({self.L},{self.R}) words={len(self.code)} shifts={vals}>"

    def describe(self) -> str:
        """Human readable listing of the non-zero cocycle values."""
        from .subshift import format_cylinder
        lines = [f"span L={self.L} R={self.R}"]
        for w in sorted(self.code):
            v = self.code[w]
            if v:
                lines.append(f"  {format_cylinder(w, -self.L)} -> {v:+d}")
        if len(lines) == 1:
            lines.append("  identity")
        return "\n".join(lines)

    # -- action on clopen sets ---------------------------------------
    def preimage(self, A: ClopenSet) -> ClopenSet:
        """``{x : gamma(x) in A}``."""
        if A.system is not self.system:
            raise ValueError("clopen set lives on another system")
        if A.is_empty():
            return A
        m, M = self.min_shift, self.max_shift
        lo = min(-self.L, m + A.start)
        hi = max(self.R, M + A.end)
        c = -lo
        found = []
        for u in self.system.words(hi - lo + 1):
            k = self.code[u[c - self.L: c + self.R + 1]]
            s = c + k + A.start
            if u[s: s + A.length] in A.words:
                found.append(u)
        return ClopenSet(self.system, lo, hi - lo + 1, found)

    def image(self, A: ClopenSet) -> ClopenSet:
        return self.inverse().preimage(A)

    def support(self) -> ClopenSet:
        return self.fixed_set().complement()

    def fixed_set(self) -> ClopenSet:
        return fixed_set(self)


CodeLike = Union[Mapping[str, int], Callable[[str], int]]


def from_code(system: SubshiftSystem, L: int, R: int, code: CodeLike) -> FullGroupElement:
    """Validated element from a cocycle on the words of window ``[-L, R]``."""
    if callable(code):
        code = {w: code(w) for w in system.words(L + R + 1)}
    return FullGroupElement(system, L, R, code)


def identity(system: SubshiftSystem) -> FullGroupElement:
    return FullGroupElement(system, 0, 0, {a: 0 for a in system.alphabet})


def shift(system: SubshiftSystem, k: int = 1) -> FullGroupElement:
    """``phi^k``."""
    return FullGroupElement(system, 0, 0, {a: k for a in system.alphabet})


def piecewise_shift(system: SubshiftSystem, pieces: Iterable[tuple[ClopenSet, int]]) -> FullGroupElement:
    """Element equal to ``phi^k`` on each given clopen piece, identity elsewhere.

    Pieces must be pairwise disjoint; bijectivity is validated.
    """
    pieces = [(A, k) for A, k in pieces if not A.is_empty()]
    if not pieces:
        return identity(system)
    lo = min([0] + [A.start for A, _ in pieces])
    hi = max([0] + [A.end for A, _ in pieces])
    n = hi - lo + 1
    refined = [(A.refine(lo, n), k) for A, k in pieces]
    code = {}
    for u in system.words(n):
        vals = [k for S, k in refined if u in S]
        if len(vals) > 1:
            raise ValueError(f"pieces overlap on word {u!r}")
        code[u] = vals[0] if vals else 0
    return FullGroupElement(system, -lo, hi, code)


def compose(g: FullGroupElement, t: FullGroupElement) -> FullGroupElement:
    """``g ∘ t`` via ``n_{gt}(x) = n_t(x) + n_g(phi^{n_t(x)} x)``."""
    if g.system is not t.system:
        raise ValueError("elements live on different systems")
    if t.is_identity():
        return g
    if g.is_identity():
        return t
    mt, Mt = t.min_shift, t.max_shift
    lo = min(-t.L, mt - g.L, 0)
    hi = max(t.R, Mt + g.R, 0)
    c = -lo
    tc, gc = t.code, g.code
    tl, tr, gl, gr = t.L, t.R, g.L, g.R
    code = {}
    for u in g.system.words(hi - lo + 1):
        k = tc[u[c - tl: c + tr + 1]]
        p = c + k
        code[u] = k + gc[u[p - gl: p + gr + 1]]
    out = FullGroupElement(g.system, c, hi, code, validate=False)
    out._inverse = None
    return out


def product(elements: Iterable[FullGroupElement], system: Optional[SubshiftSystem] = None) -> FullGroupElement:
    """Left-to-right product ``e1 * e2 * ... * ek``."""
    out = None
    for e in elements:
        out = e if out is None else compose(out, e)
    if out is None:
        if system is None:
            raise ValueError("empty product needs a system")
        return identity(system)
    return out


def power(g: FullGroupElement, k: int) -> FullGroupElement:
    if k < 0:
        g, k = g.inverse(), -k
    result = identity(g.system)
    base = g
    while k:
        if k & 1:
            result = compose(result, base)
        k >>= 1
        if k:
            base = compose(base, base)
    return result


def inverse(g: FullGroupElement) -> FullGroupElement:
    return g.inverse()


def equal(g: FullGroupElement, t: FullGroupElement) -> bool:
    return g == t


def commutator(a: FullGroupElement, b: FullGroupElement) -> FullGroupElement:
    """``[a, b] = a^{-1} b^{-1} a b``."""
    return product([a.inverse(), b.inverse(), a, b])


def index_cocycle(g: FullGroupElement, word: str, offset: Optional[int] = None) -> int:
    """Value of ``n_gamma`` on the cylinder of ``word`` placed at ``offset``.

    ``offset`` is the coordinate of ``word[0]`` (default ``-L``).
    """
    if offset is None:
        offset = -g.L
    pos = -offset
    if pos - g.L < 0 or pos + g.R >= len(word):
        raise WordTooShort(f"word {word!r} at offset {offset} does not cover the window [-{g.L}, {g.R}]")
    w = word[pos - g.L: pos + g.R + 1]
    if w not in g.code:
        raise ValueError(f"{word!r} is not in the language")
    return g.code[w]


def fixed_set(g: FullGroupElement) -> ClopenSet:
    return ClopenSet(g.system, -g.L, g.width, [w for w, v in g.code.items() if v == 0])


# ---------------------------------------------------------------------------
# Orbits, order and period decomposition
# ---------------------------------------------------------------------------

def _orbit(g: FullGroupElement, u: str, c: int, limit: int) -> Optional[list[int]]:
    """Offsets ``o_0=0, o_1, ...`` of the gamma-orbit of a point with window ``u``.

    ``u[c]`` is coordinate 0.  Returns the offsets of one full cycle, or None
    if the orbit leaves the window or exceeds ``limit`` steps.
    """
    offs = [0]
    o = 0
    L, R, code = g.L, g.R, g.code
    n = len(u)
    for _ in range(limit):
        p = c + o
        if p - L < 0 or p + R >= n:
            return None
        o += code[u[p - L: p + R + 1]]
        if o == 0:
            return offs
        offs.append(o)
    return None


def _cycle_scan(g: FullGroupElement, S: int, cap: int):
    """Cycle data for all words of radius ``S``; None if some orbit escapes.

    Raises InfiniteOrder once a cycle longer than ``cap`` is seen.
    """
    out = {}
    for u in g.system.words(2 * S + 1):
        offs = _orbit(g, u, S, cap + 1)
        if offs is None:
            # distinguish "escaped" from "too long"
            if _orbit(g, u, S, 10 ** 9) is not None:
                raise InfiniteOrder(f"a cycle is longer than the cap {cap}", witness=u)
            return None
        out[u] = offs
    return out


def _finite_order_radius(g: FullGroupElement, cap: int):
    """Smallest doubling radius where every orbit closes, with its cycle data."""
    M = max(g.max_abs_shift, 1)
    S = max(g.L, g.R, 1)
    limit = cap * M + max(g.L, g.R) + 1
    while True:
        data = _cycle_scan(g, S, cap)
        if data is not None:
            return S, data
        if S >= limit:
            return None
        S = min(2 * S, limit)


def _index_is_nonzero(g: FullGroupElement) -> bool:
    from .measure import index, supports_measure
    if not supports_measure(g.system):
        return False
    return index(g) != 0


def order(g: FullGroupElement, cap: int = DEFAULT_ORDER_CAP) -> Union[int, InfiniteOrderFlag]:
    """Least ``k >= 1`` with ``g^k = id`` if it is at most ``cap``."""
    if cap < 1:
        raise ValueError("cap must be positive")
    if g.is_identity():
        return 1
    if _index_is_nonzero(g):
        return InfiniteOrderFlag(cap)
    try:
        found = _finite_order_radius(g, cap)
    except InfiniteOrder:
        return InfiniteOrderFlag(cap)
    if found is None:
        return InfiniteOrderFlag(cap)
    _, data = found
    k = 1
    for offs in data.values():
        k = math.lcm(k, len(offs))
    return k if k <= cap else InfiniteOrderFlag(cap)


@dataclass
class PeriodDecomposition:
    """Pairs ``(n, V_n)``: ``V_n`` meets every gamma-cycle of length ``n`` once."""

    element: FullGroupElement
    pieces: list[tuple[int, ClopenSet]]
    policy: str

    def even_union(self) -> ClopenSet:
        out = self.element.system.empty()
        for n, V in self.pieces:
            if n % 2 == 0:
                out = out | V
        return out

    def periods(self) -> list[int]:
        return [n for n, _ in self.pieces]


def period_decomposition(g: FullGroupElement, cap: int = DEFAULT_ORDER_CAP,
                         policy: str = "lex", max_refine: int = 256) -> PeriodDecomposition:
    """Transversals of the cycles of a finite-order element.

    ``policy`` picks the cycle point that goes into ``V_n``: ``lex`` takes the
    point with the lexicographically least window (refining on ties),
    ``leftmost``/``rightmost`` the point with the least/greatest offset.
    """
    if policy not in TRANSVERSAL_POLICIES:
        raise ValueError(f"unknown transversal policy {policy!r}")
    found = _finite_order_radius(g, cap)
    if found is None:
        raise InfiniteOrder(f"no finite order up to cap {cap}")
    _, data = found
    D = max(max(abs(o) for o in offs) for offs in data.values())
    r = max(g.L, g.R)
    for _ in range(max_refine):
        S = D + r
        chosen: dict[int, list[str]] = {}
        tie = False
        for u in g.system.words(2 * S + 1):
            offs = _orbit(g, u, S, cap + 1)
            if offs is None:  # pragma: no cover - excluded by the choice of D
                raise InfiniteOrder("orbit left the analysed window")
            n = len(offs)
            if policy == "leftmost":
                pick = min(range(n), key=offs.__getitem__)
            elif policy == "rightmost":
                pick = max(range(n), key=offs.__getitem__)
            else:
                keys = [u[S + o - r: S + o + r + 1] for o in offs]
                best = min(keys)
                if keys.count(best) > 1:
                    tie = True
                    break
                pick = keys.index(best)
            if pick == 0:
                chosen.setdefault(n, []).append(u)
            else:
                chosen.setdefault(n, [])
        if not tie:
            pieces = [(n, ClopenSet(g.system, -S, 2 * S + 1, ws)) for n, ws in sorted(chosen.items())]
            return PeriodDecomposition(g, pieces, policy)
        r = 2 * r + 1
    raise ResourceCapExceeded("could not separate cycle points within the refinement cap")
