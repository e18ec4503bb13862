"""Two-sided subshifts with exact language oracles, cylinders and clopen sets.

Conventions
-----------
Points are bi-infinite sequences ``x = (x_i)``.  The shift ``phi`` is the
left shift, ``phi(x)_i = x_{i+1}``, so ``phi^k(A) = {x : phi^{-k}(x) in A}``
moves a cylinder ``k`` coordinates to the left.  A cylinder is a word pinned
at a start coordinate; in dot notation ``[a_{-m}...a_0.a_1...a_n]`` the
letter before the dot sits at coordinate 0.

Words are Python strings and every alphabet symbol is a single character.
"""

from __future__ import annotations

import itertools
import math
import re
import string
import threading
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import ConfigError, ParseError, ResourceCapExceeded
from .quadreal import QuadReal

DEFAULT_MAX_WORD_LENGTH = 20000


class SubshiftSystem:
    """Base class: a two-sided subshift given by its language."""

    kind = "abstract"

    def __init__(self, alphabet: Iterable[str], *, max_word_length: int = DEFAULT_MAX_WORD_LENGTH):
        symbols = tuple(alphabet)
        if not symbols:
            raise ConfigError("alphabet must be non-empty")
        if len(set(symbols)) != len(symbols):
            raise ConfigError("alphabet symbols must be distinct")
        if any(len(s) != 1 for s in symbols):
            raise ConfigError("alphabet symbols must be single characters")
        self.alphabet = symbols
        self.max_word_length = max_word_length
        self.points: tuple[PointHandle, ...] = ()
        self._words: dict[int, tuple[str, ...]] = {}
        self._word_sets: dict[int, frozenset[str]] = {}
        self._lock = threading.RLock()
        self.name = self.kind

    # -- language -----------------------------------------------------
    def _compute_words(self, n: int) -> set[str]:
        raise NotImplementedError

    def words(self, n: int) -> tuple[str, ...]:
        """All length-``n`` factors of the subshift, sorted."""
        if n < 1:
            raise ValueError("word length must be positive")
        if n > self.max_word_length:
            raise ResourceCapExceeded(f"word length {n} exceeds cap {self.max_word_length}")
        with self._lock:
            cached = self._words.get(n)
            if cached is None:
                found = sorted(self._compute_words(n))
                cached = tuple(found)
                self._words[n] = cached
                self._word_sets[n] = frozenset(found)
            return cached

    def word_set(self, n: int) -> frozenset[str]:
        self.words(n)
        return self._word_sets[n]

    def is_word(self, w: str) -> bool:
        return len(w) > 0 and w in self.word_set(len(w))

    def set_points(self, points: Sequence["PointHandle"]) -> None:
        self.points = tuple(points)

    # -- clopen sets --------------------------------------------------
    def cylinder(self, word: str, offset: int = 0) -> "ClopenSet":
        return cylinder(self, word, offset)

    def full(self) -> "ClopenSet":
        return ClopenSet(self, 0, 1, self.alphabet)

    def empty(self) -> "ClopenSet":
        return ClopenSet(self, 0, 1, ())

    def parse_cylinder(self, text: str) -> "ClopenSet":
        return parse_cylinder(self, text)

    def check_orbit_distinct(self, x: "PointHandle", y: "PointHandle", bound: int = 64,
                             window: Optional[int] = None) -> bool:
        """Heuristic check that ``y`` is not ``phi^s(x)`` for ``|s| <= bound``.

        Windows of half-width ``window`` (default ``16*bound``) are compared;
        by minimality short windows of ``y`` always occur somewhere in ``x``,
        so the window must be long compared with the shift bound.
        """
        K = window if window is not None else 16 * bound
        ywin = y.coords(-K, K)
        xwin = x.coords(-K - bound, K + bound)
        for s in range(-bound, bound + 1):
            if xwin[s + bound: s + bound + 2 * K + 1] == ywin:
                return False
        return True

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


# ---------------------------------------------------------------------------
# Sturmian shifts
# ---------------------------------------------------------------------------

class SturmianSystem(SubshiftSystem):
    """Coding of the rotation by ``alpha`` with ``I0 = [0, alpha)``, ``I1 = [alpha, 1)``."""

    kind = "sturmian"

    def __init__(self, alpha: QuadReal, *, alphabet: str = "01", **kw):
        super().__init__(alphabet, **kw)
        if len(self.alphabet) != 2:
            raise ConfigError("a Sturmian shift needs a two-letter alphabet")
        alpha = QuadReal.coerce(alpha)
        if alpha.is_rational():
            raise ConfigError("alpha must be irrational")
        if not (0 < alpha < 1):
            raise ConfigError("alpha must lie in (0, 1)")
        self.alpha = alpha
        self.name = f"sturmian(alpha={alpha})"

    def letter(self, t: QuadReal) -> str:
        """Right-continuous coding of a point of the circle."""
        return self.alphabet[0] if t.frac() < self.alpha else self.alphabet[1]

    def orbit_coding(self, t: QuadReal, lo: int, hi: int) -> str:
        """Letters for ``t + k*alpha`` with ``lo <= k < hi``.

        ``frac(s) < alpha`` iff ``floor(s) - floor(s - alpha) == 1``; the
        floors are computed in integers.
        """
        if hi <= lo:
            return ""
        t = QuadReal.coerce(t)
        al = self.alpha
        if t.b != 0 and t.d != al.d:
            raise ValueError("point parameter must lie in the field of alpha")
        den = math.lcm(t.a.denominator, t.b.denominator, al.a.denominator, al.b.denominator)
        A0, B0 = int(t.a * den), int(t.b * den)
        A1, B1 = int(al.a * den), int(al.b * den)
        d = al.d
        isqrt = math.isqrt

        def fl(k: int) -> int:
            A = A0 + k * A1
            B = B0 + k * B1
            if B >= 0:
                return (A + isqrt(B * B * d)) // den
            return (A - isqrt(B * B * d) - 1) // den

        zero, one = self.alphabet
        prev = fl(lo - 1)
        out = []
        for k in range(lo, hi):
            cur = fl(k)
            out.append(zero if cur - prev == 1 else one)
            prev = cur
        return "".join(out)

    def _compute_words(self, n: int) -> set[str]:
        # The n+1 arcs cut out by {k*alpha : -(n-1) <= k <= 1} carry the
        # n+1 words; the arc starting at k*alpha codes as c[k:k+n] where c is
        # the coding of the orbit of 0.
        lo = -(n - 1)
        c = self.orbit_coding(QuadReal(0), lo, n + 1)
        return {c[k - lo: k - lo + n] for k in range(lo, 2)}

    def arcs(self, n: int) -> list[tuple[QuadReal, QuadReal, str]]:
        """The arcs ``(start, length, word)`` of the level-``n`` partition."""
        lo = -(n - 1)
        c = self.orbit_coding(QuadReal(0), lo, n + 1)
        pts = sorted(((k * self.alpha).frac(), k) for k in range(lo, 2))
        out = []
        for idx, (p, k) in enumerate(pts):
            nxt = pts[idx + 1][0] if idx + 1 < len(pts) else pts[0][0] + 1
            out.append((p, nxt - p, c[k - lo: k - lo + n]))
        return out

    def same_orbit(self, s: QuadReal, t: QuadReal) -> Optional[int]:
        """Return k with ``t = s + k*alpha (mod 1)``, or None."""
        diff = QuadReal.coerce(t) - QuadReal.coerce(s)
        if diff.b == 0:
            return 0 if diff.is_integer() else None
        if diff.d != self.alpha.d:
            return None
        k = diff.b / self.alpha.b
        if k.denominator != 1:
            return None
        k = int(k)
        return k if (diff - k * self.alpha).is_integer() else None

    def check_orbit_distinct(self, x, y, bound: int = 64, window=None) -> bool:
        if isinstance(x, SturmianPoint) and isinstance(y, SturmianPoint):
            return self.same_orbit(x.t, y.t) is None
        return super().check_orbit_distinct(x, y, bound, window)


# ---------------------------------------------------------------------------
# Substitution shifts
# ---------------------------------------------------------------------------

def _is_primitive(matrix: Sequence[Sequence[int]]) -> bool:
    n = len(matrix)
    support = [[1 if matrix[i][j] else 0 for j in range(n)] for i in range(n)]
    power = [row[:] for row in support]
    # Wielandt: a primitive n x n matrix has a positive power <= (n-1)^2 + 1.
    for _ in range((n - 1) ** 2 + 1):
        if all(all(row) for row in power):
            return True
        power = [[1 if any(power[i][k] and support[k][j] for k in range(n)) else 0
                  for j in range(n)] for i in range(n)]
    return all(all(row) for row in power)


class SubstitutionSystem(SubshiftSystem):
    """The subshift of a primitive substitution."""

    kind = "substitution"

    def __init__(self, rule: Mapping[str, str], *, alphabet: Optional[Iterable[str]] = None, **kw):
        alphabet = tuple(alphabet) if alphabet is not None else tuple(sorted(rule))
        super().__init__(alphabet, **kw)
        if set(rule) != set(self.alphabet):
            raise ConfigError("substitution rule must be defined on exactly the alphabet")
        for a, img in rule.items():
            if not img or any(c not in self.alphabet for c in img):
                raise ConfigError(f"bad image {img!r} for letter {a!r}")
        self.rule = {a: rule[a] for a in self.alphabet}
        if not _is_primitive(self.incidence_matrix()):
            raise ConfigError("substitution is not primitive")
        self.name = "substitution(" + ", ".join(f"{a}->{self.rule[a]}" for a in self.alphabet) + ")"
        self._two_words: Optional[frozenset[str]] = None

    def incidence_matrix(self) -> list[list[int]]:
        """``M[b][a]`` = number of occurrences of ``b`` in the image of ``a``."""
        return [[self.rule[a].count(b) for a in self.alphabet] for b in self.alphabet]

    def apply(self, word: str, times: int = 1) -> str:
        for _ in range(times):
            word = "".join(self.rule[c] for c in word)
        return word

    def power_rule(self, p: int) -> dict[str, str]:
        return {a: self.apply(a, p) for a in self.alphabet}

    def two_letter_words(self) -> frozenset[str]:
        if self._two_words is None:
            found = set()
            for a in self.alphabet:
                img = self.rule[a]
                found.update(img[i:i + 2] for i in range(len(img) - 1))
            frontier = list(found)
            while frontier:
                ab = frontier.pop()
                img = self.apply(ab)
                for i in range(len(img) - 1):
                    w = img[i:i + 2]
                    if w not in found:
                        found.add(w)
                        frontier.append(w)
            self._two_words = frozenset(found)
        return self._two_words

    def _compute_words(self, n: int) -> set[str]:
        if n == 1:
            return set(self.alphabet)
        # Every length-n factor lies inside sigma^k(ab) for a legal two-letter
        # word ab once all images sigma^k(c) have length >= n-1.
        k = 0
        imgs = {a: a for a in self.alphabet}
        while min(len(v) for v in imgs.values()) < n - 1:
            imgs = {a: self.apply(v) for a, v in imgs.items()}
            k += 1
        out = set()
        for ab in self.two_letter_words():
            s = imgs[ab[0]] + imgs[ab[1]]
            out.update(s[i:i + n] for i in range(len(s) - n + 1))
        return out


# ---------------------------------------------------------------------------
# Shifts of finite type
# ---------------------------------------------------------------------------

class SFTSystem(SubshiftSystem):
    """Shift of finite type given by forbidden words (no measure support)."""

    kind = "sft"

    def __init__(self, alphabet: Iterable[str], forbidden: Iterable[str], **kw):
        super().__init__(alphabet, **kw)
        self.forbidden = tuple(sorted(set(forbidden)))
        for f in self.forbidden:
            if not f or any(c not in self.alphabet for c in f):
                raise ConfigError(f"bad forbidden word {f!r}")
        self.memory = max([len(f) for f in self.forbidden] + [2]) - 1
        self.name = "sft(forbid " + ",".join(self.forbidden) + ")"
        self._states = self._essential_states()
        if not self._states:
            raise ConfigError("the shift of finite type is empty")

    def _allowed(self, w: str) -> bool:
        return not any(f in w for f in self.forbidden)

    def _essential_states(self) -> frozenset[str]:
        M = self.memory
        states = {"".join(p) for p in itertools.product(self.alphabet, repeat=M)}
        states = {s for s in states if self._allowed(s)}
        changed = True
        while changed:
            changed = False
            keep = set()
            for s in states:
                has_out = any(self._allowed(s + c) and (s + c)[1:] in states for c in self.alphabet)
                has_in = any(self._allowed(c + s) and (c + s)[:-1] in states for c in self.alphabet)
                if has_out and has_in:
                    keep.add(s)
            if keep != states:
                states, changed = keep, True
        return frozenset(states)

    def _compute_words(self, n: int) -> set[str]:
        M = self.memory
        if n <= M:
            return {s[:n] for s in self._states}
        layer = set(self._states)
        for _ in range(n - M):
            layer = {w + c for w in layer for c in self.alphabet
                     if (w[len(w) - M + 1:] + c) in self._states and self._allowed(w[len(w) - M:] + c)}
        return layer


# ---------------------------------------------------------------------------
# Higher-block recoding
# ---------------------------------------------------------------------------

_BLOCK_SYMBOLS = string.ascii_uppercase + string.ascii_lowercase + string.digits


class HigherBlockSystem(SubshiftSystem):
    """The ``k``-block presentation of a base subshift.

    The recoded symbol at coordinate ``i`` is the base block ``x[i:i+k]``.
    """

    kind = "higher_block"

    def __init__(self, base: SubshiftSystem, k: int, **kw):
        if k < 1:
            raise ValueError("block length must be positive")
        blocks = base.words(k)
        symbols = [(_BLOCK_SYMBOLS[i] if i < len(_BLOCK_SYMBOLS) else chr(0x100 + i))
                   for i in range(len(blocks))]
        super().__init__(symbols, **kw)
        self.base = base
        self.k = k
        self.block_of = dict(zip(symbols, blocks))
        self.symbol_of = dict(zip(blocks, symbols))
        self.name = f"{base.name}[{k}-block]"
        self.points = tuple(HigherBlockPoint(self, p) for p in base.points)

    def encode(self, base_word: str) -> str:
        k = self.k
        return "".join(self.symbol_of[base_word[i:i + k]] for i in range(len(base_word) - k + 1))

    def decode(self, word: str) -> str:
        if not word:
            return ""
        return self.block_of[word[0]] + "".join(self.block_of[c][-1] for c in word[1:])

    def _compute_words(self, n: int) -> set[str]:
        return {self.encode(u) for u in self.base.words(n + self.k - 1)}

    def check_orbit_distinct(self, x, y, bound: int = 64, window=None) -> bool:
        if isinstance(x, HigherBlockPoint) and isinstance(y, HigherBlockPoint):
            return self.base.check_orbit_distinct(x.base_point, y.base_point, bound, window)
        return super().check_orbit_distinct(x, y, bound, window)


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------

class PointHandle:
    """A computable point of a subshift."""

    system: SubshiftSystem

    def coords(self, i: int, j: int) -> str:
        """Coordinates ``x_i ... x_j`` (inclusive)."""
        raise NotImplementedError

    def __getitem__(self, i: int) -> str:
        return self.coords(i, i)


class SturmianPoint(PointHandle):
    def __init__(self, system: SturmianSystem, t):
        self.system = system
        self.t = QuadReal.coerce(t).frac()

    def coords(self, i: int, j: int) -> str:
        if i > j:
            raise ValueError("need i <= j")
        return self.system.orbit_coding(self.t, i, j + 1)

    def __repr__(self) -> str:
        return f"SturmianPoint(t={self.t})"


class SubstitutionPoint(PointHandle):
    """Limit of nested words ``w_{k+1} = sigma^p(w_k)`` grown from a seed.

    The seed places ``left`` at coordinates ``-len(left)..-1`` and ``right``
    at ``0..len(right)-1``.  ``sigma^p(seed)`` must contain the seed strictly
    inside; the occurrence aligned with the image of the coordinate-0 letter
    is preferred, which yields the two-sided fixed point for seeds like
    ``("1", "0")``.
    """

    def __init__(self, system: SubstitutionSystem, left: str, right: str, power: int = 1,
                 occurrence: Optional[int] = None, max_iterations: int = 64):
        self.system = system
        self.left, self.right, self.power = left, right, power
        seed = left + right
        if not right:
            raise ConfigError("seed must contain the coordinate-0 letter")
        if not system.is_word(seed):
            raise ConfigError(f"seed {seed!r} is not in the language")
        img = system.apply(seed, power)
        c = len(left)
        aligned = len(system.apply(seed[:c], power)) - c
        candidates = [d for d in range(1, len(img) - len(seed)) if img[d:d + len(seed)] == seed]
        if occurrence is not None:
            if occurrence not in candidates:
                raise ConfigError(f"occurrence {occurrence} is not a strictly interior copy of the seed")
            d = occurrence
        elif aligned in candidates:
            d = aligned
        elif candidates:
            d = candidates[0]
        else:
            raise ConfigError(f"seed {seed!r} does not reappear strictly inside its image")
        self.occurrence = d
        self.max_iterations = max_iterations
        self._w, self._c, self._d = seed, c, d
        self._lock = threading.Lock()

    def coords(self, i: int, j: int) -> str:
        if i > j:
            raise ValueError("need i <= j")
        sys = self.system
        with self._lock:
            w, c, d = self._w, self._c, self._d
            steps = 0
            while not (c + i >= 0 and c + j < len(w)):
                steps += 1
                if steps > self.max_iterations:
                    raise ResourceCapExceeded("substitution point evolution depth exceeded")
                nw = sys.apply(w, self.power)
                nd = len(sys.apply(nw[:d], self.power))
                w, c, d = nw, c + d, nd
            self._w, self._c, self._d = w, c, d
            return w[c + i: c + j + 1]

    def __repr__(self) -> str:
        return f"SubstitutionPoint({self.left!r}.{self.right!r}, power={self.power})"


class HigherBlockPoint(PointHandle):
    def __init__(self, system: HigherBlockSystem, base_point: PointHandle):
        self.system = system
        self.base_point = base_point

    def coords(self, i: int, j: int) -> str:
        return self.system.encode(self.base_point.coords(i, j + self.system.k - 1))

    def __repr__(self) -> str:
        return f"HigherBlockPoint({self.base_point!r})"


# ---------------------------------------------------------------------------
# Clopen sets
# ---------------------------------------------------------------------------

class ClopenSet:
    """A finite union of cylinders over a common window.

    Stored as the set of admissible words occupying coordinates
    ``start .. start+length-1``.  Construction trims redundant boundary
    coordinates, so the stored window is as small as greedy trimming allows.
    """

    __slots__ = ("system", "start", "length", "words")

    def __init__(self, system: SubshiftSystem, start: int, length: int, words: Iterable[str],
                 *, trim: bool = True):
        words = frozenset(words)
        if length < 1:
            raise ValueError("window length must be positive")
        if words and not words <= system.word_set(length):
            bad = sorted(words - system.word_set(length))[:3]
            raise ValueError(f"words not in the language: {bad}")
        if not words:
            start, length = 0, 1
        self.system = system
        self.start = start
        self.length = length
        self.words = words
        if trim and words:
            self._trim()

    @property
    def end(self) -> int:
        return self.start + self.length - 1

    def _trim(self) -> None:
        sys = self.system
        changed = True
        while changed and self.length > 1:
            changed = False
            for side in ("left", "right"):
                if self.length == 1:
                    break
                inside: dict[str, bool] = {}
                ok = True
                for w in sys.words(self.length):
                    key = w[1:] if side == "left" else w[:-1]
                    member = w in self.words
                    prev = inside.setdefault(key, member)
                    if prev != member:
                        ok = False
                        break
                if ok:
                    self.words = frozenset(k for k, v in inside.items() if v)
                    if side == "left":
                        self.start += 1
                    self.length -= 1
                    changed = True

    # -- structure ----------------------------------------------------
    def refine(self, start: int, length: int) -> frozenset[str]:
        """Words of the given (larger) window describing the same set."""
        if not self.words:
            return frozenset()
        off = self.start - start
        if off < 0 or off + self.length > length:
            raise ValueError("refinement window must contain the current window")
        if off == 0 and length == self.length:
            return self.words
        S = self.words
        n = self.length
        return frozenset(u for u in self.system.words(length) if u[off:off + n] in S)

    def _hull(self, other: "ClopenSet") -> tuple[int, int]:
        if other.system is not self.system:
            raise ValueError("clopen sets live on different systems")
        if not self.words:
            return other.start, other.length
        if not other.words:
            return self.start, self.length
        lo = min(self.start, other.start)
        hi = max(self.end, other.end)
        return lo, hi - lo + 1

    def is_empty(self) -> bool:
        return not self.words

    def __bool__(self) -> bool:
        return bool(self.words)

    def __or__(self, other: "ClopenSet") -> "ClopenSet":
        s, n = self._hull(other)
        return ClopenSet(self.system, s, n, self.refine(s, n) | other.refine(s, n))

    def __and__(self, other: "ClopenSet") -> "ClopenSet":
        if not self.words or not other.words:
            return self.system.empty()
        s, n = self._hull(other)
        return ClopenSet(self.system, s, n, self.refine(s, n) & other.refine(s, n))

    def __sub__(self, other: "ClopenSet") -> "ClopenSet":
        if not self.words or not other.words:
            return self
        s, n = self._hull(other)
        return ClopenSet(self.system, s, n, self.refine(s, n) - other.refine(s, n))

    def complement(self) -> "ClopenSet":
        return ClopenSet(self.system, self.start, self.length,
                         self.system.word_set(self.length) - self.words)

    __invert__ = complement

    def shift(self, k: int) -> "ClopenSet":
        """``phi^k`` of this set."""
        if not self.words:
            return self
        return ClopenSet(self.system, self.start - k, self.length, self.words, trim=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClopenSet):
            return NotImplemented
        if other.system is not self.system:
            return False
        if not self.words or not other.words:
            return not self.words and not other.words
        s, n = self._hull(other)
        return self.refine(s, n) == other.refine(s, n)

    def __hash__(self) -> int:
        return hash((id(self.system), bool(self.words)))

    def issubset(self, other: "ClopenSet") -> bool:
        return not (self - other)

    def isdisjoint(self, other: "ClopenSet") -> bool:
        return not (self & other)

    def contains_point(self, p: PointHandle) -> bool:
        if not self.words:
            return False
        return p.coords(self.start, self.end) in self.words

    def cylinders(self) -> Iterator[tuple[str, int]]:
        for w in sorted(self.words):
            yield w, self.start

    def key(self) -> tuple:
        return (self.start, self.length, tuple(sorted(self.words)))

    def __repr__(self) -> str:
        return f"ClopenSet({self})"

    def __str__(self) -> str:
        if not self.words:
            return "∅"
        if self.length == 1 and len(self.words) == len(self.system.alphabet):
            return "X"
        parts = [format_cylinder(w, self.start) for w in sorted(self.words)]
        return " ∪ ".join(parts)


def cylinder(system: SubshiftSystem, word: str, offset: int = 0) -> ClopenSet:
    """The cylinder of points with ``x[offset:offset+len(word)] == word``."""
    if not word:
        raise ValueError("cylinder word must be non-empty")
    if not system.is_word(word):
        return system.empty()
    return ClopenSet(system, offset, len(word), (word,), trim=False)


def format_cylinder(word: str, start: int) -> str:
    """Dot notation: the dot follows the coordinate-0 letter; '*' pads gaps."""
    end = start + len(word) - 1
    if start >= 1:
        return "[." + "*" * (start - 1) + word + "]"
    if end <= -1:
        return "[" + word + "*" * (-end) + ".]"
    cut = -start + 1
    return "[" + word[:cut] + "." + word[cut:] + "]"


_CYL_TOKEN = re.compile(r"(\\.|.)(\^(\d+))?")


def parse_cylinder(system: SubshiftSystem, text: str) -> ClopenSet:
    """Parse dot notation such as ``[01^2 1.0]``; ``*`` is a wildcard."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError("cylinder must be enclosed in brackets", 0, text)
    body = s[1:-1].replace(" ", "")
    if body.count(".") != 1:
        raise ParseError("cylinder needs exactly one dot", 0, text)
    before, after = body.split(".")

    def expand(part: str, base: int) -> list[str]:
        out: list[str] = []
        i = 0
        while i < len(part):
            ch, at = part[i], base + i
            i += 1
            rep = 1
            m = re.match(r"\^(\d+)", part[i:])
            if m:
                rep = int(m.group(1))
                i += m.end()
            if ch != "*" and ch not in system.alphabet:
                raise ParseError(f"symbol {ch!r} not in alphabet", at, text)
            out.extend([ch] * rep)
        return out

    left = expand(before, 1)
    right = expand(after, 2 + len(before))
    letters = left + right
    if not letters:
        raise ParseError("empty cylinder", 0, text)
    start = -(len(left) - 1)
    if "*" not in letters:
        return cylinder(system, "".join(letters), start)
    n = len(letters)
    pattern = letters
    words = [u for u in system.words(n)
             if all(p == "*" or p == c for p, c in zip(pattern, u))]
    return ClopenSet(system, start, n, words)


def language_coherent(system: SubshiftSystem, n: int) -> bool:
    """Prefix/suffix closure and extendability of ``words(n)``."""
    W = system.word_set(n)
    longer = system.word_set(n + 1)
    if n > 1:
        shorter = system.word_set(n - 1)
        if any(w[1:] not in shorter or w[:-1] not in shorter for w in W):
            return False
    prefixes = {u[:-1] for u in longer}
    suffixes = {u[1:] for u in longer}
    return W == prefixes == suffixes


def gcd_list(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g
