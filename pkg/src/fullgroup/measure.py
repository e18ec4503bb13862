"""Exact invariant measure of clopen sets, the index map and first-return maps."""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import (IrrationalFrequency, NonIntegerIndex, ReturnTimeCapExceeded,
                     UnsupportedSystem)
from .quadreal import QuadReal
from .subshift import (ClopenSet, HigherBlockSystem, SturmianSystem, SubshiftSystem,
                       SubstitutionSystem)

DEFAULT_RETURN_CAP = 4096

_lock = threading.RLock()


def supports_measure(system: SubshiftSystem) -> bool:
    if isinstance(system, HigherBlockSystem):
        return supports_measure(system.base)
    return isinstance(system, (SturmianSystem, SubstitutionSystem))


# ---------------------------------------------------------------------------
# exact linear algebra over Q
# ---------------------------------------------------------------------------

def nullspace(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the right nullspace of a rational matrix (Gauss-Jordan)."""
    if not rows:
        return []
    m = [list(map(Fraction, r)) for r in rows]
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][col]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def perron_vector(matrix: list[list[int]], lam: int) -> list[Fraction]:
    """Normalised positive eigenvector of ``matrix`` for the eigenvalue ``lam``."""
    n = len(matrix)
    shifted = [[Fraction(matrix[i][j] - (lam if i == j else 0)) for j in range(n)] for i in range(n)]
    basis = nullspace(shifted)
    if len(basis) != 1:
        raise IrrationalFrequency(f"eigenvalue {lam} does not have a one-dimensional eigenspace")
    v = basis[0]
    s = sum(v)
    v = [x / s for x in v]
    if any(x <= 0 for x in v):
        raise IrrationalFrequency("eigenvector for the Perron eigenvalue is not positive")
    return v


def integer_perron_eigenvalue(matrix: list[list[int]]) -> int:
    """The Perron eigenvalue, which must be an integer for rational frequencies."""
    est = max(abs(e) for e in np.linalg.eigvals(np.array(matrix, dtype=float)))
    lam = int(round(est))
    n = len(matrix)
    shifted = [[Fraction(matrix[i][j] - (lam if i == j else 0)) for j in range(n)] for i in range(n)]
    if lam < 1 or abs(est - lam) > 1e-6 or not nullspace(shifted):
        raise IrrationalFrequency(f"Perron eigenvalue {est:.6f} is not an integer; "
                                  "letter frequencies are irrational")
    return lam


# ---------------------------------------------------------------------------
# substitution frequencies
# ---------------------------------------------------------------------------

class _SubstitutionFrequencies:
    """Exact word frequencies of a primitive substitution with integer Perron root."""

    def __init__(self, system: SubstitutionSystem):
        self.system = system
        lam = integer_perron_eigenvalue(system.incidence_matrix())
        p = 1
        while min(len(system.apply(a, p)) for a in system.alphabet) < 2:
            p += 1
        self.power = p
        self.rule = system.power_rule(p)
        self.lam = lam ** p
        self.minlen = min(len(v) for v in self.rule.values())
        blocks = sorted(system.two_letter_words())
        index = {b: i for i, b in enumerate(blocks)}
        mat = [[0] * len(blocks) for _ in blocks]
        for j, ab in enumerate(blocks):
            img = self.rule[ab[0]] + self.rule[ab[1]]
            for i in range(len(self.rule[ab[0]])):
                mat[index[img[i:i + 2]]][j] += 1
        vec = perron_vector(mat, self.lam)
        self.freq: dict[str, Fraction] = dict(zip(blocks, vec))
        for a in system.alphabet:
            self.freq[a] = sum((f for b, f in zip(blocks, vec) if b[0] == a), Fraction(0))

    def __call__(self, w: str) -> Fraction:
        got = self.freq.get(w)
        if got is not None:
            return got
        if not self.system.is_word(w):
            return Fraction(0)
        n = len(w)
        m = -(-(n - 1) // self.minlen) + 1
        total = Fraction(0)
        for u in self.system.words(m):
            img = "".join(self.rule[c] for c in u)
            head = len(self.rule[u[0]])
            occ = sum(1 for i in range(head) if img.startswith(w, i))
            if occ:
                total += occ * self(u)
        val = total / self.lam
        self.freq[w] = val
        return val


def _substitution_freq(system: SubstitutionSystem) -> _SubstitutionFrequencies:
    with _lock:
        f = getattr(system, "_frequency_oracle", None)
        if f is None:
            f = _SubstitutionFrequencies(system)
            system._frequency_oracle = f
        return f


def _sturmian_table(system: SturmianSystem, n: int) -> dict[str, QuadReal]:
    with _lock:
        tables = getattr(system, "_arc_tables", None)
        if tables is None:
            tables = system._arc_tables = {}
        t = tables.get(n)
        if t is None:
            t = {}
            for _, length, w in system.arcs(n):
                t[w] = t.get(w, QuadReal(0)) + length
            tables[n] = t
        return t


def word_measure(system: SubshiftSystem, w: str) -> QuadReal:
    """``mu([w])`` for the unique invariant measure."""
    if isinstance(system, SturmianSystem):
        return _sturmian_table(system, len(w)).get(w, QuadReal(0))
    if isinstance(system, SubstitutionSystem):
        return QuadReal(_substitution_freq(system)(w))
    if isinstance(system, HigherBlockSystem):
        if not system.is_word(w):
            return QuadReal(0)
        return word_measure(system.base, system.decode(w))
    raise UnsupportedSystem(f"no invariant measure available for {system.kind} systems")


def measure(system_or_set, A: Optional[ClopenSet] = None) -> QuadReal:
    """Exact measure of a clopen set; accepts ``measure(A)`` or ``measure(sys, A)``."""
    if A is None:
        A = system_or_set
    system = A.system
    if not supports_measure(system):
        raise UnsupportedSystem(f"no invariant measure available for {system.kind} systems")
    total = QuadReal(0)
    for w in A.words:
        total = total + word_measure(system, w)
    return total


def index(g) -> int:
    """``I(gamma) = sum_w n(w) mu([w])``, which must be an integer."""
    total = QuadReal(0)
    for w, v in g.code.items():
        if v:
            total = total + v * word_measure(g.system, w)
    if not total.is_integer():
        raise NonIntegerIndex(f"index evaluated to {total}", witness=str(total))
    return int(total.a)


# ---------------------------------------------------------------------------
# first return maps
# ---------------------------------------------------------------------------

def return_times(U: ClopenSet, cap: int = DEFAULT_RETURN_CAP) -> tuple[int, dict[str, int]]:
    """Maximal first-return time ``T`` of ``U`` and the return time per word.

    Words are taken over the window ``[U.start, U.end + T]``.
    """
    if U.is_empty():
        raise ValueError("first return map of the empty set")
    sys = U.system
    n = U.length
    T = 1
    while True:
        times: dict[str, int] = {}
        complete = True
        for u in sys.words(n + T):
            if u[:n] not in U.words:
                continue
            t = next((t for t in range(1, T + 1) if u[t:t + n] in U.words), None)
            if t is None:
                complete = False
                break
            times[u] = t
        if complete:
            T = max(times.values())
            return T, {u[:n + T]: t for u, t in times.items()}
        if T >= cap:
            raise ReturnTimeCapExceeded(f"return time exceeds {cap}")
        T = min(2 * T, cap)


def first_return(system_or_set, U: Optional[ClopenSet] = None, cap: int = DEFAULT_RETURN_CAP):
    """The first return map ``phi_U``, extended by the identity off ``U``."""
    from .element import FullGroupElement
    if U is None:
        U = system_or_set
    sys = U.system
    T, times = return_times(U, cap)
    a, b = U.start, U.end
    L = max(0, -a)
    R = max(0, b + T)
    n = U.length
    code = {}
    for v in sys.words(L + R + 1):
        seg = v[a + L: a + L + n + T]
        code[v] = times[seg] if seg[:n] in U.words else 0
    return FullGroupElement(sys, L, R, code)
