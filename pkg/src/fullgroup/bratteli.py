"""Bratteli diagrams, AF full groups and the mod-2 dimension group.

A diagram is given by incidence matrices: ``M_n[v][w]`` is the number of
edges from ``v in V_{n-1}`` to ``w in V_n``; ``M_1`` is a single row since
``V_0`` is the top vertex.  A list of explicit levels may be followed by a
stationary matrix repeated forever.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ConfigError, Inconclusive

Matrix = list[list[int]]


class BratteliDiagram:
    def __init__(self, levels: Sequence[Sequence[Sequence[int]]] = (), stationary: Optional[Sequence[Sequence[int]]] = None,
                 *, top: Optional[Sequence[int]] = None):
        mats = [[list(map(int, r)) for r in m] for m in levels]
        if top is not None:
            mats.insert(0, [list(map(int, top))])
        if not mats:
            raise ConfigError("a diagram needs at least the first level")
        if len(mats[0]) != 1:
            raise ConfigError("the first incidence matrix must have a single row (the top vertex)")
        self.levels = mats
        self.stationary = [list(map(int, r)) for r in stationary] if stationary is not None else None
        prev = 1
        for n, m in enumerate(mats + ([self.stationary] if self.stationary else []), start=1):
            if len(m) != prev:
                raise ConfigError(f"incidence matrix {n} has {len(m)} rows, expected {prev}")
            if len({len(r) for r in m}) != 1:
                raise ConfigError(f"incidence matrix {n} is ragged")
            if any(v < 0 for r in m for v in r):
                raise ConfigError("edge multiplicities must be non-negative")
            if any(sum(r) == 0 for r in m):
                raise ConfigError(f"source map not surjective at level {n}")
            if any(sum(m[i][j] for i in range(len(m))) == 0 for j in range(len(m[0]))):
                raise ConfigError(f"range map not surjective at level {n}")
            prev = len(m[0])
        if self.stationary is not None and len(self.stationary) != len(self.stationary[0]):
            raise ConfigError("the stationary matrix must be square")
        self._h: dict[int, list[int]] = {0: [1]}
        self._edges: dict[int, list[tuple[int, int, int]]] = {}
        self._paths: dict[tuple[int, int], list[tuple[int, ...]]] = {}

    @property
    def finite_depth(self) -> Optional[int]:
        return None if self.stationary is not None else len(self.levels)

    def matrix(self, n: int) -> Matrix:
        """Incidence matrix between ``V_{n-1}`` and ``V_n``."""
        if n < 1:
            raise ValueError("levels start at 1")
        if n <= len(self.levels):
            return self.levels[n - 1]
        if self.stationary is None:
            raise ValueError(f"the diagram has only {len(self.levels)} levels")
        return self.stationary

    def num_vertices(self, n: int) -> int:
        return 1 if n == 0 else len(self.matrix(n)[0])

    # -- paths --------------------------------------------------------
    def heights(self, n: int) -> list[int]:
        """``h(v)`` for ``v in V_n``: number of paths from the top vertex."""
        if n not in self._h:
            prev = self.heights(n - 1)
            M = self.matrix(n)
            self._h[n] = [sum(prev[i] * M[i][j] for i in range(len(prev))) for j in range(len(M[0]))]
        return self._h[n]

    def path_count(self, n: int, v: int) -> int:
        return self.heights(n)[v]

    def edges(self, n: int) -> list[tuple[int, int, int]]:
        """Edges of level ``n`` as ``(source, target, copy)`` in lexicographic order."""
        if n not in self._edges:
            M = self.matrix(n)
            self._edges[n] = [(i, j, c) for i in range(len(M)) for j in range(len(M[0])) for c in range(M[i][j])]
        return self._edges[n]

    def paths(self, n: int, v: int) -> list[tuple[int, ...]]:
        """Paths to ``v in V_n`` as tuples of edge indices, lexicographically sorted."""
        key = (n, v)
        if key not in self._paths:
            if n == 0:
                self._paths[key] = [()]
            else:
                out = []
                for k, (s, t, _) in enumerate(self.edges(n)):
                    if t == v:
                        out.extend(p + (k,) for p in self.paths(n - 1, s))
                self._paths[key] = sorted(out)
        return self._paths[key]

    # -- simplicity ---------------------------------------------------
    def is_simple(self, horizon: int = 64) -> bool:
        if self.stationary is not None:
            return _is_primitive(self.stationary)
        # finite description: simplicity can only be confirmed within the given levels
        last = len(self.levels)
        for n in range(1, min(last, horizon)):
            reach = [[1 if i == j else 0 for j in range(self.num_vertices(n))] for i in range(self.num_vertices(n))]
            ok = [False] * self.num_vertices(n)
            for m in range(n + 1, last + 1):
                M = self.matrix(m)
                reach = [[1 if any(r[k] and M[k][j] for k in range(len(M))) else 0 for j in range(len(M[0]))]
                         for r in reach]
                for i, r in enumerate(reach):
                    ok[i] = ok[i] or all(r)
            if not all(ok):
                raise Inconclusive(f"simplicity not confirmed for level {n} within the given levels")
        return True


def _is_primitive(M: Matrix) -> bool:
    n = len(M)
    S = [[1 if M[i][j] else 0 for j in range(n)] for i in range(n)]
    P = [r[:] for r in S]
    seen = set()
    while True:
        if all(all(r) for r in P):
            return True
        key = tuple(map(tuple, P))
        if key in seen:
            return False
        seen.add(key)
        P = [[1 if any(P[i][k] and S[k][j] for k in range(n)) else 0 for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# the AF full group
# ---------------------------------------------------------------------------

def _perm_sign(p: Sequence[int]) -> int:
    """0 for even permutations, 1 for odd."""
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            parity ^= (length - 1) & 1
    return parity


class AFGroupElement:
    """An element of ``G_m = ⊕_{v in V_m} S_{h(v)}`` acting on path indices."""

    def __init__(self, diagram: BratteliDiagram, level: int, perms: dict[int, Sequence[int]]):
        self.diagram = diagram
        self.level = level
        h = diagram.heights(level)
        full = {}
        for v, hv in enumerate(h):
            p = tuple(perms.get(v, range(hv)))
            if sorted(p) != list(range(hv)):
                raise ValueError(f"component {v} is not a permutation of {hv} paths")
            full[v] = p
        self.perms = full

    @classmethod
    def identity(cls, diagram: BratteliDiagram, level: int) -> "AFGroupElement":
        return cls(diagram, level, {})

    @classmethod
    def cycle(cls, diagram: BratteliDiagram, level: int, v: int, points: Sequence[int]) -> "AFGroupElement":
        """The cycle ``(p0 p1 ... pk)`` on paths to vertex ``v``."""
        h = diagram.heights(level)[v]
        p = list(range(h))
        for a, b in zip(points, list(points[1:]) + [points[0]]):
            p[a] = b
        return cls(diagram, level, {v: p})

    def __mul__(self, other: "AFGroupElement") -> "AFGroupElement":
        a, b = _common_level(self, other)
        return AFGroupElement(a.diagram, a.level,
                              {v: tuple(a.perms[v][b.perms[v][i]] for i in range(len(a.perms[v]))) for v in a.perms})

    def inverse(self) -> "AFGroupElement":
        inv = {}
        for v, p in self.perms.items():
            q = [0] * len(p)
            for i, j in enumerate(p):
                q[j] = i
            inv[v] = tuple(q)
        return AFGroupElement(self.diagram, self.level, inv)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AFGroupElement):
            return NotImplemented
        a, b = _common_level(self, other)
        return a.perms == b.perms

    def __hash__(self) -> int:
        return hash(self.level)

    def __repr__(self) -> str:
        moved = {v: p for v, p in self.perms.items() if list(p) != list(range(len(p)))}
        return f"AFGroupElement(level={self.level}, moved={moved})"


def embed(g: AFGroupElement) -> AFGroupElement:
    """Image of ``g`` in ``G_{m+1}``: act on the first ``m`` edges of each path."""
    B = g.diagram
    m = g.level
    edges = B.edges(m + 1)
    perms = {}
    for w in range(B.num_vertices(m + 1)):
        paths = B.paths(m + 1, w)
        pos = {p: i for i, p in enumerate(paths)}
        img = [0] * len(paths)
        for i, p in enumerate(paths):
            v = edges[p[-1]][0]
            sub = B.paths(m, v)
            j = sub.index(p[:-1])
            q = sub[g.perms[v][j]] + (p[-1],)
            img[i] = pos[q]
        perms[w] = tuple(img)
    return AFGroupElement(B, m + 1, perms)


def embed_to(g: AFGroupElement, level: int) -> AFGroupElement:
    while g.level < level:
        g = embed(g)
    return g


def _common_level(a: AFGroupElement, b: AFGroupElement) -> tuple[AFGroupElement, AFGroupElement]:
    if a.diagram is not b.diagram:
        raise ValueError("elements of different diagrams")
    n = max(a.level, b.level)
    return embed_to(a, n), embed_to(b, n)


def parity(g: AFGroupElement) -> tuple[int, ...]:
    return tuple(_perm_sign(g.perms[v]) for v in range(len(g.perms)))


# ---------------------------------------------------------------------------
# GF(2) linear algebra
# ---------------------------------------------------------------------------

def gf2_matmul(A: Matrix, B: Matrix) -> Matrix:
    return [[sum(A[i][k] & B[k][j] for k in range(len(B))) & 1 for j in range(len(B[0]))] for i in range(len(A))]


def gf2_vecmat(v: Sequence[int], M: Matrix) -> tuple[int, ...]:
    return tuple(sum(v[i] & M[i][j] for i in range(len(v))) & 1 for j in range(len(M[0])))


def gf2_rowreduce(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    rows = [[x & 1 for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def gf2_rank(rows: list[list[int]]) -> int:
    return len(gf2_rowreduce(rows)[0]) if rows else 0


@dataclass
class Mod2Limit:
    """Direct limit of ``Z_2^{V_m}`` under the mod-2 incidence maps.

    For a stationary tail with matrix ``S`` the limit is the stable image
    ``W = rowspace(S^N)`` (``N = |V|``), on which ``S`` acts invertibly.
    """

    diagram: BratteliDiagram
    level: int            # level at which the stable image is read
    basis: list[list[int]]  # reduced basis of W in Z_2^{V_level}
    pivots: list[int]
    certified: bool

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def order(self) -> int:
        return 2 ** self.dimension

    def push(self, vec: Sequence[int], from_level: int) -> tuple[int, ...]:
        v = tuple(x & 1 for x in vec)
        for n in range(from_level + 1, self.level + 1):
            v = gf2_vecmat(v, self.diagram.matrix(n))
        return v

    def class_of(self, vec: Sequence[int], level: int) -> tuple[int, ...]:
        """Coordinates of the limit class of ``vec in Z_2^{V_level}``.

        Past the stabilisation level the stationary matrix maps ``W`` onto
        itself, so the same basis is used; coordinates are then read in the
        copy of ``W`` at that level.
        """
        v = list(self.push(vec, level))
        coords = []
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            coords.append(c)
            if c:
                v = [a ^ b for a, b in zip(v, row)]
        if any(v):  # pragma: no cover - the image lies in W by construction
            raise AssertionError("pushed vector left the stable image")
        return tuple(coords)


def mod2_dimension_group(B: BratteliDiagram, depth: int = 64) -> Mod2Limit:
    if B.stationary is None:
        raise Inconclusive("no stationary tail: the mod-2 limit cannot be certified from finitely many levels")
    S = [[x & 1 for x in r] for r in B.stationary]
    N = len(S)
    level = len(B.levels) + N
    if level > depth + len(B.levels):
        raise Inconclusive("depth too small to reach the stable image")
    # rowspace of the product of the matrices from level len(levels)+1 .. level, i.e. S^N
    P = [[1 if i == j else 0 for j in range(N)] for i in range(N)]
    ranks = []
    for _ in range(N + 1):
        ranks.append(gf2_rank(P))
        P = gf2_matmul(P, S)
    # P = S^{N+1}; rank sequence is non-increasing and stabilises by step N
    certified = ranks[-1] == ranks[-2]
    SN = [[1 if i == j else 0 for j in range(N)] for i in range(N)]
    for _ in range(N):
        SN = gf2_matmul(SN, S)
    basis, pivots = gf2_rowreduce(SN)
    return Mod2Limit(B, level, basis, pivots, certified)


def af_signature(g: AFGroupElement, lim: Mod2Limit) -> tuple[int, ...]:
    return lim.class_of(parity(g), g.level)


def is_commutator_member(g: AFGroupElement, lim: Optional[Mod2Limit] = None) -> bool:
    """Membership in ``D(G) = ∪ H_m``, i.e. the parity vanishes after embedding."""
    lim = lim or mod2_dimension_group(g.diagram)
    return not any(af_signature(g, lim))


# ---------------------------------------------------------------------------
# alternating groups
# ---------------------------------------------------------------------------

def consecutive_three_cycles(n: int) -> list[tuple[int, ...]]:
    """``(i, i+1, i+2)`` as permutations of ``range(n)`` (0-based)."""
    out = []
    for i in range(n - 2):
        p = list(range(n))
        p[i], p[i + 1], p[i + 2] = i + 1, i + 2, i
        out.append(tuple(p))
    return out


def alternating_closure(n: int) -> set[tuple[int, ...]]:
    gens = consecutive_three_cycles(n)
    start = tuple(range(n))
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = tuple(g[i] for i in p)
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def alternating_gen_check(n: int) -> bool:
    """Whether the consecutive 3-cycles generate exactly ``A_n``."""
    if not 3 <= n <= 9:
        raise ValueError("n must lie in 3..9")
    closure = alternating_closure(n)
    even = {p for p in itertools.permutations(range(n)) if _perm_sign(p) == 0}
    return closure == even and len(closure) == math.factorial(n) // 2
