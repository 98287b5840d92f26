"""Finite posets and lattices on dense integer indices.

Relations are stored as bitmask rows (element i's up-set as a Python int),
which keeps every operation exact and cheap at desk scale.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import (
    CycleDetected,
    IndexOutOfRange,
    NotALattice,
    NotComparable,
    SizeLimitExceeded,
)

DEFAULT_MAX_SIZE = 200_000
ENUMERATION_CAP = 8


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Finite strict order on elements 0..n-1, stored as up-set bitmasks."""

    __slots__ = ("n", "up", "labels", "_down", "_covers", "_heights", "_depths")

    def __init__(self, n: int, up: Sequence[int], labels=None):
        self.n = n
        self.up = tuple(up)  # up[i] = bitmask of {j : i <= j}, includes i
        self.labels = tuple(labels) if labels is not None else None
        self._down = None
        self._covers = None
        self._heights = None
        self._depths = None

    # -- construction -------------------------------------------------

    @classmethod
    def from_covers(cls, n: int, covers, labels=None) -> "Poset":
        adj = [0] * n
        for (i, j) in covers:
            if not (0 <= i < n and 0 <= j < n):
                raise IndexOutOfRange(f"cover ({i}, {j}) outside [0, {n})")
            if i == j:
                raise CycleDetected(f"self-cover at element {i}")
            adj[i] |= 1 << j
        order = _toposort(n, adj)
        up = [0] * n
        for i in reversed(order):
            m = 1 << i
            for j in _bits(adj[i]):
                m |= up[j]
            up[i] = m
        return cls(n, up, labels)

    # -- basic relations ----------------------------------------------

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    @property
    def down(self):
        if self._down is None:
            down = [1 << i for i in range(self.n)]
            for i in range(self.n):
                for j in _bits(self.up[i] & ~(1 << i)):
                    down[j] |= 1 << i
            self._down = tuple(down)
        return self._down

    @property
    def covers(self):
        """Cover pairs (i, j) with i prec j, i.e. the transitive reduction."""
        if self._covers is None:
            out = []
            for i in range(self.n):
                strict = self.up[i] & ~(1 << i)
                for j in _bits(strict):
                    between = strict & (self.down[j] & ~(1 << j))
                    if between == 0:
                        out.append((i, j))
            self._covers = tuple(sorted(out))
        return self._covers

    @property
    def heights(self):
        if self._heights is None:
            h = [0] * self.n
            for i in self.topo_order():
                best = 0
                for j in _bits(self.down[i] & ~(1 << i)):
                    if h[j] + 1 > best:
                        best = h[j] + 1
                h[i] = best
            self._heights = tuple(h)
        return self._heights

    @property
    def depths(self):
        if self._depths is None:
            d = [0] * self.n
            for i in reversed(self.topo_order()):
                best = 0
                for j in _bits(self.up[i] & ~(1 << i)):
                    if d[j] + 1 > best:
                        best = d[j] + 1
                d[i] = best
            self._depths = tuple(d)
        return self._depths

    def is_cover(self, i: int, j: int) -> bool:
        if i == j or not self.leq(i, j):
            return False
        between = self.up[i] & self.down[j] & ~(1 << i) & ~(1 << j)
        return between == 0

    def topo_order(self):
        return sorted(range(self.n), key=lambda i: (bin(self.down[i]).count("1"), i))

    def linear_extension(self):
        """Lexicographically least topological order."""
        n = self.n
        placed = 0
        out = []
        for _ in range(n):
            for i in range(n):
                if placed >> i & 1:
                    continue
                below = self.down[i] & ~(1 << i)
                if below & ~placed == 0:
                    out.append(i)
                    placed |= 1 << i
                    break
        return out

    def maximal_elements(self):
        return [i for i in range(self.n) if self.up[i] == 1 << i]

    def minimal_elements(self):
        return [i for i in range(self.n) if self.down[i] == 1 << i]

    def induced(self, elements, labels=None) -> "Poset":
        """Subposet on the given elements (in the given order)."""
        idx = {e: k for k, e in enumerate(elements)}
        m = len(elements)
        up = [0] * m
        for k, e in enumerate(elements):
            mask = 0
            for j in _bits(self.up[e]):
                if j in idx:
                    mask |= 1 << idx[j]
            up[k] = mask
        return Poset(m, up, labels)

    def downsets(self) -> Iterator[int]:
        """All down-closed subsets as bitmasks, via DFS over a topo order."""
        order = self.topo_order()
        down = self.down
        n = self.n

        def rec(k, mask):
            if k == n:
                yield mask
                return
            e = order[k]
            yield from rec(k + 1, mask)
            if down[e] & ~(1 << e) & ~mask == 0:
                yield from rec(k + 1, mask | (1 << e))

        yield from rec(0, 0)

    def incomparable_pairs(self):
        out = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if not self.leq(i, j) and not self.leq(j, i):
                    out.append((i, j))
        return out

    def __repr__(self):
        return f"Poset(n={self.n}, covers={list(self.covers)})"


def _toposort(n: int, adj) -> list:
    indeg = [0] * n
    for i in range(n):
        for j in _bits(adj[i]):
            indeg[j] += 1
    q = deque(i for i in range(n) if indeg[i] == 0)
    order = []
    while q:
        i = q.popleft()
        order.append(i)
        for j in _bits(adj[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                q.append(j)
    if len(order) != n:
        raise CycleDetected("cover relation contains a cycle")
    return order


class FiniteLattice:
    """Poset with total meet/join tables and distinguished bounds."""

    __slots__ = ("poset", "meet", "join", "bottom", "top", "_cover_set")

    def __init__(self, poset: Poset, meet, join, bottom: int, top: int):
        self.poset = poset
        self.meet = meet
        self.join = join
        self.bottom = bottom
        self.top = top
        self._cover_set = None

    # -- construction -------------------------------------------------

    @classmethod
    def from_covers(cls, n: int, covers, labels=None) -> "FiniteLattice":
        return cls.from_poset(Poset.from_covers(n, covers, labels))

    @classmethod
    def from_poset(cls, poset: Poset) -> "FiniteLattice":
        n = poset.n
        if n == 0:
            raise NotALattice(0, 0, "no-lub")
        up, down = poset.up, poset.down
        by_up = {up[i]: i for i in range(n)}
        by_down = {down[i]: i for i in range(n)}
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            ua, da = up[a], down[a]
            ma, ja = meet[a], join[a]
            for b in range(a, n):
                common = ua & up[b]
                if common == 0:
                    raise NotALattice(a, b, "no-lub")
                j = by_up.get(common)
                if j is None:
                    raise NotALattice(a, b, "non-unique")
                ja[b] = j
                join[b][a] = j
                common = da & down[b]
                if common == 0:
                    raise NotALattice(a, b, "no-glb")
                m = by_down.get(common)
                if m is None:
                    raise NotALattice(a, b, "non-unique")
                ma[b] = m
                meet[b][a] = m
        full = (1 << n) - 1
        bottom = by_up[full]
        top = by_down[full]
        return cls(poset, meet, join, bottom, top)

    # -- views ----------------------------------------------------------

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def labels(self):
        return self.poset.labels

    def leq(self, i: int, j: int) -> bool:
        return self.poset.leq(i, j)

    @property
    def covers(self):
        return self.poset.covers

    @property
    def cover_set(self):
        if self._cover_set is None:
            self._cover_set = frozenset(self.poset.covers)
        return self._cover_set

    def is_cover(self, i, j):
        return (i, j) in self.cover_set

    def atoms(self):
        return [j for (i, j) in self.covers if i == self.bottom]

    def __repr__(self):
        return f"FiniteLattice(n={self.n}, covers={list(self.covers)})"


@dataclass(frozen=True)
class IsoWitness:
    """Element bijection realizing an isomorphism between two posets."""

    mapping: tuple

    def apply(self, i):
        return self.mapping[i]


# ---------------------------------------------------------------------------
# module-level operations


def poset_from_covers(n: int, covers, labels=None) -> Poset:
    return Poset.from_covers(n, covers, labels)


def lattice_from_covers(n: int, covers, labels=None) -> FiniteLattice:
    return FiniteLattice.from_covers(n, covers, labels)


def join_irreducibles(L: FiniteLattice) -> Poset:
    """Induced subposet of elements with exactly one lower cover.

    Birkhoff round-trip guarantees apply only when L is distributive;
    the operation itself is defined for every finite lattice.
    """
    lower = {j: 0 for j in range(L.n)}
    for (i, j) in L.covers:
        lower[j] += 1
    members = [j for j in range(L.n) if lower[j] == 1]
    return L.poset.induced(members, labels=tuple(members))


def downset_lattice(P: Poset, max_size: Optional[int] = None) -> FiniteLattice:
    """Lattice of down-sets of P ordered by inclusion (meet=∩, join=∪)."""
    cap = DEFAULT_MAX_SIZE if max_size is None else max_size
    if P.n >= 60 or (1 << P.n) > cap * 8:
        raise SizeLimitExceeded(f"2^{P.n} downsets exceed the configured cap")
    masks = sorted(P.downsets(), key=lambda m: (bin(m).count("1"), m))
    if len(masks) > cap:
        raise SizeLimitExceeded(f"{len(masks)} downsets exceed cap {cap}")
    index = {m: k for k, m in enumerate(masks)}
    k = len(masks)
    up = [0] * k
    for a, ma in enumerate(masks):
        mask = 0
        for b, mb in enumerate(masks):
            if ma & ~mb == 0:
                mask |= 1 << b
        up[a] = mask
    poset = Poset(k, up, labels=tuple(masks))
    meet = [[index[ma & mb] for mb in masks] for ma in masks]
    join = [[index[ma | mb] for mb in masks] for ma in masks]
    lat = FiniteLattice(poset, meet, join, index[0], index[masks[-1]])
    return lat


def direct_product(A: FiniteLattice, B: FiniteLattice,
                   max_size: Optional[int] = None) -> FiniteLattice:
    cap = DEFAULT_MAX_SIZE if max_size is None else max_size
    n = A.n * B.n
    if n > cap:
        raise SizeLimitExceeded(f"product size {n} exceeds cap {cap}")
    nb = B.n
    up = [0] * n
    for a in range(A.n):
        for b in range(nb):
            mask = 0
            for a2 in _bits(A.poset.up[a]):
                base = a2 * nb
                for b2 in _bits(B.poset.up[b]):
                    mask |= 1 << (base + b2)
            up[a * nb + b] = mask
    poset = Poset(n, up)
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a1 in range(A.n):
        for b1 in range(nb):
            i = a1 * nb + b1
            mi, ji = meet[i], join[i]
            Am, Aj = A.meet[a1], A.join[a1]
            for a2 in range(A.n):
                base = a2 * nb
                am, aj = Am[a2] * nb, Aj[a2] * nb
                Bm, Bj = B.meet, B.join
                row_m, row_j = Bm[b1], Bj[b1]
                for b2 in range(nb):
                    mi[base + b2] = am + row_m[b2]
                    ji[base + b2] = aj + row_j[b2]
    return FiniteLattice(poset, meet, join,
                         A.bottom * nb + B.bottom, A.top * nb + B.top)


def interval(L: FiniteLattice, a: int, b: int) -> FiniteLattice:
    """Sublattice {x : a <= x <= b} with induced operations."""
    if not L.leq(a, b):
        raise NotComparable(f"{a} is not below {b}")
    members = [x for x in range(L.n) if L.leq(a, x) and L.leq(x, b)]
    idx = {e: k for k, e in enumerate(members)}
    poset = L.poset.induced(members, labels=tuple(members))
    meet = [[idx[L.meet[x][y]] for y in members] for x in members]
    join = [[idx[L.join[x][y]] for y in members] for x in members]
    return FiniteLattice(poset, meet, join, idx[a], idx[b])


# ---------------------------------------------------------------------------
# isomorphism testing


def _refined_profiles(P: Poset):
    """Iterated neighborhood refinement; profiles are iso-invariant ints."""
    n = P.n
    ups = [[] for _ in range(n)]
    downs = [[] for _ in range(n)]
    for (i, j) in P.covers:
        ups[i].append(j)
        downs[j].append(i)
    prof = [(P.heights[i], P.depths[i], len(ups[i]), len(downs[i]),
             bin(P.up[i]).count("1"), bin(P.down[i]).count("1"))
            for i in range(n)]
    prof = _rank(prof)
    for _ in range(3):
        nxt = [(prof[i],
                tuple(sorted(prof[j] for j in ups[i])),
                tuple(sorted(prof[j] for j in downs[i])))
               for i in range(n)]
        nxt = _rank(nxt)
        if nxt == prof:
            break
        prof = nxt
    return prof


def _rank(values):
    order = {v: k for k, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]


def poset_fingerprint(P: Poset) -> tuple:
    """Deterministic iso-invariant fingerprint (no builtin hashing)."""
    return (P.n, len(P.covers), tuple(sorted(_refined_profiles(P))))


def poset_isomorphism(P: Poset, Q: Poset) -> Optional[IsoWitness]:
    """Lexicographically least order-isomorphism, or None."""
    if P.n != Q.n or len(P.covers) != len(Q.covers):
        return None
    pp, qq = _refined_profiles(P), _refined_profiles(Q)
    if sorted(pp) != sorted(qq):
        return None
    n = P.n
    mapping = [-1] * n
    used = [False] * n

    def ok(i, img):
        for k in range(i):
            if P.leq(k, i) != Q.leq(mapping[k], img):
                return False
            if P.leq(i, k) != Q.leq(img, mapping[k]):
                return False
        return True

    def rec(i):
        if i == n:
            return True
        for img in range(n):
            if used[img] or qq[img] != pp[i]:
                continue
            if ok(i, img):
                mapping[i] = img
                used[img] = True
                if rec(i + 1):
                    return True
                used[img] = False
        mapping[i] = -1
        return False

    if rec(0):
        return IsoWitness(tuple(mapping))
    return None


def lattices_isomorphic(A: FiniteLattice, B: FiniteLattice) -> bool:
    """Order isomorphism of finite lattices is automatically a lattice iso."""
    return poset_isomorphism(A.poset, B.poset) is not None


# ---------------------------------------------------------------------------
# exhaustive enumeration of small lattices
#
# A lattice with n >= 2 elements is its bottom-deleted poset plus a fresh
# bottom, and the bottom-deleted poset is exactly a finite join-semilattice
# with top.  Those are generated by repeatedly attaching a new minimal
# element below a filter, with isomorphism rejection per step.


class _Jslt:
    """Join-semilattice with top, as up-set masks (join implied)."""

    __slots__ = ("n", "up")

    def __init__(self, n, up):
        self.n = n
        self.up = up

    def poset(self):
        return Poset(self.n, self.up)


def _jslt_extensions(S: _Jslt):
    """All ways to add a new minimal element below a filter of S."""
    n = S.n
    up = S.up
    # filters = complements of downsets of S
    P = S.poset()
    full = (1 << n) - 1
    for dmask in P.downsets():
        U = full & ~dmask
        if U == 0:
            continue
        ok = True
        for x in range(n):
            if U >> x & 1:
                continue
            W = U & up[x]
            good = False
            for w in _bits(W):
                if W & ~up[w] == 0:
                    good = True
                    break
            if not good:
                ok = False
                break
        if ok:
            new_up = list(up) + [U | (1 << n)]
            yield _Jslt(n + 1, new_up)


def _jslt_level(prev):
    """Extend every representative; deduplicate up to isomorphism."""
    buckets = {}
    out = []
    for S in prev:
        for T in _jslt_extensions(S):
            P = T.poset()
            fp = poset_fingerprint(P)
            found = False
            for (Q, _) in buckets.get(fp, ()):
                if poset_isomorphism(P, Q) is not None:
                    found = True
                    break
            if not found:
                buckets.setdefault(fp, []).append((P, T))
                out.append(T)
    return out


_JSLT_CACHE = [[_Jslt(1, [1])]]


def _jslts(m: int):
    while len(_JSLT_CACHE) < m:
        _JSLT_CACHE.append(_jslt_level(_JSLT_CACHE[-1]))
    return _JSLT_CACHE[m - 1]


def enumerate_lattices(n: int, cap: int = ENUMERATION_CAP) -> Iterator[FiniteLattice]:
    """One representative per isomorphism class of n-element lattices.

    Deterministic: representatives come out in a fixed generation order.
    """
    if n > cap:
        raise SizeLimitExceeded(f"enumeration size {n} exceeds cap {cap}")
    if n < 1:
        return
    if n == 1:
        yield FiniteLattice.from_covers(1, [])
        return
    for S in _jslts(n - 1):
        covers = []
        sub = S.poset()
        minimals = sub.minimal_elements()
        for (i, j) in sub.covers:
            covers.append((i + 1, j + 1))
        for m in minimals:
            covers.append((0, m + 1))
        yield FiniteLattice.from_covers(n, covers)
