"""Exact congruence computation for finite lattices.

Congruences are canonical partitions: element i is mapped to the least
element of its block, so equality and hashing are structural.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InternalVerificationFailed, SizeLimitExceeded
from .order import FiniteLattice, Poset, _bits

MATERIALIZE_CAP = 1 << 20


@dataclass(frozen=True)
class Congruence:
    """Meet/join-compatible partition in least-element block labeling."""

    labels: tuple

    @property
    def n(self):
        return len(self.labels)

    def collapses(self, a, b) -> bool:
        return self.labels[a] == self.labels[b]

    def blocks(self):
        out = {}
        for i, r in enumerate(self.labels):
            out.setdefault(r, []).append(i)
        return [tuple(out[r]) for r in sorted(out)]

    def block_count(self):
        return len(set(self.labels))

    def refines(self, other: "Congruence") -> bool:
        """self <= other in the congruence lattice (finer partition)."""
        lab = other.labels
        return all(lab[i] == lab[r] for i, r in enumerate(self.labels))

    @property
    def is_identity(self):
        return all(r == i for i, r in enumerate(self.labels))

    @property
    def is_all(self):
        return all(r == 0 for r in self.labels)


def identity_congruence(n: int) -> Congruence:
    return Congruence(tuple(range(n)))


def all_congruence(n: int) -> Congruence:
    return Congruence((0,) * n)


class _UF:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def labels(self, n):
        roots = [self.find(i) for i in range(n)]
        least = {}
        for i, r in enumerate(roots):
            if r not in least:
                least[r] = i
        return tuple(least[r] for r in roots)


def congruence_closure(L: FiniteLattice, pairs) -> Congruence:
    """Least congruence of L collapsing every given pair (fixpoint closure)."""
    n = L.n
    uf = _UF(n)
    meet, join = L.meet, L.join
    work = deque(pairs)
    rng = range(n)
    while work:
        a, b = work.popleft()
        if not uf.union(a, b):
            continue
        ma, mb = meet[a], meet[b]
        ja, jb = join[a], join[b]
        find = uf.find
        for z in rng:
            x, y = ma[z], mb[z]
            if find(x) != find(y):
                work.append((x, y))
            x, y = ja[z], jb[z]
            if find(x) != find(y):
                work.append((x, y))
    return Congruence(uf.labels(n))


def principal_congruence(L: FiniteLattice, a: int, b: int) -> Congruence:
    """con(a, b): least congruence collapsing a and b."""
    return congruence_closure(L, [(a, b)])


def congruence_join(L: FiniteLattice, theta: Congruence, phi: Congruence) -> Congruence:
    pairs = [(i, theta.labels[i]) for i in range(L.n)]
    pairs += [(i, phi.labels[i]) for i in range(L.n)]
    return congruence_closure(L, pairs)


def congruence_meet(L: FiniteLattice, theta: Congruence, phi: Congruence) -> Congruence:
    """Common refinement of the two partitions."""
    seen = {}
    labels = [0] * L.n
    for i in range(L.n):
        key = (theta.labels[i], phi.labels[i])
        labels[i] = seen.setdefault(key, i)
    return Congruence(tuple(labels))


def is_congruence(L: FiniteLattice, labels) -> bool:
    """Check the substitution property of a partition directly."""
    n = L.n
    meet, join = L.meet, L.join
    reps = {}
    for i, r in enumerate(labels):
        reps.setdefault(r, i)
    for a in range(n):
        ra = labels[a]
        b = reps[ra]
        if a == b:
            continue
        ma, mb = meet[a], meet[b]
        ja, jb = join[a], join[b]
        for z in range(n):
            if labels[ma[z]] != labels[mb[z]]:
                return False
            if labels[ja[z]] != labels[jb[z]]:
                return False
    return True


@dataclass(frozen=True)
class Embedding:
    """Injective meet- and join-preserving map between finite lattices."""

    source: FiniteLattice
    target: FiniteLattice
    mapping: tuple

    def __post_init__(self):
        K, L, f = self.source, self.target, self.mapping
        if len(f) != K.n or len(set(f)) != K.n:
            raise InternalVerificationFailed("embedding map is not injective")
        for x in range(K.n):
            for y in range(x, K.n):
                if f[K.meet[x][y]] != L.meet[f[x]][f[y]]:
                    raise InternalVerificationFailed(
                        f"embedding does not preserve meet at ({x}, {y})")
                if f[K.join[x][y]] != L.join[f[x]][f[y]]:
                    raise InternalVerificationFailed(
                        f"embedding does not preserve join at ({x}, {y})")


def identity_embedding(L: FiniteLattice) -> Embedding:
    return Embedding(L, L, tuple(range(L.n)))


def restrict(theta: Congruence, e: Embedding) -> Congruence:
    """Pull a congruence of the target back along an embedding."""
    seen = {}
    labels = [0] * e.source.n
    for x in range(e.source.n):
        key = theta.labels[e.mapping[x]]
        labels[x] = seen.setdefault(key, x)
    return Congruence(tuple(labels))


class CongruenceLattice:
    """Con L: join-irreducible congruences plus the materialized lattice."""

    def __init__(self, base, ji_congruences, ji_poset, congruences,
                 all_congruences, principal_index):
        self.base = base
        self.ji_congruences = ji_congruences
        self.ji_poset = ji_poset
        self.congruences = congruences          # list aligned with all_congruences
        self.all_congruences = all_congruences  # FiniteLattice or None
        self.principal_index = principal_index  # cover pair -> Congruence

    @property
    def size(self):
        if self.congruences is not None:
            return len(self.congruences)
        return None


def _perspectivity_classes(L: FiniteLattice):
    """Union-find of cover pairs under single-step transposition."""
    covers = list(L.covers)
    idx = {p: k for k, p in enumerate(covers)}
    uf = _UF(len(covers))
    meet, join = L.meet, L.join
    for (a, b) in covers:
        k = idx[(a, b)]
        mb, jb = meet[b], join[b]
        for c in range(L.n):
            # [a,b] transposes up to [c, b∨c] when a = b∧c
            if mb[c] == a:
                d = jb[c]
                other = idx.get((c, d))
                if other is not None:
                    uf.union(k, other)
    groups = {}
    for k, p in enumerate(covers):
        groups.setdefault(uf.find(k), []).append(p)
    return [groups[r] for r in sorted(groups)]


def congruence_lattice(L: FiniteLattice,
                       materialize_cap: int = MATERIALIZE_CAP) -> CongruenceLattice:
    """Compute Con L.

    Join-irreducible congruences are exactly the principal congruences of
    cover pairs; perspective covers share a congruence, so only one
    closure per perspectivity class is run.
    """
    n = L.n
    if n == 1:
        ji_poset = Poset(0, [])
        alll = FiniteLattice.from_covers(1, [])
        return CongruenceLattice(L, [], ji_poset, [identity_congruence(1)],
                                 alll, {})
    classes = _perspectivity_classes(L)
    class_con = []
    for group in classes:
        a, b = group[0]
        class_con.append(principal_congruence(L, a, b))
    principal_index = {}
    distinct = {}
    for group, con in zip(classes, class_con):
        distinct.setdefault(con.labels, con)
        for p in group:
            principal_index[p] = distinct[con.labels]
    ji = sorted(distinct.values(), key=lambda c: c.labels)
    k = len(ji)
    up = [0] * k
    for i in range(k):
        m = 0
        for j in range(k):
            if ji[i].refines(ji[j]):
                m |= 1 << j
        up[i] = m
    ji_poset = Poset(k, up)

    count = 0
    for _ in ji_poset.downsets():
        count += 1
        if count > materialize_cap:
            return CongruenceLattice(L, ji, ji_poset, None, None, principal_index)

    congruences = []
    seen = {}
    masks = sorted(ji_poset.downsets(), key=lambda m: (bin(m).count("1"), m))
    for mask in masks:
        uf = _UF(n)
        for j in _bits(mask):
            lab = ji[j].labels
            for i in range(n):
                uf.union(i, lab[i])
        con = Congruence(uf.labels(n))
        if con.labels in seen:
            raise InternalVerificationFailed(
                "distinct downsets of the ji poset materialized equal congruences")
        seen[con.labels] = True
        congruences.append(con)
    m = len(congruences)
    up2 = [0] * m
    for i in range(m):
        mask = 0
        for j in range(m):
            if congruences[i].refines(congruences[j]):
                mask |= 1 << j
        up2[i] = mask
    alll = FiniteLattice.from_poset(Poset(m, up2))
    return CongruenceLattice(L, ji, ji_poset, congruences, alll, principal_index)


def is_congruence_preserving_extension(e: Embedding):
    """True iff restriction Con(target) -> Con(source) is a bijection.

    Returns (verdict, certificate); the certificate lists each source
    congruence with its extensions, or the first violation.
    """
    conK = congruence_lattice(e.source)
    conL = congruence_lattice(e.target)
    if conK.congruences is None or conL.congruences is None:
        raise SizeLimitExceeded("congruence lattices too large to materialize")
    ext = {theta.labels: [] for theta in conK.congruences}
    stray = []
    for big in conL.congruences:
        r = restrict(big, e)
        if r.labels in ext:
            ext[r.labels].append(big)
        else:
            stray.append((big, r))
    certificate = {"extensions": [], "violation": None}
    verdict = True
    for theta in conK.congruences:
        lifts = ext[theta.labels]
        certificate["extensions"].append((theta, tuple(lifts)))
        if len(lifts) != 1 and certificate["violation"] is None:
            kind = "no-extension" if not lifts else "multiple-extensions"
            certificate["violation"] = (theta, kind, tuple(lifts))
            verdict = False
        elif len(lifts) != 1:
            verdict = False
    if stray:
        # restriction map always lands in Con K; stray entries are impossible
        raise InternalVerificationFailed("restriction left Con(source)")
    return verdict, certificate


def quotient_lattice(L: FiniteLattice, theta: Congruence) -> FiniteLattice:
    """L/theta: blocks ordered by the induced relation."""
    reps = sorted(set(theta.labels))
    idx = {r: k for k, r in enumerate(reps)}
    k = len(reps)
    up = [1 << i for i in range(k)]
    for a in range(L.n):
        ia = idx[theta.labels[a]]
        for b in range(L.n):
            if L.leq(a, b):
                up[ia] |= 1 << idx[theta.labels[b]]
    return FiniteLattice.from_poset(Poset(k, up, labels=tuple(reps)))
