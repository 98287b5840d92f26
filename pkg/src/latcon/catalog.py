"""Small standard posets and lattices used across tests and docs."""

from .order import FiniteLattice, Poset, lattice_from_covers, poset_from_covers


def chain_poset(n: int) -> Poset:
    return poset_from_covers(n, [(i, i + 1) for i in range(n - 1)])


def antichain_poset(n: int) -> Poset:
    return poset_from_covers(n, [])


def chain(n: int) -> FiniteLattice:
    """n-element chain C_n."""
    return lattice_from_covers(n, [(i, i + 1) for i in range(n - 1)])


def boolean(k: int) -> FiniteLattice:
    """Boolean lattice 2^k on subset bitmasks."""
    n = 1 << k
    covers = []
    for m in range(n):
        for b in range(k):
            if not m >> b & 1:
                covers.append((m, m | (1 << b)))
    return lattice_from_covers(n, covers)


def m3() -> FiniteLattice:
    """Diamond: bottom, three atoms, top."""
    return lattice_from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


def n5() -> FiniteLattice:
    """Pentagon: 0 < a < b < 1 and 0 < c < 1."""
    return lattice_from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
