"""latcon: exact finite-lattice and congruence-lattice workbench."""

from .order import (
    FiniteLattice,
    IsoWitness,
    Poset,
    direct_product,
    downset_lattice,
    enumerate_lattices,
    interval,
    join_irreducibles,
    lattice_from_covers,
    lattices_isomorphic,
    poset_from_covers,
    poset_isomorphism,
)
from .congruences import (
    Congruence,
    CongruenceLattice,
    Embedding,
    congruence_join,
    congruence_lattice,
    congruence_meet,
    is_congruence_preserving_extension,
    principal_congruence,
    quotient_lattice,
    restrict,
)

__all__ = [name for name in dir() if not name.startswith("_")]
