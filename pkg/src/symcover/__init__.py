"""Classification of finite group actions on compact Riemann surfaces.

Components of the moduli space of genus-g curves with a G-action are
computed as orbits of generating vectors under conjugation and
mapping-class moves, with Riemann-Hurwitz signature enumeration, dimension
reporting, and level-structure bookkeeping.
"""

from ._core import active_backend
from .groups import (
    FiniteGroup,
    automorphisms,
    group_from_permutations,
    group_from_table,
    preset_group,
    subgroup_closure,
)
from .level import enumerate_sp, is_symplectic, level_cover_data, sp_order, standard_form
from .moves import (
    MoveSet,
    apply_move,
    braid_only_moveset,
    coupling_move_spec,
    default_moveset,
    register_move,
)
from .orbits import classify, component_count, orbit_of, stability_scan
from .signatures import Signature, dimension, enumerate_signatures, make_signature, rh_genus
from .vectors import GeneratingVector, count_vectors, enumerate_vectors, vector_validate

__version__ = "0.1.0"
