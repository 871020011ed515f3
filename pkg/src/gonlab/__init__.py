"""Chip-firing divisors, exact gonality search and tree-cut widths on multigraphs.

The usual entry points::

    from gonlab import harary, gonality
    gonality(harary(4, 12)).gonality      # 8
"""

from importlib.metadata import PackageNotFoundError, version as _version

try:
    __version__ = _version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from ._kernels import KERNEL_VERSION
from .constructions import (
    antipodal_divisor,
    block_profile,
    harary_even_bound,
    harary_odd_bound,
    independent_complement_divisor,
    universal_degree,
    universal_divisor,
    verify_translation,
)
from .divisor import Divisor, FiringScript, apply_script, fire_set, fire_vertex, parse_divisor
from .errors import (
    BudgetExceeded,
    ContractError,
    DivisorSyntaxError,
    GonlabError,
    GraphSpecError,
    GuardExceeded,
    SearchInconsistency,
)
from .graph import (
    CirculantSpec,
    Multigraph,
    alpha_harary,
    circulant,
    delete_and_pair,
    harary,
    harary_deletion_pairing,
    harary_spec,
    is_connected,
    max_independent_set,
    parse_edge_list,
    parse_graph,
)
from .reduction import RankTable, dhar_burn, has_positive_rank, is_reduced, is_winnable, q_reduce, rank
from .scramble import (
    Scramble,
    TreeCutDecomposition,
    egg_cut_number,
    harary4_path_decomposition,
    hitting_number,
    scramble_order,
    tcd_tally,
    tcd_width,
)
from .search import (
    SearchBudget,
    candidate_space,
    count_classes,
    enumerate_classes,
    exists_positive_rank,
    gonality,
    gonality_bounds,
    gonality_table,
    search_degree,
)

ENGINE_VERSION = f"{__version__}+k{KERNEL_VERSION}"
