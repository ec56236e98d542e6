"""Algebraic toolkit for synchronizing automata.

Builds the transition monoid's matrix representation on the hyperplane
orthogonal to the all-ones vector, computes the radical and the split into
simple components, derives supports, sections, cores and packing-number
certificates, and synthesizes reset words whose length is certified against
the component bounds.
"""

from .automaton import (
    Automaton,
    Transformation,
    apply_word,
    cerny,
    former_rank,
    format_aut,
    is_synchronizing,
    parse_aut,
    random_automaton,
    rank,
    shortest_reset_word,
    transformation_of,
)
from .congruence import (
    Partition,
    inductive_synchronize,
    is_congruence,
    is_simple,
    kernel_partition,
    largest_congruence_below,
    principal_congruence,
    quotient,
)
from .algebra import (
    Tolerances,
    algebra_basis,
    algebra_of_automaton,
    center_dim,
    enumerate_monoid,
    is_radical_word,
    is_semisimple,
    radical,
    rep_matrix,
    semisimple_quotient,
    shortest_radical_word,
    theta_support,
    wedderburn_decompose,
)
from .ideals import (
    ComponentMonoid,
    ThetaTable,
    build_theta,
    component_monoid,
    minimal_core,
    minimal_section,
    rnk_ideal,
    sigma_classes,
    synthesize_reset_word,
)
from .packing import (
    PackingDesign,
    PackingInstance,
    exact_packing,
    greedy_packing,
    monotonicity_check,
    observed_packing_family,
    packing_number,
    upper_bounds,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
