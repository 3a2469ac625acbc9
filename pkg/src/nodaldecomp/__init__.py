"""Graph-Laplacian spectra, nodal domains and nodal decomposition numbers."""

from .builders import (
    Representation,
    complete,
    complete_multipartite,
    cycle,
    disjoint_union,
    from_representation,
    g_join,
    join,
    parse_expr,
    path,
)
from .errors import BudgetExceeded, ConvergenceError
from .graph import (
    Graph,
    GraphError,
    are_isomorphic,
    articulation_points,
    complement,
    connected_components,
    dominating_vertices,
    induced_subgraph,
    is_connected,
    laplacian,
    new_graph,
)
from .groups import (
    FiniteGroup,
    abelian_group,
    cyclic_group,
    cyclic_subgroup,
    element_order,
    euler_totient,
    from_cayley_table,
    power_graph,
    semidirect_pq,
)
from .nodal import (
    NodalReport,
    check_courant_floor,
    check_single_negative_lemma,
    nodal_decomposition_number,
    nodal_edges,
    sign_completions,
    strong_nodal_domains,
    weak_nodal_domains,
)
from .spectra import (
    EigenBasis,
    EigenPair,
    characteristic_polynomial,
    closed_form_basis,
    eigen_decompose,
    join_spectrum_identity_check,
    mohar_bound_check,
    verify_eigenpair_exact,
)
from .verify import (
    TheoremReport,
    verify_abelian_p_group,
    verify_highest_eigenvalue,
    verify_power_graph_pq,
    verify_slb,
    verify_urschel_bound_on_basis,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ConvergenceError",
    "abelian_group",
    "are_isomorphic",
    "articulation_points",
    "characteristic_polynomial",
    "check_courant_floor",
    "check_single_negative_lemma",
    "closed_form_basis",
    "complement",
    "complete",
    "complete_multipartite",
    "connected_components",
    "cycle",
    "cyclic_group",
    "cyclic_subgroup",
    "disjoint_union",
    "dominating_vertices",
    "eigen_decompose",
    "EigenBasis",
    "EigenPair",
    "element_order",
    "euler_totient",
    "FiniteGroup",
    "from_cayley_table",
    "from_representation",
    "g_join",
    "Graph",
    "GraphError",
    "induced_subgraph",
    "is_connected",
    "join",
    "join_spectrum_identity_check",
    "laplacian",
    "mohar_bound_check",
    "new_graph",
    "nodal_decomposition_number",
    "nodal_edges",
    "NodalReport",
    "parse_expr",
    "path",
    "power_graph",
    "Representation",
    "semidirect_pq",
    "sign_completions",
    "strong_nodal_domains",
    "TheoremReport",
    "verify_abelian_p_group",
    "verify_eigenpair_exact",
    "verify_highest_eigenvalue",
    "verify_power_graph_pq",
    "verify_slb",
    "verify_urschel_bound_on_basis",
    "weak_nodal_domains",
]
