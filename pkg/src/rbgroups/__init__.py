"""Rota-Baxter operators of weight +-1 on finite groups.

Construction, verification, enumeration, and classification of the
operators; the twisted group an operator induces; extension of
prescribed generator images; and the operator pushed down to the graded
Lie ring of the lower central series.
"""

from .corpus import corpus_group, corpus_names
from .derived import (
    DerivedGroup,
    StructureReport,
    derived_group,
    eval_word,
    structure_report,
)
from .enumeration import (
    Census,
    ElementaryVerdict,
    OrbitClass,
    SimpleCheck,
    SplittingReport,
    brute_force_enumerate,
    classify,
    graph_enumerate,
    graph_of_operator,
    is_rb_elementary,
    simple_group_check,
    splitting_report,
)
from .errors import RBGroupsError
from .extension import (
    ClosureGroup,
    ExtensionResult,
    closure_group,
    extend_generators,
    word_identities_check,
)
from .groups import (
    FiniteGroup,
    GroupMap,
    Subgroup,
    all_subgroups,
    automorphisms,
    direct_power,
    direct_product,
    exact_factorizations,
    from_cayley_table,
    from_permutations,
    is_isomorphic,
    semidirect_product,
    subgroup_generated,
    wreath_product,
)
from .lie_ring import (
    GradedLieRing,
    InducedRB,
    graded_lie_ring,
    induced_rb,
    preserves_lower_central,
    verify_lie_rb,
)
from .operators import (
    RBOperator,
    Verdict,
    bplus,
    conjugate,
    elementary,
    inverse_argument_convert,
    is_splitting,
    kernel,
    image,
    rb_operator,
    tilde,
    verify,
    weight_convert,
)

__version__ = "0.1.0"

__all__ = [
    "FiniteGroup", "GroupMap", "Subgroup", "from_cayley_table",
    "from_permutations", "subgroup_generated", "all_subgroups",
    "automorphisms", "is_isomorphic", "exact_factorizations",
    "direct_product", "direct_power", "semidirect_product", "wreath_product",
    "RBOperator", "Verdict", "rb_operator", "verify", "elementary", "tilde",
    "conjugate", "weight_convert", "inverse_argument_convert", "bplus",
    "kernel", "image", "is_splitting",
    "DerivedGroup", "derived_group", "eval_word", "StructureReport",
    "structure_report",
    "Census", "OrbitClass", "brute_force_enumerate", "graph_enumerate",
    "graph_of_operator", "classify", "is_rb_elementary", "ElementaryVerdict",
    "splitting_report", "SplittingReport", "simple_group_check", "SimpleCheck",
    "ExtensionResult", "extend_generators", "word_identities_check",
    "ClosureGroup", "closure_group",
    "GradedLieRing", "InducedRB", "graded_lie_ring", "induced_rb",
    "preserves_lower_central", "verify_lie_rb",
    "corpus_group", "corpus_names",
    "RBGroupsError",
]
