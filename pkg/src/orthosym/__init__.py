"""orthosym: finite subgroups of O(4) in quaternion-pair form.

Core pipeline: parse generators -> close the group -> classify it into
exactly one of three cases (common invariant line, an element with no
invariant line, or conjugacy to the exceptional order-16 group K), with a
machine-checkable witness for each verdict.
"""

from .catalog import FamilySpec, expected_classification, generators, sweep_specs
from .chirality import ChiralityData, chirality_invariant, orbit_permutation
from .elem import OrthElement, from_matrix, from_pair, identity, parse_element
from .group import (
    CHIRAL_ELEMENT,
    GROUP_K,
    INVARIANT_LINE,
    Classification,
    FiniteGroup,
    classify,
    closure,
    conjugate_group,
    conjugate_to_K,
    find_chiral_element,
    find_invariant_line,
    group_K,
    groups_equal,
)
from .linalg import commutant, eigen_real_line, lcp_witness, rotation_decomposition
from .quat import Quaternion, UnitQuaternion, exp_pi_i, named_constant, qconj, qmul, qre
from .scalar import ExactScalar, eval_scalar, format_scalar, parse_scalar

__version__ = "0.1.0"

__all__ = [
    "CHIRAL_ELEMENT",
    "Classification",
    "ChiralityData",
    "ExactScalar",
    "FamilySpec",
    "FiniteGroup",
    "GROUP_K",
    "INVARIANT_LINE",
    "OrthElement",
    "Quaternion",
    "UnitQuaternion",
    "chirality_invariant",
    "classify",
    "closure",
    "commutant",
    "conjugate_group",
    "conjugate_to_K",
    "eigen_real_line",
    "eval_scalar",
    "exp_pi_i",
    "expected_classification",
    "find_chiral_element",
    "find_invariant_line",
    "format_scalar",
    "from_matrix",
    "from_pair",
    "generators",
    "group_K",
    "groups_equal",
    "identity",
    "lcp_witness",
    "named_constant",
    "orbit_permutation",
    "parse_element",
    "parse_scalar",
    "qconj",
    "qmul",
    "qre",
    "rotation_decomposition",
    "sweep_specs",
    "__version__",
]
