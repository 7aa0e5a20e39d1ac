# Author: Intergraph developers
#
# License: BSD 3-Clause

from .version import __version__  # noqa: F401
from . import datasets
from .base import (
    CapExceededError,
    CheckResult,
    ConstantsIntegrityError,
    DegenerateGraphError,
    HypothesisError,
    IdentityViolationError,
    Report,
    Verdict,
)
from ._gfq import (
    Field,
    FieldElement,
    make_field,
    add,
    mul,
    neg,
    inv,
    power,
    frobenius,
    trace,
    norm,
    in_subfield,
    lambda_element,
    norm_root,
    solve_trace,
)
from ._unitary3 import (
    Matrix3,
    ProjPoint,
    herm,
    is_special_unitary,
    is_scalar,
    is_nondegenerate,
    enumerate_points,
    isotropic_points,
    stabilizes,
    move_to_e1,
    witness,
    verify_proposition,
    stabilizer_of_e1,
    make_unitary_action,
)
from ._permgrp import (
    Permutation,
    Group,
    Subgroup,
    Lattice,
    parse_cycles,
    compose,
    inverse,
    identity,
    generate,
    all_subgroups,
    subgroups_by_joins,
    intersect,
    join,
    conjugate,
    conjugates,
    normalizer,
    centralizer,
    maximals,
    prime_order_subgroups,
    involutions,
    dihedral_join,
    double_count_check,
    point_stabilizer,
    setwise_stabilizer,
    cyclic_subgroup,
    subgroup_generated,
)
from ._igraph import (
    IntersectionGraph,
    Diameter,
    PathWitness,
    build,
    components,
    distance,
    diameter,
    diameter_by_matrix_powering,
    shortest_path,
    maximal_induced,
    check_theorem_band,
    diameter_oracle_check,
    dihedral_connector_check,
    l2q_pointstab_check,
)
from ._arith import (
    AtlasConstants,
    un_order,
    su3_order,
    unitary_point_stabilizer_order,
    unitary_singer_order,
    u3_ratio,
    u5_ratio,
    u3_ratio_check,
    u5_ratio_check,
    m23_check,
    bm_check,
)
from ._utils import get_lattice_cap

__all__ = [
    "datasets",
    # base
    "CapExceededError",
    "CheckResult",
    "ConstantsIntegrityError",
    "DegenerateGraphError",
    "HypothesisError",
    "IdentityViolationError",
    "Report",
    "Verdict",
    # gfq
    "Field",
    "FieldElement",
    "make_field",
    "add",
    "mul",
    "neg",
    "inv",
    "power",
    "frobenius",
    "trace",
    "norm",
    "in_subfield",
    "lambda_element",
    "norm_root",
    "solve_trace",
    # unitary3
    "Matrix3",
    "ProjPoint",
    "herm",
    "is_special_unitary",
    "is_scalar",
    "is_nondegenerate",
    "enumerate_points",
    "isotropic_points",
    "stabilizes",
    "move_to_e1",
    "witness",
    "verify_proposition",
    "stabilizer_of_e1",
    "make_unitary_action",
    # permgrp
    "Permutation",
    "Group",
    "Subgroup",
    "Lattice",
    "parse_cycles",
    "compose",
    "inverse",
    "identity",
    "generate",
    "all_subgroups",
    "subgroups_by_joins",
    "intersect",
    "join",
    "conjugate",
    "conjugates",
    "normalizer",
    "centralizer",
    "maximals",
    "prime_order_subgroups",
    "involutions",
    "dihedral_join",
    "double_count_check",
    "point_stabilizer",
    "setwise_stabilizer",
    "cyclic_subgroup",
    "subgroup_generated",
    # igraph
    "IntersectionGraph",
    "Diameter",
    "PathWitness",
    "build",
    "components",
    "distance",
    "diameter",
    "diameter_by_matrix_powering",
    "shortest_path",
    "maximal_induced",
    "check_theorem_band",
    "diameter_oracle_check",
    "dihedral_connector_check",
    "l2q_pointstab_check",
    # arith
    "AtlasConstants",
    "un_order",
    "su3_order",
    "unitary_point_stabilizer_order",
    "unitary_singer_order",
    "u3_ratio",
    "u5_ratio",
    "u3_ratio_check",
    "u5_ratio_check",
    "m23_check",
    "bm_check",
    "get_lattice_cap",
]
