"""Counting, construction by ID and identification of finite groups with
cyclic Sylow subgroups."""

from .arith import FactoredInt, crt, discrete_log, factorize, is_prime, mul_order, smallest_primitive_root
from .clusters import ActionTriple, Cluster, clusters_for, compare_clusters, is_permissible
from .counting import (
    acting_divisors,
    acting_group_orders,
    count_all,
    count_by_cluster,
    count_by_divisor,
    count_by_divisor_and_order,
    nu,
)
from .enumeration import GroupId, all_groups, group_by_id, iter_groups
from .identify import id_of_descriptor, id_of_metacyclic, is_isomorphic
from .structure import (
    CGroupDescriptor,
    MetacyclicParams,
    PcPresentation,
    descriptor_to_metacyclic,
    descriptor_to_presentation,
    metacyclic_to_descriptor,
    validate_metacyclic,
)

__version__ = "0.1.0"

__all__ = [
    "FactoredInt",
    "crt",
    "discrete_log",
    "factorize",
    "is_prime",
    "mul_order",
    "smallest_primitive_root",
    "ActionTriple",
    "Cluster",
    "clusters_for",
    "compare_clusters",
    "is_permissible",
    "acting_divisors",
    "acting_group_orders",
    "count_all",
    "count_by_cluster",
    "count_by_divisor",
    "count_by_divisor_and_order",
    "nu",
    "GroupId",
    "all_groups",
    "group_by_id",
    "iter_groups",
    "id_of_descriptor",
    "id_of_metacyclic",
    "is_isomorphic",
    "CGroupDescriptor",
    "MetacyclicParams",
    "PcPresentation",
    "descriptor_to_metacyclic",
    "descriptor_to_presentation",
    "metacyclic_to_descriptor",
    "validate_metacyclic",
]
