"""Triangle-map partition toolkit.

Exact enumeration of integer partitions in part-by-multiplicity form,
the piecewise triangle map with its branch inverses, a predicate
language naming every set of interest, an enumeration-backed identity
verification engine, q-series coefficient routes, and the slow map on
the real cone over exact rationals.
"""

from .core import (
    EmptyPartitionError,
    LengthMismatchError,
    NonDecreasingPartsError,
    NonPositiveEntryError,
    NotSortedError,
    Partition,
    PartitionClass,
    PartitionError,
    make_partition,
)
from .dsl import SetPredicate, parse_predicate, TRUE
from .enumeration import (
    DESK_CEILING,
    PartitionList,
    count_partitions,
    filter_partitions,
    iter_partitions,
    partitions_of,
)
from .sets import (
    builtin,
    cylinder,
    delta0_offset,
    delta1_offset,
    gauss_set,
    parse_set_expression,
)
from .trimap import (
    Branch,
    MapStep,
    Orbit,
    apply_t,
    apply_t0,
    apply_t0_inverse,
    apply_t1,
    apply_t1_inverse,
    apply_td,
    orbit,
    td_part_injectivity_check,
)

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "DESK_CEILING",
    "EmptyPartitionError",
    "LengthMismatchError",
    "MapStep",
    "NonDecreasingPartsError",
    "NonPositiveEntryError",
    "NotSortedError",
    "Orbit",
    "Partition",
    "PartitionClass",
    "PartitionError",
    "PartitionList",
    "SetPredicate",
    "TRUE",
    "apply_t",
    "apply_t0",
    "apply_t0_inverse",
    "apply_t1",
    "apply_t1_inverse",
    "apply_td",
    "builtin",
    "count_partitions",
    "cylinder",
    "delta0_offset",
    "delta1_offset",
    "filter_partitions",
    "gauss_set",
    "iter_partitions",
    "make_partition",
    "orbit",
    "parse_predicate",
    "parse_set_expression",
    "partitions_of",
    "td_part_injectivity_check",
]
