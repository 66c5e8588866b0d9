"""Maxima of d-dimensional point sets by divide, prune and conquer."""

from .core import (
    AxisBox,
    BoxRelation,
    DimensionError,
    InvalidCoordinateError,
    Point,
    PointSet,
    box_relation,
    dedupe,
    dominates,
    max_corner,
    min_enclosing_box,
    weakly_dominates_excl,
)
from .dpc import IterationRecord, TraceMetrics, compute_maxima, prune_iteration, rj_schedule
from .kdpart import KdPartition, build_partition, partial_intersection_count, residual_points
from .lab import (
    GeneratedInstance,
    RespectfulPartitionSpec,
    gen_balanced,
    gen_cascade,
    gen_uniform,
    gibbs_bound_check,
    naive_maxima,
    partition_entropy,
    respectful_verify,
    sweep_maxima_2d,
    theoretical_cost,
)
from .oracle import (
    GroupedOracle,
    Staircase2D,
    batch_dominated,
    brute_batch,
    build_grouped,
    build_staircase_2d,
    grouped_query,
    offline_sweep_3d,
    query_staircase,
)

__version__ = "0.1.0"
