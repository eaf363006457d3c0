"""Finite cover calculus and interval bounds for topological complexity."""

from .bounds import (
    FactBase,
    GroupDescriptor,
    Interval,
    Quantity,
    Report,
    SpaceDescriptor,
    assert_fact,
    bounds_for,
    check_consistency,
    propagate,
)
from .complexes import (
    RingPresentation,
    SimplicialComplex,
    betti_z2,
    cohomology_ring_z2,
    dimension,
    tensor_square,
    zero_divisor_cup_length,
)
from .covers import (
    IndexedFamily,
    PermutationAction,
    is_invariant,
    is_k_cover_fast,
    is_k_cover_oracle,
    min_order,
    order_at,
    ostrand_extend,
    product_cover,
    verify_witnesses,
)
from .errors import Inconsistency, InputError
from .nerve import FiniteMetricSpace, extend_same_nerve, nerve_of

__version__ = "0.1.0"
