"""Finite Stone duality: Boolean algebras, their ultrafilter spaces, and the
verified passages between algebras, spaces, rings and homomorphisms."""

from .algebra import (
    BoolAlgebra,
    Element,
    Homomorphism,
    PowerSetAlgebra,
    SetAlgebra,
    TableAlgebra,
    atoms,
    find_isomorphism,
    identity_hom,
    is_isomorphism,
    leq,
    sup,
    inf,
    two_element_algebra,
    validate_algebra,
    validate_hom,
)
from .compact import (
    CofiniteElement,
    CofinitePoint,
    Embedding,
    Refusal,
    basic_open,
    compactification_from_space,
    compactify,
    domination,
    is_in,
    one_point_ultrafilters,
    separates_points,
    stone_cech_extend,
)
from .duality import DualityCertificate, dual_check, dual_hom, dual_map, rep_homeo, rep_iso
from .errors import *  # noqa: F401,F403
from .filters import (
    Filter,
    Ideal,
    all_filters,
    all_ultrafilters,
    classify,
    extend_to_ultrafilter,
    generated_filter,
    has_fpp,
    hom_to_ultra,
    principal_filter,
    ultra_to_hom,
)
from .hom_z2 import all_homs, function_space, hom_closedness_check, hom_spec_homeo, hom_ultra_homeo
from .ring import (
    BooleanRing,
    RingIdeal,
    classify_ideal,
    every_clopen_is_basic,
    ideal_generated,
    spec_ultra_homeo,
    spectrum,
    to_algebra,
    to_ring,
)
from .terms import TermAlgebra, canonicalize, parse, presentation, print_canonical, term_algebra
from .topology import (
    ContinuousMap,
    TopSpace,
    check_axioms,
    clop,
    closure,
    components,
    stone_space,
)

__version__ = "0.1.0"
