"""Exact classification of smashing localizations for valuation domains.

The library decides, enumerates and cross-verifies the localization theory of
a valuation domain presented by its totally ordered value group: ideal cuts
with Minkowski arithmetic, the prime spectrum with idempotency flags,
interval-chain classification of homological ring epimorphisms, the Telescope
Conjecture criterion, Thomason up-sets, an exact generalized-power-series
ring model with Smith normal form and Mazet presentations, and Tor of
cut-quotient modules.
"""

from .errors import *  # noqa: F401,F403
from .groups import (  # noqa: F401
    INT,
    RAT,
    AOElem,
    ConvexRef,
    Group,
    GroupDescriptor,
    antilex_omega,
    ao,
    build_group,
    int_loc,
    lex,
    parse_descriptor,
    render_descriptor,
)
from .cuts import (  # noqa: F401
    Cut,
    FamilySupport,
    all_values,
    closed,
    cut_contains,
    cut_leq,
    ideal_intersection,
    ideal_sum,
    is_idempotent,
    is_integral,
    loc_cone,
    minkowski,
    open_above,
    parse_cut,
    prime_cut,
    render_cut,
    support_primes,
    zero_ideal,
)
from .spectrum import (  # noqa: F401
    AdmissibleInterval,
    PrimeRef,
    ValuationSpectrum,
    admissible_intervals,
    ispec,
    parse_spectrum,
    render_spectrum,
    spectrum_from_flags,
    spectrum_from_group,
    spectrum_from_slots,
)
from .smashing import (  # noqa: F401
    FamilyItem,
    HomEpiDescriptor,
    IntervalChain,
    IntervalItem,
    ThomasonSet,
    chain_of,
    chain_to_thomason,
    classify_chain,
    enumerate_smashing,
    finite_stage,
    is_compactly_generated,
    is_flat,
    parse_chain,
    render_chain,
    ring_text,
    tc_holds,
    tc_holds_family,
    thomason_sets,
    validate_chain,
)
from .ring import (  # noqa: F401
    INFINITY,
    Component,
    PrimeField,
    QQ,
    RingElement,
    Series,
    ValMatrix,
    decompose_fp_module,
    divide_exact,
    divides,
    locally_constant_decomposition,
    matrix,
    mazet_for_localization,
    parse_element,
    render_ring_element,
    snf,
    spectrum_component,
    valuation,
    verify_mazet,
)
from .homology import (  # noqa: F401
    FiveTerm,
    FormalComplex,
    StdModule,
    component_module,
    five_term,
    formal_complex,
    idempotent_kernel_test,
    interval_orthogonality,
    kunneth_vanishing,
    module_Q,
    module_R,
    module_R_mod,
    parse_complex,
    parse_module,
    render_module,
    smashing_membership,
    std_module,
    tor0,
    tor1,
    zero_module,
)
