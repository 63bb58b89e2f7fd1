"""Projections, partial ideals, and invariant families in finite-dimensional
von Neumann algebras.

The heavy lifting lives in the compiled extension ``vna._core``; this module
re-exports its public surface.  Matrices cross the boundary as nested lists
of complex numbers (row-major), so ``numpy.array(...)`` / ``.tolist()`` round
trips are all that is needed for interop.
"""

from ._core import (  # noqa: F401
    BlockAlgebra,
    BlockElement,
    CentralProjection,
    CheckReport,
    CommutativeIdeal,
    CommutativeSubalgebra,
    CoverCertificate,
    FamilyRule,
    IdealSide,
    ProjectionElement,
    Tolerance,
    ViolationWitness,
    center_subalgebra,
    center_value,
    central_carrier,
    check_consistency,
    check_invariance,
    comparison_split,
    conjugate_subalgebra,
    evaluate,
    find_invariance_violation,
    generate,
    includes,
    is_central,
    is_projection,
    joint_spectral_atoms,
    largest_projection_below,
    main_lemma_cover,
    max_abs_diff,
    mvn_compare,
    numerical_rank,
    one_sided_partial_ideal,
    orbit_conjugator,
    partially_orthogonal,
    random_block_projection,
    random_block_unitary,
    random_noncentral_projection,
    random_projection,
    random_subalgebra,
    random_unitary,
    range_matching_unitary,
    rank_vector,
    reverify_witness,
    run_check,
    run_cover,
    run_partial_ideal,
    run_theorem,
    run_witness,
    subalgebra_equal,
    total_partial_ideal,
    trivial_subalgebra,
    unitary_conjugate,
    validate_cover,
    verify_theorem,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
