"""beamlab: beam-splitter entanglement and photon-loss monotones on truncated Fock spaces.

The package is organized bottom-up:

* :mod:`beamlab.fock` – states, operators, truncation bookkeeping;
* :mod:`beamlab.channels` – beam splitter, loss channel, derived states;
* :mod:`beamlab.monotones` – entropies, concurrence, relative entropy, witnesses;
* :mod:`beamlab.overlap` – the overlap polynomial in 1 - 2T;
* :mod:`beamlab.verify` – transmission sweeps and mechanical property checks;
* :mod:`beamlab.statespec` – the textual state grammar used by the CLI;
* :mod:`beamlab.cli` – the ``beamlab`` command.
"""

from ._version import __version__
from .channels import (
    SchmidtMatrix,
    beam_splitter_output,
    check_kraus_commutation,
    check_multiplicativity,
    check_schmidt_transpose,
    kraus_operator,
    loss_apply,
    lossy_state,
    number_sandwiched_state,
    photon_subtracted_state,
    reduced_state,
    schmidt_values,
    validate_transmission,
)
from .errors import (
    BeamLabError,
    CutoffError,
    DegenerateInputError,
    DomainError,
    FiniteDimensionError,
    GridError,
    StateSpecError,
    SupportError,
    TruncationError,
    UndefinedStateError,
)
from .fock import (
    DensityMatrix,
    Ensemble,
    PureState,
    TruncationBudget,
    annihilation_matrix,
    as_density,
    coherent_cutoff,
    make_coherent,
    make_fock,
    make_random_mixed,
    make_random_pure,
    make_superposition,
    make_thermal,
    mean_photon_number,
    number_matrix,
    projector,
    thermal_cutoff,
)
from .monotones import (
    MonotoneKind,
    ensemble_entanglement,
    entropy_derivative_identity,
    evaluate_monotone,
    g_concurrence,
    g_concurrence_closed_form,
    mixedness,
    purity,
    qcs_witness,
    relative_entropy,
    relative_entropy_mirror_residual,
    renyi_entropy,
    von_neumann_entropy,
)
from .overlap import (
    OverlapPolynomial,
    overlap_coefficients,
    overlap_direct,
    overlap_reconstruct,
    purity_polynomial,
)
from .statespec import StateSpec, build_state, format_state_spec, parse_state_spec
from .verify import (
    CheckReport,
    SweepCurve,
    Tolerances,
    check_concavity,
    check_convexity,
    check_data_processing,
    check_derivative_identity_sweep,
    check_determinant_match,
    check_exact_identities,
    check_gconc_log_concavity,
    check_gconc_monotonicity,
    check_mirror_identity_sweep,
    check_overlap_polynomial_pairs,
    check_peak_at_half,
    check_qcs_law,
    check_separability,
    check_symmetry,
    corrupt_curve,
    counterexample_summary,
    make_grid,
    run_renyi_counterexample,
    run_suite,
    second_differences,
    suite_passed,
    sweep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
