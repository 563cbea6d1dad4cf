"""Fock-state simulator for metasurface parallel-beam-splitter CZ gates."""

from ._core import (  # noqa: F401
    FactorizationReport,
    FidelityReport,
    GhzReport,
    MetasurfaceConfig,
    ModeUnitary,
    PhotonicState,
    QubitEncoding,
    SplitterSpec,
    __version__,
    apply_conversion_deficit,
    build_parallel_bs,
    cascaded_encoding,
    cz_encoding_on_paths,
    default_config,
    enumerate_fock_basis,
    evolve,
    evolve_bruteforce,
    extract_operator,
    ghz_prepare,
    ideal_cascaded_unitary,
    ideal_cz,
    independent_gates_check,
    inject,
    path_cz_encoding,
    perturb_ratio,
    permanent,
    polarization_cz_encoding,
    post_select,
    process_fidelity,
    reduced_purity,
    run_sweep,
    truth_table,
)
