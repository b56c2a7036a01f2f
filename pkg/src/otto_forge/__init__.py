"""Exact quantum Otto cycles for small coupled spin-1/2 chains."""

from .cycle import (
    CopReport,
    Cycle,
    CyclePoint,
    CycleReport,
    IdleAdmissibility,
    IdleDecomposition,
    LinearIdentities,
    LocalLedger,
    StageWorks,
    MODE_ACCELERATOR,
    MODE_ENGINE,
    MODE_HEATER,
    MODE_IDLE,
    MODE_REFRIGERATOR,
    classify_mode,
    cop_report,
    effective_temperatures,
    entropy_form_work,
    eta_gamma,
    evaluate_cycle,
    idle_admissibility,
    idle_decomposition,
    jz_star,
    jz_star_closed_form,
    linear_identities,
    local_effective_temperature,
    local_ledger,
    local_work_entropy_form,
    make_cycle,
    run_cycle,
    stage_works,
    work_entropy_form,
    working_symmetric_shift,
)
from .figures import FIGURE_IDS, reproduce_figure
from .models import (
    EigenBasis,
    Family,
    Level,
    Spectrum,
    SpinModel,
    analytic_spectrum,
    brute_force_spectrum,
    build_hamiltonian,
    eigenbasis,
    embed_site_operator,
    heisenberg_xxx,
    ising_chain,
    ising_ksea,
    ksea_eigenbasis,
    level_field_derivative,
    linear_level_coefficients,
)
from .selftest import run_selftest
from .sweep import (
    CSV_HEADER,
    ConfigError,
    SweepConfig,
    SweepRow,
    config_from_mapping,
    evaluate_point,
    load_config,
    render_csv,
    run_sweep,
    single_row,
    sweep_to_csv,
    write_csv,
)
from .thermo import (
    ReducedState,
    ThermalState,
    concurrence,
    gibbs_populations,
    infinite_temperature_state,
    partial_trace,
    partition_function_closed,
    partition_function_direct,
    reduced_pair,
    reduced_state,
    relative_entropy,
    shannon_entropy,
    thermal_density_matrix,
    uniform_populations,
    von_neumann_entropy,
)

__version__ = "0.1.0"
