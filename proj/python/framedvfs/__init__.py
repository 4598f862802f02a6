"""Discrete-event simulator for reservation-based global scheduling on
frame-based multiprocessor DVFS systems.

The heavy lifting lives in the compiled extension; this package just
re-exports it.
"""

from ._core import (  # noqa: F401
    ConfigError,
    DistShape,
    FrameTrace,
    FreqTable,
    GenerationError,
    InfeasibleFrequencyError,
    LivenessError,
    OracleRefusal,
    Partition,
    PartitionError,
    PartitionResult,
    PolicyId,
    Simulation,
    Summary,
    SystemConfig,
    Task,
    TraceEvent,
    WorkloadSpec,
    brute_force_expected_energy,
    brute_force_min_makespan,
    ceil_freq,
    compute_freq_tables,
    config_to_json,
    energy_of_execution,
    generate,
    load_config_file,
    parse_config,
    parse_policy,
    policy_name,
    save_config_file,
    static_partition,
    trace_to_csv,
    validate_config,
)

__version__ = "0.1.0"
