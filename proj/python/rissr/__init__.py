"""Python access to the RIS-assisted sense-then-offload simulator."""

from ._rissr import (
    ChannelSet,
    DivisionByZero,
    EmptyInput,
    Error,
    NegativeBudget,
    NonConvergence,
    ParseError,
    RankDeficient,
    SingularMatrix,
    SystemConfig,
    ValidationError,
    ZeroDistance,
    energy_split,
    local_frequency,
    mean_std,
    run_experiment,
    run_scheme,
    sample_channels,
    scheme_names,
    sensed_bits,
    summarize,
    summary_columns,
    transmit_power,
)

__all__ = [name for name in dir() if not name.startswith("_")]
