"""Deterministic simulator and verifier for a censored-communication
two-wing flash game.

Two wings receive independent random settings from {1, 2, 3}, may exchange
fixed-size messages under a censor that forbids any setting information,
then each flashes R or G. Classical strategies that always agree on equal
settings cannot push the long-run same-color fraction below 5/9 (proved
here by exact enumeration); the quantum color source sits at exactly 1/2.
This package runs both sides of that gap, replayably and byte-for-byte
deterministically.
"""

from ._version import __version__
from .analysis import (
    BoundReport,
    ExperimentStats,
    GapReport,
    bell_gap_report,
    check_feature_i,
    check_feature_ii,
    hoeffding_radius,
    induced_instruction_set,
    prove_bound,
)
from .censor import (
    CensorVerdict,
    CensorViolation,
    Violation,
    state_transition_guard,
    verify_transcript_invariance,
    vet_emission,
)
from .core import (
    ALL_SETTING_PAIRS,
    EMPTY_TRANSCRIPT,
    INSTRUCTION_SETS,
    SETTINGS,
    Color,
    Fraction,
    InstructionSet,
    Message,
    RunRecord,
    Setting,
    SettingPair,
    Transcript,
    Wing,
    all_instruction_sets,
    same_color_fraction,
    settings_equal_probability,
)
from .protocol import (
    ExperimentAborted,
    ProtocolError,
    RunConfig,
    WingView,
    draw_settings,
    execute_run,
    run_experiment,
)
from .quantum import (
    QUANTUM_ORACLE_ID,
    QuantumJoint,
    quantum_experiment,
    sample_quantum_run,
    singlet_joint,
)
from .randomness import ByteStream, derive_run_seed, mix64
from .strategies import (
    WingStrategy,
    adversarial_strategy_suite,
    build_registry,
    cheat_strategy,
    fixed_instruction_strategy,
    negotiation_strategy,
    validate_strategy,
)

__all__ = [
    "__version__",
    "ALL_SETTING_PAIRS",
    "EMPTY_TRANSCRIPT",
    "INSTRUCTION_SETS",
    "QUANTUM_ORACLE_ID",
    "SETTINGS",
    "BoundReport",
    "ByteStream",
    "CensorVerdict",
    "CensorViolation",
    "Color",
    "ExperimentAborted",
    "ExperimentStats",
    "Fraction",
    "GapReport",
    "InstructionSet",
    "Message",
    "ProtocolError",
    "QuantumJoint",
    "RunConfig",
    "RunRecord",
    "Setting",
    "SettingPair",
    "Transcript",
    "Violation",
    "Wing",
    "WingStrategy",
    "WingView",
    "adversarial_strategy_suite",
    "all_instruction_sets",
    "bell_gap_report",
    "build_registry",
    "cheat_strategy",
    "check_feature_i",
    "check_feature_ii",
    "derive_run_seed",
    "draw_settings",
    "execute_run",
    "fixed_instruction_strategy",
    "hoeffding_radius",
    "induced_instruction_set",
    "mix64",
    "negotiation_strategy",
    "prove_bound",
    "quantum_experiment",
    "run_experiment",
    "same_color_fraction",
    "sample_quantum_run",
    "settings_equal_probability",
    "singlet_joint",
    "state_transition_guard",
    "validate_strategy",
    "verify_transcript_invariance",
    "vet_emission",
]
