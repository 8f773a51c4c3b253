"""Exact verification of the classical floor and statistics over run streams.

The floor proof is pure integer arithmetic over the eight instruction sets.
Everything empirical carries Hoeffding confidence radii at a stated failure
probability (default 1e-6).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .core import (
    ALL_SETTING_PAIRS,
    INSTRUCTION_SETS,
    SETTINGS,
    InstructionSet,
    RunRecord,
    SettingPair,
    all_instruction_sets,
    same_color_fraction,
)

__all__ = [
    "ExperimentStats",
    "BoundReport",
    "FeatureIResult",
    "FeatureIIResult",
    "GapReport",
    "ReplayMismatchError",
    "hoeffding_radius",
    "prove_bound",
    "check_feature_i",
    "check_feature_ii",
    "bell_gap_report",
    "induced_instruction_set",
    "stats_to_csv",
    "render_stats_text",
]

DEFAULT_FAILURE_PROBABILITY = 1e-6

CLASSICAL_FLOOR = Fraction(5, 9)


def hoeffding_radius(n: int, failure_probability: float = DEFAULT_FAILURE_PROBABILITY) -> float:
    """Two-sided Hoeffding confidence half-width for a mean of n coin flips."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 < failure_probability < 1:
        raise ValueError("failure_probability must be in (0, 1)")
    return math.sqrt(math.log(2.0 / failure_probability) / (2.0 * n))


class ExperimentStats:
    """Exact per-setting-pair tallies of same/different flashes.

    Merging is associative and commutative, so partial tallies from
    concurrent workers can be combined in any order.
    """

    __slots__ = ("counts",)

    def __init__(self, counts: Optional[dict[SettingPair, list[int]]] = None):
        if counts is None:
            counts = {pair: [0, 0] for pair in ALL_SETTING_PAIRS}
        self.counts = counts

    @classmethod
    def empty(cls) -> "ExperimentStats":
        return cls()

    @classmethod
    def from_records(cls, records: Iterable[RunRecord]) -> "ExperimentStats":
        stats = cls()
        for r in records:
            stats.record(r.settings, r.colors[0] is r.colors[1])
        return stats

    def record(self, pair: SettingPair, same: bool) -> None:
        self.counts[pair][0 if same else 1] += 1

    @property
    def n_runs(self) -> int:
        return sum(a + b for a, b in self.counts.values())

    @property
    def total_same(self) -> int:
        return sum(a for a, _ in self.counts.values())

    @property
    def overall_same(self) -> Fraction:
        """Exact empirical same-color fraction."""
        n = self.n_runs
        if n == 0:
            raise ValueError("no runs recorded")
        return Fraction(self.total_same, n)

    @property
    def overall_same_float(self) -> float:
        return float(self.overall_same)

    @property
    def per_pair_same(self) -> dict[SettingPair, Fraction]:
        """Exact same-color fraction per setting pair (pairs seen at least once)."""
        return {
            pair: Fraction(a, a + b)
            for pair, (a, b) in self.counts.items()
            if a + b > 0
        }

    def equal_setting_counts(self) -> tuple[int, int]:
        """(same, different) totals over the three equal-setting pairs."""
        same = diff = 0
        for s in SETTINGS:
            a, b = self.counts[SettingPair(s, s)]
            same += a
            diff += b
        return same, diff

    def merge(self, other: "ExperimentStats") -> "ExperimentStats":
        merged = {
            pair: [
                self.counts[pair][0] + other.counts[pair][0],
                self.counts[pair][1] + other.counts[pair][1],
            ]
            for pair in ALL_SETTING_PAIRS
        }
        return ExperimentStats(merged)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExperimentStats):
            return NotImplemented
        return self.counts == other.counts

    def to_json_dict(self) -> dict:
        out = {
            "n_runs": self.n_runs,
            "counts": {
                f"{int(p.left)}{int(p.right)}": {"same": a, "different": b}
                for p, (a, b) in self.counts.items()
            },
        }
        if self.n_runs > 0:
            out["overall_same"] = str(self.overall_same)
            out["overall_same_float"] = float(self.overall_same)
        return out


def feature_i_from_stats(stats: ExperimentStats) -> bool:
    """Equal settings never produced different colors."""
    return stats.equal_setting_counts()[1] == 0


@dataclass(frozen=True)
class BoundReport:
    """The eight exact same-color fractions, their minimum and minimizers."""

    per_set_fractions: dict[InstructionSet, Fraction]
    minimum: Fraction
    minimizers: tuple[InstructionSet, ...]

    def to_text(self) -> str:
        lines = ["instruction set   same-color fraction"]
        for iset, frac in self.per_set_fractions.items():
            lines.append(f"  {iset.label}             {frac}")
        lines.append(f"minimum: {self.minimum}")
        lines.append(
            "minimizers: " + ", ".join(i.label for i in self.minimizers)
        )
        lines.append(
            "Each run's expected same-color fraction is a convex mixture of "
            "these eight values, so no per-run choice of instruction set can "
            f"push the long-run fraction below {self.minimum}."
        )
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "per_set": {i.label: str(f) for i, f in self.per_set_fractions.items()},
                "minimum": str(self.minimum),
                "minimizers": [i.label for i in self.minimizers],
            },
            sort_keys=True,
            separators=(",", ":"),
        )


def prove_bound() -> BoundReport:
    """Enumerate all eight instruction sets in exact arithmetic and verify
    the minimum same-color fraction is exactly 5/9.

    A failure here is a build-breaking defect, not a runtime condition.
    """
    fractions = {iset: same_color_fraction(iset) for iset in all_instruction_sets()}
    minimum = min(fractions.values())
    minimizers = tuple(i for i, f in fractions.items() if f == minimum)
    if minimum != CLASSICAL_FLOOR:
        raise RuntimeError(f"floor enumeration produced {minimum}, not 5/9")
    expected_minimizers = tuple(
        i for i in INSTRUCTION_SETS if len(set(i)) > 1
    )
    if minimizers != expected_minimizers:
        raise RuntimeError(f"unexpected minimizers: {minimizers}")
    return BoundReport(fractions, minimum, minimizers)


@dataclass(frozen=True)
class FeatureIResult:
    """Did equal settings always produce equal colors?"""

    holds: bool
    violations: tuple[int, ...]


def check_feature_i(records: Iterable[RunRecord]) -> FeatureIResult:
    violations = tuple(
        r.run_index
        for r in records
        if r.settings.left is r.settings.right and r.colors[0] is not r.colors[1]
    )
    return FeatureIResult(holds=not violations, violations=violations)


@dataclass(frozen=True)
class FeatureIIResult:
    """Is the overall same-color fraction consistent with exactly 1/2?"""

    holds: bool
    observed: Fraction
    tolerance: float
    expected: Fraction = field(default=Fraction(1, 2))


def check_feature_ii(
    stats: ExperimentStats,
    tolerance: Optional[float] = None,
    failure_probability: float = DEFAULT_FAILURE_PROBABILITY,
) -> FeatureIIResult:
    """Tolerance defaults to the Hoeffding radius for the sample size."""
    if tolerance is None:
        tolerance = hoeffding_radius(stats.n_runs, failure_probability)
    elif tolerance <= 0:
        raise ValueError("tolerance must be positive")
    observed = stats.overall_same
    holds = abs(float(observed) - 0.5) <= tolerance
    return FeatureIIResult(holds=holds, observed=observed, tolerance=tolerance)


@dataclass(frozen=True)
class GapReport:
    """Classical floor vs target statistics, with confidence intervals."""

    classical_same: Fraction
    quantum_same: Fraction
    classical_n: int
    quantum_n: int
    classical_radius: float
    quantum_radius: float
    floor: Fraction
    disjoint: bool
    sufficient_power: bool
    failure_probability: float

    @property
    def warning(self) -> Optional[str]:
        if not self.sufficient_power:
            return (
                "insufficient power: confidence radii "
                f"{self.classical_radius:.6f}+{self.quantum_radius:.6f} cover "
                f"the floor-to-half gap {float(self.floor - Fraction(1, 2)):.6f}"
            )
        return None

    @property
    def verdict(self) -> str:
        if self.disjoint:
            return (
                "intervals disjoint: the strategy's statistics and the target "
                "statistics cannot be the same distribution"
            )
        return "intervals overlap: no gap exhibited at this sample size"

    def to_text(self) -> str:
        lines = [
            f"classical: same fraction {float(self.classical_same):.6f} "
            f"+/- {self.classical_radius:.6f}  (n={self.classical_n})",
            f"quantum:   same fraction {float(self.quantum_same):.6f} "
            f"+/- {self.quantum_radius:.6f}  (n={self.quantum_n})",
            f"exact classical floor: {self.floor} = {float(self.floor):.6f}",
            f"verdict: {self.verdict}",
        ]
        if self.warning:
            lines.append(f"warning: {self.warning}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "classical_same": str(self.classical_same),
                "classical_same_float": float(self.classical_same),
                "quantum_same": str(self.quantum_same),
                "quantum_same_float": float(self.quantum_same),
                "classical_n": self.classical_n,
                "quantum_n": self.quantum_n,
                "classical_radius": self.classical_radius,
                "quantum_radius": self.quantum_radius,
                "floor": str(self.floor),
                "disjoint": self.disjoint,
                "sufficient_power": self.sufficient_power,
                "failure_probability": self.failure_probability,
                "verdict": self.verdict,
                "warning": self.warning,
            },
            sort_keys=True,
            separators=(",", ":"),
        )


def bell_gap_report(
    classical_stats: ExperimentStats,
    quantum_stats: ExperimentStats,
    failure_probability: float = DEFAULT_FAILURE_PROBABILITY,
) -> GapReport:
    """Compare a classical strategy's long-run same fraction against the
    target statistics, with Hoeffding intervals at the stated failure
    probability. Underpowered comparisons warn instead of failing."""
    c_n, q_n = classical_stats.n_runs, quantum_stats.n_runs
    c_r = hoeffding_radius(c_n, failure_probability)
    q_r = hoeffding_radius(q_n, failure_probability)
    c, q = classical_stats.overall_same, quantum_stats.overall_same
    disjoint = float(c) - c_r > float(q) + q_r or float(q) - q_r > float(c) + c_r
    sufficient = c_r + q_r < float(CLASSICAL_FLOOR - Fraction(1, 2))
    return GapReport(
        classical_same=c,
        quantum_same=q,
        classical_n=c_n,
        quantum_n=q_n,
        classical_radius=c_r,
        quantum_radius=q_r,
        floor=CLASSICAL_FLOOR,
        disjoint=disjoint,
        sufficient_power=sufficient,
        failure_probability=failure_probability,
    )


class ReplayMismatchError(RuntimeError):
    """A recorded run did not reproduce under replay: a determinism defect."""


def induced_instruction_set(strategy, record: RunRecord, config) -> tuple[InstructionSet, InstructionSet]:
    """Replay a run and read off each wing's instruction set.

    With the transcript fixed (valid because censored emissions cannot
    depend on settings), each wing's flash is a function of its local
    setting alone; evaluating it at all three settings yields that wing's
    instruction set for the run.
    """
    if strategy.requires_censor_off:
        raise ValueError(
            "induced sets are only defined for censor-compliant strategies"
        )
    from .protocol import execute_run_detailed  # analysis stays import-light

    outcome = execute_run_detailed(
        config, strategy, record.settings, record.seed, run_index=record.run_index
    )
    if outcome.record.transcript != record.transcript:
        raise ReplayMismatchError(
            f"run {record.run_index}: replayed transcript differs from record"
        )
    if outcome.record.colors != record.colors:
        raise ReplayMismatchError(
            f"run {record.run_index}: replayed colors differ from record"
        )
    left = InstructionSet(
        *(strategy.flash(outcome.state_left, outcome.inbox_left, s) for s in SETTINGS)
    )
    right = InstructionSet(
        *(strategy.flash(outcome.state_right, outcome.inbox_right, s) for s in SETTINGS)
    )
    return left, right


def stats_to_csv(
    stats: ExperimentStats,
    failure_probability: float = DEFAULT_FAILURE_PROBABILITY,
) -> str:
    """Plot-ready CSV: one row per setting pair."""
    lines = ["left,right,n,same_fraction,confidence_radius"]
    for pair in ALL_SETTING_PAIRS:
        a, b = stats.counts[pair]
        n = a + b
        if n:
            frac = f"{a / n:.6f}"
            radius = f"{hoeffding_radius(n, failure_probability):.6f}"
        else:
            frac = radius = ""
        lines.append(f"{int(pair.left)},{int(pair.right)},{n},{frac},{radius}")
    return "\n".join(lines) + "\n"


def render_stats_text(stats: ExperimentStats) -> str:
    lines = ["pair   runs     same      fraction"]
    for pair in ALL_SETTING_PAIRS:
        a, b = stats.counts[pair]
        n = a + b
        frac = f"{a / n:.6f}" if n else "-"
        lines.append(f"{int(pair.left)},{int(pair.right)}  {n:8d} {a:8d}  {frac:>10}")
    n = stats.n_runs
    if n:
        lines.append(
            f"overall: {stats.total_same}/{n} same = {stats.overall_same} "
            f"= {stats.overall_same_float:.6f}"
        )
    return "\n".join(lines)
