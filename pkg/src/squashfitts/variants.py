"""Aimed-movement difficulty models with an explicit closed form.

Five models are implemented, each usable both as a difficulty calculator
and as the design row of a movement-time regression:

    squash      ID = log2(v * D)            (this package's core metric)
    fitts       ID = log2(2A / W)           (classic reciprocal tapping)
    mackenzie   ID = log2(2A / W + 1)       (non-negative variant)
    welford     MT = a + b1*log2(A) + b2*log2(1/W)
    steering    MT = a + b * (A / W)        (trajectory tasks)

The mackenzie form is kept exactly as published alongside the reference
dataset, with 2A/W + 1 inside the logarithm; the more common A/W + 1
convention is deliberately not substituted (see README).

Many other published extensions (multiple-target, multi-directional,
discrete, compound, model-based, expanding-target, time-constrained,
bivariate, cognitive, 3D) have no single agreed closed form and are
catalogued in the README only.
"""
import math
from dataclasses import dataclass
from enum import Enum

from .core import DerivedTrial
from .errors import DomainError, UsageError


@dataclass(frozen=True)
class PointingTrial:
    """One pointing-task observation: target distance A, width W, and MT."""

    amplitude: float
    width: float
    movement_time_s: float

    def __post_init__(self):
        if not math.isfinite(self.amplitude) or self.amplitude < 0:
            raise DomainError(f"amplitude must be >= 0, got {self.amplitude!r}",
                              field="amplitude")
        if not math.isfinite(self.width) or self.width <= 0:
            raise DomainError(f"width must be > 0, got {self.width!r}", field="width")
        if not math.isfinite(self.movement_time_s) or self.movement_time_s <= 0:
            raise DomainError(f"movement_time_s must be > 0, got "
                              f"{self.movement_time_s!r}", field="movement_time_s")


class ModelKind(Enum):
    """Which difficulty/movement-time model to use. Values are the
    case-insensitive names accepted on the command line."""

    SQUASH_ID = "squash"
    FITTS_ORIGINAL = "fitts"
    MACKENZIE_SHANNON = "mackenzie"
    WELFORD = "welford"
    STEERING = "steering"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, name: str) -> "ModelKind":
        if isinstance(name, ModelKind):
            return name
        cleaned = str(name).strip().lower()
        for kind in cls:
            if kind.value == cleaned:
                return kind
        valid = ", ".join(k.value for k in cls)
        raise UsageError(f"unknown model {name!r} (valid models: {valid})")


@dataclass(frozen=True)
class FittsReference:
    """Benchmark throughput of the classic reciprocal tapping experiment,
    kept as a named constant for report annotations only."""

    mean_throughput_bps: float = 10.10
    sd_throughput_bps: float = 1.33


FITTS_REFERENCE = FittsReference()


def id_fitts_original(amplitude: float, width: float) -> float:
    """Classic difficulty log2(2A/W). Goes negative exactly when 2A < W."""
    if not amplitude > 0:
        raise DomainError(f"amplitude must be > 0, got {amplitude!r}", field="amplitude")
    if not width > 0:
        raise DomainError(f"width must be > 0, got {width!r}", field="width")
    return math.log2(2.0 * amplitude / width)


def id_mackenzie(amplitude: float, width: float) -> float:
    """Shannon-style difficulty log2(2A/W + 1); non-negative for A >= 0."""
    if not amplitude >= 0:
        raise DomainError(f"amplitude must be >= 0, got {amplitude!r}", field="amplitude")
    if not width > 0:
        raise DomainError(f"width must be > 0, got {width!r}", field="width")
    return math.log2(2.0 * amplitude / width + 1.0)


def predict_mt_welford(a: float, b1: float, b2: float,
                       amplitude: float, width: float) -> float:
    """Two-coefficient movement-time prediction a + b1*log2(A) + b2*log2(1/W)."""
    if not amplitude > 0:
        raise DomainError(f"amplitude must be > 0, got {amplitude!r}", field="amplitude")
    if not width > 0:
        raise DomainError(f"width must be > 0, got {width!r}", field="width")
    return a + b1 * math.log2(amplitude) + b2 * math.log2(1.0 / width)


def predict_mt_steering(a: float, b: float, amplitude: float, width: float) -> float:
    """Steering-law movement-time prediction a + b*(A/W)."""
    if not width > 0:
        raise DomainError(f"width must be > 0, got {width!r}", field="width")
    return a + b * (amplitude / width)


def model_design_row(kind: ModelKind, trial) -> list[float]:
    """Predictor vector whose linear combination plus an intercept
    predicts movement time under the given model.

    The squash model consumes :class:`DerivedTrial`; all others consume
    :class:`PointingTrial`. One predictor each, except welford (two).
    """
    kind = ModelKind.parse(kind)
    if kind is ModelKind.SQUASH_ID:
        if not isinstance(trial, DerivedTrial):
            raise UsageError(f"model {kind} requires DerivedTrial, got "
                             f"{type(trial).__name__}")
        return [trial.id_bits]
    if not isinstance(trial, PointingTrial):
        raise UsageError(f"model {kind} requires PointingTrial, got "
                         f"{type(trial).__name__}")
    if kind is ModelKind.FITTS_ORIGINAL:
        return [id_fitts_original(trial.amplitude, trial.width)]
    if kind is ModelKind.MACKENZIE_SHANNON:
        return [id_mackenzie(trial.amplitude, trial.width)]
    if kind is ModelKind.STEERING:
        return [trial.amplitude / trial.width]
    # welford: separate log-amplitude and log-inverse-width predictors
    if not trial.amplitude > 0:
        raise DomainError("welford model requires amplitude > 0", field="amplitude")
    return [math.log2(trial.amplitude), math.log2(1.0 / trial.width)]
