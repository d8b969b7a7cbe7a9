"""Domain types and per-trial derivations for squash shot retrieval.

A trial records how far and how long the ball travelled (to get its speed)
and how far and how long the retrieving player moved. From those four
measurements we derive:

    ball speed      v  = (ball distance / 100) / ball time        [m/s]
    task difficulty ID = log2(v * player distance in meters)      [bits]
    information rate IR = ID / movement time                      [bits/s]

Raw lengths are stored in centimeters (matching how such tables are
usually published); conversion to meters happens only inside the
derivations and is exact (/100). ID and IR only come out in the expected
range when v is in m/s and the player distance is in meters, so those are
the canonical units throughout.
"""
import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

#: Speeds outside this band (m/s) are flagged as implausible for squash.
PLAUSIBLE_SPEED_BAND_MPS = (1.0, 100.0)

#: Default factor by which slow-motion footage stretches observed time.
DEFAULT_SLOWDOWN_FACTOR = 10.0


class ShotKind(Enum):
    """The four shot types present in the reference experiment.

    Declaration order is the canonical presentation order for grouped
    output (drives, drops, lobs, boasts).
    """

    DRIVE = "Drive"
    DROP = "Drop"
    LOB = "Lob"
    BOAST = "Boast"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, label: str) -> "ShotKind":
        """Parse a shot label, case-insensitively. Anything other than
        drive/drop/lob/boast is an error."""
        if isinstance(label, ShotKind):
            return label
        cleaned = str(label).strip().lower()
        for kind in cls:
            if kind.value.lower() == cleaned:
                return kind
        valid = ", ".join(k.value for k in cls)
        raise DomainError(f"unknown shot label {label!r} (expected one of: {valid})",
                          field="shot")


def _require_positive(value: float, name: str) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a number, got {value!r}", field=name) from None
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be > 0, got {value!r}", field=name)
    return value


def _require_positive_int(value: int, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {value!r}", field=name)
    if value < 1:
        raise DomainError(f"{name} must be >= 1, got {value!r}", field=name)
    return value


@dataclass(frozen=True)
class TrialRecord:
    """One raw trial: identifiers plus the four measured quantities."""

    person_id: int
    shot: ShotKind
    trial_index: int
    ball_distance_cm: float
    ball_time_s: float
    player_distance_cm: float
    movement_time_s: float

    def __post_init__(self):
        _require_positive_int(self.person_id, "person_id")
        if not isinstance(self.shot, ShotKind):
            object.__setattr__(self, "shot", ShotKind.parse(self.shot))
        _require_positive_int(self.trial_index, "trial_index")
        for name in ("ball_distance_cm", "ball_time_s",
                     "player_distance_cm", "movement_time_s"):
            object.__setattr__(self, name, _require_positive(getattr(self, name), name))

    @property
    def key(self) -> tuple[int, "ShotKind", int]:
        """(person_id, shot, trial_index), unique within a dataset."""
        return (self.person_id, self.shot, self.trial_index)


@dataclass(frozen=True)
class DerivedTrial:
    """A trial enriched with ball speed, difficulty and information rate."""

    base: TrialRecord
    ball_speed_mps: float
    id_bits: float
    info_rate_bps: float

    # passthroughs so downstream code reads naturally
    @property
    def person_id(self) -> int:
        return self.base.person_id

    @property
    def shot(self) -> ShotKind:
        return self.base.shot

    @property
    def trial_index(self) -> int:
        return self.base.trial_index

    @property
    def movement_time_s(self) -> float:
        return self.base.movement_time_s


@dataclass(frozen=True)
class CourtGeometry:
    """Court dimensions as seen from the central T position (meters).

    Defaults are the standard court: 5.55 m to the front wall, 4.2 m to
    the back wall, 3.2 m to each side wall.
    """

    t_to_front_m: float = 5.55
    t_to_back_m: float = 4.2
    t_to_side_m: float = 3.2

    def __post_init__(self):
        for name in ("t_to_front_m", "t_to_back_m", "t_to_side_m"):
            _require_positive(getattr(self, name), name)

    @property
    def max_player_reach_m(self) -> float:
        """Distance from the T to the farthest (front) corner."""
        return math.hypot(self.t_to_front_m, self.t_to_side_m)


DEFAULT_COURT = CourtGeometry()


def ball_speed(ball_distance_cm: float, ball_time_s: float) -> float:
    """Ball speed in m/s from distance travelled (cm) and elapsed time (s).

    Average speed over the flight is taken as the speed of the shot.
    """
    d = _require_positive(ball_distance_cm, "ball_distance_cm")
    t = _require_positive(ball_time_s, "ball_time_s")
    return (d / 100.0) / t


def real_time_from_slowmo(observed_time_s: float,
                          slowdown_factor: float = DEFAULT_SLOWDOWN_FACTOR) -> float:
    """Convert a duration read off slowed-down footage back to real time."""
    t = _require_positive(observed_time_s, "observed_time_s")
    f = _require_positive(slowdown_factor, "slowdown_factor")
    return t / f


def index_of_difficulty(ball_speed_mps: float, player_distance_m: float) -> float:
    """Difficulty of retrieving a shot, in bits: log2(v * D).

    v is the ball speed in m/s and D the distance the player must cover in
    meters. The product can drop below 1 for very slow, very close shots;
    the logarithm is then negative, which is permitted (callers that care
    flag it, see :func:`validate_against_court`).
    """
    v = _require_positive(ball_speed_mps, "ball_speed_mps")
    d = _require_positive(player_distance_m, "player_distance_m")
    return math.log2(v * d)


def information_rate(id_bits: float, movement_time_s: float) -> float:
    """Information rate (throughput) in bits/s: ID / MT."""
    mt = _require_positive(movement_time_s, "movement_time_s")
    return float(id_bits) / mt


def derive_trial(record: TrialRecord) -> DerivedTrial:
    """Derive speed, difficulty and information rate for one trial.

    Pure and deterministic; raw fields pass through unchanged. Domain
    errors from the component operations are re-raised annotated with the
    trial key.
    """
    try:
        v = ball_speed(record.ball_distance_cm, record.ball_time_s)
        idb = index_of_difficulty(v, record.player_distance_cm / 100.0)
        ir = information_rate(idb, record.movement_time_s)
    except DomainError as exc:
        raise DomainError(
            f"trial (person={record.person_id}, shot={record.shot}, "
            f"trial={record.trial_index}): {exc}", field=exc.field) from exc
    return DerivedTrial(base=record, ball_speed_mps=v, id_bits=idb, info_rate_bps=ir)


def validate_against_court(record: TrialRecord,
                           geometry: CourtGeometry = DEFAULT_COURT,
                           speed_band: tuple[float, float] = PLAUSIBLE_SPEED_BAND_MPS,
                           ) -> list[str]:
    """Plausibility screen for one trial. Returns warnings, never rejects.

    Flags: player distance beyond the farthest court corner, ball speed
    outside the plausible band, and non-positive difficulty (v*D <= 1).
    """
    warnings = []
    reach = geometry.max_player_reach_m
    player_m = record.player_distance_cm / 100.0
    if player_m > reach:
        warnings.append(
            f"player_distance {player_m:.2f} m exceeds court reach {reach:.2f} m")
    v = ball_speed(record.ball_distance_cm, record.ball_time_s)
    lo, hi = speed_band
    if not lo <= v <= hi:
        warnings.append(
            f"ball speed {v:.2f} m/s outside plausible band [{lo:g}, {hi:g}] m/s")
    if v * player_m <= 1.0:
        warnings.append(
            f"v*D = {v * player_m:.4f} <= 1 gives non-positive difficulty "
            f"({math.log2(v * player_m):.4f} bits)")
    return warnings
