"""Dataset schema, CSV parsing/serialization, and the bundled reference data.

CSV schema (exact header, period decimal separator, no locale handling):

    person,shot,trial,db_cm,t_s,dp_cm,mt_s[,v_mps,id_bits,ir_bps]

The first seven columns are authoritative: identifiers plus the four raw
measurements (ball distance cm, ball time s, player distance cm, movement
time s). The optional derived columns are ignored on input and recomputed
by the analysis: trusting file-supplied derived values would propagate
whatever rounding they were written with.

Parsing is total: malformed input produces structured errors with row and
column coordinates, never an exception. Row numbers are 1-based file lines
(the header is line 1). A dataset that parsed with any errors must not be
analyzed; warnings never block.
"""
import csv
import io
import math
from dataclasses import dataclass, field
from importlib import resources

from .core import (CourtGeometry, DEFAULT_COURT, ShotKind, TrialRecord,
                   derive_trial, validate_against_court)
from .errors import DomainError, UsageError

REQUIRED_COLUMNS = ("person", "shot", "trial", "db_cm", "t_s", "dp_cm", "mt_s")
DERIVED_COLUMNS = ("v_mps", "id_bits", "ir_bps")

#: Fixed number of decimals used when serializing derived columns.
DERIVED_DECIMALS = 6

_BUNDLED_RESOURCE = "squash_trials.csv"


@dataclass(frozen=True)
class Dataset:
    """An immutable collection of trials plus free-form provenance notes."""

    trials: tuple[TrialRecord, ...]
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "trials", tuple(self.trials))
        seen = {}
        for t in self.trials:
            if t.key in seen:
                raise UsageError(f"duplicate trial key {t.key}")
            seen[t.key] = t

    def __len__(self) -> int:
        return len(self.trials)


@dataclass
class ValidationReport:
    """Structured outcome of parsing/validating a dataset."""

    errors: list[tuple[int, str, str]] = field(default_factory=list)
    warnings: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def format_text(self) -> str:
        lines = [f"{len(self.errors)} error(s), {len(self.warnings)} warning(s)"]
        for row, col, msg in self.errors:
            lines.append(f"  error: row {row}, column {col!r}: {msg}")
        for row, msg in self.warnings:
            lines.append(f"  warning: row {row}: {msg}")
        return "\n".join(lines)


def _parse_positive_int(cell: str, column: str, row: int, errors) -> int | None:
    try:
        value = int(cell.strip())
    except ValueError:
        errors.append((row, column, f"expected an integer, got {cell!r}"))
        return None
    if value < 1:
        errors.append((row, column, f"expected a positive integer, got {value}"))
        return None
    return value


def _parse_positive_float(cell: str, column: str, row: int, errors) -> float | None:
    try:
        value = float(cell.strip())
    except ValueError:
        errors.append((row, column, f"expected a number, got {cell!r}"))
        return None
    if not math.isfinite(value):
        errors.append((row, column, f"expected a finite number, got {cell!r}"))
        return None
    if value <= 0.0:
        errors.append((row, column, f"measurements must be > 0, got {value!r}"))
        return None
    return value


def parse_csv(text: str, metadata: dict[str, str] | None = None,
              geometry: CourtGeometry = DEFAULT_COURT,
              ) -> tuple[Dataset, ValidationReport]:
    """Parse CSV text into a Dataset plus a ValidationReport.

    Returns every successfully parsed trial even when other rows fail;
    callers gate analysis on ``report.ok``. Plausibility warnings (court
    reach, speed band, non-positive difficulty) are attached per row.
    """
    report = ValidationReport()
    rows = list(csv.reader(io.StringIO(text)))
    while rows and not any(cell.strip() for cell in rows[-1]):
        rows.pop()
    if not rows:
        report.errors.append((0, "header", "no header: input is empty"))
        return Dataset(trials=()), report

    header = [cell.strip() for cell in rows[0]]
    ncols = len(header)
    header_ok = True
    if tuple(header[:len(REQUIRED_COLUMNS)]) != REQUIRED_COLUMNS:
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        for col in missing:
            report.errors.append((1, col, "missing required column"))
        unexpected = [c for c in header if c not in REQUIRED_COLUMNS + DERIVED_COLUMNS]
        for col in unexpected:
            report.errors.append((1, col, "unexpected column"))
        if not missing and not unexpected:
            report.errors.append(
                (1, "header", f"columns out of order: expected "
                              f"{','.join(REQUIRED_COLUMNS)} first, got {','.join(header)}"))
        header_ok = False
    else:
        for col in header[len(REQUIRED_COLUMNS):]:
            if col not in DERIVED_COLUMNS:
                report.errors.append((1, col, "unexpected column"))
                header_ok = False
    if not header_ok:
        return Dataset(trials=()), report

    trials: list[TrialRecord] = []
    seen: dict[tuple, int] = {}
    for idx, cells in enumerate(rows[1:], start=2):
        if not any(cell.strip() for cell in cells):
            continue
        if len(cells) != ncols:
            report.errors.append(
                (idx, "row", f"expected {ncols} cells, got {len(cells)}"))
            continue
        errs_before = len(report.errors)
        person = _parse_positive_int(cells[0], "person", idx, report.errors)
        try:
            shot = ShotKind.parse(cells[1])
        except DomainError as exc:
            report.errors.append((idx, "shot", str(exc)))
            shot = None
        trial = _parse_positive_int(cells[2], "trial", idx, report.errors)
        db = _parse_positive_float(cells[3], "db_cm", idx, report.errors)
        t = _parse_positive_float(cells[4], "t_s", idx, report.errors)
        dp = _parse_positive_float(cells[5], "dp_cm", idx, report.errors)
        mt = _parse_positive_float(cells[6], "mt_s", idx, report.errors)
        # cells beyond the raw seven are derived columns: ignored on input
        if len(report.errors) > errs_before:
            continue
        key = (person, shot, trial)
        if key in seen:
            report.errors.append(
                (idx, "trial", f"duplicate trial key {(person, str(shot), trial)} "
                               f"first seen at row {seen[key]}"))
            continue
        seen[key] = idx
        record = TrialRecord(person_id=person, shot=shot, trial_index=trial,
                             ball_distance_cm=db, ball_time_s=t,
                             player_distance_cm=dp, movement_time_s=mt)
        for warning in validate_against_court(record, geometry):
            report.warnings.append((idx, warning))
        trials.append(record)

    return Dataset(trials=tuple(trials), metadata=dict(metadata or {})), report


def _format_raw(value: float) -> str:
    """Shortest decimal string that parses back to the identical float."""
    s = repr(float(value))
    return s[:-2] if s.endswith(".0") else s


def write_csv(dataset: Dataset, include_derived: bool = False) -> str:
    """Serialize a dataset; parse_csv(write_csv(d)) reproduces d's trials
    bit-exactly. Derived columns, when requested, are recomputed at full
    precision and written with 6 decimals."""
    if not dataset.trials:
        raise UsageError("write_csv of empty dataset")
    header = REQUIRED_COLUMNS + (DERIVED_COLUMNS if include_derived else ())
    lines = [",".join(header)]
    for record in dataset.trials:
        cells = [str(record.person_id), str(record.shot), str(record.trial_index),
                 _format_raw(record.ball_distance_cm), _format_raw(record.ball_time_s),
                 _format_raw(record.player_distance_cm),
                 _format_raw(record.movement_time_s)]
        if include_derived:
            d = derive_trial(record)
            cells += [f"{d.ball_speed_mps:.{DERIVED_DECIMALS}f}",
                      f"{d.id_bits:.{DERIVED_DECIMALS}f}",
                      f"{d.info_rate_bps:.{DERIVED_DECIMALS}f}"]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def bundled_text() -> str:
    """Raw text of the bundled reference CSV (verbatim transcription of
    the published squash retrieval table, including its printed derived
    columns)."""
    return (resources.files("squashfitts.data")
            .joinpath(_BUNDLED_RESOURCE).read_text(encoding="utf-8"))


def bundled_dataset() -> Dataset:
    """The bundled reference dataset: 3 persons x 4 shots x 3 trials."""
    dataset, report = parse_csv(bundled_text(), metadata={
        "source": "bundled squash shot-retrieval reference table",
        "units": "lengths in cm, durations in s",
        "slowdown_factor": "10",
        "derived_columns": "as published; ignored on input and recomputed",
    })
    if not report.ok:  # packaged data is validated by the test suite
        raise RuntimeError(f"bundled dataset failed to parse:\n{report.format_text()}")
    return dataset
