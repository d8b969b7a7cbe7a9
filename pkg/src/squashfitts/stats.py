"""Descriptive statistics and closed-form least-squares fitting.

Everything here is exact arithmetic over the inputs (math.fsum for the
accumulations, no iterative solvers). Standard deviations use the
population convention (divide by n): that is the convention under which
the grouped spreads published alongside the bundled dataset are
reproduced, e.g. ids [6.8, 6.8, 7.01] give 0.099 (published as 0.1)
where the n-1 convention would give 0.121.

Degenerate regression designs raise instead of falling back to a
pseudo-inverse, so data problems surface loudly.
"""
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import DerivedTrial, ShotKind
from .errors import DegenerateDesignError, UndefinedCorrelationError, UsageError
from .variants import ModelKind, PointingTrial, model_design_row

#: Relative threshold below which a design's scaled determinant counts as zero.
_RANK_TOL = 1e-12


def mean(values: Iterable[float]) -> float:
    """Arithmetic mean. Empty input is a usage error."""
    vals = [float(v) for v in values]
    if not vals:
        raise UsageError("mean of empty sequence")
    return math.fsum(vals) / len(vals)


def population_sd(values: Iterable[float]) -> float:
    """Population (divide-by-n) standard deviation."""
    vals = [float(v) for v in values]
    if not vals:
        raise UsageError("population_sd of empty sequence")
    m = math.fsum(vals) / len(vals)
    return math.sqrt(math.fsum((v - m) ** 2 for v in vals) / len(vals))


@dataclass(frozen=True)
class GroupKey:
    """Identifies a statistics group; an absent field is marginalized over."""

    person_id: int | None = None
    shot: ShotKind | None = None

    def __post_init__(self):
        if self.person_id is None and self.shot is None:
            raise UsageError("GroupKey needs at least one of person_id, shot")

    def __str__(self) -> str:
        parts = []
        if self.person_id is not None:
            parts.append(f"person {self.person_id}")
        if self.shot is not None:
            parts.append(str(self.shot))
        return " / ".join(parts)


@dataclass(frozen=True)
class GroupStats:
    """Mean/SD aggregates of one group of derived trials."""

    key: GroupKey
    n: int
    mean_id: float
    sd_id: float
    mean_mt: float
    sd_mt: float
    mean_ir: float


@dataclass(frozen=True)
class LinearFit:
    """Slope/intercept of a single-predictor least-squares line plus
    goodness of fit. r_squared equals pearson_r**2 by construction."""

    slope: float
    intercept: float
    pearson_r: float
    r_squared: float
    n: int

    def predict(self, x: float) -> float:
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class WelfordFit:
    """Intercept and two slopes of the two-predictor movement-time model."""

    a: float
    b1: float
    b2: float
    r_squared: float
    n: int

    def predict(self, x1: float, x2: float) -> float:
        return self.a + self.b1 * x1 + self.b2 * x2


_SHOT_ORDER = {kind: i for i, kind in enumerate(ShotKind)}


def group_stats(trials: Sequence[DerivedTrial], level: str = "person_shot",
                ) -> list[GroupStats]:
    """Aggregate derived trials at person-by-shot or shot-only level.

    Output is ordered by person id then shot declaration order; each
    non-empty group yields one entry.
    """
    trials = list(trials)
    if not trials:
        raise UsageError("group_stats of empty trial sequence")
    if level not in ("person_shot", "shot"):
        raise UsageError(f"unknown grouping level {level!r} "
                         "(expected 'person_shot' or 'shot')")

    groups: dict[GroupKey, list[DerivedTrial]] = {}
    for t in trials:
        key = (GroupKey(person_id=t.person_id, shot=t.shot)
               if level == "person_shot" else GroupKey(shot=t.shot))
        groups.setdefault(key, []).append(t)

    def order(key: GroupKey):
        return (key.person_id if key.person_id is not None else 0,
                _SHOT_ORDER[key.shot])

    out = []
    for key in sorted(groups, key=order):
        members = groups[key]
        ids = [t.id_bits for t in members]
        mts = [t.movement_time_s for t in members]
        irs = [t.info_rate_bps for t in members]
        out.append(GroupStats(key=key, n=len(members),
                              mean_id=mean(ids), sd_id=population_sd(ids),
                              mean_mt=mean(mts), sd_mt=population_sd(mts),
                              mean_ir=mean(irs)))
    return out


def ols_simple(points: Sequence[tuple[float, float]]) -> LinearFit:
    """Least-squares line through (x, y) points.

    slope = cov(x, y) / var(x); exact on noiseless linear data. Requires
    two or more points with at least two distinct x values.
    """
    pts = [(float(x), float(y)) for x, y in points]
    n = len(pts)
    if n < 2:
        raise UsageError(f"ols_simple needs >= 2 points, got {n}")
    xbar = math.fsum(x for x, _ in pts) / n
    ybar = math.fsum(y for _, y in pts) / n
    sxx = math.fsum((x - xbar) ** 2 for x, _ in pts)
    syy = math.fsum((y - ybar) ** 2 for _, y in pts)
    sxy = math.fsum((x - xbar) * (y - ybar) for x, y in pts)
    if sxx == 0.0:
        raise DegenerateDesignError(
            f"all {n} predictor values equal {pts[0][0]!r}; no line is determined")
    slope = sxy / sxx
    intercept = ybar - slope * xbar
    if syy == 0.0:
        # flat response: the line fits perfectly but carries no association
        r = 0.0
    else:
        r = sxy / math.sqrt(sxx * syy)
        r = max(-1.0, min(1.0, r))
    return LinearFit(slope=slope, intercept=intercept,
                     pearson_r=r, r_squared=r * r, n=n)


def pearson_r(points: Sequence[tuple[float, float]]) -> float:
    """Product-moment correlation of (x, y) points, in [-1, 1]."""
    pts = [(float(x), float(y)) for x, y in points]
    n = len(pts)
    if n < 2:
        raise UsageError(f"pearson_r needs >= 2 points, got {n}")
    xbar = math.fsum(x for x, _ in pts) / n
    ybar = math.fsum(y for _, y in pts) / n
    sxx = math.fsum((x - xbar) ** 2 for x, _ in pts)
    syy = math.fsum((y - ybar) ** 2 for _, y in pts)
    if sxx == 0.0 or syy == 0.0:
        which = "x" if sxx == 0.0 else "y"
        raise UndefinedCorrelationError(f"correlation undefined: {which} is constant")
    sxy = math.fsum((x - xbar) * (y - ybar) for x, y in pts)
    return max(-1.0, min(1.0, sxy / math.sqrt(sxx * syy)))


def ols_two_predictor(rows: Sequence[tuple[float, float, float]]) -> WelfordFit:
    """Least-squares fit of y = a + b1*x1 + b2*x2.

    Solved through the centered normal equations (a 2x2 system after
    eliminating the intercept), which is closed-form and well conditioned
    at this problem size. Rank deficiency raises naming the collinear
    columns.
    """
    data = [(float(x1), float(x2), float(y)) for x1, x2, y in rows]
    n = len(data)
    if n < 3:
        raise UsageError(f"ols_two_predictor needs >= 3 rows, got {n}")
    x1bar = math.fsum(r[0] for r in data) / n
    x2bar = math.fsum(r[1] for r in data) / n
    ybar = math.fsum(r[2] for r in data) / n
    s11 = math.fsum((r[0] - x1bar) ** 2 for r in data)
    s22 = math.fsum((r[1] - x2bar) ** 2 for r in data)
    s12 = math.fsum((r[0] - x1bar) * (r[1] - x2bar) for r in data)
    s1y = math.fsum((r[0] - x1bar) * (r[2] - ybar) for r in data)
    s2y = math.fsum((r[1] - x2bar) * (r[2] - ybar) for r in data)

    if s11 == 0.0 and s22 == 0.0:
        raise DegenerateDesignError(
            "both predictors are constant (collinear with the intercept column)")
    if s11 == 0.0:
        raise DegenerateDesignError(
            "predictor x1 is constant (collinear with the intercept column)")
    if s22 == 0.0:
        raise DegenerateDesignError(
            "predictor x2 is constant (collinear with the intercept column)")
    det = s11 * s22 - s12 * s12
    if det <= _RANK_TOL * s11 * s22:
        raise DegenerateDesignError(
            "predictors x1 and x2 are collinear; the design is rank deficient")

    b1 = (s1y * s22 - s2y * s12) / det
    b2 = (s2y * s11 - s1y * s12) / det
    a = ybar - b1 * x1bar - b2 * x2bar

    sst = math.fsum((r[2] - ybar) ** 2 for r in data)
    sse = math.fsum((r[2] - (a + b1 * r[0] + b2 * r[1])) ** 2 for r in data)
    r_squared = 0.0 if sst == 0.0 else max(0.0, min(1.0, 1.0 - sse / sst))
    return WelfordFit(a=a, b1=b1, b2=b2, r_squared=r_squared, n=n)


def fit_model(kind: ModelKind, dataset) -> LinearFit | WelfordFit:
    """Fit the chosen model's movement-time regression to a dataset.

    The squash model takes a sequence of :class:`DerivedTrial`; the
    pointing-task models take :class:`PointingTrial`. Dispatches to
    :func:`ols_simple` or :func:`ols_two_predictor` through the model's
    design rows.
    """
    kind = ModelKind.parse(kind)
    trials = list(dataset)
    if not trials:
        raise UsageError(f"cannot fit model {kind} to an empty dataset")
    expected = DerivedTrial if kind is ModelKind.SQUASH_ID else PointingTrial
    for t in trials:
        if not isinstance(t, expected):
            raise UsageError(f"model {kind} requires {expected.__name__} data, "
                             f"got {type(t).__name__}")
    designs = [model_design_row(kind, t) for t in trials]
    mts = [t.movement_time_s for t in trials]
    if kind is ModelKind.WELFORD:
        return ols_two_predictor([(d[0], d[1], mt) for d, mt in zip(designs, mts)])
    return ols_simple([(d[0], mt) for d, mt in zip(designs, mts)])
