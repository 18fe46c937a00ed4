"""Daily panel ingestion and the temperature standardization pipeline.

A panel holds daily values for several stations. The pipeline estimates
a smooth seasonal mean and standard deviation per station (a local
linear fit with tricube weights on circular day-of-year distance),
standardizes each observation with the curve values for its calendar
day, collapses the result to ten-day averages, and splits the outcome
into two halves for the homogeneity comparison. Any linear trend is
deliberately left in the data.
"""

from __future__ import annotations

import csv
import datetime
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, MissingDataError, PanelFormatError
from .series import as_series

__all__ = [
    "DailyPanel",
    "SeasonalCurve",
    "DecadePanel",
    "load_panel",
    "seasonal_curve",
    "standardize",
    "decade_average",
    "split_halves",
]

DAYS_IN_CYCLE = 366


def _station_index(station_ids, station) -> int:
    if isinstance(station, (int, np.integer)):
        if not 0 <= int(station) < len(station_ids):
            raise ValueError(f"station index out of range: {station}")
        return int(station)
    try:
        return station_ids.index(str(station))
    except ValueError:
        raise ValueError(f"unknown station {station!r}") from None


@dataclass(frozen=True)
class DailyPanel:
    """Daily values for one or more stations on a gap-free calendar."""

    dates: tuple[datetime.date, ...]
    values: np.ndarray
    station_ids: tuple[str, ...]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise ValueError("panel values must form a days x stations matrix")
        if len(self.dates) != values.shape[0]:
            raise ValueError("date count does not match value rows")
        if len(self.station_ids) != values.shape[1]:
            raise ValueError("station count does not match value columns")
        if len(self.dates) == 0 or values.shape[1] == 0:
            raise ValueError("panel must contain at least one day and one station")
        one_day = datetime.timedelta(days=1)
        for prev, cur in zip(self.dates, self.dates[1:]):
            if cur - prev != one_day:
                raise PanelFormatError(f"non-daily gap between {prev} and {cur}")
        object.__setattr__(self, "dates", tuple(self.dates))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "station_ids", tuple(str(sid) for sid in self.station_ids))

    @property
    def n_days(self) -> int:
        return self.values.shape[0]

    @property
    def n_stations(self) -> int:
        return self.values.shape[1]

    def missing_rows(self) -> np.ndarray:
        """Indices of rows with at least one missing value."""
        return np.nonzero(np.any(np.isnan(self.values), axis=1))[0]

    def require_complete(self) -> None:
        rows = self.missing_rows()
        if rows.size:
            first = rows[0]
            bad = [
                self.station_ids[j]
                for j in np.nonzero(np.isnan(self.values[first]))[0]
            ]
            raise MissingDataError(
                f"{rows.size} day(s) have missing values; first on "
                f"{self.dates[first]} for station(s) {', '.join(bad)}"
            )

    def station_index(self, station) -> int:
        return _station_index(self.station_ids, station)

    def pair(self, a, b) -> np.ndarray:
        """Two-column series for the chosen station pair."""
        cols = [self.station_index(a), self.station_index(b)]
        return self.values[:, cols].copy()

    def day_of_year(self) -> np.ndarray:
        """Calendar day-of-year per row, 1..366 (366 only in leap years)."""
        return np.array([d.timetuple().tm_yday for d in self.dates])

    def to_csv(self) -> str:
        lines = ["date," + ",".join(self.station_ids)]
        for date, row in zip(self.dates, self.values):
            cells = ["" if np.isnan(v) else repr(float(v)) for v in row]
            lines.append(date.isoformat() + "," + ",".join(cells))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SeasonalCurve:
    """Smoothed seasonal mean and standard deviation on 366 day slots."""

    mean: np.ndarray
    sd: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        sd = np.asarray(self.sd, dtype=float)
        if mean.shape != (DAYS_IN_CYCLE,) or sd.shape != (DAYS_IN_CYCLE,):
            raise ValueError(f"curves must have {DAYS_IN_CYCLE} entries")
        if not np.all(np.isfinite(mean)) or not np.all(np.isfinite(sd)):
            raise ValueError("curve values must be finite")
        if np.any(sd <= 0.0):
            raise ValueError("standard deviation curve must be positive")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "sd", sd)

    def to_csv(self) -> str:
        lines = ["day,mean,sd"]
        for day in range(DAYS_IN_CYCLE):
            lines.append(
                f"{day + 1},{float(self.mean[day])!r},{float(self.sd[day])!r}"
            )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DecadePanel:
    """Ten-day block averages per station, in calendar order."""

    block_starts: tuple[datetime.date, ...]
    values: np.ndarray
    station_ids: tuple[str, ...]

    @property
    def n_blocks(self) -> int:
        return self.values.shape[0]

    def station_index(self, station) -> int:
        return _station_index(self.station_ids, station)

    def pair(self, a, b) -> np.ndarray:
        cols = [self.station_index(a), self.station_index(b)]
        return self.values[:, cols].copy()


def load_panel(path, fmt: str = "csv") -> DailyPanel:
    """Read a daily panel from ``date,station1,station2,...`` CSV.

    Dates are ISO formatted, values decimal, missing values are empty
    fields (kept as NaN and reported by ``missing_rows``). A station
    with no values at all is rejected.
    """
    if fmt != "csv":
        raise ValueError(f"unsupported panel format {fmt!r}")
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise PanelFormatError(f"{path}: empty file") from None
        if len(header) < 2 or header[0].strip().lower() != "date":
            raise PanelFormatError(f"{path}: header must be 'date,station1,...'")
        station_ids = [h.strip() for h in header[1:]]
        if any(not sid for sid in station_ids):
            raise PanelFormatError(f"{path}: blank station name in header")
        dates: list[datetime.date] = []
        rows: list[list[float]] = []
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(header):
                raise PanelFormatError(
                    f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}"
                )
            try:
                dates.append(datetime.date.fromisoformat(row[0].strip()))
            except ValueError:
                raise PanelFormatError(f"{path}:{lineno}: bad date {row[0]!r}") from None
            cells = []
            for sid, cell in zip(station_ids, row[1:]):
                cell = cell.strip()
                if not cell:
                    cells.append(np.nan)
                    continue
                try:
                    cells.append(float(cell))
                except ValueError:
                    raise PanelFormatError(
                        f"{path}:{lineno}: bad value {cell!r} for station {sid}"
                    ) from None
            rows.append(cells)
    if not rows:
        raise PanelFormatError(f"{path}: no data rows")
    values = np.array(rows)
    dead = [sid for j, sid in enumerate(station_ids) if np.all(np.isnan(values[:, j]))]
    if dead:
        raise PanelFormatError(f"{path}: station(s) with no data: {', '.join(dead)}")
    try:
        return DailyPanel(dates=tuple(dates), values=values, station_ids=tuple(station_ids))
    except PanelFormatError as exc:
        raise PanelFormatError(f"{path}: {exc}") from None


def _full_years(dates) -> int:
    first, last = dates[0], dates[-1]
    count = 0
    for year in range(first.year, last.year + 1):
        if first <= datetime.date(year, 1, 1) and datetime.date(year, 12, 31) <= last:
            count += 1
    return count


def _circular_local_linear(slot_days: np.ndarray, slot_values: np.ndarray, span: float) -> np.ndarray:
    """Tricube-weighted local linear fit on the 366-day circle.

    ``slot_days`` are 1-based slots carrying data; the fit is evaluated
    at every slot 1..366.
    """
    half_width = span * DAYS_IN_CYCLE / 2.0
    out = np.empty(DAYS_IN_CYCLE)
    for day in range(1, DAYS_IN_CYCLE + 1):
        delta = (slot_days - day + DAYS_IN_CYCLE // 2) % DAYS_IN_CYCLE - DAYS_IN_CYCLE // 2
        dist = np.abs(delta)
        w = np.clip(1.0 - (dist / half_width) ** 3, 0.0, None) ** 3
        inside = w > 0.0
        if np.count_nonzero(inside) < 3:
            raise InsufficientDataError(
                f"fewer than 3 populated day slots within the span around day {day}"
            )
        w = w[inside]
        x = delta[inside].astype(float)
        y = slot_values[inside]
        sw = w.sum()
        sx = np.dot(w, x)
        sxx = np.dot(w, x * x)
        sy = np.dot(w, y)
        sxy = np.dot(w, x * y)
        det = sw * sxx - sx * sx
        if det <= 0.0:
            raise ArithmeticError(f"degenerate local fit at day {day}")
        out[day - 1] = (sxx * sy - sx * sxy) / det
    return out


def seasonal_curve(panel: DailyPanel, station, span: float = 0.3) -> SeasonalCurve:
    """Smoothed seasonal mean and SD for one station.

    Raw per-day-of-year means and standard deviations (across years) are
    smoothed by a circular local linear fit with tricube weights over a
    window of half-width ``span * 366 / 2`` days. Missing observations
    are skipped; a day slot needs at least two values to contribute to
    the SD curve. A slot whose values are exactly constant is rejected,
    since it would certify zero weather variability.
    """
    if not 0.0 < span <= 1.0:
        raise ValueError(f"span must be in (0, 1], got {span}")
    if _full_years(panel.dates) < 2:
        raise InsufficientDataError("need at least 2 full calendar years of data")
    col = panel.values[:, panel.station_index(station)]
    doy = panel.day_of_year()

    mean_days, mean_vals = [], []
    sd_days, sd_vals = [], []
    for day in range(1, DAYS_IN_CYCLE + 1):
        vals = col[doy == day]
        vals = vals[~np.isnan(vals)]
        if vals.size == 0:
            continue
        mean_days.append(day)
        mean_vals.append(vals.mean())
        if vals.size >= 2:
            sd = vals.std(ddof=1)
            if sd == 0.0:
                raise ValueError(f"zero variance on day-of-year {day}")
            sd_days.append(day)
            sd_vals.append(sd)
    if not sd_days:
        raise InsufficientDataError("no day slot has two or more observations")
    mean_curve = _circular_local_linear(np.array(mean_days), np.array(mean_vals), span)
    sd_curve = _circular_local_linear(np.array(sd_days), np.array(sd_vals), span)
    if np.any(sd_curve <= 0.0):
        raise ArithmeticError("smoothed standard deviation dipped below zero")
    return SeasonalCurve(mean=mean_curve, sd=sd_curve)


def standardize(panel: DailyPanel, curves) -> DailyPanel:
    """Standardize every observation with its station's seasonal curve.

    ``curves`` maps station id to ``SeasonalCurve`` (or is a sequence in
    station order). Each value becomes ``(x - mean[doy]) / sd[doy]``.
    The panel must be complete; resolve missing data first.
    """
    panel.require_complete()
    if isinstance(curves, dict):
        missing = [sid for sid in panel.station_ids if sid not in curves]
        if missing:
            raise ValueError(f"no curve for station(s): {', '.join(missing)}")
        curve_list = [curves[sid] for sid in panel.station_ids]
    else:
        curve_list = list(curves)
        if len(curve_list) != panel.n_stations:
            raise ValueError(
                f"expected {panel.n_stations} curves, got {len(curve_list)}"
            )
    doy_idx = panel.day_of_year() - 1
    out = np.empty_like(panel.values)
    for j, curve in enumerate(curve_list):
        out[:, j] = (panel.values[:, j] - curve.mean[doy_idx]) / curve.sd[doy_idx]
    return DailyPanel(dates=panel.dates, values=out, station_ids=panel.station_ids)


def decade_average(panel: DailyPanel, calendar_anchored: bool = True) -> DecadePanel:
    """Collapse a daily panel to non-overlapping ten-day averages.

    Calendar-anchored blocks (default) restart at each January 1, so
    each full year contributes 37 blocks: 36 of ten days and a final
    short block of the remaining 5 or 6 days. With
    ``calendar_anchored=False`` blocks run straight through the
    calendar and a trailing remainder shorter than ten days is dropped.
    """
    panel.require_complete()
    keys: list[tuple[int, int]] | list[int]
    if calendar_anchored:
        keys = [
            (d.year, (d - datetime.date(d.year, 1, 1)).days // 10)
            for d in panel.dates
        ]
    else:
        keys = [i // 10 for i in range(panel.n_days)]

    starts: list[datetime.date] = []
    blocks: list[np.ndarray] = []
    i = 0
    n = panel.n_days
    while i < n:
        j = i
        while j < n and keys[j] == keys[i]:
            j += 1
        if calendar_anchored or j - i == 10:
            starts.append(panel.dates[i])
            blocks.append(panel.values[i:j].mean(axis=0))
        i = j
    if not blocks:
        raise InsufficientDataError("panel too short for any ten-day block")
    return DecadePanel(
        block_starts=tuple(starts),
        values=np.vstack(blocks),
        station_ids=panel.station_ids,
    )


def split_halves(s):
    """Split a series into its first ``ceil(n/2)`` rows and the rest."""
    x = as_series(s)
    n = x.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 rows to split, got {n}")
    cut = (n + 1) // 2
    return x[:cut].copy(), x[cut:].copy()
