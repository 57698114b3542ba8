"""Counting series, sample grids and their CSV/JSON file form.

A series is written as a ``B,N`` CSV plus a JSON sidecar next to it
(``<csv>.json``) carrying the family and raising descriptors.
"""

from __future__ import annotations

import csv
import io
import math
from datetime import datetime
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from stackcount.errors import CountingError


class CountSample(BaseModel):
    """One (B, N(B)) pair."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    b: float = Field(ge=0)
    n: int = Field(ge=0)


class SeriesMeta(BaseModel):
    """Provenance of a generated series."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    generated_at: datetime
    version: str


class CountSeries(BaseModel):
    """Exact counts N(B) of a family at increasing bounds.

    Attributes:
        family: Stack descriptor of the counted family (e.g. "mu(3)")
        raising: Raising function as table text
        samples: (B, N) pairs with B strictly increasing
        meta: Optional provenance, omitted with --no-meta
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    family: str
    raising: str
    samples: list[CountSample]
    meta: SeriesMeta | None = None

    @model_validator(mode="after")
    def validate_monotone(self) -> CountSeries:
        """B strictly increasing, N nondecreasing."""
        for prev, cur in zip(self.samples, self.samples[1:], strict=False):
            if cur.b <= prev.b:
                msg = f"sample bounds must increase, got {prev.b} then {cur.b}"
                raise ValueError(msg)
            if cur.n < prev.n:
                msg = f"counts must be nondecreasing, got N({prev.b})={prev.n} > N({cur.b})={cur.n}"
                raise ValueError(msg)
        return self

    @property
    def bounds(self) -> list[float]:
        return [s.b for s in self.samples]

    @property
    def counts(self) -> list[int]:
        return [s.n for s in self.samples]

    def count_at(self, bound: float) -> int:
        """N at an exact sample bound.

        Raises:
            KeyError: If bound is not a sample.
        """
        for sample in self.samples:
            if sample.b == bound:
                return sample.n
        raise KeyError(bound)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["B", "N"])
        for sample in self.samples:
            writer.writerow([format_bound(sample.b), sample.n])
        return buffer.getvalue()

    def sidecar(self) -> SeriesSidecar:
        return SeriesSidecar(
            family=self.family,
            raising=self.raising,
            samples=len(self.samples),
            meta=self.meta,
        )


class SeriesSidecar(BaseModel):
    """JSON sidecar of a series CSV."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    family: str
    raising: str
    samples: int = Field(ge=0)
    meta: SeriesMeta | None = None


def format_bound(bound: float) -> str:
    """Integral bounds print without a decimal point."""
    if math.isfinite(bound) and bound == int(bound):
        return str(int(bound))
    return repr(bound)


def sidecar_path(csv_path: Path) -> Path:
    return csv_path.with_name(csv_path.name + ".json")


def write_series(series: CountSeries, csv_path: Path) -> Path:
    """Write the CSV and its sidecar; returns the sidecar path."""
    csv_path.write_text(series.to_csv(), encoding="utf-8")
    side = sidecar_path(csv_path)
    side.write_text(series.sidecar().model_dump_json(indent=2) + "\n", encoding="utf-8")
    return side


def read_series(csv_path: Path) -> CountSeries:
    """Read a ``B,N`` CSV, taking descriptors from its sidecar when present.

    Raises:
        CountingError: If the file cannot be read or does not parse.
    """
    try:
        text = csv_path.read_text(encoding="utf-8")
    except OSError as e:
        msg = f"Cannot read series file: {e}"
        raise CountingError(msg) from e

    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [cell.strip() for cell in rows[0]] != ["B", "N"]:
        msg = f"{csv_path} does not start with a B,N header"
        raise CountingError(msg)

    family, raising, meta = "unknown", "unknown", None
    side = sidecar_path(csv_path)
    if side.exists():
        try:
            sidecar = SeriesSidecar.model_validate_json(side.read_text(encoding="utf-8"))
        except (OSError, ValidationError) as e:
            msg = f"Cannot read series sidecar {side}: {e}"
            raise CountingError(msg) from e
        family, raising, meta = sidecar.family, sidecar.raising, sidecar.meta

    samples: list[CountSample] = []
    for line, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        try:
            b, n = (cell.strip() for cell in row)
            samples.append(CountSample(b=float(b), n=int(n)))
        except (ValueError, ValidationError) as e:
            msg = f"{csv_path}:{line}: bad row {row!r}"
            raise CountingError(msg) from e
    try:
        return CountSeries(family=family, raising=raising, samples=samples, meta=meta)
    except ValidationError as e:
        msg = f"{csv_path}: {e.errors()[0]['msg']}"
        raise CountingError(msg) from e


def geometric_samples(b_max: float, points: int = 16, ratio: float = 2.0) -> list[int]:
    """b_max, b_max/ratio, ... rounded to integers >= 1, deduplicated, ascending.

    Raises:
        CountingError: On b_max < 1, points < 1 or ratio <= 1.
    """
    if b_max < 1 or points < 1 or ratio <= 1:
        msg = f"bad sample grid: b_max={b_max}, points={points}, ratio={ratio}"
        raise CountingError(msg)
    values = {max(1, round(b_max / ratio**k)) for k in range(points)}
    return sorted(values)


def normalize_samples(samples: list[float] | list[int]) -> list[float]:
    """Sorted distinct nonnegative bounds.

    Raises:
        CountingError: If no sample is given or one is negative or not finite.
    """
    if not samples:
        msg = "at least one sample bound is required"
        raise CountingError(msg)
    for b in samples:
        if not math.isfinite(b) or b < 0:
            msg = f"sample bound must be a finite nonnegative number, got {b}"
            raise CountingError(msg)
    return sorted({float(b) for b in samples})


def build_series(
    family: str,
    raising: str,
    bounds: list[float],
    counts: list[int],
    meta: SeriesMeta | None = None,
) -> CountSeries:
    return CountSeries(
        family=family,
        raising=raising,
        samples=[CountSample(b=b, n=n) for b, n in zip(bounds, counts, strict=True)],
        meta=meta,
    )
