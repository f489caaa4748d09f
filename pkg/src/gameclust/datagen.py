"""Seeded synthetic blob data and CSV ingestion.

The synthetic generator draws blob centers uniformly inside a box and
scatters points around them with Gaussian noise, split as evenly as
possible across blobs; everything is determined by the seed (PCG64 via
``numpy.random.default_rng``).  CSV files are comma-separated with '.'
decimals, UTF-8, and at most one optional header row.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Dataset
from .errors import ConfigError, CsvFormatError


@dataclass(frozen=True)
class Ds1Config:
    """Synthetic blob dataset settings: 150 2-d points around 8 blobs by default."""

    n_points: int = 150
    dim: int = 2
    blob_count: int = 8
    mean_low: float = 0.0
    mean_high: float = 10.0
    std_dev: float = 2.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_points < 1 or self.dim < 1 or self.blob_count < 1:
            raise ConfigError("n_points, dim and blob_count must be positive")
        if self.n_points < self.blob_count:
            raise ConfigError(
                f"n_points={self.n_points} must be at least blob_count={self.blob_count}"
            )
        if not self.std_dev > 0:
            raise ConfigError(f"std_dev must be positive, got {self.std_dev}")
        if not self.mean_high > self.mean_low:
            raise ConfigError("mean_high must exceed mean_low")


def generate_ds1(config: Ds1Config) -> Dataset:
    """Generate the blob dataset; identical seeds give bit-identical data.

    Draw order is fixed: blob centers first (uniform per dimension),
    then all per-point noise in one normal draw.
    """
    rng = np.random.default_rng(config.seed)
    centers = rng.uniform(config.mean_low, config.mean_high, size=(config.blob_count, config.dim))
    noise = rng.normal(0.0, config.std_dev, size=(config.n_points, config.dim))
    base, extra = divmod(config.n_points, config.blob_count)
    counts = [base + (1 if i < extra else 0) for i in range(config.blob_count)]
    blob_ids = np.repeat(np.arange(config.blob_count), counts)
    return Dataset(points=centers[blob_ids] + noise)


def load_csv(path: str, expected_dim: Optional[int] = None) -> Dataset:
    """Read one point per row; a single leading non-numeric row is skipped as a header."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            rows = [row for row in csv.reader(fh) if row]
    except OSError as exc:
        raise CsvFormatError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise CsvFormatError(f"{path}: file contains no data rows")
    start = 0
    try:
        [float(cell) for cell in rows[0]]
    except ValueError:
        start = 1
    if start == len(rows):
        raise CsvFormatError(f"{path}: only a header row, no data")
    dim = len(rows[start])
    points = []
    for r, row in enumerate(rows[start:], start=start + 1):
        if len(row) != dim:
            raise CsvFormatError(f"{path}: row {r} has {len(row)} columns, expected {dim}")
        values = []
        for c, cell in enumerate(row, start=1):
            try:
                values.append(float(cell))
            except ValueError:
                raise CsvFormatError(f"{path}: row {r}, column {c}: {cell!r} is not numeric") from None
        points.append(values)
    if expected_dim is not None and dim != expected_dim:
        raise CsvFormatError(f"{path}: expected {expected_dim} columns, found {dim}")
    return Dataset(points=np.asarray(points, dtype=np.float64))


def save_csv(dataset: Dataset, path: str) -> None:
    """Write points one per row, 9 significant digits, no header."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        for row in dataset.points:
            writer.writerow([f"{v:.9g}" for v in row])
