"""Reference data (:mod:`solarmodel.reference`)
=============================================

Printed solar-model tables shipped as CSV files in ``solarmodel/data``.

Lines starting with ``#`` give the provenance of a file. The first other
line is the header.

.. autoclass:: ReferenceTable
   :members:

.. autoclass:: ReferenceDataError

.. autoclass:: DataFile
   :members:

.. autoclass:: Discrepancy
   :members:

.. autofunction:: load_table

.. autofunction:: reference_column

.. autofunction:: density_reference

.. autofunction:: mass_reference

.. autofunction:: known_discrepancies

"""

import csv
import os
from dataclasses import dataclass
from typing import Tuple

import numpy as np

path_data = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")

# ordinates of the tabulated solar data (radius fraction)
ORDINATES = (0.0864, 0.1153, 0.1441, 0.1873, 0.2161, 0.2450, 0.2882)


class ReferenceDataError(ValueError):
    """Malformed or missing reference data."""


@dataclass(frozen=True)
class ReferenceTable:
    """Column of values tabulated at radius fractions.

    Parameters
    ----------

    rows : sequence of (y, value)

    source_label : str

    column : str

    ratio : bool

      If true the values are ratios and have to lie in [0, 1].

    """

    rows: Tuple[Tuple[float, float], ...]
    source_label: str = ""
    column: str = "value"
    ratio: bool = True

    def __post_init__(self):
        object.__setattr__(
            self, "rows", tuple((float(y), float(v)) for y, v in self.rows)
        )

    def __len__(self):
        return len(self.rows)

    @property
    def ys(self):
        return np.array([row[0] for row in self.rows])

    @property
    def values(self):
        return np.array([row[1] for row in self.rows])

    def validate(self):
        """Check the ordinates (strictly increasing in (0, 1)) and values."""
        if not self.rows:
            raise ReferenceDataError(f"{self.source_label}: no rows")
        ys = self.ys
        values = self.values
        if np.any(ys <= 0) or np.any(ys >= 1):
            raise ReferenceDataError(
                f"{self.source_label}: ordinates outside (0, 1)"
            )
        if np.any(np.diff(ys) <= 0):
            raise ReferenceDataError(
                f"{self.source_label}: ordinates not strictly increasing"
            )
        if not np.all(np.isfinite(values)):
            raise ReferenceDataError(f"{self.source_label}: non-finite values")
        if self.ratio and (np.any(values < 0) or np.any(values > 1)):
            raise ReferenceDataError(
                f"{self.source_label}: ratio values outside [0, 1]"
            )
        return self


@dataclass(frozen=True)
class DataFile:
    """Raw content of a CSV reference file."""

    name: str
    provenance: Tuple[str, ...]
    header: Tuple[str, ...]
    records: Tuple[Tuple[str, ...], ...]

    def column(self, key, convert=float):
        """Values of a column (converted)."""
        try:
            index = self.header.index(key)
        except ValueError:
            raise ReferenceDataError(
                f"{self.name}: no column {key!r} (columns: {self.header})"
            ) from None
        values = []
        for record in self.records:
            try:
                values.append(convert(record[index]))
            except (ValueError, IndexError) as error:
                raise ReferenceDataError(
                    f"{self.name}: bad value in column {key!r}: {error}"
                ) from error
        return values


def load_table(name, path_dir=None):
    """Read ``<name>.csv`` from the data directory."""
    if path_dir is None:
        path_dir = path_data
    path = os.path.join(path_dir, name + ".csv")
    if not os.path.exists(path):
        raise ReferenceDataError(f"no reference file {path}")

    provenance = []
    lines = []
    with open(path, newline="") as file:
        for line in file:
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                provenance.append(stripped.lstrip("# "))
            else:
                lines.append(stripped)
    if not lines:
        raise ReferenceDataError(f"{path}: no header")
    reader = csv.reader(lines)
    header = tuple(field.strip() for field in next(reader))
    records = []
    for record in reader:
        if len(record) != len(header):
            raise ReferenceDataError(
                f"{path}: {len(record)} fields instead of {len(header)}"
            )
        records.append(tuple(field.strip() for field in record))
    return DataFile(name, tuple(provenance), header, tuple(records))


def reference_column(name, column, ratio=True, x_column="y"):
    """Validated :class:`ReferenceTable` from a column of a data file."""
    data = load_table(name)
    rows = zip(data.column(x_column), data.column(column))
    label = f"{name}:{column}"
    return ReferenceTable(tuple(rows), label, column, ratio).validate()


def density_reference(column="sears"):
    """Density ratio column (``"sears"`` or a model label, e.g. ``"1.8"``)."""
    return reference_column("table1_density", column)


def mass_reference(column="analytic"):
    """Mass ratio column (``"analytic"`` or ``"sears"``)."""
    return reference_column("table3_mass", column)


@dataclass(frozen=True)
class Discrepancy:
    """Printed cell that the recomputation does not reproduce."""

    table: int
    column: str
    y: float
    printed: float
    recomputed: float
    note: str

    def matches(self, table, column, y):
        return (
            self.table == table
            and self.column == column
            and abs(self.y - y) < 1e-9
        )


def known_discrepancies():
    """Cells of the printed tables flagged as typos."""
    data = load_table("known_discrepancies")
    columns = zip(
        data.column("table", int),
        data.column("column", str),
        data.column("y"),
        data.column("printed"),
        data.column("recomputed"),
        data.column("note", str),
    )
    return [Discrepancy(*values) for values in columns]
