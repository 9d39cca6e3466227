"""Recomputed tables (:mod:`solarmodel.tables`)
============================================

The six printed tables of the model recomputed from first principles, cell
by cell next to the printed value.

=====  ======================================================  ==========
Table  Content                                                  Tolerance
=====  ======================================================  ==========
1      density of the candidate models (1.1)-(1.8)               2e-3
2      δ for γ = 2..20 from the mass constraint                  1e-3
3      mass ratio for (1.2814, 10)                               5e-4
4      g, u and g/u for (1.28, 10) (only u is asserted)          2e-3
5      successive temperature ratios (informational)             -
6      g for (1.28, 10) with the quadrature value (informational) -
=====  ======================================================  ==========

.. autoclass:: Cell
   :members:

.. autoclass:: TableResult
   :members:

.. autofunction:: recompute_table

"""

from dataclasses import asdict, dataclass
from typing import Optional, Tuple

from solarmodel.calibrate import PRINTED_MASS_TARGET, solve_delta
from solarmodel.density import CANDIDATE_MODELS, ModelParams, eval_model
from solarmodel.oracle import pressure_factor_by_quadrature
from solarmodel.reference import known_discrepancies, load_table
from solarmodel.structure import mass_ratio, pressure_factor_g
from solarmodel.util import logger

OK = "ok"
MISMATCH = "mismatch"
KNOWN = "known-discrepancy"
INFO = "info"

DEFAULT_PARAMS = {
    3: ModelParams(1.2814, 10),
    4: ModelParams(1.28, 10),
    5: ModelParams(1.28, 10),
    6: ModelParams(1.28, 10),
}

TITLES = {
    1: "density distribution",
    2: "gamma and delta",
    3: "mass distribution",
    4: "pressure and temperature proxy",
    5: "temperature distribution (successive ratios)",
    6: "pressure",
}

UNMATCHED_BANNER = (
    "unmatched semantics: the printed columns cannot be reconstructed; "
    "successive ratios of g/u, g/u^(1/2) and g/u^(1/4) are shown"
)


@dataclass(frozen=True)
class Cell:
    """One recomputed value next to the printed one."""

    column: str
    key: float
    computed: float
    printed: float
    delta: float
    tolerance: Optional[float]
    status: str

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class TableResult:
    table_id: int
    title: str
    cells: Tuple[Cell, ...]
    banner: str = ""

    columns = (
        "column",
        "key",
        "computed",
        "printed",
        "delta",
        "tolerance",
        "status",
    )

    @property
    def matched(self):
        """True if no cell is out of tolerance."""
        return all(cell.status != MISMATCH for cell in self.cells)

    @property
    def mismatches(self):
        return [cell for cell in self.cells if cell.status == MISMATCH]

    def as_dict(self):
        return {
            "table": self.table_id,
            "title": self.title,
            "banner": self.banner,
            "matched": self.matched,
            "cells": [cell.as_dict() for cell in self.cells],
        }


def _cell(column, key, computed, printed, tolerance, known=False):
    computed = float(computed)
    delta = computed - printed
    if tolerance is None:
        status = INFO
    elif known:
        status = KNOWN
    elif abs(delta) <= tolerance:
        status = OK
    else:
        status = MISMATCH
        logger.warning(
            "column %s at %g: computed %.6g, printed %.6g",
            column,
            key,
            computed,
            printed,
        )
    return Cell(column, float(key), computed, printed, delta, tolerance, status)


def _table1(params, mass_target):
    data = load_table("table1_density")
    discrepancies = [d for d in known_discrepancies() if d.table == 1]
    ys = data.column("y")
    cells = []
    for label, model in CANDIDATE_MODELS.items():
        for y, printed in zip(ys, data.column(label)):
            known = any(d.matches(1, label, y) for d in discrepancies)
            cells.append(
                _cell(label, y, eval_model(model, y), printed, 2e-3, known)
            )
    return cells


def _table2(params, mass_target):
    if mass_target is None:
        mass_target = PRINTED_MASS_TARGET
    data = load_table("table2_delta")
    cells = []
    for gamma, printed, decimals in zip(
        data.column("gamma", int), data.column("delta"), data.column("decimals", int)
    ):
        tolerance = 1e-3 if decimals >= 4 else 5e-3
        cells.append(
            _cell("delta", gamma, solve_delta(gamma, mass_target), printed, tolerance)
        )
    return cells


def _table3(params, mass_target):
    data = load_table("table3_mass")
    return [
        _cell("analytic", y, mass_ratio(params, y), printed, 5e-4)
        for y, printed in zip(data.column("y"), data.column("analytic"))
    ]


def _table4(params, mass_target):
    data = load_table("table4_pressure")
    cells = []
    for y, g_printed, u_printed, t_printed in zip(
        data.column("y"),
        data.column("g"),
        data.column("u"),
        data.column("g_over_u"),
    ):
        g = pressure_factor_g(params, y)
        u = eval_model(params, y)
        cells.append(_cell("g", y, g, g_printed, None))
        cells.append(_cell("u", y, u, u_printed, 2e-3))
        cells.append(_cell("g_over_u", y, g / u, t_printed, None))
    return cells


def _table5(params, mass_target):
    data = load_table("table5_temperature")
    printed_columns = {
        1.0: data.column("sears"),
        0.5: data.column("g_over_sqrt_u"),
        0.25: data.column("g_over_quarter_u"),
    }
    names = {1.0: "g_over_u", 0.5: "g_over_sqrt_u", 0.25: "g_over_quarter_u"}
    cells = []
    for index, (inner, outer) in enumerate(
        zip(data.column("y_inner"), data.column("y_outer"))
    ):
        for power, printed in printed_columns.items():
            ratios = [
                pressure_factor_g(params, y) / eval_model(params, y) ** power
                for y in (inner, outer)
            ]
            cells.append(
                _cell(names[power], outer, ratios[1] / ratios[0], printed[index], None)
            )
    return cells


def _table6(params, mass_target):
    data = load_table("table6_pressure")
    cells = []
    for y, printed in zip(data.column("y"), data.column("g")):
        cells.append(_cell("g", y, pressure_factor_g(params, y), printed, None))
        cells.append(
            _cell(
                "g_quadrature",
                y,
                pressure_factor_by_quadrature(params, y),
                printed,
                None,
            )
        )
    return cells


_BUILDERS = {
    1: _table1,
    2: _table2,
    3: _table3,
    4: _table4,
    5: _table5,
    6: _table6,
}


def recompute_table(table_id, params=None, mass_target=None):
    """Recompute a printed table.

    Parameters
    ----------

    table_id : int

      1 to 6.

    params : ModelParams, optional

      Model of tables 3 to 6 (defaults: (1.2814, 10) for table 3 and
      (1.28, 10) for the others).

    mass_target : float, optional

      Target of the mass constraint for table 2 (default 112.08).

    """
    try:
        builder = _BUILDERS[int(table_id)]
    except (KeyError, ValueError, TypeError):
        raise ValueError(f"table_id has to be in 1..6 (got {table_id!r})") from None
    table_id = int(table_id)
    if params is None:
        params = DEFAULT_PARAMS.get(table_id)
    cells = builder(params, mass_target)
    banner = UNMATCHED_BANNER if table_id == 5 else ""
    result = TableResult(table_id, TITLES[table_id], tuple(cells), banner)
    logger.info(
        "table %d: %d cells, %d mismatches",
        table_id,
        len(result.cells),
        len(result.mismatches),
    )
    return result
