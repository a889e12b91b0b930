"""Russian field-level cost data and the step marginal-cost supply curve built from it."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from .errors import DomainError, ValidationError
from .market import Horizon

FIELD_COLUMNS = ("field_id", "capacity_mbd", "opex_usd_per_b", "capex_usd_per_b")

# Bounds within this relative slack of the curve's range are clamped rather than rejected.
_BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class FieldRecord:
    """One oil field: divisible capacity (Mb/d) and per-barrel OPEX/CAPEX (USD/b)."""

    id: str
    capacity: float
    opex: float
    capex: float

    def __post_init__(self):
        if not (math.isfinite(self.capacity) and self.capacity > 0):
            raise ValidationError(f"field {self.id!r}: capacity must be positive, got {self.capacity!r}")
        if not (math.isfinite(self.opex) and self.opex >= 0):
            raise ValidationError(f"field {self.id!r}: opex must be nonnegative, got {self.opex!r}")
        if not (math.isfinite(self.capex) and self.capex >= 0):
            raise ValidationError(f"field {self.id!r}: capex must be nonnegative, got {self.capex!r}")

    def marginal_cost(self, horizon: "Horizon | str") -> float:
        """OPEX in the short run; OPEX plus amortized CAPEX in the long run."""
        if Horizon.parse(horizon) is Horizon.SHORT_RUN:
            return self.opex
        return self.opex + self.capex


class StepSupplyCurve:
    """Nondecreasing step marginal-cost curve over cumulative capacity.

    Step ``k`` covers quantities in ``(cum[k-1], cum[k]]`` at marginal cost
    ``mc[k]``. Supply at a price is right-continuous: a field whose cost
    equals the price produces. Instances are immutable.
    """

    __slots__ = ("_mc", "_cum", "_area")

    def __init__(self, marginal_costs: Iterable[float], cumulative_capacity: Iterable[float]):
        mc = np.asarray(list(marginal_costs), dtype=float)
        cum = np.asarray(list(cumulative_capacity), dtype=float)
        if mc.ndim != 1 or mc.shape != cum.shape or mc.size == 0:
            raise ValidationError("curve needs matching, nonempty cost and capacity sequences")
        if np.any(np.diff(mc) <= 0):
            raise ValidationError("step marginal costs must be strictly increasing")
        if cum[0] <= 0 or np.any(np.diff(cum) <= 0):
            raise ValidationError("cumulative capacities must be positive and strictly increasing")
        if mc[0] < 0:
            raise ValidationError("marginal costs must be nonnegative")
        widths = np.diff(cum, prepend=0.0)
        # _area[k] = integral of MC over [0, cum[k-1]]
        area = np.concatenate(([0.0], np.cumsum(mc * widths)))
        for arr in (mc, cum, area):
            arr.setflags(write=False)
        self._mc = mc
        self._cum = cum
        self._area = area

    def __repr__(self) -> str:
        return (
            f"StepSupplyCurve(n_steps={self.n_steps}, total_capacity={self.total_capacity:.6g}, "
            f"mc_range=({self.min_cost:.6g}, {self.max_cost:.6g}))"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepSupplyCurve):
            return NotImplemented
        return np.array_equal(self._mc, other._mc) and np.array_equal(self._cum, other._cum)

    @property
    def marginal_costs(self) -> np.ndarray:
        return self._mc

    @property
    def cumulative_capacity(self) -> np.ndarray:
        return self._cum

    @property
    def steps(self) -> list[tuple[float, float]]:
        return [(float(m), float(c)) for m, c in zip(self._mc, self._cum)]

    @property
    def n_steps(self) -> int:
        return int(self._mc.size)

    @property
    def total_capacity(self) -> float:
        return float(self._cum[-1])

    @property
    def min_cost(self) -> float:
        return float(self._mc[0])

    @property
    def max_cost(self) -> float:
        return float(self._mc[-1])

    def quantity_at_price(self, p: float) -> float:
        """Capacity of all fields with marginal cost at or below ``p``."""
        if not p >= 0:
            raise DomainError(f"price must be nonnegative, got {p!r}")
        k = int(np.searchsorted(self._mc, p, side="right"))
        return 0.0 if k == 0 else float(self._cum[k - 1])

    def quantity_below_price(self, p: float) -> float:
        """Capacity of fields with marginal cost strictly below ``p`` (left limit of supply)."""
        if not p >= 0:
            raise DomainError(f"price must be nonnegative, got {p!r}")
        k = int(np.searchsorted(self._mc, p, side="left"))
        return 0.0 if k == 0 else float(self._cum[k - 1])

    def capacity_before_step(self, k: int) -> float:
        return 0.0 if k == 0 else float(self._cum[k - 1])

    def steps_in_price_range(self, lo: float, hi: float) -> np.ndarray:
        """Indices of steps whose marginal cost lies in ``(lo, hi]``."""
        a = int(np.searchsorted(self._mc, lo, side="right"))
        b = int(np.searchsorted(self._mc, hi, side="right"))
        return np.arange(a, b)

    def marginal_cost_at_quantity(self, q: float) -> float:
        """Marginal cost of the field producing the ``q``-th barrel; the cheapest step at ``q = 0``."""
        q = self._clamp(q)
        k = int(np.searchsorted(self._cum, q, side="left"))
        return float(self._mc[min(k, self._mc.size - 1)])

    def _clamp(self, q: float) -> float:
        total = self.total_capacity
        if q < 0:
            if q < -_BOUND_SLACK * total:
                raise DomainError(f"quantity {q!r} is negative")
            return 0.0
        if q > total:
            if q > total * (1 + _BOUND_SLACK):
                raise DomainError(f"quantity {q!r} exceeds curve capacity {total!r}")
            return total
        return q

    def _primitive(self, q: float) -> float:
        k = int(np.searchsorted(self._cum, q, side="left"))
        if k >= self._mc.size:
            return float(self._area[-1])
        return float(self._area[k] + self._mc[k] * (q - self.capacity_before_step(k)))

    def cost_integral(self, q0: float, q1: float) -> float:
        """Exact integral of marginal cost over ``[q0, q1]``.

        Mb/d times USD/b gives million USD/day.
        """
        if q0 > q1:
            raise DomainError(f"lower bound {q0!r} exceeds upper bound {q1!r}")
        q0, q1 = self._clamp(q0), self._clamp(q1)
        if q0 == q1:
            return 0.0
        return self._primitive(q1) - self._primitive(q0)


def build_curve(fields: Iterable[FieldRecord], horizon: "Horizon | str") -> StepSupplyCurve:
    """Sort fields by horizon marginal cost and merge equal-cost fields into single steps."""
    horizon = Horizon.parse(horizon)
    by_cost: dict[float, list[float]] = {}
    for f in fields:
        by_cost.setdefault(f.marginal_cost(horizon), []).append(f.capacity)
    if not by_cost:
        raise ValidationError("no field records")
    costs = sorted(by_cost)
    # fsum over the raw capacities keeps every cumulative total correctly rounded
    cum, acc = [], []
    for c in costs:
        acc.extend(by_cost[c])
        cum.append(math.fsum(acc))
    return StepSupplyCurve(costs, cum)


def total_capacity(fields: Iterable[FieldRecord]) -> float:
    return math.fsum(f.capacity for f in fields)


def load_fields(source: "TextIO | str") -> list[FieldRecord]:
    """Read field records from CSV text with the standard four-column header.

    ``source`` may be an open text stream or a filesystem path.
    """
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, newline="", encoding="utf-8") as fh:
            return load_fields(fh)

    reader = csv.reader(source)
    header = next(reader, None)
    if header is None:
        raise ValidationError("no field records (empty file)")
    header = [h.strip().lstrip("\ufeff") for h in header]
    if tuple(header) != FIELD_COLUMNS:
        raise ValidationError(f"bad header {header!r}; expected {','.join(FIELD_COLUMNS)}")

    records = []
    for row_no, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(FIELD_COLUMNS):
            raise ValidationError(f"row {row_no}: expected {len(FIELD_COLUMNS)} columns, got {len(row)}")
        values = []
        for col, cell in zip(FIELD_COLUMNS[1:], row[1:]):
            try:
                v = float(cell.strip())
            except ValueError:
                raise ValidationError(f"row {row_no}, column {col}: cannot parse {cell!r} as a number") from None
            if not math.isfinite(v) or v < 0:
                raise ValidationError(f"row {row_no}, column {col}: value {cell!r} must be finite and nonnegative")
            values.append(v)
        if values[0] <= 0:
            raise ValidationError(f"row {row_no}, column capacity_mbd: capacity must be positive")
        records.append(FieldRecord(row[0].strip(), *values))
    if not records:
        raise ValidationError("no field records")
    return records


def write_fields(fields: Iterable[FieldRecord], dest: "TextIO | str | None" = None) -> str:
    """Write field records in the standard CSV format; returns the text written.

    Floats use their shortest round-trip representation so a write/load
    cycle reproduces the records exactly.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIELD_COLUMNS)
    for f in fields:
        writer.writerow([f.id, repr(float(f.capacity)), repr(float(f.opex)), repr(float(f.capex))])
    text = buf.getvalue()
    if dest is None:
        return text
    if isinstance(dest, str) or hasattr(dest, "__fspath__"):
        with open(dest, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        dest.write(text)
    return text
