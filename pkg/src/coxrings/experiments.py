"""Configured experiment runs behind ``scripts/``."""

from __future__ import annotations

import itertools
import time
from dataclasses import asdict, dataclass, field

from .abgroup import abelian_groups_of_order
from .families import classify
from .toricdiv import DivisorialPresentation, ToricPresentation, cox_piece_dimension, monomial_piece_dimension
from .units import UnitGroup, ext1_units

SURFACES = {
    "P2": ((1, 0), (0, 1), (-1, -1)),
    "P1xP1": ((1, 0), (-1, 0), (0, 1), (0, -1)),
    "P112": ((1, 0), (0, 1), (-1, -2)),
    "F2": ((1, 0), (0, 1), (-1, 2), (0, -1)),
}


@dataclass(frozen=True)
class Ext1TableConfig:
    max_grading_order: int = 8
    max_unit_order: int = 8
    extra_units: tuple[str, ...] = ("div", "div*1;")


@dataclass(frozen=True)
class ToricDimsConfig:
    surfaces: tuple[str, ...] = ("P2", "P1xP1", "P112")
    max_entry: int = 10
    min_entry: int = 0


@dataclass
class Ext1Row:
    grading: str
    units: str
    ext1: str
    classes: int
    agrees: bool
    seconds: float

    @property
    def ok(self) -> bool:
        return self.agrees


@dataclass
class DimRow:
    surface: str
    cls: tuple[int, ...]
    cox_dim: int
    monomial_dim: int

    @property
    def ok(self) -> bool:
        return self.cox_dim == self.monomial_dim


@dataclass
class RunSummary:
    config: dict
    rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)


def _groups(max_order: int):
    return [g for n in range(1, max_order + 1) for g in abelian_groups_of_order(n)]


def ext1_table(cfg: Ext1TableConfig) -> RunSummary:
    out = RunSummary(asdict(cfg))
    unit_groups = [UnitGroup(False, g) for g in _groups(cfg.max_unit_order)]
    unit_groups += [UnitGroup.from_literal(x) for x in cfg.extra_units]
    for g in _groups(cfg.max_grading_order):
        for u in unit_groups:
            t0 = time.perf_counter()
            rep = classify(g, u)
            out.rows.append(Ext1Row(g.literal(), u.literal(), ext1_units(g, u).literal(), rep.count, rep.agrees, time.perf_counter() - t0))
    return out


def toric_piece_dims(cfg: ToricDimsConfig) -> RunSummary:
    out = RunSummary(asdict(cfg))
    for name in cfg.surfaces:
        t = ToricPresentation(SURFACES[name])
        p = DivisorialPresentation.standard(t)
        rank = t.class_group.num_coordinates
        for c in itertools.product(range(cfg.min_entry, cfg.max_entry + 1), repeat=rank):
            out.rows.append(DimRow(name, c, cox_piece_dimension(p, c), monomial_piece_dimension(t, c)))
    return out
