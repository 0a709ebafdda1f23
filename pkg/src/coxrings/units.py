"""Unit groups ``H^0(O^*)`` modelled as (divisible part) x (finitely generated lattice).

The divisible summand (``k^*`` of an algebraically closed field, say) is
symbolic: it never carries explicit elements, since every power equation is
solvable in it and it contributes nothing to ``Ext^1``. Units are canonical
elements of the lattice, and the group law is written additively in code even
though it is multiplication of units.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .abgroup import AbHom, Element, FgAb, IntMatrix, ext1
from .errors import InputError

Unit = Element


@dataclass(frozen=True, eq=False)
class UnitGroup:
    """``D x L`` with ``D`` divisible (if ``divisible``) and ``L`` = ``lattice``."""

    divisible: bool
    lattice: FgAb

    @classmethod
    def from_literal(cls, text: str) -> UnitGroup:
        """Parse ``"div"``, ``"div*<group>"`` or ``"<group>"``.

        ``"div*1;"`` is ``k^* x Z`` (units of a Laurent ring over an
        algebraically closed field), ``"0;6"`` is ``F_7^*``.
        """
        text = text.strip()
        if text == "div":
            return cls(True, FgAb.trivial())
        if text.startswith("div*"):
            return cls(True, FgAb.from_literal(text[4:]))
        if text.startswith("div"):
            raise InputError(f"cannot parse unit group literal {text!r}")
        return cls(False, FgAb.from_literal(text))

    @classmethod
    def divisible_only(cls) -> UnitGroup:
        return cls(True, FgAb.trivial())

    @classmethod
    def finite_field(cls, q: int) -> UnitGroup:
        """Units of ``F_q``, as the abstract cyclic group of order ``q - 1``."""
        if q < 2:
            raise InputError("field size must be at least 2")
        return cls(False, FgAb.standard(0, [q - 1] if q > 2 else []))

    def literal(self) -> str:
        lat = self.lattice.literal()
        if self.divisible:
            return "div" if lat == "0;" else f"div*{lat}"
        return lat

    # arithmetic on the lattice part ------------------------------------------

    @property
    def one(self) -> Unit:
        return self.lattice.zero

    def mul(self, a: Unit, b: Unit) -> Unit:
        return self.lattice.add(a, b)

    def inv(self, a: Unit) -> Unit:
        return self.lattice.neg(a)

    def div(self, a: Unit, b: Unit) -> Unit:
        return self.lattice.sub(a, b)

    def pow(self, a: Unit, n: int) -> Unit:
        return self.lattice.mul(n, a)

    def reduce(self, a) -> Unit:
        return self.lattice.reduce(a)

    def is_finite_lattice(self) -> bool:
        return self.lattice.is_finite()

    def elements(self) -> Iterator[Unit]:
        return self.lattice.elements()

    def __eq__(self, other):
        if not isinstance(other, UnitGroup):
            return NotImplemented
        return self.divisible == other.divisible and self.lattice.isomorphic(other.lattice)

    def __hash__(self):
        return hash((self.divisible, self.lattice.structure()))

    def __repr__(self):
        return f"UnitGroup({self.literal()!r})"


def power_cosets(u: UnitGroup, d: int) -> FgAb:
    """``U / U^d``, which equals ``L / dL``; the divisible part drops out."""
    if d < 1:
        raise InputError("exponent d must be a positive integer")
    lat = u.lattice
    n = lat.num_generators
    return lat.quotient([[d * int(i == j) for i in range(n)] for j in range(n)])


def is_dth_power(u: UnitGroup, x: Unit, d: int) -> Unit | None:
    """A unit ``y`` with ``y^d = x``, or ``None``.

    Only the lattice coordinates are solved for; the divisible part always
    has roots and is normalized to 1.
    """
    if d < 1:
        raise InputError("exponent d must be a positive integer")
    lat = u.lattice
    x = lat.reduce(x)
    times_d = AbHom(lat, lat, IntMatrix.diagonal([d] * lat.num_generators))
    return times_d.preimage(x)


def ext1_units(g: FgAb, u: UnitGroup) -> FgAb:
    """``Ext^1(g, U) = Ext^1(g, L)`` since divisible groups are injective."""
    return ext1(g, u.lattice)
