"""Glue between oracle encodings and library objects."""

from __future__ import annotations

from collections import Counter

from coxrings.abgroup import AbHom, FgAb, IntMatrix
from coxrings.units import UnitGroup
from oracles import order_profile


def fgab(orders) -> FgAb:
    return FgAb.standard(0, [d for d in orders if d > 1])


def units(orders) -> UnitGroup:
    return UnitGroup(False, fgab(orders))


def profile(g: FgAb) -> Counter:
    assert g.is_finite()
    return order_profile(tuple(g.invariant_factors))


def embedding(orders, gens) -> AbHom:
    """``H -> G`` for the subgroup of ``fgab(orders)`` generated by ``gens`` (oracle coordinates).

    ``H`` is presented on one generator per element of ``gens``, with the
    relations of the map ``Z^m -> G``.
    """
    G = FgAb(len(orders), IntMatrix.diagonal(list(orders))) if orders else FgAb.trivial()
    m = len(gens)
    cols = IntMatrix.from_columns([list(g) for g in gens], G.num_generators) if m else IntMatrix.zeros(G.num_generators, 0)
    free = FgAb.free(m)
    rel = AbHom(free, G, cols).kernel_lattice()
    H = FgAb(m, rel)
    return AbHom(H, G, cols)
