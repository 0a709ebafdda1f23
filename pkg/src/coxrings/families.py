"""G-families of trivialized line bundles.

With every member ``F_g`` identified with ``O``, a G-family is nothing but its
structure constants ``xi(g, h)`` in the unit group, subject to

* ``xi(g, 0) = 1``                                  (unit)
* ``xi(g, h) = xi(h, g)``                           (commutativity)
* ``xi(g, h) xi(g + h, t) = xi(h, t) xi(g, h + t)``  (associativity)

i.e. a symmetric normalized 2-cocycle. Two families are isomorphic when they
differ by a coboundary ``mu(g) mu(h) / mu(g + h)``.

Units are written additively in code (they are canonical lattice tuples, see
:mod:`coxrings.units`), so "ξ·η" is ``units.mul`` and "1" is ``units.one``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .abgroup import (
    AbHom,
    Element,
    FgAb,
    IntegerSolver,
    IntMatrix,
    _snf,
    free_resolution,
    horseshoe,
)
from .errors import InputError, InvariantViolation, PreconditionError
from .units import Unit, UnitGroup, ext1_units

CLASSIFY_LIMIT = 10_000

Pair = tuple[Element, Element]


@dataclass(frozen=True)
class Violation:
    kind: str  # normalization | symmetry | associativity | non-unit
    where: tuple[Element, ...]

    def __str__(self):
        return f"{self.kind} violation at {self.where}"


class GFamily:
    """Structure constants of a G-family over a point.

    For a finite grading the cocycle is stored densely on canonical elements;
    missing pairs default to the unit 1. ``None`` marks a non-invertible
    placeholder and is only accepted with ``check=False`` (see
    :func:`is_torsor_algebra`). For an infinite grading pass ``function``
    instead; values are then computed on demand.
    """

    def __init__(
        self,
        grading: FgAb,
        units: UnitGroup,
        table: Mapping[Pair, Unit | None] | None = None,
        *,
        function: Callable[[Element, Element], Unit] | None = None,
        check: bool = True,
    ):
        self.grading, self.units = grading, units
        self._fn = None
        self._memo: dict[Pair, Unit] = {}
        self._table: dict[Pair, Unit | None] | None = None
        if grading.is_finite():
            if function is not None and table is not None:
                raise InputError("give either a table or a function, not both")
            one = units.one
            elems = list(grading.elements())
            if function is not None:
                tab = {(g, h): units.reduce(function(g, h)) for g in elems for h in elems}
            else:
                tab = {(g, h): one for g in elems for h in elems}
                for (g, h), val in (table or {}).items():
                    key = (grading.reduce(g), grading.reduce(h))
                    tab[key] = None if val is None else units.reduce(val)
            self._table = tab
        else:
            if table:
                raise InputError("infinite gradings need a cocycle function, not a table")
            self._fn = function or (lambda g, h: units.one)
        if check:
            if not self.is_finite():
                raise InputError("check=True needs a finite grading; use validate_family with a window")
            bad = validate_family(self)
            if bad:
                raise PreconditionError("not a valid G-family: " + ", ".join(map(str, bad[:5])))

    @classmethod
    def trivial(cls, grading: FgAb, units: UnitGroup) -> GFamily:
        if grading.is_finite():
            return cls(grading, units)
        return cls(grading, units, function=lambda g, h: units.one, check=False)

    @classmethod
    def from_function(cls, grading, units, fn, check=True) -> GFamily:
        return cls(grading, units, function=fn, check=check and grading.is_finite())

    def is_finite(self) -> bool:
        return self._table is not None

    def elements(self) -> list[Element]:
        return list(self.grading.elements())

    def value(self, g: Element, h: Element) -> Unit | None:
        if self._table is not None:
            try:
                return self._table[(g, h)]
            except (KeyError, TypeError):
                return self._table[(self.grading.reduce(g), self.grading.reduce(h))]
        key = (self.grading.reduce(g), self.grading.reduce(h))
        v = self._memo.get(key)
        if v is None:
            v = self._memo[key] = self.units.reduce(self._fn(*key))
        return v

    __call__ = value

    @property
    def table(self) -> dict[Pair, Unit | None]:
        if self._table is None:
            raise PreconditionError("infinite grading has no dense table")
        return dict(self._table)

    def compatible(self, other: GFamily) -> bool:
        return self.grading.isomorphic(other.grading) and self.units == other.units

    def __eq__(self, other):
        if not isinstance(other, GFamily):
            return NotImplemented
        return self.is_finite() and other.is_finite() and self.compatible(other) and self._table == other._table

    def __repr__(self):
        return f"GFamily(grading={self.grading.literal()!r}, units={self.units.literal()!r})"


# ---------------------------------------------------------------------------
# Validation and the torsor dictionary
# ---------------------------------------------------------------------------


def _domain(f: GFamily, window: Iterable[Element] | None) -> list[Element]:
    if window is not None:
        return [f.grading.reduce(g) for g in window]
    if not f.grading.is_finite():
        raise PreconditionError("an infinite grading needs a finite window")
    return f.elements()


def validate_family(f: GFamily, window: Iterable[Element] | None = None) -> list[Violation]:
    """All failures of the unit, commutativity and associativity constraints.

    Constraints involving 0 are reported as normalization failures only; once
    normalization holds they are automatic.
    """
    G, one = f.grading, f.units.one
    dom = _domain(f, window)
    zero = G.zero
    out = []
    for g in dom:
        for h in dom:
            if f.value(g, h) is None:
                out.append(Violation("non-unit", (g, h)))
    for g in dom:
        for pair in ((g, zero), (zero, g)):
            v = f.value(*pair)
            if v is not None and v != one:
                out.append(Violation("normalization", pair))
    nonzero = [g for g in dom if g != zero]
    for i, g in enumerate(nonzero):
        for h in nonzero[i + 1:]:
            a, b = f.value(g, h), f.value(h, g)
            if a is not None and b is not None and a != b:
                out.append(Violation("symmetry", (g, h)))
    mul = f.units.mul
    for g, h, t in itertools.product(nonzero, repeat=3):
        gh, ht = G.add(g, h), G.add(h, t)
        vals = (f.value(g, h), f.value(gh, t), f.value(h, t), f.value(g, ht))
        if None in vals:
            continue
        # already reported as a normalization failure
        if (gh == zero and vals[1] != one) or (ht == zero and vals[3] != one):
            continue
        if mul(vals[0], vals[1]) != mul(vals[2], vals[3]):
            out.append(Violation("associativity", (g, h, t)))
    return out


def is_torsor_algebra(f: GFamily, window: Iterable[Element] | None = None) -> bool:
    """Whether ``O -> R_0`` and every ``R_g (x) R_h -> R_{g+h}`` is an isomorphism.

    Multiplication by ``xi(g, h)`` is an isomorphism exactly when it is a unit,
    and ``O -> R_0`` is the identity exactly when ``xi(g, 0) = 1``.
    """
    G, one = f.grading, f.units.one
    dom = _domain(f, window)
    if any(f.value(g, h) is None for g in dom for h in dom):
        return False
    return all(f.value(g, G.zero) == one and f.value(G.zero, g) == one for g in dom)


# ---------------------------------------------------------------------------
# Tensor products, restriction
# ---------------------------------------------------------------------------


def _require_compatible(f: GFamily, g: GFamily) -> None:
    if not f.grading.isomorphic(g.grading):
        raise InputError(f"grading mismatch: {f.grading.literal()} vs {g.grading.literal()}")
    if f.units != g.units:
        raise InputError(f"unit group mismatch: {f.units.literal()} vs {g.units.literal()}")


def tensor(f: GFamily, g: GFamily) -> GFamily:
    _require_compatible(f, g)
    mul = f.units.mul
    return GFamily.from_function(f.grading, f.units, lambda a, b: mul(f.value(a, b), g.value(a, b)))


def inverse(f: GFamily) -> GFamily:
    return GFamily.from_function(f.grading, f.units, lambda a, b: f.units.inv(f.value(a, b)))


def restrict_family(f: GFamily, alpha: AbHom) -> GFamily:
    """Pull back along ``alpha: H -> grading``: ``xi_H(h, h') = xi(alpha h, alpha h')``."""
    if not alpha.target.isomorphic(f.grading):
        raise InputError("alpha does not land in the grading group")
    return GFamily.from_function(alpha.source, f.units, lambda h, k: f.value(alpha(h), alpha(k)))


# ---------------------------------------------------------------------------
# Isomorphisms and classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyIso:
    """``mu`` with ``xi'(g, h) = xi(g, h) mu(g) mu(h) / mu(g + h)``."""

    mu: dict[Element, Unit]

    def transports(self, f: GFamily, g: GFamily, window: Iterable[Element] | None = None) -> bool:
        U, G = f.units, f.grading
        dom = _domain(f, window)
        mu = lambda x: self.mu.get(x, U.one)  # noqa: E731
        if mu(G.zero) != U.one:
            return False
        for a in dom:
            for b in dom:
                lhs = U.div(U.mul(U.mul(f.value(a, b), mu(a)), mu(b)), mu(G.add(a, b)))
                if lhs != g.value(a, b):
                    return False
        return True


class RelationLattice:
    """The kernel ``K`` of ``Z^(G - 0) -> G``, generated by ``e(g,h) = e_g + e_h - e_{g+h}``.

    A symmetric normalized cocycle is the same thing as a homomorphism
    ``K -> U`` via ``e(g, h) -> xi(g, h)``. A lattice basis ``b_j`` of ``K`` is
    extracted together with both change-of-basis matrices:
    ``b_j = sum_p in_generators[p][j] e_p`` and ``e_p = sum_j coords[j][p] b_j``.
    """

    def __init__(self, grading: FgAb):
        if not grading.is_finite():
            raise PreconditionError("relation lattice needs a finite grading")
        G = grading
        self.grading = G
        elems = list(G.elements())
        self.nonzero = elems[1:]
        index = {g: i for i, g in enumerate(self.nonzero)}
        self.pairs: list[Pair] = [
            (g, h) for i, g in enumerate(self.nonzero) for h in self.nonzero[i:]
        ]
        n1, P = len(self.nonzero), len(self.pairs)
        E = [[0] * P for _ in range(n1)]
        for p, (g, h) in enumerate(self.pairs):
            E[index[g]][p] += 1
            E[index[h]][p] += 1
            s = G.add(g, h)
            if s != G.zero:
                E[index[s]][p] -= 1
        self.generators = IntMatrix.from_rows(E, P) if n1 else IntMatrix.zeros(0, P)
        red = _snf(E, n1, P)
        diag = [red.a[i][i] for i in range(min(n1, P))]
        self.rank = sum(1 for d in diag if d)
        index_product = 1
        for d in diag[:self.rank]:
            index_product *= d
        if self.rank != n1 or index_product != len(elems):
            raise InvariantViolation("e(g,h) do not span a full-rank sublattice of index |G|")
        r = self.rank
        self.in_generators = [row[:r] for row in red.v]  # P x r
        self.coords = [row[:] for row in red.vi[:r]]  # r x P
        self.basis = [[sum(E[i][p] * red.v[p][j] for p in range(P)) for j in range(r)] for i in range(n1)]
        self.pair_index = {pair: p for p, pair in enumerate(self.pairs)}

    def pair_key(self, g: Element, h: Element) -> Pair:
        return (g, h) if (g, h) in self.pair_index else (h, g)


class _Classifier:
    """``Ext^1`` as ``Hom(K, U) / image of Hom(Z^(G-0), U)`` for fixed ``(G, U)``."""

    def __init__(self, grading: FgAb, units: UnitGroup):
        self.grading, self.units = grading, units
        self.lattice = lat = RelationLattice(grading)
        L = units.lattice
        self.nU = nU = L.num_generators
        r, n1 = lat.rank, len(lat.nonzero)
        self.hom_k = FgAb.direct_sum(*([L] * r))
        self.hom_free = FgAb.direct_sum(*([L] * n1))
        M = [[0] * (n1 * nU) for _ in range(r * nU)]
        for j in range(r):
            for g in range(n1):
                c = lat.basis[g][j]
                if c:
                    for a in range(nU):
                        M[j * nU + a][g * nU + a] = c
        mat = IntMatrix.from_rows(M, n1 * nU) if r * nU else IntMatrix.zeros(0, n1 * nU)
        self.restriction = AbHom(self.hom_free, self.hom_k, mat)
        self.ext_group = self.hom_k.quotient(mat.columns())

    def phi(self, f: GFamily) -> list[Unit]:
        """Values of the homomorphism ``K -> U`` on the lattice basis."""
        lat, U = self.lattice, self.units
        out = []
        for j in range(lat.rank):
            acc = U.one
            for p, (g, h) in enumerate(lat.pairs):
                c = lat.in_generators[p][j]
                if c:
                    acc = U.mul(acc, U.pow(f.value(g, h), c))
            out.append(acc)
        return out

    def _stack(self, units: Sequence[Unit]) -> tuple[int, ...]:
        L = self.units.lattice
        return tuple(x for u in units for x in L.lift(u))

    def class_of(self, f: GFamily) -> Element:
        return self.ext_group.canonical(self._stack(self.phi(f)))

    def family_of(self, label: Element, grading: FgAb | None = None) -> GFamily:
        lat, U = self.lattice, self.units
        L, nU = U.lattice, self.nU
        x = self.ext_group.lift(label)
        phi = [L.canonical(x[j * nU:(j + 1) * nU]) for j in range(lat.rank)]
        table = {}
        for p, (g, h) in enumerate(lat.pairs):
            acc = U.one
            for j in range(lat.rank):
                c = lat.coords[j][p]
                if c:
                    acc = U.mul(acc, U.pow(phi[j], c))
            table[(g, h)] = table[(h, g)] = acc
        return GFamily(grading or self.grading, U, table, check=False)

    def witness(self, f: GFamily, g: GFamily) -> FamilyIso | None:
        U = self.units
        diff = [U.div(b, a) for a, b in zip(self.phi(f), self.phi(g))]
        x = self.restriction.preimage_vector(self._stack(diff))
        if x is None:
            return None
        L, nU = U.lattice, self.nU
        mu = {g_: L.canonical(x[i * nU:(i + 1) * nU]) for i, g_ in enumerate(self.lattice.nonzero)}
        mu[self.grading.zero] = U.one
        return FamilyIso(mu)


@lru_cache(maxsize=256)
def _classifier(structure: tuple, divisible: bool, unit_structure: tuple) -> _Classifier:
    return _Classifier(FgAb.standard(*structure), UnitGroup(divisible, FgAb.standard(*unit_structure)))


def _classifier_for(grading: FgAb, units: UnitGroup) -> _Classifier:
    if not grading.is_finite():
        raise PreconditionError("classification needs a finite grading group")
    return _classifier(grading.structure(), units.divisible, units.lattice.structure())


def find_isomorphism(f: GFamily, g: GFamily) -> FamilyIso | None:
    """A coboundary witness turning ``f`` into ``g``, or ``None``.

    Solved exactly as a linear system over the unit lattice: ``mu`` restricted
    to the relation lattice must equal ``phi_g - phi_f``.
    """
    _require_compatible(f, g)
    for fam in (f, g):
        bad = validate_family(fam)
        if bad:
            raise PreconditionError("find_isomorphism needs valid families: " + str(bad[0]))
    iso = _classifier_for(f.grading, f.units).witness(f, g)
    if iso is not None and not iso.transports(f, g):
        raise InvariantViolation("isomorphism witness does not transport the cocycle")
    return iso


def cocycle_class(f: GFamily) -> Element:
    """Label of the isomorphism class of ``f`` in the computed ``Ext^1`` group."""
    return _classifier_for(f.grading, f.units).class_of(f)


@dataclass
class ClassificationReport:
    grading: FgAb
    units: UnitGroup
    ext1: FgAb  # closed form
    cocycle_ext: FgAb  # from the relation lattice
    labels: list[Element] = field(default_factory=list)
    representatives: list[GFamily] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.representatives)

    @property
    def agrees(self) -> bool:
        return self.cocycle_ext.isomorphic(self.ext1) and self.count == self.ext1.order()


def classify(g: FgAb, u: UnitGroup, limit: int = CLASSIFY_LIMIT) -> ClassificationReport:
    """One representative per isomorphism class of G-families with units ``u``.

    Bounds: ``|g| * |lattice| <= limit`` (finite lattice) and at most ``limit``
    classes.
    """
    if not g.is_finite():
        raise PreconditionError("classify needs a finite grading group")
    n = g.order()
    lat_order = u.lattice.order()
    if lat_order is not None and n * lat_order > limit:
        raise PreconditionError(f"search space |G|*|U| = {n * lat_order} exceeds {limit}")
    closed = ext1_units(g, u)
    if closed.order() > limit:
        raise PreconditionError(f"{closed.order()} classes exceed {limit}")
    clf = _classifier_for(g, u)
    report = ClassificationReport(g, u, closed, clf.ext_group)
    for label in clf.ext_group.elements():
        fam = clf.family_of(label, g)
        report.labels.append(label)
        report.representatives.append(fam)
    if not report.agrees:
        raise InvariantViolation(
            f"cocycle classes {clf.ext_group.literal()} disagree with Ext^1 = {closed.literal()}"
        )
    return report


# ---------------------------------------------------------------------------
# Extension and quotient
# ---------------------------------------------------------------------------


class _Extension:
    """The group ``U x_xi H`` with ``(u, g) + (v, h) = (u v xi(g, h), g + h)``."""

    def __init__(self, f: GFamily):
        self.f, self.U, self.G = f, f.units, f.grading

    def add(self, a, b):
        (u, g), (v, h) = a, b
        return (self.U.mul(self.U.mul(u, v), self.f.value(g, h)), self.G.add(g, h))

    def neg(self, a):
        u, g = a
        ng = self.G.neg(g)
        return (self.U.inv(self.U.mul(u, self.f.value(g, ng))), ng)

    def scale(self, n: int, a):
        acc = (self.U.one, self.G.zero)
        if n < 0:
            n, a = -n, self.neg(a)
        while n:
            if n & 1:
                acc = self.add(acc, a)
            a = self.add(a, a)
            n >>= 1
        return acc

    def splitting(self, x: Sequence[int], gens: Sequence[Element]):
        """Image of ``x`` under the homomorphism ``Z^n -> U x_xi H``, ``e_i -> (1, gens[i])``."""
        acc = (self.U.one, self.G.zero)
        for n, g in zip(x, gens):
            if n:
                acc = self.add(acc, self.scale(n, (self.U.one, g)))
        return acc


def _check_injective(alpha: AbHom) -> None:
    if not alpha.is_injective():
        raise PreconditionError("alpha must be injective")


def extend_family(f: GFamily, alpha: AbHom, twist: Sequence[Unit] | None = None) -> GFamily:
    """A G-family whose restriction along ``alpha: H -> G`` is isomorphic to ``f``.

    Free resolutions of ``H`` and ``G/H`` are glued by the horseshoe lemma into
    ``0 -> L -> K0 + K0' -> G -> 0``. Pulled back to the free group ``K0`` the
    family becomes trivial; the trivializing map restricted to ``K1`` together
    with ``twist`` on the ``K1'`` part defines ``tau: L -> U``, and the new
    cocycle is ``tau(s(a) + s(b) - s(a + b))`` for a set-theoretic section
    ``s``. Different twists sweep out the extensions classified by
    ``Ext^1(G/H, U)``.
    """
    if not alpha.source.isomorphic(f.grading):
        raise InputError("alpha does not start at the grading of f")
    _check_injective(alpha)
    H, G, U = alpha.source, alpha.target, f.units
    if not G.is_finite():
        raise PreconditionError("extend_family tabulates the result and needs a finite G")
    if alpha.is_surjective():
        back = {alpha(h): h for h in H.elements()}
        return GFamily.from_function(G, U, lambda a, b: f.value(back[a], back[b]))

    Q = G.quotient(alpha.matrix.columns())
    beta = AbHom(G, Q, IntMatrix.identity(G.num_generators))
    res_h, res_q = free_resolution(H), free_resolution(Q)
    res = horseshoe(res_h, res_q, (alpha, beta), IntMatrix.identity(G.num_generators))

    ext = _Extension(f)
    gens_h = [H.canonical(c) for c in res_h.projection.matrix.columns()]
    tau = []
    for k in res_h.k1_basis.columns():
        u, h = ext.splitting(k, gens_h)
        if h != H.zero:
            raise InvariantViolation("K1 element does not project to zero")
        tau.append(u)
    n_twist = res_q.k1_rank
    if twist is None:
        twist = [U.one] * n_twist
    if len(twist) != n_twist:
        raise InputError(f"twist needs {n_twist} unit values")
    tau += [U.reduce(t) for t in twist]

    coords = IntegerSolver(res.k1_basis)
    section = {}
    for g in G.elements():
        x = res.projection.preimage_vector(G.lift(g)) if g != G.zero else (0,) * res.k0_rank
        section[g] = x

    def xi(a, b):
        lvec = [p + q - r for p, q, r in zip(section[a], section[b], section[G.add(a, b)])]
        c = coords.solve(lvec)
        if c is None:
            raise InvariantViolation("section defect does not lie in the kernel lattice")
        acc = U.one
        for cj, t in zip(c, tau):
            if cj:
                acc = U.mul(acc, U.pow(t, cj))
        return acc

    return GFamily.from_function(G, U, xi)


def _as_function(triv, group: FgAb, units: UnitGroup) -> Callable[[Element], Unit]:
    if callable(triv):
        return lambda h: units.reduce(triv(h))
    table = {group.reduce(k): units.reduce(v) for k, v in dict(triv).items()}
    return lambda h: table.get(h, units.one)


def _window(group: FgAb, radius: int = 2) -> list[Element]:
    if group.is_finite():
        return list(group.elements())
    k = len(group.invariant_factors)
    tors = itertools.product(*(range(d) for d in group.invariant_factors))
    free = list(itertools.product(range(-radius, radius + 1), repeat=group.free_rank))
    return [t + f for t in tors for f in free] if k else free


def induce_quotient_family(
    f: GFamily,
    alpha: AbHom,
    triv,
    section=None,
) -> GFamily:
    """The ``G/H``-family induced by ``f`` and a trivialization of ``f|_H``.

    ``triv`` maps canonical elements ``h`` of ``H`` (given by the embedding
    ``alpha``) to units ``t(h)`` with ``t(h) t(h') = xi(h, h') t(h + h')``;
    a mapping may omit entries equal to 1. In the quotient algebra
    ``x_h = t(h)``, so with a section ``s`` and ``s(u) + s(v) = s(u + v) + h``::

        xi_bar(u, v) = xi(s(u), s(v)) * t(h) / xi(s(u + v), h)

    ``section`` defaults to the lexicographically least representative of
    each coset (canonical lift of the class for infinite ``G``).
    """
    if not alpha.target.isomorphic(f.grading):
        raise InputError("alpha does not land in the grading of f")
    _check_injective(alpha)
    H, G, U = alpha.source, alpha.target, f.units
    t = _as_function(triv, H, U)
    for h in _window(H):
        for k in _window(H):
            lhs = U.mul(t(h), t(k))
            rhs = U.mul(f.value(alpha(h), alpha(k)), t(H.add(h, k)))
            if lhs != rhs:
                raise PreconditionError(f"trivialization is not multiplicative at {(h, k)}")

    Q = G.quotient(alpha.matrix.columns())
    beta = AbHom(G, Q, IntMatrix.identity(G.num_generators))
    if section is None:
        if G.is_finite():
            table = {}
            for g in G.elements():
                table.setdefault(beta(g), g)
            s = table.__getitem__
        else:
            s = lambda u: G.canonical(Q.lift(u))  # noqa: E731
    elif callable(section):
        s = lambda u: G.reduce(section(u))  # noqa: E731
    else:
        table = {Q.reduce(k): G.reduce(v) for k, v in dict(section).items()}
        s = table.__getitem__

    if s(Q.zero) != G.zero:
        raise PreconditionError("section must send 0 to 0")
    for u in _window(Q):
        if beta(s(u)) != u:
            raise PreconditionError(f"section value at {u} lies in the wrong coset")

    def xi_bar(u, v):
        su, sv, suv = s(u), s(v), s(Q.add(u, v))
        h_g = G.sub(G.add(su, sv), suv)
        h = alpha.preimage(h_g)
        if h is None:
            raise InvariantViolation("section defect is not in H")
        return U.div(U.mul(f.value(su, sv), t(h)), f.value(suv, h_g))

    if Q.is_finite():
        return GFamily.from_function(Q, U, xi_bar)
    return GFamily(Q, U, function=xi_bar, check=False)


def trivialize_free_family(f: GFamily, window: Iterable[Element]) -> FamilyIso:
    """Isomorphism from ``f`` to the trivial family, for a free grading group.

    The extension ``U x_xi Z^r`` splits: sending the basis vectors to ``(1, e_i)``
    gives a homomorphism ``x -> (mu(x), x)``, and ``mu`` is the witness.
    Computed and verified on ``window``.
    """
    G = f.grading
    if G.invariant_factors:
        raise PreconditionError("grading group is not free")
    window = [G.reduce(g) for g in window]
    ext = _Extension(f)
    gens = [tuple(int(i == j) for i in range(G.free_rank)) for j in range(G.free_rank)]
    mu = {}
    for g in set(window) | {G.add(a, b) for a in window for b in window}:
        u, img = ext.splitting(g, gens)
        if img != g:
            raise InvariantViolation("splitting does not cover the identity")
        mu[g] = u
    iso = FamilyIso(mu)
    if not iso.transports(f, GFamily.trivial(G, f.units), window):
        raise InvariantViolation("free splitting does not trivialize the cocycle")
    return iso


# ---------------------------------------------------------------------------
# Cox ring multiplication tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoxRingTable:
    """``x_g * x_h = xi(g, h) x_{g+h}`` on the basis ``{x_g}`` of ``R = sum_g F_g``."""

    grading: FgAb
    units: UnitGroup
    products: dict[Pair, tuple[Unit, Element]]

    def product(self, g: Element, h: Element) -> tuple[Unit, Element]:
        return self.products[(g, h)]

    def _triple(self, a: Element, b: Element, c: Element, left: bool) -> tuple[Unit, Element]:
        U = self.units
        if left:
            u1, ab = self.product(a, b)
            u2, out = self.product(ab, c)
        else:
            u1, bc = self.product(b, c)
            u2, out = self.product(a, bc)
        return U.mul(u1, u2), out

    def is_commutative(self) -> bool:
        return all(self.products[(g, h)] == self.products[(h, g)] for g, h in self.products)

    def is_associative(self) -> bool:
        elems = list({g for g, _ in self.products})
        return all(
            self._triple(a, b, c, True) == self._triple(a, b, c, False)
            for a, b, c in itertools.product(elems, repeat=3)
        )

    def is_unital(self) -> bool:
        zero, one = self.grading.zero, self.units.one
        elems = {g for g, _ in self.products}
        return all(self.products[(zero, g)] == (one, g) == self.products[(g, zero)] for g in elems)


def cox_ring_table(f: GFamily, window: Iterable[Element] | None = None) -> CoxRingTable:
    dom = _domain(f, window)
    G = f.grading
    products = {(g, h): (f.value(g, h), G.add(g, h)) for g in dom for h in dom}
    return CoxRingTable(G, f.units, products)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def family_to_json(f: GFamily) -> dict:
    """``{"grading", "units", "cocycle"}``; only entries different from 1 are listed."""
    one = f.units.one
    entries = [
        {"g": list(g), "h": list(h), "value": None if v is None else list(v)}
        for (g, h), v in sorted(f.table.items())
        if v != one
    ]
    return {"grading": f.grading.literal(), "units": f.units.literal(), "cocycle": entries}


def family_from_json(obj: Mapping, check: bool = True) -> GFamily:
    try:
        grading = FgAb.from_literal(obj["grading"])
        units = UnitGroup.from_literal(obj["units"])
        entries = obj.get("cocycle", [])
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed family JSON: {exc}") from None
    if not grading.is_finite():
        raise InputError("JSON families need a finite grading")
    table = {}
    for e in entries:
        try:
            g, h, v = tuple(e["g"]), tuple(e["h"]), e["value"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed cocycle entry {e!r}: {exc}") from None
        if len(g) != grading.num_coordinates or len(h) != grading.num_coordinates:
            raise InputError(f"cocycle entry {e!r} has the wrong number of grading coordinates")
        if v is not None and len(v) != units.lattice.num_coordinates:
            raise InputError(f"cocycle entry {e!r} has the wrong number of unit coordinates")
        table[(g, h)] = None if v is None else tuple(v)
    return GFamily(grading, units, table, check=check)
