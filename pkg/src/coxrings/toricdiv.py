"""Divisorial Cox construction on complete toric presentations.

A toric variety is given by its rays ``u_rho`` in ``Z^n``. Torus-invariant
prime divisors ``D_rho`` generate ``WDiv``, characters ``chi^m`` have
``div(chi^m) = sum <m, u_rho> D_rho`` and ``Cl = coker(M)`` with ``M`` the
``rays x n`` matrix of pairings. Global sections of ``O(D)``, ``D = sum a_rho
D_rho``, have the basis ``{chi^m : <m, u_rho> >= -a_rho}``.

Everything here is exact: vertices are rational solutions of tight
subsystems, lattice points are filtered with integer arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .abgroup import AbHom, Element, FgAb, IntegerSolver, IntMatrix, matrix_rank
from .errors import InputError, PreconditionError

CharacterFunction = tuple[int, ...]
WeilDivisor = tuple[int, ...]


def _solve_rational(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction] | None:
    """Unique solution of a square system over Q, ``None`` if singular."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return None
        a[c], a[p] = a[p], a[c]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][n] / a[i][i] for i in range(n)]


@dataclass(frozen=True)
class ToricPresentation:
    """Rays of a complete fan, one primitive vector per row; order is preserved."""

    rays: tuple[tuple[int, ...], ...]
    complete: bool = True

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        object.__setattr__(self, "rays", rays)
        if not rays:
            raise InputError("need at least one ray")
        n = len(rays[0])
        if any(len(r) != n for r in rays):
            raise InputError("rays have different dimensions")
        for r in rays:
            if not any(r):
                raise InputError("zero ray")
            if math.gcd(*r) != 1:
                raise InputError(f"ray {r} is not primitive")
        if matrix_rank(self.matrix) != n:
            raise PreconditionError("rays do not span the lattice over Q")

    @classmethod
    def from_json(cls, obj) -> ToricPresentation:
        try:
            return cls(tuple(map(tuple, obj["rays"])), bool(obj.get("complete", True)))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed toric JSON: {exc}") from None

    def to_json(self) -> dict:
        return {"rays": [list(r) for r in self.rays], "complete": self.complete}

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    @property
    def num_rays(self) -> int:
        return len(self.rays)

    @cached_property
    def matrix(self) -> IntMatrix:
        """The character matrix ``m -> (<m, u_rho>)_rho``."""
        return IntMatrix.from_rows(self.rays)

    @cached_property
    def class_group(self) -> FgAb:
        return FgAb(self.num_rays, self.matrix)

    def divisor_class(self, d: Sequence[int]) -> Element:
        return self.class_group.canonical(self._divisor(d))

    def _divisor(self, d: Sequence[int]) -> WeilDivisor:
        d = tuple(int(x) for x in d)
        if len(d) != self.num_rays:
            raise InputError(f"divisor needs {self.num_rays} coefficients, got {len(d)}")
        return d

    @cached_property
    def positive_relation(self) -> tuple[int, ...] | None:
        """Integer ``w > 0`` with ``sum_rho w_rho u_rho = 0``, if the rays positively span.

        For each ray, ``-u_rho`` is written as a non-negative combination of
        ``dim`` linearly independent rays (a basic solution); summing these
        relations gives a strictly positive one.
        """
        n, rays = self.dim, self.rays
        total = [Fraction(0)] * self.num_rays
        for rho, u in enumerate(rays):
            found = None
            for subset in itertools.combinations(range(self.num_rays), n):
                cols = [rays[s] for s in subset]
                a = [[cols[j][i] for j in range(n)] for i in range(n)]
                sol = _solve_rational(a, [-x for x in u])
                if sol is not None and all(c >= 0 for c in sol):
                    found = (subset, sol)
                    break
            if found is None:
                return None
            total[rho] += 1
            for s, c in zip(*found):
                total[s] += c
        scale = math.lcm(*(x.denominator for x in total))
        w = tuple(int(x * scale) for x in total)
        g = math.gcd(*w)
        return tuple(x // g for x in w)


def class_group(t: ToricPresentation) -> tuple[FgAb, AbHom]:
    """``Cl`` as the cokernel of the character matrix, with ``Z^rays -> Cl``."""
    cl = t.class_group
    return cl, AbHom(FgAb.free(t.num_rays), cl, IntMatrix.identity(t.num_rays))


def principal_divisor(t: ToricPresentation, m: Sequence[int]) -> WeilDivisor:
    if len(m) != t.dim:
        raise InputError(f"character needs {t.dim} coordinates")
    return t.matrix.apply(tuple(m))


def _vertices(t: ToricPresentation, d: WeilDivisor) -> list[tuple[Fraction, ...]]:
    n = t.dim
    out = []
    for subset in itertools.combinations(range(t.num_rays), n):
        sol = _solve_rational([t.rays[s] for s in subset], [-d[s] for s in subset])
        if sol is None:
            continue
        if all(sum(Fraction(a) * x for a, x in zip(u, sol)) >= -a_rho for u, a_rho in zip(t.rays, d)):
            out.append(tuple(sol))
    return out


def section_basis(t: ToricPresentation, d: Sequence[int]) -> list[CharacterFunction]:
    """Exponents ``m`` with ``<m, u_rho> >= -a_rho`` for all rays, sorted.

    The bounding box comes from the exact vertices of the polyhedron.
    """
    d = t._divisor(d)
    if t.positive_relation is None:
        raise PreconditionError("section polyhedron is unbounded: rays do not positively span")
    verts = _vertices(t, d)
    if not verts:
        return []
    lo = [math.ceil(min(v[i] for v in verts)) for i in range(t.dim)]
    hi = [math.floor(max(v[i] for v in verts)) for i in range(t.dim)]
    pts = []
    for m in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(sum(x * y for x, y in zip(u, m)) >= -a for u, a in zip(t.rays, d)):
            pts.append(m)
    return pts


def monomial_piece_dimension(t: ToricPresentation, c: Element) -> int:
    """Number of exponent vectors ``a >= 0`` on the ray variables with class ``c``.

    A strictly positive relation ``w`` is a linear form on ``Cl`` that is
    positive on every variable, so the fiber is cut out by the weighted degree
    ``w . a = w(c)`` and enumerated directly.
    """
    cl = t.class_group
    c = cl.reduce(c)
    w = t.positive_relation
    if w is None:
        raise PreconditionError("fiber of monomials is infinite: rays do not positively span")
    target = sum(x * y for x, y in zip(w, cl.lift(c)))
    if target < 0:
        return 0
    count = 0

    def rec(i: int, left: int, acc: list[int]):
        nonlocal count
        if i == len(w) - 1:
            if left % w[i] == 0:
                a = acc + [left // w[i]]
                if cl.canonical(a) == c:
                    count += 1
            return
        for k in range(left // w[i] + 1):
            rec(i + 1, left - k * w[i], acc + [k])

    rec(0, target, [])
    return count


@dataclass(frozen=True)
class DivisorialPresentation:
    """A surjection ``K0 = Z^k -> Cl`` lifted to Weil divisors ``E``.

    ``lift[i]`` is the divisor ``E_{e_i}``, and ``E_k = sum_i k_i lift[i]``.
    """

    toric: ToricPresentation
    lift: tuple[WeilDivisor, ...]

    def __post_init__(self):
        lift = tuple(self.toric._divisor(d) for d in self.lift)
        object.__setattr__(self, "lift", lift)
        if not self.class_map.is_surjective():
            raise PreconditionError("K0 -> Cl is not surjective")

    @classmethod
    def standard(cls, t: ToricPresentation) -> DivisorialPresentation:
        """``K0 = Z^rays`` with ``E_k = sum k_rho D_rho``."""
        return cls(t, tuple(tuple(int(i == j) for i in range(t.num_rays)) for j in range(t.num_rays)))

    @property
    def k0_rank(self) -> int:
        return len(self.lift)

    @cached_property
    def lift_matrix(self) -> IntMatrix:
        """``rays x k0_rank`` matrix with ``E_k = lift_matrix @ k``."""
        return IntMatrix.from_columns(self.lift, self.toric.num_rays)

    @cached_property
    def class_map(self) -> AbHom:
        t = self.toric
        return AbHom(FgAb.free(self.k0_rank), t.class_group, self.lift_matrix)

    def divisor(self, k: Sequence[int]) -> WeilDivisor:
        if len(k) != self.k0_rank:
            raise InputError(f"K0 element needs {self.k0_rank} coordinates")
        return self.lift_matrix.apply(tuple(k))

    def class_of(self, k: Sequence[int]) -> Element:
        return self.class_map(tuple(k))

    @cached_property
    def k1_basis(self) -> IntMatrix:
        """Basis (columns) of ``K1 = ker(K0 -> Cl)``."""
        return self.class_map.kernel_lattice()

    def preimage(self, c: Element) -> tuple[int, ...]:
        """Deterministic ``k`` with ``pi(k) = c``.

        The solver's particular solution is reduced against the Hermite basis
        of ``K1`` so the output only depends on ``c``.
        """
        cl = self.toric.class_group
        x = self.class_map.preimage_vector(cl.lift(cl.reduce(c)))
        if x is None:
            raise PreconditionError(f"class {c} has no preimage in K0")
        return _size_reduce(x, self.k1_basis)


def _size_reduce(x: Sequence[int], basis: IntMatrix) -> tuple[int, ...]:
    x = list(x)
    for col in basis.columns():
        piv = next((i for i, v in enumerate(col) if v), None)
        if piv is None:
            continue
        q = x[piv] // col[piv]
        x = [a - q * b for a, b in zip(x, col)]
    return tuple(x)


def cox_piece_dimension(p: DivisorialPresentation, c: Element, preimage: Sequence[int] | None = None) -> int:
    """``dim`` of the Cox sheaf piece at class ``c``, via ``O(E_k)`` for a ``k`` over ``c``."""
    if preimage is None:
        k = p.preimage(c)
    else:
        k = tuple(preimage)
        if p.class_of(k) != p.toric.class_group.reduce(c):
            raise PreconditionError(f"{k} does not map to class {c}")
    return len(section_basis(p.toric, p.divisor(k)))


def trivialization_check(
    p: DivisorialPresentation,
    k1_basis: IntMatrix,
    zeta: Sequence[Sequence[int]],
) -> bool:
    """Whether ``div(zeta_i) = E_{k_i}`` for every basis vector ``k_i`` of ``K1``."""
    if k1_basis.rows != p.k0_rank:
        raise InputError(f"K1 basis must live in Z^{p.k0_rank}")
    if len(zeta) != k1_basis.cols:
        raise InputError("need one character per K1 basis vector")
    for k in k1_basis.columns():
        if p.class_of(k) != p.toric.class_group.zero:
            raise PreconditionError(f"{k} is not in the kernel of K0 -> Cl")
    return all(principal_divisor(p.toric, m) == p.divisor(k) for k, m in zip(k1_basis.columns(), zeta))


def find_trivialization(p: DivisorialPresentation, k1_basis: IntMatrix | None = None) -> list[CharacterFunction]:
    """Characters ``zeta_i`` with ``div(zeta_i) = E_{k_i}``; unique since ``M`` is injective."""
    k1_basis = p.k1_basis if k1_basis is None else k1_basis
    solver = IntegerSolver(p.toric.matrix)
    out = []
    for k in k1_basis.columns():
        m = solver.solve(p.divisor(k))
        if m is None:
            raise PreconditionError(f"E_{k} is not principal")
        out.append(m)
    return out


@dataclass(frozen=True)
class PieceRow:
    k: tuple[int, ...]
    cls: Element
    dim: int
    cox_dim: int


def divisorial_algebra_report(p: DivisorialPresentation, window: Iterable[Sequence[int]]) -> list[PieceRow]:
    """``dim S_k = |sections of O(E_k)|`` next to the Cox piece at ``pi(k)``."""
    rows = []
    for k in window:
        k = tuple(k)
        c = p.class_of(k)
        rows.append(PieceRow(k, c, len(section_basis(p.toric, p.divisor(k))), cox_piece_dimension(p, c)))
    return rows


def degree_window(k0_rank: int, max_degree: int) -> list[tuple[int, ...]]:
    """Non-negative ``k`` with ``sum(k) <= max_degree``."""
    return [k for k in itertools.product(range(max_degree + 1), repeat=k0_rank) if sum(k) <= max_degree]

