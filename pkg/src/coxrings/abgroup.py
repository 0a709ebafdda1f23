"""Finitely generated abelian groups over exact integer arithmetic.

A group is presented as the cokernel of an integer matrix whose columns are
relators. The Smith normal form ``U @ R @ V = D`` is computed once, at
construction, and fixes a canonical coordinate system::

    coker(R) = Z/d_1 + ... + Z/d_k + Z^r,   d_1 | d_2 | ... | d_k,  d_i >= 2

A canonical element is the tuple ``(t_1, ..., t_k, f_1, ..., f_r)`` with
``0 <= t_i < d_i``: torsion residues first, then free coordinates. Two groups
with the same structure share the same set of canonical tuples and the same
addition law on them, so anything stored on canonical tuples (cocycle tables,
unit values) only depends on the isomorphism type.

All arithmetic uses Python integers, so nothing overflows.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import InputError, InvariantViolation, PreconditionError

Element = tuple[int, ...]


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InputError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise InputError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        if not all(type(e) is int for e in self.entries):
            object.__setattr__(self, "entries", tuple(_as_int(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise InputError("cols is required for a matrix with no rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise InputError("ragged matrix rows")
        return cls(len(rows), cols, tuple(_as_int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        columns = [list(c) for c in columns]
        if any(len(c) != rows for c in columns):
            raise InputError("ragged matrix columns")
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows(_identity(n), n)

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix.from_rows(self.columns(), self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        return IntMatrix.from_rows(_matmul(self.tolist(), other.tolist(), other.cols), other.cols)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise InputError(f"vector of length {len(v)} for matrix with {self.cols} columns")
        c = self.cols
        e = self.entries
        return tuple(sum(e[i * c + j] * v[j] for j in range(c)) for i in range(self.rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def hstack(self, *others: IntMatrix) -> IntMatrix:
        mats = (self,) + others
        if any(m.rows != self.rows for m in mats):
            raise InputError("hstack needs equal row counts")
        rows = [sum((list(m.row(i)) for m in mats), []) for i in range(self.rows)]
        return IntMatrix.from_rows(rows, sum(m.cols for m in mats))

    def vstack(self, *others: IntMatrix) -> IntMatrix:
        mats = (self,) + others
        if any(m.cols != self.cols for m in mats):
            raise InputError("vstack needs equal column counts")
        return IntMatrix(sum(m.rows for m in mats), self.cols, sum((m.entries for m in mats), ()))

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise InputError("determinant of a non-square matrix")
        return _bareiss_det(self.tolist())

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.det()) == 1


def block_diag(*mats: IntMatrix) -> IntMatrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            out[r0 + i][c0:c0 + m.cols] = m.row(i)
        r0 += m.rows
        c0 += m.cols
    return IntMatrix.from_rows(out, cols)


def _as_int(x) -> int:
    try:
        return int(x.__index__())
    except AttributeError:
        raise InputError(f"non-integer matrix entry {x!r}") from None


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(a: list[list[int]], b: list[list[int]], bcols: int) -> list[list[int]]:
    bt = list(zip(*b)) if b else [()] * bcols
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    m = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------


class _Reducer:
    """Matrix under elementary operations, tracking both transforms and inverses.

    Maintains ``u @ a0 @ v == a`` and ``u @ ui == 1``, ``v @ vi == 1``.
    """

    def __init__(self, a: list[list[int]], m: int, n: int):
        self.a = [list(r) for r in a]
        self.m, self.n = m, n
        self.u, self.ui = _identity(m), _identity(m)
        self.v, self.vi = _identity(n), _identity(n)

    def row_add(self, i: int, j: int, c: int) -> None:
        """row_i += c * row_j"""
        if c == 0:
            return
        a, u = self.a, self.u
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]
        for r in self.ui:
            r[j] -= c * r[i]

    def row_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        a, u = self.a, self.u
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in self.ui:
            r[i], r[j] = r[j], r[i]

    def row_neg(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]
        for r in self.ui:
            r[i] = -r[i]

    def col_add(self, i: int, j: int, c: int) -> None:
        """col_i += c * col_j"""
        if c == 0:
            return
        for r in self.a:
            r[i] += c * r[j]
        for r in self.v:
            r[i] += c * r[j]
        vi = self.vi
        vi[j] = [x - c * y for x, y in zip(vi[j], vi[i])]

    def col_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        for r in self.a:
            r[i], r[j] = r[j], r[i]
        for r in self.v:
            r[i], r[j] = r[j], r[i]
        vi = self.vi
        vi[i], vi[j] = vi[j], vi[i]


def _snf(a: list[list[int]], m: int, n: int) -> _Reducer:
    red = _Reducer(a, m, n)
    A = red.a
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        red.row_swap(t, best[1])
        red.col_swap(t, best[2])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    red.row_add(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    red.col_add(j, t, -(A[t][j] // p))
            cand = [(abs(A[i][t]), 0, i) for i in range(t + 1, m) if A[i][t]]
            cand += [(abs(A[t][j]), 1, j) for j in range(t + 1, n) if A[t][j]]
            if cand:
                _, kind, k = min(cand)
                if kind == 0:
                    red.row_swap(t, k)
                else:
                    red.col_swap(t, k)
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is not None:
                red.row_add(t, bad, 1)
                continue
            break
        if A[t][t] < 0:
            red.row_neg(t)
        t += 1
    return red


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``d = u @ a @ v``.

    Elementary reduction with the pivot chosen as the entry of least nonzero
    absolute value. ``u`` and ``v`` are unimodular, ``d`` is diagonal with
    non-negative entries and ``d[i, i]`` divides ``d[i + 1, i + 1]``.

    >>> u, d, v = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    >>> d.tolist()
    [[2, 0], [0, 4]]
    """
    red = _snf(a.tolist(), a.rows, a.cols)
    return (
        IntMatrix.from_rows(red.u, a.rows),
        IntMatrix.from_rows(red.a, a.cols),
        IntMatrix.from_rows(red.v, a.cols),
    )


def _hnf_rows(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Row Hermite normal form ``h = t @ rows`` with ``t`` unimodular.

    Pivots are positive and entries above a pivot are reduced into
    ``[0, pivot)``. Zero rows end up at the bottom. Returns ``(h, t, t^-1)``.
    """
    k = len(rows)
    red = _Reducer(rows, k, ncols)
    H = red.a
    r = 0
    for col in range(ncols):
        if r == k:
            break
        while True:
            nz = [i for i in range(r, k) if H[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][col]))
            red.row_swap(r, p)
            clean = True
            for i in range(r + 1, k):
                if H[i][col]:
                    red.row_add(i, r, -(H[i][col] // H[r][col]))
                    if H[i][col]:
                        clean = False
            if clean:
                break
        if H[r][col] == 0:
            continue
        if H[r][col] < 0:
            red.row_neg(r)
        for i in range(r):
            red.row_add(i, r, -(H[i][col] // H[r][col]))
        r += 1
    return H, red.u, red.ui


def lattice_basis(vectors: Iterable[Sequence[int]], dim: int) -> IntMatrix:
    """Basis (as columns) of the lattice spanned by ``vectors`` in ``Z^dim``.

    The basis is the column Hermite normal form of the spanning set, so equal
    lattices give identical bases.
    """
    rows = [list(v) for v in vectors]
    if any(len(v) != dim for v in rows):
        raise InputError("vector length does not match lattice dimension")
    h, _, _ = _hnf_rows(rows, dim)
    basis = [r for r in h if any(r)]
    return IntMatrix.from_columns(basis, dim)


class IntegerSolver:
    """Solves ``a @ x = b`` over the integers for many right-hand sides.

    The Smith form of ``a`` is computed once.
    """

    def __init__(self, a: IntMatrix):
        self.a = a
        red = _snf(a.tolist(), a.rows, a.cols)
        self._u, self._v = red.u, red.v
        self._diag = [red.a[i][i] for i in range(min(a.rows, a.cols))]
        self.rank = sum(1 for d in self._diag if d)

    def solve(self, b: Sequence[int]) -> tuple[int, ...] | None:
        if len(b) != self.a.rows:
            raise InputError("right-hand side has the wrong length")
        c = [sum(x * y for x, y in zip(row, b)) for row in self._u]
        y = [0] * self.a.cols
        for i, ci in enumerate(c):
            if i < self.rank:
                q, rem = divmod(ci, self._diag[i])
                if rem:
                    return None
                y[i] = q
            elif ci:
                return None
        return tuple(sum(x * yy for x, yy in zip(row, y)) for row in self._v)

    def kernel(self) -> IntMatrix:
        cols = [[row[j] for row in self._v] for j in range(self.rank, self.a.cols)]
        return lattice_basis(cols, self.a.cols)


def solve_integer_system(a: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """An integer solution of ``a @ x = b`` or ``None`` if there is none."""
    return IntegerSolver(a).solve(b)


def integer_kernel(a: IntMatrix) -> IntMatrix:
    """Lattice basis (columns) of ``{x in Z^n : a @ x = 0}``."""
    return IntegerSolver(a).kernel()


def matrix_rank(a: IntMatrix) -> int:
    return IntegerSolver(a).rank


# ---------------------------------------------------------------------------
# Finitely generated abelian groups
# ---------------------------------------------------------------------------


class FgAb:
    """The group ``Z^n / (column span of relations)``.

    ``FgAb(2, [[2], [0]])`` is ``Z/2 + Z`` on two generators. Use
    :meth:`canonical` to turn generator coordinates into canonical elements and
    :meth:`lift` for the way back.
    """

    def __init__(self, num_generators: int, relations: IntMatrix | Sequence[Sequence[int]] | None = None):
        if num_generators < 0:
            raise InputError("number of generators must be non-negative")
        if relations is None:
            relations = IntMatrix.zeros(num_generators, 0)
        elif not isinstance(relations, IntMatrix):
            relations = IntMatrix.from_rows(relations, None if num_generators else 0)
        if relations.rows != num_generators:
            raise InputError(
                f"relation matrix has {relations.rows} rows for {num_generators} generators"
            )
        self.num_generators = num_generators
        self.relations = relations

        red = _snf(relations.tolist(), num_generators, relations.cols)
        diag = [red.a[i][i] for i in range(min(num_generators, relations.cols))]
        self._torsion_rows = [i for i, d in enumerate(diag) if d >= 2]
        self._free_rows = [i for i in range(num_generators) if i >= len(diag) or diag[i] == 0]
        self.invariant_factors = tuple(diag[i] for i in self._torsion_rows)
        self.free_rank = len(self._free_rows)

        # Free coordinates: replace the free rows of u by their Hermite form so
        # that the free basis is canonical for the relator lattice.
        u, ui = red.u, red.ui
        if self._free_rows:
            fr = self._free_rows
            h, _, tinv = _hnf_rows([u[i] for i in fr], num_generators)
            for k, i in enumerate(fr):
                u[i] = h[k]
            for row in ui:
                old = [row[i] for i in fr]
                for k, i in enumerate(fr):
                    row[i] = sum(old[j] * tinv[j][k] for j in range(len(fr)))
        self._u, self._ui = u, ui
        self._coord_rows = [u[i] for i in self._torsion_rows + self._free_rows]
        # modulus per canonical coordinate, 0 for free ones
        self._mods = self.invariant_factors + (0,) * self.free_rank
        self._snf = (
            IntMatrix.from_rows(u, num_generators),
            IntMatrix.from_rows(red.a, relations.cols),
            IntMatrix.from_rows(red.v, relations.cols),
        )

    # construction helpers ----------------------------------------------

    @classmethod
    def standard(cls, free_rank: int = 0, invariant_factors: Sequence[int] = ()) -> FgAb:
        """``Z/d_1 + ... + Z/d_k + Z^r`` presented so canonical = generator coordinates.

        ``invariant_factors`` may be any positive integers; they are normalized
        to a divisibility chain first.
        """
        if free_rank < 0 or any(d < 1 for d in invariant_factors):
            raise InputError("free rank must be >= 0 and cyclic orders >= 1")
        factors = tuple(invariant_factors)
        if not _is_chain(factors):
            factors = FgAb(len(factors), IntMatrix.diagonal(factors)).invariant_factors
        k = len(factors)
        return cls(k + free_rank, IntMatrix.diagonal(factors, k + free_rank, k))

    @classmethod
    def free(cls, rank: int) -> FgAb:
        return cls.standard(rank)

    @classmethod
    def cyclic(cls, d: int) -> FgAb:
        """``Z/d``; ``d = 0`` gives ``Z``."""
        return cls.standard(1) if d == 0 else cls.standard(0, (d,))

    @classmethod
    def trivial(cls) -> FgAb:
        return cls(0)

    @classmethod
    def from_literal(cls, text: str) -> FgAb:
        """Parse ``"r;d1,d2,..."`` meaning ``Z^r + Z/d1 + Z/d2 + ...``."""
        text = text.strip()
        if ";" not in text:
            raise InputError(f"group literal {text!r} lacks ';' (expected 'r;d1,d2,...')")
        left, right = text.split(";", 1)
        try:
            r = int(left) if left.strip() else 0
            ds = [int(x) for x in right.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"cannot parse group literal {text!r}") from None
        if r < 0 or any(d < 1 for d in ds):
            raise InputError(f"group literal {text!r}: need r >= 0 and d_i >= 1")
        return cls.standard(r, ds)

    @classmethod
    def direct_sum(cls, *groups: FgAb) -> FgAb:
        return cls(sum(g.num_generators for g in groups), block_diag(*(g.relations for g in groups)))

    def quotient(self, vectors: Iterable[Sequence[int]]) -> FgAb:
        """Quotient by the subgroup generated by ``vectors`` (generator coordinates)."""
        extra = IntMatrix.from_columns([list(v) for v in vectors], self.num_generators)
        return FgAb(self.num_generators, self.relations.hstack(extra))

    def normalized(self) -> FgAb:
        """Isomorphic group in standard presentation."""
        return FgAb.standard(self.free_rank, self.invariant_factors)

    # invariants ----------------------------------------------------------

    @property
    def cached_snf(self) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
        """``(u, d, v)`` with ``d = u @ relations @ v``."""
        return self._snf

    def structure(self) -> tuple[int, tuple[int, ...]]:
        return (self.free_rank, self.invariant_factors)

    def literal(self) -> str:
        return f"{self.free_rank};" + ",".join(map(str, self.invariant_factors))

    @property
    def num_coordinates(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        """Group order, ``None`` if infinite."""
        return math.prod(self.invariant_factors) if self.is_finite() else None

    def exponent(self) -> int | None:
        if not self.is_finite():
            return None
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def isomorphic(self, other: FgAb) -> bool:
        return self.structure() == other.structure()

    # elements --------------------------------------------------------------

    def canonical(self, x: Sequence[int]) -> Element:
        """Canonical element of the class of generator coordinates ``x``."""
        if len(x) != self.num_generators:
            raise InputError(f"expected {self.num_generators} generator coordinates, got {len(x)}")
        k = len(self.invariant_factors)
        out = []
        for idx, row in enumerate(self._coord_rows):
            y = sum(a * b for a, b in zip(row, x))
            out.append(y % self.invariant_factors[idx] if idx < k else y)
        return tuple(out)

    def lift(self, c: Sequence[int]) -> tuple[int, ...]:
        """Generator coordinates of canonical element ``c``."""
        if len(c) != self.num_coordinates:
            raise InputError(f"expected {self.num_coordinates} canonical coordinates, got {len(c)}")
        y = [0] * self.num_generators
        for val, i in zip(c, self._torsion_rows + self._free_rows):
            y[i] = val
        return tuple(sum(a * b for a, b in zip(row, y)) for row in self._ui)

    def reduce(self, c: Sequence[int]) -> Element:
        """Normalize a tuple of canonical coordinates (torsion residues mod ``d_i``)."""
        if len(c) != len(self._mods):
            raise InputError(f"expected {self.num_coordinates} canonical coordinates, got {len(c)}")
        return tuple(int(v) % d if d else int(v) for v, d in zip(c, self._mods))

    def generator(self, j: int) -> Element:
        """Canonical image of the j-th presentation generator."""
        e = [0] * self.num_generators
        e[j] = 1
        return self.canonical(e)

    @cached_property
    def zero(self) -> Element:
        return (0,) * self.num_coordinates

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % d if d else x + y for x, y, d in zip(a, b, self._mods))

    def neg(self, a: Element) -> Element:
        return tuple(-x % d if d else -x for x, d in zip(a, self._mods))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % d if d else x - y for x, y, d in zip(a, b, self._mods))

    def mul(self, n: int, a: Element) -> Element:
        return tuple(n * x % d if d else n * x for x, d in zip(a, self._mods))

    def element_order(self, a: Element) -> int | None:
        k = len(self.invariant_factors)
        if any(a[k:]):
            return None
        return math.lcm(*(d // math.gcd(d, x) for d, x in zip(self.invariant_factors, a[:k])))

    def elements(self) -> Iterator[Element]:
        """All canonical elements in lexicographic order (finite groups only)."""
        if not self.is_finite():
            raise PreconditionError(f"cannot enumerate the infinite group {self.literal()}")
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def contains_vector(self, x: Sequence[int]) -> bool:
        """Whether generator coordinates ``x`` lie in the relator lattice."""
        return self.canonical(x) == self.zero

    # dunder --------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FgAb):
            return NotImplemented
        return self.num_generators == other.num_generators and self.relations == other.relations

    def __hash__(self):
        return hash((self.num_generators, self.relations))

    def __repr__(self):
        return f"FgAb({self.literal()!r}, generators={self.num_generators})"


def _is_chain(factors: Sequence[int]) -> bool:
    return all(d >= 2 for d in factors) and all(b % a == 0 for a, b in zip(factors, factors[1:]))


def structure(g: FgAb) -> tuple[int, tuple[int, ...]]:
    """``(free_rank, invariant_factors)`` of ``g``."""
    return g.structure()


def abelian_groups_of_order(n: int) -> list[FgAb]:
    """All abelian groups of order ``n`` up to isomorphism, in standard form."""
    from sympy import factorint
    from sympy.utilities.iterables import partitions

    if n < 1:
        raise InputError("order must be positive")
    per_prime = []
    for p, e in sorted(factorint(n).items()):
        options = []
        for part in partitions(e):
            powers = sorted((p ** k for k, mult in part.items() for _ in range(mult)), reverse=True)
            options.append(powers)
        per_prime.append(options)
    groups = []
    for combo in itertools.product(*per_prime):
        length = max((len(c) for c in combo), default=0)
        factors = [math.prod(c[i] if i < len(c) else 1 for c in combo) for i in range(length)]
        groups.append(FgAb.standard(0, sorted(factors)))
    return sorted(groups, key=lambda g: g.invariant_factors)


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------


class AbHom:
    """Homomorphism given by an integer matrix on the chosen generators.

    ``matrix`` has shape ``(target.num_generators, source.num_generators)``.
    Well-definedness (relators of the source land in the relator lattice of the
    target) is checked at construction.
    """

    def __init__(self, source: FgAb, target: FgAb, matrix: IntMatrix | Sequence[Sequence[int]]):
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix.from_rows(matrix, source.num_generators)
        if matrix.shape != (target.num_generators, source.num_generators):
            raise InputError(
                f"homomorphism matrix has shape {matrix.shape}, "
                f"expected {(target.num_generators, source.num_generators)}"
            )
        self.source, self.target, self.matrix = source, target, matrix
        for j, rel in enumerate(source.relations.columns()):
            if not target.contains_vector(matrix.apply(rel)):
                raise PreconditionError(f"matrix does not respect source relator {j}")

    @classmethod
    def identity(cls, g: FgAb) -> AbHom:
        return cls(g, g, IntMatrix.identity(g.num_generators))

    @classmethod
    def zero(cls, source: FgAb, target: FgAb) -> AbHom:
        return cls(source, target, IntMatrix.zeros(target.num_generators, source.num_generators))

    @classmethod
    def from_images(cls, source: FgAb, target: FgAb, images: Sequence[Element]) -> AbHom:
        """Homomorphism sending presentation generator j to canonical element ``images[j]``."""
        if len(images) != source.num_generators:
            raise InputError("need one image per source generator")
        cols = [target.lift(target.reduce(c)) for c in images]
        return cls(source, target, IntMatrix.from_columns(cols, target.num_generators))

    def __call__(self, a: Element) -> Element:
        return self.target.canonical(self.matrix.apply(self.source.lift(a)))

    def compose(self, inner: AbHom) -> AbHom:
        """``self o inner``."""
        return AbHom(inner.source, self.target, self.matrix @ inner.matrix)

    @cached_property
    def _solver(self) -> IntegerSolver:
        return IntegerSolver(self.matrix.hstack(self.target.relations))

    def preimage_vector(self, y: Sequence[int]) -> tuple[int, ...] | None:
        """Source generator coordinates ``x`` with ``matrix @ x = y`` modulo target relators."""
        sol = self._solver.solve(y)
        return None if sol is None else sol[:self.source.num_generators]

    def preimage(self, b: Element) -> Element | None:
        """Some canonical source element mapping to ``b``, or ``None``."""
        x = self.preimage_vector(self.target.lift(self.target.reduce(b)))
        return None if x is None else self.source.canonical(x)

    def kernel_lattice(self) -> IntMatrix:
        """Basis of ``{x in Z^n : matrix @ x in relator lattice of target}``."""
        n = self.source.num_generators
        k = self._solver.kernel()
        return lattice_basis([c[:n] for c in k.columns()], n)

    def is_zero(self) -> bool:
        return all(self.target.contains_vector(c) for c in self.matrix.columns())

    def is_injective(self) -> bool:
        return all(self.source.contains_vector(v) for v in self.kernel_lattice().columns())

    def is_surjective(self) -> bool:
        t = self.target
        return all(self.preimage_vector(t.lift(t.generator(j))) is not None for j in range(t.num_generators))

    def image_generators(self) -> list[Element]:
        return [self.target.canonical(c) for c in self.matrix.columns()]

    def __repr__(self):
        return f"AbHom({self.source.literal()} -> {self.target.literal()}, {self.matrix.tolist()})"


def is_short_exact(alpha: AbHom, beta: AbHom) -> bool:
    """Whether ``0 -> H -alpha-> G -beta-> Q -> 0`` is exact."""
    if alpha.target != beta.source:
        return False
    if not beta.compose(alpha).is_zero():
        return False
    if not alpha.is_injective() or not beta.is_surjective():
        return False
    return all(alpha.preimage_vector(v) is not None for v in beta.kernel_lattice().columns())


# ---------------------------------------------------------------------------
# Free resolutions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeResolution:
    """``0 -> K1 -> K0 = Z^n -> G -> 0``.

    ``k1_basis`` holds a basis of ``K1`` as columns in ``Z^n``; ``projection``
    maps the free group ``Z^n`` onto ``G``.
    """

    k1_basis: IntMatrix
    projection: AbHom

    @property
    def k0_rank(self) -> int:
        return self.projection.source.num_generators

    @property
    def k1_rank(self) -> int:
        return self.k1_basis.cols

    @property
    def group(self) -> FgAb:
        return self.projection.target

    def violations(self) -> list[str]:
        out = []
        if self.projection.source.relations.cols and not all(
            not any(c) for c in self.projection.source.relations.columns()
        ):
            out.append("K0 is not free")
        if self.k1_basis.rows != self.k0_rank:
            out.append("K1 basis lives in the wrong ambient lattice")
            return out
        if not all(self.group.contains_vector(self.projection.matrix.apply(c)) for c in self.k1_basis.columns()):
            out.append("composite K1 -> K0 -> G is not zero")
        if matrix_rank(self.k1_basis) != self.k1_rank:
            out.append("K1 -> K0 is not injective")
        if not self.projection.is_surjective():
            out.append("K0 -> G is not surjective")
        if FgAb(self.k0_rank, self.k1_basis).structure() != self.group.structure():
            out.append("coker(K1 -> K0) is not isomorphic to G")
        return out

    def is_exact(self) -> bool:
        return not self.violations()


def free_resolution(g: FgAb) -> FreeResolution:
    """Resolution with ``K0`` the free group on the presentation generators.

    ``K1`` is the relator lattice, given by its column Hermite basis.
    """
    n = g.num_generators
    k1 = lattice_basis(g.relations.columns(), n)
    return FreeResolution(k1, AbHom(FgAb.free(n), g, IntMatrix.identity(n)))


def horseshoe(
    res_h: FreeResolution,
    res_q: FreeResolution,
    ses: tuple[AbHom, AbHom],
    lifts: IntMatrix,
) -> FreeResolution:
    """Combine resolutions of ``H`` and ``G/H`` into one of ``G``.

    ``ses = (alpha, beta)`` is ``0 -> H -> G -> G/H -> 0`` and column j of
    ``lifts`` (in generator coordinates of ``G``) is a preimage under ``beta``
    of the image of the j-th generator of ``K0'``. The result has
    ``K0 + K0'`` mapping by ``(alpha o proj_H, lifts)``; its ``K1`` basis is
    ``(k, 0)`` for ``k`` in ``K1`` followed by ``(-x(k'), k')`` for ``k'`` in
    ``K1'``, where ``x(k')`` resolves ``lifts @ k'`` back through ``H``.
    """
    alpha, beta = ses
    if alpha.source != res_h.group or beta.target != res_q.group:
        raise InputError("resolutions do not match the short exact sequence")
    if not is_short_exact(alpha, beta):
        raise PreconditionError("sequence 0 -> H -> G -> G/H -> 0 is not exact")
    g, q = alpha.target, beta.target
    m, mq = res_h.k0_rank, res_q.k0_rank
    if lifts.shape != (g.num_generators, mq):
        raise InputError(f"lifts must have shape {(g.num_generators, mq)}")
    for j, col in enumerate(lifts.columns()):
        want = q.canonical(res_q.projection.matrix.col(j))
        if q.canonical(beta.matrix.apply(col)) != want:
            raise PreconditionError(f"lift {j} is not a preimage of its generator")

    proj = (alpha.matrix @ res_h.projection.matrix).hstack(lifts)
    k1_cols = [tuple(c) + (0,) * mq for c in res_h.k1_basis.columns()]
    for kq in res_q.k1_basis.columns():
        y = lifts.apply(kq)
        x_h = alpha.preimage_vector(y)
        if x_h is None:
            raise InvariantViolation("lift of a K1' element does not come from H")
        x = res_h.projection.preimage_vector(x_h)
        if x is None:
            raise InvariantViolation("K0 does not surject onto H")
        k1_cols.append(tuple(-v for v in x) + tuple(kq))
    k1 = IntMatrix.from_columns(k1_cols, m + mq)
    res = FreeResolution(k1, AbHom(FgAb.free(m + mq), g, proj))
    bad = res.violations()
    if bad:
        raise InvariantViolation("horseshoe resolution is not exact: " + "; ".join(bad))
    return res


# ---------------------------------------------------------------------------
# Hom and Ext
# ---------------------------------------------------------------------------


def _torsion_part(a: FgAb, d: int) -> list[int]:
    """Cyclic orders of ``A[d]``, the d-torsion of ``A``."""
    return [math.gcd(d, e) for e in a.invariant_factors]


def hom_group(g: FgAb, a: FgAb) -> FgAb:
    """``Hom(g, a)`` computed factor-wise: ``A^r + sum_i A[d_i]``."""
    free = g.free_rank * a.free_rank
    cyclic = list(a.invariant_factors) * g.free_rank
    for d in g.invariant_factors:
        cyclic += _torsion_part(a, d)
    return FgAb.standard(free, [c for c in cyclic if c > 1])


def ext1(g: FgAb, a: FgAb) -> FgAb:
    """``Ext^1(g, a)`` computed factor-wise: ``sum_i A / d_i A``."""
    cyclic = []
    for d in g.invariant_factors:
        cyclic += [d] * a.free_rank
        cyclic += _torsion_part(a, d)
    return FgAb.standard(0, [c for c in cyclic if c > 1])
