"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from math import comb
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coxrings.abgroup import AbHom, FgAb, IntMatrix, ext1, free_resolution, hom_group, smith_normal_form  # noqa: E402
from coxrings.families import (  # noqa: E402
    GFamily,
    classify,
    cocycle_class,
    extend_family,
    find_isomorphism,
    induce_quotient_family,
    restrict_family,
    trivialize_free_family,
    validate_family,
)
from coxrings.toricdiv import (  # noqa: E402
    DivisorialPresentation,
    ToricPresentation,
    cox_piece_dimension,
    monomial_piece_dimension,
)
from coxrings.units import UnitGroup, ext1_units  # noqa: E402
from helpers import embedding, fgab, profile, units  # noqa: E402
from oracles import (  # noqa: E402
    cokernel_structure,
    count_cocycle_classes,
    divisible_hull_class_count,
    generators_of,
    groups_up_to,
    hom_ext_profiles,
    random_unimodular,
    subgroups,
)

DIV = UnitGroup.divisible_only()
LAURENT = UnitGroup.from_literal("div*1;")
P2 = ToricPresentation(((1, 0), (0, 1), (-1, -1)))
P1P1 = ToricPresentation(((1, 0), (-1, 0), (0, 1), (0, -1)))
P112 = ToricPresentation(((1, 0), (0, 1), (-1, -2)))


def report(n: int, ok: bool, detail: str, seconds: float, budget: float | None = None) -> bool:
    within = budget is None or seconds <= budget
    status = "PASS" if ok and within else "FAIL"
    limit = f" (budget {budget:.0f}s)" if budget is not None else ""
    print(f"[{status}] criterion {n}: {detail}; {seconds:.2f}s{limit}", flush=True)
    return ok and within


@pytest.fixture
def emit(capsys):
    def _emit(*args, **kwargs):
        with capsys.disabled():
            print()
            return report(*args, **kwargs)

    return _emit


# 1 -------------------------------------------------------------------------


def criterion_1(out=report):
    t0 = time.perf_counter()
    grid = groups_up_to(8)
    mismatches, cases = [], 0
    for g in grid:
        for u in grid:
            rep = classify(fgab(g), units(u))
            brute = count_cocycle_classes(g, u)
            closed = ext1_units(fgab(g), units(u)).order()
            cases += 1
            if not (rep.count == brute == closed):
                mismatches.append((g, u, rep.count, brute, closed))
        rep = classify(fgab(g), DIV)
        brute = divisible_hull_class_count(g)
        cases += 1
        if not (rep.count == brute == 1):
            mismatches.append((g, "div", rep.count, brute, 1))
    dt = time.perf_counter() - t0
    ok = out(1, not mismatches, f"classify = brute force = |Ext^1| on {cases} (G, U) pairs, {len(mismatches)} mismatches", dt, 60)
    return ok, mismatches


# 2 -------------------------------------------------------------------------


def _window(rank, radius):
    return list(itertools.product(range(-radius, radius + 1), repeat=rank))


def _free_cocycles(rank):
    """Valid cocycles on Z^rank: bilinear forms, and classes of finite quotients pulled back."""
    G = FgAb.free(rank)
    U6 = UnitGroup.from_literal("0;6")
    yield GFamily(G, U6, function=lambda a, b: (sum((i + 1) * x * y for i, (x, y) in enumerate(zip(a, b))),), check=False)
    for n, ulit in [(2, "0;4"), (3, "div*1;"), (4, "0;2,4")]:
        U = UnitGroup.from_literal(ulit)
        Q = FgAb.cyclic(n)
        for f in classify(Q, U).representatives:
            yield GFamily(G, U, function=lambda a, b, f=f, n=n: f.value((a[0] % n,), (b[0] % n,)), check=False)


def criterion_2(out=report):
    t0 = time.perf_counter()
    failures = []
    # free grading: Ext vanishes
    for r in range(1, 4):
        for u in groups_up_to(8):
            for U in (units(u), UnitGroup(True, fgab(u)), UnitGroup(False, FgAb.standard(1, u))):
                if ext1_units(FgAb.free(r), U).order() != 1:
                    failures.append(("ext", r, U.literal()))
    # free grading: explicit trivialization on windows
    solved = 0
    for rank in (1, 2):
        window = _window(rank, 3 if rank == 1 else 2)
        for f in _free_cocycles(rank):
            if validate_family(f, window):
                failures.append(("invalid test cocycle", rank))
                continue
            iso = trivialize_free_family(f, window)
            if not iso.transports(f, GFamily.trivial(f.grading, f.units), window):
                failures.append(("window", rank, f.units.literal()))
            solved += 1
    # divisible units
    for g in groups_up_to(16):
        if classify(fgab(g), DIV).count != 1:
            failures.append(("div", g))
    dt = time.perf_counter() - t0
    ok = out(2, not failures, f"one class for free G ({solved} window trivializations) and divisible U; {len(failures)} failures", dt, 5)
    return ok, failures


# 3 -------------------------------------------------------------------------


def criterion_3(out=report):
    t0 = time.perf_counter()
    counts = {}
    for d in (2, 3, 4, 6):
        rep = classify(FgAb.cyclic(d), LAURENT)
        labels = {cocycle_class(f) for f in rep.representatives}
        distinct = all(
            find_isomorphism(a, b) is None for a, b in itertools.combinations(rep.representatives, 2)
        )
        counts[d] = (rep.count, len(labels), distinct)
    dt = time.perf_counter() - t0
    ok = all(c == (d, d, True) for d, c in counts.items())
    out(3, ok, "classes for Z/d with units k^* x Z: " + ", ".join(f"d={d}: {c[0]}" for d, c in counts.items()), dt, 10)
    return ok, counts


# 4 -------------------------------------------------------------------------


def _p112_count(d):
    return sum(d - 2 * c + 1 for c in range(d // 2 + 1)) if d >= 0 else 0


def criterion_4(out=report):
    t0 = time.perf_counter()
    bad = []
    rng = range(-10, 11)
    p = DivisorialPresentation.standard(P2)
    for d in rng:
        want = comb(d + 2, 2) if d >= 0 else 0
        got = (cox_piece_dimension(p, (d,)), monomial_piece_dimension(P2, (d,)))
        if got != (want, want):
            bad.append(("P2", d, got, want))
    p = DivisorialPresentation.standard(P1P1)
    for a, b in itertools.product(rng, repeat=2):
        want = (a + 1) * (b + 1) if a >= 0 and b >= 0 else 0
        got = (cox_piece_dimension(p, (a, b)), monomial_piece_dimension(P1P1, (a, b)))
        if got != (want, want):
            bad.append(("P1xP1", (a, b), got, want))
    p = DivisorialPresentation.standard(P112)
    for d in rng:
        want = _p112_count(d)
        got = (cox_piece_dimension(p, (d,)), monomial_piece_dimension(P112, (d,)))
        if got != (want, want):
            bad.append(("P(1,1,2)", d, got, want))
    dt = time.perf_counter() - t0
    n = 21 + 21 * 21 + 21
    ok = out(4, not bad, f"Cox piece = monomial count on {n} classes of P^2, P^1xP^1, P(1,1,2); {len(bad)} mismatches", dt, 30)
    return ok, bad


# 5 -------------------------------------------------------------------------


def _preimages(p: DivisorialPresentation, c):
    base = p.preimage(c)
    basis = p.k1_basis.columns()
    out = {base}
    for coeffs in itertools.product(range(-1, 2), repeat=len(basis)):
        x = list(base)
        for k, b in zip(coeffs, basis):
            x = [xi + k * bi for xi, bi in zip(x, b)]
        out.add(tuple(x))
    return sorted(out)


def criterion_5(out=report):
    t0 = time.perf_counter()
    presentations = [
        ("P2", DivisorialPresentation.standard(P2), [(d,) for d in range(0, 11)]),
        ("P2 on Z^4", DivisorialPresentation(P2, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1))), [(d,) for d in range(0, 11)]),
        ("P1xP1", DivisorialPresentation.standard(P1P1), list(itertools.product(range(0, 11), repeat=2))),
        ("P(1,1,2)", DivisorialPresentation.standard(P112), [(d,) for d in range(0, 11)]),
    ]
    bad, checked, min_pre = [], 0, None
    for name, p, classes in presentations:
        for c in classes:
            pre = _preimages(p, c)
            min_pre = len(pre) if min_pre is None else min(min_pre, len(pre))
            dims = {cox_piece_dimension(p, c, preimage=k) for k in pre}
            checked += 1
            if len(pre) < 3 or len(dims) != 1:
                bad.append((name, c, len(pre), dims))
    dt = time.perf_counter() - t0
    ok = out(5, not bad, f"{checked} classes, >= {min_pre} K0 preimages each, dimension independent; {len(bad)} failures", dt)
    return ok, bad


# 6 -------------------------------------------------------------------------


def criterion_6(out=report):
    t0 = time.perf_counter()
    rng = random.Random(20240607)
    bad = []
    for i in range(1000):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        a = IntMatrix.from_rows([[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)], n)
        u, d, v = smith_normal_form(a)
        diag = [d[j, j] for j in range(min(m, n))]
        nz = [x for x in diag if x]
        good = (
            u @ a @ v == d
            and u.is_unimodular()
            and v.is_unimodular()
            and d.is_diagonal()
            and all(x >= 0 for x in diag)
            and diag[:len(nz)] == nz
            and all(y % x == 0 for x, y in zip(nz, nz[1:]))
        )
        if not good:
            bad.append(("snf", a.tolist()))
    for i in range(200):
        m, k = rng.randint(1, 4), rng.randint(0, 5)
        rel = [[rng.randint(-6, 6) for _ in range(k)] for _ in range(m)]
        g = FgAb(m, IntMatrix.from_rows(rel, k))
        res = free_resolution(g)
        rows = res.k1_basis.tolist() if res.k1_rank else [[0]] * m
        oracle = cokernel_structure(rel if k else [[0]] * m, m)
        if not (res.is_exact() and cokernel_structure(rows, m) == oracle == g.structure()):
            bad.append(("resolution", rel))
    dt = time.perf_counter() - t0
    ok = out(6, not bad, f"1000 Smith forms and 200 resolutions checked; {len(bad)} failures", dt, 60)
    return ok, bad


# 7 -------------------------------------------------------------------------


def _sections(G: FgAb, Q: FgAb, rng: random.Random):
    beta = AbHom(G, Q, IntMatrix.identity(G.num_generators))
    cosets = {}
    for g in G.elements():
        cosets.setdefault(beta(g), []).append(g)
    out = []
    for _ in range(2):
        s = {c: (G.zero if c == Q.zero else rng.choice(reps)) for c, reps in cosets.items()}
        out.append(s)
    return out


def criterion_7(out=report):
    t0 = time.perf_counter()
    rng = random.Random(7)
    bad = []
    extended = quotients = 0
    for g in groups_up_to(8):
        for sub in subgroups(g):
            alpha = embedding(g, generators_of(g, sub))
            H, G = alpha.source, alpha.target
            for u in groups_up_to(6):
                U = units(u)
                for f in classify(H, U).representatives:
                    ext = extend_family(f, alpha)
                    extended += 1
                    if validate_family(ext) or find_isomorphism(restrict_family(ext, alpha), f) is None:
                        bad.append(("extend", g, sorted(sub), u))
                for f in classify(G, U).representatives:
                    iso = find_isomorphism(restrict_family(f, alpha), GFamily.trivial(H, U))
                    if iso is None:
                        continue
                    triv = {h: U.inv(iso.mu.get(h, U.one)) for h in H.elements()}
                    q0 = induce_quotient_family(f, alpha, triv)
                    if validate_family(q0):
                        bad.append(("quotient invalid", g, sorted(sub), u))
                        continue
                    for s in _sections(G, q0.grading, rng):
                        q1 = induce_quotient_family(f, alpha, triv, section=s)
                        quotients += 1
                        if find_isomorphism(q0, q1) is None:
                            bad.append(("section", g, sorted(sub), u))
    dt = time.perf_counter() - t0
    ok = out(7, not bad, f"{extended} extend/restrict round trips, {quotients} section swaps; {len(bad)} failures", dt)
    return ok, bad


# 8 -------------------------------------------------------------------------


def criterion_8(out=report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    grid = groups_up_to(16)
    bad = []
    for a in grid:
        n = max(len(a), 1)
        diag = np.diag(list(a) or [1]).astype(np.int64)
        rel = random_unimodular(n, rng) @ diag @ random_unimodular(n, rng)
        A = FgAb(n, IntMatrix.from_rows(rel.tolist(), n))
        for b in grid:
            hom, ext = hom_ext_profiles(rel, b)
            if profile(hom_group(A, fgab(b))) != hom or profile(ext1(A, fgab(b))) != ext:
                bad.append((a, b))
    dt = time.perf_counter() - t0
    ok = out(8, not bad, f"Hom and Ext match enumeration on {len(grid) ** 2} pairs of order <= 16; {len(bad)} mismatches", dt, 60)
    return ok, bad


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("n", range(1, 9))
def test_criterion(n, emit):
    ok, detail = CRITERIA[n - 1](out=emit)
    assert ok, detail[:5] if isinstance(detail, list) else detail


if __name__ == "__main__":
    results = [c()[0] for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
