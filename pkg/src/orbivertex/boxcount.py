"""Brute-force oracle: count 3D partitions with prescribed legs box by box.

A 3D partition asymptotic to (lam, mu, nu) is a height function h on the
(i, j) plane: h = infinity on the cells of nu, h weakly decreasing in i and
in j, and h(i, j) >= base(i, j) = max(lam'_j, mu_i) with equality for all but
finitely many cells.  Boxes above the legs (k >= base) are "extra" and carry
xi = 1; boxes in two or three legs carry xi = -1 or -2 and give a constant
shift.  Enumeration runs over the finitely many cells that can afford an
extra box inside the degree budget.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from math import inf

from .partitions import Partition, conjugate
from .series import INF, Series, Var, VarRegistry, vertex_registry


class RegionError(ValueError):
    pass


@dataclass(frozen=True)
class GColoring:
    """Characters r1, r2, r3 of G = prod Z_{orders[i]}; box (i,j,k) has color i*r1 + j*r2 + k*r3."""

    orders: tuple[int, ...]
    r1: tuple[int, ...]
    r2: tuple[int, ...]
    r3: tuple[int, ...]

    def __post_init__(self):
        for r in (self.r1, self.r2, self.r3):
            if len(r) != len(self.orders):
                raise ValueError("weights must have one entry per cyclic factor")
        if not self.calabi_yau():
            raise ValueError(f"r1 + r2 + r3 must vanish in G, got {self}")

    @classmethod
    def zn(cls, n: int) -> "GColoring":
        """Z_n acting with weights (1, -1, 0): color (i - j) mod n."""
        return cls((n,), (1 % n,), ((-1) % n,), (0,))

    def calabi_yau(self) -> bool:
        return all((a + b + c) % m == 0 for a, b, c, m in zip(self.r1, self.r2, self.r3, self.orders))

    def elements(self) -> list[tuple[int, ...]]:
        return [tuple(x) for x in iproduct(*(range(m) for m in self.orders))]

    def color(self, i: int, j: int, k: int) -> tuple[int, ...]:
        return tuple((i * a + j * b + k * c) % m
                     for a, b, c, m in zip(self.r1, self.r2, self.r3, self.orders))

    def registry(self) -> VarRegistry:
        if len(self.orders) == 1:
            return vertex_registry(self.orders[0])
        return VarRegistry(tuple(Var("q" + "_".join(map(str, r))) for r in self.elements()))

    def index(self, r: tuple[int, ...]) -> int:
        idx = 0
        for x, m in zip(r, self.orders):
            idx = idx * m + x
        return idx


def _legs(legs):
    return tuple(Partition(p) for p in legs)


def leg_count(legs, box) -> int:
    lam, mu, nu = legs
    i, j, k = box
    return int(j < lam.part(k)) + int(k < mu.part(i)) + int(i < nu.part(j))


def _extent(legs) -> tuple[int, int, int]:
    """A box [0,X) x [0,Y) x [0,Z) containing every box that lies in two legs."""
    lam, mu, nu = legs
    X = max(len(mu), nu.part(0))
    Y = max(lam.part(0), len(nu))
    Z = max(len(lam), mu.part(0))
    return X, Y, Z


@dataclass(frozen=True)
class PlanePartitionRegion:
    """A 3D partition given by its boxes inside [0, bound)^3 plus its legs."""

    legs: tuple[Partition, Partition, Partition]
    boxes: frozenset
    bound: int

    def __post_init__(self):
        object.__setattr__(self, "legs", _legs(self.legs))
        object.__setattr__(self, "boxes", frozenset(tuple(b) for b in self.boxes))
        B = self.bound
        for (i, j, k) in self.boxes:
            if not (0 <= i < B and 0 <= j < B and 0 <= k < B):
                raise RegionError(f"box {(i, j, k)} outside the bounding region")

    def contains(self, box) -> bool:
        i, j, k = box
        B = self.bound
        if 0 <= i < B and 0 <= j < B and 0 <= k < B:
            return tuple(box) in self.boxes
        return leg_count(self.legs, box) > 0

    def check_stacking(self) -> bool:
        for (i, j, k) in self.boxes:
            for nb in ((i - 1, j, k), (i, j - 1, k), (i, j, k - 1)):
                if min(nb) >= 0 and not self.contains(nb):
                    return False
        B = self.bound
        for box in iproduct(range(B), repeat=3):
            if leg_count(self.legs, box) and box not in self.boxes:
                # legs must be present inside the region as well
                return False
        return True

    @classmethod
    def minimal(cls, legs, bound: int) -> "PlanePartitionRegion":
        legs = _legs(legs)
        boxes = [b for b in iproduct(range(bound), repeat=3) if leg_count(legs, b)]
        return cls(legs, frozenset(boxes), bound)


def xi(pi: PlanePartitionRegion, box) -> int:
    if not pi.contains(box):
        raise RegionError(f"box {box} is not in the partition")
    return 1 - leg_count(pi.legs, box)


def colored_volume(pi: PlanePartitionRegion, col: GColoring) -> dict:
    """|pi|_r for every character r (renormalized, possibly negative)."""
    X, Y, Z = _extent(pi.legs)
    if pi.bound < max(X, Y, Z):
        raise RegionError("bounding region does not enclose the leg intersections")
    out = {r: 0 for r in col.elements()}
    for box in pi.boxes:
        out[col.color(*box)] += xi(pi, box)
    return out


# ---------------------------------------------------------------- enumeration


def _overlap_shift(legs, col: GColoring) -> list[int]:
    """Colored sum of (1 - #legs) over the boxes lying in two or three legs."""
    X, Y, Z = _extent(legs)
    out = [0] * len(col.elements())
    for box in iproduct(range(X), range(Y), range(Z)):
        c = leg_count(legs, box)
        if c >= 2:
            out[col.index(col.color(*box))] += 1 - c
    return out


def _base(legs):
    lam, mu, nu = legs
    lamc = conjugate(lam)

    def base(i, j):
        return max(lamc.part(j), mu.part(i))
    return base


def _raise_cost(legs, i, j) -> int:
    """Fewest extra boxes needed before cell (i, j) can hold one extra box."""
    nu = legs[2]
    base = _base(legs)
    target = base(i, j) + 1
    cost = 0
    for jj in range(j + 1):
        for ii in range(i + 1):
            if ii < nu.part(jj):
                continue
            cost += max(0, target - base(ii, jj))
    return cost


@lru_cache(maxsize=256)
def enumerate_configs(legs, budget: int, bound: int) -> tuple:
    """All height functions with at most `budget` extra boxes, inside [0, bound)^2.

    Each configuration is a tuple of (i, j, lo, hi): cell (i, j) holds the
    extra boxes lo <= k < hi.
    """
    legs = _legs(legs)
    nu = legs[2]
    base = _base(legs)
    cells = [(i, j) for j in range(bound) for i in range(bound)
             if i >= nu.part(j) and _raise_cost(legs, i, j) <= budget]
    heights: dict = {}

    def h(i, j):
        if i < 0 or j < 0:
            return inf
        if i < nu.part(j):
            return inf
        return heights.get((i, j), base(i, j))

    results = []
    extras: list = []
    ncells = len(cells)

    def rec(idx, left):
        if idx == ncells or left == 0:
            results.append(tuple(extras))
            return
        i, j = cells[idx]
        b = base(i, j)
        top = min(h(i - 1, j), h(i, j - 1), b + left)
        rec(idx + 1, left)
        v = b + 1
        while v <= top:
            heights[(i, j)] = v
            extras.append((i, j, b, v))
            rec(idx + 1, left - (v - b))
            extras.pop()
            v += 1
        heights.pop((i, j), None)

    if budget >= 0:
        rec(0, budget)
    return tuple(results)


def _series_from_configs(configs, legs, col: GColoring, D) -> Series:
    reg = col.registry()
    shift = _overlap_shift(legs, col)
    terms: dict = {}
    for conf in configs:
        counts = list(shift)
        for (i, j, lo, hi) in conf:
            for k in range(lo, hi):
                counts[col.index(col.color(i, j, k))] += 1
        e = tuple(counts)
        terms[e] = terms.get(e, 0) + 1
    return Series(reg, terms, D, INF, sum(shift), 0, tuple(shift))


_TOP = 10 ** 9  # height of a cell inside the nu leg


def _row_transfer(legs, col: GColoring, budget: int, bound: int) -> dict:
    """Colored count of height functions, built one row j at a time.

    State after row j: the row itself (heights for 0 <= i < bound).  A row
    must sit below the previous one, so the states form a transfer matrix.
    Returns {extra-box color counts: multiplicity}.
    """
    nu = legs[2]
    base = _base(legs)
    ncol = len(col.elements())
    zero = tuple([0] * ncol)
    cidx = {}

    def color_of(i, j, k):
        key = (i, j, k)
        c = cidx.get(key)
        if c is None:
            c = cidx[key] = col.index(col.color(i, j, k))
        return c

    def rows(j, prev, left):
        out = []
        row = []
        counts = [0] * ncol

        def rec(i, left):
            if i == bound:
                out.append((tuple(row), tuple(counts), budget_used[0]))
                return
            if i < nu.part(j):
                row.append(_TOP)
                rec(i + 1, left)
                row.pop()
                return
            b = base(i, j)
            top = prev[i]
            if i and row[i - 1] < top:
                top = row[i - 1]
            if top > b + left:
                top = b + left
            for h in range(b, top + 1):
                for k in range(b, h):
                    counts[color_of(i, j, k)] += 1
                budget_used[0] += h - b
                row.append(h)
                rec(i + 1, left - (h - b))
                row.pop()
                budget_used[0] -= h - b
                for k in range(b, h):
                    counts[color_of(i, j, k)] -= 1

        budget_used = [0]
        rec(0, left)
        return out

    states = {tuple([_TOP] * bound): {zero: 1}}
    for j in range(bound):
        new: dict = {}
        for prev, poly in states.items():
            used = min(sum(k) for k in poly)
            for row, rc, extra in rows(j, prev, budget - used):
                dst = new.setdefault(row, {})
                for k, c in poly.items():
                    if sum(k) + extra > budget:
                        continue
                    nk = tuple([a + b for a, b in zip(k, rc)])
                    dst[nk] = dst.get(nk, 0) + c
        states = {r: p for r, p in new.items() if p}
    total: dict = {}
    for poly in states.values():
        for k, c in poly.items():
            total[k] = total.get(k, 0) + c
    return total


@lru_cache(maxsize=512)
def _transfer_series(legs, col: GColoring, D: int, bound: int) -> Series:
    reg = col.registry()
    shift = _overlap_shift(legs, col)
    budget = D - sum(shift)
    terms = {}
    if budget >= 0:
        for k, c in _row_transfer(legs, col, budget, bound).items():
            terms[tuple(a + b for a, b in zip(k, shift))] = c
    return Series(reg, terms, D, INF, sum(shift), 0, tuple(shift))


def start_bound(legs, D: int) -> int:
    lam, mu, nu = legs
    ext = [lam.part(0), len(lam), mu.part(0), len(mu), nu.part(0), len(nu)]
    return max(D, 0) + max(ext) + 1


def enumerate_vertex(legs, col: GColoring | int, D: int, method: str = "rows") -> Series:
    """V^G_{lam mu nu} with every coefficient of total box-degree <= D exact.

    method "rows" runs the row transfer count, "dfs" lists every height
    function.  Either way the bounding square is enlarged until the results
    at bound B and B + 1 agree.
    """
    if isinstance(col, int):
        col = GColoring.zn(col)
    legs = _legs(legs)
    shift_total = sum(_overlap_shift(legs, GColoring.zn(1)))
    budget = D - shift_total

    def at(B):
        if method == "rows":
            return _transfer_series(legs, col, D, B)
        if method == "dfs":
            return _series_from_configs(enumerate_configs(legs, budget, B), legs, col, D)
        raise ValueError(f"unknown method {method!r}")

    B = start_bound(legs, budget)
    result = at(B)
    while True:
        bigger = at(B + 1)
        if bigger.agrees(result) and len(bigger.terms) == len(result.terms):
            return result
        B, result = B + 1, bigger
