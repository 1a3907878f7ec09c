"""Skew Schur functions at the monomial specializations used by the Z_n vertex.

The specialization attached to (n, nu) is the infinite list
x_i = qfrak(i - nu_i), i = 0, 1, 2, ...,
where qfrak(0) = 1 and qfrak(t) = q_{t mod n} * qfrak(t - 1).  Skew Schur
functions are computed by the Jacobi-Trudi determinant of truncated complete
homogeneous functions; a tableau enumeration is kept as an independent check.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .partitions import Partition, conjugate
from .series import INF, Series, vertex_registry


@lru_cache(maxsize=None)
def qfrak(t: int, n: int) -> tuple[int, ...]:
    """Exponent vector of qfrak_t over q0..q{n-1}."""
    e = [0] * n
    if t > 0:
        for s in range(1, t + 1):
            e[s % n] += 1
    elif t < 0:
        for s in range(t + 1, 1):
            e[s % n] -= 1
    return tuple(e)


@dataclass(frozen=True)
class Specialization:
    n: int
    nu: Partition = Partition(())
    barred: bool = False

    def exps(self, i: int) -> tuple[int, ...]:
        e = qfrak(i - self.nu.part(i), self.n)
        if self.barred:
            n = self.n
            e = tuple(e[(-k) % n] for k in range(n))
        return e

    def degree(self, i: int) -> int:
        return i - self.nu.part(i)

    @property
    def min_degree(self) -> int:
        return min([self.degree(i) for i in range(len(self.nu) + 1)])

    def variables_up_to(self, dmax) -> list[tuple[int, ...]]:
        """The x_i of degree <= dmax (a finite list)."""
        out = []
        i = 0
        while True:
            d = self.degree(i)
            if i >= len(self.nu) and d > dmax:
                break
            if d <= dmax:
                out.append(self.exps(i))
            i += 1
        return out


def _h_list(spec: Specialization, mmax: int, D) -> list[Series]:
    """h_0..h_mmax at the specialization.

    h_m is exact up to q-degree D - (mmax - m) * dmin, where dmin <= 0 bounds
    the degree of every x_i from below; then any product of h's whose indices
    add up to mmax is exact up to D.
    """
    if D == INF:
        raise ValueError("complete homogeneous functions need a finite window")
    reg = vertex_registry(spec.n)
    dmin = min(spec.min_degree, 0)
    windows = [D - (mmax - m) * dmin for m in range(mmax + 1)]
    # x of degree d only reaches h_k (k >= 1) in degree >= d + (k - 1) * dmin
    xs = spec.variables_up_to(D - (mmax - 1) * dmin) if mmax else []
    h = [dict() for _ in range(mmax + 1)]
    h[0][tuple([0] * spec.n)] = 1
    for x in xs:
        for k in range(1, mmax + 1):
            prev, cur, lim = h[k - 1], h[k], windows[k]
            for e, c in list(prev.items()):
                ne = tuple([a + b for a, b in zip(e, x)])
                if sum(ne) <= lim:
                    cur[ne] = cur.get(ne, 0) + c
    return [Series(reg, h[m], windows[m], INF, m * dmin, 0) for m in range(mmax + 1)]


def complete_homogeneous(m: int, spec: Specialization, D) -> Series:
    if m < 0:
        return Series.zero(vertex_registry(spec.n), D)
    return _h_list(spec, m, D)[m]


@lru_cache(maxsize=4096)
def skew_schur(lam: Partition, eta: Partition, spec: Specialization, D) -> Series:
    """s_{lam/eta} at spec, exact to q-degree D (Jacobi-Trudi)."""
    lam, eta = Partition(lam), Partition(eta)
    reg = vertex_registry(spec.n)
    if not lam.contains(eta):
        return Series.zero(reg, D)
    N = lam.size - eta.size
    if N == 0:
        return Series.one(reg)
    L = len(lam)
    hs = _h_list(spec, N, D)

    def h(k):
        # an index outside [0, N] forces a negative index elsewhere in the
        # same permutation, so the whole term vanishes
        if k < 0 or k > N:
            return None
        return hs[k]

    idx = [[lam.part(i) - eta.part(j) - i + j for j in range(L)] for i in range(L)]

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> Series:
        if row == L:
            return Series.one(reg)
        total = None
        sign = 1
        for j in sorted(cols):
            k = idx[row][j]
            entry = h(k)
            if entry is not None:
                sub = minor(row + 1, cols - {j})
                if sub.terms:
                    term = entry * sub
                    term = term if sign > 0 else -term
                    total = term if total is None else total + term
            sign = -sign
        if total is None:
            return Series.zero(reg, INF)
        return total

    out = minor(0, frozenset(range(L))).truncate(D)
    out.qlow = skew_min_degree(lam, eta, spec)
    return out


def skew_min_degree(lam: Partition, eta: Partition, spec: Specialization) -> int:
    """Exact lowest q-degree of s_{lam/eta} at spec.

    The degrees of x_0, x_1, ... strictly increase, so the unique cheapest
    tableau puts j - eta'_i into cell (i, j).
    """
    lam, eta = Partition(lam), Partition(eta)
    etac = conjugate(eta)
    return sum(spec.degree(j - etac.part(i)) for i, j in lam.cells() if i >= eta.part(j))


def schur_tableaux(lam: Partition, eta: Partition, xs: list[tuple[int, ...]], n: int) -> Series:
    """s_{lam/eta}(x_0, ..., x_{N-1}) by enumerating semistandard tableaux.

    Uses the horizontal-strip recursion: a tableau with entries < N is a chain
    eta = l^0 < l^1 < ... < l^N = lam where consecutive shapes differ by a
    horizontal strip filled with one letter.
    """
    from .partitions import interlacing_above

    reg = vertex_registry(n)
    lam, eta = Partition(lam), Partition(eta)
    states = {eta: {tuple([0] * n): 1}}
    for x in xs:
        new = {}
        for shape, poly in states.items():
            for nxt in interlacing_above(shape, lam.size - shape.size):
                if not lam.contains(nxt):
                    continue
                k = nxt.size - shape.size
                dst = new.setdefault(nxt, {})
                for e, c in poly.items():
                    ne = tuple(a + k * b for a, b in zip(e, x))
                    dst[ne] = dst.get(ne, 0) + c
        states = new
    return Series(reg, states.get(lam, {}))
