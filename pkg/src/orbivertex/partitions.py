"""Two-dimensional partitions and the statistics the vertex and gluing code need.

A partition lam is identified with its cell set {(i, j) : 0 <= i < lam[j]},
so i is the column (position inside a row) and j is the row.  The color of a
cell for the cyclic group Z_n is (i - j) mod n.  The same rule is used for a
partition and for its conjugate.

Edge sequences are stored as (partition, charge) pairs; every operation on
them goes through the bijection with the finite deviation set.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence


class Partition(tuple):
    """Weakly decreasing tuple of positive integers (trailing zeros dropped)."""

    __slots__ = ()

    def __new__(cls, parts: Sequence[int] = ()):
        if isinstance(parts, Partition):
            return parts
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be nonnegative: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse "3,1" (or "" for the empty partition)."""
        text = text.strip().strip("[]()")
        if not text:
            return cls(())
        try:
            parts = [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
        except ValueError as exc:
            raise ValueError(f"malformed partition string {text!r}") from exc
        return cls(parts)

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def __str__(self) -> str:
        return ",".join(map(str, self)) if self else "()"

    def part(self, j: int) -> int:
        return self[j] if 0 <= j < len(self) else 0

    @property
    def size(self) -> int:
        return sum(self)

    def cells(self) -> Iterator[tuple[int, int]]:
        for j, row in enumerate(self):
            for i in range(row):
                yield (i, j)

    def contains(self, other: "Partition") -> bool:
        if len(other) > len(self):
            return False
        return all(a >= b for a, b in zip(self, other))

    def conjugate(self) -> "Partition":
        return conjugate(self)


EMPTY = Partition(())


@lru_cache(maxsize=None)
def conjugate(lam: Partition) -> Partition:
    lam = Partition(lam)
    if not lam:
        return lam
    return Partition([sum(1 for p in lam if p > i) for i in range(lam[0])])


def partitions_of(size: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of `size`, in reverse lexicographic order."""
    if max_part is None:
        max_part = size
    if size == 0:
        yield EMPTY
        return
    for first in range(min(size, max_part), 0, -1):
        for rest in partitions_of(size - first, first):
            yield Partition((first,) + tuple(rest))


def partitions_up_to(max_size: int) -> list[Partition]:
    return [p for s in range(max_size + 1) for p in partitions_of(s)]


def colored_counts(lam: Partition, n: int) -> list[int]:
    """|lam|_k for k = 0..n-1, cells colored by (i - j) mod n."""
    out = [0] * n
    for i, j in Partition(lam).cells():
        out[(i - j) % n] += 1
    return out


def a_factor(lam: Partition, n: int) -> list[int]:
    """A_lam(k, n) = sum over cells of floor((i + k) / n), for k = 0..n-1."""
    return [sum((i + k) // n for i, _ in Partition(lam).cells()) for k in range(n)]


def c_factor(lam: Partition, mt, mtp, n: int) -> list[Fraction]:
    """Per-color sums of (-mt*i - mtp*j + 1) over the cells of lam."""
    mt, mtp = Fraction(mt), Fraction(mtp)
    out = [Fraction(0)] * n
    for i, j in Partition(lam).cells():
        out[(i - j) % n] += -mt * i - mtp * j + 1
    return out


def is_multiregular(lam: Partition, n: int) -> bool:
    counts = colored_counts(lam, n)
    return all(c == counts[0] for c in counts)


def hooks_colored(nu_p: Partition, n: int) -> list[tuple[tuple[int, int], list[int]]]:
    """Colored hook vectors of every cell (i, j) of nu_p.

    Entry s of the vector counts hook cells of color s, where the hook of
    (i, j) is the cell itself, its arm to the right and its leg below.
    """
    nu_p = Partition(nu_p)
    conj = conjugate(nu_p)
    out = []
    for i, j in nu_p.cells():
        h = [0] * n
        for ii in range(i, nu_p[j]):
            h[(ii - j) % n] += 1
        for jj in range(j + 1, conj[i]):
            h[(i - jj) % n] += 1
        out.append(((i, j), h))
    return out


def hook_lengths(lam: Partition) -> list[int]:
    return [sum(h) for _, h in hooks_colored(lam, 1)]


# ---------------------------------------------------------------- edge sequences


def _plus_set_window(lam: Partition, lo: int, hi: int) -> set[int]:
    """S(lam) intersected with [lo, hi)."""
    out = set()
    for j in range(len(lam)):
        t = lam[j] - j - 1
        if lo <= t < hi:
            out.add(t)
    for t in range(lo, min(hi, -len(lam))):
        out.add(t)
    return out


@dataclass(frozen=True)
class EdgeSequence:
    """A {+1,-1} valued function on Z, equal to +1 far left and -1 far right.

    Stored canonically as the partition plus the charge c; the charge-c
    sequence is the charge-0 sequence of the partition shifted right by c.
    """

    partition: Partition
    charge: int = 0

    def value(self, t: int) -> int:
        s = t - self.charge
        lam = self.partition
        if s < -len(lam):
            return 1
        if s >= (lam[0] if lam else 0):
            return -1
        return 1 if s in _plus_set_window(lam, s, s + 1) else -1

    def _span(self) -> tuple[int, int]:
        lam, c = self.partition, self.charge
        lo = -len(lam) - abs(c) - 1
        hi = (lam[0] if lam else 0) + abs(c) + 1
        return lo, hi

    def deviation(self) -> frozenset[int]:
        """Positions where the value differs from the charge-0 vacuum."""
        lo, hi = self._span()
        out = set()
        for t in range(lo, hi):
            vac = 1 if t < 0 else -1
            if self.value(t) != vac:
                out.add(t)
        return frozenset(out)

    @classmethod
    def from_deviation(cls, dev) -> "EdgeSequence":
        dev = set(dev)
        plus_right = sorted(t for t in dev if t >= 0)
        minus_left = sorted(t for t in dev if t < 0)
        charge = len(plus_right) - len(minus_left)
        # the window must reach past 0 and past the charge shift on both sides
        lo = min(min(dev, default=0), 0) - abs(charge) - 1
        hi = max(max(dev, default=0), 0) + abs(charge) + 1
        plus = [t for t in range(lo, hi) if (t in dev) != (t < 0)]
        plus = sorted((t - charge for t in plus), reverse=True)
        # plus is now S(lam) restricted to a window that contains every
        # position where S(lam) differs from the vacuum
        parts = []
        for j, t in enumerate(plus):
            parts.append(t + j + 1)
        return cls(Partition(parts), charge)


def to_edge_sequence(lam: Partition, charge: int = 0) -> EdgeSequence:
    return EdgeSequence(Partition(lam), int(charge))


def from_edge_sequence(e: EdgeSequence) -> tuple[Partition, int]:
    return e.partition, e.charge


@dataclass(frozen=True)
class NQuotientCore:
    n: int
    quotients: tuple[Partition, ...]
    charges: tuple[int, ...]

    def is_core(self) -> bool:
        return all(not q for q in self.quotients)


def n_quotient_core(lam: Partition, n: int) -> NQuotientCore:
    if n < 1:
        raise ValueError("n must be positive")
    dev = to_edge_sequence(lam, 0).deviation()
    quotients, charges = [], []
    for i in range(n):
        sub = {(t - i) // n for t in dev if (t - i) % n == 0}
        e = EdgeSequence.from_deviation(sub)
        quotients.append(e.partition)
        charges.append(e.charge)
    return NQuotientCore(n, tuple(quotients), tuple(charges))


def from_core_quotient(ncq: NQuotientCore) -> Partition:
    dev = set()
    for i, (q, c) in enumerate(zip(ncq.quotients, ncq.charges)):
        for t in to_edge_sequence(q, c).deviation():
            dev.add(ncq.n * t + i)
    e = EdgeSequence.from_deviation(dev)
    if e.charge != 0:
        raise ValueError("charges must sum to zero")
    return e.partition


def n_core(lam: Partition, n: int) -> Partition:
    ncq = n_quotient_core(lam, n)
    empty = tuple(EMPTY for _ in range(n))
    return from_core_quotient(NQuotientCore(n, empty, ncq.charges))


def add_ribbon(lam: Partition, t1: int, t2: int) -> Partition:
    """Flip the charge-0 edge sequence of lam at t1 (+1 -> -1) and t2 (-1 -> +1)."""
    seq = to_edge_sequence(lam, 0)
    if not t1 < t2:
        raise ValueError("need t1 < t2")
    if seq.value(t1) != 1 or seq.value(t2) != -1:
        raise ValueError(f"cannot add a ribbon to {lam} at ({t1}, {t2})")
    dev = set(seq.deviation())
    dev ^= {t1, t2}
    return EdgeSequence.from_deviation(dev).partition


# ---------------------------------------------------------------- interlacing


def interlacing_below(lam: Partition, max_drop: int | None = None) -> Iterator[Partition]:
    """All mu with mu < lam in the interlacing order (lam_0 >= mu_0 >= lam_1 >= ...)."""
    lam = Partition(lam)
    L = len(lam)
    budget = lam.size if max_drop is None else max_drop

    def rec(j, prefix, left):
        if j == L:
            yield Partition(prefix)
            return
        lo = lam.part(j + 1)
        hi = lam[j]
        for v in range(hi, lo - 1, -1):
            drop = hi - v
            if drop > left:
                break
            yield from rec(j + 1, prefix + [v], left - drop)

    yield from rec(0, [], budget)


def interlacing_above(lam: Partition, max_add: int) -> Iterator[Partition]:
    """All mu with mu > lam (mu_0 >= lam_0 >= mu_1 >= ...) and |mu| - |lam| <= max_add."""
    lam = Partition(lam)
    L = len(lam)

    def rec(j, prefix, left):
        if j == L:
            # the row below the last part of lam may hold at most lam[L-1] cells
            cap = lam[L - 1] if L else max_add
            for v in range(0, min(cap, left) + 1):
                yield Partition(prefix + [v])
            return
        lo = lam[j]
        hi = lo + left if j == 0 else lam[j - 1]
        for v in range(lo, min(hi, lo + left) + 1):
            yield from rec(j + 1, prefix + [v], left - (v - lo))

    if max_add < 0:
        return
    yield from rec(0, [], max_add)
