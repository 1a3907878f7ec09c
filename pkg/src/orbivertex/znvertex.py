"""Closed Schur-function formula for the Z_n vertex.

    V = V_000 * q^{-A_lam} * bar(q^{-A_mu'}) * H * O
        * sum_eta q0^{-|eta|} bar(s_{lam'/eta}(qfrak_{. - nu})) s_{mu/eta}(qfrak_{. - nu'})

Every factor is computed to the window it needs so that the product is exact
up to total box-degree D.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .partitions import (Partition, a_factor, colored_counts, conjugate,
                         hooks_colored, partitions_of)
from .schur import Specialization, skew_min_degree, skew_schur
from .series import INF, Series, bar, geom_expand, macmahon, permute, vertex_registry


@dataclass(frozen=True)
class VertexQuery:
    n: int
    legs: tuple
    D: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.D < 0:
            raise ValueError("window must be nonnegative")
        object.__setattr__(self, "legs", tuple(Partition(p) for p in self.legs))


@dataclass(frozen=True)
class FormulaConvention:
    """Which partition feeds the hook factor and the O factor.

    The defaults are the conventions that reproduce the box oracle; the
    alternatives stay available for the convention probe in scripts/.
    """
    hooks_of_conjugate: bool = False
    o_of_conjugate: bool = False


DEFAULT = FormulaConvention()


# ---------------------------------------------------------------- factors


def _ones(n):
    return tuple([1] * n)


@lru_cache(maxsize=None)
def vacuum(n: int, D: int) -> Series:
    """V^n_000 = M(1,q)^n prod_{0<a<=b<n} M(q_a..q_b, q) M(q_a^-1..q_b^-1, q)."""
    reg = vertex_registry(n)
    q = _ones(n)
    out = macmahon(reg, None, q, 1, D) ** n
    for a in range(1, n):
        for b in range(a, n):
            e = tuple(1 if a <= k <= b else 0 for k in range(n))
            out = out * macmahon(reg, e, q, 1, D)
            out = out * macmahon(reg, tuple(-x for x in e), q, 1, D)
    out = out.truncate(D)
    out.floor = tuple(0 for _ in range(n))
    return out


def rotate(s: Series, k: int) -> Series:
    """s(q_k, q_{k+1}, ..., q_{k+n-1}): the exponent of q_j moves to q_{j+k}."""
    n = len(s.reg)
    return permute(s, [(j + k) % n for j in range(n)])


def h_factor(nu: Partition, n: int, D: int, conjugate_hooks: bool = False) -> Series:
    """prod over hooks of 1/(1 - prod_s q_s^{h^s}).

    A cell (j, i) of nu' is labelled by the coordinates (i, j) of the
    matching cell of nu and colored i - j, so the hooks are those of nu
    itself.  (Coloring the cells of nu' by their own i - j disagrees with
    the box count for n = 3.)
    """
    reg = vertex_registry(n)
    shape = conjugate(Partition(nu)) if conjugate_hooks else Partition(nu)
    out = Series.one(reg, D)
    for _, h in hooks_colored(shape, n):
        out = out * geom_expand(reg, tuple(h), -1, 1, D)
    out = out.truncate(D)
    out.floor = tuple(0 for _ in range(n))
    return out


def o_exponents(nu: Partition, n: int) -> list[int]:
    c = colored_counts(nu, n)
    return [-2 * c[k] + c[(k + 1) % n] + c[(k - 1) % n] for k in range(n)]


def o_factor(nu: Partition, n: int, D: int) -> Series:
    reg = vertex_registry(n)
    out = Series.one(reg, D)
    for k, e in enumerate(o_exponents(nu, n)):
        if e:
            out = out * rotate(vacuum(n, D), k) ** e
    out = out.truncate(D)
    out.floor = tuple(0 for _ in range(n))
    return out


def prefactor(lam: Partition, mu: Partition, n: int) -> tuple[int, ...]:
    """Exponents of q^{-A_lam} * bar(q^{-A_mu'})."""
    a = a_factor(lam, n)
    b = a_factor(conjugate(mu), n)
    return tuple(-a[k] - b[(-k) % n] for k in range(n))


def _subpartitions(lam: Partition, mu: Partition):
    m = min(lam.size, mu.size)
    for s in range(m + 1):
        for eta in partitions_of(s):
            if lam.contains(eta) and mu.contains(eta):
                yield eta


def schur_sum(lam: Partition, mu: Partition, nu: Partition, n: int, W) -> Series:
    """sum_eta q0^{-|eta|} bar(s_{lam'/eta}(qfrak_{.-nu})) s_{mu/eta}(qfrak_{.-nu'}), exact to W."""
    reg = vertex_registry(n)
    lamc = conjugate(lam)
    nuc = conjugate(nu)
    sp_l = Specialization(n, nu, barred=False)
    sp_m = Specialization(n, nuc, barred=False)
    names = reg.names
    total = None
    low = INF
    for eta in _subpartitions(lamc, mu):
        l1 = skew_min_degree(lamc, eta, sp_l)
        l2 = skew_min_degree(mu, eta, sp_m)
        shift = eta.size
        # q0^{-|eta|} * A * B exact to W needs A to W + |eta| - l2, B to W + |eta| - l1
        A = bar(skew_schur(lamc, eta, sp_l, W + shift - l2), names)
        B = skew_schur(mu, eta, sp_m, W + shift - l1)
        term = (A * B).shift(tuple([-shift] + [0] * (n - 1)))
        low = min(low, l1 + l2 - shift)
        total = term if total is None else total + term
    total = total.truncate(W)
    total.qlow = low
    return total


def schur_sum_low(lam, mu, nu, n) -> int:
    lamc, nuc = conjugate(lam), conjugate(nu)
    sp_l, sp_m = Specialization(n, nu), Specialization(n, nuc)
    return min(skew_min_degree(lamc, eta, sp_l) + skew_min_degree(mu, eta, sp_m) - eta.size
               for eta in _subpartitions(lamc, mu))


def zn_vertex(qr: VertexQuery, conv: FormulaConvention = DEFAULT) -> Series:
    n, D = qr.n, qr.D
    lam, mu, nu = qr.legs
    reg = vertex_registry(n)
    pre = prefactor(lam, mu, n)
    P = sum(pre)
    Ls = schur_sum_low(lam, mu, nu, n)
    # vacuum, H and O are power series with constant term 1
    W_rest = D - P - Ls
    W_schur = D - P
    if W_rest < 0:
        return Series.zero(reg, D)
    rest = vacuum(n, W_rest) * h_factor(nu, n, W_rest, conv.hooks_of_conjugate)
    rest = rest * o_factor(conjugate(nu) if conv.o_of_conjugate else nu, n, W_rest)
    S = schur_sum(lam, mu, nu, n, W_schur)
    out = (rest * S).shift(pre).truncate(D)
    if out.qmax < D:
        raise AssertionError("window bookkeeping lost precision")
    return out


def vertex(legs, n: int, D: int, conv: FormulaConvention = DEFAULT) -> Series:
    return zn_vertex(VertexQuery(n, tuple(legs), D), conv)


def signed_vertex_vars(lam3: Partition, n: int) -> tuple[int, ...]:
    """(-1)^{s_k(lam3)} with s_k = |lam3|_{k-1} + |lam3|_{k+1}."""
    c = colored_counts(lam3, n)
    return tuple((-1) ** (c[(k - 1) % n] + c[(k + 1) % n]) for k in range(n))
