"""Transfer-matrix evaluation of the vertex with Gamma and Q operators.

States are finite combinations of partitions with series coefficients.
Gamma_+(x) removes a horizontal strip (weight x^{removed}), Gamma_-(x) adds
one (weight x^{added}), Q_i multiplies |lam> by q_i^{|lam|}.

The vertex is the matrix element <mu| prod_t Gamma_{nu'(t)}(qfrak_t^{-nu'(t)}) |lam'>
(t increasing left to right, so t = nN - 1 acts first), times monomial
prefactors.  Summation by parts turns the Gamma weights into one factor
q_t^{|rho_t|} per slice, so the bulk of the product runs on raw exponent
dictionaries with nonnegative increments and exact degree pruning.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .partitions import (EMPTY, Partition, conjugate, hooks_colored,
                         interlacing_above, interlacing_below, to_edge_sequence)
from .schur import qfrak
from .series import INF, Series, geom_expand, vertex_registry
from .znvertex import h_factor, o_factor, prefactor, vacuum


# ---------------------------------------------------------------- state vectors


@dataclass
class StateVector:
    """sum_lam coeff(lam) |lam>, coefficients exact to q-degree D, |lam| <= smax."""

    n: int
    coeffs: dict = field(default_factory=dict)
    D: float = INF
    smax: int = 30

    @classmethod
    def basis(cls, lam, n, D=INF, smax=30) -> "StateVector":
        reg = vertex_registry(n)
        return cls(n, {Partition(lam): Series.one(reg, D)}, D, smax)

    def add(self, lam, s: Series):
        cur = self.coeffs.get(lam)
        self.coeffs[lam] = s if cur is None else cur + s

    def clean(self) -> "StateVector":
        self.coeffs = {k: v.truncate(self.D) for k, v in self.coeffs.items() if v.terms}
        return self

    def scale(self, s: Series) -> "StateVector":
        out = StateVector(self.n, {}, self.D, self.smax)
        for lam, c in self.coeffs.items():
            out.add(lam, (c * s).truncate(self.D))
        return out.clean()

    def __add__(self, other: "StateVector") -> "StateVector":
        out = StateVector(self.n, dict(self.coeffs), min(self.D, other.D), self.smax)
        for lam, c in other.coeffs.items():
            out.add(lam, c)
        return out.clean()

    def agrees(self, other: "StateVector") -> bool:
        keys = set(self.coeffs) | set(other.coeffs)
        reg = vertex_registry(self.n)
        z = Series.zero(reg)
        D = min(self.D, other.D)
        return all(self.coeffs.get(k, z).agrees(other.coeffs.get(k, z), D) for k in keys)

    def matrix_element(self, mu) -> Series:
        mu = Partition(mu)
        return self.coeffs.get(mu, Series.zero(vertex_registry(self.n), self.D))


def gamma_apply(sigma: int, x, v: StateVector) -> StateVector:
    """Gamma_sigma(x) for a monomial x (exponent tuple over q0..q{n-1})."""
    x = tuple(x)
    dx = sum(x)
    out = StateVector(v.n, {}, v.D, v.smax)
    for lam, c in v.coeffs.items():
        if sigma == 1:
            targets = interlacing_below(lam)
        elif sigma == -1:
            room = v.smax - lam.size
            # a nonpositive weight never leaves the window: only smax bounds it
            if dx > 0 and v.D != INF:
                room = min(room, int((v.D - c.qlow) // dx))
            targets = interlacing_above(lam, room)
        else:
            raise ValueError("sigma must be +1 or -1")
        for mu in targets:
            k = abs(lam.size - mu.size)
            out.add(mu, c.shift(tuple(k * a for a in x)).truncate(v.D))
    return out.clean()


def q_apply(i: int, v: StateVector) -> StateVector:
    """Q_i |lam> = q_i^{|lam|} |lam>."""
    out = StateVector(v.n, {}, v.D, v.smax)
    for lam, c in v.coeffs.items():
        e = [0] * v.n
        e[i % v.n] = lam.size
        out.add(lam, c.shift(tuple(e)).truncate(v.D))
    return out.clean()


def q_total_apply(v: StateVector) -> StateVector:
    for i in range(v.n):
        v = q_apply(i, v)
    return v


def commutation_scalar(sigma: int, a, tau: int, b, n: int, D) -> Series:
    """(1 - ab)^{(tau - sigma)/2}."""
    reg = vertex_registry(n)
    e = (tau - sigma) // 2
    if e == 0:
        return Series.one(reg, D)
    ab = tuple(x + y for x, y in zip(a, b))
    return geom_expand(reg, ab, e, 1, D)


# ---------------------------------------------------------------- the forward product


def edge_value(nu_p: Partition, t: int) -> int:
    return to_edge_sequence(nu_p, 0).value(t)


def _min_shapes(start: Partition, signs: list[int], forward: bool) -> list[Partition]:
    """Smallest shapes every path is forced to contain.

    forward: walking from lam' through the operators in acting order, a
    Gamma_+ step keeps rows 1, 2, ... (shifted up) and a Gamma_- step keeps
    everything.  Backward from mu: the roles swap.
    """
    out = []
    cur = start
    for s in signs:
        drop = (s == 1) if forward else (s == -1)
        cur = Partition(cur[1:]) if drop else cur
        out.append(cur)
    return out


def _union(a: Partition, b: Partition) -> Partition:
    L = max(len(a), len(b))
    return Partition([max(a.part(i), b.part(i)) for i in range(L)])


def operator_matrix_element(lam, mu, nu, n: int, N: int, D_acc: int) -> dict:
    """Raw exponent dict of prod_{t=tmin+1}^{T} q_t^{|rho_t|} summed over paths lam' -> mu.

    Terms of degree > D_acc are dropped (every increment is nonnegative).
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    # with cells (i, j), i < lam_j, the slices interlace along the edge
    # sequence of nu itself (the transposed reading of the same boundary)
    seq = nu
    lam_p = conjugate(lam)
    T, tmin = n * N - 1, -n * N + 1
    ts = list(range(T, tmin - 1, -1))  # acting order
    signs = [edge_value(seq, t) for t in ts]
    fwd = _min_shapes(lam_p, signs, True)
    # backward: shape after op t must reach mu; walk from the end
    bwd_rev = []
    cur = mu
    bwd_rev.append(cur)  # shape after the last operator (t = tmin) is mu
    for idx in range(len(ts) - 1, 0, -1):
        # rho_{t} -> rho_{t-1} via op at ts[idx]; constraint on rho_t (= after ts[idx-1])
        s = signs[idx]
        # op ts[idx] acting on rho_t gives rho_{t-1}: Gamma_+ => rho_t contains rho_{t-1};
        # Gamma_- => rho_t contains rho_{t-1} with its first row removed
        cur = cur if s == 1 else Partition(cur[1:])
        bwd_rev.append(cur)
    bwd = list(reversed(bwd_rev))
    mins = [_union(a, b).size for a, b in zip(fwd, bwd)]
    # future[idx] = minimal weight still to come after step idx
    L = len(ts)
    # weights are charged at steps 0..L-2 (every t > tmin)
    future = [0] * L
    for idx in range(L - 3, -1, -1):
        future[idx] = future[idx + 1] + mins[idx + 1]

    zero = tuple([0] * n)
    states = {lam_p: {zero: 1}}
    for idx, t in enumerate(ts):
        s = signs[idx]
        last = idx == L - 1
        col = t % n
        new: dict = {}
        for rho, poly in states.items():
            low = min(sum(e) for e in poly)
            if last:
                ok = (mu in set(interlacing_below(rho)) if s == 1 else
                      rho in set(interlacing_below(mu)))
                if ok:
                    dst = new.setdefault(mu, {})
                    for e, c in poly.items():
                        dst[e] = dst.get(e, 0) + c
                continue
            room = D_acc - low - future[idx]
            if room < 0:
                continue
            if s == 1:
                targets = [p for p in interlacing_below(rho) if p.size <= room]
            else:
                targets = interlacing_above(rho, room - rho.size) if room >= rho.size else []
            for tgt in targets:
                sz = tgt.size
                lim = D_acc - sz - future[idx]
                dst = None
                for e, c in poly.items():
                    if sum(e) > lim:
                        continue
                    if dst is None:
                        dst = new.setdefault(tgt, {})
                    ne = list(e)
                    ne[col] += sz
                    ne = tuple(ne)
                    dst[ne] = dst.get(ne, 0) + c
        states = {k: v for k, v in new.items() if v}
    return states.get(mu, {})


def _total_prefactor(lam, mu, n, N) -> tuple[int, ...]:
    """qfrak_tmin^{|mu|} qfrak_T^{-|lam'|} q^{-A_lam} bar(q^{-A_mu'}) q0^{-|lam|}."""
    T, tmin = n * N - 1, -n * N + 1
    a = qfrak(tmin, n)
    b = qfrak(T, n)
    pre = prefactor(lam, mu, n)
    out = [mu.size * x - lam.size * y + p for x, y, p in zip(a, b, pre)]
    out[0] -= lam.size
    return tuple(out)


def operator_vertex_at(lam, mu, nu, n: int, N: int, D: int) -> Series:
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    reg = vertex_registry(n)
    pre = _total_prefactor(lam, mu, n, N)
    D_acc = D - sum(pre)
    terms = operator_matrix_element(lam, mu, nu, n, N, D_acc)
    s = Series(reg, {tuple(a + b for a, b in zip(e, pre)): c for e, c in terms.items()}, D)
    return s


def overlap_volume(lam, mu, nu) -> int:
    """Sum of (1 - #legs) over boxes lying in two or three legs (<= 0)."""
    X = max(len(mu), nu.part(0))
    Y = max(lam.part(0), len(nu))
    Z = max(len(lam), mu.part(0))
    total = 0
    for i, j, k in iproduct(range(X), range(Y), range(Z)):
        c = int(j < lam.part(k)) + int(k < mu.part(i)) + int(i < nu.part(j))
        if c >= 2:
            total += 1 - c
    return total


def start_N(lam, mu, nu, n, D) -> int:
    """A box outside the i, j < nN cutoff forces about nN boxes above the
    minimal volume, so this N already captures every term of degree <= D."""
    ext = max([lam.part(0), len(lam), mu.part(0), len(mu), nu.part(0), len(nu), 0])
    C = overlap_volume(lam, mu, nu)
    return max(1, -(-(D - C + 2 * ext + 2) // n))


def operator_vertex(lam, mu, nu, n: int, D: int, N: int | None = None) -> Series:
    """V^n_{lam mu nu} from the operator product, N raised until stable."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if N is None:
        N = start_N(lam, mu, nu, n, D)
    cur = operator_vertex_at(lam, mu, nu, n, N, D)
    while True:
        nxt = operator_vertex_at(lam, mu, nu, n, N + 1, D)
        if nxt.agrees(cur) and len(nxt.terms) == len(cur.terms):
            return cur
        N, cur = N + 1, nxt


# ---------------------------------------------------------------- framing factor


def framing_lattice(lam: Partition, n: int, N: int) -> tuple[int, ...]:
    """prod of q_{i-j} over L = {(i,j,k): (j,k) in lam, i > nN-1, i - j <= nN-1}."""
    out = [0] * n
    for j, k in _cells_jk(lam):
        for i in range(n * N, n * N + j):
            out[(i - j) % n] += 1
    return tuple(out)


def framing_lattice_mu(mu: Partition, n: int, N: int) -> tuple[int, ...]:
    """prod of q_{i-j} over M = {(i,j,k): (i,k) in mu', j > nN-1, i - j >= -nN+1}."""
    out = [0] * n
    for i, k in _cells_jk(conjugate(mu)):
        for j in range(n * N, n * N + i):
            out[(i - j) % n] += 1
    return tuple(out)


def _cells_jk(lam: Partition):
    """Pairs (a, b) in lam in the (a, b) in lam iff a < lam_b reading."""
    return list(Partition(lam).cells())


# ---------------------------------------------------------------- retrograde


def mon_exps(nu: Partition, n: int) -> tuple[int, ...]:
    """Exponent of prod over hooks of prod_s q_s^{h^s} (hooks of nu, colored i - j)."""
    out = [0] * n
    for _, h in hooks_colored(nu, n):
        for s in range(n):
            out[s] += h[s]
    return tuple(out)


def commutation_product(nu: Partition, n: int, D: int) -> Series:
    """C(nu') = prod_{t<t'} (1 - qfrak_t^{-1} qfrak_t')^{(nu'(t') - nu'(t))/2}, exact to D.

    Pairs with nu'(t) = +1, nu'(t') = -1 give the infinite part; pairs with
    nu'(t) = -1, nu'(t') = +1 are the hooks of nu'.
    """
    reg = vertex_registry(n)
    seq = Partition(nu)  # same reading as in operator_matrix_element
    span = D + len(seq) + seq.part(0) + 2
    ts = range(-span, span + 1)
    val = {t: edge_value(seq, t) for t in ts}
    out = Series.one(reg, D)
    for t in ts:
        for tp in ts:
            if tp <= t or val[t] == val[tp]:
                continue
            e = (val[tp] - val[t]) // 2
            m = tuple(a - b for a, b in zip(qfrak(tp, n), qfrak(t, n)))
            if sum(m) > D and e < 0:
                continue
            out = out * geom_expand(reg, m, e, 1, D)
    return out.truncate(D)


@dataclass
class RetrogradeReport:
    nu: Partition
    n: int
    D: int
    scalar_ok: bool
    element_ok: bool

    @property
    def ok(self) -> bool:
        return self.scalar_ok and self.element_ok


def check_retrograde(nu, n: int, D: int) -> RetrogradeReport:
    """Forward product = V_000 O_nu Mon^{-1} * retrograde product.

    The pairwise commutation scalar is C(nu') Mon^{-1}, so the scalar part
    amounts to C(nu') = V_000 O_nu.  The retrograde matrix element
    <0|prod<-|0> normal-orders to H Mon, so the forward element <0|prod->|0>
    must equal V_000 O_nu H.
    """
    nu = Partition(nu)
    C = commutation_product(nu, n, D)
    VO = (vacuum(n, D) * o_factor(nu, n, D)).truncate(D)
    scalar_ok = C.agrees(VO, D)
    fwd = operator_vertex(EMPTY, EMPTY, nu, n, D)
    rhs = (VO * h_factor(nu, n, D)).truncate(D)
    return RetrogradeReport(nu, n, D, scalar_ok, fwd.agrees(rhs, D))
