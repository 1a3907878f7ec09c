"""The acceptance suite: ten coefficient-exact checks, shared by the CLI and pytest.

Each check returns a CheckResult.  None of them compares against stored
numbers except where the reference value is an independent closed form
(MacMahon, football, the reference BZ_2 expansion).
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .boxcount import enumerate_vertex
from .gluing import (DTOptions, GluingError, crepant_check, dt_multiregular,
                     dt_partition_function, dt_reduced, football_closed_form,
                     sign_crosscheck, to_football_variables, variable_model)
from .partitions import (Partition, a_factor, conjugate, partitions_of, partitions_up_to)
from .schur import Specialization, schur_tableaux, skew_schur
from .series import Series, bar, geom_expand, invert, macmahon, vertex_registry
from .vertexops import (StateVector, check_retrograde, commutation_scalar, framing_lattice,
                        gamma_apply, operator_vertex, q_apply)
from .webdiagram import (EdgeGeometry, football_chi, load_example, orient,
                         root_of_unity_closed, root_of_unity_sum, toen_chi)
from .znvertex import vertex


@dataclass
class AcceptanceConfig:
    D: int = 8
    max_leg: int = 2
    random_triples: int = 10
    random_leg: int = 3
    seed: int = 20240601
    bz2_D: int = 12
    football_D: int = 8
    football_Dv: int = 2
    operator_states: int = 100
    framing_samples: int = 20
    crepant_q: int = 8
    crepant_v: int = 4


@dataclass
class CheckResult:
    key: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.key} ({self.seconds:.1f}s) {self.detail}"


def _legs_suite(cfg: AcceptanceConfig) -> list:
    small = partitions_up_to(cfg.max_leg)
    out = list(itertools.product(small, repeat=3))
    rng = random.Random(cfg.seed)
    pool = partitions_up_to(cfg.random_leg)
    for _ in range(cfg.random_triples):
        out.append(tuple(rng.choice(pool) for _ in range(3)))
    return out


# ---------------------------------------------------------------- 1, 2, 5: the vertex


def check_oracle(cfg: AcceptanceConfig) -> CheckResult:
    bad = []
    suite = _legs_suite(cfg)
    for n in (1, 2, 3):
        for legs in suite:
            f = vertex(legs, n, cfg.D)
            b = enumerate_vertex(legs, n, cfg.D)
            o = operator_vertex(*legs, n, cfg.D)
            if not (f.agrees(b, cfg.D) and f.agrees(o, cfg.D)):
                bad.append((n, legs))
    return CheckResult("oracle", not bad, f"{3 * len(suite)} (n, legs) cases, D={cfg.D}", failures=bad)


def check_macmahon(cfg: AcceptanceConfig) -> CheckResult:
    E = Partition()
    reg = vertex_registry(1)
    want = [1, 1, 3, 6, 13, 24, 48]
    got = vertex((E, E, E), 1, 6)
    coeffs = [got.terms.get((k,), 0) for k in range(7)]
    M = macmahon(reg, None, (1,), 1, 6)
    leg = vertex((Partition([1]), E, E), 1, 6)
    ref = (M * geom_expand(reg, (1,), -1, 1, 6)).truncate(6)
    ok = coeffs == want and leg.agrees(ref, 6)
    return CheckResult("macmahon", ok, f"coefficients {coeffs}")


def check_symmetry(cfg: AcceptanceConfig) -> CheckResult:
    bad = []
    cyclic_fails = {1: 0, 2: 0, 3: 0}
    suite = _legs_suite(cfg)
    for n in (1, 2, 3):
        names = vertex_registry(n).names
        for lam, mu, nu in suite:
            v = vertex((lam, mu, nu), n, cfg.D)
            w = vertex((conjugate(mu), conjugate(lam), conjugate(nu)), n, cfg.D)
            if not v.agrees(bar(w, names), cfg.D):
                bad.append(("reflection", n, (lam, mu, nu)))
            if not v.agrees(vertex((mu, nu, lam), n, cfg.D), cfg.D):
                cyclic_fails[n] += 1
    if cyclic_fails[1]:
        bad.append(("cyclic fails for n=1", cyclic_fails[1]))
    for n in (2, 3):
        if not cyclic_fails[n]:
            bad.append(("cyclic holds for every triple at n", n))
    detail = f"cyclic failures per n: {cyclic_fails}"
    return CheckResult("symmetry", not bad, detail, failures=bad)


# ---------------------------------------------------------------- 3, 4, 9: gluing


def bz2_reference(reg, D: int) -> Series:
    """Reference BZ_2 series through v^2 as explicit rational functions, expanded in the window."""
    def mono(a, b, v=0):
        d = {"q_e0": a, "q_e1": b}
        if v:
            d["v_e"] = v
        return d

    def rat(c, num, dens):
        s = Series.monomial(reg, reg.exps(num), c)
        for d, p in dens:
            s = s * geom_expand(reg, reg.exps(d), -p, 1, D, 2)
        return s
    out = Series.one(reg, D, 2)
    out = out + rat(2, mono(1, 2, 1), [(mono(1, 1), 2), (mono(0, 1), 2)])
    out = out + rat(2, mono(4, 6, 2), [(mono(2, 2), 2), (mono(1, 2), 2), (mono(1, 1), 2), (mono(0, 1), 2)])
    out = out + rat(2, mono(4, 4, 2), [(mono(2, 2), 2), (mono(1, 1), 2), (mono(1, 0), 2), (mono(0, 1), 2)])
    out = out + rat(1, mono(4, 4, 2), [(mono(1, 2), 2), (mono(1, 1), 4), (mono(1, 0), 2)])
    return out.truncate(D, 2)


def check_bz2(cfg: AcceptanceConfig) -> CheckResult:
    od = orient(load_example("bz2_gerbe"))
    got = dt_multiregular(od, DTOptions(D=cfg.bz2_D, Dv=2, signed=False))
    want = bz2_reference(got.reg, cfg.bz2_D)
    diff = got.window_diff(want)
    return CheckResult("bz2", not diff and got.qmax >= cfg.bz2_D,
                       f"{len(got.terms)} terms, weighted q-degree {got.qmax}, v-degree {got.vmax}",
                       failures=diff[:10])


def check_football(cfg: AcceptanceConfig) -> CheckResult:
    bad = []
    D, Dv = cfg.football_D, cfg.football_Dv
    for a, b in ((1, 1), (2, 1), (2, 2), (2, 3)):
        name = "conifold" if (a, b) == (1, 1) else f"football_{a}_{b}"
        glued = to_football_variables(dt_partition_function(orient(load_example(name)),
                                                            DTOptions(D=D, Dv=Dv)), a, b)
        closed = football_closed_form(a, b, D, Dv)
        diff = glued.window_diff(closed)
        if diff or glued.qmax < D:
            bad.append(((a, b), diff[:3]))
    od = orient(load_example("conifold"))
    red = dt_reduced(od, DTOptions(D=D, Dv=Dv))
    M = macmahon(variable_model(od).reg, {"v_e": 1}, {"q": 1}, -1, D, Dv)
    if not red.agrees(invert(M, D, Dv)):
        bad.append(("conifold reduced", red.window_diff(invert(M, D, Dv))[:3]))
    return CheckResult("football", not bad, f"(a,b) in (1,1),(2,1),(2,2),(2,3), D={D}, Dv={Dv}",
                       failures=bad)


def check_crepant(cfg: AcceptanceConfig) -> CheckResult:
    rep = crepant_check(cfg.crepant_q, cfg.crepant_v, 2)
    nonzero = rep.compared
    return CheckResult("crepant", rep.ok and nonzero > 0,
                       f"{nonzero} coefficients compared, window {rep.window}",
                       failures=rep.mismatches[:10])


# ---------------------------------------------------------------- 6, 7: orbifold chi and signs


def check_chi(cfg: AcceptanceConfig) -> CheckResult:
    bad = []
    count = 0
    for a in range(1, 7):
        for b in range(1, 7):
            for d in range(-3, 4):
                for s in range(-2 * a, 2 * a + 1):
                    for t in range(-2 * b, 2 * b + 1):
                        count += 1
                        if football_chi(a, b, d, s, t) != toen_chi(a, b, d, s, t):
                            bad.append(("chi", a, b, d, s, t))
    for a in range(1, 13):
        for s in range(-3 * a, 3 * a + 1):
            if root_of_unity_sum(a, s) != root_of_unity_closed(a, s):
                bad.append(("root-of-unity", a, s))
    return CheckResult("chi", not bad, f"{count} chi cases, root-of-unity sums a <= 12", failures=bad[:10])


def _sign_geometries():
    deltas = list(itertools.product((0, 1), repeat=4))
    for mt in range(-3, 2):
        for dl in deltas:
            yield EdgeGeometry("e", 1, True, m=Fraction(mt), mp=Fraction(-2 - mt),
                               mt=Fraction(mt), mtp=Fraction(-2 - mt), deltas=dl)
    for n in (2, 3):
        for m in range(-3, 2):
            yield EdgeGeometry("e", n, True, m=Fraction(m), mp=Fraction(-2 - m),
                               mt=Fraction(m), mtp=Fraction(-2 - m))


def check_signs(cfg: AcceptanceConfig) -> CheckResult:
    bad = []
    count = 0
    for g in _sign_geometries():
        for size in range(7):
            for lam in partitions_of(size):
                count += 1
                rep = sign_crosscheck(g, lam)
                if not rep.agree:
                    bad.append((g.n, g.mt, g.deltas, lam))
    return CheckResult("signs", not bad, f"{count} (geometry, partition) cases", failures=bad[:10])


# ---------------------------------------------------------------- 8: operators


def _random_state(rng, n, D):
    reg = vertex_registry(n)
    v = StateVector(n, {}, D)
    for _ in range(rng.randint(1, 3)):
        lam = rng.choice(partitions_up_to(3))
        e = tuple(rng.randint(0, 1) for _ in range(n))
        v.add(lam, Series.monomial(reg, e, rng.choice((-2, -1, 1, 3)), D))
    return v.clean()


def _random_monomial(rng, n):
    while True:
        e = tuple(rng.randint(0, 2) for _ in range(n))
        if sum(e):
            return e


def check_operators(cfg: AcceptanceConfig) -> CheckResult:
    rng = random.Random(cfg.seed)
    bad = []
    D = 6
    for trial in range(cfg.operator_states):
        n = rng.randint(1, 3)
        v = _random_state(rng, n, D)
        sigma, tau = rng.choice((1, -1)), rng.choice((1, -1))
        a, b = _random_monomial(rng, n), _random_monomial(rng, n)
        lhs = gamma_apply(sigma, a, gamma_apply(tau, b, v))
        rhs = gamma_apply(tau, b, gamma_apply(sigma, a, v)).scale(
            commutation_scalar(sigma, a, tau, b, n, D))
        if not lhs.agrees(rhs):
            bad.append(("gamma", n, sigma, a, tau, b))
        i = rng.randrange(n)
        z = _random_monomial(rng, n)
        zq = list(z)
        zq[i] += sigma
        # Gamma_sigma(z) Q_i = Q_i Gamma_sigma(z q_i^sigma)
        if min(zq) >= 0 and sum(zq):
            lhs = gamma_apply(sigma, z, q_apply(i, v))
            rhs = q_apply(i, gamma_apply(sigma, tuple(zq), v))
            if not lhs.agrees(rhs):
                bad.append(("gamma-q", n, sigma, z, i))
    for _ in range(cfg.framing_samples):
        n, N = rng.randint(1, 4), rng.randint(1, 3)
        lam = rng.choice(partitions_up_to(5))
        if list(framing_lattice(lam, n, N)) != list(a_factor(lam, n)):
            bad.append(("framing", lam, n, N))
    for nu in partitions_up_to(3):
        for n in (1, 2, 3):
            rep = check_retrograde(nu, n, 5)
            if not rep.scalar_ok:
                bad.append(("retrograde", nu, n))
    return CheckResult("operators", not bad,
                       f"{cfg.operator_states} random states, {cfg.framing_samples} framing samples",
                       failures=bad[:10])


# ---------------------------------------------------------------- 10: Schur


def check_schur(cfg: AcceptanceConfig) -> CheckResult:
    bad = []
    D = 6
    for n in (1, 2, 3):
        for nu in partitions_up_to(2):
            spec = Specialization(n, nu)
            for size in range(5):
                for lam in partitions_of(size):
                    for esize in range(size + 1):
                        for eta in partitions_of(esize):
                            if not lam.contains(eta):
                                continue
                            N = size - esize
                            dmin = min(spec.min_degree, 0)
                            xs = spec.variables_up_to(D - max(N - 1, 0) * dmin)
                            a = skew_schur(lam, eta, spec, D)
                            b = schur_tableaux(lam, eta, xs, n)
                            if not a.agrees(b, D):
                                bad.append(("tableaux", n, nu, lam, eta))
    # sum_lam s_lam(x) s_lam(q0 y) = prod_{i,j} 1 / (1 - q0 x_i y_j)
    for n in (1, 2, 3):
        reg = vertex_registry(n)
        x, y = Specialization(n), Specialization(n, barred=True)
        q0 = tuple(1 if k == 0 else 0 for k in range(n))
        lhs = Series.zero(reg, D)
        for size in range(D + 1):
            for lam in partitions_of(size):
                term = skew_schur(lam, Partition(), x, D) * skew_schur(lam, Partition(), y, D)
                lhs = lhs + term.shift(tuple(size * c for c in q0)).truncate(D)
        rhs = Series.one(reg, D)
        for xi in x.variables_up_to(D):
            for yj in y.variables_up_to(D):
                e = tuple(p + r + s for p, r, s in zip(xi, yj, q0))
                rhs = rhs * geom_expand(reg, e, -1, 1, D)
        if not lhs.truncate(D).agrees(rhs.truncate(D), D):
            bad.append(("cauchy", n))
    return CheckResult("schur", not bad, "tableaux |lam| <= 4, Cauchy to degree 6", failures=bad)


CHECKS = {
    "oracle": check_oracle,
    "macmahon": check_macmahon,
    "bz2": check_bz2,
    "football": check_football,
    "symmetry": check_symmetry,
    "chi": check_chi,
    "signs": check_signs,
    "operators": check_operators,
    "crepant": check_crepant,
    "schur": check_schur,
}


def run(key: str, cfg: AcceptanceConfig | None = None) -> CheckResult:
    cfg = cfg or AcceptanceConfig()
    t = time.perf_counter()
    try:
        res = CHECKS[key](cfg)
    except (GluingError, ValueError) as err:
        res = CheckResult(key, False, f"error: {err}")
    res.seconds = time.perf_counter() - t
    return res
