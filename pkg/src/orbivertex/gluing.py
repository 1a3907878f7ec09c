"""Donaldson-Thomas partition functions of transverse A_{n-1} toric orbifolds.

DT is a sum over edge assignments (a partition on every compact edge) of
edge terms times signed Z_n vertices.  Variables:

* q, of weight L = lcm of all stabilizer orders, used by every n = 1 vertex
  and by the q-factor of every n = 1 edge;
* q_<e><k> for each edge e with n(e) > 1, of weight L / n(e);
* v_<e> (n(e) = 1, or multi-regular mode) or v_<e><k> on compact edges.

No relation between these variables is imposed here (q = prod_k q_<e><k>
holds in the geometry); comparisons that need it substitute explicitly.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import lcm

from . import __version__
from .partitions import (Partition, a_factor, c_factor, colored_counts, conjugate,
                         hooks_colored, is_multiregular, partitions_of)
from .series import (INF, Series, SeriesError, Var, VarRegistry, geom_expand, invert, macmahon,
                     substitute)
from .webdiagram import EdgeGeometry, OrientedDiagram, orient
from .znvertex import prefactor, schur_sum_low, vertex


class GluingError(ValueError):
    pass


class SignError(GluingError):
    pass


@dataclass(frozen=True)
class DTOptions:
    D: int = 6            # weighted q-window
    Dv: int = 1           # v-window
    mode: str = "full"    # "full" or "multiregular"
    signed: bool = True   # False: underline normalization
    jobs: int = 1

    def __post_init__(self):
        if self.D < 0 or self.Dv < 0:
            raise ValueError("windows must be nonnegative")
        if self.mode not in ("full", "multiregular"):
            raise ValueError(f"unknown mode {self.mode!r}")


# ---------------------------------------------------------------- variables


@dataclass(frozen=True)
class VariableModel:
    reg: VarRegistry
    L: int
    n: dict
    multiregular: bool

    def qname(self, eid: str, k: int = 0) -> str:
        n = self.n[eid]
        return "q" if n == 1 else f"q_{eid}{k % n}"

    def vname(self, eid: str, k: int = 0) -> str:
        if self.n[eid] == 1 or self.multiregular:
            return f"v_{eid}"
        return f"v_{eid}{k}"


def variable_model(od: OrientedDiagram, multiregular: bool = False) -> VariableModel:
    geo = od.geometry
    n = {eid: g.n for eid, g in geo.items()}
    L = lcm(*n.values()) if n else 1
    vs = [Var("q", L)]
    for e in od.diagram.edges:
        if n[e.id] > 1:
            vs += [Var(f"q_{e.id}{k}", L // n[e.id]) for k in range(n[e.id])]
    for e in od.diagram.edges:
        if not e.compact:
            continue
        if n[e.id] == 1 or multiregular:
            vs.append(Var(f"v_{e.id}", 1, "v"))
        else:
            vs += [Var(f"v_{e.id}{k}", 1, "v") for k in range(n[e.id])]
    return VariableModel(VarRegistry(tuple(vs)), L, n, multiregular)


# ---------------------------------------------------------------- signs


def _parity(x, what) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise SignError(f"{what} = {x} is not an integer")
    return int(x) % 2


def edge_sign(g: EdgeGeometry, lam) -> int:
    """Parity of the edge sign S_lam(e)."""
    lam = Partition(lam)
    n = g.n
    c = colored_counts(lam, n)
    C = c_factor(lam, g.m, g.mp, n)
    s = Fraction(g.mt) + g.deltas[0] + g.deltas[2]
    total = Fraction(0)
    for k in range(n):
        diff = c[(k - 1) % n] - c[(k + 1) % n]
        if diff:
            if C[k].denominator != 1:
                raise SignError(f"edge {g.id}: C[{k}] = {C[k]} is not an integer")
            total += C[k] * diff
        total += c[k] * (1 + (1 + s) * c[(k - 1) % n])
    return _parity(total, f"edge sign on {g.id}")


def edge_sign_from_ext(g: EdgeGeometry, lam) -> int:
    """Parity of the edge contribution SE_lam(e) read off from the Ext sign formula."""
    lam = Partition(lam)
    n = g.n
    if n == 1:
        return _parity(lam.size * (Fraction(g.mt) + g.deltas[0] + g.deltas[2]), "SE")
    c = colored_counts(lam, n)
    C = c_factor(lam, g.m, g.mp, n)
    total = Fraction(0)
    for k in range(n):
        total += C[k] * (c[(k - 1) % n] - c[(k + 1) % n])
        total += c[k] * (1 + (1 + Fraction(g.m)) * c[(k - 1) % n])
    return _parity(total, "SE")


@dataclass(frozen=True)
class SignReport:
    agree: bool
    packaged: int
    from_ext: int


def sign_crosscheck(g: EdgeGeometry, lam) -> SignReport:
    if g.n > 1 and (any(g.deltas) or g.mt != g.m):
        raise GluingError("an orbifold edge has trivial neighbours and m~ = m")
    a, b = edge_sign(g, lam), edge_sign_from_ext(g, lam)
    return SignReport(a == b, a, b)


def leg_counts(lam, n: int, which: int) -> list:
    """Colored sizes of a vertex leg.  A cell (a, b) of leg 1 sits at (0, a, b)
    and has color -a; of leg 2 at (b, 0, a), color b; of leg 3 color a - b."""
    out = [0] * n
    for a, b in Partition(lam).cells():
        col = (-a, b, a - b)[which - 1]
        out[col % n] += 1
    return out


def vertex_sign(l1, l2, l3, n: int) -> int:
    c1, c2, c3 = leg_counts(l1, n, 1), leg_counts(l2, n, 2), leg_counts(l3, n, 3)
    s = sum(c3[k] * (c1[k] + c2[k] + c1[(k - 1) % n] + c2[(k + 1) % n]) for k in range(n))
    return s % 2


def vertex_variable_signs(l3, n: int) -> tuple:
    """(-1)^{s_k(l3)}, s_k = |l3|_{k-1} + |l3|_{k+1}, per vertex variable position k."""
    c = colored_counts(Partition(l3), n)
    return tuple((-1) ** (c[(k - 1) % n] + c[(k + 1) % n]) for k in range(n))


# ---------------------------------------------------------------- edge term

# orientation of f, f', g, g' relative to their vertex in the reference picture
_REF_OUTWARD = (True, False, False, True)


def edge_term(od: OrientedDiagram, vm: VariableModel, eid: str, lam) -> tuple:
    """(sign, exponent dict) of the monomial E_lam(e)."""
    lam = Partition(lam)
    g = od.geometry[eid]
    n = g.n
    exps: dict = {}

    def add(name, k):
        if k:
            exps[name] = exps.get(name, 0) + k
    sign = (-1) ** edge_sign(g, lam)
    c = colored_counts(lam, n)
    if vm.multiregular and n > 1:
        add(vm.vname(eid), lam.size // n)
    else:
        for k in range(n):
            add(vm.vname(eid, k), c[k])
    for k, x in enumerate(c_factor(lam, g.mt, g.mtp, n)):
        if x.denominator != 1:
            raise GluingError(f"edge {eid}: exponent C[{k}] = {x} is not an integer")
        add(vm.qname(eid, k), int(x))
    lamc = conjugate(lam)
    ends = (g.start, g.start, g.end, g.end)
    for idx, (nb, shape) in enumerate(zip(g.neighbors, (lam, lamc, lam, lamc))):
        if not g.deltas[idx]:
            continue
        nn = vm.n[nb]
        flip = od.outward(ends[idx], nb) != _REF_OUTWARD[idx]
        for k, x in enumerate(a_factor(shape, nn)):
            add(vm.qname(nb, -k if flip else k), x)
    return sign, exps


# ---------------------------------------------------------------- assignments


def _edge_choices(n, vdeg, multiregular):
    if multiregular and n > 1:
        return [p for p in partitions_of(vdeg * n) if is_multiregular(p, n)]
    return list(partitions_of(vdeg))


def edge_assignments(od: OrientedDiagram, Dv: int, multiregular: bool = False):
    """Yield dicts edge -> partition in the fixed order: total v-degree, then
    per-edge v-degree compositions, then partitions in enumeration order."""
    edges = od.diagram.compact_edges
    for total in range(Dv + 1):
        for comp in _compositions(total, len(edges)):
            lists = [_edge_choices(od.geometry[e].n, k, multiregular) for e, k in zip(edges, comp)]
            for combo in iproduct(*lists):
                yield dict(zip(edges, combo))


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def vertex_legs(od: OrientedDiagram, vid: str, assignment: dict) -> tuple:
    legs = []
    for eid in od.order[vid]:
        lam = Partition(assignment.get(eid, ()))
        legs.append(lam if od.outward(vid, eid) else conjugate(lam))
    return tuple(legs)


def vertex_low(legs, n: int) -> int:
    """Lowest box-degree of V^n_legs."""
    lam, mu, nu = legs
    return sum(prefactor(lam, mu, n)) + schur_sum_low(lam, mu, nu, n)


@lru_cache(maxsize=4096)
def _vertex_cached(legs, n, D):
    return vertex(legs, n, D)


def _vertex_images(od, vm, vid, legs):
    """Global variable name and sign for each vertex variable position."""
    n = od.vertex_order(vid)
    if n == 1:
        return [("q", 1)]
    e = od.special_edge(vid)
    out_ = od.outward(vid, e)
    signs = vertex_variable_signs(legs[2], n)
    return [(vm.qname(e, k if out_ else -k), signs[k]) for k in range(n)]


def _vertex_global(series: Series, images, reg: VarRegistry, scale: int, low: int) -> Series:
    idx = [reg.index(name) for name, _ in images]
    terms = {}
    size = len(reg)
    for e, c in series.terms.items():
        out = [0] * size
        for k, x in enumerate(e):
            if x:
                out[idx[k]] += x
                if images[k][1] < 0 and x % 2:
                    c = -c
        out = tuple(out)
        terms[out] = terms.get(out, 0) + c
    # every image variable has weight `scale`, so the next missing degree is scale * (qmax + 1)
    qmax = series.qmax * scale + scale - 1 if series.qmax != INF else INF
    return Series(reg, terms, qmax, INF, low * scale, 0)


def assignment_term(od: OrientedDiagram, vm: VariableModel, assignment: dict, W: int) -> Series:
    """One summand of the underline partition function, exact to weighted degree W."""
    reg = vm.reg
    sign = 1
    exps: dict = {}
    for eid, lam in assignment.items():
        s, e = edge_term(od, vm, eid, lam)
        sign *= s
        for k, x in e.items():
            exps[k] = exps.get(k, 0) + x
    mono = reg.exps(exps)
    dE = reg.qdeg(mono)
    verts = []
    for v in od.diagram.vertices:
        legs = vertex_legs(od, v.id, assignment)
        n = od.vertex_order(v.id)
        if vertex_sign(*legs, n):
            sign = -sign
        verts.append((v.id, legs, n, vm.L // n, vertex_low(legs, n)))
    total_low = dE + sum(c * lo for _, _, _, c, lo in verts)
    if total_low > W:
        return Series.zero(reg, W)
    out = Series.monomial(reg, mono, sign)
    for vid, legs, n, c, lo in verts:
        rest = total_low - c * lo
        Dbox = max((W - rest) // c, 0)
        V = _vertex_cached(legs, n, Dbox)
        out = out * _vertex_global(V, _vertex_images(od, vm, vid, legs), reg, c, lo)
    out = out.truncate(W)
    if out.qmax < W:
        raise GluingError("assignment term lost precision")
    return out


def _sign_flipped(vm: VariableModel) -> set:
    return {"q"} | {vm.qname(e, 0) for e, n in vm.n.items() if n > 1}


def _apply_sign_convention(s: Series, vm: VariableModel) -> Series:
    """q -> -q and q_<e>0 -> -q_<e>0."""
    names = _sign_flipped(vm)
    flip = [i for i, name in enumerate(vm.reg.names) if name in names]
    terms = {}
    for e, c in s.terms.items():
        if sum(e[i] for i in flip) % 2:
            c = -c
        terms[e] = c
    return s.copy_with(terms)


def _term_job(args):
    od, vm, assignment, W, Dv = args
    return assignment_term(od, vm, assignment, W).truncate(W, Dv)


def dt_partition_function(od: OrientedDiagram, opts: DTOptions) -> Series:
    if not isinstance(od, OrientedDiagram):
        od = orient(od)
    mr = opts.mode == "multiregular"
    vm = variable_model(od, mr)
    assignments = list(edge_assignments(od, opts.Dv, mr))
    jobs = [(od, vm, a, opts.D, opts.Dv) for a in assignments]
    if opts.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(opts.jobs) as ex:
            parts = list(ex.map(_term_job, jobs, chunksize=max(1, len(jobs) // (4 * opts.jobs))))
    else:
        parts = [_term_job(j) for j in jobs]
    total = Series.zero(vm.reg, opts.D, opts.Dv)
    total.vlow = 0
    for p in parts:
        total = total + p
    total = total.truncate(opts.D, opts.Dv)
    if opts.signed:
        total = _apply_sign_convention(total, vm)
    return total


def dt_zero(od: OrientedDiagram, opts: DTOptions) -> Series:
    """The empty-assignment term: a product of vacua, exact in every v-degree."""
    if not isinstance(od, OrientedDiagram):
        od = orient(od)
    vm = variable_model(od, opts.mode == "multiregular")
    out = assignment_term(od, vm, {}, opts.D)
    out.vlow = 0
    return _apply_sign_convention(out, vm) if opts.signed else out


def dt_reduced(od: OrientedDiagram, opts: DTOptions) -> Series:
    if not isinstance(od, OrientedDiagram):
        od = orient(od)
    full = dt_partition_function(od, opts)
    zero = dt_zero(od, opts)
    try:
        inv = invert(zero, opts.D, opts.Dv)
    except SeriesError as err:
        raise GluingError(f"degree zero part is not invertible in the window: {err}")
    return (full * inv).truncate(opts.D, opts.Dv)


def dt_multiregular(od: OrientedDiagram, opts: DTOptions) -> Series:
    return dt_reduced(od, replace(opts, mode="multiregular"))


def provenance(od: OrientedDiagram, opts: DTOptions) -> dict:
    return {"diagram": od.diagram.name, "diagram_hash": od.diagram.digest(),
            "options": asdict(opts), "orbivertex": __version__}


# ---------------------------------------------------------------- football closed form


def football_registry(a: int, b: int) -> VarRegistry:
    """q, the non-zero colors of the two orbifold edges f and g', and v."""
    L = lcm(a, b)
    vs = [Var("q", L)]
    vs += [Var(f"q_f{k}", L // a) for k in range(1, a)]
    vs += [Var(f"q_gp{k}", L // b) for k in range(1, b)]
    vs.append(Var("v_e", 1, "v"))
    return VarRegistry(tuple(vs))


def football_closed_form(a: int, b: int, D: int, Dv: int) -> Series:
    """M(1,-q)^{a+b} prod_{C+} M(w,-q) prod_{C-} M(u,-q)^{-1} on P^1_{a,b}."""
    reg = football_registry(a, b)
    q = {"q": 1}
    out = macmahon(reg, None, q, -1, D, Dv) ** (a + b)
    for name, n in (("q_f", a), ("q_gp", b)):
        for i in range(1, n):
            for j in range(i, n):
                w = {f"{name}{k}": 1 for k in range(i, j + 1)}
                out = out * macmahon(reg, w, q, -1, D, Dv)
                out = out * macmahon(reg, {k: -1 for k in w}, q, -1, D, Dv)
    for k in range(1, a + 1):
        for l in range(1, b + 1):
            u = {"v_e": 1}
            u.update({f"q_f{i}": 1 for i in range(k, a)})
            u.update({f"q_gp{i}": 1 for i in range(l, b)})
            out = out * invert(macmahon(reg, u, q, -1, D, Dv))
    return out.truncate(D, Dv)


def to_football_variables(s: Series, a: int, b: int) -> Series:
    """Eliminate q_f0 and q_gp0 through q = q_f0...q_f{a-1} = q_gp0...q_gp{b-1}."""
    reg = football_registry(a, b)
    mapping = {}
    if a > 1:
        mono = {"q": 1}
        mono.update({f"q_f{k}": -1 for k in range(1, a)})
        mapping["q_f0"] = mono
    if b > 1:
        mono = {"q": 1}
        mono.update({f"q_gp{k}": -1 for k in range(1, b)})
        mapping["q_gp0"] = mono
    return substitute(s, mapping, reg)


# ---------------------------------------------------------------- rational form


@dataclass
class RationalTerm:
    """coeff * x^mono / prod (1 - sign * x^d) over d in dens (exponent dicts)."""
    coeff: int
    mono: dict
    dens: list = field(default_factory=list)


def multiregular_rational_terms(od: OrientedDiagram, Dv: int, signed: bool = False) -> list:
    """DT_mr / DT_0 as an explicit finite sum of rational functions.

    Needs every compact edge to sit in position 3 at both of its vertices, so
    that the other two legs are empty.  A multi-regular vertex is then
    V_000 * H_{lam3} and each summand is an edge monomial over hook factors.
    """
    vm = variable_model(od, True)
    out = []
    for asg in edge_assignments(od, Dv, True):
        sign, exps = 1, {}
        for eid, lam in asg.items():
            s, e = edge_term(od, vm, eid, lam)
            sign *= s
            for k, x in e.items():
                exps[k] = exps.get(k, 0) + x
        dens = []
        for v in od.diagram.vertices:
            legs = vertex_legs(od, v.id, asg)
            if legs[0].size or legs[1].size:
                raise GluingError("rational form needs empty legs off the special edge")
            n = od.vertex_order(v.id)
            images = _vertex_images(od, vm, v.id, legs)
            for _, h in hooks_colored(legs[2], n):
                dens.append({images[k][0]: h[k] for k in range(n) if h[k]})
        out.append(RationalTerm(sign, exps, dens))
    if signed:
        flip = _sign_flipped(vm)

        def sgn(d):
            return (-1) ** (sum(x for k, x in d.items() if k in flip) % 2)
        out = [RationalTerm(t.coeff * sgn(t.mono), t.mono,
                            [(d, sgn(d)) for d in t.dens]) for t in out]
    else:
        out = [RationalTerm(t.coeff, t.mono, [(d, 1) for d in t.dens]) for t in out]
    return out


def expand_rational(terms: list, reg: VarRegistry, D: int, Dv: int) -> Series:
    """Expand a rational sum in the registry's own grading."""
    total = Series.zero(reg, D, Dv)
    total.vlow = 0
    for t in terms:
        s = Series.monomial(reg, reg.exps(t.mono), t.coeff)
        for d, sg in t.dens:
            s = s * geom_expand(reg, reg.exps(d), -1, sg, D, Dv)
        total = total + s.truncate(D, Dv)
    return total.truncate(D, Dv)


# ---------------------------------------------------------------- crepant resolution check


@dataclass
class CrepantReport:
    ok: bool
    compared: int
    mismatches: list
    window: dict


def _y_regime_factor(x: int, b: int, sign: int):
    """1 / (1 - sign q^x v_f^b) as (prefactor coeff, prefactor (x, b), ratio (x, b), ratio sign).

    The resolution side is a power series in v_f whose coefficients are
    Laurent in q and bounded below, so a ratio with negative v_f power is
    flipped: 1/(1 - m) = -m^{-1} / (1 - m^{-1}).
    """
    if b < 0 or (b == 0 and x < 0):
        return -sign, (-x, -b), (-x, -b), sign
    if b == 0 and x == 0:
        raise GluingError("constant denominator in the rational form")
    return 1, (0, 0), (x, b), sign


def _dict_mul(A: dict, B: dict, keep) -> dict:
    out: dict = {}
    for (a1, b1, d1), c1 in A.items():
        for (a2, b2, d2), c2 in B.items():
            k = (a1 + a2, b1 + b2, d1 + d2)
            if keep(k):
                out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def orbifold_in_resolution_variables(od: OrientedDiagram, Dv: int, Qs: int, P: int) -> dict:
    """Signed DT_mr / DT_0 of an n = 2 gerbe, rewritten as a series in (q, v_f, v_s).

    Uses q_0 = q / v_f, q_1 = v_f, v = v_s / v_f and expands in the regime of
    the resolution.  Returns {(q power, v_f power, v_s power): coeff}, exact
    for q power <= Qs and v_f + v_s power <= P.
    """
    (eid,) = [e for e in od.geometry if od.geometry[e].n > 1]
    q0, q1 = f"q_{eid}0", f"q_{eid}1"
    if od.geometry[eid].n != 2:
        raise GluingError("the crepant check is written for a single Z_2 edge")

    def to_y(mono):
        x, y, d = mono.get(q0, 0), mono.get(q1, 0), mono.get(f"v_{eid}", 0)
        return (x, y - x - d, d)

    total: dict = {}
    for t in multiregular_rational_terms(od, Dv, signed=True):
        a, b, d = to_y(t.mono)
        coeff = t.coeff
        ratios = []
        for den, sg in t.dens:
            x, bb, _ = to_y(den)
            c, (px, pb), r, rs = _y_regime_factor(x, bb, sg)
            coeff *= c
            a, b = a + px, b + pb
            ratios.append((r, rs))
        vroom = P - d - b
        if vroom < 0:
            continue
        # the v_f-carrying ratios can lower the q power; bound that first
        qmin = a
        for (x, bb), _ in ratios:
            if bb > 0 and x < 0:
                qmin += (vroom // bb) * x
        qroom = Qs - qmin
        term = {(a, b, d): coeff}
        for (x, bb), rs in ratios:
            if bb > 0:
                kmax = vroom // bb
            else:
                kmax = qroom // x
            geo = {(k * x, k * bb, 0): rs ** k for k in range(kmax + 1)}
            term = _dict_mul(term, geo, lambda k: k[1] + k[2] <= P)
        for k, c in term.items():
            if k[0] <= Qs:
                total[k] = total.get(k, 0) + c
    return {k: c for k, c in total.items() if c}


def resolution_reduced(od: OrientedDiagram, Qs: int, P: int, sections=("AB", "DC"),
                       fibers=("BC", "AD")) -> dict:
    """Signed DT(Y) / DT_exc(Y) for local P^1 x P^1, DT_exc being the v_s-free part."""
    # dividing by the degree zero part first leaves exc = 1 + (v-degree >= 1)
    full = dt_reduced(od, DTOptions(D=Qs, Dv=P))
    reg = VarRegistry((Var("q", 1), Var("v_f", 1, "v"), Var("v_s", 1, "v")))
    mapping = {f"v_{e}": {"v_s": 1} for e in sections}
    mapping.update({f"v_{e}": {"v_f": 1} for e in fibers})
    Y = substitute(full, mapping, reg)
    s_idx = reg.index("v_s")
    exc = Y.copy_with({e: c for e, c in Y.terms.items() if e[s_idx] == 0})
    # exc = 1 + r with r of v-degree >= 1: invert as a power series in v,
    # letting the products shrink the exact q-window as they must
    neg_r = Series.one(reg) - exc
    inv = Series.one(reg, exc.qmax, P)
    power = Series.one(reg, exc.qmax, P)
    for _ in range(P):
        power = (power * neg_r).truncate(INF, P)
        inv = inv + power
    R = (Y * inv).truncate(Qs, P)
    out = {}
    for e, c in R.terms.items():
        out[(e[0], e[1], e[2])] = c
    return out, R.qmax


def crepant_check(Qs: int = 6, P: int = 4, Dv: int = 2) -> CrepantReport:
    """Compare the gerbe side with the resolution side on their common window."""
    from .webdiagram import load_example
    orb = orbifold_in_resolution_variables(orient(load_example("bz2_gerbe")), Dv, Qs, P)
    res, qmax = resolution_reduced(orient(load_example("local_p1xp1")), Qs, P)
    Q = int(min(Qs, qmax))

    def inside(k):
        return k[2] <= Dv and k[1] + k[2] <= P and k[0] <= Q
    keys = {k for k in orb if inside(k)} | {k for k in res if inside(k)}
    bad = [(k, orb.get(k, 0), res.get(k, 0)) for k in sorted(keys) if orb.get(k, 0) != res.get(k, 0)]
    return CrepantReport(not bad, len(keys), bad, {"q": Q, "v": P, "v_s": Dv})
