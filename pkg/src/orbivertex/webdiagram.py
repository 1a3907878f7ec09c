"""Toric web diagrams: parsing, local groups, normal bundle degrees, orientations.

Markings x_{v,e} are the integer edge vectors of the diagram, listed in
counterclockwise order around each vertex.  Everything else (stabilizer
orders, normal degrees, the integers m~, m~' and the delta flags of each
compact edge) is derived from the markings.

For an edge e running from p0 to pinf, D(e) is the region on its right and
D'(e) the region on its left.  At p0 the counterclockwise order is
(e, f', f), at pinf it is (e, g, g'), so f and g bound D(e).
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd
from pathlib import Path

from sympy import Poly, QQ, cyclotomic_poly, symbols


class DiagramError(ValueError):
    """Malformed diagram; the message names the offending vertex or edge."""


class NotCalabiYau(DiagramError):
    pass


class NotTransverse(DiagramError):
    pass


def wedge(x, y) -> int:
    return x[0] * y[1] - x[1] * y[0]


def _vec(x, where):
    if x is None or len(x) != 2 or not all(isinstance(c, int) for c in x):
        raise DiagramError(f"{where}: marking must be a pair of integers, got {x!r}")
    if x[0] == 0 and x[1] == 0:
        raise DiagramError(f"{where}: zero marking")
    return (int(x[0]), int(x[1]))


@dataclass(frozen=True)
class EdgeSpec:
    id: str
    start: str | None
    end: str | None
    marking_from: tuple | None
    marking_to: tuple | None
    compact: bool
    expect: dict | None = None

    def marking_at(self, v: str) -> tuple:
        if v == self.start and self.marking_from is not None:
            return self.marking_from
        if v == self.end and self.marking_to is not None:
            return self.marking_to
        raise DiagramError(f"edge {self.id}: no marking at vertex {v}")

    def other_end(self, v: str):
        if v == self.start:
            return self.end
        if v == self.end:
            return self.start
        raise DiagramError(f"edge {self.id} does not meet vertex {v}")


@dataclass(frozen=True)
class VertexSpec:
    id: str
    edges: tuple


@dataclass(frozen=True)
class WebDiagram:
    vertices: tuple
    edges: tuple
    name: str = ""

    def vertex(self, vid: str) -> VertexSpec:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise DiagramError(f"unknown vertex {vid}")

    def edge(self, eid: str) -> EdgeSpec:
        for e in self.edges:
            if e.id == eid:
                return e
        raise DiagramError(f"unknown edge {eid}")

    def marking(self, vid: str, eid: str) -> tuple:
        return self.edge(eid).marking_at(vid)

    def ccw_from(self, vid: str, eid: str) -> tuple:
        """The three edges at vid in counterclockwise order, starting with eid."""
        es = self.vertex(vid).edges
        i = es.index(eid)
        return es[i:] + es[:i]

    @property
    def compact_edges(self) -> list:
        return [e.id for e in self.edges if e.compact]

    def to_json(self) -> dict:
        out = {"vertices": [{"id": v.id, "edges": list(v.edges)} for v in self.vertices],
               "edges": []}
        if self.name:
            out["name"] = self.name
        for e in self.edges:
            d = {"id": e.id, "from": e.start, "to": e.end,
                 "marking_from": list(e.marking_from) if e.marking_from else None,
                 "marking_to": list(e.marking_to) if e.marking_to else None,
                 "compact": e.compact}
            if e.expect:
                d["expect"] = e.expect
            out["edges"].append(d)
        return out

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


# ---------------------------------------------------------------- parsing


def parse_and_validate(doc) -> WebDiagram:
    """Build a WebDiagram from its JSON document (dict or JSON text) and check it."""
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    try:
        vdocs, edocs = doc["vertices"], doc["edges"]
    except (KeyError, TypeError):
        raise DiagramError("diagram needs 'vertices' and 'edges' lists")
    vertices = []
    for vd in vdocs:
        vid = str(vd["id"])
        es = tuple(str(x) for x in vd["edges"])
        if len(es) != 3 or len(set(es)) != 3:
            raise DiagramError(f"vertex {vid}: must have three distinct edges, got {list(es)}")
        vertices.append(VertexSpec(vid, es))
    ids = [v.id for v in vertices]
    if len(set(ids)) != len(ids):
        raise DiagramError("duplicate vertex ids")
    edges = []
    for ed in edocs:
        eid = str(ed["id"])
        start, end = ed.get("from"), ed.get("to")
        compact = bool(ed.get("compact", start is not None and end is not None))
        mf = ed.get("marking_from")
        mt = ed.get("marking_to")
        mf = _vec(mf, f"edge {eid}") if mf is not None else None
        mt = _vec(mt, f"edge {eid}") if mt is not None else None
        if compact != (start is not None and end is not None):
            raise DiagramError(f"edge {eid}: compact flag disagrees with its endpoints")
        if start is None and end is None:
            raise DiagramError(f"edge {eid}: no endpoint")
        if compact:
            if mf is None:
                raise DiagramError(f"edge {eid}: missing marking_from")
            if mt is None:
                mt = (-mf[0], -mf[1])
            if mf[0] + mt[0] or mf[1] + mt[1]:
                raise DiagramError(f"edge {eid}: markings at the two ends do not cancel")
        elif start is not None and mf is None:
            raise DiagramError(f"edge {eid}: missing marking_from")
        elif start is None and mt is None:
            raise DiagramError(f"edge {eid}: missing marking_to")
        edges.append(EdgeSpec(eid, None if start is None else str(start),
                              None if end is None else str(end), mf, mt, compact,
                              ed.get("expect")))
    eids = [e.id for e in edges]
    if len(set(eids)) != len(eids):
        raise DiagramError("duplicate edge ids")
    d = WebDiagram(tuple(vertices), tuple(edges), str(doc.get("name", "")))
    _check(d)
    return d


def _check(d: WebDiagram):
    vids = {v.id for v in d.vertices}
    eids = {e.id for e in d.edges}
    for v in d.vertices:
        for eid in v.edges:
            if eid not in eids:
                raise DiagramError(f"vertex {v.id}: dangling edge reference {eid}")
            e = d.edge(eid)
            if v.id not in (e.start, e.end):
                raise DiagramError(f"vertex {v.id}: edge {eid} does not end at this vertex")
    for e in d.edges:
        for end in (e.start, e.end):
            if end is None:
                continue
            if end not in vids:
                raise DiagramError(f"edge {e.id}: dangling vertex reference {end}")
            if e.id not in d.vertex(end).edges:
                raise DiagramError(f"edge {e.id}: not listed at its endpoint {end}")
    for v in d.vertices:
        s = [0, 0]
        for eid in v.edges:
            x = d.marking(v.id, eid)
            s[0] += x[0]
            s[1] += x[1]
        if s != [0, 0]:
            raise DiagramError(f"vertex {v.id}: markings sum to {tuple(s)}, not zero")


def load_diagram(path) -> WebDiagram:
    return parse_and_validate(Path(path).read_text())


def example_names() -> list:
    root = resources.files("orbivertex") / "diagrams"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_example(name: str) -> WebDiagram:
    root = resources.files("orbivertex") / "diagrams"
    return parse_and_validate((root / f"{name}.json").read_text())


# ---------------------------------------------------------------- local data


def local_group_order(d: WebDiagram, vid: str) -> int:
    x1, x2, x3 = (d.marking(vid, e) for e in d.vertex(vid).edges)
    ws = {wedge(x1, x2), wedge(x2, x3), wedge(x3, x1)}
    if len(ws) != 1:
        raise DiagramError(f"vertex {vid}: wedges {sorted(ws)} disagree")
    w = ws.pop()
    if w <= 0:
        raise DiagramError(f"vertex {vid}: edges are not in counterclockwise order")
    return w


def edge_stabilizer(d: WebDiagram, eid: str) -> int:
    e = d.edge(eid)
    x = e.marking_from if e.marking_from is not None else e.marking_to
    if x == (0, 0):
        raise DiagramError(f"edge {eid}: zero marking")
    return gcd(x[0], x[1])


def _complement(u) -> tuple:
    """Some integer w with u ^ w = 1, for primitive u."""
    a, b = u
    # extended gcd: s*a + t*b = 1, then w = (-t, s) gives a*s + b*t = 1
    def egcd(x, y):
        if y == 0:
            return (x, 1, 0) if x >= 0 else (-x, -1, 0)
        g, s, t = egcd(y, x % y)
        return g, t, s - (x // y) * t
    g, s, t = egcd(a, b)
    if g != 1:
        raise DiagramError(f"{u} is not primitive")
    return (-t, s)


@dataclass(frozen=True)
class LineType:
    """Type (a0, ainf, m) of a line bundle on a Z_h gerbe over P^1_{k0,kinf}, and its degree."""

    a0: int
    ainf: int
    m: int
    h: int
    k0: int
    kinf: int

    @property
    def degree(self) -> Fraction:
        return Fraction(1, self.h) * (Fraction(self.a0, self.k0) + Fraction(self.ainf, self.kinf) + self.m)


def _left_type(d: WebDiagram, eid: str, P: str, Q: str) -> LineType:
    """Type of O_C(region to the left of e when walking from P to Q)."""
    x1 = d.marking(P, eid)
    h = gcd(*x1)
    u = (x1[0] // h, x1[1] // h)
    w = _complement(u)
    kP = local_group_order(d, P) // h
    kQ = local_group_order(d, Q) // h
    x3P = d.marking(P, d.ccw_from(P, eid)[2])
    x2Q = d.marking(Q, d.ccw_from(Q, eid)[1])
    at0 = wedge(x3P, w)
    atinf = -wedge(x2Q, w)
    if (at0 * u[0] - kP * w[0], at0 * u[1] - kP * w[1]) != x3P:
        raise DiagramError(f"edge {eid}: unexpected marking shape at {P}")
    if (-atinf * u[0] - kQ * w[0], -atinf * u[1] - kQ * w[1]) != x2Q:
        raise DiagramError(f"edge {eid}: unexpected marking shape at {Q}")
    a0, ainf = at0 % kP, atinf % kQ
    m = (at0 - a0) // kP + (atinf - ainf) // kQ
    t = LineType(a0, ainf, m, h, kP, kQ)
    if t.degree != Fraction(wedge(x2Q, x3P), h * kP * kQ):
        raise DiagramError(f"edge {eid}: type and wedge degree disagree")
    return t


@dataclass(frozen=True)
class NormalData:
    right: LineType  # O_C(D(e))
    left: LineType   # O_C(D'(e))

    @property
    def degrees(self) -> tuple:
        return self.right.degree, self.left.degree


def normal_degrees(d: WebDiagram, eid: str) -> NormalData:
    e = d.edge(eid)
    if not e.compact:
        raise DiagramError(f"edge {eid} is not compact")
    return NormalData(_left_type(d, eid, e.end, e.start), _left_type(d, eid, e.start, e.end))


# ---------------------------------------------------------------- edge geometry


@dataclass(frozen=True)
class EdgeGeometry:
    id: str
    n: int
    compact: bool
    start: str | None = None
    end: str | None = None
    m: Fraction | None = None
    mp: Fraction | None = None
    mt: Fraction | None = None
    mtp: Fraction | None = None
    deltas: tuple = (0, 0, 0, 0)  # (delta_0, delta_0', delta_inf, delta_inf')
    orders: tuple = (1, 1, 1, 1)  # (a, a', b, b')
    neighbors: tuple = (None, None, None, None)  # (f, f', g, g')

    @property
    def mt_int(self) -> int:
        if self.mt is None or self.mt.denominator != 1:
            raise DiagramError(f"edge {self.id}: m~ = {self.mt} is not an integer")
        return int(self.mt)


def _expect_check(eg: EdgeGeometry, expect: dict | None):
    if not expect:
        return
    got = {"n": eg.n, "m": eg.m, "mp": eg.mp, "mt": eg.mt, "mtp": eg.mtp,
           "deltas": list(eg.deltas)}
    for key, want in expect.items():
        if key not in got:
            raise DiagramError(f"edge {eg.id}: unknown expect field {key!r}")
        have = got[key]
        if isinstance(have, Fraction):
            want = Fraction(str(want))
        if have != want:
            raise DiagramError(f"edge {eg.id}: derived {key} = {have}, diagram file expects {want}")


def derive_edge_geometry(d: WebDiagram) -> dict:
    out = {}
    n_of = {e.id: edge_stabilizer(d, e.id) for e in d.edges}
    for e in d.edges:
        n = n_of[e.id]
        if not e.compact:
            eg = EdgeGeometry(e.id, n, False, e.start, e.end)
            _expect_check(eg, e.expect)
            out[e.id] = eg
            continue
        _, fp, f = d.ccw_from(e.start, e.id)
        _, g, gp = d.ccw_from(e.end, e.id)
        orders = (n_of[f], n_of[fp], n_of[g], n_of[gp])
        deltas = tuple(int(o > 1) for o in orders)
        nd = normal_degrees(d, e.id)
        m, mp = nd.degrees
        if n > 1:
            if m + mp != -2:
                raise NotCalabiYau(f"edge {e.id}: m + m' = {m + mp}, expected -2")
            mt, mtp = m, mp
        else:
            a, ap, b, bp = orders
            d0, d0p, di, dip = deltas
            if (d0 and d0p) or (di and dip):
                raise NotCalabiYau(f"edge {e.id}: both neighbours at one end are orbifold edges")
            mt = m + Fraction(d0, a) + Fraction(di, b)
            mtp = mp + Fraction(d0p, ap) + Fraction(dip, bp)
            if mt.denominator != 1 or mtp.denominator != 1:
                raise NotCalabiYau(f"edge {e.id}: m~ = {mt}, m~' = {mtp} are not integers")
            if mt + mtp != sum(deltas) - 2:
                raise NotCalabiYau(f"edge {e.id}: m~ + m~' = {mt + mtp}, expected {sum(deltas) - 2}")
        eg = EdgeGeometry(e.id, n, True, e.start, e.end, m, mp, mt, mtp, deltas, orders,
                          (f, fp, g, gp))
        _expect_check(eg, e.expect)
        out[e.id] = eg
    return out


# ---------------------------------------------------------------- transverse A_{n-1}


@dataclass
class TransverseReport:
    ok: bool
    problems: list = field(default_factory=list)


def transverse_a_check(d: WebDiagram) -> TransverseReport:
    problems = []
    n_of = {e.id: edge_stabilizer(d, e.id) for e in d.edges}
    for v in d.vertices:
        try:
            G = local_group_order(d, v.id)
        except DiagramError as err:
            problems.append(str(err))
            continue
        orb = [eid for eid in v.edges if n_of[eid] > 1]
        if len(orb) > 1:
            problems.append(f"vertex {v.id}: orbifold edges {orb} meet")
            continue
        want = n_of[orb[0]] if orb else 1
        if G != want:
            problems.append(f"vertex {v.id}: local group of order {G}, but the "
                            f"orbifold edge order is {want}")
    return TransverseReport(not problems, problems)


# ---------------------------------------------------------------- orientation


@dataclass(frozen=True)
class OrientedDiagram:
    diagram: WebDiagram
    geometry: dict
    order: dict  # vertex id -> (e1, e2, e3)

    def outward(self, vid: str, eid: str) -> bool:
        return self.diagram.edge(eid).start == vid

    def special_edge(self, vid: str):
        e3 = self.order[vid][2]
        return e3 if self.geometry[e3].n > 1 else None

    def vertex_order(self, vid: str) -> int:
        s = self.special_edge(vid)
        return 1 if s is None else self.geometry[s].n


def orient(d: WebDiagram) -> OrientedDiagram:
    """Edge directions are taken from the file (from -> to); at each vertex
    the ccw list is rotated so that the orbifold edge, if any, comes last."""
    rep = transverse_a_check(d)
    if not rep.ok:
        raise NotTransverse("; ".join(rep.problems))
    geo = derive_edge_geometry(d)
    order = {}
    for v in d.vertices:
        es = v.edges
        orb = [i for i, eid in enumerate(es) if geo[eid].n > 1]
        if orb:
            i = orb[0]
            es = es[i + 1:] + es[:i + 1]
        order[v.id] = tuple(es)
    return OrientedDiagram(d, geo, order)


# ---------------------------------------------------------------- transformations


def reverse_edge(d: WebDiagram, eid: str) -> WebDiagram:
    """The same diagram with edge eid running the other way."""
    edges = []
    for e in d.edges:
        if e.id == eid:
            e = replace(e, start=e.end, end=e.start, marking_from=e.marking_to,
                        marking_to=e.marking_from, expect=None)
        edges.append(e)
    return WebDiagram(d.vertices, tuple(edges), d.name)


def relabel(d: WebDiagram, vmap: dict, emap: dict) -> WebDiagram:
    def V(x):
        return None if x is None else vmap.get(x, x)

    def E(x):
        return emap.get(x, x)
    vertices = tuple(VertexSpec(V(v.id), tuple(E(x) for x in v.edges)) for v in d.vertices)
    edges = tuple(replace(e, id=E(e.id), start=V(e.start), end=V(e.end)) for e in d.edges)
    return WebDiagram(vertices, edges, d.name)


def transform(d: WebDiagram, g) -> WebDiagram:
    """Apply the integer matrix g = ((a, b), (c, d)) to every marking."""
    (a, b), (c, dd) = g

    def act(x):
        return None if x is None else (a * x[0] + b * x[1], c * x[0] + dd * x[1])
    edges = tuple(replace(e, marking_from=act(e.marking_from), marking_to=act(e.marking_to))
                  for e in d.edges)
    return WebDiagram(d.vertices, edges, d.name)


# ---------------------------------------------------------------- football chi


def football_chi(a: int, b: int, d: int, s: int, t: int) -> int:
    """chi(O(d pt + s [0] + t [inf])) on the football P^1_{a,b}."""
    if a < 1 or b < 1:
        raise ValueError("orbifold orders must be positive")
    return d + 1 + s // a + t // b


_X = symbols("x")


@lru_cache(maxsize=None)
def _phi(N: int) -> Poly:
    return Poly(cyclotomic_poly(N, _X), _X, domain=QQ)


def _omega(N: int, k: int) -> Poly:
    return Poly(_X ** (k % N), _X, domain=QQ).rem(_phi(N))


def _rational(p: Poly) -> Fraction:
    if p.degree() > 0:
        raise ArithmeticError("cyclotomic sum is not rational")
    c = p.LC() if not p.is_zero else 0
    return Fraction(int(c.p), int(c.q)) if c else Fraction(0)


@lru_cache(maxsize=None)
def root_of_unity_sum(a: int, s: int) -> Fraction:
    """(1/a) sum_{k=1}^{a-1} w^{ks} / (1 - w^{-k}), w = exp(2 pi i / a), exactly."""
    if a == 1:
        return Fraction(0)
    phi = _phi(a)
    total = Poly(0, _X, domain=QQ)
    for k in range(1, a):
        den = (Poly(1, _X, domain=QQ) - _omega(a, -k)).rem(phi)
        total = (total + _omega(a, k * s) * den.invert(phi)).rem(phi)
    return _rational(total) / a


def root_of_unity_closed(a: int, s: int) -> Fraction:
    return Fraction(s // a) - Fraction(s, a) + Fraction(a - 1, 2 * a)


def toen_chi(a: int, b: int, d: int, s: int, t: int) -> Fraction:
    """chi on P^1_{a,b} by integrating the Toen operator over the inertia stack."""
    return (d + Fraction(s, a) + Fraction(t, b) + Fraction(1, 2 * a) + Fraction(1, 2 * b)
            + root_of_unity_sum(a, s) + root_of_unity_sum(b, t))
