"""Exact truncated multivariate Laurent series.

A series lives over a VarRegistry.  Every variable is either q-type (it
contributes `weight` to the q-grading) or v-type (it contributes `weight` to
the separate v-grading).  A series stores its terms together with

* qmax, vmax: every coefficient of a monomial with q-degree <= qmax and
  v-degree <= vmax is exact (math.inf means no truncation),
* qlow, vlow: lower bounds for the degrees of all terms of the true series,
* floor: per-variable lower bounds on exponents (None where unbounded).

Every operation derives the exact region of its result from these.  Nothing
outside the exact region is ever kept.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping

INF = math.inf


class SeriesError(ValueError):
    pass


class WindowError(SeriesError):
    pass


@dataclass(frozen=True)
class Var:
    name: str
    weight: int = 1
    kind: str = "q"  # "q" or "v"

    def __post_init__(self):
        if self.kind not in ("q", "v"):
            raise ValueError(f"variable kind must be 'q' or 'v', got {self.kind!r}")
        if self.weight < 1:
            raise ValueError(f"weight of {self.name} must be positive")


@dataclass(frozen=True)
class VarRegistry:
    variables: tuple[Var, ...]

    def __post_init__(self):
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def __len__(self):
        return len(self.variables)

    def index(self, name: str) -> int:
        return _name_index(self)[name]

    def var(self, name: str) -> Var:
        return self.variables[self.index(name)]

    @property
    def qweights(self) -> tuple[int, ...]:
        return tuple(v.weight if v.kind == "q" else 0 for v in self.variables)

    @property
    def vweights(self) -> tuple[int, ...]:
        return tuple(v.weight if v.kind == "v" else 0 for v in self.variables)

    def qdeg(self, exps) -> int:
        return sum(e * w for e, w in zip(exps, self.qweights))

    def vdeg(self, exps) -> int:
        return sum(e * w for e, w in zip(exps, self.vweights))

    def exps(self, mono: Mapping[str, int] | None) -> tuple[int, ...]:
        out = [0] * len(self.variables)
        for name, e in (mono or {}).items():
            out[self.index(name)] += int(e)
        return tuple(out)


@lru_cache(maxsize=None)
def _name_index(reg: VarRegistry) -> dict:
    return {v.name: i for i, v in enumerate(reg.variables)}


@lru_cache(maxsize=None)
def vertex_registry(n: int) -> VarRegistry:
    """Registry q0..q{n-1}, all of weight 1: the natural box grading of a Z_n vertex."""
    return VarRegistry(tuple(Var(f"q{k}") for k in range(n)))


def _min(a, b):
    return a if a <= b else b


def _floor_add(f, g):
    return tuple(None if (x is None or y is None) else x + y for x, y in zip(f, g))


def _floor_min(f, g):
    return tuple(None if (x is None or y is None) else min(x, y) for x, y in zip(f, g))


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Series:
    __slots__ = ("reg", "terms", "qmax", "vmax", "qlow", "vlow", "floor")

    def __init__(self, reg: VarRegistry, terms: Mapping | None = None, qmax=INF, vmax=INF,
                 qlow=None, vlow=None, floor=None):
        self.reg = reg
        qw, vw = reg.qweights, reg.vweights
        kept = {}
        for e, c in (terms or {}).items():
            if c == 0:
                continue
            e = tuple(e)
            if sum(a * w for a, w in zip(e, qw)) > qmax:
                continue
            if sum(a * w for a, w in zip(e, vw)) > vmax:
                continue
            kept[e] = _norm(c)
        self.terms = kept
        self.qmax = qmax
        self.vmax = vmax
        if qlow is None:
            qlow = min((sum(a * w for a, w in zip(e, qw)) for e in kept), default=INF)
        if vlow is None:
            vlow = min((sum(a * w for a, w in zip(e, vw)) for e in kept), default=INF)
        self.qlow = qlow
        self.vlow = vlow
        if floor is None:
            floor = tuple(None for _ in reg.variables)
        self.floor = tuple(floor)

    # ------------------------------------------------------------ constructors

    @classmethod
    def zero(cls, reg, qmax=INF, vmax=INF) -> "Series":
        return cls(reg, {}, qmax, vmax, INF, INF, tuple(0 for _ in reg.variables))

    @classmethod
    def monomial(cls, reg: VarRegistry, exps=None, coeff=1, qmax=INF, vmax=INF) -> "Series":
        if exps is None or isinstance(exps, Mapping):
            exps = reg.exps(exps)
        exps = tuple(exps)
        if coeff == 0:
            return cls.zero(reg, qmax, vmax)
        return cls(reg, {exps: coeff}, qmax, vmax, reg.qdeg(exps), reg.vdeg(exps), exps)

    @classmethod
    def one(cls, reg, qmax=INF, vmax=INF) -> "Series":
        return cls.monomial(reg, None, 1, qmax, vmax)

    @classmethod
    def var(cls, reg, name: str) -> "Series":
        return cls.monomial(reg, {name: 1})

    # ------------------------------------------------------------ basic access

    def copy_with(self, terms, qmax=None, vmax=None, qlow=None, vlow=None, floor=None):
        return Series(self.reg, terms,
                      self.qmax if qmax is None else qmax,
                      self.vmax if vmax is None else vmax,
                      self.qlow if qlow is None else qlow,
                      self.vlow if vlow is None else vlow,
                      self.floor if floor is None else floor)

    def coeff(self, exps) -> Rational:
        if isinstance(exps, Mapping):
            exps = self.reg.exps(exps)
        exps = tuple(exps)
        if self.reg.qdeg(exps) > self.qmax or self.reg.vdeg(exps) > self.vmax:
            raise WindowError(f"monomial {exps} lies outside the exact window")
        return self.terms.get(exps, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"Series({self.to_text()}; qmax={self.qmax}, vmax={self.vmax})"

    def _check(self, other: "Series"):
        if self.reg != other.reg:
            raise SeriesError("registry mismatch")

    def _lift(self, other):
        if isinstance(other, Series):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Series.monomial(self.reg, None, other)
        return NotImplemented

    def truncate(self, qmax=INF, vmax=INF) -> "Series":
        return Series(self.reg, self.terms, _min(self.qmax, qmax), _min(self.vmax, vmax),
                      self.qlow, self.vlow, self.floor)

    # ------------------------------------------------------------ ring ops

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Series(self.reg, terms, _min(self.qmax, other.qmax), _min(self.vmax, other.vmax),
                      _min(self.qlow, other.qlow), _min(self.vlow, other.vlow),
                      _floor_min(self.floor, other.floor))

    __radd__ = __add__

    def __neg__(self):
        return self.copy_with({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Series":
        if c == 0:
            return Series.zero(self.reg, self.qmax, self.vmax)
        return self.copy_with({e: x * c for e, x in self.terms.items()})

    def shift(self, exps, coeff=1) -> "Series":
        """Multiply by the monomial coeff * x^exps."""
        if isinstance(exps, Mapping):
            exps = self.reg.exps(exps)
        exps = tuple(exps)
        dq, dv = self.reg.qdeg(exps), self.reg.vdeg(exps)
        terms = {tuple(a + b for a, b in zip(e, exps)): c * coeff for e, c in self.terms.items()}
        return Series(self.reg, terms, self.qmax + dq, self.vmax + dv, self.qlow + dq,
                      self.vlow + dv, _floor_add(self.floor, exps))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return invert(self) ** (-k)
        result = Series.one(self.reg)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # ------------------------------------------------------------ comparison

    def window_diff(self, other: "Series", qmax=None, vmax=None):
        """Monomials whose coefficients differ inside the common exact window."""
        self._check(other)
        Q = _min(self.qmax, other.qmax)
        V = _min(self.vmax, other.vmax)
        if qmax is not None:
            Q = _min(Q, qmax)
        if vmax is not None:
            V = _min(V, vmax)
        reg = self.reg
        out = []
        for e in sorted(set(self.terms) | set(other.terms)):
            if reg.qdeg(e) > Q or reg.vdeg(e) > V:
                continue
            a, b = self.terms.get(e, 0), other.terms.get(e, 0)
            if a != b:
                out.append((e, a, b))
        return out

    def agrees(self, other: "Series", qmax=None, vmax=None) -> bool:
        return not self.window_diff(other, qmax, vmax)

    # ------------------------------------------------------------ output

    def sorted_terms(self):
        return sorted(self.terms.items())

    def to_text(self, max_terms: int | None = None) -> str:
        names = self.reg.names
        items = sorted(self.terms.items(),
                       key=lambda kv: (self.reg.vdeg(kv[0]), self.reg.qdeg(kv[0]), kv[0]))
        parts = []
        for e, c in items[:max_terms]:
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        if max_terms is not None and len(items) > max_terms:
            parts.append("...")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_json(self) -> dict:
        def w(x):
            return None if x == INF else x
        return {
            "vars": list(self.reg.names),
            "window": {"q": w(self.qmax), "v": w(self.vmax)},
            "terms": [{"exp": list(e), "coeff": str(c)} for e, c in self.sorted_terms()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, doc: dict, reg: VarRegistry | None = None) -> "Series":
        if reg is None:
            reg = VarRegistry(tuple(Var(n) for n in doc["vars"]))
        elif list(reg.names) != list(doc["vars"]):
            raise SeriesError("registry does not match the dumped variables")
        win = doc.get("window", {})
        qmax = INF if win.get("q") is None else win["q"]
        vmax = INF if win.get("v") is None else win["v"]
        terms = {tuple(t["exp"]): Fraction(t["coeff"]) for t in doc["terms"]}
        return cls(reg, terms, qmax, vmax)


# ---------------------------------------------------------------- products


def multiply(a: Series, b: Series) -> Series:
    reg = a.reg
    if not a.terms or not b.terms:
        return Series.zero(reg, _min(a.qmax + b.qlow, b.qmax + a.qlow),
                           _min(a.vmax + b.vlow, b.vmax + a.vlow))
    Q = _min(a.qmax + b.qlow, b.qmax + a.qlow)
    V = _min(a.vmax + b.vlow, b.vmax + a.vlow)
    qlow, vlow = a.qlow + b.qlow, a.vlow + b.vlow
    if Q < qlow or V < vlow:
        raise WindowError("product window is empty")
    qw, vw = reg.qweights, reg.vweights
    if len(a.terms) > len(b.terms):
        a, b = b, a
    bt = sorted(((sum(x * w for x, w in zip(e, qw)), sum(x * w for x, w in zip(e, vw)), e, c)
                 for e, c in b.terms.items()), key=lambda t: t[0])
    res: dict = {}
    get = res.get
    for e1, c1 in a.terms.items():
        q1 = sum(x * w for x, w in zip(e1, qw))
        v1 = sum(x * w for x, w in zip(e1, vw))
        lim, vlim = Q - q1, V - v1
        for q2, v2, e2, c2 in bt:
            if q2 > lim:
                break
            if v2 > vlim:
                continue
            e = tuple([x + y for x, y in zip(e1, e2)])
            res[e] = get(e, 0) + c1 * c2
    return Series(reg, res, Q, V, qlow, vlow, _floor_add(a.floor, b.floor))


def product(factors: Iterable[Series], reg: VarRegistry) -> Series:
    out = Series.one(reg)
    for f in factors:
        out = out * f
    return out


def _binomials(e: int, kmax: int) -> list[int]:
    """Generalised binomial coefficients C(e, k) for k = 0..kmax."""
    out = [1]
    c = 1
    for k in range(kmax):
        c = c * (e - k) // (k + 1) if (c * (e - k)) % (k + 1) == 0 else Fraction(c * (e - k), k + 1)
        out.append(c)
    return out


def geom_expand(reg: VarRegistry, exps, e: int, coeff=1, qmax=INF, vmax=INF) -> Series:
    """(1 - coeff * x^exps)^e, exact inside the window (qmax, vmax).

    The monomial must have positive q-degree, or zero q-degree and positive
    v-degree, so that the expansion is well defined.
    """
    if isinstance(exps, Mapping):
        exps = reg.exps(exps)
    exps = tuple(exps)
    dq, dv = reg.qdeg(exps), reg.vdeg(exps)
    if dq < 0 or (dq == 0 and dv <= 0):
        raise SeriesError(f"cannot expand (1 - m)^e for a monomial of degree ({dq}, {dv})")
    if e >= 0:
        kmax = e
    else:
        kmax = INF
    if dq > 0 and qmax != INF:
        kmax = _min(kmax, qmax // dq)
    if dv > 0 and vmax != INF:
        kmax = _min(kmax, vmax // dv)
    if kmax == INF:
        raise WindowError("geometric expansion needs a finite window")
    kmax = int(kmax)
    binoms = _binomials(e, kmax)
    terms = {}
    for k in range(kmax + 1):
        c = binoms[k] * (-coeff) ** k
        if c:
            terms[tuple(k * x for x in exps)] = c
    floor = tuple(0 if x >= 0 else (None if e < 0 else e * x) for x in exps)
    return Series(reg, terms, qmax, vmax, 0, 0, floor)


def macmahon(reg: VarRegistry, v_exps, q_exps, sign: int = 1, qmax=INF, vmax=INF) -> Series:
    """M(v, q) = prod_{m >= 1} (1 - v q^m)^(-m); with sign=-1 it computes M(v, -q)."""
    if isinstance(v_exps, Mapping) or v_exps is None:
        v_exps = reg.exps(v_exps)
    if isinstance(q_exps, Mapping):
        q_exps = reg.exps(q_exps)
    v_exps, q_exps = tuple(v_exps), tuple(q_exps)
    dq = reg.qdeg(q_exps)
    if dq <= 0:
        raise SeriesError("M(v, q) needs q of positive degree")
    if reg.qdeg(v_exps) + dq <= 0 and reg.vdeg(v_exps) <= 0:
        raise SeriesError("M(v, q) needs v*q of positive degree")
    if qmax == INF:
        raise WindowError("MacMahon expansion needs a finite q-window")
    out = Series.one(reg, qmax, vmax)
    m = 1
    while True:
        mono = tuple(a + m * b for a, b in zip(v_exps, q_exps))
        dm, dvm = reg.qdeg(mono), reg.vdeg(mono)
        if dm > qmax or dvm > vmax:
            if dm > qmax:
                break
            m += 1
            continue
        coeff = sign ** m
        out = out * geom_expand(reg, mono, -m, coeff, qmax, vmax)
        m += 1
    return out


def invert(s: Series, qmax=None, vmax=None) -> Series:
    """Multiplicative inverse of a series with a single lowest monomial.

    The lowest monomial must be determined (no unseen term can undercut it)
    and every other term must be of strictly higher order.  A finite window
    is required; pass qmax/vmax to truncate an exact polynomial first.
    """
    if qmax is not None or vmax is not None:
        s = s.truncate(INF if qmax is None else qmax, INF if vmax is None else vmax)
    if not s.terms:
        raise SeriesError("cannot invert the zero series")
    reg = s.reg
    low = min(reg.qdeg(e) for e in s.terms)
    if low > s.qlow:
        raise SeriesError("leading term of the series is not determined")
    lead = [e for e in s.terms if reg.qdeg(e) == low]
    vlead = min(reg.vdeg(e) for e in lead)
    lead = [e for e in lead if reg.vdeg(e) == vlead]
    if len(lead) != 1:
        raise SeriesError("cannot invert: leading part is not a single monomial")
    m = lead[0]
    c = s.terms[m]
    inv_c = _norm(Fraction(1) / c)
    neg_m = tuple(-x for x in m)
    # s = c m (1 + r)
    r = s.shift(neg_m, inv_c) - 1
    for e in r.terms:
        dq, dv = reg.qdeg(e), reg.vdeg(e)
        if dq < 0 or (dq == 0 and dv <= 0):
            raise SeriesError("cannot invert: a non-leading term is not of higher order")
    Q, V = r.qmax, r.vmax
    if r.terms and Q == INF and V == INF:
        raise WindowError("inverse of a non-monomial needs a finite window")
    neg_r = -r
    # r has positive order everywhere, including above its window
    neg_r.qlow, neg_r.vlow = 0, 0
    total = Series.one(reg, Q, V)
    power = Series.one(reg, Q, V)
    while power.terms:
        power = (power * neg_r).truncate(Q, V)
        total = total + power
    out = total.shift(neg_m, inv_c)
    fl = tuple(-x if (g is not None and g >= 0) else None for x, g in zip(m, r.floor))
    return Series(reg, out.terms, out.qmax, out.vmax, out.qlow, out.vlow, fl)


# ---------------------------------------------------------------- substitution


def _image(reg_src: VarRegistry, reg_dst: VarRegistry, mapping):
    """Per source variable: (coeff, exponent vector in reg_dst)."""
    images = []
    for v in reg_src.variables:
        if v.name in mapping:
            img = mapping[v.name]
            if isinstance(img, Series):
                if len(img.terms) != 1:
                    raise SeriesError(f"image of {v.name} is not a monomial")
                (e, c), = img.terms.items()
            elif isinstance(img, tuple) and len(img) == 2 and isinstance(img[1], Mapping):
                c, e = img[0], reg_dst.exps(img[1])
            elif isinstance(img, Mapping):
                c, e = 1, reg_dst.exps(img)
            else:
                raise SeriesError(f"unsupported image for {v.name}: {img!r}")
        else:
            c, e = 1, reg_dst.exps({v.name: 1})
        images.append((c, tuple(e)))
    return images


def substitute(s: Series, mapping: Mapping, reg_dst: VarRegistry | None = None,
               vmax_out=None) -> Series:
    """Replace each variable by a (signed) monomial.

    `mapping` sends variable names to a Series monomial, a dict of exponents,
    or a pair (coeff, dict).  Unmapped variables keep their name in the
    destination registry.  The exact window of the result is derived:

    * if every q-degree is scaled by one factor c and v-degrees are kept, the
      q-window scales by c;
    * otherwise no map may lower a q-degree, every variable whose degrees
      change must have nonnegative exponents, and a map that trades v-degree
      for q-degree (needs vmax_out) must not lower the total degree.
    """
    reg_src = s.reg
    reg_dst = reg_dst or reg_src
    images = _image(reg_src, reg_dst, mapping)
    src_q, src_v = reg_src.qweights, reg_src.vweights
    img_q = [reg_dst.qdeg(e) for _, e in images]
    img_v = [reg_dst.vdeg(e) for _, e in images]

    ratios = set()
    v_kept = True
    for i, var in enumerate(reg_src.variables):
        if var.kind == "q":
            ratios.add(Fraction(img_q[i], src_q[i]))
            v_kept = v_kept and img_v[i] == 0
        else:
            v_kept = v_kept and img_q[i] == 0 and img_v[i] == src_v[i]
    if len(ratios) <= 1 and v_kept:
        c = ratios.pop() if ratios else Fraction(1)
        if c <= 0:
            raise SeriesError("substitution must scale q-degrees by a positive factor")
        Q = INF if s.qmax == INF else int(math.floor(s.qmax * c))
        qlow = INF if s.qlow == INF else s.qlow * c
        V, vlow = s.vmax, s.vlow
    else:
        Q, V = s.qmax, s.vmax
        qlow, vlow = s.qlow, None
        for i, var in enumerate(reg_src.variables):
            dq, dv = img_q[i] - src_q[i], img_v[i] - src_v[i]
            if dq == 0 and dv == 0:
                continue
            if dq < 0:
                raise SeriesError(f"substitution decreases the q-degree of {var.name}")
            if dv < 0 and (vmax_out is None or dq + dv < 0):
                raise SeriesError(f"substitution decreases the degree of {var.name}")
            f = s.floor[i]
            if f is None or f < 0:
                raise SeriesError(
                    f"substitution changes the degree of {var.name}, whose exponents "
                    f"are not known to be nonnegative")
        if any(img_v[i] < src_v[i] for i in range(len(images))):
            if s.vmax != INF:
                Q = _min(Q, s.qlow + s.vmax - vmax_out)
            V = vmax_out
    # per-variable floors of the image
    fl = [0] * len(reg_dst)
    for i, (ci, ei) in enumerate(images):
        for j, x in enumerate(ei):
            if x == 0 or fl[j] is None:
                continue
            f = s.floor[i]
            fl[j] = None if (f is None or x < 0) else fl[j] + f * x
    if vlow is None:
        if all(f is not None for f, w in zip(fl, reg_dst.vweights) if w):
            vlow = sum(f * w for f, w in zip(fl, reg_dst.vweights) if w)
        else:
            raise SeriesError("cannot bound the v-degree of the substituted series")
    terms: dict = {}
    for e, c in s.terms.items():
        out = [0] * len(reg_dst)
        coeff = c
        for i, k in enumerate(e):
            if k:
                ci, ei = images[i]
                if ci != 1:
                    coeff = coeff * _norm(Fraction(ci) ** k)
                for j, x in enumerate(ei):
                    if x:
                        out[j] += k * x
        out = tuple(out)
        terms[out] = terms.get(out, 0) + coeff
    return Series(reg_dst, terms, Q, V, qlow, vlow, tuple(fl))


def bar(s: Series, names: list[str] | tuple[str, ...]) -> Series:
    """Exchange the exponents of names[k] and names[-k mod n]."""
    n = len(names)
    reg = s.reg
    idx = [reg.index(nm) for nm in names]
    perm = list(range(len(reg)))
    for k in range(n):
        perm[idx[k]] = idx[(-k) % n]
    return permute(s, perm)


def permute(s: Series, perm: list[int]) -> Series:
    """Move the exponent of variable i to position perm[i] (weights must agree)."""
    reg = s.reg
    for i, j in enumerate(perm):
        if reg.variables[i].weight != reg.variables[j].weight or \
                reg.variables[i].kind != reg.variables[j].kind:
            raise SeriesError("permutation must preserve weights")
    terms = {}
    for e, c in s.terms.items():
        out = [0] * len(e)
        for i, x in enumerate(e):
            out[perm[i]] = x
        terms[tuple(out)] = c
    fl = [None] * len(perm)
    for i, f in enumerate(s.floor):
        fl[perm[i]] = f
    return Series(reg, terms, s.qmax, s.vmax, s.qlow, s.vlow, tuple(fl))


def embed(s: Series, reg_dst: VarRegistry) -> Series:
    """View a series over a registry that contains all of its variables."""
    return substitute(s, {}, reg_dst)
