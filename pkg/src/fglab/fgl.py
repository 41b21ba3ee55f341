"""One-dimensional formal group laws: construction, verification and isomorphisms."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import (
    DegreeCapTooSmall,
    IntegralityViolation,
    LeadingCoefficientNotUnit,
    NonzeroConstantTerm,
    NotPTypical,
    PrecisionExhausted,
)
from .local import LocalFieldDesc, LocalNum
from .rings import QQ, FiniteRing, galois_field
from .series import (
    TruncSeries,
    _mul_terms,
    comp_inverse,
    compose,
    min_coeff_ord,
    substitute,
)

XY = ("X", "Y")
XYZ = ("X", "Y", "Z")


class Logarithm:
    """A logarithm T + ... over a field, with its exponential computed on demand."""

    def __init__(self, series: TruncSeries):
        if series.nvars != 1:
            raise ValueError("a logarithm is a one-variable series")
        if series[(1,)] != 1 or not series.has_zero_constant():
            raise ValueError("a logarithm must be T + higher terms")
        self.series = series
        self._exp = None

    @property
    def log(self):
        return self.series

    @property
    def exp(self) -> TruncSeries:
        if self._exp is None:
            self._exp = comp_inverse(self.series)
        return self._exp

    @property
    def ring(self):
        return self.series.ring

    @property
    def cap(self):
        return self.series.cap

    def coefficient(self, k):
        return self.series[(k,)]

    def __repr__(self):
        return f"Logarithm({self.series})"


@dataclass
class FormalGroupLaw:
    series: TruncSeries
    provenance: str = "raw"
    log: Logarithm | None = None
    p: int | None = None  # prime used for integrality over exact characteristic-0 rings
    extra: dict = field(default_factory=dict)

    @property
    def ring(self):
        return self.series.ring

    @property
    def D(self):
        return self.series.cap

    @property
    def prime(self):
        if self.p is not None:
            return self.p
        ring = self.ring
        if isinstance(ring, LocalFieldDesc):
            return ring.p
        if getattr(ring, "characteristic", 0):
            return ring.characteristic
        return None

    def __call__(self, s, u):
        return formal_sum(self, s, u)

    def coefficient(self, i, j):
        return self.series[(i, j)]

    def __str__(self):
        return str(self.series)


@dataclass
class AxiomCheck:
    ok: bool
    first_failing_degree: int | None = None

    def to_json(self):
        return {"ok": self.ok, "first_failing_degree": self.first_failing_degree}


@dataclass
class AxiomReport:
    unit: AxiomCheck
    commutativity: AxiomCheck
    associativity: AxiomCheck | None
    degree: int

    @property
    def ok(self):
        checks = [self.unit, self.commutativity] + ([self.associativity] if self.associativity else [])
        return all(c.ok for c in checks)

    def failing(self):
        out = []
        for name in ("unit", "commutativity", "associativity"):
            c = getattr(self, name)
            if c is not None and not c.ok:
                out.append(name)
        return out

    def to_json(self):
        return {
            "ok": self.ok,
            "degree": self.degree,
            "unit": self.unit.to_json(),
            "commutativity": self.commutativity.to_json(),
            "associativity": self.associativity.to_json() if self.associativity else None,
        }


@dataclass
class PTypicalData:
    p: int
    vlist: list  # v_1, v_2, ... (v_0 = p is implicit)

    def v(self, i):
        if i == 0:
            return self.p
        return self.vlist[i - 1] if i - 1 < len(self.vlist) else 0


@dataclass
class IsoResult:
    found: bool
    series: TruncSeries | None = None
    obstruction_degree: int | None = None
    residual: dict | None = None

    def __bool__(self):
        return self.found


# -- elementary laws ------------------------------------------------------------

def _var(ring, name, cap, vars=XY):
    return TruncSeries.variable(ring, vars, name, cap)


def additive_law(ring, D) -> FormalGroupLaw:
    X, Y = _var(ring, "X", D), _var(ring, "Y", D)
    log = Logarithm(TruncSeries.variable(ring, ("T",), "T", D)) if ring.is_field and ring.characteristic == 0 else None
    return FormalGroupLaw(X + Y, "raw", log)


def multiplicative_law(ring, D) -> FormalGroupLaw:
    X, Y = _var(ring, "X", D), _var(ring, "Y", D)
    return FormalGroupLaw(X + Y + X * Y, "raw")


def law_from_series(series: TruncSeries, provenance="raw", **kw) -> FormalGroupLaw:
    if series.vars != XY:
        series = series.rename(XY)
    return FormalGroupLaw(series, provenance, **kw)


# -- verification ---------------------------------------------------------------

def _unit_check(F: TruncSeries):
    bad = []
    for (i, j), c in F.terms.items():
        if i == 0 or j == 0:
            if (i, j) in ((1, 0), (0, 1)):
                if c != 1:
                    bad.append(1)
            else:
                bad.append(i + j)
    for e in ((1, 0), (0, 1)):
        if e not in F.terms:
            bad.append(1)
    return AxiomCheck(not bad, min(bad) if bad else None)


def _comm_check(F: TruncSeries):
    bad = []
    for (i, j), c in F.terms.items():
        if i < j or (i > j and (j, i) not in F.terms):
            if c != F[(j, i)]:
                bad.append(i + j)
    return AxiomCheck(not bad, min(bad) if bad else None)


def associativity_sides(F: TruncSeries):
    """F(F(X,Y),Z) and F(X,F(Y,Z)) in variables X, Y, Z."""
    ring, D = F.ring, F.cap
    Fxy = F.embed(XYZ)
    Fyz = F.rename(("Y", "Z")).embed(XYZ)
    Z = TruncSeries.variable(ring, XYZ, "Z", D)
    Xv = TruncSeries.variable(ring, XYZ, "X", D)
    lhs = substitute(F, {"X": Fxy, "Y": Z})
    rhs = substitute(F, {"X": Xv, "Y": Fyz})
    return lhs, rhs


def verify_axioms(F, associativity=True) -> AxiomReport:
    """Unit, commutativity and (optionally) associativity of a two-variable series to its cap."""
    S = F.series if isinstance(F, FormalGroupLaw) else F
    unit = _unit_check(S)
    commut = _comm_check(S)
    assoc = None
    if associativity:
        lhs, rhs = associativity_sides(S)
        d = lhs.difference_degree(rhs)
        assoc = AxiomCheck(d is None, d)
    return AxiomReport(unit, commut, assoc, S.cap)


# -- coordinate changes -----------------------------------------------------------

def _check_invertible(t: TruncSeries):
    if t.nvars != 1:
        raise ValueError("a coordinate change is a one-variable series")
    if not t.has_zero_constant():
        raise NonzeroConstantTerm("a coordinate change needs t(0) = 0")
    t0 = t[(1,)]
    if t.ring.is_zero(t0) or not t.ring.is_unit(t0):
        raise LeadingCoefficientNotUnit(f"leading coefficient {t0!r} is not a unit")


def conjugate(F: FormalGroupLaw, t: TruncSeries) -> FormalGroupLaw:
    """F^t(X, Y) = t^-1(F(t(X), t(Y)))."""
    _check_invertible(t)
    S = F.series
    D = min(S.cap, t.cap)
    t = t.truncate(D)
    tX = t.rename(("X",)).embed(XY)
    tY = t.rename(("Y",)).embed(XY)
    inner = substitute(S, {"X": tX, "Y": tY})
    out = substitute(comp_inverse(t), {t.vars[0]: inner})
    log = None
    if F.log is not None:
        log = Logarithm(compose(F.log.series.truncate(D).rename(t.vars), t))
    return FormalGroupLaw(out, "raw", log, F.p)


def is_automorphism(F: FormalGroupLaw, t: TruncSeries) -> bool:
    return conjugate(F, t).series.equals(F.series.truncate(min(F.D, t.cap)))


# -- logarithm-based construction ---------------------------------------------------

def from_log(log: Logarithm, D: int | None = None, integral=False, p=None, min_prec=None) -> FormalGroupLaw:
    """F(X, Y) = exp(log X + log Y).

    With ``integral=True`` the result must have every coefficient of
    valuation >= 0 (IntegralityViolation otherwise); ``min_prec`` demands that
    many pi-adic digits on every coefficient (PrecisionExhausted otherwise).
    """
    D = log.cap if D is None else min(D, log.cap)
    lg = log.series.truncate(D)
    ring = lg.ring
    s = lg.rename(("X",)).embed(XY) + lg.rename(("Y",)).embed(XY)
    F = substitute(log.exp.truncate(D), {log.exp.vars[0]: s})
    law = FormalGroupLaw(F, "from-log", Logarithm(lg), p)
    _certify(law.series, integral, p if p is not None else law.prime, min_prec)
    return law


def _certify(S: TruncSeries, integral, p, min_prec):
    prec = S.prec
    if prec is not None and prec <= 0:
        raise PrecisionExhausted(f"coefficients known to {prec} digits")
    if min_prec is not None and prec is not None and prec < min_prec:
        raise PrecisionExhausted(f"only {prec} digits survive, {min_prec} requested")
    if integral:
        o = min_coeff_ord(S, p)
        if o < 0:
            raise IntegralityViolation(f"coefficient of valuation {o}")


def _coerce_field_elt(ring, c, relprec):
    if isinstance(ring, LocalFieldDesc):
        return ring(c, relprec=relprec) if isinstance(c, (int, Fraction)) else c
    return ring(c)


def honda_log(p: int, n: int, D: int, ring=QQ, relprec=None) -> Logarithm:
    """sum_k p^-k T^(p^(nk)), truncated at degree D."""
    terms = {}
    k = 0
    while p ** (n * k) <= D:
        terms[(p ** (n * k),)] = _coerce_field_elt(ring, Fraction(1, p ** k), relprec)
        k += 1
    return Logarithm(TruncSeries(ring, ("T",), D, terms))


def default_working_precision(L: LocalFieldDesc, D: int) -> int:
    """Relative precision given to logarithm coefficients so that laws built
    from them keep L.M digits after the denominators are absorbed."""
    levels = 0
    while L.q ** (levels + 1) <= D:
        levels += 1
    return L.M + 2 * L.e * (levels + 1) * (levels + 1) + 4


def lubin_tate_log(L: LocalFieldDesc, D: int, relprec=None) -> Logarithm:
    """sum_k pi^-k T^(q^k), truncated at degree D."""
    r = default_working_precision(L, D) if relprec is None else relprec
    terms = {}
    k = 0
    while L.q ** k <= D:
        terms[(L.q ** k,)] = L.uniformizer(-k, r)
        k += 1
    return Logarithm(TruncSeries(L, ("T",), D, terms))


def lubin_tate_law(L: LocalFieldDesc, D: int, relprec=None) -> FormalGroupLaw:
    law = from_log(lubin_tate_log(L, D, relprec), D, integral=True)
    law.provenance = "from-log"
    return law


def _mul_terms_degree(a, b, k):
    """Degree-k part of the product of two term dicts."""
    acc = {}
    bydeg = {}
    for e, c in b.items():
        bydeg.setdefault(sum(e), []).append((e, c))
    for ea, ca in a.items():
        for eb, cb in bydeg.get(k - sum(ea), ()):
            key = tuple(x + y for x, y in zip(ea, eb))
            acc[key] = acc[key] + ca * cb if key in acc else ca * cb
    return acc


def lubin_tate_from_frobenius(L: LocalFieldDesc, D: int, relprec=None, f_series: TruncSeries | None = None) -> FormalGroupLaw:
    """The unique law over o_L with f(F(X,Y)) = F(f(X), f(Y)) for f(T) = pi T + T^q.

    Built degree by degree from X + Y: the degree-k correction is the
    degree-k defect divided by pi^k - pi.  ``f_series`` may supply another
    Lubin-Tate series (f = pi T mod degree 2, f = T^q mod pi).
    """
    if D < L.q and f_series is None:
        raise ValueError(f"degree cap {D} below q = {L.q}")
    r = default_working_precision(L, D) if relprec is None else relprec
    pi = L.uniformizer(1, r)
    if f_series is None:
        f_series = TruncSeries(L, ("T",), D, {(1,): pi, (L.q,): L(1, relprec=r)})
    f_series = f_series.truncate(D)
    pi = f_series[(1,)]
    q = L.q
    fpow = [None, {e[0]: c for e, c in f_series.terms.items()}]
    for i in range(2, D + 1):
        prod = _mul_terms({(a,): c for a, c in fpow[-1].items()}, f_series.terms, D)
        fpow.append({e[0]: c for e, c in prod.items()})
    one = L(1, relprec=r)
    F = {(1, 0): one, (0, 1): one}
    pi_pow = pi
    for k in range(2, D + 1):
        pi_pow = pi_pow * pi
        # degree-k part of F^q (with F known below degree k)
        low = {e: c for e, c in F.items()}
        powq = low
        for _ in range(q - 2):
            powq = _mul_terms(powq, low, k - 1)
        fq = _mul_terms_degree(powq, low, k) if q > 1 else {}
        # degree-k part of F(f(X), f(Y))
        comp = {}
        for (i, j), c in F.items():
            if i == 0 or j == 0:
                ck = fpow[i or j].get(k)
                if ck is not None:
                    key = (k, 0) if j == 0 else (0, k)
                    comp[key] = comp[key] + c * ck if key in comp else c * ck
                continue
            fi, fj = fpow[i], fpow[j]
            for a, ca in fi.items():
                cb = fj.get(k - a)
                if cb is not None:
                    key = (a, k - a)
                    term = c * ca * cb
                    comp[key] = comp[key] + term if key in comp else term
        denom_inv = (pi_pow - pi).inverse()
        keys = set(fq) | set(comp)
        for key in keys:
            num = fq.get(key, L.zero) - comp.get(key, L.zero)
            if not num.is_zero():
                F[key] = num * denom_inv
            elif num.prec is not None:
                F[key] = num  # zero to precision: keep the precision record
    series = TruncSeries(L, XY, D, F)
    law = FormalGroupLaw(series, "from-frobenius", None)
    law.extra["pi_series"] = f_series
    _certify(series, True, L.p, None)
    return law


# -- endomorphisms ------------------------------------------------------------------

def _require_log(F):
    if F.log is None:
        raise ValueError("this operation needs a law carrying its logarithm")
    return F.log


def endo(F: FormalGroupLaw, a, check_integral=True) -> TruncSeries:
    """[a](T) = exp(a log T)."""
    log = _require_log(F)
    ring = F.ring
    if isinstance(a, (int, Fraction)):
        a = _coerce_field_elt(ring, a, _relprec_of(log.series))
    s = log.series.scale(a)
    out = compose(log.exp, s)
    if check_integral and _can_check(ring, F.prime):
        _certify(out, True, F.prime, None)
    return out


def _relprec_of(s: TruncSeries):
    best = None
    for c in s.terms.values():
        if isinstance(c, LocalNum) and c.v is not None:
            best = c.relprec if best is None else max(best, c.relprec)
    return best


def _can_check(ring, p):
    return isinstance(ring, LocalFieldDesc) or (p is not None and ring.characteristic == 0)


def formal_sum(F: FormalGroupLaw, s: TruncSeries, u: TruncSeries) -> TruncSeries:
    """s +_F u = F(s, u)."""
    if not s.has_zero_constant() or not u.has_zero_constant():
        raise NonzeroConstantTerm("formal sum needs zero constant terms")
    return substitute(F.series, {"X": s, "Y": u})


def formal_multiple(F: FormalGroupLaw, n: int, var="T", cap=None) -> TruncSeries:
    """[n](T) computed as an n-fold formal sum (n >= 1)."""
    cap = F.D if cap is None else cap
    T = TruncSeries.variable(F.ring, (var,), var, cap)
    acc = T
    for _ in range(n - 1):
        acc = formal_sum(F, acc, T)
    return acc


# -- reduction and height -------------------------------------------------------------

def residue_ring(F: FormalGroupLaw):
    ring = F.ring
    if isinstance(ring, LocalFieldDesc):
        return ring.residue_field
    if isinstance(ring, FiniteRing):
        return ring
    p = F.prime
    if p is None:
        raise ValueError("no prime to reduce modulo")
    return galois_field(p, 1)


def reduce_coefficient(c, target):
    if isinstance(c, LocalNum):
        return c.residue()
    if isinstance(c, (int, Fraction)):
        c = Fraction(c)
        if c.denominator % target.characteristic == 0:
            raise IntegralityViolation(f"{c} is not p-integral")
        return target(c)
    return c


def reduce_series(s: TruncSeries, target) -> TruncSeries:
    if s.ring == target:
        return s
    return s.map_coefficients(lambda c: reduce_coefficient(c, target), target)


def reduce_mod_pi(F: FormalGroupLaw) -> FormalGroupLaw:
    k = residue_ring(F)
    return FormalGroupLaw(reduce_series(F.series, k), F.provenance, None, F.prime)


def height_from_p_series(pser: TruncSeries, p: int, additive_hint=False):
    """h with [p](T) = c T^(p^h) + ... (c != 0), from a [p]-series over a residue field."""
    d = pser.min_degree()
    if d is None:
        if additive_hint:
            return math.inf
        raise DegreeCapTooSmall(f"[p] vanishes up to degree {pser.cap}; height unknown at this cap")
    h = 0
    while p ** h < d:
        h += 1
    if p ** h != d:
        raise ValueError(f"leading term of [p] in degree {d}, not a power of {p}")
    return h


def height_mod_pi(F: FormalGroupLaw, cross_check=True):
    """Height of the reduction of F modulo the maximal ideal (math.inf for additive)."""
    p = F.prime
    k = residue_ring(F)
    red = reduce_mod_pi(F)
    X, Y = _var(k, "X", F.D), _var(k, "Y", F.D)
    additive = red.series.equals(X + Y)
    by_sum = formal_multiple(red, p)
    if F.log is not None and F.ring.characteristic == 0:
        by_endo = reduce_series(endo(F, p), k)
        if cross_check and not by_endo.equals(by_sum.rename(by_endo.vars)):
            raise ArithmeticError("[p] from the logarithm disagrees with the p-fold formal sum")
        pser = by_endo
    else:
        pser = by_sum
    return height_from_p_series(pser, p, additive)


def p_series_from_log(log: Logarithm, p: int) -> TruncSeries:
    """[p](T) = exp(p log T) for a one-variable logarithm (sparse-friendly)."""
    s = log.series.scale(p if not isinstance(log.ring, LocalFieldDesc) else log.ring(p, relprec=_relprec_of(log.series)))
    return compose(log.exp, s)


# -- p-typical laws ---------------------------------------------------------------------

def araki_log(p: int, vlist, D: int, ring=QQ, relprec=None) -> Logarithm:
    """Logarithm from Araki generators: p l_k = sum_{0<=i<=k} l_i v_{k-i}^(p^i), v_0 = p."""
    def v(i):
        if i == 0:
            return _coerce_field_elt(ring, p, relprec)
        c = vlist[i - 1] if i - 1 < len(vlist) else 0
        return _coerce_field_elt(ring, c, relprec)

    pe = _coerce_field_elt(ring, p, relprec)
    ls = [_coerce_field_elt(ring, 1, relprec)]
    terms = {(1,): ls[0]}
    k = 1
    while p ** k <= D:
        acc = _coerce_field_elt(ring, 0, relprec)
        for i in range(k):
            vi = v(k - i)
            if not ring.is_zero(vi):
                acc = acc + ls[i] * vi ** (p ** i)
        denom = pe - _coerce_field_elt(ring, p, relprec) ** (p ** k)
        lk = acc / denom
        ls.append(lk)
        terms[(p ** k,)] = lk
        k += 1
    return Logarithm(TruncSeries(ring, ("T",), D, terms))


def ptypical_from_araki(p: int, vlist, D: int, ring=QQ, relprec=None) -> FormalGroupLaw:
    log = araki_log(p, vlist, D, ring, relprec)
    law = from_log(log, D, p=p)
    law.provenance = "from-araki"
    law.p = p
    law.extra["araki"] = list(vlist)
    return law


def is_p_typical(log: Logarithm, p: int) -> bool:
    for (k,), c in log.series.terms.items():
        m = k
        while m % p == 0:
            m //= p
        if m != 1:
            return False
    return True


def araki_from_ptypical(F: FormalGroupLaw) -> PTypicalData:
    """Solve [p](T) = sum^F v_i T^(p^i) degree by degree for v_1, v_2, ..."""
    log = _require_log(F)
    p = F.prime
    if not is_p_typical(log, p):
        raise NotPTypical("logarithm has terms outside degrees p^k")
    pser = endo(F, p, check_integral=False)
    ring = F.ring
    T = TruncSeries.variable(ring, ("T",), "T", F.D)
    v0 = pser[(1,)]
    if v0 != p:
        raise NotPTypical(f"[p] has linear coefficient {v0!r}")
    S = T.scale(v0)
    vlist = []
    m = 1
    while p ** m <= F.D:
        d = p ** m
        diff = (pser - S).truncate(d - 1)
        if diff.terms:
            raise NotPTypical(f"[p] and the partial formal sum differ in degree {diff.min_degree()}")
        vm = pser[(d,)] - S[(d,)]
        vlist.append(vm)
        mono = TruncSeries(ring, ("T",), F.D, {(d,): vm})
        S = formal_sum(F, S, mono) if mono.terms else S
        m += 1
    return PTypicalData(p, vlist)


def classifying_value(F: FormalGroupLaw, m: int):
    """Image of CP_m: (m+1) times the coefficient of T^(m+1) in the logarithm."""
    log = _require_log(F)
    if m + 1 > log.cap:
        raise ValueError(f"m + 1 = {m + 1} beyond the degree cap {log.cap}")
    c = log.coefficient(m + 1)
    return c * (m + 1)


# -- isomorphisms -------------------------------------------------------------------------

def _solve_scalar(ring, pairs):
    """A c with c*b == r for every (b, r); the minimal one when several exist; None if none."""
    if isinstance(ring, FiniteRing):
        for c in ring.elements():
            if all(c * b == r for b, r in pairs):
                return c
        return None
    nonzero = [(b, r) for b, r in pairs if not ring.is_zero(b)]
    if not nonzero:
        return ring.zero if all(ring.is_zero(r) for _, r in pairs) else None
    if isinstance(ring, LocalFieldDesc):
        b, r = min(nonzero, key=lambda br: br[0].v)
        c = r / b
    elif ring.is_field:
        b, r = nonzero[0]
        c = r * ring.inverse(b)
    else:
        b, r = nonzero[0]
        if Fraction(r) % b:
            return None
        c = ring(Fraction(r) / b)
    for b, r in pairs:
        if not ring.is_zero(c * b - r):
            return None
    return c


def find_isomorphism(F: FormalGroupLaw, G: FormalGroupLaw, D: int | None = None) -> IsoResult:
    """Search for t = T + ... with F^t = G, i.e. F(t(X), t(Y)) = t(G(X, Y)).

    Solved one degree at a time; free parameters are set to zero.  On failure
    the result names the first obstructed degree and the residual there.
    """
    ring = F.ring
    D = min(F.D, G.D) if D is None else min(D, F.D, G.D)
    Fs, Gs = F.series.truncate(D), G.series.truncate(D)
    one = ring.one
    t = {1: one}
    # powers of G, computed once
    gpow = [None, Gs.terms]
    for _ in range(2, D + 1):
        gpow.append(_mul_terms(gpow[-1], Gs.terms, D))
    for k in range(2, D + 1):
        tser = {(a,): c for a, c in t.items()}
        tp = [None, tser]
        maxpow = max(max(i, j) for (i, j) in Fs.terms)
        for _ in range(2, min(maxpow, k) + 1):
            tp.append(_mul_terms(tp[-1], tser, k))
        lhs = {}
        for (i, j), c in Fs.terms.items():
            if i + j > k or i >= len(tp) or j >= len(tp):
                continue
            if i == 0 or j == 0:
                n = i or j
                cc = tp[n].get((k,))
                if cc is not None:
                    key = (k, 0) if j == 0 else (0, k)
                    lhs[key] = lhs[key] + c * cc if key in lhs else c * cc
                continue
            ti, tj = tp[i], tp[j]
            for (a,), ca in ti.items():
                cb = tj.get((k - a,))
                if cb is not None:
                    key = (a, k - a)
                    term = c * ca * cb
                    lhs[key] = lhs[key] + term if key in lhs else term
        rhs = {}
        for m, tm in t.items():
            for e, c in gpow[m].items():
                if sum(e) == k:
                    rhs[e] = rhs[e] + tm * c if e in rhs else tm * c
        residual = {}
        for a in range(k + 1):
            key = (a, k - a)
            r = lhs.get(key, ring.zero) - rhs.get(key, ring.zero)
            if not ring.is_zero(r):
                residual[key] = r
        if residual.get((k, 0)) is not None or residual.get((0, k)) is not None:
            return IsoResult(False, None, k, residual)
        pairs = [(ring(comb(k, a)), residual.get((a, k - a), ring.zero)) for a in range(1, k)]
        c = _solve_scalar(ring, pairs)
        if c is None:
            return IsoResult(False, None, k, residual)
        if not ring.is_zero(c):
            t[k] = c
    series = TruncSeries(ring, ("T",), D, {(a,): c for a, c in t.items()})
    return IsoResult(True, series)
