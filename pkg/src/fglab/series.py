"""Truncated multivariate power series over an arbitrary coefficient ring.

A :class:`TruncSeries` is a sparse map from exponent tuples to coefficients,
with a total-degree cap ``cap``: every monomial of total degree <= cap is
known, everything above it is unknown.  Zero coefficients are never stored.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import (
    LeadingCoefficientNotUnit,
    NonzeroConstantTerm,
    PrecisionExhausted,
    RingMismatch,
    VariableMismatch,
)


class TruncSeries:
    __slots__ = ("ring", "vars", "cap", "terms", "_floor")

    def __init__(self, ring, vars, cap, terms=None, prec=None):
        vars = tuple(vars)
        if not 1 <= len(vars) <= 3:
            raise VariableMismatch("between one and three variables supported")
        self.ring = ring
        self.vars = vars
        self.cap = cap
        floor = prec
        clean = {}
        if terms:
            is_zero, precision = ring.is_zero, ring.precision
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != len(vars):
                    raise VariableMismatch(f"exponent {e} does not match variables {vars}")
                if sum(e) > cap:
                    continue
                if is_zero(c):
                    cp = precision(c)
                    if cp is not None:
                        floor = cp if floor is None else min(floor, cp)
                    continue
                clean[e] = c
        self.terms = clean
        self._floor = floor

    @classmethod
    def _raw(cls, ring, vars, cap, terms, floor=None):
        s = cls.__new__(cls)
        s.ring, s.vars, s.cap, s.terms, s._floor = ring, vars, cap, terms, floor
        return s

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring, vars, cap):
        return cls._raw(ring, tuple(vars), cap, {})

    @classmethod
    def constant(cls, ring, vars, cap, c):
        vars = tuple(vars)
        return cls(ring, vars, cap, {(0,) * len(vars): ring(c)})

    @classmethod
    def variable(cls, ring, vars, name, cap):
        vars = tuple(vars)
        e = tuple(1 if v == name else 0 for v in vars)
        if sum(e) != 1:
            raise VariableMismatch(f"{name} not among {vars}")
        return cls._raw(ring, vars, cap, {e: ring.one})

    @classmethod
    def from_coeffs(cls, ring, coeffs, var="T", cap=None):
        """One-variable series sum coeffs[k] T^k."""
        cap = len(coeffs) - 1 if cap is None else cap
        return cls(ring, (var,), cap, {(k,): ring(c) for k, c in enumerate(coeffs) if k <= cap})

    # -- basic queries -------------------------------------------------------

    @property
    def nvars(self):
        return len(self.vars)

    @property
    def prec(self):
        """Smallest absolute precision among coefficients (None over exact rings)."""
        out = self._floor
        precision = self.ring.precision
        for c in self.terms.values():
            cp = precision(c)
            if cp is not None:
                out = cp if out is None else min(out, cp)
        return out

    def __getitem__(self, e):
        if isinstance(e, int):
            e = (e,)
        return self.terms.get(tuple(e), self.ring.zero)

    def coefficient(self, e):
        return self[e]

    def degree_part(self, k):
        return {e: c for e, c in self.terms.items() if sum(e) == k}

    def homogeneous(self, k):
        return TruncSeries._raw(self.ring, self.vars, self.cap, self.degree_part(k), self._floor)

    def min_degree(self):
        return min((sum(e) for e in self.terms), default=None)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.ring.zero)

    def has_zero_constant(self):
        return (0,) * self.nvars not in self.terms

    def truncate(self, cap):
        cap = min(cap, self.cap)
        return TruncSeries._raw(self.ring, self.vars, cap,
                                {e: c for e, c in self.terms.items() if sum(e) <= cap}, self._floor)

    def rename(self, vars):
        vars = tuple(vars)
        if len(vars) != self.nvars:
            raise VariableMismatch("rename must keep the number of variables")
        return TruncSeries._raw(self.ring, vars, self.cap, dict(self.terms), self._floor)

    def embed(self, vars):
        """Same series viewed in a larger variable list (missing variables get exponent 0)."""
        vars = tuple(vars)
        pos = []
        for v in self.vars:
            if v not in vars:
                raise VariableMismatch(f"{v} not among {vars}")
            pos.append(vars.index(v))
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, k in zip(pos, e):
                ne[i] = k
            terms[tuple(ne)] = c
        return TruncSeries._raw(self.ring, vars, self.cap, terms, self._floor)

    def map_coefficients(self, fn, ring):
        return TruncSeries(ring, self.vars, self.cap, {e: fn(c) for e, c in self.terms.items()})

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, TruncSeries):
            raise TypeError("expected a TruncSeries")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if other.vars != self.vars:
            raise VariableMismatch(f"{self.vars} vs {other.vars}")

    @staticmethod
    def _merge_floor(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return self + TruncSeries.constant(self.ring, self.vars, self.cap, other)
        self._check(other)
        cap = min(self.cap, other.cap)
        terms = {e: c for e, c in self.terms.items() if sum(e) <= cap}
        for e, c in other.terms.items():
            if sum(e) <= cap:
                terms[e] = terms[e] + c if e in terms else c
        return TruncSeries(self.ring, self.vars, cap, terms, self._merge_floor(self._floor, other._floor))

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw(self.ring, self.vars, self.cap, {e: -c for e, c in self.terms.items()}, self._floor)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            return self + (-self.ring(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            c = self.ring(c)
        terms = {e: c * a for e, a in self.terms.items()}
        return TruncSeries(self.ring, self.vars, self.cap, terms, self._floor)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        self._check(other)
        cap = min(self.cap, other.cap)
        return TruncSeries(self.ring, self.vars, cap, _mul_terms(self.terms, other.terms, cap),
                           self._merge_floor(self._floor, other._floor))

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a series")
        out = TruncSeries.constant(self.ring, self.vars, self.cap, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # -- comparison ------------------------------------------------------------

    def difference_degree(self, other, cap=None):
        """Lowest total degree where the two series differ (to precision), or None."""
        self._check(other)
        cap = min(self.cap, other.cap) if cap is None else cap
        diff = self - other
        degs = [sum(e) for e in diff.terms if sum(e) <= cap]
        return min(degs) if degs else None

    def equals(self, other, cap=None):
        return self.difference_degree(other, cap) is None

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        try:
            return self.equals(other)
        except (RingMismatch, VariableMismatch):
            return False

    __hash__ = None

    # -- display ------------------------------------------------------------------

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"TruncSeries({to_text(self)!s} over {self.ring!r})"


def _mul_terms(a, b, cap):
    """Truncated convolution of two term dicts."""
    if len(a) > len(b):
        a, b = b, a
    bl = sorted(((sum(e), e, c) for e, c in b.items()), key=lambda t: t[0])
    acc = {}
    get = acc.get
    for ea, ca in a.items():
        da = sum(ea)
        room = cap - da
        if room < 0:
            continue
        if len(ea) == 1:
            a0 = ea[0]
            for db, eb, cb in bl:
                if db > room:
                    break
                k = (a0 + eb[0],)
                prev = get(k)
                acc[k] = ca * cb if prev is None else prev + ca * cb
        elif len(ea) == 2:
            a0, a1 = ea
            for db, eb, cb in bl:
                if db > room:
                    break
                k = (a0 + eb[0], a1 + eb[1])
                prev = get(k)
                acc[k] = ca * cb if prev is None else prev + ca * cb
        else:
            for db, eb, cb in bl:
                if db > room:
                    break
                k = tuple(x + y for x, y in zip(ea, eb))
                prev = get(k)
                acc[k] = ca * cb if prev is None else prev + ca * cb
    return acc


# -- composition ------------------------------------------------------------------

def substitute(a: TruncSeries, assignments: dict) -> TruncSeries:
    """Formal substitution a(s_1, ..., s_k).

    ``assignments`` maps each variable of ``a`` to a series; all of them must
    share one ring and one variable list (the result's variables), and have
    zero constant term.  Variables of ``a`` not mentioned must appear in the
    target variable list and are kept as they are.
    """
    targets = [s for s in assignments.values()]
    if not targets:
        return a
    tvars = targets[0].vars
    ring = a.ring
    for s in targets:
        if s.ring != ring:
            raise RingMismatch(f"{s.ring} vs {ring}")
        if s.vars != tvars:
            raise VariableMismatch("substituted series must share variables")
        if not s.has_zero_constant():
            raise NonzeroConstantTerm("substituted series must have zero constant term")
    cap = min([a.cap] + [s.cap for s in targets])
    subs = []
    for v in a.vars:
        if v in assignments:
            subs.append(assignments[v].truncate(cap))
        else:
            subs.append(TruncSeries.variable(ring, tvars, v, cap))
    floor = a._floor
    for s in subs:
        floor = TruncSeries._merge_floor(floor, s._floor)

    powers = [[None] for _ in subs]  # powers[i][k] = subs[i]^k, k >= 1

    def power(i, k):
        pw = powers[i]
        while len(pw) <= k:
            if len(pw) == 1:
                pw.append(subs[i].terms)
            else:
                pw.append(_mul_terms(pw[-1], subs[i].terms, cap))
        return pw[k]

    one_key = (0,) * len(tvars)

    def evaluate(terms, idx):
        # terms: dict mapping exponent suffix (for variables idx..) -> coefficient
        if idx == len(subs):
            return {one_key: terms[()]}
        groups = {}
        for e, c in terms.items():
            groups.setdefault(e[0], {})[e[1:]] = c
        out = {}
        for k in sorted(groups):
            inner = evaluate(groups[k], idx + 1)
            if k == 0:
                part = inner
            else:
                if not inner or min(sum(e) for e in inner) + k > cap:
                    continue
                part = _mul_terms(power(idx, k), inner, cap)
            for e, c in part.items():
                out[e] = out[e] + c if e in out else c
        return out

    terms = evaluate(a.terms, 0) if a.terms else {}
    return TruncSeries(ring, tvars, cap, terms, floor)


def compose(a: TruncSeries, s: TruncSeries) -> TruncSeries:
    """a(s) for one-variable a."""
    if a.nvars != 1:
        raise VariableMismatch("compose expects a one-variable outer series")
    return substitute(a, {a.vars[0]: s})


def comp_inverse(t: TruncSeries) -> TruncSeries:
    """Compositional inverse of a one-variable series t = t_0 T + ..., t_0 a unit."""
    if t.nvars != 1:
        raise VariableMismatch("comp_inverse expects one variable")
    if not t.has_zero_constant():
        raise NonzeroConstantTerm("comp_inverse needs t(0) = 0")
    ring = t.ring
    D = t.cap
    t0 = t[(1,)]
    if ring.is_zero(t0) or not ring.is_unit(t0):
        raise LeadingCoefficientNotUnit(f"leading coefficient {t0!r} is not a unit")
    inv_t0 = ring.inverse(t0)
    # solve u(t(T)) = T with the powers of t computed once
    powers = [None, t.terms]
    for k in range(2, D + 1):
        powers.append(_mul_terms(powers[-1], t.terms, D))
    coeffs = {1: inv_t0}
    inv_pow = inv_t0
    for n in range(2, D + 1):
        inv_pow = inv_pow * inv_t0
        acc = None
        for k, ck in coeffs.items():
            c = powers[k].get((n,))
            if c is not None:
                acc = ck * c if acc is None else acc + ck * c
        if acc is not None:
            coeffs[n] = -(acc * inv_pow)
    return TruncSeries(ring, t.vars, D, {(n,): c for n, c in coeffs.items()}, t._floor)


def identity(ring, cap, var="T"):
    return TruncSeries.variable(ring, (var,), var, cap)


# -- recentering ----------------------------------------------------------------

def _shift_var(terms, idx, w, one):
    """Replace x_idx by x_idx + w in a term dict (exact expansion, degree never grows)."""
    out = {}
    wp = [one]
    for e, c in terms.items():
        j = e[idx]
        while len(wp) <= j:
            wp.append(wp[-1] * w)
        for k in range(j + 1):
            ne = e[:idx] + (k,) + e[idx + 1:]
            term = c * wp[j - k] * comb(j, k) if j != k else c
            out[ne] = out[ne] + term if ne in out else term
    return out


def recenter(a: TruncSeries, w, var=None):
    """Rewrite a(x) in x~ = x - w.

    Returns ``(a~, const)`` with a~(x~) = a(x~ + w) - a(w); the coefficient of
    x~^k is sum_{l >= 0} binom(k+l, l) a_{k+l} w^l.  ``w`` may also be a dict
    ``{var: w_var}`` to recenter several variables at once.
    """
    if not a.has_zero_constant():
        raise NonzeroConstantTerm("recenter expects zero constant term")
    ring = a.ring
    if isinstance(w, dict):
        shifts = w
    else:
        shifts = {var if var is not None else a.vars[0]: w}
    terms = dict(a.terms)
    for name, wv in shifts.items():
        if name not in a.vars:
            raise VariableMismatch(f"{name} not among {a.vars}")
        terms = _shift_var(terms, a.vars.index(name), ring(wv) if isinstance(wv, (int, Fraction)) else wv, ring.one)
    zero_key = (0,) * a.nvars
    const = terms.pop(zero_key, ring.zero)
    return TruncSeries(ring, a.vars, a.cap, terms, a._floor), const


def min_coeff_ord(a: TruncSeries, p: int | None = None):
    """Minimum coefficient valuation, normalised so ord(p) = 1.

    Over a local field the ring's own valuation is used; over QQ or ZZ pass
    the prime ``p``.  Returns +inf for the zero series.
    """
    ring = a.ring
    best = float("inf")
    floor = a._floor
    if floor is not None and floor <= 0:
        raise PrecisionExhausted("a coefficient is known to no digits")
    for c in a.terms.values():
        if hasattr(ring, "ord"):
            o = ring.ord(c)
        else:
            if p is None:
                raise TypeError("min_coeff_ord over an exact ring needs the prime p")
            o = _rational_ord(Fraction(c), p)
        if o < best:
            best = o
    return best


def _rational_ord(x: Fraction, p: int):
    if x == 0:
        return float("inf")
    k = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        k += 1
    while d % p == 0:
        d //= p
        k -= 1
    return Fraction(k)


# -- text format ------------------------------------------------------------------

def _coef_text(c):
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"({c})"
    return str(c)


def to_text(s: TruncSeries) -> str:
    """``X^2*Y + 3*X*Y^2 + O(deg 4)`` style rendering, ordered by degree then exponents."""
    parts = []
    for e in sorted(s.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
        c = s.terms[e]
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(s.vars, e) if k)
        ct = _coef_text(c)
        neg = ct.startswith("-") and not ct.startswith("(")
        if neg:
            ct = ct[1:]
        if mono:
            body = mono if ct == "1" else f"{ct}*{mono}"
        else:
            body = ct
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    parts.append(("+ " if parts else "") + f"O(deg {s.cap + 1})")
    return " ".join(parts)


class SeriesParseError(ValueError):
    def __init__(self, msg, pos, text):
        self.pos = pos
        super().__init__(f"{msg} at position {pos}: {text[:pos]}<<HERE>>{text[pos:]}")


def parse_series(text: str, ring, vars, cap=None) -> TruncSeries:
    """Parse the text format back into a series.

    Accepts sums of terms ``c*X^i*Y^j`` with integer or ``(a/b)`` coefficients
    and an optional ``O(deg N)`` trailer, which sets the cap to N - 1.
    """
    vars = tuple(vars)
    pos = 0
    n = len(text)
    terms = {}
    found_cap = None

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def number():
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise SeriesParseError("expected a number", pos, text)
        return int(text[start:pos])

    sign = 1
    skip()
    first = True
    while pos < n:
        skip()
        if pos >= n:
            break
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
            skip()
        elif not first:
            raise SeriesParseError("expected '+' or '-'", pos, text)
        first = False
        if text.startswith("O(", pos):
            pos += 2
            skip()
            if not text.startswith("deg", pos):
                raise SeriesParseError("expected 'deg'", pos, text)
            pos += 3
            skip()
            found_cap = number() - 1
            skip()
            if pos >= n or text[pos] != ")":
                raise SeriesParseError("expected ')'", pos, text)
            pos += 1
            skip()
            if pos < n:
                raise SeriesParseError("trailing input after O(...)", pos, text)
            break
        coef = Fraction(1)
        exps = [0] * len(vars)
        factor_seen = False
        while True:
            skip()
            if pos < n and text[pos] == "(":
                pos += 1
                skip()
                neg = False
                if pos < n and text[pos] == "-":
                    neg = True
                    pos += 1
                num = number()
                den = 1
                skip()
                if pos < n and text[pos] == "/":
                    pos += 1
                    skip()
                    den = number()
                skip()
                if pos >= n or text[pos] != ")":
                    raise SeriesParseError("expected ')'", pos, text)
                pos += 1
                coef *= Fraction(-num if neg else num, den)
            elif pos < n and text[pos].isdigit():
                coef *= number()
            elif pos < n and (text[pos].isalpha() or text[pos] == "_"):
                start = pos
                while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                    pos += 1
                name = text[start:pos]
                if name not in vars:
                    raise SeriesParseError(f"unknown variable {name!r}", start, text)
                k = 1
                skip()
                if pos < n and text[pos] == "^":
                    pos += 1
                    skip()
                    k = number()
                exps[vars.index(name)] += k
            else:
                raise SeriesParseError("expected a coefficient or variable", pos, text)
            factor_seen = True
            skip()
            if pos < n and text[pos] == "*":
                pos += 1
                continue
            break
        if not factor_seen:
            raise SeriesParseError("empty term", pos, text)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + sign * coef
        sign = 1
    if cap is None:
        if found_cap is None:
            found_cap = max((sum(e) for e in terms), default=0)
        cap = found_cap
    return TruncSeries(ring, vars, cap, {e: ring(c) for e, c in terms.items()})
