"""Finite-precision arithmetic in W(F_q) and in ramified extensions o_L.

An element of W(F_q) = Z_p[w]/(minpoly) is a tuple of ``f`` integers, the
coordinates in the basis 1, w, ..., w^(f-1), reduced mod p^N.

A local field L is presented over W(F_q) by an Eisenstein polynomial
E(x) = x^e + sum e_i x^i.  Its elements (:class:`LocalNum`) are
``pi^v * u`` with ``u`` a unit of o_L stored in the basis pi^i w^j, flattened
as index ``i*f + j``.  Every element carries its own absolute pi-adic
precision; arithmetic propagates it honestly.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DivisionByZeroToPrecision,
    NotEisenstein,
    NonPrime,
    PrecisionExhausted,
)
from .rings import GaloisField, is_prime, smallest_irreducible


def _ord_p(c: int, p: int, cap: int) -> int:
    """ord_p(c), returning ``cap`` for 0 or anything divisible by p^cap."""
    if c == 0:
        return cap
    k = 0
    while k < cap and c % p == 0:
        c //= p
        k += 1
    return k


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# ---------------------------------------------------------------------------
# W(F_q)
# ---------------------------------------------------------------------------

class UnramifiedRing:
    """W(F_q) / p^N with q = p^f."""

    def __init__(self, p: int, f: int, N: int, minpoly=None):
        if not is_prime(p):
            raise NonPrime(p)
        if not 1 <= f <= 8:
            raise ValueError("residue degree must satisfy 1 <= f <= 8")
        if N < 1:
            raise ValueError("precision N must be >= 1")
        self.p, self.f, self.N = p, f, N
        self.q = p ** f
        self.minpoly = tuple(minpoly) if minpoly is not None else tuple(smallest_irreducible(p, f))
        self.modulus = p ** N
        self.residue_field = GaloisField(p, f, self.minpoly)

    def __repr__(self):
        return f"W(F_{self.q})/{self.p}^{self.N}"

    def __eq__(self, other):
        return isinstance(other, UnramifiedRing) and (self.p, self.f, self.N, self.minpoly) == (
            other.p, other.f, other.N, other.minpoly)

    def __hash__(self):
        return hash((self.p, self.f, self.N, self.minpoly))

    # elements are tuples of f ints

    def element(self, coords, mod=None):
        mod = mod or self.modulus
        coords = list(coords) + [0] * (self.f - len(coords))
        return tuple(c % mod for c in coords[: self.f])

    def from_int(self, n: int):
        return self.element([n])

    @property
    def zero(self):
        return (0,) * self.f

    @property
    def one(self):
        return self.element([1])

    def add(self, x, y, mod=None):
        mod = mod or self.modulus
        return tuple((a + b) % mod for a, b in zip(x, y))

    def sub(self, x, y, mod=None):
        mod = mod or self.modulus
        return tuple((a - b) % mod for a, b in zip(x, y))

    def mul(self, x, y, mod=None):
        """Product in W, reduced mod ``mod`` (pass 0 for exact integer arithmetic)."""
        f = self.f
        prod = [0] * (2 * f - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod[i + j] += a * b
        m = self.minpoly
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k]
            if c:
                for i in range(f):
                    prod[k - f + i] -= c * m[i]
        out = prod[:f]
        if mod is None:
            mod = self.modulus
        return tuple(c % mod for c in out) if mod else tuple(out)

    def pow(self, x, k: int, mod=None):
        out, base = self.one, x
        while k:
            if k & 1:
                out = self.mul(out, base, mod)
            base = self.mul(base, base, mod)
            k >>= 1
        return out

    def ord(self, x) -> int | None:
        """ord_p of x to precision N; None for zero mod p^N."""
        v = min(_ord_p(c % self.modulus, self.p, self.N) for c in x)
        return None if v >= self.N else v

    def residue(self, x):
        return self.residue_field.from_vector([c % self.p for c in x])

    def lift(self, r):
        """Coordinate lift of a residue-field element (no Teichmuller correction)."""
        return self.element(self.residue_field.vector(r))

    def inverse(self, x, mod=None):
        mod = mod or self.modulus
        r = self.residue(x)
        if r.i == 0:
            raise DivisionByZeroToPrecision("not a unit of W(F_q)")
        y = self.lift(self.residue_field.inverse(r))
        prec = 1
        two = self.element([2], mod)
        while self.p ** prec < mod:
            y = self.mul(y, self.sub(two, self.mul(x, y, mod), mod), mod)
            prec *= 2
        return tuple(c % mod for c in y)

    def equal(self, x, y):
        return all((a - b) % self.modulus == 0 for a, b in zip(x, y))

    def random_element(self, rng: random.Random):
        return tuple(rng.randrange(self.modulus) for _ in range(self.f))


def make_unramified(p: int, f: int, N: int) -> UnramifiedRing:
    return UnramifiedRing(p, f, N)


def teichmuller(R: UnramifiedRing, r):
    """The unique x with x^q = x and x = r mod p.

    ``r`` may be a residue-field element, a coordinate tuple or an int.
    """
    if isinstance(r, int):
        r = R.residue_field(r)
    elif isinstance(r, (tuple, list)):
        r = R.residue_field.from_vector(r)
    x = R.lift(r)
    while True:
        nxt = R.pow(x, R.q)
        if nxt == x:
            return x
        x = nxt


def _frobenius_image_of_omega(R: UnramifiedRing):
    """Root of minpoly congruent to w^p, found by Newton iteration."""
    m = R.minpoly
    omega = R.element([0, 1]) if R.f > 1 else R.element([-m[0]])
    z = R.pow(omega, R.p)

    def ev(coeffs, z):
        acc = R.zero
        for c in reversed(coeffs):
            acc = R.add(R.mul(acc, z), R.from_int(c))
        return acc

    deriv = [i * m[i] for i in range(1, len(m))]
    for _ in range(R.N.bit_length() + 2):
        z = R.sub(z, R.mul(ev(m, z), R.inverse(ev(deriv, z))))
    return z


@lru_cache(maxsize=None)
def _sigma_omega_powers(R: UnramifiedRing):
    z = _frobenius_image_of_omega(R)
    return tuple(R.pow(z, j) for j in range(R.f))


def frobenius(R: UnramifiedRing, x, times: int = 1):
    """Apply the arithmetic Frobenius sigma (w -> root lifting w^p) ``times`` times."""
    if R.f == 1:
        return tuple(c % R.modulus for c in x)
    powers = _sigma_omega_powers(R)
    for _ in range(times % R.f):
        acc = R.zero
        for c, zj in zip(x, powers):
            if c:
                acc = R.add(acc, R.mul(R.element([c]), zj))
        x = acc
    return x


# ---------------------------------------------------------------------------
# Ramified extensions
# ---------------------------------------------------------------------------

class LocalFieldDesc:
    """A local field L = W(F_q)[pi]/(E(pi)) with E Eisenstein.

    ``M`` is the default relative pi-adic precision given to new elements.
    The descriptor doubles as the coefficient-ring handle for series over L.
    """

    is_exact = False
    is_field = True
    characteristic = 0

    def __init__(self, base: UnramifiedRing, eis, M: int):
        if not eis:
            raise ValueError("Eisenstein coefficient list must be nonempty")
        if M < 1:
            raise ValueError("precision M must be >= 1")
        self.base = base
        self.p, self.f, self.q = base.p, base.f, base.q
        self.e = len(eis)
        self.n = self.e * self.f
        self.M = M
        self.eis = tuple(self._w_exact(c) for c in eis)
        self._check_eisenstein()
        self._build_tables()
        self._eps_inv = {}
        self._mods = {}
        self.residue_field = base.residue_field

    def _w_exact(self, c):
        coords = [int(c)] if isinstance(c, int) else [int(v) for v in c]
        if len(coords) > self.f:
            raise ValueError("W(k) coordinate list longer than f")
        return tuple(coords + [0] * (self.f - len(coords)))

    # -- validation -------------------------------------------------------

    def _w_ord(self, c, cap=10 ** 6):
        if all(v == 0 for v in c):
            return None
        return min(_ord_p(v, self.p, cap) for v in c)

    def _check_eisenstein(self):
        for i, c in enumerate(self.eis):
            o = self._w_ord(c)
            if i == 0:
                if o != 1:
                    raise NotEisenstein(0, f"ord_p(e_0) = {o}, need 1")
            elif o is not None and o < 1:
                raise NotEisenstein(i, f"ord_p(e_{i}) = {o}, need > 0")
        # pi^e = -sum e_i pi^i must have pi-valuation exactly e
        w = min(self.e * o + i for i, c in enumerate(self.eis) if (o := self._w_ord(c)) is not None)
        if w != self.e:
            raise NotEisenstein(0, "rewrite rule does not have valuation e")

    # -- structure constants --------------------------------------------------

    def _w_mul_exact(self, x, y):
        return self.base.mul(x, y, mod=0)

    def _pi_power_exact(self, s):
        """Coordinates of pi^s (s >= 0) as e blocks of f exact integers."""
        e, f = self.e, self.f
        poly = [[0] * f for _ in range(s + 1)]
        poly[s][0] = 1
        for k in range(s, e - 1, -1):
            c = poly[k]
            if any(c):
                poly[k] = [0] * f
                for i in range(e):
                    t = self._w_mul_exact(tuple(c), self.eis[i])
                    poly[k - e + i] = [a - b for a, b in zip(poly[k - e + i], t)]
        blocks = poly[:e] + [[0] * f for _ in range(e - len(poly[:e]))]
        return blocks

    def _build_tables(self):
        e, f = self.e, self.f
        n = e * f
        omega_pows = []
        for j in range(2 * f - 1):
            v = [0] * (2 * f - 1)
            v[j] = 1
            m = self.base.minpoly
            for k in range(2 * f - 2, f - 1, -1):
                c = v[k]
                if c:
                    for i in range(f):
                        v[k - f + i] -= c * m[i]
            omega_pows.append(tuple(v[:f]))
        pi_pows = [self._pi_power_exact(s) for s in range(2 * e - 1)]
        table = []
        for a in range(n):
            i1, j1 = divmod(a, f)
            row = []
            for b in range(n):
                i2, j2 = divmod(b, f)
                w = omega_pows[j1 + j2]
                acc = [0] * n
                for i, blk in enumerate(pi_pows[i1 + i2]):
                    prod = self._w_mul_exact(tuple(blk), w)
                    for j, c in enumerate(prod):
                        acc[i * f + j] += c
                row.append(tuple((c, m) for c, m in enumerate(acc) if m))
            table.append(tuple(row))
        self._table = tuple(table)
        # eps = pi^e / p, a unit
        eps = []
        for c in self.eis:
            eps.extend(-v // self.p for v in c)
        self._eps = tuple(eps)

    def structure_constants(self):
        """m[i][j][l] in W(k) with pi^i pi^j = sum_l m[i][j][l] pi^l (exact integer coordinates)."""
        e, f = self.e, self.f
        out = []
        for i in range(e):
            row = []
            for j in range(e):
                blocks = self._pi_power_exact(i + j)
                row.append([tuple(blocks[l]) for l in range(e)])
            out.append(row)
        return out

    # -- raw coordinate arithmetic -------------------------------------------

    def _mul_coords(self, x, y, mod):
        if self.n == 1:
            return ((x[0] * y[0]) % mod,) if mod else (x[0] * y[0],)
        acc = [0] * self.n
        table = self._table
        for a, xa in enumerate(x):
            if xa:
                row = table[a]
                for b, yb in enumerate(y):
                    if yb:
                        xy = xa * yb
                        for c, m in row[b]:
                            acc[c] += xy * m
        return tuple(v % mod for v in acc) if mod else tuple(acc)

    def _moduli(self, r):
        """Per-coordinate moduli for a unit known mod pi^r."""
        mods = self._mods.get(r)
        if mods is None:
            e, f, p = self.e, self.f, self.p
            mods = tuple(p ** max(0, _ceil_div(r - a // f, e)) for a in range(self.n))
            self._mods[r] = mods
        return mods

    def _reduce(self, coords, r):
        return tuple(c % m for c, m in zip(coords, self._moduli(r)))

    def _coord_val(self, coords, r):
        """pi-adic valuation of an o_L element given by coordinates, capped at r."""
        p, f, e = self.p, self.f, self.e
        best = r
        for a, c in enumerate(coords):
            if c:
                i = a // f
                if i >= best:
                    continue
                cap = _ceil_div(best - i, e)
                w = e * _ord_p(c, p, cap) + i
                if w < best:
                    best = w
                    if best == 0:
                        return 0
        return best

    def _eps_inverse(self, K):
        got = self._eps_inv.get(K)
        if got is None:
            got = self._unit_inverse(self._eps, K)
            self._eps_inv[K] = got
        return got

    def _unit_inverse(self, u, K):
        """Inverse of an o_L unit, coordinates mod p^K."""
        f, p = self.f, self.p
        mod = p ** K
        block0 = tuple(c % p for c in u[:f])
        r = self.base.residue_field.from_vector(block0)
        if r.i == 0:
            raise DivisionByZeroToPrecision("not a unit")
        rinv = self.base.residue_field.vector(self.base.residue_field.inverse(r))
        y = tuple(rinv) + (0,) * (self.n - f)
        two = (2,) + (0,) * (self.n - 1)
        prec = 1
        target = self.e * K
        while prec < target:
            uy = self._mul_coords(u, y, mod)
            y = self._mul_coords(y, tuple((a - b) % mod for a, b in zip(two, uy)), mod)
            prec *= 2
        return y

    def _div_pi(self, coords, w, K):
        """coords / pi^w for an element of valuation >= w; coordinates mod p^K afterwards."""
        m, k = divmod(w, self.e)
        p = self.p
        if m:
            pm = p ** m
            coords = tuple(c // pm for c in coords)
            K = max(K - m, 1)
        if k:
            shifted = self._mul_coords(coords, self._pi_coords(self.e - k), 0)
            coords = tuple(c // p for c in shifted)
            coords = self._mul_coords(coords, self._eps_inverse(K), p ** K)
        return coords

    @lru_cache(maxsize=None)
    def _pi_coords(self, s):
        blocks = self._pi_power_exact(s)
        return tuple(c for blk in blocks for c in blk)

    # -- element construction --------------------------------------------------

    def _make(self, v0, coords, prec):
        """Normalise pi^v0 * coords (coords in o_L) known to absolute precision prec."""
        r = prec - v0
        if r <= 0:
            return LocalNum(self, None, None, prec)
        w = self._coord_val(coords, r)
        if w >= r:
            return LocalNum(self, None, None, prec)
        if w:
            coords = self._div_pi(coords, w, _ceil_div(r, self.e) + 1)
        v = v0 + w
        return LocalNum(self, v, self._reduce(coords, prec - v), prec)

    def zero_to(self, prec):
        return LocalNum(self, None, None, prec)

    @property
    def zero(self):
        return LocalNum(self, None, None, None)

    @property
    def one(self):
        return self._unit_elt((1,), 0, self.M)

    def _unit_elt(self, block, v, relprec):
        coords = tuple(block) + (0,) * (self.n - len(block))
        return self._make(v, coords, v + relprec)

    def uniformizer(self, k: int = 1, relprec=None):
        """pi^k (k may be negative), at relative precision ``relprec`` (default M)."""
        r = self.M if relprec is None else relprec
        return LocalNum(self, k, self._reduce((1,) + (0,) * (self.n - 1), r), k + r)

    def from_int(self, n: int, relprec=None):
        if n == 0:
            return self.zero
        r = self.M if relprec is None else relprec
        k = _ord_p(n, self.p, 10 ** 9)
        v = self.e * k
        K = _ceil_div(v + r, self.e) + 1
        coords = (n % self.p ** K,) + (0,) * (self.n - 1)
        return self._make(0, coords, v + r)

    def from_fraction(self, x: Fraction, relprec=None):
        x = Fraction(x)
        if x == 0:
            return self.zero
        num = self.from_int(x.numerator, relprec)
        if x.denominator == 1:
            return num
        return num * self.from_int(x.denominator, relprec).inverse()

    def from_w(self, w, v: int = 0, relprec=None):
        """Embed a W(F_q) coordinate tuple (times pi^v)."""
        r = self.M if relprec is None else relprec
        coords = tuple(w) + (0,) * (self.n - self.f)
        return self._make(v, coords, v + r)

    def from_coords(self, coords, prec):
        """Element sum coords[i*f+j] w^j pi^i, known to absolute precision ``prec``."""
        return self._make(0, tuple(int(c) for c in coords), prec)

    def __call__(self, x, relprec=None):
        if isinstance(x, LocalNum):
            if x.field is not self and x.field != self:
                raise TypeError("element of a different local field")
            return x
        if isinstance(x, Fraction):
            return self.from_fraction(x, relprec)
        if isinstance(x, int):
            return self.from_int(x, relprec)
        if isinstance(x, tuple):
            return self.from_w(x, 0, relprec)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    # -- ring-handle surface used by the series layer ----------------------------

    def is_zero(self, c):
        return c.v is None

    def is_unit(self, c):
        return c.v == 0

    def inverse(self, c):
        return c.inverse()

    def precision(self, c):
        return c.prec

    def ord(self, c):
        return c.ord()

    def random_element(self, rng: random.Random, prec=None, integral=True):
        """Random element of o_L known to absolute precision ``prec`` (default M)."""
        prec = self.M if prec is None else prec
        K = _ceil_div(prec, self.e)
        coords = tuple(rng.randrange(self.p ** K) for _ in range(self.n))
        return self._make(0, coords, prec)

    def random_unit(self, rng: random.Random, prec=None):
        while True:
            x = self.random_element(rng, prec)
            if x.v == 0:
                return x

    def residue(self, c):
        return c.residue()

    # -- identity ------------------------------------------------------------------

    def key(self):
        return (self.p, self.f, self.base.minpoly, self.eis)

    def __eq__(self, other):
        return isinstance(other, LocalFieldDesc) and self.key() == other.key() and self.M == other.M

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.e == 1 and self.f == 1:
            return f"Q_{self.p}"
        return f"L(p={self.p}, f={self.f}, e={self.e}, E={self.eisenstein_str()})"

    def eisenstein_str(self):
        terms = [f"x^{self.e}"]
        for i in range(self.e - 1, -1, -1):
            c = self.eis[i]
            if any(c):
                cs = str(c[0]) if self.f == 1 else str(list(c))
                terms.append(f"({cs})" + (f"*x^{i}" if i > 1 else ("*x" if i == 1 else "")))
        return " + ".join(terms)

    @property
    def name(self):
        return repr(self)

    def to_json(self):
        return {
            "p": self.p,
            "f": self.f,
            "e": self.e,
            "eisenstein": [list(c) for c in self.eis],
            "precision": self.M,
            "minpoly": list(self.base.minpoly),
        }


def make_local_field(base: UnramifiedRing, eis, M: int) -> LocalFieldDesc:
    return LocalFieldDesc(base, eis, M)


def qp(p: int, M: int = 40) -> LocalFieldDesc:
    """Q_p itself, presented by E(x) = x - p."""
    return LocalFieldDesc(UnramifiedRing(p, 1, M), [-p], M)


def structure_constants(L: LocalFieldDesc):
    return L.structure_constants()


class LocalNum:
    """pi^v * unit, known modulo pi^prec.

    ``v is None`` means zero: exact zero when ``prec is None``, otherwise zero
    to precision ``prec``.  Equality is equality to the smaller precision.
    """

    __slots__ = ("field", "v", "unit", "prec")

    def __init__(self, field, v, unit, prec):
        self.field = field
        self.v = v
        self.unit = unit
        self.prec = prec

    # -- predicates -------------------------------------------------------------

    def is_zero(self):
        return self.v is None

    def is_exact_zero(self):
        return self.v is None and self.prec is None

    def valuation(self):
        return self.v

    @property
    def relprec(self):
        if self.v is None:
            return 0
        return self.prec - self.v

    def ord(self):
        """Normalised valuation v/e, so that ord(p) = 1.

        For zero to precision k this is the lower bound k/e; a zero known to
        no digits at all raises PrecisionExhausted.
        """
        if self.v is None:
            if self.prec is None:
                return float("inf")
            if self.prec <= 0:
                raise PrecisionExhausted("zero known to no digits")
            return Fraction(self.prec, self.field.e)
        return Fraction(self.v, self.field.e)

    # -- arithmetic ----------------------------------------------------------------

    def _coerce(self, y):
        if isinstance(y, LocalNum):
            return y
        # integers and rationals are exact: give them enough digits not to limit the result
        L = self.field
        rel = max(self.prec or 0, self.relprec, L.M)
        if isinstance(y, Fraction) and y.denominator % L.p == 0:
            rel += L.e * _ord_p(y.denominator, L.p, 10 ** 9)
        return L(y, relprec=rel)

    def __add__(self, y):
        y = self._coerce(y)
        x = self
        L = x.field
        if x.v is None:
            if x.prec is None:
                return y
            if y.v is None:
                if y.prec is None:
                    return x
                return LocalNum(L, None, None, min(x.prec, y.prec))
            return L._make(y.v, y.unit, min(x.prec, y.prec))
        if y.v is None:
            if y.prec is None:
                return x
            return L._make(x.v, x.unit, min(x.prec, y.prec))
        if x.v > y.v:
            x, y = y, x
        prec = min(x.prec, y.prec)
        r = prec - x.v
        if r <= 0:
            return LocalNum(L, None, None, prec)
        d = y.v - x.v
        if d >= r:
            return L._make(x.v, x.unit, prec)
        K = _ceil_div(r, L.e) + 1
        mod = L.p ** K
        yu = y.unit if d == 0 else L._mul_coords(y.unit, L._pi_coords(d), mod)
        coords = tuple((a + b) % mod for a, b in zip(x.unit, yu))
        if d:
            # valuation stays x.v: skip normalisation
            return LocalNum(L, x.v, L._reduce(coords, r), prec)
        return L._make(x.v, coords, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.v is None:
            return self
        L = self.field
        return LocalNum(L, self.v, tuple((-c) % m for c, m in zip(self.unit, L._moduli(self.prec - self.v))), self.prec)

    def __sub__(self, y):
        return self + (-self._coerce(y))

    def __rsub__(self, y):
        return self._coerce(y) + (-self)

    def __mul__(self, y):
        y = self._coerce(y)
        x = self
        L = x.field
        if x.v is None or y.v is None:
            if x.is_exact_zero() or y.is_exact_zero():
                return L.zero
            if x.v is None and y.v is None:
                return LocalNum(L, None, None, x.prec + y.prec)
            if x.v is None:
                return LocalNum(L, None, None, x.prec + y.v)
            return LocalNum(L, None, None, y.prec + x.v)
        v = x.v + y.v
        r = min(x.prec - x.v, y.prec - y.v)
        K = _ceil_div(r, L.e)
        coords = L._mul_coords(x.unit, y.unit, L.p ** K)
        return LocalNum(L, v, L._reduce(coords, r), v + r)

    __rmul__ = __mul__

    def inverse(self):
        if self.v is None:
            raise DivisionByZeroToPrecision("inverse of zero to precision")
        L = self.field
        r = self.prec - self.v
        u = L._unit_inverse(self.unit, _ceil_div(r, L.e))
        return LocalNum(L, -self.v, L._reduce(u, r), -self.v + r)

    def __truediv__(self, y):
        return self * self._coerce(y).inverse()

    def __rtruediv__(self, y):
        return self._coerce(y) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.field.one, self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, y):
        if not isinstance(y, (LocalNum, int, Fraction)):
            return NotImplemented
        y = self._coerce(y)
        return (self - y).v is None

    def __ne__(self, y):
        r = self.__eq__(y)
        return r if r is NotImplemented else not r

    __hash__ = None

    def add_precision_cap(self, prec):
        """Same value with absolute precision lowered to ``prec`` if that is smaller."""
        if self.prec is not None and self.prec <= prec:
            return self
        if self.v is None:
            return LocalNum(self.field, None, None, prec)
        return self.field._make(self.v, self.unit, prec)

    # -- residue map ---------------------------------------------------------------

    def residue(self):
        """Image in the residue field k_L = F_q; requires an integral element."""
        L = self.field
        if self.v is None:
            if self.prec is not None and self.prec < 1:
                raise PrecisionExhausted("residue of zero known to no digits")
            return L.residue_field.zero
        if self.v < 0:
            raise ValueError("residue of a non-integral element")
        if self.v > 0:
            return L.residue_field.zero
        return L.residue_field.from_vector([c % L.p for c in self.unit[: L.f]])

    # -- display / serialisation ------------------------------------------------------

    def to_json(self):
        if self.v is None:
            return {"v": "zero", "unit": [], "prec": self.prec}
        L = self.field
        blocks = [list(self.unit[i * L.f:(i + 1) * L.f]) for i in range(L.e)]
        return {"v": self.v, "unit": blocks, "prec": self.prec}

    @classmethod
    def from_json(cls, L: LocalFieldDesc, obj):
        if obj["v"] == "zero":
            return LocalNum(L, None, None, obj["prec"])
        coords = tuple(int(c) for blk in obj["unit"] for c in blk)
        x = L._make(obj["v"], coords, obj["prec"])
        if x.v != obj["v"]:
            raise ValueError("unit part is not a unit")
        return x

    def __repr__(self):
        if self.v is None:
            return "0" if self.prec is None else f"O(pi^{self.prec})"
        L = self.field
        if L.n == 1:
            u = self.unit[0]
            base = "p" if L.e == 1 else "pi"
            head = f"{u}" if self.v == 0 else f"{u}*{base}^{self.v}"
            return f"{head} + O({base}^{self.prec})"
        return f"pi^{self.v}*{list(self.unit)} + O(pi^{self.prec})"
