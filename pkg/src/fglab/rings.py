"""Exact coefficient rings: the integers, the rationals and small finite rings.

Every ring handle exposes the same small surface used by the series layer:
``zero``, ``one``, ``__call__`` (coercion), ``is_zero``, ``is_unit``,
``inverse`` and ``precision``.  Elements themselves support the usual
arithmetic operators, so series code never calls into the handle for
``+`` or ``*``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import NonPrime, IrreduciblePolyNotFound


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def p_valuation(n: int, p: int) -> int:
    """ord_p of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


# -- polynomials over F_p, as coefficient lists, lowest degree first -------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    """Remainder of a by the monic polynomial b over F_p."""
    a = [c % p for c in a]
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            for i in range(db + 1):
                a[k - db + i] = (a[k - db + i] - c * b[i]) % p
    return _poly_trim(a[:db])


def is_irreducible_mod_p(poly, p: int) -> bool:
    """Brute-force factor search: no monic factor of degree 1..deg/2 divides."""
    f = len(poly) - 1
    for d in range(1, f // 2 + 1):
        for tail in product(range(p), repeat=d):
            cand = list(tail) + [1]
            if not _poly_mod(poly, cand, p):
                return False
    return True


def smallest_irreducible(p: int, f: int) -> list[int]:
    """Monic irreducible x^f + c_{f-1}x^{f-1} + ... + c_0 over F_p.

    Candidates are ordered lexicographically on (c_{f-1}, ..., c_0), i.e. in
    the order the coefficients are written.  Returned lowest degree first.
    """
    if not is_prime(p):
        raise NonPrime(p)
    for high_first in product(range(p), repeat=f):
        poly = list(reversed(high_first)) + [1]
        if f == 1 or (poly[0] % p and is_irreducible_mod_p(poly, p)):
            return poly
    raise IrreduciblePolyNotFound(f"no irreducible polynomial of degree {f} mod {p}")


# -- infinite exact rings ----------------------------------------------------

class IntegerRing:
    name = "ZZ"
    is_exact = True
    is_field = False
    characteristic = 0

    zero = 0
    one = 1

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def is_zero(self, c):
        return c == 0

    def is_unit(self, c):
        return c in (1, -1)

    def inverse(self, c):
        if c not in (1, -1):
            raise ZeroDivisionError(f"{c} is not a unit of ZZ")
        return c

    def precision(self, c):
        return None

    def to_json(self):
        return {"kind": "ZZ"}

    def __repr__(self):
        return "ZZ"

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")


class RationalField:
    name = "QQ"
    is_exact = True
    is_field = True
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        return Fraction(x)

    def is_zero(self, c):
        return c == 0

    def is_unit(self, c):
        return c != 0

    def inverse(self, c):
        return 1 / Fraction(c)

    def precision(self, c):
        return None

    def to_json(self):
        return {"kind": "QQ"}

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


ZZ = IntegerRing()
QQ = RationalField()


# -- finite rings (table driven) ---------------------------------------------

class FiniteElement:
    __slots__ = ("ring", "i")

    def __init__(self, ring, i):
        self.ring = ring
        self.i = i

    def _other(self, y):
        if isinstance(y, FiniteElement):
            if y.ring is not self.ring and y.ring != self.ring:
                raise TypeError("elements of different finite rings")
            return y.i
        return self.ring(y).i

    def __add__(self, y):
        return self.ring._elts[self.ring._add[self.i][self._other(y)]]

    __radd__ = __add__

    def __sub__(self, y):
        r = self.ring
        return r._elts[r._add[self.i][r._neg[self._other(y)]]]

    def __rsub__(self, y):
        r = self.ring
        return r._elts[r._add[self._other(y)][r._neg[self.i]]]

    def __neg__(self):
        return self.ring._elts[self.ring._neg[self.i]]

    def __mul__(self, y):
        return self.ring._elts[self.ring._mul[self.i][self._other(y)]]

    __rmul__ = __mul__

    def __pow__(self, k):
        r = self.ring
        if k < 0:
            return r.inverse(self) ** (-k)
        out, base = r.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, y):
        if isinstance(y, FiniteElement):
            return (y.ring is self.ring or y.ring == self.ring) and y.i == self.i
        if isinstance(y, (int, Fraction)):
            try:
                return self.ring(y).i == self.i
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ring), self.i))

    def __repr__(self):
        return self.ring.label(self.i)

    def __int__(self):
        return self.i


class FiniteRing:
    """A finite commutative ring given by full addition and multiplication tables."""

    is_exact = True

    def __init__(self, size, add, mul, labels, characteristic):
        self.size = size
        self._add = add
        self._mul = mul
        self._labels = labels
        self.characteristic = characteristic
        self._neg = [add[i].index(0) for i in range(size)]
        self._elts = [FiniteElement(self, i) for i in range(size)]
        one = [i for i in range(size) if all(mul[i][j] == j for j in range(size))]
        self._one = one[0]
        self._inv = {}
        for i in range(size):
            for j in range(size):
                if mul[i][j] == self._one:
                    self._inv[i] = j
                    break
        self.is_field = len(self._inv) == size - 1

    @property
    def zero(self):
        return self._elts[0]

    @property
    def one(self):
        return self._elts[self._one]

    def elements(self):
        return list(self._elts)

    def units(self):
        return [self._elts[i] for i in sorted(self._inv)]

    def element(self, i):
        return self._elts[i]

    def label(self, i):
        return self._labels[i]

    def is_zero(self, c):
        return c.i == 0

    def is_unit(self, c):
        return c.i in self._inv

    def inverse(self, c):
        try:
            return self._elts[self._inv[c.i]]
        except KeyError:
            raise ZeroDivisionError(f"{c} is not a unit") from None

    def precision(self, c):
        return None

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(self._elts)


class IntegerMod(FiniteRing):
    def __init__(self, m: int):
        if m < 2:
            raise ValueError("modulus must be at least 2")
        self.m = m
        add = [[(i + j) % m for j in range(m)] for i in range(m)]
        mul = [[(i * j) % m for j in range(m)] for i in range(m)]
        labels = [str(i) for i in range(m)]
        char = m
        super().__init__(m, add, mul, labels, char)
        self.name = f"Z/{m}"

    def __call__(self, x):
        if isinstance(x, FiniteElement):
            if x.ring is self:
                return x
            raise TypeError("cannot coerce between finite rings")
        if isinstance(x, Fraction):
            return self._elts[x.numerator % self.m] * self.inverse(self._elts[x.denominator % self.m])
        return self._elts[int(x) % self.m]

    def to_json(self):
        return {"kind": "Zmod", "m": self.m}

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, IntegerMod) and other.m == self.m

    def __hash__(self):
        return hash(("Zmod", self.m))


class GaloisField(FiniteRing):
    """F_q for q = p^f, elements indexed by sum c_j p^j of their coordinates in omega."""

    def __init__(self, p: int, f: int = 1, minpoly=None):
        if not is_prime(p):
            raise NonPrime(p)
        self.p, self.f = p, f
        self.q = p ** f
        self.minpoly = list(minpoly) if minpoly is not None else smallest_irreducible(p, f)
        q = self.q
        vecs = [self._vec(i) for i in range(q)]
        add = [[self._idx([(a + b) % p for a, b in zip(vecs[i], vecs[j])]) for j in range(q)] for i in range(q)]
        mul = [[self._idx(self._polymul(vecs[i], vecs[j])) for j in range(q)] for i in range(q)]
        labels = [self._fmt(v) for v in vecs]
        super().__init__(q, add, mul, labels, p)
        self.name = f"F_{q}"

    def _vec(self, i):
        out = []
        for _ in range(self.f):
            out.append(i % self.p)
            i //= self.p
        return out

    def _idx(self, vec):
        i = 0
        for c in reversed(list(vec) + [0] * (self.f - len(vec))):
            i = i * self.p + c
        return i

    def _polymul(self, a, b):
        prod = [0] * (2 * self.f)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] += x * y
        r = _poly_mod(prod, self.minpoly, self.p)
        return r + [0] * (self.f - len(r))

    def _fmt(self, v):
        if self.f == 1:
            return str(v[0])
        parts = []
        for j, c in enumerate(v):
            if c:
                parts.append(str(c) if j == 0 else (f"{c}*w" if j == 1 else f"{c}*w^{j}"))
        return " + ".join(parts) if parts else "0"

    def from_vector(self, vec):
        return self._elts[self._idx([c % self.p for c in vec])]

    def vector(self, c):
        return self._vec(c.i)

    def __call__(self, x):
        if isinstance(x, FiniteElement):
            if x.ring is self:
                return x
            raise TypeError("cannot coerce between finite rings")
        if isinstance(x, Fraction):
            return self(x.numerator) * self.inverse(self(x.denominator))
        if isinstance(x, (tuple, list)):
            return self.from_vector(x)
        return self._elts[int(x) % self.p]

    def to_json(self):
        return {"kind": "GF", "p": self.p, "f": self.f, "minpoly": self.minpoly}

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, GaloisField) and (other.p, other.f, other.minpoly) == (self.p, self.f, self.minpoly)

    def __hash__(self):
        return hash(("GF", self.p, self.f))


@lru_cache(maxsize=None)
def galois_field(p: int, f: int = 1) -> GaloisField:
    """Shared GaloisField instance for (p, f) with the canonical minpoly."""
    return GaloisField(p, f)


def finite_ring(spec: str):
    """Parse ``"Z/4"``, ``"F_5"``, ``"F_25"`` or ``"GF(9)"`` into a ring handle."""
    s = spec.strip().replace(" ", "")
    if s.startswith("Z/"):
        return IntegerMod(int(s[2:]))
    if s.startswith("F_") or s.startswith("GF("):
        q = int(s[2:] if s.startswith("F_") else s[3:-1])
        for p in range(2, q + 1):
            if q % p == 0:
                break
        f = p_valuation(q, p)
        if p ** f != q:
            raise ValueError(f"{q} is not a prime power")
        return galois_field(p, f)
    raise ValueError(f"unrecognised ring {spec!r}")
