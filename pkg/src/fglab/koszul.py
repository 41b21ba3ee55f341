"""Koszul complexes over finite-rank commutative algebras and their homology.

A :class:`FinAlgebra` is free of finite rank over the integers or over
Z/p^N, with sparse structure constants.  The Koszul complex on a_1..a_m has
k-th module A (x) Lambda^k, with basis e_I (I a k-subset, colex order) and,
inside each e_I block, the A-basis.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .errors import (
    DSquaredNonzero,
    NotAssociative,
    NotCommutative,
    SizeLimit,
    UnitMissing,
    UnsupportedBase,
)
from .rings import ZZ, is_prime
from .series import parse_series
from .smith import (
    is_zero_matrix,
    kernel_basis,
    lattice_basis,
    matmul,
    quotient_invariants,
    smith_diagonal,
    solve_in_lattice,
    transpose,
    zeros,
)

MAX_RANK = 64
MAX_SEQ = 12


# -- algebras ---------------------------------------------------------------------

@dataclass
class FinAlgebra:
    modulus: int  # 0 for the integers, p^N otherwise
    labels: list
    table: list  # table[i][j] = {l: c} with e_i e_j = sum c e_l
    unit: list
    generators: dict = field(default_factory=dict)  # name -> element vector

    @property
    def rank(self):
        return len(self.labels)

    @property
    def base_name(self):
        return "ZZ" if self.modulus == 0 else f"Z/{self.modulus}"

    @property
    def prime(self):
        if self.modulus == 0:
            return None
        for p in range(2, self.modulus + 1):
            if self.modulus % p == 0:
                return p

    def reduce(self, v):
        return [x % self.modulus for x in v] if self.modulus else list(v)

    def zero(self):
        return [0] * self.rank

    def basis(self, i):
        v = self.zero()
        v[i] = 1
        return v

    def mul(self, x, y):
        out = [0] * self.rank
        for i, a in enumerate(x):
            if a:
                row = self.table[i]
                for j, b in enumerate(y):
                    if b:
                        for l, c in row[j].items():
                            out[l] += a * b * c
        return self.reduce(out)

    def add(self, x, y):
        return self.reduce([a + b for a, b in zip(x, y)])

    def scale(self, c, x):
        return self.reduce([c * a for a in x])

    def mult_matrix(self, a):
        """Matrix of b -> a*b (column j is a * e_j)."""
        cols = [self.mul(a, self.basis(j)) for j in range(self.rank)]
        return transpose(cols, self.rank)

    def is_zero(self, x):
        return all((c % self.modulus if self.modulus else c) == 0 for c in x)

    def element(self, spec):
        """An element from a coordinate vector, an int, or polynomial text in the generators."""
        if isinstance(spec, int):
            return self.scale(spec, self.unit)
        if isinstance(spec, str):
            return self._from_text(spec)
        v = [int(c) for c in spec]
        if len(v) != self.rank:
            raise ValueError(f"element needs {self.rank} coordinates, got {len(v)}")
        return self.reduce(v)

    def _from_text(self, text):
        names = tuple(self.generators)
        if not names:
            raise ValueError("this algebra has no named generators")
        if len(names) > 3:
            raise ValueError("polynomial text supports at most three generators")
        s = parse_series(text, ZZ, names, cap=10 ** 6)
        out = self.zero()
        for e, c in s.terms.items():
            mono = list(self.unit)
            for name, k in zip(names, e):
                for _ in range(k):
                    mono = self.mul(mono, self.generators[name])
            out = self.add(out, self.scale(c, mono))
        return out

    def to_json(self):
        return {
            "base": self.base_name,
            "rank": self.rank,
            "labels": self.labels,
            "unit": self.unit,
            "table": [[{str(l): c for l, c in sorted(self.table[i][j].items())}
                       for j in range(self.rank)] for i in range(self.rank)],
        }


def _validate(A: FinAlgebra):
    r = A.rank
    if r > MAX_RANK:
        raise SizeLimit(f"rank {r} exceeds {MAX_RANK}")
    red = A.reduce
    for i in range(r):
        for j in range(r):
            if red(_vec(A.table[i][j], r)) != red(_vec(A.table[j][i], r)):
                raise NotCommutative(f"e_{i} e_{j} != e_{j} e_{i}")
    for i in range(r):
        if A.mul(A.unit, A.basis(i)) != red(A.basis(i)):
            raise UnitMissing(f"unit vector fails on basis element {i}")
    for i in range(r):
        for j in range(i, r):
            eij = _vec(A.table[i][j], r)
            for k in range(r):
                lhs = A.mul(eij, A.basis(k))
                rhs = A.mul(A.basis(i), _vec(A.table[j][k], r))
                if lhs != rhs:
                    raise NotAssociative(f"(e_{i} e_{j}) e_{k} != e_{i} (e_{j} e_{k})")


def _vec(d, r):
    v = [0] * r
    for l, c in d.items():
        v[l] = c
    return v


def _parse_base(base):
    if base in (None, "ZZ", "Z", 0):
        return 0
    if isinstance(base, int):
        return base
    s = str(base).replace(" ", "")
    if s.startswith("Z/"):
        s = s[2:]
    if "^" in s:
        p, n = s.split("^")
        m = int(p) ** int(n)
        if not is_prime(int(p)):
            raise ValueError(f"{p} is not prime")
        return m
    return int(s)


def make_algebra(spec: dict) -> FinAlgebra:
    """Build and validate an algebra.

    Accepted presentations (``base`` is ``"ZZ"`` or ``"Z/p^N"``):

    * ``{"kind": "monomial", "vars": [...], "bounds": [...]}`` -- monomials
      x^a with a_i < bounds_i, optionally also ``"max_degree": d`` (total
      degree <= d); every other monomial is zero.
    * ``{"kind": "monogenic", "poly": [c_0, ..., 1]}`` -- Z[x]/(monic poly).
    * ``{"kind": "table", "labels": [...], "table": [[{l: c}]], "unit": [...]}``.
    """
    kind = spec.get("kind", "monomial")
    mod = _parse_base(spec.get("base", "ZZ"))
    if kind == "monomial":
        A = _monomial_algebra(spec["vars"], spec.get("bounds"), spec.get("max_degree"), mod)
    elif kind == "monogenic":
        A = _monogenic_algebra(spec["poly"], spec.get("var", "x"), mod)
    elif kind == "table":
        labels = list(spec["labels"])
        table = [[{int(l): int(c) for l, c in entry.items()} if isinstance(entry, dict)
                  else {l: int(c) for l, c in enumerate(entry) if c}
                  for entry in row] for row in spec["table"]]
        A = FinAlgebra(mod, labels, table, [int(c) for c in spec["unit"]])
        A.generators = {lab: A.basis(i) for i, lab in enumerate(labels) if lab.isidentifier()}
    else:
        raise ValueError(f"unknown algebra kind {kind!r}")
    _validate(A)
    return A


def _monomial_algebra(vars, bounds, max_degree, mod):
    vars = list(vars)
    if bounds is None:
        if max_degree is None:
            raise ValueError("a monomial algebra needs bounds or max_degree")
        bounds = [max_degree + 1] * len(vars)
    monos = [e for e in itertools.product(*(range(b) for b in bounds))
             if max_degree is None or sum(e) <= max_degree]
    monos.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    if len(monos) > MAX_RANK:
        raise SizeLimit(f"rank {len(monos)} exceeds {MAX_RANK}")
    index = {e: i for i, e in enumerate(monos)}
    table = []
    for a in monos:
        row = []
        for b in monos:
            c = tuple(x + y for x, y in zip(a, b))
            row.append({index[c]: 1} if c in index else {})
        table.append(row)
    labels = [_mono_label(vars, e) for e in monos]
    A = FinAlgebra(mod, labels, table, [1 if i == index[(0,) * len(vars)] else 0 for i in range(len(monos))])
    A.generators = {}
    for k, v in enumerate(vars):
        e = tuple(1 if i == k else 0 for i in range(len(vars)))
        A.generators[v] = A.basis(index[e]) if e in index else A.zero()
    return A


def _mono_label(vars, e):
    parts = [v if k == 1 else f"{v}^{k}" for v, k in zip(vars, e) if k]
    return "*".join(parts) if parts else "1"


def _monogenic_algebra(poly, var, mod):
    poly = [int(c) for c in poly]
    if poly[-1] != 1:
        raise ValueError("monogenic presentation needs a monic polynomial")
    d = len(poly) - 1
    if d < 1:
        raise ValueError("polynomial degree must be at least 1")
    # reduce x^k for k < 2d - 1
    powers = []
    cur = [1] + [0] * (d - 1)
    for _ in range(2 * d - 1):
        powers.append(cur)
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            nxt = [a - top * c for a, c in zip(nxt, poly[:d])]
        cur = nxt
    table = [[{l: c for l, c in enumerate(powers[i + j]) if c} for j in range(d)] for i in range(d)]
    labels = ["1" if i == 0 else (var if i == 1 else f"{var}^{i}") for i in range(d)]
    A = FinAlgebra(mod, labels, table, [1] + [0] * (d - 1))
    A.generators = {var: A.basis(1) if d > 1 else [(-poly[0]) % mod if mod else -poly[0]]}
    if mod:
        A.table = [[{l: c % mod for l, c in e.items() if c % mod} for e in row] for row in table]
    return A


# -- exterior algebra bookkeeping ------------------------------------------------------

def subsets(m, k):
    """k-subsets of {1..m} in colex order."""
    return sorted(itertools.combinations(range(1, m + 1), k), key=lambda s: tuple(reversed(s)))


def wedge(I, K):
    """e_I ^ e_K as (sign, subset); sign 0 when I and K overlap."""
    if set(I) & set(K):
        return 0, ()
    seq = list(I) + list(K)
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-1) ** inv, tuple(sorted(seq))


# -- complexes -------------------------------------------------------------------------

@dataclass
class KoszulComplex:
    algebra: FinAlgebra
    seq: list
    bases: list  # bases[k] = list of k-subsets
    d: dict  # d[k]: matrix C_k -> C_{k-1}, k = 1..m

    @property
    def m(self):
        return len(self.seq)

    @property
    def modulus(self):
        return self.algebra.modulus

    def chain_rank(self, k):
        if k < 0 or k > self.m:
            return 0
        return len(self.bases[k]) * self.algebra.rank

    def matrix(self, k):
        """d_k as a matrix (rows C_{k-1}, columns C_k); empty for k outside 1..m."""
        if k in self.d:
            return self.d[k]
        return zeros(self.chain_rank(k - 1), self.chain_rank(k))

    def index(self, I, b):
        k = len(I)
        return self._pos[k][tuple(I)] * self.algebra.rank + b

    def element(self, comps):
        """Chain from {subset: A-vector}; returns (degree, flat vector)."""
        ks = {len(I) for I in comps}
        if len(ks) != 1:
            raise ValueError("a homogeneous chain needs subsets of one size")
        k = ks.pop()
        v = [0] * self.chain_rank(k)
        for I, a in comps.items():
            for b, c in enumerate(a):
                v[self.index(I, b)] += c
        return k, self.algebra.reduce(v)

    def components(self, k, v):
        r = self.algebra.rank
        return {I: v[n * r:(n + 1) * r] for n, I in enumerate(self.bases[k])
                if not self.algebra.is_zero(v[n * r:(n + 1) * r])}

    def differential(self, k, v):
        if k == 0:
            return []
        D = self.matrix(k)
        out = [sum(row[j] * v[j] for j in range(len(v)) if row[j]) for row in D]
        return self.algebra.reduce(out)

    def product(self, x, y):
        """Product of homogeneous chains given as component dicts."""
        A = self.algebra
        out = {}
        for I, a in x.items():
            for K, b in y.items():
                s, J = wedge(I, K)
                if s:
                    ab = A.scale(s, A.mul(a, b))
                    out[J] = A.add(out[J], ab) if J in out else ab
        return {J: a for J, a in out.items() if not A.is_zero(a)}

    def dump(self):
        """Matrices as row-major lists of decimal strings, keyed by degree."""
        return {str(k): [[str(x) for x in row] for row in self.matrix(k)] for k in range(1, self.m + 1)}


def build_koszul(A: FinAlgebra, seq) -> KoszulComplex:
    seq = [A.element(a) for a in seq]
    m = len(seq)
    if m > MAX_SEQ:
        raise SizeLimit(f"sequence length {m} exceeds {MAX_SEQ}")
    r = A.rank
    bases = [subsets(m, k) for k in range(m + 1)]
    mats = [A.mult_matrix(a) for a in seq]
    K = KoszulComplex(A, seq, bases, {})
    K._pos = [{I: n for n, I in enumerate(b)} for b in bases]
    for k in range(1, m + 1):
        D = zeros(len(bases[k - 1]) * r, len(bases[k]) * r)
        for n, I in enumerate(bases[k]):
            for i, ai in enumerate(I):
                sign = 1 if i % 2 == 0 else -1
                J = I[:i] + I[i + 1:]
                row0 = K._pos[k - 1][J] * r
                M = mats[ai - 1]
                for u in range(r):
                    Mu = M[u]
                    Du = D[row0 + u]
                    for w in range(r):
                        if Mu[w]:
                            Du[n * r + w] += sign * Mu[w]
        if A.modulus:
            D = [[x % A.modulus for x in row] for row in D]
        K.d[k] = D
    for k in range(2, m + 1):
        if not is_zero_matrix(matmul(K.d[k - 1], K.d[k]), A.modulus or None):
            raise DSquaredNonzero(f"d_{k - 1} d_{k} != 0")
    return K


# -- homology --------------------------------------------------------------------------

@dataclass
class HomologyResult:
    degree: int
    base: str
    free_rank: int
    torsion: list  # invariant factors > 1 (over Z/p^N: orders p^a, a < N)
    free_summand: int = 0  # 0 for Z, p^N for Z/p^N

    @property
    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    @property
    def invariant_factors(self):
        """Cyclic summand orders, torsion first; 0 stands for Z, p^N for a free Z/p^N summand."""
        return list(self.torsion) + [self.free_summand] * self.free_rank

    def to_json(self):
        return {"degree": self.degree, "base": self.base, "free_rank": self.free_rank,
                "torsion": list(self.torsion)}


def homology(K: KoszulComplex, k: int) -> HomologyResult:
    n = K.chain_rank(k)
    if n == 0:
        return HomologyResult(k, K.algebra.base_name, 0, [], K.modulus)
    mod = K.modulus
    dk, dk1 = K.matrix(k), K.matrix(k + 1)
    if mod == 0:
        rk = len(smith_diagonal(dk)) if dk else 0
        d1 = smith_diagonal(dk1) if dk1 and dk1[0] else []
        return HomologyResult(k, "ZZ", n - rk - len(d1), [x for x in d1 if x != 1], 0)
    # over Z/p^N: cycles {x : d x in p^N Z}, boundaries d_{k+1} Z + p^N Z
    rows = len(dk)
    if rows:
        aug = [list(dk[i]) + [mod if j == i else 0 for j in range(rows)] for i in range(rows)]
        ker = kernel_basis(aug)
        cyc = [row for row in ker[:n]]
    else:
        cyc = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    ncols = len(dk1[0]) if dk1 and dk1[0] else 0
    bnd = [list(dk1[i]) + [mod if j == i else 0 for j in range(n)] if ncols else
           [mod if j == i else 0 for j in range(n)] for i in range(n)]
    free, tors = quotient_invariants(cyc, bnd, n)
    if free:
        raise ArithmeticError("quotient over Z/p^N should be finite")
    full = [x for x in tors if x == mod]
    return HomologyResult(k, K.algebra.base_name, len(full), [x for x in tors if x != mod], mod)


def all_homology(K: KoszulComplex):
    return [homology(K, k) for k in range(K.m + 1)]


def euler_characteristic(K: KoszulComplex):
    """(sum (-1)^k rank H_k, sum (-1)^k rank C_k) over the integers."""
    if K.modulus:
        raise UnsupportedBase("Euler characteristic check is for integer bases")
    h = sum((-1) ** k * homology(K, k).free_rank for k in range(K.m + 1))
    c = sum((-1) ** k * K.chain_rank(k) for k in range(K.m + 1))
    return h, c


# -- quotients and regularity ----------------------------------------------------------

def ideal_generators(A: FinAlgebra, elems):
    """Columns a*e_b spanning the ideal (elems) as a lattice in Z^r (plus p^N Z^r over Z/p^N)."""
    r = A.rank
    cols = []
    for a in elems:
        for b in range(r):
            cols.append(A.mul(a, A.basis(b)))
    if A.modulus:
        cols += [[A.modulus if i == j else 0 for i in range(r)] for j in range(r)]
    return transpose(cols, r) if cols else [[] for _ in range(r)]


def quotient_invariants_of(A: FinAlgebra, elems):
    """(free_rank, torsion) of A / (elems) as an abelian group."""
    r = A.rank
    G = ideal_generators(A, elems)
    d = smith_diagonal(G) if G and G[0] else []
    return r - len(d), [x for x in d if x != 1]


def _is_nonzerodivisor_mod(A: FinAlgebra, a, prev):
    """a acts injectively on A/(prev)?  Returns (bool, witness vector or None)."""
    r = A.rank
    J = ideal_generators(A, prev)
    Jcols = len(J[0]) if J and J[0] else 0
    M = A.mult_matrix(a)
    # {x : a x in J}: kernel of [M | -J], first r coordinates
    aug = [list(M[i]) + [-J[i][j] for j in range(Jcols)] for i in range(r)]
    ker = kernel_basis(aug)
    if Jcols:
        B, piv = lattice_basis(J)
    else:
        B, piv = [[] for _ in range(r)], []
    for j in range(len(ker[0]) if ker and ker[0] else 0):
        x = [ker[i][j] for i in range(r)]
        if solve_in_lattice(B, piv, x) is None:
            return False, x
    return True, None


@dataclass
class RegularityVerdict:
    regular: bool
    homological: bool
    direct: bool
    witness_degree: int | None
    witness: HomologyResult | None
    zero_divisor_index: int | None
    homology: list

    @property
    def agree(self):
        return self.homological == self.direct

    def to_json(self):
        return {
            "regular": self.regular,
            "homological": self.homological,
            "direct": self.direct,
            "agree": self.agree,
            "witness_degree": self.witness_degree,
            "witness": self.witness.to_json() if self.witness else None,
            "zero_divisor_index": self.zero_divisor_index,
            "homology": [h.to_json() for h in self.homology],
        }


def is_regular(A: FinAlgebra, seq) -> RegularityVerdict:
    """Regularity of a sequence over an integer-based algebra, by homology and by definition."""
    if A.modulus:
        raise UnsupportedBase("regularity verdicts need an integer base; use homology instead")
    K = build_koszul(A, seq)
    hs = all_homology(K)
    bad = next((h for h in hs[1:] if not h.is_zero), None)
    homological = bad is None
    direct = True
    zd = None
    for i, a in enumerate(K.seq):
        ok, _ = _is_nonzerodivisor_mod(A, a, K.seq[:i])
        if not ok:
            direct, zd = False, i + 1
            break
    return RegularityVerdict(homological, homological, direct,
                             bad.degree if bad else None, bad, zd, hs)


# -- collapse statements -----------------------------------------------------------------

def _hjson(hs):
    return [h.to_json() for h in hs]


def collapse_check(A: FinAlgebra, seq, pi=None) -> dict:
    """Report on the two collapse situations.

    (i) regular sequence: H_0 = A/(seq) and H_{>0} = 0;
    (ii) every a_i zero: H_k free of rank C(m, k) rank(A).
    Both readings of the zero-image base change are reported: every a_i
    replaced by 0, and (when ``pi`` is given) every a_i replaced by pi, i.e.
    differential coefficients in the maximal ideal rather than zero.
    """
    K = build_koszul(A, seq)
    hs = all_homology(K)
    m, r = K.m, A.rank
    report = {"m": m, "rank": r, "base": A.base_name, "homology": _hjson(hs)}
    if A.modulus == 0:
        v = is_regular(A, seq)
        report["regular"] = v.regular
        report["verdicts_agree"] = v.agree
        if v.regular:
            free, tors = quotient_invariants_of(A, K.seq)
            ok = hs[0].free_rank == free and hs[0].torsion == tors and all(h.is_zero for h in hs[1:])
            report["regular_collapse"] = {"ok": ok, "quotient": {"free_rank": free, "torsion": tors}}
    all_zero = all(A.is_zero(a) for a in K.seq)
    if all_zero:
        report["zero_collapse"] = {"ok": _exterior_ok(hs, m, r, A.modulus),
                                   "predicted_ranks": [comb(m, k) * r for k in range(m + 1)]}
    Kz = build_koszul(A, [A.zero() for _ in K.seq])
    hz = all_homology(Kz)
    variants = {"zero_sequence": {"homology": _hjson(hz), "exterior": _exterior_ok(hz, m, r, A.modulus)}}
    if pi is not None:
        pe = A.element(pi)
        Kp = build_koszul(A, [pe for _ in K.seq])
        variants["pi_coefficients"] = {"homology": _hjson(all_homology(Kp))}
    report["variants"] = variants
    return report


def _exterior_ok(hs, m, r, mod):
    return all(h.free_rank == comb(m, h.degree) * r and not h.torsion for h in hs)


def kunneth_prediction(hs_a):
    """Homology of Ksz(0, a) from that of Ksz(a): H_k = H_k(a) + H_{k-1}(a)."""
    out = []
    n = len(hs_a)
    for k in range(n + 1):
        free, tors = 0, []
        for h in (hs_a[k] if k < n else None, hs_a[k - 1] if k >= 1 else None):
            if h is not None:
                free += h.free_rank
                tors += h.torsion
        out.append((free, sorted(tors)))
    return out


def from_json(spec: dict):
    """(algebra, sequence) from a complex input file."""
    A = make_algebra(spec["algebra"])
    seq = [A.element(a) for a in spec.get("sequence", [])]
    return A, seq
