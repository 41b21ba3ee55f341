"""Exhaustive enumeration of formal group law buds over small finite rings.

A bud of degree d is X + Y + sum c_ij X^i Y^j (i, j >= 1, i + j <= d) with
c_ij = c_ji, associative to total degree d.  Coordinate changes
t = t_0 T + ... + t_{d-1} T^d (t_0 a unit) act on the right by
F^t = t^-1(F(t(X), t(Y))).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SearchSpaceTooLarge
from .fgl import FormalGroupLaw, conjugate, verify_axioms
from .rings import FiniteRing, finite_ring
from .series import TruncSeries, comp_inverse, compose

SEARCH_LIMIT = 10 ** 7
XY = ("X", "Y")


def ring_spec(spec) -> FiniteRing:
    """A finite ring from ``"Z/m"`` (m <= 125), ``"F_q"`` (q <= 25) or a ring handle."""
    if isinstance(spec, FiniteRing):
        return spec
    R = finite_ring(spec)
    if hasattr(R, "m") and R.m > 125:
        raise ValueError("Z/m needs m <= 125")
    if hasattr(R, "q") and R.q > 25:
        raise ValueError("F_q needs q <= 25")
    return R


def ring_name(R):
    return getattr(R, "name", repr(R))


def bud_slots(d):
    """Free coefficient positions (i, j), i <= j, ordered by degree then i."""
    return [(i, k - i) for k in range(2, d + 1) for i in range(1, k // 2 + 1)]


@dataclass(frozen=True)
class Bud:
    ring: FiniteRing
    d: int
    coeffs: tuple  # element indices, one per slot of bud_slots(d)

    def series(self) -> TruncSeries:
        R = self.ring
        terms = {(1, 0): R.one, (0, 1): R.one}
        for (i, j), c in zip(bud_slots(self.d), self.coeffs):
            if c:
                terms[(i, j)] = R.element(c)
                terms[(j, i)] = R.element(c)
        return TruncSeries(R, XY, self.d, terms)

    def law(self):
        return FormalGroupLaw(self.series(), "raw")

    @classmethod
    def from_series(cls, S: TruncSeries, d=None):
        d = S.cap if d is None else d
        return cls(S.ring, d, tuple(S[(i, j)].i for i, j in bud_slots(d)))

    def to_json(self):
        return {"ring": ring_name(self.ring), "d": self.d,
                "coefficients": {f"{i},{j}": repr(self.ring.element(c))
                                 for (i, j), c in zip(bud_slots(self.d), self.coeffs) if c}}

    def __str__(self):
        return str(self.series())


@dataclass(frozen=True)
class CoordChange:
    ring: FiniteRing
    d: int
    coeffs: tuple  # element indices of t_0 .. t_{d-1}

    def series(self) -> TruncSeries:
        R = self.ring
        return TruncSeries(R, ("T",), self.d,
                           {(k + 1,): R.element(c) for k, c in enumerate(self.coeffs) if c})

    @classmethod
    def from_series(cls, t: TruncSeries, d=None):
        d = t.cap if d is None else d
        return cls(t.ring, d, tuple(t[(k + 1,)].i for k in range(d)))

    def compose(self, other: "CoordChange") -> "CoordChange":
        """self o other."""
        return CoordChange.from_series(compose(self.series(), other.series()), self.d)

    def inverse(self) -> "CoordChange":
        return CoordChange.from_series(comp_inverse(self.series()), self.d)

    def is_identity(self):
        return self.coeffs == (self.ring.one.i,) + (0,) * (self.d - 1)

    def to_json(self):
        return [repr(self.ring.element(c)) for c in self.coeffs]


def identity_change(R, d):
    return CoordChange(R, d, (R.one.i,) + (0,) * (d - 1))


def _guard(R, n):
    if len(R) ** n > SEARCH_LIMIT:
        raise SearchSpaceTooLarge(f"{len(R)}^{n} candidates exceeds {SEARCH_LIMIT}")


def enumerate_buds(R, d) -> list:
    """All buds of degree d over R, pruned degree by degree by associativity."""
    R = ring_spec(R)
    if not 2 <= d <= 4:
        raise ValueError("degree cap must satisfy 2 <= d <= 4")
    slots = bud_slots(d)
    _guard(R, len(slots))
    partial = [()]
    for k in range(2, d + 1):
        nk = sum(1 for i, j in slots if i + j == k)
        nxt = []
        for head in partial:
            for tail in itertools.product(range(len(R)), repeat=nk):
                cand = Bud(R, k, head + tail)
                if verify_axioms(cand.series()).ok:
                    nxt.append(head + tail)
        partial = nxt
    return [Bud(R, d, c) for c in sorted(partial)]


def enumerate_buds_raw(R, d) -> list:
    """Oracle: every two-variable series X + Y + (all monomials of degree 2..d), filtered by the axioms."""
    R = ring_spec(R)
    mons = [(i, k - i) for k in range(2, d + 1) for i in range(k + 1)]
    _guard(R, len(mons))
    out = []
    for vals in itertools.product(range(len(R)), repeat=len(mons)):
        terms = {(1, 0): R.one, (0, 1): R.one}
        for e, c in zip(mons, vals):
            if c:
                terms[e] = R.element(c)
        S = TruncSeries(R, XY, d, terms)
        if verify_axioms(S).ok:
            out.append(Bud.from_series(S))
    return sorted(out, key=lambda b: b.coeffs)


def enumerate_coordchanges(R, d) -> list:
    R = ring_spec(R)
    _guard(R, d)
    units = [u.i for u in R.units()]
    out = []
    for t0 in units:
        for rest in itertools.product(range(len(R)), repeat=d - 1):
            out.append(CoordChange(R, d, (t0,) + rest))
    return out


def act(t: CoordChange, F: Bud) -> Bud:
    """F^t, truncated to degree d."""
    if t.ring is not F.ring or t.d != F.d:
        raise ValueError("coordinate change and bud must share ring and degree")
    return Bud.from_series(conjugate(F.law(), t.series()).series, F.d)


class ActionTable:
    """The full action of Gamma_d(R) on the buds of degree d, tabulated."""

    def __init__(self, R, d):
        self.ring = ring_spec(R)
        self.d = d
        self.buds = enumerate_buds(self.ring, d)
        self.group = enumerate_coordchanges(self.ring, d)
        self.bud_index = {b.coeffs: i for i, b in enumerate(self.buds)}
        self.group_index = {g.coeffs: i for i, g in enumerate(self.group)}
        self.table = [[self.bud_index[act(g, b).coeffs] for b in self.buds] for g in self.group]
        self._comp = {}

    def compose(self, a, b):
        """Index of group[a] o group[b]."""
        key = (a, b)
        if key not in self._comp:
            self._comp[key] = self.group_index[self.group[a].compose(self.group[b]).coeffs]
        return self._comp[key]

    def orbit(self, i):
        return sorted({row[i] for row in self.table})

    def stabilizer(self, i):
        return [g for g, row in enumerate(self.table) if row[i] == i]

    def morphisms(self, i, j):
        return [g for g, row in enumerate(self.table) if row[i] == j]

    def orbits(self):
        seen, out = set(), []
        for i in range(len(self.buds)):
            if i not in seen:
                orb = self.orbit(i)
                seen.update(orb)
                out.append(orb)
        return out


def orbit_and_stabilizer(F: Bud, table: ActionTable | None = None):
    table = table or ActionTable(F.ring, F.d)
    i = table.bud_index[F.coeffs]
    return ([table.buds[j] for j in table.orbit(i)],
            [table.group[g] for g in table.stabilizer(i)])


def groupoid_report(R, d, table: ActionTable | None = None) -> dict:
    """Orbit, stabilizer and groupoid-axiom checks, all exhaustive."""
    T = table or ActionTable(R, d)
    n_group = len(T.group)
    ident = T.group_index[identity_change(T.ring, d).coeffs]
    checks = {
        "identity_acts_trivially": all(T.table[ident][i] == i for i in range(len(T.buds))),
        "right_action": True,
        "inverses_in_group": True,
        "composition_associative": True,
        "orbit_stabilizer": True,
        "constant_morphism_counts": True,
        "empty_across_orbits": True,
        "composition_closed": True,
        "identity_morphisms": True,
        "stabilizers_are_subgroups": True,
    }
    G = range(n_group)
    for a in G:
        inv = T.group[a].inverse().coeffs
        if inv not in T.group_index or T.compose(a, T.group_index[inv]) != ident:
            checks["inverses_in_group"] = False
    for a in G:
        for b in G:
            ab = T.compose(a, b)
            for i in range(len(T.buds)):
                # (F^a)^b = F^(a o b)
                if T.table[b][T.table[a][i]] != T.table[ab][i]:
                    checks["right_action"] = False
    for a, b, c in itertools.product(G, repeat=3):
        if T.compose(T.compose(a, b), c) != T.compose(a, T.compose(b, c)):
            checks["composition_associative"] = False
            break
    orbits = T.orbits()
    where = {i: n for n, orb in enumerate(orbits) for i in orb}
    out_orbits = []
    for orb in orbits:
        rep = orb[0]
        stab = T.stabilizer(rep)
        if len(orb) * len(stab) != n_group:
            checks["orbit_stabilizer"] = False
        sset = set(stab)
        if ident not in sset or any(T.compose(a, b) not in sset for a in stab for b in stab):
            checks["stabilizers_are_subgroups"] = False
        for i in orb:
            if ident not in T.morphisms(i, i):
                checks["identity_morphisms"] = False
            for j in orb:
                mij = T.morphisms(i, j)
                if len(mij) != len(stab):
                    checks["constant_morphism_counts"] = False
                for k in orb:
                    for h in mij:
                        for h2 in T.morphisms(j, k):
                            if T.table[T.compose(h, h2)][i] != k:
                                checks["composition_closed"] = False
        out_orbits.append({"size": len(orb), "stabilizer_order": len(stab),
                           "representative": T.buds[rep].to_json()})
    for i in range(len(T.buds)):
        for j in range(len(T.buds)):
            if where[i] != where[j] and T.morphisms(i, j):
                checks["empty_across_orbits"] = False
    return {
        "ring": ring_name(T.ring),
        "d": d,
        "bud_count": len(T.buds),
        "group_order": n_group,
        "orbits": out_orbits,
        "checks": checks,
        "ok": all(checks.values()),
    }


def bud_c_prime(R, c, t0, t1):
    """Degree-2 transformation law: X + Y + cXY under t0 T + t1 T^2 becomes X + Y + c'XY,
    c' = c t0 - 2 t1 / t0."""
    R = ring_spec(R)
    c, t0, t1 = R(c), R(t0), R(t1)
    return c * t0 - 2 * t1 * R.inverse(t0)
