"""JSON encodings of rings, field elements, series and formal group laws.

Every ``*_to_json`` has a matching ``*_from_json`` and the pair round-trips
to an equal value.  Output is canonical: terms are sorted, so equal inputs
give identical bytes.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .fgl import FormalGroupLaw, Logarithm
from .local import LocalFieldDesc, LocalNum, UnramifiedRing
from .rings import QQ, ZZ, FiniteElement, GaloisField, IntegerMod, galois_field
from .series import TruncSeries


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- fields and rings ---------------------------------------------------------------

def field_from_json(obj) -> LocalFieldDesc:
    """``{"p":5,"f":1,"e":2,"eisenstein":[[-5],[0]],"precision":40}`` -> field."""
    p, f, M = int(obj["p"]), int(obj.get("f", 1)), int(obj["precision"])
    eis = obj["eisenstein"]
    if "e" in obj and int(obj["e"]) != len(eis):
        raise ValueError(f"e = {obj['e']} but {len(eis)} Eisenstein coefficients given")
    base = UnramifiedRing(p, f, M, obj.get("minpoly"))
    return LocalFieldDesc(base, [tuple(int(x) for x in c) if isinstance(c, list) else int(c) for c in eis], M)


def field_to_json(L: LocalFieldDesc):
    return L.to_json()


def ring_to_json(R):
    if isinstance(R, LocalFieldDesc):
        return {"kind": "local", "field": R.to_json()}
    return R.to_json()


def ring_from_json(obj):
    kind = obj["kind"]
    if kind == "QQ":
        return QQ
    if kind == "ZZ":
        return ZZ
    if kind == "Zmod":
        return IntegerMod(int(obj["m"]))
    if kind == "GF":
        G = galois_field(int(obj["p"]), int(obj["f"]))
        if list(obj.get("minpoly", G.minpoly)) != list(G.minpoly):
            return GaloisField(int(obj["p"]), int(obj["f"]), obj["minpoly"])
        return G
    if kind == "local":
        return field_from_json(obj["field"])
    raise ValueError(f"unknown ring kind {kind!r}")


# -- coefficients -------------------------------------------------------------------

def coef_to_json(R, c):
    if isinstance(c, LocalNum):
        return c.to_json()
    if isinstance(c, FiniteElement):
        return R.vector(c) if isinstance(R, GaloisField) else c.i
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else c.numerator
    return int(c)


def coef_from_json(R, obj):
    if isinstance(R, LocalFieldDesc):
        if isinstance(obj, (int, str)):
            return R(Fraction(obj))
        return LocalNum.from_json(R, obj)
    if isinstance(R, GaloisField):
        return R.from_vector(obj) if isinstance(obj, list) else R(int(obj))
    if R is QQ or R == QQ:
        return Fraction(obj)
    return R(int(obj) if not isinstance(obj, str) else Fraction(obj))


# -- series -------------------------------------------------------------------------

def _term_order(e):
    return (sum(e), tuple(-x for x in e))


def series_to_json(s: TruncSeries, with_ring=True):
    out = {
        "vars": list(s.vars),
        "cap": s.cap,
        "terms": [[list(e), coef_to_json(s.ring, s.terms[e])] for e in sorted(s.terms, key=_term_order)],
    }
    if s._floor is not None:
        out["zero_floor"] = s._floor
    if with_ring:
        out["ring"] = ring_to_json(s.ring)
    return out


def series_from_json(obj, ring=None) -> TruncSeries:
    R = ring if ring is not None else ring_from_json(obj["ring"])
    terms = {tuple(e): coef_from_json(R, c) for e, c in obj["terms"]}
    return TruncSeries(R, obj["vars"], int(obj["cap"]), terms, obj.get("zero_floor"))


# -- laws ---------------------------------------------------------------------------

def law_to_json(F: FormalGroupLaw):
    out = {
        "ring": ring_to_json(F.ring),
        "provenance": F.provenance,
        "degree": F.D,
        "precision": F.series.prec,
        "series": series_to_json(F.series, with_ring=False),
        "log": series_to_json(F.log.series, with_ring=False) if F.log is not None else None,
    }
    if F.p is not None:
        out["p"] = F.p
    if "pi_series" in F.extra:
        out["pi_series"] = series_to_json(F.extra["pi_series"], with_ring=False)
    return out


def law_from_json(obj) -> FormalGroupLaw:
    R = ring_from_json(obj["ring"])
    S = series_from_json(obj["series"], R)
    if S.vars != ("X", "Y"):
        S = S.rename(("X", "Y"))
    log = Logarithm(series_from_json(obj["log"], R)) if obj.get("log") else None
    F = FormalGroupLaw(S, obj.get("provenance", "raw"), log, obj.get("p"))
    if obj.get("pi_series"):
        F.extra["pi_series"] = series_from_json(obj["pi_series"], R)
    return F


def laws_equal(F: FormalGroupLaw, G: FormalGroupLaw):
    return F.ring == G.ring and F.provenance == G.provenance and F.series.equals(G.series) and (
        (F.log is None) == (G.log is None)) and (F.log is None or F.log.series.equals(G.log.series))
