"""Command-line entry point.

Exit codes: 0 success, 1 usage or input error, 2 mathematical verification
failure.  Results are JSON on stdout, or in the file named by ``--out``.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import fgl, koszul, moduli, selftest as st
from .errors import (
    DegreeCapTooSmall,
    FglabError,
    IntegralityViolation,
    NotPTypical,
    PrecisionExhausted,
)
from .local import LocalFieldDesc, LocalNum, teichmuller
from .serialize import (
    coef_to_json,
    dumps,
    field_from_json,
    law_from_json,
    law_to_json,
    series_to_json,
)


class InputError(Exception):
    pass


class VerificationFailure(Exception):
    def __init__(self, payload):
        self.payload = payload
        super().__init__("verification failed")


def load_json(arg: str, what: str):
    """Parse a JSON file path or inline JSON, with a position-annotated error."""
    text = arg
    source = "<inline>"
    if not arg.lstrip().startswith(("{", "[")):
        path = Path(arg)
        if not path.exists():
            raise InputError(f"{what}: no such file {arg}")
        text = path.read_text()
        source = arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: malformed JSON in {source} at line {exc.lineno}, "
                         f"column {exc.colno} (char {exc.pos}): {exc.msg}") from None


def _field(args):
    obj = load_json(args.field, "--field")
    if args.prec is not None:
        obj = dict(obj, precision=args.prec)
    return field_from_json(obj)


def _law(arg, what="--law"):
    try:
        return law_from_json(load_json(arg, what))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FglabError):
            raise
        raise InputError(f"{what}: not a law description ({type(exc).__name__}: {exc})") from None


def _scalar(ring, text):
    """A ring element from an int, a fraction ``a/b`` or a LocalNum JSON object."""
    text = text.strip()
    if text.startswith("{"):
        if not isinstance(ring, LocalFieldDesc):
            raise InputError("LocalNum JSON needs a law over a local field")
        return LocalNum.from_json(ring, load_json(text, "--a"))
    try:
        value = Fraction(text)
    except ValueError:
        raise InputError(f"cannot read {text!r} as a number") from None
    return ring(value)


# -- subcommands --------------------------------------------------------------------

def cmd_field(args):
    L = _field(args)
    R = L.base
    sc = L.structure_constants()
    out = {
        "field": L.to_json(),
        "n": L.n,
        "q": L.q,
        "structure_constants": [[[list(c) for c in row] for row in plane] for plane in sc],
        "uniformizer": L.uniformizer(1).to_json(),
        "ord_p": str(L(L.p).ord()),
        "ord_pi": str(L.uniformizer(1).ord()),
        "teichmuller": {repr(r): list(teichmuller(R, r)) for r in R.residue_field.elements()},
    }
    return out


def cmd_fgl_build(args):
    D = args.deg
    method = args.method
    if method in ("log", "frobenius"):
        if not args.field:
            raise InputError(f"--method {method} needs --field")
        L = _field(args)
        F = fgl.lubin_tate_law(L, D) if method == "log" else fgl.lubin_tate_from_frobenius(L, D)
    elif method == "honda":
        F = fgl.from_log(fgl.honda_log(args.p, args.n, D), D, integral=True, p=args.p)
    elif method == "araki":
        vs = [Fraction(v) for v in (args.v or "").split(",") if v.strip()]
        F = fgl.ptypical_from_araki(args.p, vs, D)
    else:
        raise InputError(f"unknown method {method}")
    return law_to_json(F)


def cmd_fgl_verify(args):
    F = _law(args.law)
    rep = fgl.verify_axioms(F, associativity=not args.no_assoc)
    out = rep.to_json()
    out["failing"] = rep.failing()
    if not rep.ok:
        raise VerificationFailure(out)
    return out


def cmd_endo(args):
    F = _law(args.law)
    a = _scalar(F.ring, args.a)
    s = fgl.endo(F, a)
    return {"a": coef_to_json(F.ring, a), "series": series_to_json(s, with_ring=False)}


def cmd_height(args):
    F = _law(args.law)
    try:
        h = fgl.height_mod_pi(F)
    except DegreeCapTooSmall as exc:
        raise VerificationFailure({"height": None, "error": str(exc)})
    return {"height": "inf" if h == float("inf") else h}


def cmd_araki(args):
    F = _law(args.law)
    try:
        data = fgl.araki_from_ptypical(F)
    except NotPTypical as exc:
        raise VerificationFailure({"error": f"NotPTypical: {exc}"})
    return {"p": data.p, "v": [coef_to_json(F.ring, v) for v in data.vlist]}


def cmd_classify(args):
    F = _law(args.law)
    ms = range(0, F.D) if args.m is None else [args.m]
    return {"values": {str(m): coef_to_json(F.ring, fgl.classifying_value(F, m)) for m in ms}}


def cmd_iso(args):
    F = _law(args.law, "--law")
    G = _law(args.target, "--target")
    res = fgl.find_isomorphism(F, G, args.deg)
    if not res.found:
        raise VerificationFailure({
            "found": False,
            "obstruction_degree": res.obstruction_degree,
            "residual": {f"{i},{j}": coef_to_json(F.ring, c) for (i, j), c in sorted(res.residual.items())},
        })
    t = res.series
    return {"found": True, "verified": fgl.conjugate(F, t).series.equals(G.series.truncate(t.cap)),
            "series": series_to_json(t, with_ring=False)}


def cmd_koszul(args):
    spec = load_json(args.input, "--input")
    try:
        A, seq = koszul.from_json(spec)
    except (KeyError, TypeError) as exc:
        raise InputError(f"--input: not a complex description ({type(exc).__name__}: {exc})") from None
    K = koszul.build_koszul(A, seq)
    out = {
        "algebra": {"base": A.base_name, "rank": A.rank, "labels": A.labels},
        "sequence": seq,
        "homology": [h.to_json() for h in koszul.all_homology(K)],
    }
    if A.modulus == 0:
        out["regularity"] = koszul.is_regular(A, seq).to_json()
    out["collapse"] = koszul.collapse_check(A, seq, spec.get("pi"))
    if args.dump:
        out["matrices"] = K.dump()
    return out


def cmd_moduli(args):
    rep = moduli.groupoid_report(args.ring, args.deg)
    if not rep["ok"]:
        raise VerificationFailure(rep)
    return rep


def cmd_selftest(args):
    rep = st.selftest(args.seed, args.filter, args.golden_dir)
    if not rep["ok"]:
        raise VerificationFailure(rep)
    return rep


# -- parser ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="fglab", description="Formal group laws, Koszul homology and bud groupoids.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised checks")
    common.add_argument("--prec", type=int, help="override the field precision")
    common.add_argument("--deg", type=int, help="degree cap")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[common], help="describe a local field")
    p.add_argument("--field", required=True)
    p.set_defaults(fn=cmd_field)

    p = sub.add_parser("fgl-build", parents=[common], help="build a formal group law")
    p.add_argument("--field")
    p.add_argument("--method", choices=["log", "frobenius", "honda", "araki"], default="log")
    p.add_argument("--p", type=int, default=5)
    p.add_argument("--n", type=int, default=1, help="height for --method honda")
    p.add_argument("--v", help="Araki generators v_1,v_2,... for --method araki")
    p.set_defaults(fn=cmd_fgl_build, deg_default=25)

    p = sub.add_parser("fgl-verify", parents=[common], help="check the axioms of a law")
    p.add_argument("--law", required=True)
    p.add_argument("--no-assoc", action="store_true", help="skip associativity")
    p.set_defaults(fn=cmd_fgl_verify)

    p = sub.add_parser("endo", parents=[common], help="the endomorphism [a] of a law with logarithm")
    p.add_argument("--law", required=True)
    p.add_argument("--a", required=True, help="integer, fraction or LocalNum JSON")
    p.set_defaults(fn=cmd_endo)

    p = sub.add_parser("height", parents=[common], help="height of the reduction mod pi")
    p.add_argument("--law", required=True)
    p.set_defaults(fn=cmd_height)

    p = sub.add_parser("araki", parents=[common], help="Araki generators of a p-typical law")
    p.add_argument("--law", required=True)
    p.set_defaults(fn=cmd_araki)

    p = sub.add_parser("classify", parents=[common], help="classifying values of CP_m")
    p.add_argument("--law", required=True)
    p.add_argument("--m", type=int)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("iso", parents=[common], help="find t with F^t = G")
    p.add_argument("--law", required=True, help="source law F")
    p.add_argument("--target", required=True, help="target law G")
    p.set_defaults(fn=cmd_iso)

    p = sub.add_parser("koszul", parents=[common], help="Koszul homology of a complex file")
    p.add_argument("--input", required=True)
    p.add_argument("--dump", action="store_true", help="include the differential matrices")
    p.set_defaults(fn=cmd_koszul)

    p = sub.add_parser("moduli", parents=[common], help="bud groupoid report")
    p.add_argument("--ring", required=True, help="Z/m or F_q")
    p.set_defaults(fn=cmd_moduli, deg_default=2)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance battery")
    p.add_argument("--filter", help="criterion ids or module tags, comma separated")
    p.add_argument("--golden-dir", help="directory of golden files")
    p.set_defaults(fn=cmd_selftest)
    return ap


def _emit(payload, out):
    text = dumps(payload)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    if args.deg is None:
        args.deg = getattr(args, "deg_default", None)
    random.seed(args.seed)
    try:
        payload = args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except VerificationFailure as exc:
        _emit(exc.payload, args.out)
        return 2
    except (IntegralityViolation, PrecisionExhausted) as exc:
        _emit({"error": f"{type(exc).__name__}: {exc}"}, args.out)
        return 2
    except (FglabError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _emit(payload, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
