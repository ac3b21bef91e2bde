"""Command-line interface: ``skewcy COMMAND FILE [options]``.

``FILE`` is a presentation file or ``catalog:NAME(args)``. Exit status is 0
on success, 1 when a verdict is unequal or certification fails, 2 on usage
and validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import DEFAULT_DEGREE_BOUND, GradedAutomorphism
from .catalog import CATALOG, build_entry, load_entry, selftest
from .constructions import (
    DEFAULT_SEED,
    graded_twist,
    normality_witness,
    ore_extension,
    quotient_by_normal,
    smash_product,
    tensor_product,
)
from .errors import AlgebraError
from .identities import (
    serialize,
    verify_center,
    verify_hdet_descent,
    verify_hi1_cy,
    verify_hi2,
    verify_hi3,
    verify_ore_hdet,
    verify_quotient,
    verify_tensor,
)
from .koszul import (
    as_index,
    certify_koszul_as_regular,
    homological_determinant,
    nakayama,
    quadratic_dual,
)
from .parsing import Presentation, load_presentation, parse_expression, presentation_of


class UsageError(Exception):
    pass


def load(spec: str, degree: int | None) -> Presentation:
    if spec.startswith("catalog:"):
        try:
            return load_entry(spec[len("catalog:"):], degree)
        except ValueError as exc:
            raise UsageError(str(exc))
    try:
        return load_presentation(spec, degree)
    except OSError as exc:
        raise UsageError(f"cannot read {spec}: {exc.strerror or exc}")


def _autos(P: Presentation, names: str) -> list[GradedAutomorphism]:
    return [P.auto(n.strip()) for n in names.split(",") if n.strip()]


def _group(P: Presentation, name: str) -> list[GradedAutomorphism]:
    if name not in P.groups:
        raise UsageError(f"no group named {name!r}")
    return [P.auto(n) for n in P.groups[name]]


def _certificate(A):
    try:
        return certify_koszul_as_regular(A).to_dict()
    except AlgebraError:
        return None


def _presentation_text(A, autos=None):
    return presentation_of(A, autos).serialize()


def _maybe_write(args, A, autos=None):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_presentation_text(A, autos))


def _algebra_summary(A) -> dict:
    return {
        "field": A.field.spec_text,
        "generators": {n: list(d) for n, d in zip(A.table.names, A.table.degrees)},
        "relations": [A.format(r) for r in A.minimal_relations],
        "hilbert": A.hilbert(),
    }


# ---------- command handlers ----------
# each returns (report fields, exit status)

def cmd_validate(args, P):
    A = P.algebra
    res = _algebra_summary(A)
    res["quadratic"] = A.is_quadratic
    res["automorphisms"] = {n: s.to_json()["images"] for n, s in P.automorphisms.items()}
    res["groups"] = P.groups
    res["known"] = dict(P.source.known)
    return {"result": res}, 0


def cmd_gb(args, P):
    A = P.algebra
    rs = A.rewrite
    return {
        "result": {
            "degree": A.degree_bound,
            "groebner": [g.format(A.table) for g in rs.groebner],
            "overlap_failures": len(rs.overlap_failures()),
        }
    }, 0


def cmd_hilbert(args, P):
    A = P.algebra
    return {"result": {"degree": A.degree_bound, "hilbert": A.hilbert()}}, 0


def cmd_dual(args, P):
    E = quadratic_dual(P.algebra)
    return {"result": _algebra_summary(E)}, 0


def cmd_certify(args, P):
    cert = certify_koszul_as_regular(P.algebra)
    return {"certificate": cert.to_dict(), "result": {"certified": cert.certified}}, 0 if cert.certified else 1


def cmd_nakayama(args, P):
    A = P.algebra
    mu, p1 = nakayama(A, args.source)
    ell, p2 = as_index(A, args.source)
    res = {"nakayama": mu.to_json(), "as_index": list(ell), "as_index_total": sum(ell)}
    return {"result": res, "provenance": sorted({p1, p2}), "certificate": _certificate(A)}, 0


def cmd_hdet(args, P):
    A = P.algebra
    sigma = P.auto(args.auto)
    h, p = homological_determinant(A, sigma, args.source)
    return {"result": {"automorphism": args.auto, "hdet": str(h)}, "provenance": [p],
            "certificate": _certificate(A)}, 0


def cmd_twist(args, P):
    fam = _autos(P, args.auto)
    tw = graded_twist(P.algebra, fam)
    _maybe_write(args, tw)
    return {"result": _algebra_summary(tw)}, 0


def cmd_ore(args, P):
    tdeg = tuple(int(v) for v in args.tdeg.split(",")) if args.tdeg else None
    C = ore_extension(P.algebra, P.auto(args.auto), tdeg)
    _maybe_write(args, C)
    return {"result": _algebra_summary(C)}, 0


def cmd_tensor(args, P):
    Q = load(args.file2, args.degree)
    AB = tensor_product(P.algebra, Q.algebra)
    _maybe_write(args, AB)
    return {"result": _algebra_summary(AB)}, 0


def _elem(P, text):
    A = P.algebra
    return parse_expression(text, A.table, A.field)


def cmd_normal(args, P):
    A = P.algebra
    try:
        mu, prov = nakayama(A)
    except AlgebraError:
        mu, prov = None, None
    w = normality_witness(A, _elem(P, args.elem), mu)
    res = {"element": A.format(w.element), "tau": w.tau.to_json(),
           "nakayama_eigenvalue": str(w.eigenvalue) if w.eigenvalue is not None else None}
    return {"result": res, "provenance": [prov] if prov else []}, 0


def cmd_quotient(args, P):
    A = P.algebra
    z = _elem(P, args.elem)
    normality_witness(A, z)
    q = quotient_by_normal(A, z)
    _maybe_write(args, q.algebra)
    return {"result": _algebra_summary(q.algebra)}, 0


def cmd_smash(args, P):
    B = smash_product(P.algebra, _group(P, args.group), seed=args.seed, samples=args.samples)
    res = {
        "group_order": B.order,
        "group": [g.to_json()["images"] for g in B.group],
        "multiplication_table": B.table,
        "associativity_failures": len(B.associativity_failures),
        "degree_zero_dimension": len(B.basis(0)),
    }
    return {"result": res}, 0


def _verdict_report(v):
    return {"verdict": v.to_dict(), "provenance": list(v.provenance)}, 0 if v.equal else 1


def cmd_verify(args, P):
    A = P.algebra
    kind = args.identity
    if kind == "hi1":
        if not args.group:
            raise UsageError("verify hi1 needs --group")
        v = verify_hi1_cy(A, _group(P, args.group), seed=args.seed, samples=args.samples)
    elif kind == "hi2":
        if not args.auto:
            raise UsageError("verify hi2 needs --auto")
        v = verify_hi2(A, _autos(P, args.auto))
    elif kind == "hi3":
        v = verify_hi3(A)
    elif kind == "ore-hdet":
        if not args.auto:
            raise UsageError("verify ore-hdet needs --auto")
        v = verify_ore_hdet(A, P.auto(args.auto))
    elif kind == "center":
        sigmas = _autos(P, args.auto) if args.auto else list(P.automorphisms.values())
        v = verify_center(A, sigmas)
    elif kind == "tensor":
        if not args.file2:
            raise UsageError("verify tensor needs --with FILE2")
        Q = load(args.file2, args.degree)
        s = P.auto(args.auto) if args.auto else None
        t = Q.auto(args.auto2) if args.auto2 else None
        if (s is None) != (t is None):
            raise UsageError("give both --auto and --auto2 or neither")
        v = verify_tensor(A, Q.algebra, s, t)
    elif kind == "quotient":
        if not args.elem:
            raise UsageError("verify quotient needs --elem")
        v = verify_quotient(A, _elem(P, args.elem))
    else:
        if not (args.elem and args.auto):
            raise UsageError("verify descent needs --elem and --auto")
        v = verify_hdet_descent(A, _elem(P, args.elem), P.auto(args.auto))
    return _verdict_report(v)


HANDLERS = {
    "validate": cmd_validate,
    "gb": cmd_gb,
    "hilbert": cmd_hilbert,
    "dual": cmd_dual,
    "certify": cmd_certify,
    "nakayama": cmd_nakayama,
    "hdet": cmd_hdet,
    "twist": cmd_twist,
    "ore": cmd_ore,
    "tensor": cmd_tensor,
    "normal": cmd_normal,
    "quotient": cmd_quotient,
    "smash": cmd_smash,
    "verify": cmd_verify,
}


def cmd_catalog(args):
    if args.action == "list":
        res = {e.name: {"signature": e.signature, "description": e.description} for e in CATALOG.values()}
        return {"result": res}, 0
    if args.action == "show":
        if not args.name:
            raise UsageError("catalog show needs a NAME")
        try:
            pf = build_entry(args.name)
        except ValueError as exc:
            raise UsageError(str(exc))
        entry = CATALOG[args.name.split("(")[0].strip()]
        return {"result": {"facts": list(entry.facts), "presentation": pf.serialize()}}, 0
    rows = selftest(args.degree)
    res = {"checks": [{"check": n, "passed": ok, "detail": d} for n, ok, d in rows]}
    return {"result": res}, 0 if all(ok for _, ok, _ in rows) else 1


# ---------- output ----------

def _render(value, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines += _render(v, indent + 1)
            elif isinstance(v, str) and "\n" in v:
                lines.append(f"{pad}{k}:")
                lines += [f"{pad}  {line}" for line in v.rstrip().splitlines()]
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines += _render(v, indent + 1)
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(f"{pad}{_inline(value)}")
    return lines


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v) or all(
            isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x) for x in v
        )
    return False


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--degree", type=int, default=None,
                        help=f"degree bound (default: file option or {DEFAULT_DEGREE_BOUND})")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="sampling seed")

    parser = argparse.ArgumentParser(prog="skewcy", description="Nakayama automorphisms and homological "
                                     "determinants of graded algebras, computed exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, **extra):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", help="presentation file or catalog:NAME(args)")
        for flag, kw in extra.items():
            p.add_argument(flag, **kw)
        return p

    add("validate", "parse, complete and validate a presentation")
    gb = add("gb", "Groebner basis to a degree")
    gb.add_argument("--deg", type=int, dest="deg")
    hb = add("hilbert", "Hilbert series prefix")
    hb.add_argument("--deg", type=int, dest="deg")
    add("dual", "quadratic dual")
    add("certify", "numerical Koszul AS-regular certificate")
    for name in ("nakayama",):
        p = add(name, "Nakayama automorphism and AS index")
        p.add_argument("--source", choices=["auto", "koszul", "registry"], default="auto")
    p = add("hdet", "homological determinant of a named automorphism")
    p.add_argument("--auto", required=True)
    p.add_argument("--source", choices=["auto", "koszul", "registry"], default="auto")
    p = add("twist", "graded twist by named automorphisms")
    p.add_argument("--auto", required=True, help="comma-separated family, one per grading coordinate")
    p.add_argument("--out")
    p = add("ore", "Ore extension A[t; phi]")
    p.add_argument("--auto", required=True)
    p.add_argument("--tdeg", help="multidegree of t (default: new grading coordinate)")
    p.add_argument("--out")
    p = add("tensor", "tensor product with a second algebra")
    p.add_argument("file2")
    p.add_argument("--out")
    p = add("normal", "normality witness of an element")
    p.add_argument("--elem", required=True)
    p = add("quotient", "quotient by a normal element")
    p.add_argument("--elem", required=True)
    p.add_argument("--out")
    p = add("smash", "smash product with a named group")
    p.add_argument("--group", required=True)
    p.add_argument("--samples", type=int, default=200)

    v = sub.add_parser("verify", parents=[common], help="verify a homological identity")
    v.add_argument("identity", choices=["hi1", "hi2", "hi3", "ore-hdet", "center", "tensor", "quotient", "descent"])
    v.add_argument("file")
    v.add_argument("--auto")
    v.add_argument("--auto2")
    v.add_argument("--group")
    v.add_argument("--elem")
    v.add_argument("--with", dest="file2")
    v.add_argument("--samples", type=int, default=200)

    c = sub.add_parser("catalog", parents=[common], help="built-in algebras")
    c.add_argument("action", choices=["list", "show", "selftest"])
    c.add_argument("name", nargs="?")
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    deg = getattr(args, "deg", None)
    if deg is not None:
        args.degree = deg
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "seed", "command") and v is not None}
    try:
        if args.command == "catalog":
            fields, status = cmd_catalog(args)
        else:
            P = load(args.file, args.degree)
            fields, status = HANDLERS[args.command](args, P)
    except (UsageError, AlgebraError, ValueError, ZeroDivisionError) as exc:
        err.write(f"skewcy {args.command}: {type(exc).__name__}: {exc}\n")
        return 2
    report = {
        "command": args.command,
        "inputs": inputs,
        "certificate": fields.get("certificate"),
        "result": serialize(fields.get("result")),
        "verdict": fields.get("verdict"),
        "provenance": fields.get("provenance", []),
        "seed": args.seed,
    }
    if args.json:
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        lines = [f"== {args.command} =="]
        for key in ("result", "verdict", "certificate"):
            if report[key] is not None:
                lines.append(f"{key}:")
                lines += _render(report[key], 1)
        if report["provenance"]:
            lines.append(f"provenance: {', '.join(report['provenance'])}")
        lines.append(f"seed: {args.seed}")
        out.write("\n".join(lines) + "\n")
    return status


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
