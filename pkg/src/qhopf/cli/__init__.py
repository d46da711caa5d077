"""Command-line front end.

Exit codes: 0 all requested checks pass, 1 a check fails (witnesses are
printed), 2 usage or parse error, 3 engine limit or inconclusive result.
"""
import argparse
import json
import sys

from .. import catalog, hopf, limits, scalars
from ..catalog import EXPLICIT_BASES, AlgebraId, composite_roots, make_alphabet
from ..errors import (
    ENGINE_LIMIT_ERRORS,
    ExprSyntaxError,
    QHopfError,
    UnknownAtom,
    UnknownGenerator,
    UnsupportedFamily,
)
from ..freealg import NcPoly, TensorPoly
from ..hopf import HopfStructure
from ..rewrite import Presentation, complete, orient, system_for
from ..weights import format_weight, get_datum
from .expr import elaborate, parse

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
SUITES = ("hopf", "limits", "automorphism", "generic-vs-explicit", "all")
COMPLETION_DEGREE = 8
FORMAT_VERSION = 1


class UsageError(Exception):
    pass


# -- presentations ---------------------------------------------------------------------


def load(text, verbatim=False):
    """Presentation for an algebra id; ``verbatim`` keeps the printed explicit forms."""
    alg = AlgebraId.parse(text)
    if verbatim:
        if alg.family == "drinfeldian_explicit":
            return catalog.build_drinfeldian_explicit(alg.base, errata=False)
        if alg.family == "yangian_expected":
            return catalog.build_yangian_expected(alg.base, errata=False)
        raise UsageError(f"--verbatim applies only to explicit and Yangian presentations, not {alg}")
    return catalog.build(alg)


def composites_of(p):
    return p.meta.get("composites") or {}


def read_expr(p, text):
    return elaborate(parse(text), p.alphabet, composites_of(p))


def _as_poly(p, x):
    return x if isinstance(x, (NcPoly, TensorPoly)) else NcPoly.scalar(p.alphabet, x)


# -- structured export -----------------------------------------------------------------


def _frac(x):
    return str(x)


def _meta_tree(p):
    m = p.meta
    d = p.datum
    out = {
        "label": p.label,
        "family": m["family"],
        "base": m["base"],
        "classical": p.alphabet.classical,
        "datum": {
            "name": d.name,
            "roots": list(d.root_names),
            "form": [[_frac(x) for x in row] for row in d.form],
            "parity": list(d.parity),
            "theta": list(d.theta_coeffs),
        },
        "composites": {k: str(v) for k, v in sorted(composites_of(p).items())},
    }
    if "affine" in m:
        out["affine"] = m["affine"]
    if "errata" in m:
        out["errata"] = m["errata"]
    if "a" in m:
        out["a"] = m["a"]
    if "etilde" in m:
        out["etilde"] = {"label": m["etilde"].label, "expression": str(m["etilde"].expression)}
    if m.get("notes"):
        out["notes"] = list(m["notes"])
    if "cartan_action" in m:
        out["cartan_action"] = {
            r: {"claimed": _frac(c), "structural": _frac(s)}
            for r, (c, s) in sorted(m["cartan_action"].items())
        }
    return out


def _generators_tree(p):
    d = p.datum
    return [
        {
            "name": g.name,
            "kind": g.kind,
            "weight": format_weight(g.weight, d) or "0",
            "parity": g.parity,
            "degree": g.degree,
        }
        for g in p.generators
    ]


def completion_report(p):
    rs = orient(p)
    complete(rs, COMPLETION_DEGREE)
    rep = rs.report.as_dict()
    rep.pop("label", None)
    return rep


def export_tree(p):
    h = p.hopf
    return {
        "format": FORMAT_VERSION,
        "meta": _meta_tree(p),
        "generators": _generators_tree(p),
        "relations": [{"name": n, "poly": str(r)} for n, r in p.relations],
        "hopf": {
            "coproduct": {g: str(v) for g, v in sorted(h.coproduct.items())},
            "antipode": {g: str(v) for g, v in sorted(h.antipode.items())},
            "counit": {g: str(v) for g, v in sorted(h.counit.items())},
        },
        "reports": {"completion": completion_report(p)},
    }


def dumps(tree):
    return json.dumps(tree, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def import_tree(tree):
    """Rebuild a presentation from an export tree by parsing every canonical text."""
    try:
        meta = tree["meta"]
        base = meta["base"]
        datum = get_datum(base)
        if [str(x) for row in datum.form for x in row] != [x for row in meta["datum"]["form"] for x in row]:
            raise UsageError("datum form differs from the cataloged one")
        affine = meta.get("affine")
        affine = affine.partition("[")[0] if affine else None
        alphabet = make_alphabet(datum, affine=affine, classical=meta["classical"])
        names = [g["name"] for g in tree["generators"]]
        if names != [g.name for g in list(alphabet.cartan) + list(alphabet.letters)]:
            raise UsageError("generator list does not match the base datum")
        from ..catalog import Ctx

        ctx = Ctx(alphabet)
        composites = {}
        for root, text in meta.get("composites", {}).items():
            composites[root] = _as_poly_alpha(alphabet, elaborate(text, alphabet, composites))
        expected = composite_roots(ctx)
        if set(expected) != set(composites) or any(expected[r] != composites[r] for r in expected):
            raise UsageError("composite root vectors differ from their definition")
        rels = [(r["name"], _as_poly_alpha(alphabet, elaborate(r["poly"], alphabet, composites)))
                for r in tree["relations"]]
        h = tree["hopf"]
        co = {g: elaborate(t, alphabet, composites) for g, t in h["coproduct"].items()}
        an = {g: _as_poly_alpha(alphabet, elaborate(t, alphabet, composites)) for g, t in h["antipode"].items()}
        cu = {g: scalars.Scalar.coerce(elaborate(t, alphabet, composites)) for g, t in h["counit"].items()}
        for g, v in co.items():
            if not isinstance(v, TensorPoly):
                raise UsageError(f"coproduct image of {g} is not a tensor")
        extra = {"family": meta["family"], "base": base, "composites": composites}
        for key in ("affine", "errata", "a", "notes"):
            if key in meta:
                extra[key] = meta[key]
        if "etilde" in meta:
            e = meta["etilde"]
            extra["etilde"] = catalog.EtildeChoice(
                _as_poly_alpha(alphabet, elaborate(e["expression"], alphabet, composites)), e["label"]
            )
        if "cartan_action" in meta:
            from fractions import Fraction

            extra["cartan_action"] = {
                r: (Fraction(v["claimed"]), Fraction(v["structural"])) for r, v in meta["cartan_action"].items()
            }
        return Presentation(
            label=meta["label"],
            datum=datum,
            alphabet=alphabet,
            relations=rels,
            hopf=HopfStructure(co, an, cu),
            meta=extra,
        )
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed export document: {exc!r}") from None


def _as_poly_alpha(alphabet, x):
    return x if isinstance(x, (NcPoly, TensorPoly)) else NcPoly.scalar(alphabet, x)


# -- verification suites -----------------------------------------------------------------


def _family(p):
    return p.meta["family"]


def suite_reports(p, suite, bound):
    """Reports of one suite; an empty list means the suite does not apply."""
    fam, base = _family(p), p.meta["base"]
    verbatim = p.meta.get("errata") is False
    if suite == "hopf":
        return hopf.hopf_suite(p, bound)
    if suite == "limits":
        out = []
        if fam in ("drinfeldian_generic", "drinfeldian_explicit"):
            out.append(limits.eta_zero_report(p, bound))
        if fam == "drinfeldian_generic":
            out.append(limits.nonsingularity_report(p))
            if base in EXPLICIT_BASES:
                out.append(limits.yangian_report(p, bound=bound, modulo="others"))
        if fam == "drinfeldian_explicit":
            expected = catalog.build_yangian_expected(base, errata=not verbatim)
            out.append(limits.yangian_report(p, expected, bound=bound))
        return out
    if suite == "automorphism":
        if fam in ("uq_loop", "drinfeldian_generic", "drinfeldian_explicit"):
            return [catalog.verify_Ta(p, bound)]
        return []
    if suite == "generic-vs-explicit":
        if fam in ("drinfeldian_generic", "drinfeldian_explicit") and base in EXPLICIT_BASES:
            return [limits.generic_vs_explicit(base, bound, errata=not verbatim)]
        return []
    raise UsageError(f"unknown suite {suite!r}")


def run_suites(p, suite, bound):
    names = SUITES[:-1] if suite == "all" else (suite,)
    reports = []
    for name in names:
        got = suite_reports(p, name, bound)
        if not got and suite != "all":
            raise UsageError(f"suite {name!r} does not apply to {p.label}")
        reports.extend(got)
    return reports


def exit_code(reports):
    if any(r.failed for r in reports):
        return EXIT_FAIL
    if any(r.inconclusive for r in reports):
        return EXIT_LIMIT
    return EXIT_PASS


# -- commands ---------------------------------------------------------------------------


def cmd_list(args, out):
    for a in catalog.list_algebras():
        out.write(f"{a}\n")
    return EXIT_PASS


def cmd_show(args, out):
    p = load(args.algebra, args.verbatim)
    out.write(f"{p.label}\n")
    out.write(f"generators ({len(p.generators)}):\n")
    for g in _generators_tree(p):
        out.write(f"  {g['name']}  weight {g['weight']}  parity {g['parity']}  degree {g['degree']}\n")
    out.write(f"relations ({len(p.relations)}):\n")
    for n, r in p.relations:
        out.write(f"  {n}: {r} = 0\n")
    h = p.hopf
    for kind in ("coproduct", "antipode", "counit"):
        out.write(f"{kind}:\n")
        for g, v in sorted(getattr(h, kind).items()):
            out.write(f"  {g} -> {v}\n")
    return EXIT_PASS


def cmd_verify(args, out):
    p = load(args.algebra, args.verbatim)
    reports = run_suites(p, args.suite, args.max_degree)
    code = exit_code(reports)
    if args.json:
        out.write(dumps({"algebra": p.label, "exit": code, "reports": [r.as_dict() for r in reports]}))
        return code
    for r in reports:
        out.write(r.summary() + "\n")
        for item in r.items:
            if item.status != "pass":
                out.write(f"  {item.status.upper()} {item.name}: {item.witness}\n")
    out.write({EXIT_PASS: "PASS\n", EXIT_FAIL: "FAIL\n", EXIT_LIMIT: "INCONCLUSIVE\n"}[code])
    return code


def _system(p, x, max_degree):
    deg = x.max_degree()
    rs = system_for(p, min(COMPLETION_DEGREE, max_degree))
    if deg > rs.completed_to and deg <= max_degree:
        complete(rs, deg)
    return rs, deg <= min(rs.completed_to, max_degree)


def cmd_reduce(args, out):
    p = load(args.algebra, args.verbatim)
    x = _as_poly(p, read_expr(p, args.expr))
    rs, certain = _system(p, x, args.max_degree)
    out.write(f"{rs.reduce(x)}\n")
    if not certain:
        sys.stderr.write(f"warning: degree exceeds --max-degree {args.max_degree}; normal form not certified\n")
        return EXIT_LIMIT
    return EXIT_PASS


def cmd_hopf_map(args, out):
    p = load(args.algebra, args.verbatim)
    x = read_expr(p, args.expr)
    if isinstance(x, TensorPoly):
        raise UsageError("expected an algebra element, not a tensor")
    x = _as_poly(p, x)
    rs, certain = _system(p, x, args.max_degree)
    if args.command == "coproduct":
        value = hopf.coproduct_evaluator(p, rs)(x)
    elif args.command == "antipode":
        value = hopf.antipode_evaluator(p, rs)(x)
    else:
        value = hopf.counit_of(p, rs.normal_form(x))
    out.write(f"{value}\n")
    return EXIT_PASS if certain else EXIT_LIMIT


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_export(args, out):
    p = load(args.algebra, args.verbatim)
    text = dumps(export_tree(p))
    if args.out:
        _write(args.out, text)
    else:
        out.write(text)
    return EXIT_PASS


def cmd_import(args, out):
    try:
        with open(args.path, encoding="utf-8") as fh:
            tree = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.path}: {exc}") from None
    p = import_tree(tree)
    text = dumps(export_tree(p))
    if args.out:
        _write(args.out, text)
    else:
        out.write(text)
    return EXIT_PASS


def build_parser():
    ap = argparse.ArgumentParser(prog="qhopf", description="Exact verification of quantum algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="enumerate the cataloged algebras")

    def algebra_cmd(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("algebra", help="family:base, e.g. drinfeldian:c2")
        sp.add_argument("--verbatim", action="store_true", help="explicit forms exactly as printed")
        return sp

    algebra_cmd("show", "list generators, relations and Hopf images")
    sp = algebra_cmd("verify", "run verification suites")
    sp.add_argument("--suite", choices=SUITES, default="all")
    sp.add_argument("--max-degree", type=int, default=10)
    sp.add_argument("--json", action="store_true")
    for name in ("reduce", "coproduct", "antipode", "counit"):
        sp = algebra_cmd(name, "normal form of an expression" if name == "reduce" else f"{name} of an expression")
        sp.add_argument("expr")
        sp.add_argument("--max-degree", type=int, default=10)
    sp = algebra_cmd("export", "write the structured export document")
    sp.add_argument("--out")
    sp = sub.add_parser("import", help="read an export document and export it again")
    sp.add_argument("path")
    sp.add_argument("--out")
    return ap


COMMANDS = {
    "list": cmd_list,
    "show": cmd_show,
    "verify": cmd_verify,
    "reduce": cmd_reduce,
    "coproduct": cmd_hopf_map,
    "antipode": cmd_hopf_map,
    "counit": cmd_hopf_map,
    "export": cmd_export,
    "import": cmd_import,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ExprSyntaxError, UnknownAtom, UnknownGenerator, UnsupportedFamily, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ENGINE_LIMIT_ERRORS as exc:
        sys.stderr.write(f"engine limit: {exc}\n")
        return EXIT_LIMIT
    except QHopfError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
