"""Command-line interface.

Every subcommand builds a report dictionary; ``--json`` prints it as JSON,
otherwise the same data is printed as indented text.  Exit codes: 0 on
success, 1 when there is no result (no certificate, nothing found, a
failed check), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Sequence

from . import __version__
from .catalog import TAGS, CatalogError, DomainError, catalog_get, compute_tags, default_catalog, parse_param
from .exactmath.poly import render_rational
from .exactmath.linalg import rank
from .exterior import FormError, d_matrix, parse_form
from .g2core import G2Error, is_coclosed_numeric, is_g2
from .lie import (
    LieAlgebra,
    LieAlgebraError,
    center,
    instantiate,
    is_semisimple,
    jacobi_check,
    killing_signature,
    parse_structure_equations,
    unimodular_conditions,
)
from .obstruction import CertificateError, closed_space, obstruct, sample_definiteness, verify_certificate
from .parsing import ParseError
from .reproduce import SURD, TARGETS, _sign, reproduce
from .search import SearchConfig, search_g2

OK, NO_RESULT, INPUT_ERROR = 0, 1, 2
STATUS = {OK: "ok", NO_RESULT: "no-result", INPUT_ERROR: "input-error"}
TABLES = {"1": "levi-irreducible", "2": "levi-reducible", "radical": "radical4", "main": "main-theorem"}
INPUT_ERRORS = (CatalogError, DomainError, ParseError, LieAlgebraError, FormError, G2Error, CertificateError, ValueError, OSError)


class InputError(ValueError):
    pass


# -- argument helpers ----------------------------------------------------------------


def load_algebra(text: str, params: Sequence[str] = ()) -> LieAlgebra:
    """Catalog name, composite name, or an inline tuple of structure equations."""
    bindings = dict(parse_param(p) for p in params)
    text = text.strip()
    if text.startswith("("):
        g = parse_structure_equations(text, tuple(bindings), label=text)
        return instantiate(g, bindings) if bindings else g
    return catalog_get(text, bindings or None)


def _require_instantiated(g: LieAlgebra) -> None:
    if g.is_symbolic:
        raise InputError(f"{g.label}: bind parameters {', '.join(g.params)} with --param")


def read_form_text(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read().strip()
    return arg


def parse_sweep(items: Sequence[str]) -> dict[str, list[Fraction]]:
    """``name=a:b:step`` or ``name=v1,v2,...`` into rational grids."""
    out: dict[str, list[Fraction]] = {}
    for item in items:
        if "=" not in item:
            raise InputError(f"expected name=a:b:step, got {item!r}")
        name, spec = item.split("=", 1)
        name = {"μ": "mu", "λ": "lambda"}.get(name.strip(), name.strip())
        try:
            if ":" in spec:
                a, b, step = (Fraction(x) for x in spec.split(":"))
                if step <= 0:
                    raise InputError("sweep step must be positive")
                values, x = [], a
                while x <= b:
                    values.append(x)
                    x += step
            else:
                values = [Fraction(x) for x in spec.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad sweep {item!r}") from exc
        if not values:
            raise InputError(f"empty sweep {item!r}")
        out[name] = values
    return out


def _params_json(params: Sequence[str]) -> dict[str, str]:
    return {k: render_rational(v) for k, v in (parse_param(p) for p in params)}


# -- commands -------------------------------------------------------------------------


def cmd_catalog(args) -> tuple[int, dict, dict]:
    cat = default_catalog()
    group = None
    if args.table:
        group = TABLES.get(args.table, args.table)
        if group not in {e.group for e in cat.entries}:
            raise InputError(f"unknown table {args.table!r}; known: {', '.join(TABLES)}")
    tags = [t for f in args.filter for t in f.split(",") if t]
    bad = [t for t in tags if t not in TAGS]
    if bad:
        raise InputError(f"unknown filter(s) {bad}; known: {', '.join(TAGS)}")
    members = cat.list(tags, group)
    if args.full:
        seen, entries = set(), []
        for _, e, _ in members:
            if e.name not in seen:
                seen.add(e.name)
                entries.append(e.to_json())
        results = {"entries": entries}
    else:
        results = {
            "algebras": [
                {"name": n, "group": e.group, "structure": e.instantiate(v).structure_text() if v else e.structure_text()}
                for n, e, v in members
            ]
        }
    return OK, {"filter": tags, "table": group}, results


def _info(g: LieAlgebra) -> dict:
    out = {"dim": g.dim, "structure": g.structure_text(), "jacobi": not jacobi_check(g)}
    if g.is_symbolic:
        out["unimodular_conditions"] = [str(c) for c in unimodular_conditions(g)]
        return out
    tags = compute_tags(g)
    out.update(
        unimodular=tags["unimodular"],
        solvable=tags["solvable"],
        semisimple=is_semisimple(g),
        center_dim=center(g).dim,
        killing_signature=list(killing_signature(g)),
    )
    return out


def cmd_info(args):
    g = load_algebra(args.algebra, args.param)
    return OK, {"algebra": args.algebra, "params": _params_json(args.param)}, _info(g)


def cmd_closed(args):
    g = load_algebra(args.algebra, args.param)
    _require_instantiated(g)
    if not 0 <= args.k <= g.dim:
        raise InputError(f"degree {args.k} outside 0..{g.dim}")
    space = closed_space(g, args.k)
    exact = rank(d_matrix(g, args.k - 1)[0]) if args.k > 0 else 0
    results = {
        "degree": args.k,
        "dim": space.dim,
        "cohomology_dim": space.dim - exact,
        "free": list(space.free_vars),
        "generic": str(space.generic),
    }
    return OK, {"algebra": args.algebra, "params": _params_json(args.param)}, results


def cmd_obstruct(args):
    g = load_algebra(args.algebra, args.param)
    _require_instantiated(g)
    if g.dim != 7:
        raise InputError("obstructions are computed for seven-dimensional algebras")
    space = closed_space(g, 3)
    cert = obstruct(g, space)
    results: dict = {"closed_dim": space.dim, "certificate": cert.to_json() if cert else None}
    if cert is not None:
        results["reverified"] = verify_certificate(cert.to_json())
    if args.sample:
        results["sampling"] = {"trials": args.sample, "seed": args.seed, **sample_definiteness(g, args.sample, args.seed, space)}
    inputs = {"algebra": args.algebra, "params": _params_json(args.param), "structure": g.structure_text()}
    return (OK if cert is not None else NO_RESULT), inputs, results


def cmd_verify(args):
    g = load_algebra(args.algebra, args.param)
    _require_instantiated(g)
    text = read_form_text(args.form)
    bindings = dict(parse_param(p) for p in args.param)
    phi = parse_form(text, g.dim, params=[*bindings, SURD]).substitute(bindings)
    extra = set(phi.variables) - {SURD}
    if extra:
        raise InputError(f"unbound symbols in form: {sorted(extra)}")
    if SURD in phi.variables:
        from .exactmath.surd import to_surd

        phi = phi.map(lambda c: to_surd(c, SURD, 2))
    if g.dim != 7 or phi.degree != 3:
        raise InputError("verify expects a 3-form on a seven-dimensional algebra")
    verdict = is_g2(phi, g, sign=_sign, to_float=float)
    results = verdict.to_json()
    results["B"] = [[str(x) for x in row] for row in verdict.b.rows()]
    results["coclosed"] = is_coclosed_numeric(g, phi) if verdict.is_g2 else None
    results["form"] = str(phi)
    inputs = {"algebra": args.algebra, "params": _params_json(args.param)}
    return (OK if verdict.closed_g2 else NO_RESULT), inputs, results


def cmd_search(args):
    g = load_algebra(args.algebra, args.param)
    _require_instantiated(g)
    if g.dim != 7:
        raise InputError("search needs a seven-dimensional algebra")
    cfg = SearchConfig(args.restarts, args.budget, args.seed, args.max_den, args.epsilon)
    found = search_g2(g, cfg)
    results = {
        "config": {"restarts": cfg.restarts, "budget": cfg.budget, "seed": cfg.seed, "maxDen": cfg.max_den, "epsilon": cfg.epsilon},
        "found": found is not None,
        "result": found.to_json() if found else None,
    }
    inputs = {"algebra": args.algebra, "params": _params_json(args.param)}
    return (OK if found else NO_RESULT), inputs, results


def cmd_reproduce(args):
    rep = reproduce(args.target, parse_sweep(args.sweep))
    return (OK if rep.passed else NO_RESULT), {"target": args.target}, rep.to_json()


# -- parser and output ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--out", metavar="PATH", help="write the report to PATH instead of stdout")

    alg = argparse.ArgumentParser(add_help=False)
    alg.add_argument("algebra", help="catalog name, 'A ⊕ B', or inline equations '(0,-e12,...)'")
    alg.add_argument("--param", action="append", default=[], metavar="K=V", help="bind a parameter")

    p = argparse.ArgumentParser(prog="g2forge", description="Closed G2-structures on seven-dimensional Lie algebras.")
    p.add_argument("--version", action="version", version=f"g2forge {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", parents=[common], help="list catalog algebras")
    c.add_argument("--filter", action="append", default=[], help=f"tag: {', '.join(TAGS)}")
    c.add_argument("--table", help="1, 2, radical, main, or a group name")
    c.add_argument("--full", action="store_true", help="dump complete entries")
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("info", parents=[common, alg], help="structural invariants")
    c.set_defaults(func=cmd_info)

    c = sub.add_parser("closed", parents=[common, alg], help="space of closed k-forms")
    c.add_argument("-k", type=int, default=3)
    c.set_defaults(func=cmd_closed)

    c = sub.add_parser("obstruct", parents=[common, alg], help="search for a non-existence certificate")
    c.add_argument("--sample", type=int, default=0, metavar="N", help="also classify N random closed forms")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_obstruct)

    c = sub.add_parser("verify", parents=[common, alg], help="check a 3-form exactly")
    c.add_argument("--form", required=True, help="form text or a file containing it")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("search", parents=[common, alg], help="numerical search with exact certification")
    d = SearchConfig()
    c.add_argument("--restarts", type=int, default=d.restarts)
    c.add_argument("--budget", type=int, default=d.budget)
    c.add_argument("--seed", type=int, default=d.seed)
    c.add_argument("--max-den", type=int, default=d.max_den)
    c.add_argument("--epsilon", type=float, default=d.epsilon)
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("reproduce", parents=[common], help="rerun a classification step")
    c.add_argument("target", choices=list(TARGETS))
    c.add_argument("--sweep", action="append", default=[], metavar="NAME=A:B:STEP", help="override a parameter grid")
    c.set_defaults(func=cmd_reproduce)
    return p


def render_text(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return pad + ", ".join(_scalar(v) for v in value)
        lines = []
        for v in value:
            body = render_text(v, indent + 1)
            lines.append(pad + "- " + body.lstrip())
        return "\n".join(lines)
    return pad + _scalar(value)


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    report: dict = {"command": argv, "inputs": {}, "results": {}}
    try:
        code, inputs, results = args.func(args)
        report["inputs"], report["results"] = inputs, results
    except INPUT_ERRORS as exc:
        code = INPUT_ERROR
        report["error"] = str(exc)
    report["status"] = STATUS[code]
    report["timings"] = {"seconds": round(time.perf_counter() - t0, 3)}
    report["version"] = __version__
    text = json.dumps(report, indent=2, ensure_ascii=False) if args.json else render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if code == INPUT_ERROR and args.out:
        print(f"error: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
