"""Command-line front end.

    chowwitt scenario dp4
    chowwitt euler --space "Gr(2,5)" --bundle "sym(2,Q) + sym(2,Q)"
    chowwitt euler --space "P(triv(1) + sym(2,dual(Q))) over Gr(2,3)" --opaque rank=5,deg=56
    chowwitt chern --space "Gr(2,4)" --bundle "sym(3,Q)"
    chowwitt pic --space "Gr(2,4)" --bundle "sym(3,Q)"
    chowwitt gw "h*h"

``Gr(k,n)`` is the Grassmannian of rank-k *quotients* of an n-dimensional space.
Exit status: 0 on success, 1 on a domain error, 2 on a parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import euler, gw, pic
from .chern import chern_total, first_chern, rank, top_chern
from .errors import DomainError, ParseError
from .parsing import parse_bundle, parse_gw, parse_opaque, parse_space
from .projbundle import degree_Y

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2


def _field(text: str) -> gw.FieldSpec:
    return gw.FieldSpec.parse(text)


def cmd_scenario(args) -> tuple[str, dict]:
    rep = euler.run_scenario(args.name, _field(args.field))
    return rep.text(), {"command": "scenario", "name": args.name, "report": rep.to_json()}


def cmd_euler(args) -> tuple[str, dict]:
    space = parse_space(args.space)
    if args.bundle is not None:
        sheaf: euler.SheafDesc = euler.ExprSheaf(parse_bundle(args.bundle))
    else:
        p = parse_opaque(args.opaque)
        sheaf = euler.OpaqueSheaf(p.rank, p.chow_degree, p.det_class(space))
    rep = euler.euler_class(sheaf, space, _field(args.field))
    return rep.text(), {"command": "euler", "report": rep.to_json()}


def cmd_chern(args) -> tuple[str, dict]:
    space = parse_space(args.space)
    e = parse_bundle(args.bundle)
    r = rank(e, space)
    total = chern_total(e, space)
    det = first_chern(e, space)
    top_deg = degree_Y(top_chern(e, space)) if r == space.dim else None
    lines = [f"space: {space.text()}", f"bundle: {args.bundle.strip()}", f"rank: {r}"]
    pieces = []
    for i in range(r + 1):
        ci = total.piece(i)
        lines.append(f"c_{i} = {ci}")
        pieces.append({"degree": i, "terms": ci.to_records()})
    lines.append(f"det = {det.text()}")
    if top_deg is not None:
        lines.append(f"deg c_{r} = {top_deg}")
    data = {
        "command": "chern",
        "space": space.text(),
        "rank": str(r),
        "chern": pieces,
        "det": [str(c) for c in det.coords],
        "top_degree": None if top_deg is None else str(top_deg),
    }
    return "\n".join(lines), data


def cmd_pic(args) -> tuple[str, dict]:
    space = parse_space(args.space)
    e = parse_bundle(args.bundle)
    r = rank(e, space)
    det = first_chern(e, space)
    omega = pic.canonical(space)
    equiv = pic.quad_equiv(det, omega)
    orient = pic.rel_orientable(det, r, space)
    text = "\n".join(
        [
            f"space: {space.text()}",
            f"det: {det.text()}",
            f"omega: {omega.text()}",
            f"det ~q omega: {str(equiv).lower()}",
            f"relatively orientable: {str(orient).lower()}",
        ]
    )
    data = {
        "command": "pic",
        "space": space.text(),
        "rank": str(r),
        "det": [str(c) for c in det.coords],
        "omega": [str(c) for c in omega.coords],
        "quad_equiv": equiv,
        "rel_orientable": orient,
    }
    return text, data


def cmd_gw(args) -> tuple[str, dict]:
    field = _field(args.field)
    val = parse_gw(args.expr, field)
    w = gw.witt_image(val)
    text = val.render()
    data = {
        "command": "gw",
        "field": field.name,
        "value": val.to_json(),
        "rank": str(gw.rank_map(val)),
        "witt": list(w.value) if isinstance(w.value, tuple) else w.value,
    }
    return text, data


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="also write a JSON report to PATH")
    common.add_argument("--quiet", action="store_true", help="suppress the text report")

    parser = argparse.ArgumentParser(prog="chowwitt", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scenario", parents=[common], help="run a built-in line-count scenario")
    p.add_argument("name", choices=euler.SCENARIOS)
    p.add_argument("--field", default=gw.UNIVERSAL, help=f"one of {', '.join(gw.FIELDS)}")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("euler", parents=[common], help="enriched Euler class of a sheaf")
    p.add_argument("--space", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--bundle")
    g.add_argument("--opaque", metavar="rank=R,deg=N[,det=a|a:b]")
    p.add_argument("--field", default=gw.UNIVERSAL, help=f"one of {', '.join(gw.FIELDS)}")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("chern", parents=[common], help="Chern classes of a bundle")
    p.add_argument("--space", required=True)
    p.add_argument("--bundle", required=True)
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("pic", parents=[common], help="determinant, canonical class, orientability")
    p.add_argument("--space", required=True)
    p.add_argument("--bundle", required=True)
    p.set_defaults(func=cmd_pic)

    p = sub.add_parser("gw", parents=[common], help="evaluate a Grothendieck-Witt expression")
    p.add_argument("expr")
    p.add_argument("--field", default=gw.UNIVERSAL, help=f"one of {', '.join(gw.FIELDS)}")
    p.set_defaults(func=cmd_gw)
    return parser


def dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        text, data = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        if exc.text:
            print(f"  {exc.text}", file=stderr)
            print("  " + " " * len(exc.text.encode()[: exc.offset].decode(errors="ignore")) + "^", file=stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    if not args.quiet:
        print(text, file=stdout)
    if args.json:
        Path(args.json).write_text(dump_json(data), encoding="utf-8")
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
