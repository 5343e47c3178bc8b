"""Command line interface: ``nilpo <command> FILE [flags]``.

Exit codes: 0 success, 2 a theorem check failed, 1 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .fox import alexander_poly, charvar_scan, elementary_ideal_gens, v11_in_one
from .laurent import delta_variety_in_one, render, var_names
from .malcev import malcev_gr_dims, malcev_presentation
from .presentation import PresentationSyntaxError, load_presentation
from .report import FAIL, build_report
from .resonance import cup_structure, resonance_equations

FIELDS = {"Q": 0, "F2": 2, "F3": 3, "F5": 5}


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _load(path: str):
    try:
        return load_presentation(path)
    except PresentationSyntaxError as exc:
        raise InputError(f"{path}: {exc}") from exc
    except (OSError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def cmd_report(args) -> int:
    P = _load(args.file)
    rep = build_report(P, level=args.level, degree=args.degree, p=FIELDS[args.field], d=args.d)
    if args.json:
        print(rep.to_json())
    else:
        print(rep.to_text(), end="")
    return 0 if rep.ok else 2


def cmd_verify(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise InputError(f"{corpus}: not a directory")
    rows = []
    for path in sorted(corpus.glob("*.grp")):
        P = _load(str(path))
        rep = build_report(P, level=args.level, degree=args.degree, p=FIELDS[args.field], d=args.d)
        for c in rep.checks:
            rows.append({"group": P.name, "check": c.name, "status": c.status, "detail": c.detail})
    failed = any(r["status"] == FAIL for r in rows)
    if args.json:
        print(json.dumps({"rows": rows, "ok": not failed}, indent=2))
    else:
        width = max((len(r["group"]) for r in rows), default=5)
        for r in rows:
            print(f"{r['group']:<{width}}  {r['check']:<29}  {r['status']:<4}  {r['detail']}")
        print(f"{len(rows)} rows, {sum(r['status'] == FAIL for r in rows)} failed")
    return 2 if failed else 0


def cmd_alexander(args) -> int:
    P = _load(args.file)
    delta = alexander_poly(P)
    E1 = [render(g) for g in elementary_ideal_gens(P, 1)]
    payload = {"group": P.name, "b1": P.abelian.b1, "variables": var_names(P.abelian.b1),
               "delta": render(delta), "e1_generators": E1,
               "delta_variety": delta_variety_in_one(delta).value}
    text = (f"delta: {payload['delta']}\nE1: {', '.join(E1) if E1 else '(0)'}\n"
            f"V(delta) relative to 1: {payload['delta_variety']}\n")
    _emit(args, payload, text)
    return 0


def cmd_charvar(args) -> int:
    P = _load(args.file)
    scan = charvar_scan(P, args.level)
    payload = {"group": P.name, "level": args.level,
               "characters": [dict(rho.to_json(), depth=h) for rho, h in scan]}
    lines = [f"level {args.level}: {len(scan)} characters with depth >= 1"]
    for rho, h in scan:
        lines.append(f"  free {list(rho.free)} torsion {list(rho.torsion)}  depth {h}")
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def cmd_nilpotence(args) -> int:
    P = _load(args.file)
    verdict = v11_in_one(P)
    payload = {"group": P.name, "v11_in_one": verdict,
               "delta_variety": delta_variety_in_one(alexander_poly(P)).value}
    text = (f"V11 in {{1}}: {str(verdict).lower()}\n"
            + ("passes the nilpotence screen\n" if verdict else "not nilpotent\n"))
    _emit(args, payload, text)
    return 0


def cmd_lie_dims(args) -> int:
    P = _load(args.file)
    MP = malcev_presentation(P, args.degree)
    dims = malcev_gr_dims(MP, args.degree)
    payload = {"group": P.name, "degree": args.degree, "gr_dims": dims,
               "minimal_generators": MP.ngens, "minimal_relators": MP.nrels}
    text = f"gr dims: {dims}\nminimal Malcev presentation: {MP.ngens} generators, {MP.nrels} relators\n"
    _emit(args, payload, text)
    return 0


def cmd_resonance(args) -> int:
    P = _load(args.file)
    cs = cup_structure(P)
    eqs = [e.render() for e in resonance_equations(cs)] if cs.b1 <= 3 else None
    payload = {"group": P.name, "b1": cs.b1, "rank_mu": cs.rank_mu, "dim_K": cs.dim_K,
               "r11_equations": eqs}
    text = f"b1: {cs.b1}\ncup product rank: {cs.rank_mu}\nkernel dim: {cs.dim_K}\n"
    if eqs is not None:
        text += "R11 equations (away from 0): " + (", ".join(eqs) if eqs else "none (all of H1)") + "\n"
    _emit(args, payload, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--level", type=int, default=6, help="character scan level N")
    common.add_argument("--degree", type=int, default=5, help="Lie/Malcev truncation degree")
    common.add_argument("--field", choices=sorted(FIELDS), default="Q")
    common.add_argument("--d", type=int, default=1, help="almost-principal exponent")

    parser = _Parser(prog="nilpo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, fn, arg in [
        ("report", cmd_report, "file"),
        ("verify", cmd_verify, "corpus"),
        ("alexander", cmd_alexander, "file"),
        ("charvar", cmd_charvar, "file"),
        ("nilpotence", cmd_nilpotence, "file"),
        ("lie-dims", cmd_lie_dims, "file"),
        ("resonance", cmd_resonance, "file"),
    ]:
        p = sub.add_parser(name, parents=[common])
        p.add_argument(arg)
        p.set_defaults(func=fn)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.level < 1 or args.degree < 2 or args.d < 0:
        print("nilpo: error: need --level >= 1, --degree >= 2 and --d >= 0", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except InputError as exc:
        print(f"nilpo: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
