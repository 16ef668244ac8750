"""Command-line entry point: ``flatbands SUBCOMMAND ...``.

Exit codes: 0 success, 1 domain error (invalid graph, unmet hypothesis,
failed check), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog
from .eigenvectors import eigenvectors_for, verify_eigenvector
from .finite import parse_graph_spec
from .floquet import DisconnectedGraphError, detect_flat_bands, sample_bands
from .generators import cartesian_flatband, cone_periodize, no_flatband_product
from .graph import GraphError, PeriodicGraph, dumps, load, validate
from .perturbation import coefficient_system, detect_with_potential, empty_locus_certificate, nu2_locus
from .screen import screen_nu2
from .singlecell import enumerate_single_cell
from .symmetry import MODES, find_local_symmetries, symmetry_flat_bands


class DomainError(Exception):
    pass


def read_graph(ref: str) -> PeriodicGraph:
    """A JSON path, or the name of a bundled example graph."""
    path = Path(ref)
    if path.is_file():
        return load(path)
    name = path.name[:-5] if path.name.endswith(".json") else ref
    if name in catalog.bundled_names():
        return catalog.load_example(name)
    raise DomainError(f"no such graph file or bundled example: {ref}")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def cmd_validate(args) -> int:
    rep = validate(read_graph(args.file))
    for name, ok, msg in rep.results:
        sys.stdout.write(f"{'ok  ' if ok else 'FAIL'} {name}{': ' + msg if msg else ''}\n")
    return 0 if rep.ok else 1


def cmd_detect(args) -> int:
    try:
        report = detect_flat_bands(read_graph(args.file), force=args.force_disconnected)
    except DisconnectedGraphError:
        raise DomainError("the periodic graph is disconnected; rerun with --force-disconnected") from None
    _emit(report.to_dict())
    return 0


def cmd_eigvec(args) -> int:
    g = read_graph(args.file)
    report = detect_flat_bands(g)
    if not report.bands:
        raise DomainError("the graph has no flat bands")
    if not 0 <= args.band < len(report.bands):
        raise DomainError(f"band index {args.band} out of range 0..{len(report.bands) - 1}")
    eigenvectors_for(g, report, reduce=False if args.raw else None)
    vec = report.bands[args.band].eigenvector
    out = vec.to_dict()
    out["multiplicity"] = report.bands[args.band].multiplicity
    out["support_cells"] = [list(k) for k in vec.support_cells()]
    out["verified"] = verify_eigenvector(g, vec)
    out["in_window"] = vec.in_window()
    _emit(out)
    return 0 if out["verified"] else 1


def cmd_bands(args) -> int:
    s = sample_bands(read_graph(args.file), args.grid, args.tol)
    if args.format == "csv":
        text = s.to_csv()
    else:
        body = s.summary()
        body["thetas"] = s.thetas.tolist()
        body["energies"] = s.energies.tolist()
        text = json.dumps(body, indent=2) + "\n"
    _write(args.out, text)
    _emit(s.summary())
    return 0


def cmd_enumerate(args) -> int:
    fs = enumerate_single_cell(args.nu)
    out = fs.to_dict(args.witnesses)
    if args.witnesses:
        for entry, d in zip(fs.entries, out["values"]):
            g, _ = entry.witness()
            d["witness"] = json.loads(dumps(g))
    _emit(out)
    return 0


def cmd_symmetry(args) -> int:
    g = read_graph(args.file)
    out = []
    for sym in find_local_symmetries(g, args.mode):
        bands = symmetry_flat_bands(g, sym)
        out.append({
            "permutation": sym.notation(),
            "cycles": len(sym.cycles),
            "flat_bands": [{"value": v.to_dict(), "eigenvector": vec.to_dict()} for v, vec in bands],
        })
    _emit({"mode": args.mode, "symmetries": out})
    return 0


def cmd_generate(args) -> int:
    gf = parse_graph_spec(args.finite)
    info: dict = {"kind": args.kind, "finite": gf.label()}
    if args.kind == "cone":
        g, bands = cone_periodize(gf)
        info["flat_bands"] = [{"value": str(v), "multiplicity": m} for v, m, _ in bands]
    elif args.kind == "tensor":
        g = no_flatband_product(read_graph(args.base or "line"), gf, "tensor")
        info["flat_bands"] = []
    else:
        base = read_graph(args.base or "fig1-right")
        if base.nu == 1:
            g = no_flatband_product(base, gf, "cartesian")
            info["flat_bands"] = []
        else:
            g, vecs = cartesian_flatband(base, gf)
            info["flat_bands"] = sorted({str(v.value) for v in vecs})
    _write(args.out, dumps(g))
    info["nu"] = g.nu
    info["out"] = args.out
    _emit(info)
    return 0


def _parse_q(text: str) -> list:
    try:
        return [Fraction(t.strip()) for t in text.split(",")]
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"cannot parse potential {text!r}: {e}") from None


def cmd_perturb(args) -> int:
    g = read_graph(args.file)
    if args.q is not None:
        q = _parse_q(args.q)
        out = detect_with_potential(g, q).to_dict()
        out["potential"] = [str(x) for x in q]
        _emit(out)
        return 0
    if args.locus:
        _emit(nu2_locus(g).to_dict())
        return 0
    cs = coefficient_system(g)
    cert = empty_locus_certificate(cs)
    out = cs.to_dict()
    out["certificate"] = None if cert is None else {"r": list(cert.r), "value": str(cert.value), "text": str(cert)}
    _emit(out)
    return 0


def cmd_screen2(args) -> int:
    g = read_graph(args.file)
    res = screen_nu2(g)
    out = res.to_dict()
    if not res.no_flat_band:
        report = detect_flat_bands(g)
        out["confirmed"] = [str(c) for c in res.candidates if c in report]
    _emit(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flatbands", description="Exact flat-band analysis of periodic graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a graph file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("detect", help="exact flat bands")
    s.add_argument("file")
    s.add_argument("--force-disconnected", action="store_true")
    s.set_defaults(func=cmd_detect)

    s = sub.add_parser("eigvec", help="compactly supported eigenvector of one flat band")
    s.add_argument("file")
    s.add_argument("--band", type=int, required=True, help="index into the sorted flat bands")
    s.add_argument("--raw", action="store_true", help="skip the univariate gcd reduction")
    s.set_defaults(func=cmd_eigvec)

    s = sub.add_parser("bands", help="sample the band functions on a grid")
    s.add_argument("file")
    s.add_argument("--grid", type=int, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_bands)

    s = sub.add_parser("enumerate", help="single-cell flat band values for cell size nu")
    s.add_argument("--nu", type=int, required=True)
    s.add_argument("--witnesses", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("symmetry", help="local symmetries and the flat bands they force")
    s.add_argument("file")
    s.add_argument("--mode", choices=MODES, default="equitable")
    s.set_defaults(func=cmd_symmetry)

    s = sub.add_parser("generate", help="build a graph from a finite graph")
    s.add_argument("kind", choices=("cartesian", "cone", "tensor"))
    s.add_argument("--finite", required=True, help="P3, C4, K3 or 'n:a-b,c-d,...'")
    s.add_argument("--base", help="periodic factor (default fig1-right, or line for tensor)")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("perturb", help="on-site potentials and flat bands")
    s.add_argument("file")
    s.add_argument("--q", help="comma-separated rational potential, e.g. --q=-1,0")
    s.add_argument("--locus", action="store_true", help="exact locus for nu = 2")
    s.set_defaults(func=cmd_perturb)

    s = sub.add_parser("screen2", help="necessary conditions for nu = 2 unweighted graphs")
    s.add_argument("file")
    s.set_defaults(func=cmd_screen2)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    if args.command == "enumerate" and not 1 <= args.nu <= 6:
        sys.stderr.write("flatbands: --nu must be between 1 and 6\n")
        return 2
    if args.command == "bands" and args.grid < 1:
        sys.stderr.write("flatbands: --grid must be positive\n")
        return 2
    try:
        return args.func(args)
    except (DomainError, GraphError, KeyError, ValueError, ArithmeticError, json.JSONDecodeError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        sys.stderr.write(f"flatbands: {msg}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
