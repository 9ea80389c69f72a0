"""Command-line surface: algebra spec files in, analyses and certificates out.

Spec files carry either a bound quiver presentation or raw structure
constants, plus the prime and a label. Commands print text tables by
default and a JSON report with --format json; both formats state the same
verdicts. Exit code 0 means the run completed (fail verdicts included),
1 is a usage error, 2 is a computation error, which in JSON mode is also
emitted as a structured object.
"""

import argparse
import json
import pathlib
import sys
from importlib import resources

import numpy as np

from . import __version__
from . import algebras as alg
from . import cmaus as cm
from . import gproj as gp
from . import modules as md
from . import silting as sl
from . import twoterm as tt
from . import verify as vf
from .algebras import Algebra
from .errors import GhomalgError, NotCertifiedGorenstein, ParseError


# -- spec ingestion --------------------------------------------------------------


def _resolve_spec(name: str):
    """Filesystem path first, bundled fixture second."""
    p = pathlib.Path(name)
    if p.is_file():
        return p
    bundled = resources.files("ghomalg") / "fixtures" / name
    if bundled.is_file():
        return bundled
    raise ParseError(f"no such spec file: {name}")


def _quiver_algebra(raw: dict, p: int, label: str, path) -> Algebra:
    vertices = raw.get("vertices")
    if not isinstance(vertices, int) or vertices < 1:
        raise ParseError(f"{path}: quiver.vertices must be a positive integer")
    arrows = raw.get("arrows")
    if not isinstance(arrows, list):
        raise ParseError(f"{path}: quiver.arrows must be a list")
    triples = []
    index = {}
    for k, arrow in enumerate(arrows):
        try:
            name, src, tgt = arrow["name"], arrow["source"], arrow["target"]
        except (TypeError, KeyError):
            raise ParseError(
                f"{path}: arrow {k} needs fields name/source/target") from None
        if name in index:
            raise ParseError(f"{path}: duplicate arrow name {name!r}")
        index[name] = k
        triples.append((name, src, tgt))
    relations = []
    for i, rel in enumerate(raw.get("relations", [])):
        terms = []
        for j, term in enumerate(rel):
            try:
                coeff, names = term
            except (TypeError, ValueError):
                raise ParseError(
                    f"{path}: relation {i} term {j} must be "
                    f"[coeff, [arrow, ...]]") from None
            try:
                arrow_path = tuple(index[n] for n in names)
            except KeyError as missing:
                raise ParseError(
                    f"{path}: relation {i} term {j} names unknown arrow "
                    f"{missing.args[0]!r}") from None
            terms.append((int(coeff), arrow_path))
        relations.append(terms)
    quiver = alg.Quiver(vertices, tuple(triples))
    return alg.from_quiver(quiver, relations, p, label=label)


def _constants_algebra(raw: dict, p: int, label: str, path) -> Algebra:
    try:
        constants = np.asarray(raw["structure_constants"], dtype=np.int64)
        unit = np.asarray(raw["unit"], dtype=np.int64)
    except (KeyError, ValueError) as exc:
        raise ParseError(f"{path}: bad structure constant data: {exc}") from exc
    if constants.ndim != 3 or unit.ndim != 1:
        raise ParseError(
            f"{path}: structure_constants must be a cube and unit a vector")
    return alg.from_structure_constants(constants, unit, p, label=label)


def parse_spec(path, prime: int | None = None) -> Algebra:
    """Algebra from a spec file; ParseError on malformed input, constructor
    errors (bad relations, small primes, non-associativity) pass through."""
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: top level must be an object")
    p = prime if prime is not None else raw.get("prime")
    if not isinstance(p, int) or p < 2:
        raise ParseError(f"{path}: missing integer field 'prime'")
    label = raw.get("label")
    if not isinstance(label, str) or not label:
        raise ParseError(f"{path}: missing string field 'label'")
    has_quiver = "quiver" in raw
    if has_quiver == ("structure_constants" in raw):
        raise ParseError(
            f"{path}: exactly one of 'quiver' or 'structure_constants'")
    if has_quiver:
        if not isinstance(raw["quiver"], dict):
            raise ParseError(f"{path}: 'quiver' must be an object")
        return _quiver_algebra(raw["quiver"], p, label, path)
    return _constants_algebra(raw, p, label, path)


# -- command payloads ------------------------------------------------------------


def _toolkit(a: Algebra, args):
    atlas = gp.gproj_atlas(a, bound=args.bound, seed=args.seed)
    inventory = sl.build_inventory(a, atlas, dim_cap=args.dim_cap,
                                   seed=args.seed)
    return atlas, inventory


def _atlas_payload(atlas: gp.AtlasData) -> dict:
    return {
        "completeness": atlas.completeness,
        "gorenstein_dimension": atlas.gorenstein_dimension,
        "members": [{"label": m.label, "dim": int(m.dim),
                     "projective": bool(flag)}
                    for m, flag in zip(atlas.members, atlas.projective_flags)],
    }


def cmd_analyze(a: Algebra, args) -> dict:
    try:
        data = gp.gorenstein_data(a, bound=args.bound, seed=args.seed)
    except NotCertifiedGorenstein as exc:
        return {"gorenstein": {"certified": False, "detail": str(exc)},
                "atlas": None}
    atlas, _ = _toolkit(a, args)
    return {"gorenstein": {"certified": True,
                           "dimension": data.dimension,
                           "left_idim": data.left_idim,
                           "right_idim": data.right_idim},
            "atlas": _atlas_payload(atlas)}


def cmd_atlas(a: Algebra, args) -> dict:
    atlas, _ = _toolkit(a, args)
    return {"atlas": _atlas_payload(atlas)}


def cmd_rigid(a: Algebra, args) -> dict:
    atlas, inventory = _toolkit(a, args)
    ctx = cm.build_context(atlas)
    rows = []
    for m in inventory.modules:
        if not cm.is_tau_g_rigid(ctx, m, seed=args.seed):
            continue
        pair = sl.minimal_pair(m, atlas, seed=args.seed)
        rows.append({"module": {"label": m.label, "dim": int(m.dim)},
                     "presentation": {
                         "g1": {"label": pair.theta.source.label,
                                "dim": int(pair.theta.source.dim)},
                         "g0": {"label": pair.theta.target.label,
                                "dim": int(pair.theta.target.dim)}}})
    return {"inventory_size": len(inventory.modules), "rigid": rows}


def cmd_silting(a: Algebra, args) -> dict:
    atlas, inventory = _toolkit(a, args)
    candidates = [(m, m.label) for m in inventory.modules]
    atlas_sum, _, _ = md.direct_sum(atlas.members)
    candidates.append((atlas_sum, atlas_sum.label))
    rows = []
    for m, label in candidates:
        pair = sl.minimal_pair(m, atlas, seed=args.seed)
        rows.append({
            "module": {"label": label, "dim": int(m.dim)},
            "partial_silting": sl.is_partial_g_silting(pair),
            "silting": sl.is_g_silting(pair, inventory),
            "tilting": sl.is_g_tilting(pair, atlas, inventory,
                                       seed=args.seed),
            "star": sl.star_criterion(pair, atlas, inventory,
                                      seed=args.seed),
        })
    return {"modules": rows}


def cmd_complexes(a: Algebra, args) -> dict:
    atlas, inventory = _toolkit(a, args)
    complexes = tt.enumerate_complexes(atlas, inventory, seed=args.seed)
    rows = []
    for c in complexes:
        if not tt.is_gsilting_complex(c, atlas, inventory):
            continue
        bctx = tt.endomorphism_algebra_B(c, seed=args.seed)
        report = tt.gldim_bound_check(bctx, atlas)
        rows.append({
            "complex": c.label,
            "h0": {"label": c.h0()[0].label, "dim": int(c.h0()[0].dim)},
            "b_dim": int(bctx.b.dim),
            "gldim_b": report.gldim_b,
            "bound": report.bound,
            "verdict": report.verdict,
        })
    return {"enumerated": len(complexes), "silting_complexes": rows}


def cmd_verify(a: Algebra, args) -> dict:
    params = vf.Parameters(prime=a.p, dim_cap=args.dim_cap, seed=args.seed,
                           bound=args.bound)
    if args.check:
        certs = [vf.run_check(args.check, a, params)]
    else:
        certs = vf.run_suite(a, params)
    return {"certificates": [c.as_dict() for c in certs]}


# -- text rendering --------------------------------------------------------------


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _table(rows: list, header: list) -> list:
    widths = [max(len(str(r[i])) for r in [header] + rows)
              for i in range(len(header))]
    out = ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip()
           for r in [header] + rows]
    return out


def _render_atlas_block(payload: dict) -> list:
    atlas = payload["atlas"]
    lines = [f"atlas: {len(atlas['members'])} members, "
             f"completeness {atlas['completeness']}, "
             f"Gorenstein dimension {atlas['gorenstein_dimension']}"]
    rows = [[m["label"], m["dim"], _yn(m["projective"])]
            for m in atlas["members"]]
    lines += _table(rows, ["member", "dim", "projective"])
    return lines


def render_text(command: str, report: dict) -> str:
    lines = [f"fixture {report['fixture']}  prime {report['prime']}"]
    if "error" in report:
        err = report["error"]
        lines.append(f"computation error: {err['type']}: {err['detail']}")
        return "\n".join(lines)
    if command == "analyze":
        g = report["gorenstein"]
        if g["certified"]:
            lines.append(
                f"gorenstein: certified, dimension {g['dimension']} "
                f"(idim {g['left_idim']}/{g['right_idim']})")
            lines += _render_atlas_block(report)
        else:
            lines.append(f"gorenstein: not certified ({g['detail']})")
    elif command == "atlas":
        lines += _render_atlas_block(report)
    elif command == "rigid":
        lines.append(f"rigid members: {len(report['rigid'])} of "
                     f"{report['inventory_size']} inventory modules")
        rows = [[r["module"]["label"], r["module"]["dim"],
                 f"{r['presentation']['g1']['label']} -> "
                 f"{r['presentation']['g0']['label']}"]
                for r in report["rigid"]]
        if rows:
            lines += _table(rows, ["module", "dim", "presentation"])
    elif command == "silting":
        rows = [[r["module"]["label"], r["module"]["dim"],
                 _yn(r["partial_silting"]), _yn(r["silting"]),
                 _yn(r["tilting"]), _yn(r["star"])]
                for r in report["modules"]]
        lines += _table(rows, ["module", "dim", "partial", "silting",
                               "tilting", "star"])
    elif command == "complexes":
        lines.append(f"silting complexes: "
                     f"{len(report['silting_complexes'])} of "
                     f"{report['enumerated']} enumerated")
        rows = [[r["complex"], r["b_dim"],
                 "-" if r["gldim_b"] is None else r["gldim_b"],
                 r["bound"], r["verdict"]]
                for r in report["silting_complexes"]]
        if rows:
            lines += _table(rows, ["complex", "B dim", "gldim B", "bound",
                                   "verdict"])
    elif command == "verify":
        rows = [[c["check_id"], c["verdict"], c["atlas_completeness"]]
                for c in report["certificates"]]
        lines += _table(rows, ["check", "verdict", "atlas"])
    return "\n".join(lines)


# -- entry point -----------------------------------------------------------------


_COMMANDS = {
    "analyze": cmd_analyze,
    "atlas": cmd_atlas,
    "rigid": cmd_rigid,
    "silting": cmd_silting,
    "complexes": cmd_complexes,
    "verify": cmd_verify,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghomalg",
        description="Gorenstein-homological analyses over a prime field.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("spec", help="spec file path or bundled fixture name")
        sp.add_argument("--prime", type=int, default=None,
                        help="override the spec file's prime")
        sp.add_argument("--dim-cap", type=int, default=16, dest="dim_cap")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--bound", type=int, default=12)
        sp.add_argument("--format", choices=("json", "text"),
                        default="text", dest="fmt")
        sp.add_argument("--out", default=None,
                        help="write the report to a file instead of stdout")
        if name == "verify":
            sp.add_argument("--check", choices=vf.CHECK_IDS, default=None)
    return parser


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _emit(report: dict, command: str, args) -> None:
    if args.fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True,
                          default=_json_default)
    else:
        text = render_text(command, report)
    if args.out:
        pathlib.Path(args.out).write_text(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1

    try:
        a = parse_spec(_resolve_spec(args.spec), prime=args.prime)
    except ParseError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except GhomalgError as exc:
        print(f"usage error: {args.spec}: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 1

    base = {"tool_version": __version__, "prime": a.p, "fixture": a.label}
    try:
        payload = _COMMANDS[args.command](a, args)
    except GhomalgError as exc:
        report = dict(base)
        report["error"] = {"type": type(exc).__name__, "detail": str(exc)}
        _emit(report, args.command, args)
        return 2
    report = dict(base)
    report.update(payload)
    _emit(report, args.command, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
