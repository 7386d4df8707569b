"""Command-line interface: ``twistwidth {dm,rg,verify} ACTION ...``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage or
input-file error. With ``--json`` every action prints one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import core, monotone, oracle, ribbon
from .core import elements, fmt_set as _fmt
from .errors import ParseError, TwistWidthError
from .formats import (
    dumps,
    parse_ribbon_graph_file,
    parse_script_file,
    parse_set_system_file,
    ribbon_graph_to_json,
    set_system_to_json,
    write_ribbon_graph,
    write_set_system,
)


class UsageError(Exception):
    pass


def parse_labels(text: str) -> list[int]:
    """Parse ``"1,3,4"`` into labels; the empty string is the empty set."""
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse element list {text!r}") from None


def _load(loader: Callable, path: str):
    # any failure while reading an input file is a usage-level error
    try:
        return loader(path)
    except TwistWidthError as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from None


def _subset(D_n: int, text: str) -> int:
    labels = parse_labels(text)
    try:
        return core.to_mask(D_n, labels)
    except TwistWidthError as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from None


# dm ------------------------------------------------------------------------


def dm_check(args):
    D = _load(parse_set_system_file, args.file)
    v = core.check_symmetric_exchange(D)
    if v.holds:
        return {"holds": True, "witness": None}, "symmetric exchange holds"
    X, Y, u = v.witness
    data = {"holds": False, "witness": {"X": elements(X), "Y": elements(Y), "u": u}}
    return data, f"symmetric exchange fails: X={_fmt(X)} Y={_fmt(Y)} u={u}"


def dm_width(args):
    D = _load(parse_set_system_file, args.file)
    w = core.width_summary(D)
    return {"r_min": w.r_min, "r_max": w.r_max, "width": w.width}, (
        f"r_min={w.r_min} r_max={w.r_max} width={w.width}"
    )


def dm_maxwidth(args):
    D = _load(parse_set_system_file, args.file)
    value = core.max_twist_width(D)
    data = {"max_twist_width": value}
    text = str(value)
    if args.brute:
        brute = oracle.max_twist_width_bruteforce(D)
        data.update(bruteforce=brute, agree=brute == value)
        text = f"{value} (bruteforce {brute}, {'agree' if brute == value else 'DISAGREE'})"
    return data, text


def dm_twist(args):
    D = _load(parse_set_system_file, args.file)
    T = core.twist(D, _subset(D.ground_size, args.A))
    if args.output:
        write_set_system(T, args.output)
    return set_system_to_json(T), dumps(set_system_to_json(T)).rstrip("\n")


def dm_hat(args):
    D = _load(parse_set_system_file, args.file)
    hat = core.hat_family(D)
    data = {
        "hat_family": [elements(m) for m in hat],
        "min_member": elements(hat[0]),
        "max_twist_width": core.max_twist_width(D),
    }
    return data, " ".join(_fmt(m) for m in hat)


def dm_monotone(args):
    D = _load(parse_set_system_file, args.file)
    strategy = monotone.CANONICAL
    if args.script:
        strategy = _load(parse_script_file, args.script)
    trace = monotone.monotone_sequence(D, strategy)
    data = trace.to_json(D)
    text = "sequence: {}\nwidths: {}\nmax_twist_width: {}\nfeasible_final: {}".format(
        data["sequence"], data["widths"], data["max_twist_width"], data["feasible_final"]
    )
    return data, text


def dm_profile(args):
    D = _load(parse_set_system_file, args.file)
    seq = parse_labels(args.S)
    widths = monotone.width_profile(D, seq)
    return {"sequence": seq, "widths": widths}, " ".join(map(str, widths))


def dm_exists(args):
    D = _load(parse_set_system_file, args.file)
    w = monotone.exists_monotone_sequence_bruteforce(D)
    if w is None:
        return {"exists": False, "sequence": None}, "no monotone sequence"
    data = {"exists": True, "sequence": list(w.sequence), "widths": list(w.widths),
            "feasible_final": w.feasible_final}
    return data, f"sequence: {list(w.sequence)} widths: {list(w.widths)} feasible_final: {w.feasible_final}"


# rg ------------------------------------------------------------------------


def rg_genus(args):
    G = _load(parse_ribbon_graph_file, args.file)
    data = {
        "vertices": G.num_vertices,
        "edges": G.num_edges,
        "components": ribbon.components(G),
        "faces": G.face_count(G.all_edges),
        "euler_genus": ribbon.euler_genus(G),
    }
    return data, " ".join(f"{k}={v}" for k, v in data.items())


def rg_boundaries(args):
    G = _load(parse_ribbon_graph_file, args.file)
    rep = ribbon.boundary_count(G, _subset(G.num_edges, args.A))
    data = {
        "subset": elements(rep.subset),
        "count": rep.count,
        "walks": [[[h, "+" if d == 0 else "-"] for h, d in walk] for walk in rep.walks],
        "bare_vertices": rep.bare_vertices,
    }
    return data, f"f({_fmt(rep.subset)}) = {rep.count}"


def rg_quasitrees(args):
    G = _load(parse_ribbon_graph_file, args.file)
    qt = ribbon.quasi_trees(G)
    return {"quasi_trees": qt}, " ".join("{" + ",".join(map(str, q)) + "}" for q in qt)


def rg_dm(args):
    G = _load(parse_ribbon_graph_file, args.file)
    D = ribbon.delta_matroid_of(G)
    return set_system_to_json(D), dumps(set_system_to_json(D)).rstrip("\n")


def rg_pdual(args):
    G = _load(parse_ribbon_graph_file, args.file)
    H = ribbon.partial_dual(G, _subset(G.num_edges, args.A))
    if args.output:
        write_ribbon_graph(H, args.output)
    return ribbon_graph_to_json(H), dumps(ribbon_graph_to_json(H)).rstrip("\n")


def rg_pdgenus(args):
    G = _load(parse_ribbon_graph_file, args.file)
    mask = _subset(G.num_edges, args.A)
    value = ribbon.pd_genus_formula(G, mask)
    return {"subset": elements(mask), "pd_genus": value}, str(value)


def rg_maxpdgenus(args):
    G = _load(parse_ribbon_graph_file, args.file)
    value = ribbon.max_pd_genus(G)
    return {"max_pd_genus": value}, str(value)


def rg_deficiency(args):
    G = _load(parse_ribbon_graph_file, args.file)
    value = ribbon.deficiency(G)
    return {"deficiency": value}, str(value)


# verify --------------------------------------------------------------------


def verify_all(args):
    report = oracle.certify_theorems(args.seed, args.trials)
    if args.failures:
        oracle.write_failures(report, Path(args.failures))
    lines = [
        f"{'PASS' if r.passed else 'FAIL'} {name} ({r.checked} checks)" for name, r in report.results.items()
    ]
    return report.to_json(), "\n".join(lines), (0 if report.all_passed else 1)


# parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print machine-readable JSON")

    parser = argparse.ArgumentParser(prog="twistwidth", description=__doc__.splitlines()[0])
    tools = parser.add_subparsers(dest="tool", required=True)

    dm = tools.add_parser("dm", help="set systems and delta-matroids").add_subparsers(dest="action", required=True)
    for name, func, helptext in [
        ("check", dm_check, "symmetric exchange verdict"),
        ("width", dm_width, "minimum/maximum feasible size and width"),
        ("maxwidth", dm_maxwidth, "maximum twist width"),
        ("twist", dm_twist, "twist by a subset"),
        ("hat", dm_hat, "feasible sets whose twist reaches the maximum width"),
        ("monotone", dm_monotone, "monotone width sequence"),
        ("profile", dm_profile, "width after each prefix twist"),
        ("exists", dm_exists, "brute-force search for a monotone sequence"),
    ]:
        p = dm.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.set_defaults(func=func)
        if name == "maxwidth":
            p.add_argument("--brute", action="store_true", help="also run the 2^n brute force")
        if name == "twist":
            p.add_argument("-A", required=True, help="comma-separated 1-based elements")
            p.add_argument("-o", "--output")
        if name == "monotone":
            p.add_argument("--script", help="JSON file of scripted choices")
        if name == "profile":
            p.add_argument("-S", required=True, help="comma-separated element sequence")

    rg = tools.add_parser("rg", help="ribbon graphs").add_subparsers(dest="action", required=True)
    for name, func, helptext in [
        ("genus", rg_genus, "Euler genus"),
        ("boundaries", rg_boundaries, "boundary components of a spanning subgraph"),
        ("quasitrees", rg_quasitrees, "spanning quasi-trees"),
        ("dm", rg_dm, "delta-matroid of spanning quasi-trees"),
        ("pdual", rg_pdual, "partial dual"),
        ("pdgenus", rg_pdgenus, "Euler genus of a partial dual from boundary counts"),
        ("maxpdgenus", rg_maxpdgenus, "maximum partial-dual Euler genus"),
        ("deficiency", rg_deficiency, "partial-duality deficiency"),
    ]:
        p = rg.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.set_defaults(func=func)
        if name in ("boundaries", "pdual", "pdgenus"):
            p.add_argument("-A", required=True, help="comma-separated 1-based edge labels")
        if name == "pdual":
            p.add_argument("-o", "--output")

    ver = tools.add_parser("verify", help="cross-check battery").add_subparsers(dest="action", required=True)
    p = ver.add_parser("all", parents=[common], help="run every property on seeded instances")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--failures", help="directory for failing instances")
    p.set_defaults(func=verify_all)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return 2
    except TwistWidthError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    data, text = result[0], result[1]
    code = result[2] if len(result) > 2 else 0
    print(json.dumps(data) if args.json else text)
    return code


if __name__ == "__main__":
    sys.exit(main())
