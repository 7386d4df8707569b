"""JSON file formats for set systems, ribbon graphs and choice scripts.

Set system: ``{"ground": n, "feasible": [[1, 2], ...]}`` with 1-based
elements. Ribbon graph: ``{"edges": [{"twisted": false}, ...],
"vertices": [[0, 2, 1, 3], ...]}`` with 0-based half-edge ids, edge ``i``
owning half-edges ``2i`` and ``2i + 1``. Serializers emit canonical order
on a single line followed by a newline.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .core import SetSystem, elements, make_set_system
from .errors import ParseError
from .monotone import ChoiceStrategy
from .ribbon import RibbonGraph

PathLike = Union[str, Path]


def _load(path: PathLike) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def set_system_from_json(data: Any, where: str = "<data>") -> SetSystem:
    if not isinstance(data, dict):
        raise ParseError(f"{where}: expected a JSON object")
    n = data.get("ground")
    fam = data.get("feasible")
    if not _is_int(n) or n < 0:
        raise ParseError(f"{where}: field 'ground' must be a non-negative integer")
    if not isinstance(fam, list):
        raise ParseError(f"{where}: field 'feasible' must be a list of lists")
    for i, s in enumerate(fam):
        if not isinstance(s, list) or not all(_is_int(e) for e in s):
            raise ParseError(f"{where}: feasible[{i}] must be a list of integers")
    return make_set_system(n, fam)


def set_system_to_json(D: SetSystem) -> dict:
    return {"ground": D.ground_size, "feasible": [elements(m) for m in D.family]}


def ribbon_graph_from_json(data: Any, where: str = "<data>") -> RibbonGraph:
    if not isinstance(data, dict):
        raise ParseError(f"{where}: expected a JSON object")
    edges = data.get("edges")
    verts = data.get("vertices")
    if not isinstance(edges, list):
        raise ParseError(f"{where}: field 'edges' must be a list")
    twisted = []
    for i, e in enumerate(edges):
        if not isinstance(e, dict) or not isinstance(e.get("twisted", False), bool):
            raise ParseError(f"{where}: edges[{i}] must be an object with a boolean 'twisted'")
        twisted.append(e.get("twisted", False))
    if not isinstance(verts, list):
        raise ParseError(f"{where}: field 'vertices' must be a list of lists")
    for i, r in enumerate(verts):
        if not isinstance(r, list) or not all(_is_int(h) for h in r):
            raise ParseError(f"{where}: vertices[{i}] must be a list of half-edge integers")
    return RibbonGraph(tuple(twisted), tuple(tuple(r) for r in verts))


def ribbon_graph_to_json(G: RibbonGraph) -> dict:
    return {
        "edges": [{"twisted": t} for t in G.twisted],
        "vertices": [list(r) for r in G.vertices],
    }


def dumps(data: dict) -> str:
    return json.dumps(data) + "\n"


def parse_set_system_file(path: PathLike) -> SetSystem:
    return set_system_from_json(_load(path), str(path))


def parse_ribbon_graph_file(path: PathLike) -> RibbonGraph:
    return ribbon_graph_from_json(_load(path), str(path))


def write_set_system(D: SetSystem, path: PathLike) -> None:
    Path(path).write_text(dumps(set_system_to_json(D)), encoding="utf-8")


def write_ribbon_graph(G: RibbonGraph, path: PathLike) -> None:
    Path(path).write_text(dumps(ribbon_graph_to_json(G)), encoding="utf-8")


def parse_script_file(path: PathLike) -> ChoiceStrategy:
    """Scripted choices: ``{"init": [1, 2], "steps": [{"X": [2, 3], "x": 1}, ...]}``."""
    data = _load(path)
    if not isinstance(data, dict) or not isinstance(data.get("steps"), list):
        raise ParseError(f"{path}: expected an object with a 'steps' list")
    steps = []
    for i, st in enumerate(data["steps"]):
        if (
            not isinstance(st, dict)
            or not isinstance(st.get("X"), list)
            or not all(_is_int(e) for e in st["X"])
            or not _is_int(st.get("x"))
        ):
            raise ParseError(f"{path}: steps[{i}] must look like {{\"X\": [ints], \"x\": int}}")
        steps.append((st["X"], st["x"]))
    init = data.get("init")
    if init is not None and (not isinstance(init, list) or not all(_is_int(e) for e in init)):
        raise ParseError(f"{path}: field 'init' must be a list of integers")
    return ChoiceStrategy.scripted(steps, init)
