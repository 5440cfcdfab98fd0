"""File formats shared across the toolkit.

Point sets travel as plain text (first line n, then one "x y" per line,
signed decimal integers, labels are line order).  Graphs travel as JSON
records: {"schema", "kind", "n", "edges"} plus "stacks" for stacked-history
graphs or "faces" for face-carrying ones.  Everything round-trips exactly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .geom import LabelledPointSet
from .triangulations import FacedTriangulation, StackedTriangulation

GRAPH_SCHEMA = "planarconflict.graph/1"

Graph = Union[FacedTriangulation, StackedTriangulation]


def dump_point_set(P: LabelledPointSet) -> str:
    lines = [str(P.n)]
    lines.extend(f"{p.x} {p.y}" for p in P.points)
    return "\n".join(lines) + "\n"


def parse_point_set(text: str) -> LabelledPointSet:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty point-set file")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the point count, got {lines[0]!r}")
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} coordinate lines, found {len(lines) - 1}")
    points = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad coordinate line {ln!r}")
        points.append((int(parts[0]), int(parts[1])))
    return LabelledPointSet(points)


def write_point_set(path, P: LabelledPointSet) -> None:
    Path(path).write_text(dump_point_set(P), encoding="utf-8")


def read_point_set(path) -> LabelledPointSet:
    return parse_point_set(Path(path).read_text(encoding="utf-8"))


def graph_record(G: Graph) -> dict:
    """JSON-ready record for either triangulation representation."""
    if isinstance(G, StackedTriangulation):
        return {
            "schema": GRAPH_SCHEMA,
            "kind": "stacked",
            "n": G.n,
            "edges": sorted(list(e) for e in G.edge_set()),
            "stacks": [{"vertex": v, "face": list(face)} for v, face in G.stacks],
        }
    if isinstance(G, FacedTriangulation):
        return {
            "schema": GRAPH_SCHEMA,
            "kind": "faced",
            "n": G.n,
            "edges": sorted(list(e) for e in G.edges),
            "faces": [list(f) for f in G.faces],
        }
    raise TypeError(f"not a triangulation: {G!r}")


def graph_from_record(record: dict) -> Graph:
    kind = record.get("kind")
    n = record["n"]
    if kind == "stacked":
        stacks = tuple(
            (entry["vertex"], tuple(entry["face"])) for entry in record["stacks"]
        )
        G = StackedTriangulation(n, stacks)
        edges = frozenset(tuple(e) for e in record["edges"])
        if edges != G.edge_set():
            raise ValueError("edge list inconsistent with stacking history")
        return G
    if kind == "faced":
        G = FacedTriangulation(
            n,
            frozenset(tuple(e) for e in record["edges"]),
            tuple(tuple(f) for f in record["faces"]),
        )
        G.validate()
        return G
    raise ValueError(f"unknown graph record kind {kind!r}")


def dump_graph(G: Graph) -> str:
    return json.dumps(graph_record(G), sort_keys=True)


def parse_graph(text: str) -> Graph:
    return graph_from_record(json.loads(text))


def write_graph(path, G: Graph) -> None:
    Path(path).write_text(dump_graph(G) + "\n", encoding="utf-8")


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph_stream(path, graphs) -> int:
    """One JSON record per line; returns how many were written."""
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for G in graphs:
            fh.write(dump_graph(G) + "\n")
            count += 1
    return count


def read_graph_stream(path):
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield parse_graph(line)


def svg_drawing(G: Graph, P: LabelledPointSet, placement) -> str:
    """Minimal SVG of a witness placement: one line per edge, one dot per point."""
    from .embedding import graph_data

    n, edges = graph_data(G)
    placement = tuple(placement)
    xs = [p.x for p in P.points]
    ys = [p.y for p in P.points]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1)
    margin = span / 20
    x0, y0 = min(xs) - margin, min(ys) - margin
    size = span + 2 * margin
    r = span / 100 or 1

    def sx(x):
        return float(x - x0)

    def sy(y):
        # SVG's y axis points down; flip so the drawing matches the plane.
        return float(y0 + size - y)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}">'
    ]
    for u, v in sorted(edges):
        a = P.point(placement[u - 1])
        b = P.point(placement[v - 1])
        parts.append(
            f'<line x1="{sx(a.x)}" y1="{sy(a.y)}" x2="{sx(b.x)}" y2="{sy(b.y)}" '
            f'stroke="black" stroke-width="{r / 2}"/>'
        )
    for label in range(1, n + 1):
        p = P.point(placement[label - 1])
        parts.append(f'<circle cx="{sx(p.x)}" cy="{sy(p.y)}" r="{r}" fill="crimson"/>')
    parts.append("</svg>")
    return "\n".join(parts)
