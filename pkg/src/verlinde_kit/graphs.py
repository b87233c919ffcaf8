"""Graded quivers and the builtin ADE graph fixtures.

A quiver document declares an algebra, a level, vertices carrying center
grades, and directed edges carrying a fundamental-weight grade.  The
adjacency matrix of fundamental j has entry (a, b) equal to the total
multiplicity of edges b -> a graded j, so matrices act on column vectors
indexed by vertices.
"""

from __future__ import annotations

import jsonschema

from .errors import GradeMismatch, SchemaError
from .fusion import FusionRing
from .lie import build_algebra

QUIVER_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "verlinde-kit/quiver/1",
    "type": "object",
    "required": ["algebra", "level", "vertices", "edges"],
    "additionalProperties": False,
    "properties": {
        "algebra": {
            "type": "object",
            "required": ["family", "rank"],
            "additionalProperties": False,
            "properties": {
                "family": {"type": "string", "enum": list("ABCDEFG")},
                "rank": {"type": "integer", "minimum": 1},
            },
        },
        "level": {"type": "integer", "minimum": 0},
        "vertices": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["id", "grade"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "grade": {"type": "array", "items": {"type": "integer"}},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "to", "grade_fundamental", "multiplicity"],
                "additionalProperties": False,
                "properties": {
                    "from": {"type": "string"},
                    "to": {"type": "string"},
                    "grade_fundamental": {"type": "integer", "minimum": 1},
                    "multiplicity": {"type": "integer", "minimum": 1},
                },
            },
        },
    },
}


class GradedQuiver:
    """Validated in-memory quiver with adjacency matrix accessors."""

    def __init__(self, doc: dict):
        try:
            jsonschema.validate(doc, QUIVER_SCHEMA)
        except jsonschema.ValidationError as exc:
            raise SchemaError(f"quiver document invalid: {exc.message}") from exc
        self.family = doc["algebra"]["family"]
        self.rank = doc["algebra"]["rank"]
        self.level = doc["level"]
        algebra = build_algebra(self.family, self.rank)
        self.ids = tuple(v["id"] for v in doc["vertices"])
        if len(set(self.ids)) != len(self.ids):
            raise SchemaError("duplicate vertex ids")
        index = {vid: i for i, vid in enumerate(self.ids)}
        orders = algebra.center.cyclic_orders
        grades = []
        for v in doc["vertices"]:
            if len(v["grade"]) != len(orders):
                raise SchemaError(
                    f"vertex {v['id']}: grade length {len(v['grade'])}, "
                    f"center has {len(orders)} cyclic factors"
                )
            grades.append(tuple(g % d for g, d in zip(v["grade"], orders)))
        self.grades = tuple(grades)
        edges = []
        center = algebra.center
        for e in doc["edges"]:
            if e["from"] not in index or e["to"] not in index:
                raise SchemaError(f"edge endpoint missing: {e['from']} -> {e['to']}")
            j = e["grade_fundamental"]
            if j > self.rank:
                raise SchemaError(f"grade_fundamental {j} exceeds rank {self.rank}")
            src, dst = index[e["from"]], index[e["to"]]
            fund_class = center.to_coords(algebra.fundamental_weight(j))
            if center.add(self.grades[src], fund_class) != self.grades[dst]:
                raise GradeMismatch(
                    f"edge {e['from']} -> {e['to']}: source grade plus the "
                    f"fundamental class does not give the target grade"
                )
            edges.append((src, dst, j, e["multiplicity"]))
        self.edges = tuple(edges)

    @property
    def size(self) -> int:
        return len(self.ids)

    def delta(self, fund_j: int) -> list:
        """Adjacency of fundamental j: entry [a][b] sums edges b -> a."""
        out = [[0] * self.size for _ in range(self.size)]
        for src, dst, j, mult in self.edges:
            if j == fund_j:
                out[dst][src] += mult
        return out

    def connected(self) -> bool:
        if self.size == 1:
            return True
        adj = {i: set() for i in range(self.size)}
        for src, dst, _j, _m in self.edges:
            adj[src].add(dst)
            adj[dst].add(src)
        seen = {0}
        stack = [0]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == self.size


_ADE_COXETER = {"A": lambda m: m + 1, "D": lambda m: 2 * m - 2, "E": {6: 12, 7: 18, 8: 30}}


def _ade_edges(family: str, m: int) -> list:
    if family == "A" and m >= 1:
        return [(i, i + 1) for i in range(m - 1)]
    if family == "D" and m >= 4:
        return [(i, i + 1) for i in range(m - 2)] + [(m - 3, m - 1)]
    if family == "E" and m in (6, 7, 8):
        return [(0, 2)] + [(i, i + 1) for i in range(2, m - 1)] + [(1, 3)]
    raise SchemaError(f"{family}{m} is not an ADE graph")


def ade_graph(name: str, level: int | None = None) -> dict:
    """Builtin ADE graph as a quiver document over sl2.

    The default level makes the graph's Coxeter number equal n_c = 2 + l;
    pass an explicit level to build deliberately mismatched fixtures.
    """
    family, m = name[0].upper(), int(name[1:])
    edges = _ade_edges(family, m)
    cox = _ADE_COXETER[family][m] if family == "E" else _ADE_COXETER[family](m)
    if level is None:
        level = cox - 2
    # bipartite 2-coloring by BFS over the tree
    color = {0: 0}
    frontier = [0]
    adjacency = {i: [] for i in range(m)}
    for a, b in edges:
        adjacency[a].append(b)
        adjacency[b].append(a)
    while frontier:
        v = frontier.pop()
        for w in adjacency[v]:
            if w not in color:
                color[w] = 1 - color[v]
                frontier.append(w)
    vertices = [{"id": f"v{i}", "grade": [color[i]]} for i in range(m)]
    out_edges = []
    for a, b in edges:
        for src, dst in ((a, b), (b, a)):
            out_edges.append(
                {
                    "from": f"v{src}",
                    "to": f"v{dst}",
                    "grade_fundamental": 1,
                    "multiplicity": 1,
                }
            )
    return {
        "algebra": {"family": "A", "rank": 1},
        "level": level,
        "vertices": vertices,
        "edges": out_edges,
    }


def ring_quiver(ring: FusionRing) -> dict:
    """Quiver of the ring acting on itself (its type-A diagram).

    Vertices are the alcove labels with the ring grading; edges record the
    fusion rows of each in-alcove shifted fundamental weight.
    """
    level = ring.level
    algebra = level.algebra
    labels = ring.basis
    ids = {k: "w" + "_".join(str(x) for x in k) for k in labels}
    vertices = [
        {"id": ids[k], "grade": [int(g) for g in ring.grades[k]]} for k in labels
    ]
    edges = []
    rho = algebra.weyl_vector
    for j in range(1, algebra.rank + 1):
        gen = tuple(a + b for a, b in zip(algebra.fundamental_weight(j), rho))
        if gen not in level.alcove_index:
            continue
        for b in labels:
            for a, mult in ring.multiply(gen, b).items():
                edges.append(
                    {
                        "from": ids[b],
                        "to": ids[a],
                        "grade_fundamental": j,
                        "multiplicity": mult,
                    }
                )
    return {
        "algebra": {"family": algebra.family, "rank": algebra.rank},
        "level": level.level,
        "vertices": vertices,
        "edges": edges,
    }
