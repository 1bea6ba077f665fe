"""Ordering the blocks of a design so each point fills every column equally.

The point-block incidence graph is made k-regular by splitting each point
into r/k copies, each taking k of its blocks. A proper k-edge-coloring of
that graph then tells every block which position each of its points takes.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .designs import Design

__all__ = [
    "DivisibilityError",
    "IncidenceGraph",
    "EncodingMatrix",
    "OrderingReport",
    "split_points",
    "perfect_matching",
    "edge_color",
    "order_blocks",
    "validate_ordering",
    "matrix_to_json",
    "matrix_from_json",
    "matrix_to_csv",
    "matrix_from_csv",
    "write_matrix",
    "read_matrix",
]


class DivisibilityError(ValueError):
    """k does not divide r, i.e. v does not divide b."""


@dataclass(frozen=True)
class IncidenceGraph:
    """Bipartite graph between point copies (left) and blocks (right).

    ``left[i]`` is the ``(point, copy)`` pair of left vertex i and
    ``adj[i]`` lists the block indices joined to it, in increasing order.
    """

    k: int
    left: tuple[tuple[int, int], ...]
    adj: tuple[tuple[int, ...], ...]
    n_right: int

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, B) for i, nbrs in enumerate(self.adj) for B in nbrs]

    def is_regular(self) -> bool:
        right = Counter(B for nbrs in self.adj for B in nbrs)
        return (
            len(self.adj) == self.n_right
            and all(len(n) == self.k for n in self.adj)
            and all(right[B] == self.k for B in range(self.n_right))
        )


@dataclass(frozen=True)
class EncodingMatrix:
    """Rows are encoding rules, columns source states, entries messages.

    ``messages`` is the full message set; by default the distinct entries.
    """

    rows: tuple[tuple[int, ...], ...]
    messages: tuple[int, ...] = field(default=())

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        if not rows or len({len(r) for r in rows}) != 1 or not rows[0]:
            raise ValueError("encoding matrix needs at least one row and equal-length rows")
        object.__setattr__(self, "rows", rows)
        used = {x for row in rows for x in row}
        msgs = tuple(sorted(set(self.messages) | used)) if self.messages else tuple(sorted(used))
        object.__setattr__(self, "messages", msgs)

    @property
    def b(self) -> int:
        return len(self.rows)

    @property
    def k(self) -> int:
        return len(self.rows[0])

    @property
    def v(self) -> int:
        return len(self.messages)

    def column(self, s: int) -> tuple[int, ...]:
        return tuple(row[s] for row in self.rows)

    def relabel(self, mapping) -> EncodingMatrix:
        """Apply ``mapping`` (a dict or callable) to every message."""
        f = mapping.__getitem__ if isinstance(mapping, dict) else mapping
        return EncodingMatrix(
            tuple(tuple(f(x) for x in row) for row in self.rows),
            tuple(f(x) for x in self.messages),
        )


def split_points(d: Design) -> IncidenceGraph:
    """Split each point into r/k copies of degree k (canonical chunking)."""
    incident: list[list[int]] = [[] for _ in range(d.v)]
    for j, B in enumerate(d.blocks):
        for x in B:
            incident[x].append(j)
    degrees = {len(blocks) for blocks in incident}
    if len(degrees) != 1:
        raise ValueError("points have unequal replication numbers; not a design")
    r = degrees.pop()
    if r % d.k:
        raise DivisibilityError(
            f"k={d.k} does not divide r={r}: the construction needs v to divide b "
            f"(v={d.v}, b={d.b})"
        )
    left, adj = [], []
    for x, blocks in enumerate(incident):
        for c in range(r // d.k):
            left.append((x, c))
            adj.append(tuple(blocks[c * d.k : (c + 1) * d.k]))
    return IncidenceGraph(d.k, tuple(left), tuple(adj), d.b)


def perfect_matching(adj: Sequence[Sequence[int]], n_right: int) -> list[int]:
    """Perfect matching of a bipartite graph by augmenting paths.

    Left vertices are processed in index order and neighbours scanned in the
    given order, so the result is deterministic. Returns ``match[left] = right``.
    """
    match_right = [-1] * n_right
    for root in range(len(adj)):
        # iterative DFS for an augmenting path from root
        visited = [False] * n_right
        stack = [(root, iter(adj[root]))]
        path: list[tuple[int, int]] = []
        found = False
        while stack and not found:
            u, it = stack[-1]
            for w in it:
                if visited[w]:
                    continue
                visited[w] = True
                path.append((u, w))
                if match_right[w] < 0:
                    found = True
                else:
                    nxt = match_right[w]
                    stack.append((nxt, iter(adj[nxt])))
                break
            else:
                stack.pop()
                if path:
                    path.pop()
        if not found:
            raise RuntimeError(f"no perfect matching: left vertex {root} cannot be matched")
        for u, w in path:
            match_right[w] = u
    match_left = [-1] * len(adj)
    for w, u in enumerate(match_right):
        if u >= 0:
            match_left[u] = w
    return match_left


def edge_color(g: IncidenceGraph) -> dict[tuple[int, int], int]:
    """Proper k-edge-coloring as k successive perfect matchings.

    Removing a perfect matching from a regular bipartite graph leaves a
    regular graph of one degree less, so a matching always exists (Hall).
    """
    if not g.is_regular():
        raise ValueError("edge_color needs a k-regular bipartite graph")
    remaining = [list(nbrs) for nbrs in g.adj]
    colors = {}
    for c in range(g.k):
        match = perfect_matching(remaining, g.n_right)
        for u, w in enumerate(match):
            colors[(u, w)] = c
            remaining[u].remove(w)
    return colors


def order_blocks(d: Design) -> EncodingMatrix:
    """Encoding matrix whose row j is block j ordered by edge color."""
    g = split_points(d)
    colors = edge_color(g)
    rows = [[-1] * d.k for _ in range(d.b)]
    for (u, j), c in colors.items():
        rows[j][c] = g.left[u][0]
    return EncodingMatrix(tuple(map(tuple, rows)), tuple(range(d.v)))


@dataclass
class OrderingReport:
    ok: bool
    violations: list[str]

    def __bool__(self):
        return self.ok


def validate_ordering(d: Design, m: EncodingMatrix) -> OrderingReport:
    """Rows must be the blocks, and every point must appear b/v times per column."""
    problems = []
    if m.k != d.k or m.b != d.b:
        problems.append(f"shape {m.b}x{m.k} does not match b={d.b}, k={d.k}")
        return OrderingReport(False, problems)
    row_sets = Counter(tuple(sorted(row)) for row in m.rows)
    if row_sets != Counter(d.blocks):
        missing = sorted((Counter(d.blocks) - row_sets).elements())
        extra = sorted((row_sets - Counter(d.blocks)).elements())
        problems.append(f"row sets differ from blocks: missing {missing}, unexpected {extra}")
    if (d.b % d.v) != 0:
        problems.append(f"v={d.v} does not divide b={d.b}")
    else:
        per = d.b // d.v
        for s in range(m.k):
            counts = Counter(m.column(s))
            for x in range(d.v):
                if counts[x] != per:
                    problems.append(f"point {x} appears {counts[x]} times in column {s}, expected {per}")
    return OrderingReport(not problems, problems)


# -- files --------------------------------------------------------------------


def matrix_to_json(m: EncodingMatrix) -> dict:
    return {"k": m.k, "v": m.v, "messages": list(m.messages), "rows": [list(r) for r in m.rows]}


def matrix_from_json(obj: dict) -> EncodingMatrix:
    if not isinstance(obj, dict) or "rows" not in obj:
        raise ValueError("matrix JSON needs a 'rows' list")
    rows = obj["rows"]
    if not isinstance(rows, list) or not all(
        isinstance(r, list) and all(type(x) is int for x in r) for r in rows
    ):
        raise ValueError("'rows' must be a list of integer lists")
    m = EncodingMatrix(tuple(map(tuple, rows)), tuple(obj.get("messages", ())))
    if "k" in obj and obj["k"] != m.k:
        raise ValueError(f"declared k={obj['k']} but rows have length {m.k}")
    if "v" in obj and obj["v"] != m.v:
        raise ValueError(f"declared v={obj['v']} but {m.v} messages are present")
    return m


def matrix_to_csv(m: EncodingMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"s{i + 1}" for i in range(m.k)])
    w.writerows(m.rows)
    return buf.getvalue()


def matrix_from_csv(text: str) -> EncodingMatrix:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if not header or header != [f"s{i + 1}" for i in range(len(header))]:
        raise ValueError("CSV header must be s1,...,sk")
    rows = [tuple(int(x) for x in row) for row in reader if row]
    return EncodingMatrix(tuple(rows))


def write_matrix(m: EncodingMatrix, path: str | Path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        path.write_text(matrix_to_csv(m), encoding="utf-8")
    else:
        path.write_text(json.dumps(matrix_to_json(m)) + "\n", encoding="utf-8")


def read_matrix(path: str | Path) -> EncodingMatrix:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".csv":
        return matrix_from_csv(text)
    return matrix_from_json(json.loads(text))
