"""Cayley graphs, the word metric, balls, spheres and theta-boundaries.

Every walk moves along edges m -> m . s for generators s, so everything here
is breadth-first search over that edge relation.  Generating sets are assumed
symmetric, which makes the metric symmetric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .cellspace import CellSpace, GeneratingSet, Point
from .errors import BallTooLargeError

DEFAULT_BALL_CAP = 5_000_000
DEFAULT_DISTANCE_CAP = 64


@dataclass(frozen=True)
class Unreachable:
    """No path of length <= cap was found.  Distinct from infinity."""

    cap: int

    def __str__(self):
        return f"unreachable-within-{self.cap}"


def _step(space: CellSpace, gens: GeneratingSet):
    act = space.right_semi_action
    cosets = gens.cosets

    def neighbours(m):
        return [(s, act(m, s)) for s in cosets]

    return neighbours


def iter_spheres(space: CellSpace, gens: GeneratingSet, center: Point, dist=None, parent=None, cap: int = DEFAULT_BALL_CAP):
    """Yield (r, sphere) for r = 0, 1, ... until the space is exhausted.

    `dist` and `parent`, when given, are filled in as points are discovered.
    """
    neighbours = _step(space, gens)
    dist = {} if dist is None else dist
    parent = {} if parent is None else parent
    dist[center] = 0
    frontier = [center]
    r = 0
    while frontier:
        yield r, frontier
        r += 1
        nxt = []
        for m in frontier:
            for s, x in neighbours(m):
                if x not in dist:
                    dist[x] = r
                    parent[x] = (m, s)
                    nxt.append(x)
        if len(dist) > cap:
            raise BallTooLargeError(f"ball of radius {r} has {len(dist)} points (cap {cap})")
        frontier = nxt


@dataclass
class BallIndex:
    center: Point
    radius: int
    layers: list  # layers[r] is the sphere of radius r
    dist: dict = field(repr=False)
    parent: dict = field(repr=False)

    def __contains__(self, m):
        return m in self.dist

    def __len__(self):
        return len(self.dist)

    def sphere(self, r: int) -> list:
        return list(self.layers[r]) if r < len(self.layers) else []

    def ball(self, r: int | None = None) -> list:
        r = self.radius if r is None else r
        out = []
        for layer in self.layers[: r + 1]:
            out.extend(layer)
        return out

    def sizes(self) -> list[int]:
        """Cumulative ball sizes |B(0)|, ..., |B(radius)|."""
        total, out = 0, []
        for layer in self.layers:
            total += len(layer)
            out.append(total)
        out.extend([total] * (self.radius + 1 - len(out)))
        return out

    def geodesic(self, m) -> list:
        """Generators of a shortest walk from the center to m."""
        word = []
        while m != self.center:
            m, s = self.parent[m]
            word.append(s)
        word.reverse()
        return word


def build_ball(
    space: CellSpace,
    gens: GeneratingSet,
    center: Point,
    radius: int,
    cap: int = DEFAULT_BALL_CAP,
    sort: bool = True,
) -> BallIndex:
    """Breadth-first layers of the ball of `radius` around `center`.

    The first discovery of a point fixes its parent; points are discovered in
    frontier order, trying generators in generating-set order.  With
    ``sort=False`` layers keep discovery order (still deterministic).
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    dist: dict = {}
    parent: dict = {}
    layers = []
    for r, layer in iter_spheres(space, gens, center, dist, parent, cap):
        layers.append(layer)
        if r == radius:
            break
    if sort:
        layers = [space.sort(layer) for layer in layers]
    return BallIndex(center, radius, layers, dist, parent)


def distance(space: CellSpace, gens: GeneratingSet, m: Point, other: Point, cap: int = DEFAULT_DISTANCE_CAP):
    """Word distance from m to other, or Unreachable(cap).

    Searches from both ends at once, growing the smaller frontier by one full
    layer at a time; both visited sets stay complete up to their current
    levels, so the minimum over their intersection is the exact distance.
    """
    if m == other:
        return 0
    neighbours = _step(space, gens)
    seen = [{m: 0}, {other: 0}]
    frontiers = [[m], [other]]
    levels = [0, 0]
    while levels[0] + levels[1] < cap:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, theirs = seen[side], seen[1 - side]
        levels[side] += 1
        nxt = []
        met = False
        for x in frontiers[side]:
            for _, y in neighbours(x):
                if y not in mine:
                    mine[y] = levels[side]
                    nxt.append(y)
                    if y in theirs:
                        met = True
        if met:
            small, large = sorted(seen, key=len)
            return min(d + large[p] for p, d in small.items() if p in large)
        if not nxt:
            break
        frontiers[side] = nxt
    return Unreachable(cap)


def length(space: CellSpace, gens: GeneratingSet, m: Point, cap: int = DEFAULT_DISTANCE_CAP):
    return distance(space, gens, space.origin, m, cap)


def set_distance(space: CellSpace, gens: GeneratingSet, a: Iterable[Point], b: Iterable[Point], cap: int = DEFAULT_DISTANCE_CAP):
    """min distance over pairs; math.inf if either set is empty, Unreachable(cap) past the cap."""
    a, b = set(a), set(b)
    if not a or not b:
        return math.inf
    if a & b:
        return 0
    neighbours = _step(space, gens)
    seen = set(a)
    frontier = list(a)
    for r in range(1, cap + 1):
        nxt = []
        for x in frontier:
            for _, y in neighbours(x):
                if y not in seen:
                    if y in b:
                        return r
                    seen.add(y)
                    nxt.append(y)
        if not nxt:
            break
        frontier = nxt
    return Unreachable(cap)


def closure(space: CellSpace, gens: GeneratingSet, a: Iterable[Point], theta: int, cap: int = DEFAULT_BALL_CAP) -> list:
    """theta-closure: all points within distance theta of the set."""
    neighbours = _step(space, gens)
    seen = set(a)
    frontier = list(seen)
    for _ in range(theta):
        nxt = []
        for x in frontier:
            for _, y in neighbours(x):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > cap:
            raise BallTooLargeError(f"closure exceeds {cap} points")
        frontier = nxt
    return space.sort(seen)


def interior(space: CellSpace, gens: GeneratingSet, a: Iterable[Point], theta: int) -> list:
    """theta-interior: points of the set whose theta-ball stays inside it.

    A point leaves the interior iff it lies within theta of the complement;
    a shortest walk to the complement first exits through the outer rim, so
    a search from the rim restricted to the set finds exactly those points.
    """
    members = set(a)
    if theta == 0 or not members:
        return space.sort(members)
    neighbours = _step(space, gens)
    rim = {y for x in members for _, y in neighbours(x) if y not in members}
    reached = set()
    frontier = list(rim)
    for _ in range(theta):
        nxt = []
        for x in frontier:
            for _, y in neighbours(x):
                if y in members and y not in reached:
                    reached.add(y)
                    nxt.append(y)
        frontier = nxt
    return space.sort(members - reached)


class Boundaries(NamedTuple):
    boundary: list
    internal: list
    external: list


def boundaries(space: CellSpace, gens: GeneratingSet, a: Iterable[Point], theta: int) -> Boundaries:
    members = set(a)
    inner = set(interior(space, gens, members, theta))
    outer = set(closure(space, gens, members, theta))
    return Boundaries(
        space.sort(outer - inner),
        space.sort(members - inner),
        space.sort(outer - members),
    )


@dataclass
class CayleyGraph:
    vertices: list
    edges: list  # (source, label, target)

    def out_degree(self, v) -> int:
        return sum(1 for e in self.edges if e[0] == v)


def cayley_subgraph(space: CellSpace, gens: GeneratingSet, vertices: Iterable[Point]) -> CayleyGraph:
    """Subgraph of the Cayley graph induced by `vertices`."""
    vs = space.sort(vertices)
    members = set(vs)
    edges = []
    for m in vs:
        for s in gens:
            t = space.right_semi_action(m, s)
            if t in members:
                edges.append((m, s, t))
    return CayleyGraph(vs, edges)


def graph_to_dot(space: CellSpace, graph: CayleyGraph, name: str = "cayley") -> str:
    fmt = space.group.format
    lines = [f"digraph {name} {{"]
    for v in graph.vertices:
        lines.append(f'  "{fmt(v)}";')
    for src, label, dst in graph.edges:
        lines.append(f'  "{fmt(src)}" -> "{fmt(dst)}" [label="{fmt(label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_csv_rows(space: CellSpace, graph: CayleyGraph) -> list[list[str]]:
    fmt = space.group.format
    return [["source", "label", "target"]] + [[fmt(a), fmt(s), fmt(b)] for a, s, b in graph.edges]


def ball_to_csv_rows(space: CellSpace, ball: BallIndex) -> list[list[str]]:
    fmt = space.group.format
    rows = [["rep", "distance"]]
    for r, layer in enumerate(ball.layers):
        rows.extend([fmt(m), str(r)] for m in layer)
    return rows
