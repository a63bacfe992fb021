"""Cell spaces: a group acting on its left cosets G/G0 with a coordinate system.

Points of M are identified with cosets gG0 and stored as a single
representative of the coset, chosen by a deterministic rule (by default the
order-minimal element).  The left action is left multiplication; the right
semi-action of G/G0 on M is  m . gG0 = rep(m) g G0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .groups import Element, Group, GroupSpec, Subgroup, enumerate_subgroup

Point = Element

POINT_PREFIX = "coset:"


class CellSpace:
    def __init__(self, group: Group, stabiliser: Subgroup, rep_key: Callable | None = None):
        if stabiliser.group != group:
            raise ValueError("stabiliser belongs to a different group")
        self.group = group
        self.stabiliser = stabiliser
        self.rep_key = rep_key or group.key
        self._g0 = stabiliser.elements
        self._trivial = stabiliser.trivial
        self.origin = self.coset_of(group.identity())

    def __repr__(self):
        return f"CellSpace({self.group!r}, |G0|={len(self.stabiliser)})"

    def coset_of(self, g: Element) -> Point:
        if self._trivial:
            return g
        mul = self.group.multiply
        return min((mul(g, h) for h in self._g0), key=self.rep_key)

    def coset_elements(self, m: Point) -> list[Element]:
        """All |G0| group elements of the coset m."""
        mul = self.group.multiply
        return [mul(m, h) for h in self._g0]

    def left_action(self, g: Element, m: Point) -> Point:
        return self.coset_of(self.group.multiply(g, m))

    def right_semi_action(self, m: Point, coset: Point) -> Point:
        return self.coset_of(self.group.multiply(m, coset))

    def coset_inverse(self, coset: Point) -> list[Point]:
        """{g^-1 G0 : g in coset}, sorted."""
        g = self.group
        return self.sort({self.coset_of(g.invert(x)) for x in self.coset_elements(coset)})

    def sort(self, points: Iterable[Point]) -> list[Point]:
        return sorted(set(points), key=self.group.key)

    def random_point(self, rng: random.Random, radius: int) -> Point:
        return self.coset_of(self.group.random_word(rng, rng.randint(0, radius)))

    def format_point(self, m: Point) -> str:
        return POINT_PREFIX + self.group.format(m)

    def parse_point(self, text: str) -> Point:
        text = text.strip()
        if text.startswith(POINT_PREFIX):
            text = text[len(POINT_PREFIX):]
        return self.coset_of(self.group.parse(text))


def make_cell_space(
    group: Group | GroupSpec,
    stabiliser_generators: Iterable[Element] = (),
    cap: int = 10_000,
    rep_key: Callable | None = None,
) -> CellSpace:
    if isinstance(group, GroupSpec):
        group = group.build()
    stabiliser = enumerate_subgroup(group, stabiliser_generators, cap)
    return CellSpace(group, stabiliser, rep_key=rep_key)


@dataclass(frozen=True)
class GeneratingSet:
    """A finite set of cosets used as right generators, kept in group order."""

    space: CellSpace = field(repr=False, compare=False)
    cosets: tuple

    def __len__(self):
        return len(self.cosets)

    def __iter__(self):
        return iter(self.cosets)

    def __contains__(self, p):
        return p in set(self.cosets)

    def is_saturated(self) -> bool:
        members = set(self.cosets)
        return all(self.space.left_action(h, s) in members for s in self.cosets for h in self.space.stabiliser)

    def is_symmetric(self) -> bool:
        members = set(self.cosets)
        return all(p in members for s in self.cosets for p in self.space.coset_inverse(s))

    def labels(self) -> list[str]:
        return [self.space.group.format(s) for s in self.cosets]

    def without_origin(self) -> "GeneratingSet":
        return GeneratingSet(self.space, tuple(s for s in self.cosets if s != self.space.origin))


def saturate_and_symmetrize(space: CellSpace, raw: Iterable[Point]) -> GeneratingSet:
    """Smallest superset of `raw` closed under G0-translation and coset inversion."""
    result = set()
    todo = [space.coset_of(p) for p in raw]
    while todo:
        p = todo.pop()
        if p in result:
            continue
        result.add(p)
        todo.extend(space.left_action(h, p) for h in space.stabiliser)
        todo.extend(space.coset_inverse(p))
    return GeneratingSet(space, tuple(space.sort(result)))


def induce_generating_set(space: CellSpace, group_generators: Iterable[Element]) -> GeneratingSet:
    """Right generating set {g0 t G0 : g0 in G0, t in T u T^-1} induced by generators T of G.

    The caller is responsible for T actually generating G.
    """
    g = space.group
    ts = [g.validate(t) for t in group_generators]
    ts += [g.invert(t) for t in ts]
    cosets = {space.coset_of(g.multiply(h, t)) for h in space.stabiliser for t in ts}
    return GeneratingSet(space, tuple(space.sort(cosets)))


@dataclass
class SemiActionReport:
    samples: int
    radius: int
    seed: int
    failures: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_semi_action_axioms(space: CellSpace, samples: int = 100, radius: int = 4, seed: int = 0) -> SemiActionReport:
    """Sample (m, g, c) and check the semi-action and semi-commutation laws.

    The G0 element each law asks for is found by trying every element of G0.
    `witnesses` counts how often each G0 element served as the witness.
    """
    rng = random.Random(seed)
    grp = space.group
    report = SemiActionReport(samples, radius, seed)
    count: dict[str, int] = {}
    for i in range(samples):
        m = space.random_point(rng, radius)
        g = grp.random_word(rng, rng.randint(0, radius))
        c = space.random_point(rng, radius)

        if space.right_semi_action(m, space.origin) != m:
            report.failures.append((i, "identity", m))

        lhs = space.right_semi_action(m, space.coset_of(grp.multiply(g, c)))
        mid = space.right_semi_action(m, space.coset_of(g))
        found = None
        for h in space.stabiliser:
            if space.right_semi_action(mid, space.left_action(h, c)) == lhs:
                found = h
                break
        if found is None:
            report.failures.append((i, "defect", (m, g, c)))
        else:
            key = grp.format(found)
            count[key] = count.get(key, 0) + 1

        lhs = space.right_semi_action(space.left_action(g, m), c)
        if not any(
            space.left_action(g, space.right_semi_action(m, space.left_action(h, c))) == lhs
            for h in space.stabiliser
        ):
            report.failures.append((i, "semi-commutation", (m, g, c)))
    report.witnesses = dict(sorted(count.items()))
    return report
