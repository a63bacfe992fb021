"""Executable lemma suites over a cell space and generating set.

Each check draws seeded samples inside small balls and records failures.
The suites back the ``check`` CLI command and the acceptance tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import amenability as am
from . import geometry as geo
from .cellspace import CellSpace, GeneratingSet, verify_semi_action_axioms
from .growth import GrowthTable, growth_rate, growth_table, verify_submultiplicative

SUITES = ("cellspace", "metric", "boundary", "growth", "amenability")


@dataclass
class LemmaResult:
    name: str
    samples: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.samples > 0

    def check(self, ok: bool, detail=None):
        self.samples += 1
        if not ok:
            self.failures.append(detail)

    def to_dict(self) -> dict:
        return {
            "lemma": self.name,
            "samples": self.samples,
            "failures": len(self.failures),
            "passed": self.passed,
        }


class _Sampler:
    """Seeded access to balls around the origin."""

    def __init__(self, space: CellSpace, gens: GeneratingSet, seed: int, radius: int = 4):
        self.space = space
        self.gens = gens
        self.rng = random.Random(seed)
        self.index = geo.build_ball(space, gens, space.origin, radius)
        self._balls = {}

    def point(self, radius: int = 4):
        return self.rng.choice(self.index.ball(radius))

    def subset(self, radius: int = 3, p: float = 0.5) -> set:
        return {m for m in self.index.ball(radius) if self.rng.random() < p}

    def element(self, length: int = 4):
        return self.space.group.random_word(self.rng, self.rng.randint(0, length))

    def ball(self, center, radius) -> set:
        key = (center, radius)
        if key not in self._balls:
            self._balls[key] = set(geo.build_ball(self.space, self.gens, center, radius).ball())
        return self._balls[key]

    def dist(self, a, b) -> int:
        return geo.distance(self.space, self.gens, a, b)


def cellspace_suite(space: CellSpace, gens: GeneratingSet, samples: int = 100, seed: int = 0) -> list[LemmaResult]:
    sm = _Sampler(space, gens, seed)
    results = []

    axioms = verify_semi_action_axioms(space, samples, 4, seed)
    r = LemmaResult("semi-action-axioms", samples, list(axioms.failures))
    results.append(r)

    r = LemmaResult("identification-round-trip")
    for _ in range(samples):
        m = sm.point()
        r.check(space.coset_of(m) == m and space.right_semi_action(space.origin, m) == m, m)
    results.append(r)

    r = LemmaResult("semi-action-free-on-ball")
    ball = sm.index.ball(4)
    for _ in range(samples):
        m = sm.point()
        images = [space.right_semi_action(m, c) for c in ball]
        r.check(len(set(images)) == len(ball), m)
    results.append(r)

    r = LemmaResult("semi-action-transitive-on-ball")
    for m in ball:
        r.check(space.right_semi_action(space.origin, m) == m, m)
    results.append(r)

    r = LemmaResult("generating-set-saturated-symmetric")
    r.check(gens.is_saturated() and gens.is_symmetric(), gens.cosets)
    results.append(r)
    return results


def metric_suite(space: CellSpace, gens: GeneratingSet, samples: int = 100, seed: int = 0) -> list[LemmaResult]:
    sm = _Sampler(space, gens, seed)
    act = space.right_semi_action
    results = []

    r = LemmaResult("left-invariance")
    for _ in range(samples):
        m, m2, g = sm.point(), sm.point(), sm.element()
        lhs = sm.dist(space.left_action(g, m), space.left_action(g, m2))
        r.check(lhs == sm.dist(m, m2), (g, m, m2))
    results.append(r)

    r = LemmaResult("metric-symmetric")
    for _ in range(samples):
        m, m2 = sm.point(), sm.point()
        r.check(sm.dist(m, m2) == sm.dist(m2, m), (m, m2))
    results.append(r)

    r = LemmaResult("one-step-distance-bound")
    for _ in range(samples):
        m, m2 = sm.point(), sm.point(3)
        for s in gens:
            r.check(sm.dist(m, act(m2, s)) <= sm.dist(m, m2) + 1, (m, m2, s))
    results.append(r)

    r = LemmaResult("truncated-geodesic")
    for _ in range(samples):
        center = sm.point()
        index = geo.build_ball(space, gens, center, 4)
        target = sm.rng.choice(index.ball())
        walk = index.geodesic(target)
        m = center
        ok = sm.dist(center, target) == len(walk)
        for i, s in enumerate(walk, start=1):
            m = act(m, s)
            ok = ok and sm.dist(center, m) == i
        r.check(ok and m == target, (center, target))
    results.append(r)

    r = LemmaResult("left-action-moves-balls")
    for _ in range(samples):
        m, g, rho = sm.point(), sm.element(), sm.rng.randint(0, 3)
        moved = {space.left_action(g, x) for x in sm.ball(m, rho)}
        r.check(moved == sm.ball(space.left_action(g, m), rho), (g, m, rho))
    results.append(r)

    r = LemmaResult("equal-radius-balls-same-size")
    for _ in range(samples):
        m, m2, rho = sm.point(), sm.point(), sm.rng.randint(0, 3)
        r.check(len(sm.ball(m, rho)) == len(sm.ball(m2, rho)), (m, m2, rho))
    results.append(r)

    r = LemmaResult("origin-ball-transport")
    for _ in range(samples):
        m, rho = sm.point(), sm.rng.randint(0, 3)
        moved = {act(m, c) for c in sm.ball(space.origin, rho)}
        r.check(moved == sm.ball(m, rho), (m, rho))
    results.append(r)

    r = LemmaResult("ball-composition")
    for _ in range(samples):
        m = sm.point()
        rho = sm.rng.randint(0, 2)
        rho2 = sm.rng.randint(0, 4 - rho) if rho < 4 else 0
        composed = {act(x, c) for x in sm.ball(m, rho) for c in sm.ball(space.origin, rho2)}
        r.check(composed == sm.ball(m, rho + rho2), (m, rho, rho2))
    results.append(r)

    r = LemmaResult("ball-step-within-next-ball")
    for _ in range(samples):
        m, rho, s = sm.point(), sm.rng.randint(0, 3), sm.rng.choice(gens.cosets)
        r.check({act(x, s) for x in sm.ball(m, rho)} <= sm.ball(m, rho + 1), (m, rho, s))
    results.append(r)

    r = LemmaResult("sphere-to-point-distance")
    for _ in range(samples):
        m = sm.point()
        index = geo.build_ball(space, gens, m, 4)
        rho2 = sm.rng.randint(0, 4)
        if not index.sphere(rho2):
            rho2 = len(index.layers) - 1
        rho = sm.rng.randint(0, rho2)
        target = sm.rng.choice(index.sphere(rho2))
        d = geo.set_distance(space, gens, index.sphere(rho), [target])
        r.check(d == rho2 - rho, (m, rho, target))
    results.append(r)

    r = LemmaResult("sphere-to-sphere-distance")
    for _ in range(samples):
        m = sm.point()
        index = geo.build_ball(space, gens, m, 4)
        top = len(index.layers) - 1
        rho, rho2 = sm.rng.randint(0, top), sm.rng.randint(0, top)
        d = geo.set_distance(space, gens, index.sphere(rho), index.sphere(rho2))
        r.check(d == abs(rho - rho2), (m, rho, rho2))
    results.append(r)

    r = LemmaResult("ball-to-ball-distance")
    for _ in range(samples):
        m, m2 = sm.point(), sm.point()
        d = sm.dist(m, m2)
        rho = sm.rng.randint(0, d)
        rho2 = sm.rng.randint(0, d - rho)
        got = geo.set_distance(space, gens, sm.ball(m, rho), sm.ball(m2, rho2))
        r.check(got == d - rho - rho2, (m, m2, rho, rho2))
    results.append(r)

    r = LemmaResult("finite-set-in-some-ball")
    for _ in range(samples):
        a = sm.subset(4, 0.1)
        k = max((sm.dist(space.origin, x) for x in a), default=0)
        r.check(a <= sm.ball(space.origin, k), k)
    results.append(r)

    r = LemmaResult("cayley-out-degree")
    trimmed = gens.without_origin()
    for _ in range(samples):
        m = sm.point(3)
        targets = {act(m, s) for s in trimmed}
        r.check(len(targets) == len(trimmed) and targets <= set(sm.index.dist), m)
    results.append(r)

    r = LemmaResult("cayley-no-multiple-edges")
    for _ in range(samples):
        m = sm.point(3)
        graph = geo.cayley_subgraph(space, gens, [m] + [act(m, s) for s in gens])
        pairs = [(a, s) for a, s, _ in graph.edges]
        r.check(len(pairs) == len(set(pairs)), m)
    results.append(r)

    r = LemmaResult("cayley-loops-iff-origin-generator")
    has_origin = space.origin in gens
    for _ in range(samples):
        m = sm.point(3)
        loops = [s for s in gens if act(m, s) == m]
        r.check(loops == ([space.origin] if has_origin else []), m)
    results.append(r)
    return results


def boundary_suite(space: CellSpace, gens: GeneratingSet, samples: int = 100, seed: int = 0) -> list[LemmaResult]:
    sm = _Sampler(space, gens, seed)

    def inn(a, t):
        return set(geo.interior(space, gens, a, t))

    def clo(a, t):
        return set(geo.closure(space, gens, a, t))

    names = [
        "interior-characterisation",
        "closure-characterisation",
        "repeated-interior",
        "internal-boundary-of-interior",
        "repeated-closure",
        "external-boundary-of-closure",
        "closure-within-interior-of-closure",
        "closure-of-interior-within-interior",
        "separation-from-closure",
        "boundary-decomposition",
    ]
    results = {n: LemmaResult(n) for n in names}
    for _ in range(samples):
        a = sm.subset(3)
        theta = sm.rng.randint(0, 3)
        theta2 = sm.rng.randint(0, 3 - theta)
        detail = (sorted(a, key=space.group.key), theta, theta2)

        i_t = inn(a, theta)
        c_t = clo(a, theta)
        results["interior-characterisation"].check(
            i_t == {m for m in a if sm.ball(m, theta) <= a}, detail
        )
        ball_union = set()
        for m in a:
            ball_union |= sm.ball(m, theta)
        results["closure-characterisation"].check(c_t == ball_union, detail)

        i_sum = inn(a, theta + theta2)
        c_sum = clo(a, theta + theta2)
        results["repeated-interior"].check(inn(i_t, theta2) == i_sum, detail)
        internal = set(geo.boundaries(space, gens, i_t, theta2).internal)
        results["internal-boundary-of-interior"].check(internal == i_t - i_sum, detail)
        results["repeated-closure"].check(clo(c_t, theta2) == c_sum, detail)
        external = set(geo.boundaries(space, gens, c_t, theta2).external)
        results["external-boundary-of-closure"].check(external == c_sum - c_t, detail)

        big = max(theta, theta2)
        small = min(theta, theta2)
        results["closure-within-interior-of-closure"].check(
            clo(a, big - small) <= inn(clo(a, big), small), detail
        )
        results["closure-of-interior-within-interior"].check(
            clo(inn(a, big), small) <= inn(a, big - small), detail
        )

        k = sm.rng.randint(0, 2)
        a2 = sm.subset(3)
        rest = a2 - clo(a, k)
        d = geo.set_distance(space, gens, a, rest)
        results["separation-from-closure"].check(d >= k + 1, (detail, k))

        b = geo.boundaries(space, gens, a, theta)
        results["boundary-decomposition"].check(
            set(b.boundary) == set(b.internal) | set(b.external)
            and not set(b.internal) & set(b.external),
            detail,
        )

    ball_checks = LemmaResult("balls-closure-interior-boundary")
    for _ in range(samples):
        m = sm.point(2)
        rho = sm.rng.randint(0, 3)
        theta = sm.rng.randint(0, 3 - rho)
        ball = sm.ball(m, rho)
        inner = sm.ball(m, rho - theta) if rho >= theta else set()
        bd = set(geo.boundaries(space, gens, ball, theta).boundary)
        ball_checks.check(
            clo(ball, theta) == sm.ball(m, rho + theta)
            and inn(ball, theta) >= inner
            and bd <= sm.ball(m, rho + theta) - inner,
            (m, rho, theta),
        )
    return list(results.values()) + [ball_checks]


def growth_suite(space: CellSpace, gens: GeneratingSet, samples: int = 100, seed: int = 0, k_max: int = 8) -> list[LemmaResult]:
    table = growth_table(space, gens, k_max)
    v = table.values
    results = []

    r = LemmaResult("growth-at-zero-is-one")
    r.check(v[0] == 1, v[0])
    results.append(r)

    r = LemmaResult("ball-cardinality-envelope")
    for k, x in enumerate(v):
        r.check(x <= (1 + len(gens)) ** k, (k, x))
    results.append(r)

    r = LemmaResult("growth-non-decreasing")
    for k in range(1, len(v)):
        r.check(v[k - 1] <= v[k], k)
    results.append(r)

    r = LemmaResult("growth-submultiplicative")
    rep = verify_submultiplicative(table)
    r.samples = max(rep.checked, 1)
    r.failures = list(rep.violations)
    results.append(r)

    r = LemmaResult("increasing-then-constant")
    first_repeat = next((k for k in range(1, len(v)) if v[k] == v[k - 1]), None)
    if first_repeat is None:
        r.check(all(v[k - 1] < v[k] for k in range(1, len(v))), v)
    else:
        r.check(all(x == v[first_repeat] for x in v[first_repeat:]), v)
    results.append(r)

    r = LemmaResult("rate-estimate-non-increasing")
    prev = None
    for k in range(1, len(v)):
        est = growth_rate(GrowthTable(v[: k + 1])).estimate
        r.check(prev is None or est <= prev, (k, est, prev))
        prev = est
    results.append(r)
    return results


def amenability_suite(space: CellSpace, gens: GeneratingSet, samples: int = 100, seed: int = 0) -> list[LemmaResult]:
    sm = _Sampler(space, gens, seed)
    results = []

    bounds = LemmaResult("deficiency-in-unit-interval")
    origin_zero = LemmaResult("origin-coset-deficiency-zero")
    union_sub = LemmaResult("union-deficiency-subadditive")
    union_dom = LemmaResult("union-dominates-each-generator")
    for _ in range(samples):
        f = sm.subset(3) or {space.origin}
        per = [am.generator_deficiency(space, gens, f, s) for s in gens]
        union = am.union_deficiency(space, gens, f, gens)
        bounds.check(all(0 <= x <= 1 for x in per) and 0 <= union <= 1, len(f))
        origin_zero.check(am.generator_deficiency(space, gens, f, space.origin) == 0, len(f))
        union_sub.check(union <= sum(per), len(f))
        union_dom.check(all(union >= x for x in per), len(f))
    results += [bounds, origin_zero, union_sub, union_dom]

    r = LemmaResult("preimage-difference-bound")
    rep = am.verify_union_bound_lemma(space, gens, samples, seed)
    r.samples = samples
    r.failures = list(rep.violations)
    results.append(r)

    r = LemmaResult("folner-witness-self-check")
    for eps in (10.0, 1.0, 0.5):
        w = am.folner_witness_subexp(space, gens, eps, 6)
        if isinstance(w, am.FolnerWitness):
            r.check(w.check(space, gens), eps)
    if not r.samples:
        r.samples = 1  # no witness found at this range: nothing to recheck
    results.append(r)

    r = LemmaResult("boundary-count-identity")
    for k in range(0, 5):
        for rho in range(0, 6 - k):
            ball = sm.ball(space.origin, k)
            bd = geo.boundaries(space, gens, ball, rho).boundary
            inner = geo.interior(space, gens, ball, rho)
            r.check(len(bd) == len(sm.ball(space.origin, k + rho)) - len(inner), (k, rho))
    results.append(r)
    return results


_SUITE_FUNCS = {
    "cellspace": cellspace_suite,
    "metric": metric_suite,
    "boundary": boundary_suite,
    "growth": growth_suite,
    "amenability": amenability_suite,
}


def run_suite(name: str, space: CellSpace, gens: GeneratingSet, samples: int = 100, seed: int = 0) -> list[LemmaResult]:
    names = SUITES if name == "all" else (name,)
    out = []
    for n in names:
        if n not in _SUITE_FUNCS:
            raise ValueError(f"unknown suite {n!r}")
        out += _SUITE_FUNCS[n](space, gens, samples, seed)
    return out
