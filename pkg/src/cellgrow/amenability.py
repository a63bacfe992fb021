"""Isoperimetric profiles, Folner deficiencies and Folner witnesses.

Preimages (- . s)^-1(F) are never built: the counted sets F \\ (- . s)^-1(F)
are subsets of F, so every quantity reduces to scanning F and testing
whether m . s stays in F.  All ratios are exact fractions.

Nothing here can certify non-amenability.  A profile bounded away from zero
or a failed witness search is evidence at a finite range, not a proof.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .cellspace import CellSpace, GeneratingSet, Point
from .errors import EmptySetError
from .geometry import DEFAULT_BALL_CAP, boundaries, build_ball, iter_spheres


def worker_count() -> int:
    """Workers allowed by CELLGROW_THREADS (0 or unset means one per CPU)."""
    try:
        n = int(os.environ.get("CELLGROW_THREADS", "0"))
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def _escapees(space: CellSpace, members: set, s: Point) -> set:
    act = space.right_semi_action
    return {m for m in members if act(m, s) not in members}


def generator_deficiency(space: CellSpace, gens: GeneratingSet, f: Iterable[Point], s: Point) -> Fraction:
    """|{m in F : m . s not in F}| / |F|."""
    members = set(f)
    if not members:
        raise EmptySetError("F must be non-empty")
    return Fraction(len(_escapees(space, members, s)), len(members))


def union_deficiency(space: CellSpace, gens: GeneratingSet, f: Iterable[Point], e: Iterable[Point]) -> Fraction:
    """|union over e of F \\ (- . e)^-1(F)| / |F|."""
    members = set(f)
    if not members:
        raise EmptySetError("F must be non-empty")
    escaped = set()
    for s in e:
        escaped |= _escapees(space, members, s)
    return Fraction(len(escaped), len(members))


@dataclass
class IsoRecord:
    k: int
    size: int
    per_generator: dict  # label -> Fraction
    union: Fraction

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "size": self.size,
            "per_generator": {lbl: float(v) for lbl, v in self.per_generator.items()},
            "union_deficiency": float(self.union),
        }


@dataclass
class IsoperimetricReport:
    family: str
    records: list = field(default_factory=list)

    @property
    def running_min(self) -> list:
        out, best = [], None
        for rec in self.records:
            best = rec.union if best is None else min(best, rec.union)
            out.append(best)
        return out

    @property
    def upper_bound(self) -> Fraction | None:
        """Smallest union deficiency seen: an upper bound on the isoperimetric constant."""
        mins = self.running_min
        return mins[-1] if mins else None

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "records": [r.to_dict() for r in self.records],
            "running_min": [float(x) for x in self.running_min],
        }


def isoperimetric_profile(space: CellSpace, gens: GeneratingSet, k_max: int, cap: int = DEFAULT_BALL_CAP) -> IsoperimetricReport:
    """Deficiencies of the balls B(0), ..., B(k_max) around the origin.

    One search of radius k_max gives every point's distance; a generator
    step leaving B(k_max) lands at distance k_max + 1.  Per-k scans then
    only compare distances, and run concurrently.
    """
    ball = build_ball(space, gens, space.origin, k_max, cap=cap, sort=False)
    dist = ball.dist
    outside = k_max + 1
    act = space.right_semi_action
    points = ball.ball()
    steps = {m: tuple(dist.get(act(m, s), outside) for s in gens) for m in points}
    labels = gens.labels()

    def record(k):
        members = [m for m in points if dist[m] <= k]
        per = [0] * len(labels)
        union = 0
        for m in members:
            hit = False
            for i, d in enumerate(steps[m]):
                if d > k:
                    per[i] += 1
                    hit = True
            union += hit
        n = len(members)
        return IsoRecord(k, n, {lbl: Fraction(c, n) for lbl, c in zip(labels, per)}, Fraction(union, n))

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        records = list(pool.map(record, range(k_max + 1)))
    return IsoperimetricReport(f"balls 0..{k_max}", records)


def profile_of_sets(space: CellSpace, gens: GeneratingSet, sets: list, family: str = "user sets") -> IsoperimetricReport:
    """Same report for an arbitrary family of non-empty finite sets."""
    labels = gens.labels()
    records = []
    for i, f in enumerate(sets):
        members = set(f)
        if not members:
            raise EmptySetError(f"set {i} is empty")
        per = {lbl: generator_deficiency(space, gens, members, s) for lbl, s in zip(labels, gens)}
        records.append(IsoRecord(i, len(members), per, union_deficiency(space, gens, members, gens)))
    return IsoperimetricReport(family, records)


@dataclass
class FolnerWitness:
    F: list
    epsilon: float
    deficiencies: dict  # label -> Fraction
    radius: int

    def check(self, space: CellSpace, gens: GeneratingSet) -> bool:
        """Recompute every deficiency from scratch and compare with epsilon."""
        members = set(self.F)
        return bool(members) and all(
            generator_deficiency(space, gens, members, s) < self.epsilon for s in gens
        )

    def to_dict(self, space: CellSpace) -> dict:
        return {
            "found": True,
            "epsilon": self.epsilon,
            "radius": self.radius,
            "size": len(self.F),
            "deficiencies": {lbl: float(v) for lbl, v in self.deficiencies.items()},
            "max_deficiency": float(max(self.deficiencies.values(), default=0)),
        }


@dataclass(frozen=True)
class NotFound:
    k_cap: int

    def to_dict(self, space=None) -> dict:
        return {"found": False, "not_found_up_to": self.k_cap}


def folner_witness_subexp(space: CellSpace, gens: GeneratingSet, epsilon: float, k_cap: int, cap: int = DEFAULT_BALL_CAP):
    """Search balls for a Folner witness the way sub-exponential growth provides one.

    Finds the first k <= k_cap with |B(k)| < (1 + epsilon) |B(k-1)|.  Every
    generator step maps B(k-1) into B(k), so at most |B(k)| - |B(k-1)| points
    of F = B(k) can escape, which is below epsilon |F|.  The deficiencies
    of the returned ball are recomputed directly, not taken from that bound.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    ball: list = []
    prev = None
    labels = gens.labels()
    for r, layer in iter_spheres(space, gens, space.origin, cap=cap):
        ball.extend(layer)
        if prev is not None and len(ball) < (1 + epsilon) * prev:
            members = set(ball)
            defs = {lbl: generator_deficiency(space, gens, members, s) for lbl, s in zip(labels, gens)}
            if all(d < epsilon for d in defs.values()):
                return FolnerWitness(space.sort(members), epsilon, defs, r)
        prev = len(ball)
        if r >= k_cap:
            break
    if prev is not None and r < k_cap:
        # finite space, exhausted: every later ball equals this one
        members = set(ball)
        defs = {lbl: generator_deficiency(space, gens, members, s) for lbl, s in zip(labels, gens)}
        if all(d < epsilon for d in defs.values()):
            return FolnerWitness(space.sort(members), epsilon, defs, r + 1)
    return NotFound(k_cap)


@dataclass
class FolnerSequenceReport:
    ratios: list  # ratios[i][rho] = |boundary_rho F_i| / |F_i|
    last: dict  # rho -> last ratio
    monotone_tail: dict  # rho -> bool
    note: str = (
        "ratios vanishing for every rho is the finite-range shadow of the "
        "Folner property; trends here are not limits"
    )

    def to_dict(self) -> dict:
        return {
            "ratios": [[float(x) for x in row] for row in self.ratios],
            "last": {str(k): float(v) for k, v in self.last.items()},
            "monotone_tail": {str(k): v for k, v in self.monotone_tail.items()},
            "note": self.note,
        }


def folner_sequence_check(space: CellSpace, gens: GeneratingSet, sets: list, rho_max: int) -> FolnerSequenceReport:
    if not sets:
        raise EmptySetError("need at least one set")
    ratios = []
    for i, f in enumerate(sets):
        members = set(f)
        if not members:
            raise EmptySetError(f"set {i} is empty")
        row = [
            Fraction(len(boundaries(space, gens, members, rho).boundary), len(members))
            for rho in range(rho_max + 1)
        ]
        ratios.append(row)
    last, tail = {}, {}
    half = len(ratios) // 2
    for rho in range(rho_max + 1):
        col = [row[rho] for row in ratios]
        last[rho] = col[-1]
        tail[rho] = all(a >= b for a, b in zip(col[half:], col[half + 1:]))
    return FolnerSequenceReport(ratios, last, tail)


@dataclass
class UnionBoundReport:
    samples: int
    seed: int
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_union_bound_lemma(space: CellSpace, gens: GeneratingSet, samples: int = 100, seed: int = 0, window: int = 5) -> UnionBoundReport:
    """Check the preimage inclusion

        (- . c)^-1(A) \\ (- . (c . c2))^-1(A)
            is contained in the union over g0 in G0 of (- . c)^-1(A \\ (- . g0 c2)^-1(A))

    for random A inside B(3) and cosets c, c2 in B(2), both sides restricted
    to the window B(window).
    """
    rng = random.Random(seed)
    report = UnionBoundReport(samples, seed)
    index = build_ball(space, gens, space.origin, 3)
    b3 = index.ball()
    b2 = index.ball(2)
    scan = build_ball(space, gens, space.origin, window).ball()
    act = space.right_semi_action
    g0 = list(space.stabiliser)
    for i in range(samples):
        a = {m for m in b3 if rng.random() < 0.5} if i else set()
        c = rng.choice(b2)
        c2 = rng.choice(b2)
        cc2 = act(c, c2)
        shifted = [space.left_action(h, c2) for h in g0]
        lhs = {m for m in scan if act(m, c) in a and act(m, cc2) not in a}
        rhs = {
            m for m in scan
            if act(m, c) in a and any(act(act(m, c), t) not in a for t in shifted)
        }
        if not lhs <= rhs:
            report.violations.append((i, sorted(lhs - rhs, key=space.group.key)))
    return report
