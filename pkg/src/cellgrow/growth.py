"""Growth tables, growth rates, and the domination calculus on growth functions.

Domination is only semi-decidable from finite data: a verdict is either a
witness alpha valid on the checked range, or "no witness up to alpha_max",
which is never a proof that domination fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .cellspace import CellSpace, GeneratingSet
from .errors import EmptySetError, TableTooShortError
from .geometry import DEFAULT_BALL_CAP, Unreachable, build_ball, length


@dataclass
class GrowthTable:
    values: list
    source: str = ""
    generators: int | None = None  # |S| when built from a cell space
    fn: Callable | None = field(default=None, repr=False, compare=False)

    @property
    def k_max(self) -> int:
        return len(self.values) - 1

    def at(self, k: int):
        if k < len(self.values):
            return self.values[k]
        if self.fn is None:
            raise IndexError(f"k={k} beyond table range {self.k_max}")
        return self.fn(k)

    def extendable(self) -> bool:
        return self.fn is not None

    def __len__(self):
        return len(self.values)


def growth_table(space: CellSpace, gens: GeneratingSet, k_max: int, cap: int = DEFAULT_BALL_CAP) -> GrowthTable:
    """gamma(k) = |B(k)| for k <= k_max from one search of radius k_max."""
    ball = build_ball(space, gens, space.origin, k_max, cap=cap, sort=False)
    return GrowthTable(ball.sizes(), source=f"{space!r} |S|={len(gens)}", generators=len(gens))


def reference_table(name: str, k_max: int, param=None) -> GrowthTable:
    """Exact tables of symbolic growth functions.

    name is one of "one", "identity" (k), "power" (k**param),
    "exponential" (param**k) or "exp" (e**k, floating point).
    """
    if name == "one":
        fn, label = (lambda k: 1), "1"
    elif name == "identity":
        fn, label = (lambda k: k), "k"
    elif name == "power":
        d = int(param)
        fn, label = (lambda k: k**d), f"k^{d}"
    elif name == "exponential":
        r = param if isinstance(param, int) else Fraction(str(param))
        fn, label = (lambda k: r**k), f"{param}^k"
    elif name == "exp":
        fn, label = math.exp, "exp"
    else:
        raise ValueError(f"unknown reference function {name!r}")
    return GrowthTable([fn(k) for k in range(k_max + 1)], source=label, fn=fn)


@dataclass(frozen=True)
class DominationVerdict:
    alpha: int | None  # witness, or None for no-witness-up-to(alpha_max)
    alpha_max: int
    checked_range: int

    @property
    def found(self) -> bool:
        return self.alpha is not None

    def __str__(self):
        if self.found:
            return f"witness({self.alpha}) on 1..{self.checked_range}"
        return f"no-witness-up-to({self.alpha_max}) on 1..{self.checked_range}"


def _alpha_holds(gamma: GrowthTable, other: GrowthTable, alpha: int, k_range: int) -> bool:
    checked = 0
    for k in range(1, k_range + 1):
        if alpha * k > gamma.k_max and not gamma.extendable():
            break
        if alpha * gamma.at(alpha * k) < other.at(k):
            return False
        checked += 1
    return checked > 0


def dominates(gamma: GrowthTable, other: GrowthTable, alpha_max: int = 8, k_max: int | None = None) -> DominationVerdict:
    """Smallest alpha <= alpha_max with alpha*gamma(alpha*k) >= other(k) on the checked range.

    k runs over 1..k_max (default: the range of `other`), restricted to
    alpha*k inside `gamma` unless gamma is a symbolic table that extends.
    """
    if not len(gamma) or not len(other):
        raise EmptySetError("growth tables must be non-empty")
    if k_max is None:
        k_range = other.k_max
    else:
        k_range = k_max if other.extendable() else min(k_max, other.k_max)
    for alpha in range(1, alpha_max + 1):
        if _alpha_holds(gamma, other, alpha, k_range):
            return DominationVerdict(alpha, alpha_max, k_range)
    return DominationVerdict(None, alpha_max, k_range)


def equivalent(gamma: GrowthTable, other: GrowthTable, alpha_max: int = 8, k_max: int | None = None):
    return dominates(gamma, other, alpha_max, k_max), dominates(other, gamma, alpha_max, k_max)


@dataclass
class GrowthRate:
    roots: list  # roots[k] = gamma(k)**(1/k); roots[0] is None
    estimate: float  # running infimum of the roots, an upper bound on the rate
    ratios: list  # ratios[k] = gamma(k)/gamma(k-1); ratios[0] is None


def _kth_root(value, k: int) -> float:
    if value <= 0:
        raise ValueError("growth values must be positive")
    try:
        return float(value) ** (1.0 / k)
    except OverflowError:
        return math.exp(math.log(value) / k)


def growth_rate(gamma: GrowthTable) -> GrowthRate:
    if gamma.k_max < 1:
        raise EmptySetError("need gamma(1) at least")
    roots = [None] + [_kth_root(gamma.values[k], k) for k in range(1, len(gamma))]
    ratios = [None] + [gamma.values[k] / gamma.values[k - 1] for k in range(1, len(gamma))]
    return GrowthRate(roots, min(roots[1:]), ratios)


@dataclass
class SubmultiplicativeReport:
    checked: int
    violations: list  # (k, k2, gamma(k+k2), gamma(k)*gamma(k2))

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_submultiplicative(gamma: GrowthTable) -> SubmultiplicativeReport:
    v = gamma.values
    violations, checked = [], 0
    for k in range(1, len(v)):
        for k2 in range(k, len(v) - k):
            checked += 1
            if v[k + k2] > v[k] * v[k2]:
                violations.append((k, k2, v[k + k2], v[k] * v[k2]))
    return SubmultiplicativeReport(checked, violations)


@dataclass
class GrowthClassEstimate:
    cls: str  # bounded | polynomial | exponential | inconclusive
    estimate: float | None  # degree for polynomial, rate for exponential, bound for bounded
    residuals: dict
    fit_range: tuple
    thresholds: dict

    def to_dict(self) -> dict:
        return {
            "class": self.cls,
            "estimate": self.estimate,
            "residuals": self.residuals,
            "range": list(self.fit_range),
            "thresholds": self.thresholds,
        }


def _fit(x, y):
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return float(slope), float(np.sqrt(np.mean(resid**2)))


def classify(gamma: GrowthTable, residual_threshold: float = 0.05, degree_factor: float = 1.5) -> GrowthClassEstimate:
    """Guess the growth class from the upper half of a table.

    A table that stops growing and stays constant to the end is bounded.
    Otherwise log gamma is fitted against log k (polynomial) and against k
    (exponential); a model is accepted when its RMS residual is below
    `residual_threshold`.  When both are accepted, polynomial wins iff its
    degree is below degree_factor * ln(k_max).  Intermediate growth is never
    reported.
    """
    if len(gamma) < 8:
        raise TableTooShortError("classification needs at least 8 values")
    v = gamma.values
    kmax = gamma.k_max
    lo = max(1, (kmax + 1) // 2)
    thresholds = {"residual": residual_threshold, "degree_factor": degree_factor}
    repeat = next((k for k in range(1, len(v)) if v[k] == v[k - 1]), None)
    if repeat is not None and len(set(v[repeat - 1:])) == 1:
        return GrowthClassEstimate("bounded", float(v[-1]), {}, (repeat - 1, kmax), thresholds)
    ks = np.arange(lo, kmax + 1, dtype=float)
    logs = np.array([math.log(v[k]) for k in range(lo, kmax + 1)])
    degree, poly_res = _fit(np.log(ks), logs)
    log_rate, exp_res = _fit(ks, logs)
    residuals = {"polynomial": poly_res, "exponential": exp_res}
    poly_ok = poly_res < residual_threshold
    exp_ok = exp_res < residual_threshold
    if poly_ok and (not exp_ok or degree < degree_factor * math.log(kmax)):
        return GrowthClassEstimate("polynomial", max(degree, 0.0), residuals, (lo, kmax), thresholds)
    if exp_ok:
        return GrowthClassEstimate("exponential", math.exp(max(log_rate, 0.0)), residuals, (lo, kmax), thresholds)
    return GrowthClassEstimate("inconclusive", None, residuals, (lo, kmax), thresholds)


def generating_set_alpha(space: CellSpace, gens: GeneratingSet, other: GeneratingSet, cap: int = 64) -> int:
    """min{k : B_S(1) is contained in B_S'(k)}."""
    worst = 0
    for s in gens:
        d = length(space, other, space.right_semi_action(space.origin, s), cap)
        if isinstance(d, Unreachable):
            raise ValueError("generator not reachable under the other generating set")
        worst = max(worst, d)
    return max(worst, 1)
