"""Finitely generated groups with canonical normal forms.

Elements are plain hashable payloads (tuples) in canonical form, so two
elements are equal exactly when their payloads are equal.  Each group knows
how to multiply, invert, order, print and parse its payloads.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .errors import GroupOverflowError, MalformedElementError, StabiliserTooLargeError

Element = Hashable

INT_LIMIT = 2**63 - 1


def _checked(values):
    for v in values:
        if v > INT_LIMIT or v < -INT_LIMIT:
            raise GroupOverflowError(f"coordinate {v} exceeds 64-bit range")
    return values


_INT_TUPLE = re.compile(r"^\(\s*(-?\d+(\s*,\s*-?\d+)*)?\s*,?\s*\)$")


def _parse_int_tuple(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not _INT_TUPLE.match(text):
        raise MalformedElementError(f"not an integer tuple: {text!r}")
    inner = text[1:-1].strip().rstrip(",")
    if not inner:
        return ()
    return tuple(int(part) for part in inner.split(","))


class Group:
    """Common interface; subclasses fix the payload format."""

    kind: str = ""

    def identity(self) -> Element:
        raise NotImplementedError

    def multiply(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def invert(self, a: Element) -> Element:
        raise NotImplementedError

    def validate(self, a: Element) -> Element:
        raise NotImplementedError

    def key(self, a: Element):
        """Sort key realising the group's strict total order on payloads."""
        return a

    def format(self, a: Element) -> str:
        raise NotImplementedError

    def parse(self, text: str) -> Element:
        raise NotImplementedError

    def generators(self) -> list[Element]:
        """A standard finite generating set (not necessarily symmetric)."""
        raise NotImplementedError

    def spec(self) -> dict:
        raise NotImplementedError

    # derived helpers

    def product(self, elements: Iterable[Element]) -> Element:
        result = self.identity()
        for el in elements:
            result = self.multiply(result, el)
        return result

    def sorted(self, elements: Iterable[Element]) -> list[Element]:
        return sorted(set(elements), key=self.key)

    def random_word(self, rng, length: int) -> Element:
        """Product of `length` random standard generators or their inverses."""
        gens = self.generators()
        letters = gens + [self.invert(g) for g in gens]
        return self.product(rng.choice(letters) for _ in range(length))

    def __eq__(self, other):
        return isinstance(other, Group) and self.spec() == other.spec()

    def __hash__(self):
        return hash(repr(self.spec()))

    def __repr__(self):
        return f"{type(self).__name__}({self.spec()})"


class FreeAbelianGroup(Group):
    """Z^d as integer vectors under addition."""

    kind = "free-abelian"

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.rank = rank
        self._zero = (0,) * rank

    def identity(self):
        return self._zero

    def multiply(self, a, b):
        return _checked(tuple(x + y for x, y in zip(a, b)))

    def invert(self, a):
        return tuple(-x for x in a)

    def validate(self, a):
        if not (isinstance(a, tuple) and len(a) == self.rank and all(type(x) is int for x in a)):
            raise MalformedElementError(f"{a!r} is not an element of Z^{self.rank}")
        return _checked(a)

    def format(self, a):
        return "(" + ",".join(str(x) for x in a) + ")"

    def parse(self, text):
        return self.validate(_parse_int_tuple(text))

    def generators(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def spec(self):
        return {"kind": self.kind, "rank": self.rank}


class FreeGroup(Group):
    """Free group on `rank` letters; elements are reduced words.

    A word is a tuple of non-zero ints: ``i`` is the i-th letter and ``-i``
    its inverse.  Words are ordered length first, then lexicographically with
    letter order a < a' < b < b' < ...
    """

    kind = "free"

    def __init__(self, rank: int):
        if not 1 <= rank <= 26:
            raise ValueError("rank must be in 1..26")
        self.rank = rank
        self._names = string.ascii_lowercase[:rank]

    def identity(self):
        return ()

    def multiply(self, a, b):
        i = 0
        n = min(len(a), len(b))
        la = len(a)
        while i < n and a[la - 1 - i] == -b[i]:
            i += 1
        if i == 0:
            return a + b
        return a[: la - i] + b[i:]

    def invert(self, a):
        return tuple(-x for x in reversed(a))

    def validate(self, a):
        if not isinstance(a, tuple) or not all(type(x) is int and 0 < abs(x) <= self.rank for x in a):
            raise MalformedElementError(f"{a!r} is not a word over {self.rank} letters")
        if any(a[i] == -a[i + 1] for i in range(len(a) - 1)):
            raise MalformedElementError(f"{a!r} is not freely reduced")
        return a

    @staticmethod
    def _rank(letter):
        return 2 * (abs(letter) - 1) + (letter < 0)

    def key(self, a):
        return (len(a), tuple(2 * (abs(x) - 1) + (x < 0) for x in a))

    def format(self, a):
        if not a:
            return "e"
        return ".".join(self._names[abs(x) - 1] + ("'" if x < 0 else "") for x in a)

    def parse(self, text):
        text = text.strip()
        if text in ("e", ""):
            return ()
        word: tuple = ()
        for token in text.split("."):
            token = token.strip()
            inverse = token.endswith("'")
            name = token[:-1] if inverse else token
            if len(name) != 1 or name not in self._names:
                raise MalformedElementError(f"bad letter {token!r} in {text!r}")
            letter = self._names.index(name) + 1
            word = self.multiply(word, (-letter if inverse else letter,))
        return word

    def generators(self):
        return [(i,) for i in range(1, self.rank + 1)]

    def spec(self):
        return {"kind": self.kind, "rank": self.rank}


class HeisenbergGroup(Group):
    """Integer Heisenberg group: (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y')."""

    kind = "heisenberg"

    def identity(self):
        return (0, 0, 0)

    def multiply(self, a, b):
        return _checked((a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]))

    def invert(self, a):
        x, y, z = a
        return _checked((-x, -y, -z + x * y))

    def validate(self, a):
        if not (isinstance(a, tuple) and len(a) == 3 and all(type(x) is int for x in a)):
            raise MalformedElementError(f"{a!r} is not a Heisenberg triple")
        return _checked(a)

    def format(self, a):
        return "(" + ",".join(str(x) for x in a) + ")"

    def parse(self, text):
        return self.validate(_parse_int_tuple(text))

    def generators(self):
        return [(1, 0, 0), (0, 1, 0)]

    def spec(self):
        return {"kind": self.kind}


class InfiniteDihedralGroup(Group):
    """<t, s | s^2 = e, s t s^-1 = t^-1> with normal form t^n s^f, payload (n, f)."""

    kind = "infinite-dihedral"

    def identity(self):
        return (0, 0)

    def multiply(self, a, b):
        n, f = a
        m, g = b
        return _checked((n - m if f else n + m, f ^ g))

    def invert(self, a):
        n, f = a
        return a if f else (-n, 0)

    def validate(self, a):
        if not (
            isinstance(a, tuple)
            and len(a) == 2
            and type(a[0]) is int
            and a[1] in (0, 1)
            and type(a[1]) is int
        ):
            raise MalformedElementError(f"{a!r} is not a dihedral normal form")
        return _checked(a)

    def format(self, a):
        n, f = a
        if n == 0:
            return "s" if f else "e"
        return f"t^{n}*s" if f else f"t^{n}"

    def parse(self, text):
        result = self.identity()
        text = text.strip()
        if not text:
            raise MalformedElementError("empty dihedral element")
        for token in text.split("*"):
            token = token.strip()
            if token == "e":
                factor = (0, 0)
            elif token == "s":
                factor = (0, 1)
            elif token == "t":
                factor = (1, 0)
            else:
                m = re.fullmatch(r"t\^(-?\d+)", token)
                if not m:
                    raise MalformedElementError(f"bad dihedral token {token!r}")
                factor = (int(m.group(1)), 0)
            result = self.multiply(result, factor)
        return result

    def generators(self):
        return [(1, 0), (0, 1)]

    def spec(self):
        return {"kind": self.kind}


class PermutationGroup(Group):
    """Subgroup of the symmetric group on {0..n-1} generated by image tables.

    A permutation p is the tuple (p(0), ..., p(n-1)); products compose right
    to left, (a*b)(i) = a(b(i)).
    """

    kind = "finite-permutation"

    def __init__(self, degree: int, generators: Sequence[tuple[int, ...]]):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        self.degree = degree
        if not generators:
            raise ValueError("generator list must be non-empty")
        self._gens = [self.validate(tuple(g)) for g in generators]

    def identity(self):
        return tuple(range(self.degree))

    def multiply(self, a, b):
        return tuple(a[i] for i in b)

    def invert(self, a):
        inv = [0] * len(a)
        for i, x in enumerate(a):
            inv[x] = i
        return tuple(inv)

    def validate(self, a):
        if not (isinstance(a, tuple) and sorted(a) == list(range(self.degree))):
            raise MalformedElementError(f"{a!r} is not a permutation of degree {self.degree}")
        return a

    def format(self, a):
        return "(" + ",".join(str(x) for x in a) + ")"

    def parse(self, text):
        return self.validate(_parse_int_tuple(text))

    def generators(self):
        return list(self._gens)

    def spec(self):
        return {
            "kind": self.kind,
            "degree": self.degree,
            "generators": [self.format(g) for g in self._gens],
        }


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    rank: int = 0
    degree: int = 0
    generators: tuple[str, ...] = field(default_factory=tuple)

    def build(self) -> Group:
        if self.kind == "free-abelian":
            return FreeAbelianGroup(self.rank)
        if self.kind == "free":
            return FreeGroup(self.rank)
        if self.kind == "heisenberg":
            return HeisenbergGroup()
        if self.kind == "infinite-dihedral":
            return InfiniteDihedralGroup()
        if self.kind == "finite-permutation":
            return PermutationGroup(self.degree, [_parse_int_tuple(g) for g in self.generators])
        raise ValueError(f"unknown group kind {self.kind!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "GroupSpec":
        return cls(
            kind=data["kind"],
            rank=int(data.get("rank", 0)),
            degree=int(data.get("degree", 0)),
            generators=tuple(data.get("generators", ())),
        )


@dataclass(frozen=True)
class Subgroup:
    """Finite subgroup, elements sorted by the group order."""

    group: Group
    elements: tuple

    def __post_init__(self):
        g = self.group
        members = set(self.elements)
        if g.identity() not in members:
            raise ValueError("subgroup must contain the identity")
        if list(self.elements) != g.sorted(self.elements):
            raise ValueError("subgroup elements must be sorted and distinct")
        for x in self.elements:
            if g.invert(x) not in members:
                raise ValueError("subgroup not closed under inversion")
            for y in self.elements:
                if g.multiply(x, y) not in members:
                    raise ValueError("subgroup not closed under products")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in set(self.elements)

    @property
    def trivial(self) -> bool:
        return len(self.elements) == 1


def enumerate_subgroup(group: Group, generators: Iterable[Element], cap: int = 10_000) -> Subgroup:
    """Closure of `generators` under products; raises if it exceeds `cap` elements."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    gens = [group.validate(g) for g in generators]
    gens += [group.invert(g) for g in gens]
    seen = {group.identity()}
    frontier = [group.identity()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.multiply(x, g)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise StabiliserTooLargeError(
                            f"subgroup closure exceeds {cap} elements"
                        )
                    nxt.append(y)
        frontier = nxt
    return Subgroup(group, tuple(group.sorted(seen)))
