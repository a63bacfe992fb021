import pytest
from hypothesis import given, settings, strategies as st

from cellgrow.errors import GroupOverflowError, MalformedElementError, StabiliserTooLargeError
from cellgrow.groups import (
    FreeAbelianGroup,
    FreeGroup,
    GroupSpec,
    HeisenbergGroup,
    InfiniteDihedralGroup,
    PermutationGroup,
    Subgroup,
    enumerate_subgroup,
)

from oracles import dihedral_rewrite, dihedral_word, free_reduce

GROUPS = {
    "z2": FreeAbelianGroup(2),
    "z3": FreeAbelianGroup(3),
    "f2": FreeGroup(2),
    "heisenberg": HeisenbergGroup(),
    "dihedral": InfiniteDihedralGroup(),
    "s4": PermutationGroup(4, [(1, 0, 2, 3), (1, 2, 3, 0)]),
}


def test_identities():
    assert FreeAbelianGroup(2).identity() == (0, 0)
    assert FreeGroup(2).identity() == ()
    assert InfiniteDihedralGroup().identity() == (0, 0)


def test_multiply_examples():
    assert FreeAbelianGroup(2).multiply((1, 0), (0, 1)) == (1, 1)
    f = FreeGroup(2)
    ab = f.parse("a.b")
    b_inv_a = f.parse("b'.a")
    assert f.multiply(ab, b_inv_a) == f.parse("a.a")
    d = InfiniteDihedralGroup()
    assert d.multiply((1, 1), (1, 0)) == (0, 1)


def test_invert_examples():
    assert FreeAbelianGroup(2).invert((3, -1)) == (-3, 1)
    f = FreeGroup(2)
    assert f.invert(f.parse("a.b'")) == f.parse("b.a'")
    assert InfiniteDihedralGroup().invert((2, 1)) == (2, 1)


def test_dihedral_matches_rewriting_oracle():
    d = InfiniteDihedralGroup()
    for n in range(-3, 4):
        for f in (0, 1):
            for m in range(-3, 4):
                for g in (0, 1):
                    expect = dihedral_rewrite(dihedral_word(n, f) + dihedral_word(m, g))
                    assert d.multiply((n, f), (m, g)) == expect


def test_free_matches_reduction_oracle():
    f = FreeGroup(2)
    letters = {"a": 1, "A": -1, "b": 2, "B": -2}
    words = ["abA", "aBBa", "ab", "BA", "aaa", ""]
    for u in words:
        for v in words:
            got = f.multiply(tuple(letters[c] for c in u), tuple(letters[c] for c in v))
            assert got == tuple(letters[c] for c in free_reduce(u + v))


def test_heisenberg_product():
    h = HeisenbergGroup()
    assert h.multiply((1, 0, 0), (0, 1, 0)) == (1, 1, 1)
    assert h.multiply((0, 1, 0), (1, 0, 0)) == (1, 1, 0)


def test_free_order_is_length_then_letters():
    f = FreeGroup(2)
    words = [f.parse(t) for t in ["b", "a'", "a", "e", "a.a", "b'"]]
    assert [f.format(w) for w in f.sorted(words)] == ["e", "a", "a'", "b", "b'", "a.a"]


def test_enumerate_subgroup():
    d = InfiniteDihedralGroup()
    assert enumerate_subgroup(d, [(0, 1)]).elements == ((0, 0), (0, 1))
    assert enumerate_subgroup(d, []).elements == ((0, 0),)
    with pytest.raises(StabiliserTooLargeError):
        enumerate_subgroup(d, [(1, 0)], cap=100)
    s4 = GROUPS["s4"]
    assert len(enumerate_subgroup(s4, s4.generators(), cap=100)) == 24


def test_subgroup_rejects_non_closed_sets():
    d = InfiniteDihedralGroup()
    with pytest.raises(ValueError):
        Subgroup(d, ((0, 0), (1, 0)))


def test_malformed_elements():
    with pytest.raises(MalformedElementError):
        FreeAbelianGroup(2).validate((1, 2, 3))
    with pytest.raises(MalformedElementError):
        FreeGroup(2).validate((1, -1))
    with pytest.raises(MalformedElementError):
        FreeGroup(2).parse("a.c")
    with pytest.raises(MalformedElementError):
        InfiniteDihedralGroup().parse("t^x")
    with pytest.raises(MalformedElementError):
        GROUPS["s4"].validate((0, 0, 1, 2))


def test_overflow_is_reported():
    z = FreeAbelianGroup(1)
    with pytest.raises(GroupOverflowError):
        z.multiply((2**62,), (2**62,))


@pytest.mark.parametrize(
    "description",
    [
        {"kind": "free-abelian", "rank": 3},
        {"kind": "free", "rank": 2},
        {"kind": "heisenberg"},
        {"kind": "infinite-dihedral"},
        {"kind": "finite-permutation", "degree": 3, "generators": ["(1,0,2)"]},
    ],
)
def test_group_spec_build(description):
    assert GroupSpec.from_dict(description).build().spec()["kind"] == description["kind"]


def elements(group, max_len=6):
    return st.builds(
        lambda seed, n: group.random_word(__import__("random").Random(seed), n),
        st.integers(0, 2**32),
        st.integers(0, max_len),
    )


@pytest.mark.parametrize("name", sorted(GROUPS))
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_group_axioms(name, data):
    g = GROUPS[name]
    a, b, c = (data.draw(elements(g)) for _ in range(3))
    assert g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c))
    assert g.multiply(a, g.invert(a)) == g.identity()
    assert g.invert(g.invert(a)) == a
    assert g.multiply(g.identity(), a) == a == g.multiply(a, g.identity())


@pytest.mark.parametrize("name", sorted(GROUPS))
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_text_round_trip(name, data):
    g = GROUPS[name]
    a = data.draw(elements(g))
    assert g.parse(g.format(a)) == a


def test_dihedral_text_forms():
    d = InfiniteDihedralGroup()
    assert d.parse("t^3*s") == (3, 1)
    assert d.parse("t^-2") == (-2, 0)
    assert d.format((3, 1)) == "t^3*s"
    assert d.format((0, 1)) == "s"


@pytest.mark.parametrize("name", ["dihedral", "s4"])
def test_enumerated_subgroup_closed(name):
    g = GROUPS[name]
    gens = [(0, 1)] if name == "dihedral" else [(1, 0, 2, 3), (0, 1, 3, 2)]
    h = enumerate_subgroup(g, gens)
    members = set(h)
    assert all(g.multiply(x, g.invert(y)) in members for x in h for y in h)
