
import pytest
from hypothesis import given, settings, strategies as st

from cellgrow.errors import TableTooShortError
from cellgrow.growth import (
    GrowthTable,
    classify,
    dominates,
    equivalent,
    generating_set_alpha,
    growth_rate,
    growth_table,
    reference_table,
    verify_submultiplicative,
)

from oracles import permutation_ball_sizes, shift_ball, z2_ball_count


def test_z2_table_matches_lattice_oracle(z2):
    space, gens = z2
    assert growth_table(space, gens, 16).values == [z2_ball_count(k) for k in range(17)]
    assert growth_table(space, gens, 16).values[14:] == [421, 481, 545]


def test_f2_table(f2):
    space, gens = f2
    assert growth_table(space, gens, 6).values == [2 * 3**k - 1 for k in range(7)]


def test_dihedral_table_matches_shift_model(dihedral):
    space, gens = dihedral
    assert growth_table(space, gens, 12).values == [len(shift_ball(k)) for k in range(13)]


def test_s4_table(s4):
    space, gens = s4
    expected = permutation_ball_sizes([(1, 0, 2, 3), (1, 2, 3, 0)], 4, 9)
    assert expected == [1, 4, 9, 15, 20, 23, 24, 24, 24, 24]
    assert growth_table(space, gens, 9).values == expected


def test_reference_tables():
    assert reference_table("one", 3).values == [1, 1, 1, 1]
    assert reference_table("identity", 3).values == [0, 1, 2, 3]
    assert reference_table("power", 3, 2).values == [0, 1, 4, 9]
    assert reference_table("exponential", 3, 2).values == [1, 2, 4, 8]
    assert reference_table("exponential", 5, 3).at(20) == 3**20
    with pytest.raises(ValueError):
        reference_table("log", 3)


def test_exponential_references_dominate_each_other():
    two, three = reference_table("exponential", 12, 2), reference_table("exponential", 12, 3)
    forward, backward = equivalent(two, three, alpha_max=8)
    assert forward.alpha == 2 and backward.alpha == 1


def test_identity_dominates_constant():
    verdict = dominates(reference_table("identity", 12), reference_table("one", 12))
    assert verdict.alpha == 1 and str(verdict) == "witness(1) on 1..12"


def test_constant_over_identity_has_no_small_witness():
    verdict = dominates(reference_table("one", 9), reference_table("identity", 9), alpha_max=8)
    assert not verdict.found and str(verdict) == "no-witness-up-to(8) on 1..9"
    # on a shorter range alpha = 8 suffices, which is why the range matters
    assert dominates(reference_table("one", 8), reference_table("identity", 8), alpha_max=8).alpha == 8


def test_vacuous_range_is_not_a_witness():
    short = GrowthTable([1, 2])
    long = GrowthTable([1, 5, 10, 20])
    # alpha >= 2 would only compare k with alpha*k beyond the short table
    assert not dominates(short, long, alpha_max=3).found


def test_growth_rate_of_z2(z2):
    space, gens = z2
    rate = growth_rate(growth_table(space, gens, 40))
    assert rate.roots[0] is None
    assert rate.roots[1] == pytest.approx(5.0)
    assert rate.estimate == pytest.approx(3281 ** (1 / 40))
    assert 1.0 <= rate.estimate <= 1.25


def test_growth_rate_of_f2_is_above_three(f2):
    space, gens = f2
    rate = growth_rate(growth_table(space, gens, 8))
    assert all(r > 3 for r in rate.roots[1:])
    assert rate.estimate == pytest.approx((2 * 3**8 - 1) ** (1 / 8))
    assert rate.ratios[8] == pytest.approx((2 * 3**8 - 1) / (2 * 3**7 - 1))


def test_roots_of_values_beyond_float_range():
    values = [2 * 3**k - 1 for k in range(1001)]
    rate = growth_rate(GrowthTable(values))
    assert rate.roots[1000] == pytest.approx(3 * 2 ** (1 / 1000), rel=1e-9)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 50), min_size=2, max_size=12))
def test_submultiplicative_detects_violations(values):
    table = GrowthTable([1] + sorted(values))
    report = verify_submultiplicative(table)
    v = table.values
    brute = [
        (k, j) for k in range(1, len(v)) for j in range(k, len(v) - k) if v[k + j] > v[k] * v[j]
    ]
    assert [(a, b) for a, b, *_ in report.violations] == brute


def test_real_tables_are_submultiplicative(z2, f2, dihedral):
    for space, gens in (z2, f2, dihedral):
        assert verify_submultiplicative(growth_table(space, gens, 7)).passed


def test_classify(z2, f2, s4, dihedral):
    z = classify(growth_table(*z2, 20))
    assert z.cls == "polynomial" and 1.5 < z.estimate < 2.1
    f = classify(growth_table(*f2, 10))
    assert f.cls == "exponential" and f.estimate == pytest.approx(3, abs=0.05)
    assert classify(growth_table(*s4, 9)).cls == "bounded"
    assert classify(growth_table(*dihedral, 20)).cls == "polynomial"
    with pytest.raises(TableTooShortError):
        classify(GrowthTable([1, 2, 3]))


def test_classify_to_dict_keys(z2):
    d = classify(growth_table(*z2, 10)).to_dict()
    assert set(d) == {"class", "estimate", "residuals", "range", "thresholds"}


def test_generating_set_alpha(z2, z2_diag):
    space, std = z2
    _, diag = z2_diag
    assert generating_set_alpha(space, std, diag) == 1
    assert generating_set_alpha(space, diag, std) == 2
