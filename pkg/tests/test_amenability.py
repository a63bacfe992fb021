from fractions import Fraction

import pytest

from cellgrow import amenability as am
from cellgrow.errors import EmptySetError

from oracles import escape_count, lattice_boxes, z2_ball


def test_z2_generator_deficiency(z2):
    space, gens = z2
    b2 = z2_ball(2)
    d = am.generator_deficiency(space, gens, b2, (1, 0))
    assert d == Fraction(5, 13)
    assert d == Fraction(escape_count(b2, lambda p: (p[0] + 1, p[1])), len(b2))


def test_z2_union_deficiency(z2):
    space, gens = z2
    assert am.union_deficiency(space, gens, z2_ball(2), gens) == Fraction(8, 13)


def test_f2_deficiencies(f2):
    space, gens = f2
    ball = am.build_ball(space, gens, space.origin, 2).ball()
    assert am.generator_deficiency(space, gens, ball, (1,)) == Fraction(9, 17)
    assert am.union_deficiency(space, gens, ball, gens) == Fraction(12, 17)


def test_empty_set_is_rejected(z2):
    space, gens = z2
    with pytest.raises(EmptySetError):
        am.generator_deficiency(space, gens, [], (1, 0))
    with pytest.raises(EmptySetError):
        am.union_deficiency(space, gens, [], gens)


def test_boxes_have_small_deficiency(z2):
    space, gens = z2
    box = list(lattice_boxes(2, 10))
    assert am.generator_deficiency(space, gens, box, (1, 0)) == Fraction(1, 21)
    report = am.profile_of_sets(space, gens, [list(lattice_boxes(2, k)) for k in (1, 5, 10)])
    assert [r.union for r in report.records] == [Fraction(4 * (2 * k + 1) - 4, (2 * k + 1) ** 2) for k in (1, 5, 10)]


def test_isoperimetric_profile_matches_direct_computation(f2):
    space, gens = f2
    report = am.isoperimetric_profile(space, gens, 4)
    for rec in report.records:
        ball = am.build_ball(space, gens, space.origin, rec.k).ball()
        assert rec.size == len(ball)
        assert rec.union == am.union_deficiency(space, gens, ball, gens)
        for s, lbl in zip(gens, gens.labels()):
            assert rec.per_generator[lbl] == am.generator_deficiency(space, gens, ball, s)
    assert report.running_min == sorted(report.running_min, reverse=True)
    assert report.upper_bound == min(r.union for r in report.records)


def test_profile_independent_of_thread_count(z2, monkeypatch):
    space, gens = z2
    monkeypatch.setenv("CELLGROW_THREADS", "1")
    serial = am.isoperimetric_profile(space, gens, 12).to_dict()
    monkeypatch.setenv("CELLGROW_THREADS", "4")
    assert am.isoperimetric_profile(space, gens, 12).to_dict() == serial


def test_dihedral_union_deficiency(dihedral):
    space, gens = dihedral
    report = am.isoperimetric_profile(space, gens, 10)
    assert report.records[0].union == 1
    assert all(r.union == Fraction(2, 2 * r.k + 1) for r in report.records[1:])


def test_folner_witness_on_z2(z2):
    space, gens = z2
    w = am.folner_witness_subexp(space, gens, 0.5, 50)
    assert isinstance(w, am.FolnerWitness)
    assert w.radius == 5 and set(w.F) == z2_ball(5)
    assert w.check(space, gens)
    assert max(w.deficiencies.values()) < Fraction(1, 2)


def test_folner_not_found_on_f2(f2):
    space, gens = f2
    result = am.folner_witness_subexp(space, gens, 0.5, 8)
    assert result == am.NotFound(8)
    assert result.to_dict() == {"found": False, "not_found_up_to": 8}


def test_folner_on_finite_space(s4):
    space, gens = s4
    w = am.folner_witness_subexp(space, gens, 0.01, 20)
    assert isinstance(w, am.FolnerWitness) and len(w.F) == 24
    assert all(d == 0 for d in w.deficiencies.values())


def test_folner_sequence_report(z2):
    space, gens = z2
    sets = [z2_ball(k) for k in range(1, 9)]
    report = am.folner_sequence_check(space, gens, sets, 2)
    assert report.ratios[0][0] == 0
    assert report.last[1] < report.ratios[0][1]
    assert all(report.monotone_tail.values())


@pytest.mark.parametrize("name", ["z2", "f2", "dihedral", "s4_mod_transposition"])
def test_union_bound_lemma(name, request):
    space, gens = request.getfixturevalue(name)
    assert am.verify_union_bound_lemma(space, gens, samples=40, seed=3).passed
