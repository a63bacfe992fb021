import pytest

from cellgrow.properties import SUITES, run_suite


@pytest.mark.parametrize("suite", SUITES)
@pytest.mark.parametrize("name", ["z2", "dihedral", "s4_mod_transposition"])
def test_suites_pass(suite, name, request):
    space, gens = request.getfixturevalue(name)
    results = run_suite(suite, space, gens, samples=30, seed=7)
    assert results
    failed = [r.to_dict() for r in results if not r.passed]
    assert not failed


def test_unknown_suite(z2):
    with pytest.raises(ValueError):
        run_suite("topology", *z2)


def test_results_are_reproducible(f2):
    first = [r.to_dict() for r in run_suite("metric", *f2, samples=20, seed=11)]
    second = [r.to_dict() for r in run_suite("metric", *f2, samples=20, seed=11)]
    assert first == second
