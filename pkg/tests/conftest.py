import pytest

from cellgrow.cellspace import induce_generating_set, make_cell_space
from cellgrow.groups import FreeAbelianGroup, FreeGroup, HeisenbergGroup, InfiniteDihedralGroup, PermutationGroup


def _space(group, stab=(), gens=None):
    space = make_cell_space(group, stab)
    return space, induce_generating_set(space, gens if gens is not None else group.generators())


@pytest.fixture(scope="session")
def z2():
    return _space(FreeAbelianGroup(2))


@pytest.fixture(scope="session")
def z2_diag():
    return _space(FreeAbelianGroup(2), gens=[(1, 0), (0, 1), (1, 1), (1, -1)])


@pytest.fixture(scope="session")
def f2():
    return _space(FreeGroup(2))


@pytest.fixture(scope="session")
def dihedral():
    return _space(InfiniteDihedralGroup(), stab=[(0, 1)])


@pytest.fixture(scope="session")
def heisenberg():
    return _space(HeisenbergGroup())


@pytest.fixture(scope="session")
def s4():
    g = PermutationGroup(4, [(1, 0, 2, 3), (1, 2, 3, 0)])
    return _space(g)


@pytest.fixture(scope="session")
def s4_mod_transposition():
    g = PermutationGroup(4, [(1, 0, 2, 3), (1, 2, 3, 0)])
    return _space(g, stab=[(1, 0, 2, 3)])


# filled by the acceptance tests, printed after the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
