import pytest

from latticegames import data_path, load_game
from latticegames.genfun import load_stratification

GAME_FIXTURES = ["nim2_normal", "nim2_misere", "misere_d5"]

# filled by test_acceptance.report, printed after the run
ACCEPTANCE_RESULTS = []


def fixture_game(name):
    return load_game(data_path(name + ".json"))


def fixture_strat(name):
    return load_stratification(data_path(name + ".json"))


@pytest.fixture
def nim2():
    return fixture_game("nim2_normal")


@pytest.fixture
def nim2_misere():
    return fixture_game("nim2_misere")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_RESULTS, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
