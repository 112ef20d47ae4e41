import sys
from pathlib import Path

import pytest

from factorcodes.presentation import load_presentation

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
sys.path.insert(0, str(Path(__file__).resolve().parent))

FIGURES = ["fig1", "fig2", "fig3", "fig4", "fig5"]
IRREDUCIBLE = FIGURES + ["identity", "loop", "parallel", "full2"]


def fixture_path(name):
    return FIXTURES / f"{name}.sg"


def load(name):
    return load_presentation(fixture_path(name))


@pytest.fixture(scope="session")
def fixtures():
    return {name: load(name) for name in IRREDUCIBLE}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
