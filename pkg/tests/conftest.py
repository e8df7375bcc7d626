from pathlib import Path

import pytest
from hypothesis import settings

from framebias.lexicon import VadLexicon, load_lexicon

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def fixture_lexicon():
    return load_lexicon(DATA / "mini_vad.tsv")


@pytest.fixture(scope="session")
def mini_lexicon():
    """Three-term lexicon used by the worked scoring examples."""
    return VadLexicon.from_dict({
        "murdered": (0.10, 0.90),
        "celebrate": (0.90, 0.70),
        "table": (0.50, 0.20),
    })


@pytest.fixture
def corpus_path():
    return DATA / "corpus_5.jsonl"


# one PASS/FAIL/SKIP line per acceptance criterion at the end of the run
_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome in ("failed", "skipped"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        if _acceptance.get(name) != "FAIL":
            _acceptance[name] = status


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, status in sorted(_acceptance.items()):
        terminalreporter.write_line(f"{status:4}  {name}")
