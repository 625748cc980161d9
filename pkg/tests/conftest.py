import pytest

from toricfano.corpus import load_corpus
from toricfano.cox import class_group


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def by_name(corpus):
    return {b.spec.name: b for b in corpus}


@pytest.fixture(scope="session")
def groups(corpus):
    return {b.spec.name: class_group(b.spec.fan, b.spec.basis_rays) for b in corpus}


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.summary_lines():
            terminalreporter.write_line(line)
