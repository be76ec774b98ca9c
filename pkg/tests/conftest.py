import os
import pytest
from hypothesis import settings

from eqpentagon import certificate as cert
from eqpentagon import classifier as C
from eqpentagon import model as M

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    return os.environ.get("EQPENTAGON_CACHE") or str(tmp_path_factory.mktemp("cache"))


@pytest.fixture(scope="session")
def model():
    return M.build_model_polynomials()


@pytest.fixture(scope="session")
def classification(cache_dir):
    return C.classify(C.ClassifierConfig(cache_dir=cache_dir))


@pytest.fixture(scope="session")
def document(classification):
    return cert.build_document(classification)


@pytest.fixture(scope="session")
def by_label(classification):
    return {c.label: c for c in classification.candidates}


@pytest.fixture(scope="session")
def solutions(classification):
    return {s.label: s for s in classification.solutions}


@pytest.fixture
def report(request):
    """Record one PASS/FAIL line per acceptance criterion."""
    lines = request.config.__dict__.setdefault("_acceptance_lines", {})

    def record(n: int, ok: bool, detail: str = ""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}" + (f": {detail}" if detail else "")
        lines[n] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.__dict__.get("_acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
