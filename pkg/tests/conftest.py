from __future__ import annotations

import pytest

from xmodcalc import induced as induced_mod
from xmodcalc.ident import family
from xmodcalc.perm import Perm

# every InducedResult built during the session, for the axiom audit
PRODUCED: list = []

_original_finish = induced_mod._finish


def _recording_finish(*args, **kwargs):
    r = _original_finish(*args, **kwargs)
    PRODUCED.append(r)
    return r


induced_mod._finish = _recording_finish


def perm(text: str, degree: int) -> Perm:
    return Perm.parse(text, degree)


@pytest.fixture(scope="session")
def S4():
    return family("S", 4)


@pytest.fixture(scope="session")
def A4():
    return family("A", 4)


@pytest.fixture(scope="session")
def S3():
    return family("S", 3)


# one summary line per acceptance criterion, shown at the end of the run
CRITERIA: dict[int, str] = {}


class _Criterion:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.detail = ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        detail = self.detail if exc_type is None else f"{self.detail} {exc_type.__name__}: {exc}".strip()
        line = f"[criterion {self.number}] {status}: {self.title}; {detail}"
        CRITERIA[self.number] = line
        print(line)
        return False


def criterion(number: int, title: str) -> _Criterion:
    return _Criterion(number, title)


# axiom audits keyed by id(result), shared so each result is audited once
AUDITS: dict[int, dict] = {}


def audit_all() -> tuple[int, list[tuple[object, dict]]]:
    from xmodcalc.induced import axiom_audit

    failures = []
    for r in PRODUCED:
        key = id(r)
        if key not in AUDITS:
            AUDITS[key] = axiom_audit(r)
        if not all(AUDITS[key].values()):
            failures.append((r, AUDITS[key]))
    return len(PRODUCED), failures


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[k])
