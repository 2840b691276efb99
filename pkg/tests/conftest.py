from functools import lru_cache

import pytest

from padicext.oracle import CorpusSpec, generate_corpus

TAME_PAIRS = ((5, 3), (7, 3), (13, 3), (7, 2), (2, 3))

# (number, title) -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict = {}


@lru_cache(maxsize=None)
def tame_corpus(p: int, q: int, count: int = 500) -> tuple:
    return tuple(generate_corpus(CorpusSpec(p, q, p**4, count, seed=42)))


@pytest.fixture
def record():
    def _record(number: int, title: str, passed: bool, detail: str = ""):
        ACCEPTANCE[number] = (title, passed, detail)
        line = f"[acceptance {number}] {'PASS' if passed else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
        print(line)
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        suffix = f"  ({detail})" if detail else ""
        terminalreporter.write_line(f"{number}. {'PASS' if passed else 'FAIL'}  {title}{suffix}")
