import functools

import pytest

from bbfill import build_context, get_builtin


@functools.lru_cache(maxsize=None)
def ctx_for(name: str):
    return build_context(get_builtin(name))


@pytest.fixture(scope="session")
def tri():
    return ctx_for("TRI")


@pytest.fixture(scope="session")
def octa():
    return ctx_for("OCTA")


@pytest.fixture(scope="session")
def grid2():
    return ctx_for("GRID2")


@pytest.fixture(scope="session")
def path_ctx():
    return ctx_for("PATH")


def P(cx, text):
    return cx.alphabet.parse(text)


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
