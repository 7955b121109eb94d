import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from f2q.fermion import MajoranaHamiltonian, parse_fermionic, to_majorana

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


PAIR_TEXT = """# number operator plus a two-body term
modes 3
(1,0) : 0^ 0
(2,0) : 1^ 2^ 1 2
"""


@pytest.fixture
def pair_fermionic():
    return parse_fermionic(PAIR_TEXT)


@pytest.fixture
def pair_model(pair_fermionic):
    return to_majorana(pair_fermionic)


@pytest.fixture
def two_term():
    """``M0 M5 + M1 M3`` on three modes."""
    return MajoranaHamiltonian.from_dict(3, {(0, 5): 1.0, (1, 3): 1.0})


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record ``(number, detail)`` for the acceptance summary; the verdict follows the test outcome."""
    import re

    m = re.match(r"test_criterion_(\d+)", request.node.name)
    state = {"number": int(m.group(1)), "detail": "raised before reporting"} if m else {}

    def record(number: int, detail: str):
        state["number"], state["detail"] = number, detail

    yield record
    if "number" in state:
        failed = getattr(request.node, "_failed", None)
        _CRITERIA[state["number"]] = (not failed, state["detail"])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item._failed = rep.failed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, detail = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
