import time
from contextlib import contextmanager

import pytest

_RESULTS = {}


@pytest.fixture(scope="session")
def warm_kernels():
    """Compile (or load) every numba kernel before any timed block runs.

    Only the kernels are touched, so no library-level cache is pre-filled.
    """
    import numpy as np

    from stoneduality import _accel

    T = np.array([[0, 1], [1, 1]])
    _accel.assoc_violation(T)
    _accel.distrib_violation(T, T)
    _accel.filter_families(np.eye(2, dtype=bool), T)
    _accel.union_closure([1, 2], 2)
    _accel.topology_violation(np.array([0, 1, 3]), 2)


@pytest.fixture
def criterion(warm_kernels):
    """``with criterion(n, title, limit):`` times the block and records the outcome."""

    @contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        ok = False
        note = ""
        try:
            yield
            ok = True
        except BaseException as exc:
            note = f"{type(exc).__name__}: {str(exc)[:120]}"
            raise
        finally:
            elapsed = time.perf_counter() - start
            if ok and elapsed > limit:
                ok = False
                note = f"over time limit {limit} s"
            _RESULTS[number] = (title, ok, elapsed, limit, note)
        assert elapsed <= limit, f"criterion {number} took {elapsed:.2f} s, limit {limit} s"

    return run


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok, elapsed, limit, note = _RESULTS[number]
        line = f"{'PASS' if ok else 'FAIL'}  {number:>2}. {title}  ({elapsed:.2f} s of {limit} s)"
        if note:
            line += f"  [{note}]"
        tr.write_line(line)
