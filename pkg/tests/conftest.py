import itertools

import numpy as np
import pytest

_ACCEPTANCE = []


def record_criterion(number, name, status, detail=""):
    _ACCEPTANCE.append((number, name, status, detail))


@pytest.fixture
def record():
    return record_criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, status, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"[{status}] {number:>2}. {name}  {detail}")


def random_labels(rng, n, kmax):
    return rng.integers(0, kmax, size=n)


def exhaustive_min_cut(n, edges, k, tol):
    """Smallest hyperedge cut over every k-way split obeying the size bounds."""
    ideal = n / k
    lo = max(1, int(np.floor((1 - tol) * ideal + 1e-9)))
    hi = min(n, int(np.ceil((1 + tol) * ideal - 1e-9)))
    best = None
    for assign in itertools.product(range(k), repeat=n):
        sizes = np.bincount(assign, minlength=k)
        if sizes.min() < lo or sizes.max() > hi:
            continue
        cut = sum(1 for e in edges if len({assign[v] for v in e}) > 1)
        if best is None or cut < best:
            best = cut
    return best
