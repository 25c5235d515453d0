import numpy as np
import pytest

from epighost.simulator import PhantomSpec, make_phantom

_ACCEPTANCE = []


def direct_centered_idft(row):
    """Inverse DFT by explicit summation, DC at index N/2, 1/N scaling."""
    row = np.asarray(row, dtype=complex)
    n = row.size
    k = np.arange(n) - n // 2
    x = np.arange(n) - n // 2
    return np.array([(row * np.exp(2j * np.pi * k * xi / n)).sum() / n for xi in x])


def loop_upsample(v, f):
    """Linear interpolation written out sample by sample."""
    n = len(v)
    out = []
    for p in range(n * f):
        i, r = divmod(p, f)
        if r == 0:
            out.append(v[i])
        else:
            a = r / f
            nxt = v[i + 1] if i + 1 < n else v[n - 1]
            out.append((1 - a) * v[i] + a * nxt)
    return np.array(out, dtype=complex)


def loop_centered_average(u, f):
    n = len(u) // f
    out = []
    for i in range(n):
        lo = i * f - f // 2
        idx = [min(max(j, 0), len(u) - 1) for j in range(lo, lo + f)]
        out.append(sum(u[j] for j in idx) / f)
    return np.array(out, dtype=complex)


@pytest.fixture(scope="session")
def disk_spec():
    return PhantomSpec()


@pytest.fixture(scope="session")
def disk(disk_spec):
    return make_phantom(disk_spec)


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
