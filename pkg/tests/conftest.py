import functools
import time

import pytest

from sl12gen.arith import compute_Q, factorize, prime_power_split
from sl12gen.cert import build_instance, generate_q, verify
from sl12gen.gf import canonical_field, find_omega

THEOREM_QS = (3, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49)
EXCLUDED_QS = (2, 4)

_acceptance_lines = []


@functools.lru_cache(maxsize=None)
def instance_for(q):
    p, m = prime_power_split(q)
    spec = canonical_field(p, m)
    Q, _ = compute_Q(q)
    omega = find_omega(spec, Q, factorize(q**11 - 1))
    return build_instance(spec, omega)


@functools.lru_cache(maxsize=None)
def certified(q):
    """(certificate, verify result, seconds for gen + verify)."""
    start = time.perf_counter()
    cert = generate_q(q)
    result = verify(cert)
    return cert, result, time.perf_counter() - start


@pytest.fixture(scope="session")
def inst3():
    return instance_for(3)


@pytest.fixture
def record_criterion():
    def record(number, title, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        line = f"criterion {number}: {status}  {title}"
        if detail:
            line += f"  [{detail}]"
        _acceptance_lines.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
