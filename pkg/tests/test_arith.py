import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl12gen.arith import (
    FactoredInteger,
    FactorizationBudgetError,
    compute_Q,
    factorize,
    is_prime,
    prime_power_split,
)


def trial_division(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return tuple(sorted(out.items()))


def test_is_prime_examples():
    assert is_prime(2)
    assert not is_prime(1)
    assert not is_prime(0)
    assert not is_prime(88573)
    assert trial_division(88573) == ((23, 1), (3851, 1))


@given(st.integers(min_value=0, max_value=20000))
def test_is_prime_matches_trial_division(n):
    expected = n >= 2 and trial_division(n) == ((n, 1),)
    assert is_prime(n) == expected


@pytest.mark.parametrize("n", [3215031751, 2152302898747, 3474749660383, 341550071728321])
def test_is_prime_rejects_strong_pseudoprimes(n):
    # strong pseudoprimes to several small bases
    assert not is_prime(n)


def test_is_prime_large_known_primes():
    assert is_prime(2**61 - 1)
    assert is_prime(2**89 - 1)
    assert not is_prime((2**61 - 1) * (2**31 - 1))


@pytest.mark.parametrize(
    "n, factors",
    [
        (1, ()),
        (12, ((2, 2), (3, 1))),
        (177146, ((2, 1), (23, 1), (3851, 1))),
        (2047, ((23, 1), (89, 1))),
    ],
)
def test_factorize_examples(n, factors):
    assert factorize(n).factors == factors
    assert trial_division(n) == factors


@settings(max_examples=200)
@given(st.integers(min_value=1, max_value=10**12))
def test_factorize_recomposes(n):
    fac = factorize(n)
    acc = 1
    for p, e in fac.factors:
        assert is_prime(p)
        acc *= p**e
    assert acc == n
    assert list(fac.primes) == sorted(fac.primes)


def test_factorize_beyond_trial_division():
    p1, p2 = 1000003, 1000033
    assert factorize(p1 * p2).factors == ((p1, 1), (p2, 1))
    assert factorize(p1**2).factors == ((p1, 2),)
    n = 49**11 - 1
    fac = factorize(n)
    assert fac.value == n
    assert all(is_prime(p) for p in fac.primes)


def test_factorize_budget_exhaustion():
    n = 1000000007 * 1000000009
    with pytest.raises(FactorizationBudgetError):
        factorize(n, budget=10)


def test_factorize_budget_from_environment(monkeypatch):
    monkeypatch.setenv("SL12_FACTOR_BUDGET", "10")
    with pytest.raises(FactorizationBudgetError):
        factorize(1000000007 * 1000000009)
    monkeypatch.setenv("SL12_FACTOR_BUDGET", "nonsense")
    with pytest.raises(ValueError):
        factorize(35)


def test_factored_integer_rejects_bad_lists():
    with pytest.raises(ValueError):
        FactoredInteger(12, ((2, 2), (5, 1)))
    with pytest.raises(ValueError):
        FactoredInteger(12, ((3, 1), (2, 2)))
    assert str(FactoredInteger(12, ((2, 2), (3, 1)))) == "2^2 * 3"


def test_compute_Q_examples():
    assert compute_Q(3) == (88573, True)
    assert compute_Q(2) == (2047, False)
    assert compute_Q(7) == ((7**11 - 1) // 2, True)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 64, 81])
def test_compute_Q_properties(q):
    Q, halved = compute_Q(q)
    assert (q**11 - 1) % Q == 0
    assert (q**11 - 1) // Q == (2 if halved else 1)
    if q not in (3, 7):
        assert Q % (q - 1) == 0


def test_Q_exceeds_machine_words():
    Q, _ = compute_Q(64)
    assert Q > 2**64


@pytest.mark.parametrize("q, pm", [(2, (2, 1)), (9, (3, 2)), (49, (7, 2)), (64, (2, 6))])
def test_prime_power_split(q, pm):
    assert prime_power_split(q) == pm


@pytest.mark.parametrize("q", [1, 6, 12, 100])
def test_prime_power_split_rejects(q):
    with pytest.raises(ValueError):
        prime_power_split(q)
