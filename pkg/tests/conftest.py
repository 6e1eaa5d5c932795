import pytest

from palfree.structure import named_stream


@pytest.fixture(scope="session")
def p_word():
    return named_stream("p").prefix(200000)


@pytest.fixture(scope="session")
def nu_word():
    return named_stream("nu_p").prefix(200000)


@pytest.fixture(scope="session")
def mu_word():
    return named_stream("mu_p").prefix(200000)


def brute_critical_exponent(w):
    """Definitional oracle: maximal exponent over all factors."""
    from fractions import Fraction

    from palfree.repetition import exponent_of
    best = Fraction(1)
    n = len(w)
    for i in range(n):
        for j in range(i + 1, n + 1):
            e, _ = exponent_of(w[i:j])
            if e > best:
                best = e
    return best
